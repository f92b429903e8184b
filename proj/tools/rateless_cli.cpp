#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rateless/acceptance.hpp"
#include "rateless/json_io.hpp"

namespace {

using rateless::json;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitConfigError = 2;

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file: " + path);
  json doc;
  in >> doc;
  return doc;
}

void write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot open output file: " + out_path);
  out << text;
}

std::string report_csv(const json& report) {
  std::string csv = "field,value\n";
  const std::function<void(const std::string&, const json&)> walk =
      [&](const std::string& prefix, const json& node) {
        if (node.is_object()) {
          for (const auto& [key, value] : node.items())
            walk(prefix.empty() ? key : prefix + "." + key, value);
        } else if (node.is_array()) {
          int i = 0;
          for (const auto& value : node) walk(prefix + "[" + std::to_string(i++) + "]", value);
        } else {
          csv += prefix + "," + node.dump() + "\n";
        }
      };
  walk("", report);
  return csv;
}

json channel_from_args(const std::string& type, const std::vector<double>& params) {
  json doc;
  doc["type"] = type;
  if (type == "bsc" || type == "z") {
    if (params.size() != 1) throw std::invalid_argument(type + " needs one parameter");
    doc["p"] = params[0];
  } else if (type == "bec") {
    if (params.size() != 1) throw std::invalid_argument("bec needs one parameter");
    doc["delta"] = params[0];
  } else if (type == "noiseless") {
    if (params.size() != 1) throw std::invalid_argument("noiseless needs the alphabet size");
    doc["size"] = static_cast<int>(params[0]);
  } else if (type == "awgn") {
    if (params.size() != 2)
      throw std::invalid_argument("awgn needs signal power and noise variance");
    doc["signal_power"] = params[0];
    doc["noise_variance"] = params[1];
  } else {
    throw std::invalid_argument("unknown channel shorthand: " + type);
  }
  return doc;
}

int cmd_capacity(const std::string& config_path, const std::string& type,
                 const std::vector<double>& params, const std::string& out_path,
                 const std::string& format) {
  json channel_doc;
  if (!config_path.empty()) {
    channel_doc = load_json_file(config_path);
  } else if (!type.empty()) {
    channel_doc = channel_from_args(type, params);
  } else {
    throw std::invalid_argument("capacity needs --config or a channel shorthand");
  }
  const rateless::ChannelVariant channel = rateless::parse_channel(channel_doc);
  json out;
  if (const auto* dmc = std::get_if<rateless::Dmc>(&channel)) {
    const rateless::CapacityResult cap = rateless::capacity(*dmc);
    out["capacity_bits"] = cap.capacity_bits;
    out["optimal_prior"] = cap.optimal_prior.probs;
    out["iterations"] = cap.iterations;
    out["gap_bound"] = cap.gap_bound;
  } else {
    const auto& awgn = std::get<rateless::AwgnChannel>(channel);
    out["capacity_bits"] = awgn.capacity_bits();
    out["signal_power"] = awgn.signal_power;
    out["noise_variance"] = awgn.noise_variance;
  }
  write_output(format == "csv" ? report_csv(out) : out.dump(2), out_path);
  return kExitOk;
}

int cmd_simulate(const std::string& config_path, const std::string& out_path,
                 const std::string& format, bool has_seed, std::uint64_t seed, int workers,
                 bool dump_trials, std::string dump_path) {
  rateless::ExperimentConfig cfg = rateless::parse_experiment(load_json_file(config_path));
  if (has_seed) cfg.seed = seed;
  if (workers > 0) cfg.workers = workers;
  if (dump_trials && dump_path.empty()) {
    if (out_path.empty())
      throw std::invalid_argument("--dump-trials needs a path or --out to derive one");
    dump_path = out_path + ".trials.csv";
  }
  const rateless::Experiment experiment(cfg);
  std::vector<rateless::TrialRecord> records;
  const rateless::Report report = experiment.run(dump_trials ? &records : nullptr);
  const json doc = rateless::report_to_json(report, cfg);
  write_output(format == "csv" ? report_csv(doc) : doc.dump(2), out_path);
  if (dump_trials) write_output(rateless::trials_to_csv(records), dump_path);
  return kExitOk;
}

int cmd_table(const std::string& config_path, const std::string& out_path, bool single_formula) {
  const json spec = load_json_file(config_path);
  const std::string csv =
      single_formula ? rateless::run_bounds_table(spec) : rateless::run_sweep_table(spec);
  write_output(csv, out_path);
  return kExitOk;
}

int cmd_verify(bool quick, std::uint64_t seed, const std::vector<int>& only, bool inject_kt_bug,
               int workers) {
  rateless::accept::Options opts;
  opts.quick = quick;
  opts.seed = seed;
  opts.only = only;
  opts.workers = workers;
  if (inject_kt_bug) opts.oracle_kt_alpha = 0.6;
  const auto results = rateless::accept::run_acceptance(opts);
  bool all_pass = true;
  for (const auto& r : results) {
    std::cout << rateless::accept::format_result_line(r) << "\n";
    all_pass = all_pass && r.pass;
  }
  std::cout << (all_pass ? "verification passed" : "verification FAILED") << "\n";
  return all_pass ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rateless coding over discrete memoryless and gaussian channels"};
  app.require_subcommand(1);

  // capacity
  auto* cap = app.add_subcommand("capacity", "capacity and capacity-achieving prior");
  std::string cap_config, cap_type, cap_out, cap_format = "json";
  std::vector<double> cap_params;
  cap->add_option("--config", cap_config, "channel JSON file");
  cap->add_option("type", cap_type, "channel shorthand: bsc|bec|z|noiseless|awgn");
  cap->add_option("params", cap_params, "shorthand parameters");
  cap->add_option("--out", cap_out, "output path (default stdout)");
  cap->add_option("--format", cap_format, "json|csv")->check(CLI::IsMember({"json", "csv"}));

  // bounds
  auto* bounds_cmd = app.add_subcommand("bounds", "closed-form bound table from a sweep spec");
  std::string bounds_config, bounds_out;
  bounds_cmd->add_option("--config", bounds_config, "sweep spec JSON file")->required();
  bounds_cmd->add_option("--out", bounds_out, "output CSV path (default stdout)");

  // simulate
  auto* sim = app.add_subcommand("simulate", "run a Monte Carlo experiment");
  std::string sim_config, sim_out, sim_format = "json";
  std::uint64_t sim_seed = 0;
  int sim_workers = 0;
  std::vector<std::string> sim_dump;
  sim->add_option("--config", sim_config, "experiment JSON file")->required();
  sim->add_option("--out", sim_out, "report output path (default stdout)");
  sim->add_option("--format", sim_format, "json|csv")->check(CLI::IsMember({"json", "csv"}));
  auto* seed_opt = sim->add_option("--seed", sim_seed, "master seed override");
  sim->add_option("--workers", sim_workers, "worker count override");
  sim->add_option("--dump-trials", sim_dump, "write per-trial CSV (optional path)")
      ->expected(0, 1);

  // sweep
  auto* sweep = app.add_subcommand("sweep", "multi-column bound/simulation table");
  std::string sweep_config, sweep_out;
  sweep->add_option("--config", sweep_config, "sweep spec JSON file")->required();
  sweep->add_option("--out", sweep_out, "output CSV path (default stdout)");

  // verify
  auto* verify = app.add_subcommand("verify", "run the acceptance criteria");
  bool verify_quick = false, inject_kt_bug = false;
  std::uint64_t verify_seed = rateless::kDefaultSeed;
  int verify_workers = 0;
  std::vector<int> verify_only;
  verify->add_flag("--quick", verify_quick, "reduced trial counts (<= 60 s)");
  verify->add_option("--seed", verify_seed, "master seed");
  verify->add_option("--only", verify_only, "criterion ids to run");
  verify->add_option("--workers", verify_workers, "worker count");
  verify->add_flag("--inject-kt-bug", inject_kt_bug, "negative control: corrupt the mixture oracle")
      ->group("");  // hidden

  CLI11_PARSE(app, argc, argv);

  try {
    if (cap->parsed())
      return cmd_capacity(cap_config, cap_type, cap_params, cap_out, cap_format);
    if (bounds_cmd->parsed()) return cmd_table(bounds_config, bounds_out, true);
    if (sim->parsed())
      return cmd_simulate(sim_config, sim_out, sim_format, seed_opt->count() > 0, sim_seed,
                          sim_workers, sim->count("--dump-trials") > 0,
                          sim_dump.empty() ? std::string() : sim_dump.front());
    if (sweep->parsed()) return cmd_table(sweep_config, sweep_out, false);
    if (verify->parsed())
      return cmd_verify(verify_quick, verify_seed, verify_only, inject_kt_bug, verify_workers);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfigError;
  }
  return kExitConfigError;
}
