#include "rateless/json_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <map>
#include <stdexcept>

namespace rateless {

namespace {

double require_number(const json& doc, const std::string& key) {
  if (!doc.contains(key) || !doc[key].is_number())
    throw std::invalid_argument("missing or non-numeric field: " + key);
  return doc[key].get<double>();
}

std::int64_t require_integer(const json& doc, const std::string& key) {
  if (!doc.contains(key) || !doc[key].is_number_integer())
    throw std::invalid_argument("missing or non-integer field: " + key);
  return doc[key].get<std::int64_t>();
}

std::vector<double> require_vector(const json& doc, const std::string& key) {
  if (!doc.contains(key) || !doc[key].is_array())
    throw std::invalid_argument("missing or non-array field: " + key);
  std::vector<double> out;
  for (const auto& v : doc[key]) {
    if (!v.is_number()) throw std::invalid_argument("non-numeric entry in " + key);
    out.push_back(v.get<double>());
  }
  return out;
}

std::vector<std::vector<double>> require_matrix(const json& doc, const std::string& key) {
  if (!doc.contains(key) || !doc[key].is_array())
    throw std::invalid_argument("missing or non-array field: " + key);
  std::vector<std::vector<double>> out;
  for (const auto& row : doc[key]) {
    if (!row.is_array()) throw std::invalid_argument("non-array row in " + key);
    std::vector<double> r;
    for (const auto& v : row) {
      if (!v.is_number()) throw std::invalid_argument("non-numeric entry in " + key);
      r.push_back(v.get<double>());
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

ChannelVariant parse_channel(const json& doc) {
  if (!doc.is_object() || !doc.contains("type") || !doc["type"].is_string())
    throw std::invalid_argument("channel document needs a string 'type'");
  const std::string type = doc["type"].get<std::string>();
  if (type == "dmc") return Dmc(require_matrix(doc, "forward"));
  if (type == "bsc") return Dmc::bsc(require_number(doc, "p"));
  if (type == "bec") return Dmc::bec(require_number(doc, "delta"));
  if (type == "z") return Dmc::z_channel(require_number(doc, "p"));
  if (type == "noiseless") return Dmc::noiseless(static_cast<int>(require_integer(doc, "size")));
  if (type == "awgn")
    return AwgnChannel(require_number(doc, "signal_power"), require_number(doc, "noise_variance"));
  throw std::invalid_argument("unknown channel type: " + type);
}

json channel_to_json(const ChannelVariant& channel) {
  json doc;
  if (const auto* dmc = std::get_if<Dmc>(&channel)) {
    doc["type"] = "dmc";
    doc["forward"] = dmc->forward_matrix();
  } else {
    const auto& awgn = std::get<AwgnChannel>(channel);
    doc["type"] = "awgn";
    doc["signal_power"] = awgn.signal_power;
    doc["noise_variance"] = awgn.noise_variance;
  }
  return doc;
}

SourceVariant parse_source(const json& doc) {
  if (!doc.is_object() || !doc.contains("type") || !doc["type"].is_string())
    throw std::invalid_argument("source document needs a string 'type'");
  const std::string type = doc["type"].get<std::string>();
  if (type == "uniform")
    return MessageSource::uniform(static_cast<std::uint64_t>(require_integer(doc, "M")));
  if (type == "weighted") return MessageSource(require_vector(doc, "probs"));
  if (type == "zipf")
    return MessageSource::zipf(static_cast<std::uint64_t>(require_integer(doc, "M")),
                               doc.contains("exponent") ? require_number(doc, "exponent") : 1.0);
  if (type == "iid")
    return IidSymbolSource(require_vector(doc, "gamma"),
                           static_cast<int>(require_integer(doc, "L")));
  if (type == "pair")
    return CorrelatedPairSource(require_matrix(doc, "joint"),
                                static_cast<int>(require_integer(doc, "block_len")));
  throw std::invalid_argument("unknown source type: " + type);
}

json source_to_json(const SourceVariant& source) {
  json doc;
  if (const auto* msg = std::get_if<MessageSource>(&source)) {
    const auto& p = msg->probs();
    const bool uniform = std::all_of(p.begin(), p.end(), [&](double v) { return v == p[0]; });
    if (uniform) {
      doc["type"] = "uniform";
      doc["M"] = msg->message_count();
    } else {
      doc["type"] = "weighted";
      doc["probs"] = p;
    }
  } else if (const auto* iid = std::get_if<IidSymbolSource>(&source)) {
    doc["type"] = "iid";
    doc["gamma"] = iid->gamma();
    doc["L"] = iid->block_len();
  } else {
    const auto& pair = std::get<CorrelatedPairSource>(source);
    doc["type"] = "pair";
    doc["joint"] = pair.symbol_joint();
    doc["block_len"] = pair.block_len();
  }
  return doc;
}

ExperimentConfig parse_experiment(const json& doc) {
  if (!doc.is_object()) throw std::invalid_argument("experiment config must be an object");
  ExperimentConfig cfg;
  if (!doc.contains("scheme") || !doc["scheme"].is_string())
    throw std::invalid_argument("experiment config needs a string 'scheme'");
  cfg.scheme = scheme_from_name(doc["scheme"].get<std::string>());
  if (!doc.contains("channel")) throw std::invalid_argument("experiment config needs 'channel'");
  cfg.channel = parse_channel(doc["channel"]);
  if (doc.contains("source")) {
    cfg.source = parse_source(doc["source"]);
  } else if (cfg.scheme == Scheme::bec_repetition) {
    cfg.source = MessageSource::uniform(2);
  } else {
    throw std::invalid_argument("experiment config needs 'source'");
  }
  if (doc.contains("epsilon")) cfg.epsilon = require_number(doc, "epsilon");
  if (doc.contains("trials"))
    cfg.trials = static_cast<std::uint64_t>(require_integer(doc, "trials"));
  if (doc.contains("seed")) cfg.seed = static_cast<std::uint64_t>(require_integer(doc, "seed"));
  if (doc.contains("codebook")) {
    const auto& cb = doc["codebook"];
    if (!cb.is_object()) throw std::invalid_argument("'codebook' must be an object");
    if (cb.contains("seed")) cfg.codebook_seed = static_cast<std::uint64_t>(require_integer(cb, "seed"));
    if (cb.contains("prior")) cfg.codebook_prior = require_vector(cb, "prior");
    if (cb.contains("M")) {
      const auto m = static_cast<std::uint64_t>(require_integer(cb, "M"));
      const std::uint64_t from_source = std::visit(
          [](const auto& src) -> std::uint64_t {
            using T = std::decay_t<decltype(src)>;
            if constexpr (std::is_same_v<T, MessageSource> || std::is_same_v<T, IidSymbolSource>)
              return src.message_count();
            else
              return src.w1_count() * src.w2_count();
          },
          cfg.source);
      if (m != from_source)
        throw std::invalid_argument("codebook M does not match the source message count");
    }
  }
  if (doc.contains("feedback_period"))
    cfg.feedback_period = static_cast<int>(require_integer(doc, "feedback_period"));
  if (doc.contains("randomize_alpha")) cfg.randomize_alpha = require_number(doc, "randomize_alpha");
  if (doc.contains("max_symbols"))
    cfg.max_symbols = static_cast<std::uint64_t>(require_integer(doc, "max_symbols"));
  if (doc.contains("workers")) cfg.workers = static_cast<int>(require_integer(doc, "workers"));
  return cfg;
}

json experiment_to_json(const ExperimentConfig& cfg) {
  json doc;
  doc["scheme"] = scheme_name(cfg.scheme);
  doc["channel"] = channel_to_json(cfg.channel);
  doc["source"] = source_to_json(cfg.source);
  doc["epsilon"] = cfg.epsilon;
  doc["trials"] = cfg.trials;
  doc["seed"] = cfg.seed;
  if (cfg.codebook_seed != 0 || cfg.codebook_prior) {
    json cb;
    if (cfg.codebook_seed != 0) cb["seed"] = cfg.codebook_seed;
    if (cfg.codebook_prior) cb["prior"] = *cfg.codebook_prior;
    doc["codebook"] = cb;
  }
  doc["feedback_period"] = cfg.feedback_period;
  doc["randomize_alpha"] = cfg.randomize_alpha;
  doc["max_symbols"] = cfg.max_symbols;
  // workers is an execution hint, not an experiment parameter: reports are
  // identical across worker counts, so it is not echoed
  return doc;
}

json report_to_json(const Report& report, const ExperimentConfig& cfg) {
  json doc;
  doc["config"] = experiment_to_json(cfg);
  doc["scheme"] = report.scheme;
  doc["trials"] = report.trials;
  doc["error_rate"] = report.error_rate;
  doc["error_ci95"] = {report.error_ci.lo, report.error_ci.hi};
  doc["mean_t"] = report.mean_t;
  doc["mean_t_ci95"] = {report.mean_t_ci.lo, report.mean_t_ci.hi};
  doc["empirical_rate"] = report.empirical_rate;
  doc["ties"] = report.ties;
  doc["truncated"] = report.truncated;
  doc["bounds"] = report.bound_values;
  doc["extras"] = report.extras;
  return doc;
}

std::string trials_to_csv(const std::vector<TrialRecord>& records) {
  std::string out = "trial,w,w_hat,T,error,tie,truncated\n";
  for (const auto& r : records) {
    out += std::to_string(r.trial_index);
    out += ',';
    out += std::to_string(r.w);
    out += ',';
    out += r.w_hat == kNoDecision ? std::string("-1") : std::to_string(r.w_hat);
    out += ',';
    out += std::to_string(r.stopping_time);
    out += ',';
    out += r.error ? '1' : '0';
    out += ',';
    out += r.tie ? '1' : '0';
    out += ',';
    out += r.truncated ? '1' : '0';
    out += '\n';
  }
  return out;
}

namespace {

using ParamMap = std::map<std::string, double>;

double param(const ParamMap& p, const std::string& name) {
  const auto it = p.find(name);
  if (it == p.end())
    throw std::invalid_argument("sweep formula needs parameter '" + name + "'");
  return it->second;
}

int param_int(const ParamMap& p, const std::string& name) {
  return static_cast<int>(std::llround(param(p, name)));
}

using Formula = std::function<double(const ParamMap&)>;

const std::map<std::string, Formula>& formula_registry() {
  static const std::map<std::string, Formula> registry = {
      {"rate_known",
       [](const ParamMap& p) {
         return bounds::rate_known(param(p, "capacity"), param(p, "log2_m"), param(p, "epsilon"));
       }},
      {"rate_known_randomized",
       [](const ParamMap& p) {
         return bounds::rate_known_randomized(param(p, "capacity"), param(p, "log2_m"),
                                              param(p, "epsilon"));
       }},
      {"error_exponent_known",
       [](const ParamMap& p) {
         return bounds::error_exponent_known(param(p, "capacity"), param(p, "rate"),
                                             param(p, "log2_m"));
       }},
      {"converse_rate",
       [](const ParamMap& p) {
         return bounds::converse_rate(param(p, "capacity"), param(p, "log2_m"),
                                      param(p, "epsilon"));
       }},
      {"rate_universal",
       [](const ParamMap& p) {
         return bounds::rate_universal(param(p, "capacity"), param(p, "log2_m"),
                                       param(p, "epsilon"), param_int(p, "x_size"),
                                       param_int(p, "y_size"));
       }},
      {"rate_universal_randomized",
       [](const ParamMap& p) {
         return bounds::rate_universal_randomized(param(p, "capacity"), param(p, "log2_m"),
                                                  param(p, "epsilon"), param(p, "delta"),
                                                  param_int(p, "x_size"), param_int(p, "y_size"));
       }},
      {"rate_limited_feedback",
       [](const ParamMap& p) {
         return bounds::rate_limited_feedback(param(p, "capacity"), param(p, "log2_m"),
                                              param(p, "epsilon"), param_int(p, "s"));
       }},
      {"joint_sc_expected_time",
       [](const ParamMap& p) {
         return bounds::joint_sc_expected_time(param(p, "entropy_bits"), param(p, "capacity"),
                                               param(p, "epsilon"));
       }},
      {"joint_sc_rate",
       [](const ParamMap& p) {
         return bounds::joint_sc_rate(param(p, "per_bit_entropy"), param(p, "capacity"),
                                      param(p, "epsilon"), param(p, "log2_m"));
       }},
      {"slepian_wolf_r1",
       [](const ParamMap& p) {
         return bounds::slepian_wolf_rates(param(p, "h1"), param(p, "h2_given_1"),
                                           param(p, "epsilon"))
             .r1;
       }},
      {"slepian_wolf_r2",
       [](const ParamMap& p) {
         return bounds::slepian_wolf_rates(param(p, "h1"), param(p, "h2_given_1"),
                                           param(p, "epsilon"))
             .r2;
       }},
      {"slepian_wolf_sum",
       [](const ParamMap& p) {
         return bounds::slepian_wolf_rates(param(p, "h1"), param(p, "h2_given_1"),
                                           param(p, "epsilon"))
             .sum;
       }},
      {"rate_complete_universal",
       [](const ParamMap& p) {
         return bounds::rate_complete_universal(
             param(p, "capacity"), param(p, "log2_m"), param(p, "epsilon"),
             param_int(p, "x_size"), param_int(p, "y_size"), param(p, "per_bit_entropy"),
             param_int(p, "source_alphabet"), param_int(p, "block_len"));
       }},
      {"universal_expected_time",
       [](const ParamMap& p) {
         return bounds::universal_expected_time(param(p, "capacity"), param(p, "log2_m"),
                                                param(p, "epsilon"), param_int(p, "x_size"),
                                                param_int(p, "y_size"));
       }},
      {"wald_expected_time",
       [](const ParamMap& p) {
         return bounds::wald_expected_time(param(p, "threshold_bits"), param(p, "capacity"));
       }},
  };
  return registry;
}

std::vector<double> grid_points(const json& sweep) {
  if (!sweep.is_object()) throw std::invalid_argument("'sweep' must be an object");
  const double from = require_number(sweep, "from");
  const double to = require_number(sweep, "to");
  const auto points = require_integer(sweep, "points");
  if (points < 0) throw std::invalid_argument("sweep points must be nonnegative");
  std::string scale = "linear";
  if (sweep.contains("scale")) scale = sweep["scale"].get<std::string>();
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(points));
  for (std::int64_t i = 0; i < points; ++i) {
    double v;
    if (points == 1) {
      v = from;
    } else if (scale == "linear") {
      v = from + (to - from) * static_cast<double>(i) / static_cast<double>(points - 1);
    } else if (scale == "log2") {
      if (!(from > 0 && to > 0))
        throw std::invalid_argument("log2 sweep needs positive endpoints");
      v = from * std::exp2(std::log2(to / from) * static_cast<double>(i) /
                           static_cast<double>(points - 1));
    } else {
      throw std::invalid_argument("unknown sweep scale: " + scale);
    }
    grid.push_back(v);
  }
  return grid;
}

}  // namespace

std::vector<std::string> sweep_formula_names() {
  std::vector<std::string> names;
  for (const auto& [name, fn] : formula_registry()) names.push_back(name);
  return names;
}

std::string run_sweep_table(const json& spec) {
  if (!spec.is_object()) throw std::invalid_argument("sweep spec must be an object");
  std::vector<std::string> formulas;
  if (spec.contains("formulas")) {
    for (const auto& f : spec["formulas"]) formulas.push_back(f.get<std::string>());
  } else if (spec.contains("formula")) {
    formulas.push_back(spec["formula"].get<std::string>());
  } else {
    throw std::invalid_argument("sweep spec needs 'formula' or 'formulas'");
  }
  const auto& registry = formula_registry();
  for (const auto& name : formulas)
    if (!registry.count(name)) throw std::invalid_argument("unknown formula: " + name);

  if (!spec.contains("sweep")) throw std::invalid_argument("sweep spec needs 'sweep'");
  const std::string variable = spec["sweep"].contains("variable")
                                   ? spec["sweep"]["variable"].get<std::string>()
                                   : "log2_m";
  const std::vector<double> grid = grid_points(spec["sweep"]);

  ParamMap fixed;
  if (spec.contains("fixed")) {
    for (const auto& [key, value] : spec["fixed"].items()) {
      if (!value.is_number()) throw std::invalid_argument("non-numeric fixed parameter " + key);
      fixed[key] = value.get<double>();
    }
  }

  const bool simulate = spec.contains("simulate");
  json sim_template;
  if (simulate) {
    sim_template = spec["simulate"];
    if (variable != "log2_m")
      throw std::invalid_argument("simulated sweeps support only the log2_m variable");
  }

  std::string csv = variable;
  for (const auto& name : formulas) csv += "," + name;
  if (simulate) csv += ",sim_rate,sim_error_rate,sim_mean_t";
  csv += '\n';

  for (const double v : grid) {
    ParamMap point = fixed;
    point[variable] = v;
    csv += format_double(v);
    for (const auto& name : formulas) {
      csv += ',';
      csv += format_double(registry.at(name)(point));
    }
    if (simulate) {
      const double k = point.at("log2_m");
      if (std::abs(k - std::round(k)) > 1e-9 || k < 1 || k > 30)
        throw std::invalid_argument("simulated sweeps need integer log2_m in [1,30]");
      json doc = sim_template;
      doc["source"] = {{"type", "uniform"}, {"M", std::uint64_t{1} << static_cast<int>(k)}};
      ExperimentConfig cfg = parse_experiment(doc);
      const Report rep = Experiment(cfg).run();
      csv += ',';
      csv += format_double(rep.empirical_rate);
      csv += ',';
      csv += format_double(rep.error_rate);
      csv += ',';
      csv += format_double(rep.mean_t);
    }
    csv += '\n';
  }
  return csv;
}

std::string run_bounds_table(const json& spec) {
  if (!spec.is_object() || !spec.contains("formula"))
    throw std::invalid_argument("bounds spec needs 'formula'");
  json single = spec;
  single.erase("formulas");
  return run_sweep_table(single);
}

}  // namespace rateless
