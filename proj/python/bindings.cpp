#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rateless/acceptance.hpp"
#include "rateless/json_io.hpp"

namespace py = pybind11;
using namespace rateless;

PYBIND11_MODULE(_core, m) {
  m.doc() = "rateless coding over discrete memoryless and gaussian channels";

  py::class_<InputPrior>(m, "InputPrior")
      .def(py::init<std::vector<double>>())
      .def_static("uniform", &InputPrior::uniform)
      .def_readonly("probs", &InputPrior::probs)
      .def("entropy_bits", &InputPrior::entropy_bits);

  py::class_<Dmc>(m, "Dmc")
      .def(py::init<std::vector<std::vector<double>>>())
      .def_static("bsc", &Dmc::bsc)
      .def_static("bec", &Dmc::bec)
      .def_static("z_channel", &Dmc::z_channel)
      .def_static("noiseless", &Dmc::noiseless)
      .def_property_readonly("input_size", &Dmc::input_size)
      .def_property_readonly("output_size", &Dmc::output_size)
      .def("forward", &Dmc::forward)
      .def("forward_matrix", &Dmc::forward_matrix);

  py::class_<BackwardChannel>(m, "BackwardChannel")
      .def_readonly("posterior", &BackwardChannel::posterior)
      .def_readonly("output_marginal", &BackwardChannel::output_marginal)
      .def_readonly("zero_marginal", &BackwardChannel::zero_marginal);

  py::class_<AwgnChannel>(m, "AwgnChannel")
      .def(py::init<double, double>(), py::arg("signal_power"), py::arg("noise_variance"))
      .def_readonly("signal_power", &AwgnChannel::signal_power)
      .def_readonly("noise_variance", &AwgnChannel::noise_variance)
      .def("capacity_bits", &AwgnChannel::capacity_bits);

  py::class_<CapacityResult>(m, "CapacityResult")
      .def_readonly("capacity_bits", &CapacityResult::capacity_bits)
      .def_readonly("optimal_prior", &CapacityResult::optimal_prior)
      .def_readonly("iterations", &CapacityResult::iterations)
      .def_readonly("gap_bound", &CapacityResult::gap_bound);

  m.def("make_dmc", &make_dmc);
  m.def("mutual_information", &mutual_information);
  m.def("capacity", &capacity, py::arg("dmc"), py::arg("tolerance_bits") = 1e-9,
        py::arg("max_iters") = 20000);
  m.def("backward_channel", &backward_channel);
  m.def("awgn_log_score", &awgn_log_score);

  py::class_<Codebook>(m, "Codebook")
      .def_static("discrete", &Codebook::discrete)
      .def_static("gaussian", &Codebook::gaussian)
      .def_property_readonly("message_count", &Codebook::message_count)
      .def("symbol", &Codebook::symbol)
      .def("gaussian_symbol", &Codebook::gaussian_symbol)
      .def("prefix", &Codebook::prefix);

  py::class_<CountMatrix>(m, "CountMatrix")
      .def(py::init<int, int>(), py::arg("x_size"), py::arg("y_size"))
      .def("add", &CountMatrix::add)
      .def("count", &CountMatrix::count)
      .def("column_total", &CountMatrix::column_total)
      .def_property_readonly("total", &CountMatrix::total);

  m.def("kt_conditional", &kt_conditional);
  m.def("mixture_log_prob", &mixture_log_prob);
  m.def("ml_log_prob", &ml_log_prob);
  m.def("kt_kappa", &kt_kappa);
  m.def("redundancy_bound", &redundancy_bound);

  py::class_<RedundancyConstants>(m, "RedundancyConstants")
      .def_readonly("kappa", &RedundancyConstants::kappa)
      .def_readonly("beta", &RedundancyConstants::beta)
      .def_readonly("dim_coeff", &RedundancyConstants::dim_coeff)
      .def_readonly("loose_coeff", &RedundancyConstants::loose_coeff);
  m.def("redundancy_constants", &redundancy_constants);

  m.def("universal_source_log_prob", &universal_source_log_prob);
  m.def("universal_threshold", &universal_threshold);
  m.def("conditional_entropy", [](const std::vector<std::vector<double>>& joint) {
    const PairEntropies e = conditional_entropy(joint);
    return py::make_tuple(e.h1, e.h2_given_1, e.h_joint);
  });

  auto b = m.def_submodule("bounds", "closed-form rate, exponent and converse expressions");
  b.def("rate_known", &bounds::rate_known);
  b.def("rate_known_randomized", &bounds::rate_known_randomized);
  b.def("error_exponent_known", &bounds::error_exponent_known);
  b.def("converse_rate", &bounds::converse_rate);
  b.def("rate_universal", &bounds::rate_universal);
  b.def("rate_universal_randomized", &bounds::rate_universal_randomized);
  b.def("rate_limited_feedback", &bounds::rate_limited_feedback);
  b.def("joint_sc_expected_time", &bounds::joint_sc_expected_time);
  b.def("joint_sc_rate", &bounds::joint_sc_rate);
  b.def("universal_expected_time", &bounds::universal_expected_time);
  b.def("wald_expected_time", &bounds::wald_expected_time);
  b.def("universal_gap_ratio", &bounds::universal_gap_ratio);
  b.def("slepian_wolf_rates", [](double h1, double h2g1, double eps) {
    const auto r = bounds::slepian_wolf_rates(h1, h2g1, eps);
    return py::make_tuple(r.r1, r.r2, r.sum);
  });
  b.def("rate_complete_universal", &bounds::rate_complete_universal);
  b.def("burnashev_exponent", [](const Dmc& dmc, double rate) {
    const auto r = bounds::burnashev_exponent(dmc, rate);
    py::dict d;
    d["c1_bits"] = r.c1_bits;
    d["infinite"] = r.infinite;
    d["exponent_bits"] = r.exponent_bits;
    d["capacity_bits"] = r.capacity_bits;
    return d;
  });

  m.def("run_experiment_json", [](const std::string& config_text) {
    const ExperimentConfig cfg = parse_experiment(json::parse(config_text));
    const Report report = Experiment(cfg).run();
    return report_to_json(report, cfg).dump();
  });
  m.def("sweep_table_csv",
        [](const std::string& spec_text) { return run_sweep_table(json::parse(spec_text)); });
  m.def("martingale_audit_stats",
        [](const Dmc& dmc, const InputPrior& prior, double threshold_bits, std::uint64_t horizon,
           std::uint64_t samples, std::uint64_t seed) {
          const MartingaleAudit a =
              martingale_audit(dmc, prior, threshold_bits, horizon, samples, seed);
          py::dict d;
          d["known_mean"] = a.known_mean;
          d["known_sigma_mean"] = a.known_sigma_mean;
          d["known_crossing_fraction"] = a.known_crossing_fraction;
          d["universal_mean"] = a.universal_mean;
          d["universal_sigma_mean"] = a.universal_sigma_mean;
          d["universal_crossing_fraction"] = a.universal_crossing_fraction;
          return d;
        });
}
