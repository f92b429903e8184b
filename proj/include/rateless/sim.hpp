#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "rateless/bounds.hpp"
#include "rateless/channel.hpp"
#include "rateless/codebook.hpp"
#include "rateless/sequential.hpp"
#include "rateless/sources.hpp"

namespace rateless {

inline constexpr std::uint64_t kDefaultSeed = 1;

enum class Scheme {
  known,
  universal,
  bec_repetition,
  joint_sc,
  slepian_wolf,
  complete_universal,
};

std::string scheme_name(Scheme s);
Scheme scheme_from_name(const std::string& name);

using ChannelVariant = std::variant<Dmc, AwgnChannel>;
using SourceVariant = std::variant<MessageSource, IidSymbolSource, CorrelatedPairSource>;

struct ExperimentConfig {
  Scheme scheme = Scheme::known;
  ChannelVariant channel = Dmc::bsc(0.25);
  SourceVariant source = MessageSource::uniform(2);
  double epsilon = 0.0625;
  std::uint64_t trials = 1000;
  std::uint64_t seed = kDefaultSeed;
  std::uint64_t codebook_seed = 0;               // 0: derive from master seed
  std::optional<std::vector<double>> codebook_prior;  // default: capacity-achieving
  int feedback_period = 1;
  double randomize_alpha = 0.0;
  std::uint64_t max_symbols = 0;                 // 0: auto from the Wald bound
  int workers = 0;                               // 0: hardware concurrency
};

// One full encode-channel-decode trial. w_hat is kNoDecision when the trial
// ended without a decision (early randomized termination or truncation).
inline constexpr std::uint64_t kNoDecision = ~std::uint64_t{0};

struct TrialRecord {
  std::uint64_t trial_index = 0;
  std::uint64_t w = 0;
  std::uint64_t w_hat = kNoDecision;
  std::uint64_t stopping_time = 0;
  bool error = false;
  bool tie = false;
  bool truncated = false;
  // per-scheme extras (slepian_wolf stage times; universal audit flags)
  std::uint64_t t1 = 0;
  std::uint64_t t2 = 0;
  bool replay_ok = true;
  bool dominance_ok = true;
};

struct Interval {
  double lo = 0;
  double hi = 0;
};

struct Report {
  std::string scheme;
  std::uint64_t trials = 0;
  double error_rate = 0;
  Interval error_ci;  // Wilson, 95%
  double mean_t = 0;
  Interval mean_t_ci;  // normal, 95%
  double empirical_rate = 0;
  std::uint64_t ties = 0;
  std::uint64_t truncated = 0;
  std::map<std::string, double> bound_values;
  std::map<std::string, double> extras;
};

Interval wilson_interval(std::uint64_t successes, std::uint64_t n, double z = 1.959963984540054);

class Experiment {
 public:
  explicit Experiment(ExperimentConfig cfg);

  // Deterministic in (config, master seed, trial_index); independent of
  // worker count and scheduling.
  TrialRecord run_trial(std::uint64_t trial_index) const;

  // Runs all trials over a bounded worker pool and reduces them in fixed
  // trial order. Pass `records` to also receive the per-trial data.
  Report run(std::vector<TrialRecord>* records = nullptr) const;

  const ExperimentConfig& config() const { return cfg_; }
  double capacity_bits() const { return capacity_bits_; }
  double log2_m() const { return log2_m_; }
  std::uint64_t message_count() const { return message_count_; }
  std::uint64_t max_symbols() const { return max_symbols_; }
  const InputPrior& codebook_prior() const { return prior_; }

 private:
  TrialRecord trial_known(std::uint64_t index) const;
  TrialRecord trial_universal(std::uint64_t index) const;
  TrialRecord trial_bec_repetition(std::uint64_t index) const;
  TrialRecord trial_slepian_wolf(std::uint64_t index) const;
  Report reduce(const std::vector<TrialRecord>& records) const;
  std::uint64_t codebook_seed_for(std::uint64_t trial_index) const;
  std::uint64_t latch_time(std::uint64_t decision_time) const;

  ExperimentConfig cfg_;
  double capacity_bits_ = 0;
  double log2_m_ = 0;
  std::uint64_t message_count_ = 0;
  std::uint64_t max_symbols_ = 0;
  InputPrior prior_ = InputPrior::uniform(2);
  std::optional<BackwardChannel> backward_;
  std::optional<ThresholdScheme> thresholds_;
  // slepian_wolf stage-1 thresholds; stage-2 thresholds depend on the trial
  std::optional<ThresholdScheme> sw_stage1_;
  RedundancyConstants redundancy_{};
};

// Monte Carlo audit of the unit-mean stopped products built from independent
// codeword/output streams, for both the known-channel likelihood-ratio
// construction and the universal mixture construction.
struct MartingaleAudit {
  std::uint64_t samples = 0;
  std::uint64_t horizon = 0;
  double threshold_bits = 0;
  double known_mean = 0;
  double known_sigma_mean = 0;
  double known_crossing_fraction = 0;
  double universal_mean = 0;
  double universal_sigma_mean = 0;
  double universal_crossing_fraction = 0;
};

MartingaleAudit martingale_audit(const Dmc& dmc, const InputPrior& prior, double threshold_bits,
                                 std::uint64_t horizon, std::uint64_t samples,
                                 std::uint64_t seed);

}  // namespace rateless
