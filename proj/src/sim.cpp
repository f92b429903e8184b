#include "rateless/sim.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "rateless/mixture.hpp"

namespace rateless {

namespace {

enum Role : std::uint64_t {
  kRoleSource = 1,
  kRoleChannel = 2,
  kRoleTie = 3,
  kRoleRandomize = 4,
  kRoleTrials = 5,
  kRoleCodebookFamily = 6,
};

constexpr double kZ95 = 1.959963984540054;

bool is_noiseless_binary(const Dmc& dmc) {
  return dmc.input_size() == 2 && dmc.output_size() == 2 &&
         dmc.forward(0, 0) == 1.0 && dmc.forward(1, 1) == 1.0;
}

}  // namespace

std::string scheme_name(Scheme s) {
  switch (s) {
    case Scheme::known: return "known";
    case Scheme::universal: return "universal";
    case Scheme::bec_repetition: return "bec_repetition";
    case Scheme::joint_sc: return "joint_sc";
    case Scheme::slepian_wolf: return "slepian_wolf";
    case Scheme::complete_universal: return "complete_universal";
  }
  return "unknown";
}

Scheme scheme_from_name(const std::string& name) {
  if (name == "known") return Scheme::known;
  if (name == "universal") return Scheme::universal;
  if (name == "bec_repetition") return Scheme::bec_repetition;
  if (name == "joint_sc") return Scheme::joint_sc;
  if (name == "slepian_wolf") return Scheme::slepian_wolf;
  if (name == "complete_universal") return Scheme::complete_universal;
  throw std::invalid_argument("unknown scheme: " + name);
}

Interval wilson_interval(std::uint64_t successes, std::uint64_t n, double z) {
  if (n == 0) return {0, 1};
  const double nn = static_cast<double>(n);
  const double p = static_cast<double>(successes) / nn;
  const double z2 = z * z;
  const double denom = 1 + z2 / nn;
  const double center = (p + z2 / (2 * nn)) / denom;
  const double half = z * std::sqrt(p * (1 - p) / nn + z2 / (4 * nn * nn)) / denom;
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

Experiment::Experiment(ExperimentConfig cfg) : cfg_(std::move(cfg)) {
  if (cfg_.trials < 1) throw std::invalid_argument("trials must be at least 1");
  if (!(cfg_.epsilon > 0 && cfg_.epsilon < 1))
    throw std::invalid_argument("epsilon must be in (0,1)");
  if (cfg_.feedback_period < 1) throw std::invalid_argument("feedback period must be >= 1");
  if (!(cfg_.randomize_alpha >= 0 && cfg_.randomize_alpha < 1))
    throw std::invalid_argument("randomize alpha must be in [0,1)");

  const bool discrete = std::holds_alternative<Dmc>(cfg_.channel);
  if (!discrete && cfg_.scheme != Scheme::known)
    throw std::invalid_argument("only the known-channel scheme supports gaussian channels");

  if (discrete) {
    const Dmc& dmc = std::get<Dmc>(cfg_.channel);
    const CapacityResult cap = capacity(dmc, 1e-9, 200000);
    capacity_bits_ = cap.capacity_bits;
    prior_ = cfg_.codebook_prior ? InputPrior(*cfg_.codebook_prior) : cap.optimal_prior;
    if (prior_.size() != dmc.input_size())
      throw std::invalid_argument("codebook prior size does not match channel input size");
    backward_ = backward_channel(dmc, prior_);
  } else {
    capacity_bits_ = std::get<AwgnChannel>(cfg_.channel).capacity_bits();
  }

  switch (cfg_.scheme) {
    case Scheme::known:
    case Scheme::universal: {
      const auto* src = std::get_if<MessageSource>(&cfg_.source);
      if (!src) throw std::invalid_argument("scheme needs a message source");
      message_count_ = src->message_count();
      thresholds_ = ThresholdScheme::equiprobable(message_count_, cfg_.epsilon);
      break;
    }
    case Scheme::joint_sc: {
      const auto* src = std::get_if<MessageSource>(&cfg_.source);
      if (!src) throw std::invalid_argument("joint_sc needs a message source");
      message_count_ = src->message_count();
      thresholds_ = ThresholdScheme::weighted(src->probs(), cfg_.epsilon);
      break;
    }
    case Scheme::complete_universal: {
      const auto* src = std::get_if<IidSymbolSource>(&cfg_.source);
      if (!src) throw std::invalid_argument("complete_universal needs an iid symbol source");
      message_count_ = src->message_count();
      std::vector<double> a(message_count_);
      for (std::uint64_t w = 0; w < message_count_; ++w)
        a[w] = universal_threshold(src->decode_block(w), src->alphabet_size(), cfg_.epsilon);
      thresholds_ = ThresholdScheme::explicit_bits(std::move(a));
      break;
    }
    case Scheme::slepian_wolf: {
      const auto* src = std::get_if<CorrelatedPairSource>(&cfg_.source);
      if (!src) throw std::invalid_argument("slepian_wolf needs a correlated pair source");
      if (!discrete || !is_noiseless_binary(std::get<Dmc>(cfg_.channel)))
        throw std::invalid_argument("slepian_wolf runs over a noiseless binary channel");
      if (src->w1_alphabet() != 2 || src->w2_alphabet() != 2)
        throw std::invalid_argument("slepian_wolf pair source must be binary");
      message_count_ = src->w1_count() * src->w2_count();
      std::vector<double> a1(src->w1_count());
      for (std::uint64_t w1 = 0; w1 < src->w1_count(); ++w1)
        a1[w1] = -std::log2(cfg_.epsilon / 2) - src->log2_marginal_w1(w1);
      sw_stage1_ = ThresholdScheme::explicit_bits(std::move(a1));
      break;
    }
    case Scheme::bec_repetition: {
      if (!discrete) throw std::invalid_argument("bec_repetition needs a discrete channel");
      const Dmc& dmc = std::get<Dmc>(cfg_.channel);
      if (dmc.input_size() != 2 || dmc.output_size() != 3)
        throw std::invalid_argument("bec_repetition needs a binary erasure channel");
      message_count_ = 2;
      break;
    }
  }
  log2_m_ = std::log2(static_cast<double>(message_count_));

  if (discrete && (cfg_.scheme == Scheme::universal || cfg_.scheme == Scheme::complete_universal))
    redundancy_ = redundancy_constants(prior_.size(), std::get<Dmc>(cfg_.channel).output_size());

  if (cfg_.max_symbols > 0) {
    max_symbols_ = cfg_.max_symbols;
  } else if (cfg_.scheme == Scheme::bec_repetition) {
    max_symbols_ = 4096;
  } else {
    double a_max = 0;
    if (thresholds_) {
      for (double a : thresholds_->thresholds())
        if (std::isfinite(a)) a_max = std::max(a_max, a);
    }
    if (sw_stage1_) {
      for (double a : sw_stage1_->thresholds())
        if (std::isfinite(a)) a_max = std::max(a_max, a);
      a_max += log2_m_ - std::log2(cfg_.epsilon / 2);  // stage-2 allowance
    }
    double auto_cap = 1e6;
    if (capacity_bits_ > 1e-9)
      auto_cap = std::ceil(64.0 * (a_max + capacity_bits_) / capacity_bits_);
    max_symbols_ = static_cast<std::uint64_t>(std::clamp(auto_cap, 16.0, 1e6));
  }
  // keep announced stopping times within the cap under latched feedback
  const auto s = static_cast<std::uint64_t>(cfg_.feedback_period);
  max_symbols_ = ((max_symbols_ + s - 1) / s) * s;
}

std::uint64_t Experiment::codebook_seed_for(std::uint64_t trial_index) const {
  const std::uint64_t base = cfg_.codebook_seed != 0
                                 ? cfg_.codebook_seed
                                 : substream(cfg_.seed, kRoleCodebookFamily);
  return substream(base, trial_index);
}

std::uint64_t Experiment::latch_time(std::uint64_t decision_time) const {
  const auto s = static_cast<std::uint64_t>(cfg_.feedback_period);
  if (s == 1) return decision_time;
  return ((decision_time + s - 1) / s) * s;
}

TrialRecord Experiment::run_trial(std::uint64_t trial_index) const {
  switch (cfg_.scheme) {
    case Scheme::known:
    case Scheme::joint_sc:
      return trial_known(trial_index);
    case Scheme::universal:
    case Scheme::complete_universal:
      return trial_universal(trial_index);
    case Scheme::bec_repetition:
      return trial_bec_repetition(trial_index);
    case Scheme::slepian_wolf:
      return trial_slepian_wolf(trial_index);
  }
  throw std::logic_error("unreachable scheme");
}

TrialRecord Experiment::trial_known(std::uint64_t index) const {
  TrialRecord rec;
  rec.trial_index = index;
  const std::uint64_t trial_key = substream(substream(cfg_.seed, kRoleTrials), index);
  Rng rng_source(trial_key, kRoleSource);
  Rng rng_channel(trial_key, kRoleChannel);
  Rng rng_tie(trial_key, kRoleTie);
  Rng rng_rand(trial_key, kRoleRandomize);

  const auto& src = std::get<MessageSource>(cfg_.source);
  rec.w = src.sample_message(rng_source);
  if (cfg_.randomize_alpha > 0 && randomized_early_error(cfg_.randomize_alpha, rng_rand)) {
    rec.error = true;
    rec.stopping_time = 0;
    return rec;
  }

  if (std::holds_alternative<AwgnChannel>(cfg_.channel)) {
    const AwgnChannel& ch = std::get<AwgnChannel>(cfg_.channel);
    Codebook cb = Codebook::gaussian(codebook_seed_for(index), message_count_, ch.signal_power);
    GaussianKnownDecoder dec(cb, ch, *thresholds_);
    const std::uint64_t enc_key = cb.message_key(rec.w);
    for (std::uint64_t t = 0; t < max_symbols_; ++t) {
      const double x = cb.gaussian_symbol_at(enc_key, t);
      const double y = ch.sample_output(x, rng_channel);
      const Decision d = dec.step(y);
      if (d.stopped()) {
        rec.stopping_time = latch_time(d.time);
        if (d.kind == DecisionKind::tie) {
          rec.tie = true;
          rec.error = true;
          rec.w_hat = resolve_tie(d, rng_tie);
        } else {
          rec.w_hat = d.message;
          rec.error = d.message != rec.w;
        }
        return rec;
      }
    }
  } else {
    const Dmc& dmc = std::get<Dmc>(cfg_.channel);
    Codebook cb = Codebook::discrete(codebook_seed_for(index), message_count_, prior_);
    KnownChannelDecoder dec(cb, *backward_, prior_, *thresholds_);
    const std::uint64_t enc_key = cb.message_key(rec.w);
    for (std::uint64_t t = 0; t < max_symbols_; ++t) {
      const int x = cb.symbol_at(enc_key, t);
      const int y = dmc.sample_output(x, rng_channel);
      const Decision d = dec.step(y);
      if (d.stopped()) {
        rec.stopping_time = latch_time(d.time);
        if (d.kind == DecisionKind::tie) {
          rec.tie = true;
          rec.error = true;
          rec.w_hat = resolve_tie(d, rng_tie);
        } else {
          rec.w_hat = d.message;
          rec.error = d.message != rec.w;
        }
        return rec;
      }
    }
  }
  rec.truncated = true;
  rec.error = true;
  rec.stopping_time = max_symbols_;
  return rec;
}

TrialRecord Experiment::trial_universal(std::uint64_t index) const {
  TrialRecord rec;
  rec.trial_index = index;
  const std::uint64_t trial_key = substream(substream(cfg_.seed, kRoleTrials), index);
  Rng rng_source(trial_key, kRoleSource);
  Rng rng_channel(trial_key, kRoleChannel);
  Rng rng_tie(trial_key, kRoleTie);
  Rng rng_rand(trial_key, kRoleRandomize);

  if (cfg_.scheme == Scheme::universal) {
    rec.w = std::get<MessageSource>(cfg_.source).sample_message(rng_source);
  } else {
    const auto& src = std::get<IidSymbolSource>(cfg_.source);
    rec.w = src.encode_block(src.sample_block(rng_source));
  }
  if (cfg_.randomize_alpha > 0 && randomized_early_error(cfg_.randomize_alpha, rng_rand)) {
    rec.error = true;
    rec.stopping_time = 0;
    return rec;
  }

  const Dmc& dmc = std::get<Dmc>(cfg_.channel);
  Codebook cb = Codebook::discrete(codebook_seed_for(index), message_count_, prior_);
  UniversalDecoder dec(cb, dmc.output_size(), *thresholds_);
  const std::uint64_t enc_key = cb.message_key(rec.w);

  // replay audit of the stopping-time chain against the true channel law
  const double a_true = thresholds_->threshold(rec.w);
  const double beta = redundancy_.beta;
  const double loose = redundancy_.loose_coeff;
  double known_sum = 0;
  std::uint64_t dominance_t = 0;  // first t where the known score beats a + penalty(t)
  std::uint64_t true_cross_t = 0;

  Decision first;
  for (std::uint64_t t = 0; t < max_symbols_; ++t) {
    const int x = cb.symbol_at(enc_key, t);
    const int y = dmc.sample_output(x, rng_channel);
    const Decision d = dec.step(y);

    const double theta =
        backward_->posterior[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)];
    const double z = std::log2(theta) - std::log2(prior_.probs[static_cast<std::size_t>(x)]);
    known_sum += z;
    const double penalty = loose * std::log2(static_cast<double>(t + 1)) + beta;
    if (dominance_t == 0 && known_sum >= a_true + penalty) dominance_t = t + 1;
    if (true_cross_t == 0 && dec.score(rec.w) >= a_true) {
      true_cross_t = t + 1;
      if (known_sum > a_true + penalty + z + 1e-9) rec.replay_ok = false;
    }

    if (!first.stopped() && d.stopped()) first = d;
    if (first.stopped() && true_cross_t != 0) break;
  }

  if (dominance_t != 0 && (true_cross_t == 0 || true_cross_t > dominance_t))
    rec.dominance_ok = false;

  if (!first.stopped()) {
    rec.truncated = true;
    rec.error = true;
    rec.stopping_time = max_symbols_;
    return rec;
  }
  rec.stopping_time = latch_time(first.time);
  if (first.kind == DecisionKind::tie) {
    rec.tie = true;
    rec.error = true;
    rec.w_hat = resolve_tie(first, rng_tie);
  } else {
    rec.w_hat = first.message;
    rec.error = first.message != rec.w;
  }
  return rec;
}

TrialRecord Experiment::trial_bec_repetition(std::uint64_t index) const {
  TrialRecord rec;
  rec.trial_index = index;
  const std::uint64_t trial_key = substream(substream(cfg_.seed, kRoleTrials), index);
  Rng rng_source(trial_key, kRoleSource);
  Rng rng_channel(trial_key, kRoleChannel);

  const Dmc& dmc = std::get<Dmc>(cfg_.channel);
  rec.w = rng_source.unit() < 0.5 ? 0 : 1;
  for (std::uint64_t t = 0; t < max_symbols_; ++t) {
    const int y = dmc.sample_output(static_cast<int>(rec.w), rng_channel);
    if (y != 2) {  // unerased symbol ends the bit
      rec.stopping_time = t + 1;
      rec.w_hat = static_cast<std::uint64_t>(y);
      rec.error = rec.w_hat != rec.w;
      return rec;
    }
  }
  rec.truncated = true;
  rec.error = true;
  rec.stopping_time = max_symbols_;
  return rec;
}

TrialRecord Experiment::trial_slepian_wolf(std::uint64_t index) const {
  TrialRecord rec;
  rec.trial_index = index;
  const std::uint64_t trial_key = substream(substream(cfg_.seed, kRoleTrials), index);
  Rng rng_source(trial_key, kRoleSource);
  Rng rng_channel(trial_key, kRoleChannel);
  Rng rng_tie(trial_key, kRoleTie);

  const auto& src = std::get<CorrelatedPairSource>(cfg_.source);
  const Dmc& dmc = std::get<Dmc>(cfg_.channel);
  const auto [w1, w2] = src.sample_pair(rng_source);
  rec.w = w1 * src.w2_count() + w2;

  const std::uint64_t cb_seed = codebook_seed_for(index);
  const Codebook cb1 = Codebook::discrete(substream(cb_seed, 1), src.w1_count(), prior_);
  const Codebook cb2 = Codebook::discrete(substream(cb_seed, 2), src.w2_count(), prior_);

  // stage 1: decode W1 with thresholds from the block marginal at eps/2
  std::uint64_t what1 = kNoDecision;
  {
    KnownChannelDecoder dec(cb1, *backward_, prior_, *sw_stage1_);
    const std::uint64_t enc_key = cb1.message_key(w1);
    for (std::uint64_t t = 0; t < max_symbols_; ++t) {
      const int x = cb1.symbol_at(enc_key, t);
      const int y = dmc.sample_output(x, rng_channel);
      const Decision d = dec.step(y);
      if (d.stopped()) {
        rec.t1 = latch_time(d.time);
        if (d.kind == DecisionKind::tie) {
          rec.tie = true;
          what1 = resolve_tie(d, rng_tie);
        } else {
          what1 = d.message;
        }
        break;
      }
    }
    if (what1 == kNoDecision) {
      rec.truncated = true;
      rec.error = true;
      rec.t1 = max_symbols_;
      rec.stopping_time = max_symbols_;
      return rec;
    }
  }

  // stage 2: decode W2 with thresholds conditioned on the decoded W1
  std::uint64_t what2 = kNoDecision;
  {
    KnownChannelDecoder dec(
        cb2, *backward_, prior_,
        ThresholdScheme::explicit_bits(side_info_threshold_bits(src, what1, cfg_.epsilon)));
    const std::uint64_t enc_key = cb2.message_key(w2);
    for (std::uint64_t t = 0; t < max_symbols_; ++t) {
      const int x = cb2.symbol_at(enc_key, t);
      const int y = dmc.sample_output(x, rng_channel);
      const Decision d = dec.step(y);
      if (d.stopped()) {
        rec.t2 = latch_time(d.time);
        if (d.kind == DecisionKind::tie) {
          rec.tie = true;
          what2 = resolve_tie(d, rng_tie);
        } else {
          what2 = d.message;
        }
        break;
      }
    }
    if (what2 == kNoDecision) {
      rec.truncated = true;
      rec.error = true;
      rec.t2 = max_symbols_;
      rec.stopping_time = rec.t1 + max_symbols_;
      return rec;
    }
  }

  rec.w_hat = what1 * src.w2_count() + what2;
  rec.stopping_time = rec.t1 + rec.t2;
  rec.error = rec.tie || what1 != w1 || what2 != w2;
  return rec;
}

Report Experiment::run(std::vector<TrialRecord>* out) const {
  const std::uint64_t n = cfg_.trials;
  std::vector<TrialRecord> records(n);

  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  auto workers = static_cast<std::uint64_t>(cfg_.workers > 0 ? cfg_.workers : hw);
  workers = std::min<std::uint64_t>(workers, n);

  if (workers <= 1) {
    for (std::uint64_t i = 0; i < n; ++i) records[i] = run_trial(i);
  } else {
    std::atomic<std::uint64_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;
    const std::uint64_t chunk = std::max<std::uint64_t>(1, n / (workers * 16));
    auto worker = [&] {
      while (!failed.load(std::memory_order_relaxed)) {
        const std::uint64_t begin = next.fetch_add(chunk);
        if (begin >= n) break;
        const std::uint64_t end = std::min(n, begin + chunk);
        try {
          for (std::uint64_t i = begin; i < end; ++i) records[i] = run_trial(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
          failed.store(true);
          return;
        }
      }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::uint64_t i = 0; i < workers; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
  }

  Report rep = reduce(records);
  if (out) *out = std::move(records);
  return rep;
}

Report Experiment::reduce(const std::vector<TrialRecord>& records) const {
  Report rep;
  rep.scheme = scheme_name(cfg_.scheme);
  rep.trials = records.size();

  std::uint64_t errors = 0, ties = 0, truncated = 0;
  unsigned long long sum_t = 0, sum_t1 = 0, sum_t2 = 0;
  std::uint64_t replay_violations = 0, dominance_violations = 0;
  for (const auto& r : records) {
    errors += r.error ? 1 : 0;
    ties += r.tie ? 1 : 0;
    truncated += r.truncated ? 1 : 0;
    sum_t += r.stopping_time;
    sum_t1 += r.t1;
    sum_t2 += r.t2;
    replay_violations += r.replay_ok ? 0 : 1;
    dominance_violations += r.dominance_ok ? 0 : 1;
  }
  const double n = static_cast<double>(records.size());
  rep.error_rate = static_cast<double>(errors) / n;
  rep.error_ci = wilson_interval(errors, records.size());
  rep.mean_t = static_cast<double>(sum_t) / n;
  rep.ties = ties;
  rep.truncated = truncated;

  double ssq = 0;
  for (const auto& r : records) {
    const double d = static_cast<double>(r.stopping_time) - rep.mean_t;
    ssq += d * d;
  }
  const double sd = records.size() > 1 ? std::sqrt(ssq / (n - 1)) : 0.0;
  const double half = kZ95 * sd / std::sqrt(n);
  rep.mean_t_ci = {rep.mean_t - half, rep.mean_t + half};

  const double eps = cfg_.epsilon;
  const double c = capacity_bits_;
  switch (cfg_.scheme) {
    case Scheme::known: {
      rep.empirical_rate = log2_m_ / rep.mean_t;
      rep.bound_values["epsilon"] = eps;
      rep.bound_values["capacity"] = c;
      if (c > 0) {
        rep.bound_values["rate_known"] = bounds::rate_known(c, log2_m_, eps);
        rep.bound_values["mean_t_wald"] =
            bounds::wald_expected_time(log2_m_ - std::log2(eps), c);
        if ((1 - eps) * log2_m_ > 1)
          rep.bound_values["converse_rate"] = bounds::converse_rate(c, log2_m_, eps);
      }
      break;
    }
    case Scheme::universal: {
      rep.empirical_rate = log2_m_ / rep.mean_t;
      const int ys = std::get<Dmc>(cfg_.channel).output_size();
      rep.bound_values["epsilon"] = eps;
      rep.bound_values["capacity"] = c;
      if (c > 0) {
        rep.bound_values["rate_known"] = bounds::rate_known(c, log2_m_, eps);
        rep.bound_values["rate_universal"] =
            bounds::rate_universal(c, log2_m_, eps, prior_.size(), ys);
        rep.bound_values["mean_t_universal"] =
            bounds::universal_expected_time(c, log2_m_, eps, prior_.size(), ys);
        if ((1 - eps) * log2_m_ > 1)
          rep.bound_values["converse_rate"] = bounds::converse_rate(c, log2_m_, eps);
      }
      rep.extras["replay_violations"] = static_cast<double>(replay_violations);
      rep.extras["dominance_violations"] = static_cast<double>(dominance_violations);
      break;
    }
    case Scheme::bec_repetition: {
      rep.empirical_rate = 1.0 / rep.mean_t;
      const double delta = std::get<Dmc>(cfg_.channel).forward(0, 2);
      rep.bound_values["erasure"] = delta;
      rep.bound_values["expected_transmissions"] = 1.0 / (1.0 - delta);
      break;
    }
    case Scheme::joint_sc: {
      rep.empirical_rate = log2_m_ / rep.mean_t;
      const auto& src = std::get<MessageSource>(cfg_.source);
      rep.bound_values["epsilon"] = eps;
      rep.bound_values["capacity"] = c;
      rep.bound_values["entropy_bits"] = src.entropy_bits();
      if (c > 0) {
        rep.bound_values["mean_t_joint_sc"] =
            bounds::joint_sc_expected_time(src.entropy_bits(), c, eps);
        rep.bound_values["joint_sc_rate"] =
            bounds::joint_sc_rate(src.per_bit_entropy(), c, eps, log2_m_);
      }
      break;
    }
    case Scheme::slepian_wolf: {
      const auto& src = std::get<CorrelatedPairSource>(cfg_.source);
      rep.empirical_rate = rep.mean_t;  // total expected transmission bits
      const auto sw = bounds::slepian_wolf_rates(src.h1_bits(), src.h2_given_1_bits(), eps);
      rep.bound_values["epsilon"] = eps;
      rep.bound_values["h1"] = src.h1_bits();
      rep.bound_values["h2_given_1"] = src.h2_given_1_bits();
      rep.bound_values["r1_bound"] = sw.r1;
      rep.bound_values["r2_bound"] = sw.r2;
      rep.bound_values["sum_bound"] = sw.sum;
      const double m1 = static_cast<double>(sum_t1) / n;
      double ssq1 = 0;
      for (const auto& r : records)
        ssq1 += (static_cast<double>(r.t1) - m1) * (static_cast<double>(r.t1) - m1);
      rep.extras["r1_mean"] = m1;
      rep.extras["r1_ci_half"] =
          records.size() > 1 ? kZ95 * std::sqrt(ssq1 / (n - 1)) / std::sqrt(n) : 0.0;
      // The stage-2 time bound concerns the intended chain: a wrong first
      // stage can make the true W2 threshold infinite, so T2 is reported
      // conditioned on a correct W1 alongside the unconditional mean.
      const std::uint64_t m2_count = src.w2_count();
      unsigned long long sum_t2_ok = 0;
      std::uint64_t n_ok = 0;
      for (const auto& r : records) {
        if (r.w_hat == kNoDecision) continue;
        if (r.w_hat / m2_count == r.w / m2_count) {
          sum_t2_ok += r.t2;
          ++n_ok;
        }
      }
      const double m2 = n_ok > 0 ? static_cast<double>(sum_t2_ok) / static_cast<double>(n_ok) : 0;
      double ssq2 = 0;
      for (const auto& r : records) {
        if (r.w_hat == kNoDecision || r.w_hat / m2_count != r.w / m2_count) continue;
        ssq2 += (static_cast<double>(r.t2) - m2) * (static_cast<double>(r.t2) - m2);
      }
      rep.extras["r2_mean"] = m2;
      rep.extras["r2_trials"] = static_cast<double>(n_ok);
      rep.extras["r2_ci_half"] =
          n_ok > 1 ? kZ95 * std::sqrt(ssq2 / (static_cast<double>(n_ok) - 1)) /
                         std::sqrt(static_cast<double>(n_ok))
                   : 0.0;
      rep.extras["r2_mean_all"] = static_cast<double>(sum_t2) / n;
      break;
    }
    case Scheme::complete_universal: {
      rep.empirical_rate = log2_m_ / rep.mean_t;
      const auto& src = std::get<IidSymbolSource>(cfg_.source);
      const int ys = std::get<Dmc>(cfg_.channel).output_size();
      rep.bound_values["epsilon"] = eps;
      rep.bound_values["capacity"] = c;
      rep.bound_values["block_entropy_bits"] = src.block_entropy_bits();
      if (c > 0) {
        const auto band = bounds::complete_universal_band(
            c, log2_m_, eps, prior_.size(), ys, src.per_bit_entropy(), src.alphabet_size(),
            src.block_len());
        rep.bound_values["rate_band_low"] = band.low;
        rep.bound_values["rate_band_high"] = band.high;
      }
      rep.extras["replay_violations"] = static_cast<double>(replay_violations);
      rep.extras["dominance_violations"] = static_cast<double>(dominance_violations);
      break;
    }
  }
  if (cfg_.randomize_alpha > 0) rep.extras["randomize_alpha"] = cfg_.randomize_alpha;
  return rep;
}

MartingaleAudit martingale_audit(const Dmc& dmc, const InputPrior& prior, double threshold_bits,
                                 std::uint64_t horizon, std::uint64_t samples,
                                 std::uint64_t seed) {
  if (horizon < 1) throw std::invalid_argument("audit horizon must be at least 1");
  if (samples < 2) throw std::invalid_argument("audit needs at least 2 samples");
  const BackwardChannel bw = backward_channel(dmc, prior);
  const int nx = dmc.input_size();
  const int ny = dmc.output_size();

  std::vector<double> prior_cdf(static_cast<std::size_t>(nx));
  {
    double acc = 0;
    for (int x = 0; x < nx; ++x) {
      acc += prior.probs[static_cast<std::size_t>(x)];
      prior_cdf[static_cast<std::size_t>(x)] = acc;
    }
  }
  std::vector<double> marginal_cdf(static_cast<std::size_t>(ny));
  {
    double acc = 0;
    for (int y = 0; y < ny; ++y) {
      acc += bw.output_marginal[static_cast<std::size_t>(y)];
      marginal_cdf[static_cast<std::size_t>(y)] = acc;
    }
  }
  std::vector<double> z_table(static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny));
  for (int x = 0; x < nx; ++x)
    for (int y = 0; y < ny; ++y) {
      const double theta = bw.posterior[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)];
      const double q = prior.probs[static_cast<std::size_t>(x)];
      z_table[static_cast<std::size_t>(x) * static_cast<std::size_t>(ny) +
              static_cast<std::size_t>(y)] =
          (theta > 0 && q > 0) ? std::log2(theta) - std::log2(q)
                               : -std::numeric_limits<double>::infinity();
    }

  long double k_sum = 0, k_sumsq = 0, u_sum = 0, u_sumsq = 0;
  std::uint64_t k_cross = 0, u_cross = 0;
  std::vector<std::uint32_t> counts(static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny));
  std::vector<std::uint32_t> cols(static_cast<std::size_t>(ny));

  for (std::uint64_t i = 0; i < samples; ++i) {
    const std::uint64_t key = substream(substream(seed, 0xad17), i);
    Rng rng_x(key, 1);
    Rng rng_y(key, 2);

    // known-channel construction: product of theta(X,Y)/q(X) with X ⟂ Y
    double log_p = 0;
    bool crossed = false;
    std::fill(counts.begin(), counts.end(), 0u);
    std::fill(cols.begin(), cols.end(), 0u);
    double log_phi = 0;
    bool crossed_phi = false;
    for (std::uint64_t t = 0; t < horizon; ++t) {
      const int x = rng_x.pick(prior_cdf, nx);
      const int y = rng_y.pick(marginal_cdf, ny);
      if (!crossed) {
        log_p += z_table[static_cast<std::size_t>(x) * static_cast<std::size_t>(ny) +
                         static_cast<std::size_t>(y)];
        if (log_p > threshold_bits) crossed = true;
      }
      if (!crossed_phi) {
        const std::size_t c_idx = static_cast<std::size_t>(x) * static_cast<std::size_t>(ny) +
                                  static_cast<std::size_t>(y);
        const double z_mix = std::log2(counts[c_idx] + 0.5) -
                             std::log2(cols[static_cast<std::size_t>(y)] + 0.5 * nx) -
                             std::log2(prior.probs[static_cast<std::size_t>(x)]);
        ++counts[c_idx];
        ++cols[static_cast<std::size_t>(y)];
        log_phi += z_mix;
        if (log_phi > threshold_bits) crossed_phi = true;
      }
    }
    const double v_known = std::exp2(log_p);
    const double v_phi = std::exp2(log_phi);
    k_sum += v_known;
    k_sumsq += static_cast<long double>(v_known) * v_known;
    u_sum += v_phi;
    u_sumsq += static_cast<long double>(v_phi) * v_phi;
    k_cross += crossed ? 1 : 0;
    u_cross += crossed_phi ? 1 : 0;
  }

  MartingaleAudit audit;
  audit.samples = samples;
  audit.horizon = horizon;
  audit.threshold_bits = threshold_bits;
  const long double n = static_cast<long double>(samples);
  audit.known_mean = static_cast<double>(k_sum / n);
  audit.universal_mean = static_cast<double>(u_sum / n);
  const long double k_var = (k_sumsq - k_sum * k_sum / n) / (n - 1);
  const long double u_var = (u_sumsq - u_sum * u_sum / n) / (n - 1);
  audit.known_sigma_mean = static_cast<double>(std::sqrt(std::max(0.0L, k_var) / n));
  audit.universal_sigma_mean = static_cast<double>(std::sqrt(std::max(0.0L, u_var) / n));
  audit.known_crossing_fraction = static_cast<double>(k_cross) / static_cast<double>(samples);
  audit.universal_crossing_fraction = static_cast<double>(u_cross) / static_cast<double>(samples);
  return audit;
}

}  // namespace rateless
