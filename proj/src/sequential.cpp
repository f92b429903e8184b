#include "rateless/sequential.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace rateless {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

Decision crossing_decision(const std::vector<double>& scores,
                           const ThresholdScheme& thresholds, std::uint64_t t) {
  Decision d;
  d.time = t;
  std::uint64_t hit = 0;
  std::uint64_t first = 0;
  for (std::uint64_t w = 0; w < scores.size(); ++w) {
    if (scores[w] >= thresholds.threshold(w)) {
      if (hit == 0) first = w;
      ++hit;
    }
  }
  if (hit == 0) return d;
  if (hit == 1) {
    d.kind = DecisionKind::decided;
    d.message = first;
    return d;
  }
  d.kind = DecisionKind::tie;
  d.tie_set.reserve(hit);
  for (std::uint64_t w = 0; w < scores.size(); ++w)
    if (scores[w] >= thresholds.threshold(w)) d.tie_set.push_back(w);
  return d;
}
}  // namespace

ThresholdScheme ThresholdScheme::equiprobable(std::uint64_t message_count, double epsilon) {
  if (message_count < 2) throw std::invalid_argument("message count must be at least 2");
  if (!(epsilon > 0 && epsilon < 1)) throw std::invalid_argument("epsilon must be in (0,1)");
  const double a = std::log2(static_cast<double>(message_count)) - std::log2(epsilon);
  return ThresholdScheme(std::vector<double>(message_count, a));
}

ThresholdScheme ThresholdScheme::weighted(const std::vector<double>& pi, double epsilon) {
  if (!(epsilon > 0 && epsilon < 1)) throw std::invalid_argument("epsilon must be in (0,1)");
  if (pi.empty()) throw std::invalid_argument("message probabilities are empty");
  double sum = 0;
  for (double p : pi) sum += p;
  if (std::abs(sum - 1.0) > 1e-9)
    throw std::invalid_argument("message probabilities do not sum to 1");
  std::vector<double> t(pi.size());
  for (std::size_t w = 0; w < pi.size(); ++w) {
    if (!(pi[w] > 0))
      throw std::invalid_argument("zero-probability message " + std::to_string(w));
    t[w] = -std::log2(pi[w]) - std::log2(epsilon);
  }
  return ThresholdScheme(std::move(t));
}

ThresholdScheme ThresholdScheme::explicit_bits(std::vector<double> log_thresholds) {
  if (log_thresholds.empty()) throw std::invalid_argument("threshold vector is empty");
  return ThresholdScheme(std::move(log_thresholds));
}

std::uint64_t resolve_tie(const Decision& decision, Rng& rng) {
  if (decision.kind != DecisionKind::tie || decision.tie_set.size() < 2)
    throw std::invalid_argument("resolve_tie needs a tie among at least 2 messages");
  const auto n = decision.tie_set.size();
  auto idx = static_cast<std::size_t>(rng.unit() * static_cast<double>(n));
  if (idx >= n) idx = n - 1;
  return decision.tie_set[idx];
}

bool randomized_early_error(double alpha, Rng& rng) {
  if (!(alpha >= 0 && alpha < 1)) throw std::invalid_argument("alpha must be in [0,1)");
  if (alpha == 0) return false;
  return rng.unit() < alpha;
}

KnownChannelDecoder::KnownChannelDecoder(const Codebook& cb, const BackwardChannel& bw,
                                         const InputPrior& prior, ThresholdScheme thresholds)
    : cb_(&cb), thresholds_(std::move(thresholds)), y_size_(bw.output_size()) {
  if (thresholds_.message_count() != cb.message_count())
    throw std::invalid_argument("threshold count does not match codebook");
  if (prior.size() != bw.input_size())
    throw std::invalid_argument("prior size does not match backward channel");
  const int nx = bw.input_size();
  z_table_.resize(static_cast<std::size_t>(nx) * static_cast<std::size_t>(y_size_));
  for (int x = 0; x < nx; ++x) {
    const double q = prior.probs[static_cast<std::size_t>(x)];
    for (int y = 0; y < y_size_; ++y) {
      const double theta = bw.posterior[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)];
      double z;
      if (theta <= 0)
        z = kNegInf;
      else if (q <= 0)
        z = kNegInf;  // never drawn by the codebook; keep the score harmless
      else
        z = std::log2(theta) - std::log2(q);
      z_table_[static_cast<std::size_t>(x) * static_cast<std::size_t>(y_size_) +
               static_cast<std::size_t>(y)] = z;
    }
  }
  msg_keys_.reserve(cb.message_count());
  for (std::uint64_t w = 0; w < cb.message_count(); ++w) msg_keys_.push_back(cb.message_key(w));
  scores_.assign(cb.message_count(), 0.0);
}

Decision KnownChannelDecoder::step(int y) {
  if (y < 0 || y >= y_size_) throw std::out_of_range("channel output symbol out of range");
  const std::uint64_t m = cb_->message_count();
  for (std::uint64_t w = 0; w < m; ++w) {
    const int x = cb_->symbol_at(msg_keys_[w], t_);
    scores_[w] += z_table_[static_cast<std::size_t>(x) * static_cast<std::size_t>(y_size_) +
                           static_cast<std::size_t>(y)];
  }
  ++t_;
  return crossing_decision(scores_, thresholds_, t_);
}

void KnownChannelDecoder::reset() {
  std::fill(scores_.begin(), scores_.end(), 0.0);
  t_ = 0;
}

GaussianKnownDecoder::GaussianKnownDecoder(const Codebook& cb, AwgnChannel channel,
                                           ThresholdScheme thresholds)
    : cb_(&cb), channel_(channel), thresholds_(std::move(thresholds)) {
  if (!cb.is_gaussian()) throw std::invalid_argument("gaussian decoder needs a gaussian codebook");
  if (thresholds_.message_count() != cb.message_count())
    throw std::invalid_argument("threshold count does not match codebook");
  msg_keys_.reserve(cb.message_count());
  for (std::uint64_t w = 0; w < cb.message_count(); ++w) msg_keys_.push_back(cb.message_key(w));
  scores_.assign(cb.message_count(), 0.0);
}

Decision GaussianKnownDecoder::step(double y) {
  const std::uint64_t m = cb_->message_count();
  for (std::uint64_t w = 0; w < m; ++w) {
    const double x = cb_->gaussian_symbol_at(msg_keys_[w], t_);
    scores_[w] += awgn_log_score(channel_, x, y);
  }
  ++t_;
  return crossing_decision(scores_, thresholds_, t_);
}

void GaussianKnownDecoder::reset() {
  std::fill(scores_.begin(), scores_.end(), 0.0);
  t_ = 0;
}

UniversalDecoder::UniversalDecoder(const Codebook& cb, int y_size, ThresholdScheme thresholds)
    : cb_(&cb),
      thresholds_(std::move(thresholds)),
      x_size_(cb.prior().size()),
      y_size_(y_size) {
  if (cb.is_gaussian()) throw std::invalid_argument("universal decoder needs a discrete codebook");
  if (thresholds_.message_count() != cb.message_count())
    throw std::invalid_argument("threshold count does not match codebook");
  if (y_size_ < 1) throw std::invalid_argument("output alphabet must be nonempty");
  msg_keys_.reserve(cb.message_count());
  for (std::uint64_t w = 0; w < cb.message_count(); ++w) msg_keys_.push_back(cb.message_key(w));
  log2_q_.resize(static_cast<std::size_t>(x_size_));
  for (int x = 0; x < x_size_; ++x) {
    const double q = cb.prior().probs[static_cast<std::size_t>(x)];
    log2_q_[static_cast<std::size_t>(x)] = q > 0 ? std::log2(q) : kNegInf;
  }
  const std::size_t m = cb.message_count();
  counts_.assign(m * static_cast<std::size_t>(x_size_) * static_cast<std::size_t>(y_size_), 0);
  col_totals_.assign(m * static_cast<std::size_t>(y_size_), 0);
  scores_.assign(m, 0.0);
  mixture_lp_.assign(m, 0.0);
  ensure_tables(256);
}

void UniversalDecoder::ensure_tables(std::size_t upto) {
  const std::size_t old = log2_num_.size();
  if (upto < old) return;
  log2_num_.resize(upto + 1);
  log2_den_.resize(upto + 1);
  for (std::size_t n = old; n <= upto; ++n) {
    log2_num_[n] = std::log2(static_cast<double>(n) + 0.5);
    log2_den_[n] = std::log2(static_cast<double>(n) + 0.5 * x_size_);
  }
}

Decision UniversalDecoder::step(int y) {
  if (y < 0 || y >= y_size_) throw std::out_of_range("channel output symbol out of range");
  if (t_ + 1 >= log2_num_.size()) ensure_tables(log2_num_.size() * 2);
  const std::uint64_t m = cb_->message_count();
  const auto ys = static_cast<std::size_t>(y_size_);
  for (std::uint64_t w = 0; w < m; ++w) {
    const int x = cb_->symbol_at(msg_keys_[w], t_);
    const std::size_t cbase = (static_cast<std::size_t>(w) * static_cast<std::size_t>(x_size_) +
                               static_cast<std::size_t>(x)) * ys + static_cast<std::size_t>(y);
    const std::size_t tbase = static_cast<std::size_t>(w) * ys + static_cast<std::size_t>(y);
    const double z_mix = log2_num_[counts_[cbase]] - log2_den_[col_totals_[tbase]];
    ++counts_[cbase];
    ++col_totals_[tbase];
    mixture_lp_[w] += z_mix;
    scores_[w] += z_mix - log2_q_[static_cast<std::size_t>(x)];
  }
  ++t_;
  return crossing_decision(scores_, thresholds_, t_);
}

CountMatrix UniversalDecoder::counts_of(std::uint64_t w) const {
  CountMatrix cm(x_size_, y_size_);
  for (int x = 0; x < x_size_; ++x) {
    const std::size_t base = (static_cast<std::size_t>(w) * static_cast<std::size_t>(x_size_) +
                              static_cast<std::size_t>(x)) * static_cast<std::size_t>(y_size_);
    for (int y = 0; y < y_size_; ++y)
      for (std::uint32_t n = 0; n < counts_[base + static_cast<std::size_t>(y)]; ++n)
        cm.add(x, y);
  }
  return cm;
}

void UniversalDecoder::reset() {
  std::fill(counts_.begin(), counts_.end(), 0u);
  std::fill(col_totals_.begin(), col_totals_.end(), 0u);
  std::fill(scores_.begin(), scores_.end(), 0.0);
  std::fill(mixture_lp_.begin(), mixture_lp_.end(), 0.0);
  t_ = 0;
}

}  // namespace rateless
