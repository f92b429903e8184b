#include "rateless/sources.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "rateless/mixture.hpp"

namespace rateless {

namespace {

std::vector<double> normalize_probs(std::vector<double> p, const char* what) {
  if (p.empty()) throw std::invalid_argument(std::string(what) + " is empty");
  double sum = 0;
  for (double v : p) {
    if (!(v >= 0)) throw std::invalid_argument(std::string(what) + " has a negative entry");
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw std::invalid_argument(std::string(what) + " does not sum to 1");
  for (double& v : p) v /= sum;
  return p;
}

std::vector<double> cumulative(const std::vector<double>& p) {
  std::vector<double> cdf(p.size());
  double acc = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    acc += p[i];
    cdf[i] = acc;
  }
  return cdf;
}

double entropy_bits_of(const std::vector<double>& p) {
  double h = 0;
  for (double v : p)
    if (v > 0) h -= v * std::log2(v);
  return h;
}

std::uint64_t checked_pow(std::uint64_t base, int exp) {
  std::uint64_t out = 1;
  for (int i = 0; i < exp; ++i) {
    if (out > (std::uint64_t{1} << 62) / base)
      throw std::invalid_argument("message set size |S|^L overflows");
    out *= base;
  }
  return out;
}

}  // namespace

MessageSource::MessageSource(std::vector<double> probs)
    : probs_(normalize_probs(std::move(probs), "message probabilities")) {
  if (probs_.size() < 1) throw std::invalid_argument("message set is empty");
  cdf_ = cumulative(probs_);
  entropy_bits_ = entropy_bits_of(probs_);
}

MessageSource MessageSource::uniform(std::uint64_t message_count) {
  if (message_count < 1) throw std::invalid_argument("message count must be positive");
  return MessageSource(std::vector<double>(message_count, 1.0 / static_cast<double>(message_count)));
}

MessageSource MessageSource::zipf(std::uint64_t message_count, double exponent) {
  if (message_count < 1) throw std::invalid_argument("message count must be positive");
  std::vector<double> p(message_count);
  double sum = 0;
  for (std::uint64_t w = 0; w < message_count; ++w) {
    p[w] = std::pow(static_cast<double>(w + 1), -exponent);
    sum += p[w];
  }
  for (double& v : p) v /= sum;
  return MessageSource(std::move(p));
}

double MessageSource::per_bit_entropy() const {
  return entropy_bits_ / std::log2(static_cast<double>(probs_.size()));
}

std::uint64_t MessageSource::sample_message(Rng& rng) const {
  const double u = rng.unit();
  // binary search over the cdf
  std::size_t lo = 0, hi = cdf_.size() - 1;
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (u < cdf_[mid])
      hi = mid;
    else
      lo = mid + 1;
  }
  return lo;
}

IidSymbolSource::IidSymbolSource(std::vector<double> gamma, int block_len)
    : gamma_(normalize_probs(std::move(gamma), "symbol probabilities")),
      block_len_(block_len) {
  if (gamma_.size() < 2) throw std::invalid_argument("source alphabet must have >= 2 symbols");
  if (block_len_ < 1) throw std::invalid_argument("block length must be positive");
  cdf_ = cumulative(gamma_);
  message_count_ = checked_pow(gamma_.size(), block_len_);
}

double IidSymbolSource::symbol_entropy_bits() const { return entropy_bits_of(gamma_); }

double IidSymbolSource::block_entropy_bits() const {
  return block_len_ * symbol_entropy_bits();
}

double IidSymbolSource::per_bit_entropy() const {
  return block_entropy_bits() / std::log2(static_cast<double>(message_count_));
}

std::vector<int> IidSymbolSource::sample_block(Rng& rng) const {
  std::vector<int> block(static_cast<std::size_t>(block_len_));
  for (auto& s : block) s = rng.pick(cdf_, alphabet_size());
  return block;
}

std::uint64_t IidSymbolSource::encode_block(const std::vector<int>& block) const {
  if (static_cast<int>(block.size()) != block_len_)
    throw std::invalid_argument("block length mismatch");
  std::uint64_t w = 0;
  for (int k = block_len_ - 1; k >= 0; --k) {
    const int s = block[static_cast<std::size_t>(k)];
    if (s < 0 || s >= alphabet_size()) throw std::out_of_range("source symbol out of range");
    w = w * static_cast<std::uint64_t>(alphabet_size()) + static_cast<std::uint64_t>(s);
  }
  return w;
}

std::vector<int> IidSymbolSource::decode_block(std::uint64_t message) const {
  if (message >= message_count_) throw std::out_of_range("message index out of range");
  std::vector<int> block(static_cast<std::size_t>(block_len_));
  for (int k = 0; k < block_len_; ++k) {
    block[static_cast<std::size_t>(k)] =
        static_cast<int>(message % static_cast<std::uint64_t>(alphabet_size()));
    message /= static_cast<std::uint64_t>(alphabet_size());
  }
  return block;
}

CorrelatedPairSource::CorrelatedPairSource(std::vector<std::vector<double>> symbol_joint,
                                           int block_len)
    : joint_(std::move(symbol_joint)), block_len_(block_len) {
  if (joint_.empty() || joint_[0].empty())
    throw std::invalid_argument("joint distribution is empty");
  if (block_len_ < 1) throw std::invalid_argument("block length must be positive");
  const std::size_t n2 = joint_[0].size();
  double sum = 0;
  std::vector<double> flat;
  for (const auto& row : joint_) {
    if (row.size() != n2) throw std::invalid_argument("joint distribution is not rectangular");
    for (double v : row) {
      if (!(v >= 0)) throw std::invalid_argument("joint distribution has a negative entry");
      sum += v;
      flat.push_back(v);
    }
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw std::invalid_argument("joint distribution does not sum to 1");
  for (auto& row : joint_)
    for (double& v : row) v /= sum;
  for (double& v : flat) v /= sum;
  joint_cdf_ = cumulative(flat);

  marginal1_.assign(joint_.size(), 0.0);
  for (std::size_t a = 0; a < joint_.size(); ++a)
    for (double v : joint_[a]) marginal1_[a] += v;
  cond2_.assign(joint_.size(), std::vector<double>(n2, 0.0));
  for (std::size_t a = 0; a < joint_.size(); ++a)
    for (std::size_t b = 0; b < n2; ++b)
      cond2_[a][b] = marginal1_[a] > 0 ? joint_[a][b] / marginal1_[a] : 0.0;

  w1_count_ = checked_pow(joint_.size(), block_len_);
  w2_count_ = checked_pow(n2, block_len_);
}

double CorrelatedPairSource::h1_bits() const { return block_len_ * entropy_bits_of(marginal1_); }

double CorrelatedPairSource::h2_given_1_bits() const {
  double h = 0;
  for (std::size_t a = 0; a < joint_.size(); ++a)
    h += marginal1_[a] * entropy_bits_of(cond2_[a]);
  return block_len_ * h;
}

double CorrelatedPairSource::h_joint_bits() const {
  double h = 0;
  for (const auto& row : joint_)
    for (double v : row)
      if (v > 0) h -= v * std::log2(v);
  return block_len_ * h;
}

std::pair<std::uint64_t, std::uint64_t> CorrelatedPairSource::sample_pair(Rng& rng) const {
  const int n2 = w2_alphabet();
  std::uint64_t w1 = 0, w2 = 0;
  for (int k = block_len_ - 1; k >= 0; --k) {
    const int flat = rng.pick(joint_cdf_, w1_alphabet() * n2);
    w1 = w1 * static_cast<std::uint64_t>(w1_alphabet()) + static_cast<std::uint64_t>(flat / n2);
    w2 = w2 * static_cast<std::uint64_t>(n2) + static_cast<std::uint64_t>(flat % n2);
  }
  return {w1, w2};
}

double CorrelatedPairSource::log2_marginal_w1(std::uint64_t w1) const {
  double bits = 0;
  for (int k = 0; k < block_len_; ++k) {
    const auto s = static_cast<std::size_t>(w1 % static_cast<std::uint64_t>(w1_alphabet()));
    w1 /= static_cast<std::uint64_t>(w1_alphabet());
    bits += std::log2(marginal1_[s]);
  }
  return bits;
}

double CorrelatedPairSource::log2_conditional_w2(std::uint64_t w2, std::uint64_t w1) const {
  double bits = 0;
  for (int k = 0; k < block_len_; ++k) {
    const auto a = static_cast<std::size_t>(w1 % static_cast<std::uint64_t>(w1_alphabet()));
    const auto b = static_cast<std::size_t>(w2 % static_cast<std::uint64_t>(w2_alphabet()));
    w1 /= static_cast<std::uint64_t>(w1_alphabet());
    w2 /= static_cast<std::uint64_t>(w2_alphabet());
    bits += cond2_[a][b] > 0 ? std::log2(cond2_[a][b])
                             : -std::numeric_limits<double>::infinity();
  }
  return bits;
}

PairEntropies conditional_entropy(const std::vector<std::vector<double>>& joint) {
  CorrelatedPairSource src(joint, 1);
  return {src.h1_bits(), src.h2_given_1_bits(), src.h_joint_bits()};
}

std::vector<double> side_info_threshold_bits(const CorrelatedPairSource& src,
                                             std::uint64_t w1, double epsilon) {
  if (!(epsilon > 0 && epsilon < 1)) throw std::domain_error("epsilon must be in (0,1)");
  if (w1 >= src.w1_count()) throw std::out_of_range("w1 out of range");
  std::vector<double> a(src.w2_count());
  const double base = -std::log2(epsilon / 2);
  for (std::uint64_t w2 = 0; w2 < src.w2_count(); ++w2)
    a[w2] = base - src.log2_conditional_w2(w2, w1);
  return a;
}

double universal_source_log_prob(const std::vector<int>& block, int alphabet_size) {
  if (alphabet_size < 2) throw std::invalid_argument("source alphabet must have >= 2 symbols");
  CountMatrix cm(alphabet_size, 1);
  for (int s : block) {
    if (s < 0 || s >= alphabet_size) throw std::out_of_range("source symbol out of range");
    cm.add(s, 0);
  }
  return mixture_log_prob(cm);
}

double universal_threshold(const std::vector<int>& block, int alphabet_size, double epsilon) {
  if (!(epsilon > 0 && epsilon < 1)) throw std::domain_error("epsilon must be in (0,1)");
  return -std::log2(epsilon) - universal_source_log_prob(block, alphabet_size);
}

}  // namespace rateless
