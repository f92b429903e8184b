#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "rateless/rng.hpp"

namespace rateless {

// Message set with probabilities pi(w). Immutable after construction.
class MessageSource {
 public:
  explicit MessageSource(std::vector<double> probs);
  static MessageSource uniform(std::uint64_t message_count);
  static MessageSource zipf(std::uint64_t message_count, double exponent);

  std::uint64_t message_count() const { return probs_.size(); }
  const std::vector<double>& probs() const { return probs_; }
  double prob(std::uint64_t w) const { return probs_[w]; }
  double entropy_bits() const { return entropy_bits_; }
  double per_bit_entropy() const;  // H(W)/log2 M

  std::uint64_t sample_message(Rng& rng) const;

 private:
  std::vector<double> probs_;
  std::vector<double> cdf_;
  double entropy_bits_ = 0;
};

// i.i.d. blocks of block_len symbols from an alphabet of alphabet_size with
// per-symbol probabilities gamma; each block maps to one message index by
// mixed-radix encoding, so M = |S|^L.
class IidSymbolSource {
 public:
  IidSymbolSource(std::vector<double> gamma, int block_len);

  int alphabet_size() const { return static_cast<int>(gamma_.size()); }
  int block_len() const { return block_len_; }
  std::uint64_t message_count() const { return message_count_; }
  const std::vector<double>& gamma() const { return gamma_; }

  double symbol_entropy_bits() const;
  double block_entropy_bits() const;
  double per_bit_entropy() const;  // H(block)/log2 M

  std::vector<int> sample_block(Rng& rng) const;
  std::uint64_t encode_block(const std::vector<int>& block) const;
  std::vector<int> decode_block(std::uint64_t message) const;

 private:
  std::vector<double> gamma_;
  std::vector<double> cdf_;
  int block_len_;
  std::uint64_t message_count_;
};

// Correlated pair (W1, W2): block_len i.i.d. draws of a symbol pair with the
// given per-symbol joint distribution. Messages are the mixed-radix encodings
// of the component blocks.
class CorrelatedPairSource {
 public:
  CorrelatedPairSource(std::vector<std::vector<double>> symbol_joint, int block_len);

  int w1_alphabet() const { return static_cast<int>(joint_.size()); }
  int w2_alphabet() const { return static_cast<int>(joint_[0].size()); }
  const std::vector<std::vector<double>>& symbol_joint() const { return joint_; }
  int block_len() const { return block_len_; }
  std::uint64_t w1_count() const { return w1_count_; }
  std::uint64_t w2_count() const { return w2_count_; }

  double h1_bits() const;           // H(W1) for the whole block
  double h2_given_1_bits() const;   // H(W2|W1) for the whole block
  double h_joint_bits() const;      // H(W1,W2) for the whole block

  std::pair<std::uint64_t, std::uint64_t> sample_pair(Rng& rng) const;

  double log2_marginal_w1(std::uint64_t w1) const;
  double log2_conditional_w2(std::uint64_t w2, std::uint64_t w1) const;

 private:
  std::vector<std::vector<double>> joint_;
  std::vector<double> marginal1_;
  std::vector<std::vector<double>> cond2_;  // rows: w1 symbol, cols: w2 symbol
  std::vector<double> joint_cdf_;
  int block_len_;
  std::uint64_t w1_count_;
  std::uint64_t w2_count_;
};

// Per-symbol entropies of a joint matrix: (H1, H2|1, Hjoint), bits.
struct PairEntropies {
  double h1 = 0;
  double h2_given_1 = 0;
  double h_joint = 0;
};
PairEntropies conditional_entropy(const std::vector<std::vector<double>>& joint);

// Stage-2 decoding thresholds a(w1, w2) = -log2(eps/2) - log2 pi(w2|w1) for
// every candidate w2 given an already-decoded w1. Zero-probability candidates
// get an infinite threshold and can never be decoded.
std::vector<double> side_info_threshold_bits(const CorrelatedPairSource& src,
                                             std::uint64_t w1, double epsilon);

// log2 of the Jeffreys-mixture probability of a symbol sequence (the same
// closed form as the channel mixture with a single output context).
double universal_source_log_prob(const std::vector<int>& block, int alphabet_size);

// a = -log2 eps - log2 phat(block); the decoder-side threshold that needs no
// knowledge of the source statistics.
double universal_threshold(const std::vector<int>& block, int alphabet_size, double epsilon);

}  // namespace rateless
