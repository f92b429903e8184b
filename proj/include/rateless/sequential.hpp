#pragma once

#include <cstdint>
#include <vector>

#include "rateless/channel.hpp"
#include "rateless/codebook.hpp"
#include "rateless/mixture.hpp"
#include "rateless/rng.hpp"

namespace rateless {

// Per-message decision thresholds a_w in bits.
class ThresholdScheme {
 public:
  // a_w = log2 M - log2 eps for every message.
  static ThresholdScheme equiprobable(std::uint64_t message_count, double epsilon);
  // a_w = -log2 pi(w) - log2 eps; rejects zero-probability messages.
  static ThresholdScheme weighted(const std::vector<double>& pi, double epsilon);
  // Explicit thresholds, one per message.
  static ThresholdScheme explicit_bits(std::vector<double> log_thresholds);

  std::uint64_t message_count() const { return thresholds_.size(); }
  double threshold(std::uint64_t w) const { return thresholds_[w]; }
  const std::vector<double>& thresholds() const { return thresholds_; }

 private:
  explicit ThresholdScheme(std::vector<double> t) : thresholds_(std::move(t)) {}
  std::vector<double> thresholds_;
};

enum class DecisionKind { waiting, decided, tie };

struct Decision {
  DecisionKind kind = DecisionKind::waiting;
  std::uint64_t message = 0;             // valid when decided
  std::vector<std::uint64_t> tie_set;    // valid when tie; size >= 2
  std::uint64_t time = 0;                // symbols consumed at the decision

  bool stopped() const { return kind != DecisionKind::waiting; }
};

// Uniform choice among a tie set; such a trial is always recorded as an error.
std::uint64_t resolve_tie(const Decision& decision, Rng& rng);

// Randomized wrapper coin: true means the trial terminates at t = 0 and
// declares an error; otherwise the underlying decoder runs unchanged.
bool randomized_early_error(double alpha, Rng& rng);

// Sequential decoder for a known channel: accumulates
// z_{w,t} = log2 theta(c_{w,t}, y_t) - log2 q(c_{w,t}) per message and stops
// at the first threshold crossing. Zero posterior entries yield -inf scores,
// which absorb all later additions.
class KnownChannelDecoder {
 public:
  KnownChannelDecoder(const Codebook& cb, const BackwardChannel& bw,
                      const InputPrior& prior, ThresholdScheme thresholds);

  Decision step(int y);
  std::uint64_t time() const { return t_; }
  const std::vector<double>& scores() const { return scores_; }
  double score(std::uint64_t w) const { return scores_[w]; }
  void reset();

 private:
  const Codebook* cb_;
  ThresholdScheme thresholds_;
  std::vector<double> z_table_;  // z_table_[x * |Y| + y]
  int y_size_;
  std::vector<std::uint64_t> msg_keys_;
  std::vector<double> scores_;
  std::uint64_t t_ = 0;
};

// Known-channel decoder for the Gaussian codebook case; identical control
// flow with the Gaussian density-ratio score.
class GaussianKnownDecoder {
 public:
  GaussianKnownDecoder(const Codebook& cb, AwgnChannel channel, ThresholdScheme thresholds);

  Decision step(double y);
  std::uint64_t time() const { return t_; }
  const std::vector<double>& scores() const { return scores_; }
  void reset();

 private:
  const Codebook* cb_;
  AwgnChannel channel_;
  ThresholdScheme thresholds_;
  std::vector<std::uint64_t> msg_keys_;
  std::vector<double> scores_;
  std::uint64_t t_ = 0;
};

// Universal sequential decoder: scores each message by the Jeffreys-mixture
// conditional probability of its codeword prefix against the received
// sequence, normalized by the codeword prior. Needs no channel knowledge.
class UniversalDecoder {
 public:
  UniversalDecoder(const Codebook& cb, int y_size, ThresholdScheme thresholds);

  Decision step(int y);
  std::uint64_t time() const { return t_; }
  // mixture log-prob minus codeword log-prior, bits
  double score(std::uint64_t w) const { return scores_[w]; }
  const std::vector<double>& scores() const { return scores_; }
  double mixture_log_prob_of(std::uint64_t w) const { return mixture_lp_[w]; }
  CountMatrix counts_of(std::uint64_t w) const;
  void reset();

 private:
  void ensure_tables(std::size_t upto);

  const Codebook* cb_;
  ThresholdScheme thresholds_;
  int x_size_;
  int y_size_;
  std::vector<std::uint64_t> msg_keys_;
  std::vector<double> log2_q_;
  std::vector<std::uint32_t> counts_;      // [w][x][y] flattened
  std::vector<std::uint32_t> col_totals_;  // [w][y] flattened
  std::vector<double> scores_;
  std::vector<double> mixture_lp_;
  std::vector<double> log2_num_;  // log2(n + 1/2)
  std::vector<double> log2_den_;  // log2(n + |X|/2)
  std::uint64_t t_ = 0;
};

}  // namespace rateless
