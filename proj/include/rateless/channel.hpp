#pragma once

#include <cstdint>
#include <vector>

#include "rateless/rng.hpp"

namespace rateless {

// Input prior q(x). Entries are validated non-negative and renormalized so
// the sum is exactly 1 in double precision.
struct InputPrior {
  std::vector<double> probs;

  explicit InputPrior(std::vector<double> p);
  static InputPrior uniform(int size);

  int size() const { return static_cast<int>(probs.size()); }
  double entropy_bits() const;
};

// Discrete memoryless channel given by the row-stochastic matrix p(y|x).
// Immutable after construction and shareable across workers.
class Dmc {
 public:
  explicit Dmc(std::vector<std::vector<double>> forward);

  static Dmc bsc(double p);
  static Dmc bec(double delta);   // outputs: 0, 1, erasure
  static Dmc z_channel(double p); // rows [[1,0],[p,1-p]]
  static Dmc noiseless(int size);

  int input_size() const { return input_size_; }
  int output_size() const { return output_size_; }
  double forward(int x, int y) const {
    return forward_[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)];
  }
  const std::vector<std::vector<double>>& forward_matrix() const { return forward_; }

  // One channel use; y is distributed per row x, deterministic given the rng state.
  int sample_output(int x, Rng& rng) const;

 private:
  std::vector<std::vector<double>> forward_;
  std::vector<std::vector<double>> row_cdf_;
  int input_size_ = 0;
  int output_size_ = 0;
};

// Posterior p(x|y) induced by a forward channel and an input prior.
// Columns whose output marginal is zero are filled uniformly and flagged;
// such outputs occur with probability zero so decoding never sees them.
struct BackwardChannel {
  std::vector<std::vector<double>> posterior;  // |X| rows, |Y| columns
  std::vector<double> output_marginal;         // Pr{Y=j}
  std::vector<bool> zero_marginal;             // per output column

  int input_size() const { return static_cast<int>(posterior.size()); }
  int output_size() const { return static_cast<int>(output_marginal.size()); }
};

// Additive white Gaussian noise channel Y = X + V, V ~ N(0, noise_variance),
// with a Gaussian codebook of per-symbol power signal_power.
struct AwgnChannel {
  double signal_power;
  double noise_variance;

  AwgnChannel(double signal_power, double noise_variance);

  double capacity_bits() const;  // (1/2) log2(1 + P/theta)
  double sample_output(double x, Rng& rng) const;
};

struct CapacityResult {
  double capacity_bits = 0;
  InputPrior optimal_prior;
  int iterations = 0;
  double gap_bound = 0;  // upper bound minus reported capacity, bits
};

Dmc make_dmc(std::vector<std::vector<double>> forward);

// I(X;Y) in bits with the convention 0*log(0/z) = 0.
double mutual_information(const Dmc& dmc, const InputPrior& prior);

// Alternating-maximization capacity solver. Stops once the per-iteration
// upper/lower capacity gap drops below tolerance_bits; throws on
// non-convergence within max_iters.
CapacityResult capacity(const Dmc& dmc, double tolerance_bits = 1e-9,
                        int max_iters = 20000);

BackwardChannel backward_channel(const Dmc& dmc, const InputPrior& prior);

// log2 p(x|y) - log2 q(x) for the AWGN channel, where p(x|y) is the Gaussian
// posterior with mean (P/(P+theta))y and variance P*theta/(P+theta) and q is
// the N(0, P) codebook density.
double awgn_log_score(const AwgnChannel& ch, double x, double y);

}  // namespace rateless
