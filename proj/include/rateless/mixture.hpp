#pragma once

#include <cstdint>
#include <vector>

namespace rateless {

// Joint symbol-pair counts N(i,j) of an (x^t, y^t) prefix, the sufficient
// statistic of the Jeffreys-mixture conditional probability.
class CountMatrix {
 public:
  CountMatrix(int x_size, int y_size);

  int x_size() const { return x_size_; }
  int y_size() const { return y_size_; }
  std::uint64_t total() const { return total_; }

  std::uint64_t count(int x, int y) const {
    return counts_[index(x, y)];
  }
  std::uint64_t column_total(int y) const {
    return column_totals_[static_cast<std::size_t>(y)];
  }

  void add(int x, int y);

 private:
  std::size_t index(int x, int y) const;
  int x_size_;
  int y_size_;
  std::uint64_t total_ = 0;
  std::vector<std::uint64_t> counts_;
  std::vector<std::uint64_t> column_totals_;
};

// One-step predictive probability of the Jeffreys-Dirichlet mixture:
// (N(x,y) + 1/2) / (N(.,y) + |X|/2).
double kt_conditional(const CountMatrix& cm, int x, int y);

// log2 of the mixture probability of the whole prefix; equals the sum of
// sequential kt_conditional logs along any interleaving order.
double mixture_log_prob(const CountMatrix& cm);

// log2 of the maximum-likelihood plug-in probability max_theta p_theta(x^t|y^t).
double ml_log_prob(const CountMatrix& cm);

// kappa_m = log2( Gamma(1/2)^m / Gamma(m/2) ), bits.
double kt_kappa(int x_size);

struct RedundancyConstants {
  int x_size = 0;
  int y_size = 0;
  double kappa = 0;        // kappa_{|X|}, bits
  double beta = 0;         // bits
  double dim_coeff = 0;    // (|X|-1)|Y|/2, the parameter-dimension log t coefficient
  double loose_coeff = 0;  // |X||Y|/2, the looser coefficient the rate bounds use
};

RedundancyConstants redundancy_constants(int x_size, int y_size);

// Worst-case gap ml_log_prob - mixture_log_prob after t symbols:
// ((|X|-1)|Y|/2) log2(t/2pi) + |Y| kappa_{|X|} + (|X|^2|Y|/4 + |X||Y|/2) log2 e.
double redundancy_bound(std::uint64_t t, int x_size, int y_size);

}  // namespace rateless
