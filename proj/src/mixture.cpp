#include "rateless/mixture.hpp"

#include <cmath>
#include <stdexcept>

namespace rateless {

namespace {
constexpr double kLog2E = 1.4426950408889634074;
constexpr double kTwoPi = 6.2831853071795864769;

double log2_gamma(double x) { return std::lgamma(x) * kLog2E; }
}  // namespace

CountMatrix::CountMatrix(int x_size, int y_size) : x_size_(x_size), y_size_(y_size) {
  if (x_size < 2 || y_size < 1)
    throw std::invalid_argument("count matrix needs |X| >= 2 and |Y| >= 1");
  counts_.assign(static_cast<std::size_t>(x_size) * static_cast<std::size_t>(y_size), 0);
  column_totals_.assign(static_cast<std::size_t>(y_size), 0);
}

std::size_t CountMatrix::index(int x, int y) const {
  if (x < 0 || x >= x_size_ || y < 0 || y >= y_size_)
    throw std::out_of_range("symbol pair out of range");
  return static_cast<std::size_t>(x) * static_cast<std::size_t>(y_size_) +
         static_cast<std::size_t>(y);
}

void CountMatrix::add(int x, int y) {
  ++counts_[index(x, y)];
  ++column_totals_[static_cast<std::size_t>(y)];
  ++total_;
}

double kt_conditional(const CountMatrix& cm, int x, int y) {
  const double n_xy = static_cast<double>(cm.count(x, y));
  const double n_y = static_cast<double>(cm.column_total(y));
  return (n_xy + 0.5) / (n_y + cm.x_size() * 0.5);
}

double mixture_log_prob(const CountMatrix& cm) {
  const int nx = cm.x_size();
  const double half_nx = nx * 0.5;
  const double lg_half = log2_gamma(0.5);
  double bits = 0;
  for (int y = 0; y < cm.y_size(); ++y) {
    const std::uint64_t col = cm.column_total(y);
    if (col == 0) continue;
    for (int x = 0; x < nx; ++x)
      bits += log2_gamma(static_cast<double>(cm.count(x, y)) + 0.5) - lg_half;
    bits += log2_gamma(half_nx) - log2_gamma(static_cast<double>(col) + half_nx);
  }
  return bits;
}

double ml_log_prob(const CountMatrix& cm) {
  double bits = 0;
  for (int y = 0; y < cm.y_size(); ++y) {
    const std::uint64_t col = cm.column_total(y);
    if (col == 0) continue;
    for (int x = 0; x < cm.x_size(); ++x) {
      const std::uint64_t n = cm.count(x, y);
      if (n > 0)
        bits += static_cast<double>(n) *
                std::log2(static_cast<double>(n) / static_cast<double>(col));
    }
  }
  return bits;
}

double kt_kappa(int x_size) {
  if (x_size < 2) throw std::invalid_argument("kappa needs |X| >= 2");
  return x_size * log2_gamma(0.5) - log2_gamma(x_size * 0.5);
}

RedundancyConstants redundancy_constants(int x_size, int y_size) {
  if (x_size < 2 || y_size < 1)
    throw std::invalid_argument("redundancy constants need |X| >= 2 and |Y| >= 1");
  RedundancyConstants rc;
  rc.x_size = x_size;
  rc.y_size = y_size;
  rc.kappa = kt_kappa(x_size);
  rc.dim_coeff = (x_size - 1) * y_size * 0.5;
  rc.loose_coeff = x_size * y_size * 0.5;
  const double stirling = (x_size * x_size * y_size / 4.0 + x_size * y_size / 2.0) * kLog2E;
  rc.beta = y_size * rc.kappa + stirling - rc.dim_coeff * std::log2(kTwoPi);
  return rc;
}

double redundancy_bound(std::uint64_t t, int x_size, int y_size) {
  if (t < 1) throw std::invalid_argument("redundancy bound needs t >= 1");
  if (x_size < 2 || y_size < 1)
    throw std::invalid_argument("redundancy bound needs |X| >= 2 and |Y| >= 1");
  const double dim_coeff = (x_size - 1) * y_size * 0.5;
  const double stirling = (x_size * x_size * y_size / 4.0 + x_size * y_size / 2.0) * kLog2E;
  return dim_coeff * std::log2(static_cast<double>(t) / kTwoPi) + y_size * kt_kappa(x_size) +
         stirling;
}

}  // namespace rateless
