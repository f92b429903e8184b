#include "rateless/bounds.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "rateless/mixture.hpp"

namespace rateless::bounds {

namespace {

constexpr long double kLn2 = 0.69314718055994530941723212145817657L;
constexpr long double kTwoPiE = 17.079468445347134130927527588810312L;  // 2*pi*e

void check_common(double capacity_bits, double log2_m, double epsilon) {
  if (!(capacity_bits > 0)) throw std::domain_error("capacity must be positive");
  if (!(log2_m >= 1)) throw std::domain_error("log2 M must be at least 1 (M >= 2)");
  if (!(epsilon > 0 && epsilon < 1)) throw std::domain_error("epsilon must be in (0,1)");
}

long double universal_rate_core(long double c, long double k, long double log_eps_term,
                                int x_size, int y_size) {
  const long double half_xy = static_cast<long double>(x_size) * y_size / 2.0L;
  const long double deflation = half_xy / (k * kLn2);
  if (!(deflation < 1))
    throw std::domain_error("message set too small: log2 M * ln 2 must exceed |X||Y|/2");
  const long double beta = redundancy_constants(x_size, y_size).beta;
  const long double penalty =
      c + beta - log_eps_term +
      half_xy * (std::log2(k) - std::log2(c) - 1.0L / kLn2);
  return c * (1.0L - deflation) / (1.0L + penalty / k);
}

double kl_bits(const std::vector<std::vector<double>>& rows, int a, int b, bool& infinite) {
  double d = 0;
  const auto& pa = rows[static_cast<std::size_t>(a)];
  const auto& pb = rows[static_cast<std::size_t>(b)];
  for (std::size_t y = 0; y < pa.size(); ++y) {
    if (pa[y] <= 0) continue;
    if (pb[y] <= 0) {
      infinite = true;
      return std::numeric_limits<double>::infinity();
    }
    d += pa[y] * std::log2(pa[y] / pb[y]);
  }
  return d;
}

}  // namespace

double rate_known(double capacity_bits, double log2_m, double epsilon) {
  check_common(capacity_bits, log2_m, epsilon);
  const long double c = capacity_bits;
  const long double k = log2_m;
  return static_cast<double>(c / (1.0L + (c - std::log2(static_cast<long double>(epsilon))) / k));
}

double rate_known_randomized(double capacity_bits, double log2_m, double epsilon) {
  check_common(capacity_bits, log2_m, epsilon);
  const long double c = capacity_bits;
  const long double k = log2_m;
  if (epsilon <= 1.0 / log2_m) return rate_known(capacity_bits, log2_m, epsilon);
  const long double num = (1.0L - 1.0L / k) * c;
  const long double den =
      (1.0L + (c + std::log2(k)) / k) * (1.0L - static_cast<long double>(epsilon));
  return static_cast<double>(num / den);
}

double error_exponent_known(double capacity_bits, double rate, double log2_m) {
  if (!(capacity_bits > 0)) throw std::domain_error("capacity must be positive");
  if (!(log2_m >= 1)) throw std::domain_error("log2 M must be at least 1");
  if (rate < 0) throw std::domain_error("rate must be nonnegative");
  const long double c = capacity_bits;
  const long double r = rate;
  return static_cast<double>(c - r - c * r / static_cast<long double>(log2_m));
}

double converse_rate(double capacity_bits, double log2_m, double epsilon) {
  if (!(capacity_bits > 0)) throw std::domain_error("capacity must be positive");
  if (!(epsilon >= 0 && epsilon < 1)) throw std::domain_error("epsilon must be in [0,1)");
  const long double slack = (1.0L - static_cast<long double>(epsilon)) * log2_m - 1.0L;
  if (!(slack > 0))
    throw std::domain_error("degenerate regime: (1-eps) log2 M must exceed 1");
  const long double c = capacity_bits;
  return static_cast<double>(c / (1.0L - static_cast<long double>(epsilon)) *
                             (1.0L + 1.0L / slack));
}

BurnashevResult burnashev_exponent(const Dmc& dmc, double rate) {
  BurnashevResult out;
  out.capacity_bits = capacity(dmc).capacity_bits;
  if (rate < 0 || rate > out.capacity_bits + 1e-12)
    throw std::domain_error("rate must lie in [0, C]");
  const auto& rows = dmc.forward_matrix();
  for (int a = 0; a < dmc.input_size(); ++a) {
    for (int b = 0; b < dmc.input_size(); ++b) {
      if (a == b) continue;
      bool infinite = false;
      const double d = kl_bits(rows, a, b, infinite);
      if (infinite) {
        out.infinite = true;
        out.c1_bits = std::numeric_limits<double>::infinity();
      } else if (!out.infinite) {
        out.c1_bits = std::max(out.c1_bits, d);
      }
    }
  }
  const double slope = 1.0 - rate / out.capacity_bits;
  if (out.infinite) {
    out.exponent_bits = slope > 1e-15 ? std::numeric_limits<double>::infinity() : 0.0;
  } else {
    out.exponent_bits = out.c1_bits * std::max(slope, 0.0);
  }
  return out;
}

double rate_universal(double capacity_bits, double log2_m, double epsilon, int x_size,
                      int y_size) {
  check_common(capacity_bits, log2_m, epsilon);
  return static_cast<double>(universal_rate_core(
      capacity_bits, log2_m, std::log2(static_cast<long double>(epsilon)), x_size, y_size));
}

double rate_universal_randomized(double capacity_bits, double log2_m, double epsilon,
                                 double delta, int x_size, int y_size) {
  check_common(capacity_bits, log2_m, epsilon);
  if (!(delta > 0 && delta < epsilon))
    throw std::domain_error("delta must lie in (0, epsilon)");
  const long double base = universal_rate_core(
      capacity_bits, log2_m, std::log2(static_cast<long double>(delta)), x_size, y_size);
  return static_cast<double>(base * (1.0L - static_cast<long double>(delta)) /
                             (1.0L - static_cast<long double>(epsilon)));
}

DeltaOptimum optimize_rate_universal_randomized(double capacity_bits, double log2_m,
                                                double epsilon, int x_size, int y_size) {
  check_common(capacity_bits, log2_m, epsilon);
  // golden-section search on a unimodal objective over (0, epsilon)
  const double gr = 0.6180339887498949;
  double lo = epsilon * 1e-9, hi = epsilon * (1 - 1e-12);
  auto f = [&](double d) {
    return rate_universal_randomized(capacity_bits, log2_m, epsilon, d, x_size, y_size);
  };
  double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
  double f1 = f(x1), f2 = f(x2);
  for (int i = 0; i < 200 && hi - lo > 1e-14 * epsilon; ++i) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + gr * (hi - lo);
      f2 = f(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - gr * (hi - lo);
      f1 = f(x1);
    }
  }
  DeltaOptimum best;
  best.delta = 0.5 * (lo + hi);
  best.rate = f(best.delta);
  return best;
}

double rate_limited_feedback(double capacity_bits, double log2_m, double epsilon, int s) {
  check_common(capacity_bits, log2_m, epsilon);
  if (s < 1) throw std::domain_error("feedback period must be at least 1");
  const long double c = capacity_bits;
  const long double k = log2_m;
  const long double num = (s - 1.0L) * c - std::log2(static_cast<long double>(epsilon));
  return static_cast<double>(c / (1.0L + num / k));
}

double joint_sc_expected_time(double entropy_bits, double capacity_bits, double epsilon) {
  if (!(entropy_bits >= 0)) throw std::domain_error("entropy must be nonnegative");
  if (!(capacity_bits > 0)) throw std::domain_error("capacity must be positive");
  if (!(epsilon > 0 && epsilon < 1)) throw std::domain_error("epsilon must be in (0,1)");
  return (entropy_bits - std::log2(epsilon) + capacity_bits) / capacity_bits;
}

double joint_sc_rate(double per_bit_entropy, double capacity_bits, double epsilon,
                     double k_bits) {
  if (!(per_bit_entropy >= 0)) throw std::domain_error("entropy must be nonnegative");
  if (!(k_bits > 0)) throw std::domain_error("k must be positive");
  if (!(capacity_bits > 0)) throw std::domain_error("capacity must be positive");
  if (!(epsilon > 0 && epsilon < 1)) throw std::domain_error("epsilon must be in (0,1)");
  return capacity_bits / (per_bit_entropy + (capacity_bits - std::log2(epsilon)) / k_bits);
}

SlepianWolfRates slepian_wolf_rates(double h1_bits, double h2_given_1_bits, double epsilon) {
  if (!(h1_bits >= 0 && h2_given_1_bits >= 0))
    throw std::domain_error("entropies must be nonnegative");
  if (!(epsilon > 0 && epsilon < 1)) throw std::domain_error("epsilon must be in (0,1)");
  const double half = std::log2(epsilon / 2);
  SlepianWolfRates r;
  r.r1 = h1_bits - half + 1;
  r.r2 = h2_given_1_bits - half + 1;
  r.sum = h1_bits + h2_given_1_bits - 2 * half + 2;
  return r;
}

namespace {
long double complete_universal_hhat(double log2_m, double per_bit_entropy,
                                    int source_alphabet, int block_len) {
  if (source_alphabet < 2 || block_len < 1)
    throw std::domain_error("source alphabet must be >= 2 and block length >= 1");
  const long double expected_bits =
      block_len * std::log2(static_cast<long double>(source_alphabet));
  if (std::fabs(static_cast<double>(expected_bits) - log2_m) > 1e-9)
    throw std::domain_error("inconsistent block length: log2 M must equal L log2|S|");
  const long double penalty =
      (source_alphabet - 1) / 2.0L *
      std::log2(static_cast<long double>(block_len) / kTwoPiE) / static_cast<long double>(log2_m);
  return static_cast<long double>(per_bit_entropy) + penalty;
}
}  // namespace

double rate_complete_universal(double capacity_bits, double log2_m, double epsilon,
                               int x_size, int y_size, double per_bit_entropy,
                               int source_alphabet, int block_len) {
  check_common(capacity_bits, log2_m, epsilon);
  if (!(per_bit_entropy >= 0)) throw std::domain_error("entropy must be nonnegative");
  const long double hhat =
      complete_universal_hhat(log2_m, per_bit_entropy, source_alphabet, block_len);
  const long double c = capacity_bits;
  const long double k = log2_m;
  const long double half_xy = static_cast<long double>(x_size) * y_size / 2.0L;
  const long double deflation = half_xy / (k * kLn2);
  if (!(deflation < 1))
    throw std::domain_error("message set too small: log2 M * ln 2 must exceed |X||Y|/2");
  const long double beta = redundancy_constants(x_size, y_size).beta;
  const long double penalty =
      c + beta - std::log2(static_cast<long double>(epsilon)) +
      half_xy * (std::log2(k) - std::log2(c) - 1.0L / kLn2);
  return static_cast<double>(c * (1.0L - deflation) / (hhat + penalty / k));
}

RateBand complete_universal_band(double capacity_bits, double log2_m, double epsilon,
                                 int x_size, int y_size, double per_bit_entropy,
                                 int source_alphabet, int block_len) {
  RateBand band;
  band.low = rate_complete_universal(capacity_bits, log2_m, epsilon, x_size, y_size,
                                     per_bit_entropy, source_alphabet, block_len);
  const long double hhat =
      complete_universal_hhat(log2_m, per_bit_entropy, source_alphabet, block_len);
  band.high = static_cast<double>(static_cast<long double>(capacity_bits) / hhat);
  return band;
}

double universal_expected_time(double capacity_bits, double log2_m, double epsilon,
                               int x_size, int y_size) {
  check_common(capacity_bits, log2_m, epsilon);
  const long double c = capacity_bits;
  const long double k = log2_m;
  const long double half_xy = static_cast<long double>(x_size) * y_size / 2.0L;
  const long double deflation = half_xy / (k * kLn2);
  if (!(deflation < 1))
    throw std::domain_error("message set too small: log2 M * ln 2 must exceed |X||Y|/2");
  const long double beta = redundancy_constants(x_size, y_size).beta;
  const long double a = k - std::log2(static_cast<long double>(epsilon));
  const long double num =
      a + half_xy * (std::log2(k) - std::log2(c) - 1.0L / kLn2) + beta + c;
  return static_cast<double>(num / (c * (1.0L - deflation)));
}

double wald_expected_time(double threshold_bits, double capacity_bits) {
  if (!(capacity_bits > 0)) throw std::domain_error("capacity must be positive");
  return (threshold_bits + capacity_bits) / capacity_bits;
}

std::pair<double, double> randomized_transform(double rate, double epsilon, double alpha) {
  if (!(alpha >= 0 && alpha < 1)) throw std::domain_error("alpha must be in [0,1)");
  return {rate / (1.0 - alpha), alpha + epsilon - alpha * epsilon};
}

double universal_gap_ratio(double capacity_bits, double log2_m, double epsilon,
                           int x_size, int y_size) {
  check_common(capacity_bits, log2_m, epsilon);
  const long double c = capacity_bits;
  const long double k = log2_m;
  const long double log_eps = std::log2(static_cast<long double>(epsilon));
  const long double known = c / (1.0L + (c - log_eps) / k);
  const long double universal = universal_rate_core(c, k, log_eps, x_size, y_size);
  const long double half_xy = static_cast<long double>(x_size) * y_size / 2.0L;
  const long double leading = half_xy * c * std::log2(k) / k;
  return static_cast<double>((known - universal) / leading);
}

}  // namespace rateless::bounds
