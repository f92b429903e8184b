#include "rateless/channel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace rateless {

namespace {

constexpr double kRowSumTolerance = 1e-9;

std::vector<double> cumulative(const std::vector<double>& p) {
  std::vector<double> cdf(p.size());
  double acc = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    acc += p[i];
    cdf[i] = acc;
  }
  return cdf;
}

}  // namespace

InputPrior::InputPrior(std::vector<double> p) : probs(std::move(p)) {
  if (probs.empty()) throw std::invalid_argument("input prior is empty");
  double sum = 0;
  for (double v : probs) {
    if (!(v >= 0)) throw std::invalid_argument("input prior has a negative entry");
    sum += v;
  }
  if (std::abs(sum - 1.0) > kRowSumTolerance)
    throw std::invalid_argument("input prior sums to " + std::to_string(sum) +
                                ", expected 1");
  for (double& v : probs) v /= sum;
}

InputPrior InputPrior::uniform(int size) {
  if (size < 1) throw std::invalid_argument("prior size must be positive");
  return InputPrior(std::vector<double>(static_cast<std::size_t>(size),
                                        1.0 / static_cast<double>(size)));
}

double InputPrior::entropy_bits() const {
  double h = 0;
  for (double v : probs)
    if (v > 0) h -= v * std::log2(v);
  return h;
}

Dmc::Dmc(std::vector<std::vector<double>> forward) : forward_(std::move(forward)) {
  if (forward_.empty() || forward_[0].empty())
    throw std::invalid_argument("channel matrix is empty");
  input_size_ = static_cast<int>(forward_.size());
  output_size_ = static_cast<int>(forward_[0].size());
  for (std::size_t x = 0; x < forward_.size(); ++x) {
    auto& row = forward_[x];
    if (static_cast<int>(row.size()) != output_size_)
      throw std::invalid_argument("channel matrix is not rectangular");
    double sum = 0;
    for (double v : row) {
      if (!(v >= 0))
        throw std::invalid_argument("negative entry in channel row " + std::to_string(x));
      if (v > 1.0 + kRowSumTolerance)
        throw std::invalid_argument("entry above 1 in channel row " + std::to_string(x));
      sum += v;
    }
    if (std::abs(sum - 1.0) > kRowSumTolerance)
      throw std::invalid_argument("non-stochastic row " + std::to_string(x) +
                                  ": sum is " + std::to_string(sum));
    for (double& v : row) v /= sum;
  }
  row_cdf_.reserve(forward_.size());
  for (const auto& row : forward_) row_cdf_.push_back(cumulative(row));
}

Dmc Dmc::bsc(double p) {
  if (p < 0 || p > 1) throw std::invalid_argument("bsc crossover must be in [0,1]");
  return Dmc({{1 - p, p}, {p, 1 - p}});
}

Dmc Dmc::bec(double delta) {
  if (delta < 0 || delta > 1) throw std::invalid_argument("bec erasure must be in [0,1]");
  return Dmc({{1 - delta, 0, delta}, {0, 1 - delta, delta}});
}

Dmc Dmc::z_channel(double p) {
  if (p < 0 || p > 1) throw std::invalid_argument("z-channel parameter must be in [0,1]");
  return Dmc({{1, 0}, {p, 1 - p}});
}

Dmc Dmc::noiseless(int size) {
  if (size < 2) throw std::invalid_argument("noiseless channel needs at least 2 symbols");
  std::vector<std::vector<double>> m(static_cast<std::size_t>(size),
                                     std::vector<double>(static_cast<std::size_t>(size), 0.0));
  for (int i = 0; i < size; ++i) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1.0;
  return Dmc(std::move(m));
}

int Dmc::sample_output(int x, Rng& rng) const {
  if (x < 0 || x >= input_size_)
    throw std::out_of_range("channel input symbol out of range");
  return rng.pick(row_cdf_[static_cast<std::size_t>(x)], output_size_);
}

Dmc make_dmc(std::vector<std::vector<double>> forward) { return Dmc(std::move(forward)); }

double mutual_information(const Dmc& dmc, const InputPrior& prior) {
  if (prior.size() != dmc.input_size())
    throw std::invalid_argument("prior size does not match channel input size");
  const int nx = dmc.input_size();
  const int ny = dmc.output_size();
  std::vector<double> marginal(static_cast<std::size_t>(ny), 0.0);
  for (int x = 0; x < nx; ++x)
    for (int y = 0; y < ny; ++y)
      marginal[static_cast<std::size_t>(y)] +=
          prior.probs[static_cast<std::size_t>(x)] * dmc.forward(x, y);
  double bits = 0;
  for (int x = 0; x < nx; ++x) {
    const double q = prior.probs[static_cast<std::size_t>(x)];
    if (q <= 0) continue;
    for (int y = 0; y < ny; ++y) {
      const double p = dmc.forward(x, y);
      if (p <= 0) continue;
      bits += q * p * std::log2(p / marginal[static_cast<std::size_t>(y)]);
    }
  }
  return bits;
}

CapacityResult capacity(const Dmc& dmc, double tolerance_bits, int max_iters) {
  if (!(tolerance_bits > 0)) throw std::invalid_argument("capacity tolerance must be positive");
  const int nx = dmc.input_size();
  const int ny = dmc.output_size();
  std::vector<double> q(static_cast<std::size_t>(nx), 1.0 / nx);
  std::vector<double> marginal(static_cast<std::size_t>(ny));
  std::vector<double> divergence(static_cast<std::size_t>(nx));

  double lower = 0, upper = std::numeric_limits<double>::infinity();
  int iter = 0;
  while (iter < max_iters) {
    ++iter;
    std::fill(marginal.begin(), marginal.end(), 0.0);
    for (int x = 0; x < nx; ++x)
      for (int y = 0; y < ny; ++y)
        marginal[static_cast<std::size_t>(y)] += q[static_cast<std::size_t>(x)] * dmc.forward(x, y);
    // D(p(.|x) || marginal), the per-input information density mean
    for (int x = 0; x < nx; ++x) {
      double d = 0;
      for (int y = 0; y < ny; ++y) {
        const double p = dmc.forward(x, y);
        if (p > 0) d += p * std::log2(p / marginal[static_cast<std::size_t>(y)]);
      }
      divergence[static_cast<std::size_t>(x)] = d;
    }
    lower = 0;
    upper = -std::numeric_limits<double>::infinity();
    for (int x = 0; x < nx; ++x) {
      lower += q[static_cast<std::size_t>(x)] * divergence[static_cast<std::size_t>(x)];
      upper = std::max(upper, divergence[static_cast<std::size_t>(x)]);
    }
    if (upper - lower <= tolerance_bits) break;
    // multiplicative update, stabilized against overflow
    double norm = 0;
    for (int x = 0; x < nx; ++x) {
      auto& qx = q[static_cast<std::size_t>(x)];
      qx *= std::exp2(divergence[static_cast<std::size_t>(x)] - upper);
      norm += qx;
    }
    for (int x = 0; x < nx; ++x) q[static_cast<std::size_t>(x)] /= norm;
  }
  if (upper - lower > tolerance_bits)
    throw std::runtime_error("capacity solver did not converge: gap " +
                             std::to_string(upper - lower) + " bits after " +
                             std::to_string(iter) + " iterations");
  CapacityResult result{lower, InputPrior(q), iter, upper - lower};
  return result;
}

BackwardChannel backward_channel(const Dmc& dmc, const InputPrior& prior) {
  if (prior.size() != dmc.input_size())
    throw std::invalid_argument("prior size does not match channel input size");
  const int nx = dmc.input_size();
  const int ny = dmc.output_size();
  BackwardChannel bw;
  bw.posterior.assign(static_cast<std::size_t>(nx),
                      std::vector<double>(static_cast<std::size_t>(ny), 0.0));
  bw.output_marginal.assign(static_cast<std::size_t>(ny), 0.0);
  bw.zero_marginal.assign(static_cast<std::size_t>(ny), false);
  for (int x = 0; x < nx; ++x)
    for (int y = 0; y < ny; ++y)
      bw.output_marginal[static_cast<std::size_t>(y)] +=
          prior.probs[static_cast<std::size_t>(x)] * dmc.forward(x, y);
  for (int y = 0; y < ny; ++y) {
    const double m = bw.output_marginal[static_cast<std::size_t>(y)];
    if (m > 0) {
      for (int x = 0; x < nx; ++x)
        bw.posterior[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] =
            prior.probs[static_cast<std::size_t>(x)] * dmc.forward(x, y) / m;
    } else {
      bw.zero_marginal[static_cast<std::size_t>(y)] = true;
      for (int x = 0; x < nx; ++x)
        bw.posterior[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] = 1.0 / nx;
    }
  }
  return bw;
}

AwgnChannel::AwgnChannel(double signal_power_, double noise_variance_)
    : signal_power(signal_power_), noise_variance(noise_variance_) {
  if (!(signal_power > 0) || !std::isfinite(signal_power))
    throw std::invalid_argument("signal power must be positive and finite");
  if (!(noise_variance > 0) || !std::isfinite(noise_variance))
    throw std::invalid_argument("noise variance must be positive and finite");
}

double AwgnChannel::capacity_bits() const {
  return 0.5 * std::log2(1.0 + signal_power / noise_variance);
}

double AwgnChannel::sample_output(double x, Rng& rng) const {
  return x + std::sqrt(noise_variance) * rng.gaussian();
}

double awgn_log_score(const AwgnChannel& ch, double x, double y) {
  const double p = ch.signal_power;
  const double theta = ch.noise_variance;
  const double cond_var = p * theta / (p + theta);
  const double wiener = p / (p + theta);
  const double resid = x - wiener * y;
  constexpr double kLog2E = 1.4426950408889634074;
  const double log_posterior = -0.5 * std::log2(cond_var) - resid * resid / (2 * cond_var) * kLog2E;
  const double log_prior = -0.5 * std::log2(p) - x * x / (2 * p) * kLog2E;
  return log_posterior - log_prior;  // the sqrt(2*pi) factors cancel
}

}  // namespace rateless
