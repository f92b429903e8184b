#pragma once

#include <utility>

#include "rateless/channel.hpp"

namespace rateless::bounds {

// Closed-form rate, exponent and converse expressions. Message set size
// enters as log2_m (= K bits) so the evaluators remain exact far beyond the
// range of integer M; internals run in long double.

// Achievable rate of the sequential threshold decoder with a known channel:
// C / (1 + (C - log2 eps)/log2 M).
double rate_known(double capacity_bits, double log2_m, double epsilon);

// Two-branch refinement obtained by randomized decision-making; branches at
// epsilon = 1/log2 M.
double rate_known_randomized(double capacity_bits, double log2_m, double epsilon);

// E(R) = C - R - C R / log2 M. May be negative; caller interprets.
double error_exponent_known(double capacity_bits, double rate, double log2_m);

// Weak converse (C/(1-eps)) (1 + 1/((1-eps) log2 M - 1)); requires
// (1-eps) log2 M > 1.
double converse_rate(double capacity_bits, double log2_m, double epsilon);

struct BurnashevResult {
  double c1_bits = 0;       // max KL divergence between channel rows
  bool infinite = false;    // some p(y|x) > 0 where p(y|x') = 0
  double exponent_bits = 0; // C1 (1 - R/C); +inf when flagged and R < C
  double capacity_bits = 0;
};

BurnashevResult burnashev_exponent(const Dmc& dmc, double rate);

// Achievable rate of the universal mixture decoder; requires
// log2 M * ln 2 > |X||Y|/2.
double rate_universal(double capacity_bits, double log2_m, double epsilon,
                      int x_size, int y_size);

// Randomized variant with inner error budget delta in (0, epsilon).
double rate_universal_randomized(double capacity_bits, double log2_m, double epsilon,
                                 double delta, int x_size, int y_size);

struct DeltaOptimum {
  double delta = 0;
  double rate = 0;
};
DeltaOptimum optimize_rate_universal_randomized(double capacity_bits, double log2_m,
                                                double epsilon, int x_size, int y_size);

// C / (1 + ((s-1)C - log2 eps)/log2 M) for a feedback channel used once per
// s received symbols, exactly as printed (no overshoot term; at s = 1 it does
// not reduce to rate_known).
double rate_limited_feedback(double capacity_bits, double log2_m, double epsilon, int s);

// E{T} <= (H(W) - log2 eps + C)/C for message-dependent thresholds.
double joint_sc_expected_time(double entropy_bits, double capacity_bits, double epsilon);

// Per-bit form: C / (perbit_H + (C - log2 eps)/K).
double joint_sc_rate(double per_bit_entropy, double capacity_bits, double epsilon,
                     double k_bits);

struct SlepianWolfRates {
  double r1 = 0;   // bits, expected transmission time bound for W1
  double r2 = 0;   // bits, for W2 given decoded W1
  double sum = 0;
};
SlepianWolfRates slepian_wolf_rates(double h1_bits, double h2_given_1_bits, double epsilon);

// Fully universal joint source-channel rate; the O(1) residual of the
// expected-threshold expansion is taken as zero (lower-estimate convention),
// so reported values are exact up to an additive O(1/log M) rate term.
double rate_complete_universal(double capacity_bits, double log2_m, double epsilon,
                               int x_size, int y_size, double per_bit_entropy,
                               int source_alphabet, int block_len);

struct RateBand {
  double low = 0;
  double high = 0;
};
// [formula value, C / empirical-entropy ceiling] for report annotation.
RateBand complete_universal_band(double capacity_bits, double log2_m, double epsilon,
                                 int x_size, int y_size, double per_bit_entropy,
                                 int source_alphabet, int block_len);

// E{T} bound of the universal decoder (the v = log M / C instantiation).
double universal_expected_time(double capacity_bits, double log2_m, double epsilon,
                               int x_size, int y_size);

// E{T} < (a + C)/C for a fixed threshold of a bits.
double wald_expected_time(double threshold_bits, double capacity_bits);

// Rate/error transform of the alpha-randomized decoder:
// R' = R/(1-alpha), eps' = alpha + eps - alpha eps.
std::pair<double, double> randomized_transform(double rate, double epsilon, double alpha);

// (rate_known - rate_universal) / ((|X||Y|/2) C log2 log2 M / log2 M),
// evaluated fully in long double for asymptotic sweeps.
double universal_gap_ratio(double capacity_bits, double log2_m, double epsilon,
                           int x_size, int y_size);

}  // namespace rateless::bounds
