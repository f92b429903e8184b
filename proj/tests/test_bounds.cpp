#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <limits>

#include "doctest.h"
#include "rateless/bounds.hpp"
#include "rateless/mixture.hpp"

using namespace rateless;
using namespace rateless::bounds;

TEST_CASE("rate_known closed form") {
  CHECK(rate_known(1.0, 20, std::exp2(-10)) == doctest::Approx(20.0 / 31.0).epsilon(1e-12));
  CHECK(rate_known(1.0, 60, std::exp2(-10)) == doctest::Approx(60.0 / 71.0).epsilon(1e-12));
  CHECK(rate_known(1.0, 10, 0.999) == doctest::Approx(0.9089724).epsilon(1e-6));
  // increasing in M and C, decreasing in -log eps
  double prev = 0;
  for (double k : {8.0, 12.0, 20.0, 40.0, 80.0}) {
    const double r = rate_known(0.5, k, 0.01);
    CHECK(r > prev);
    prev = r;
  }
  CHECK(rate_known(0.6, 16, 0.01) > rate_known(0.5, 16, 0.01));
  CHECK(rate_known(0.5, 16, 0.02) > rate_known(0.5, 16, 0.01));
  CHECK_THROWS_AS(rate_known(1.0, 20, 1.5), std::domain_error);
  CHECK_THROWS_AS(rate_known(-1.0, 20, 0.5), std::domain_error);
}

TEST_CASE("rate_known_randomized branches") {
  // below the seam the randomization is off and the base rate comes back
  CHECK(rate_known_randomized(1.0, 20, std::exp2(-10)) ==
        doctest::Approx(rate_known(1.0, 20, std::exp2(-10))).epsilon(1e-15));
  CHECK(rate_known_randomized(1.0, 20, 0.5) == doctest::Approx(1.5006756143).epsilon(1e-9));
  // continuity at eps = 1/log2 M
  const double seam = 1.0 / 16.0;
  CHECK(rate_known_randomized(1.0, 16, seam) ==
        doctest::Approx(rate_known_randomized(1.0, 16, seam * (1 + 1e-12))).epsilon(1e-9));
  // the randomized branch equals the base rate pushed through the transform
  const double delta = 1.0 / 20.0;
  const double eps = 0.5;
  const double alpha = (eps - delta) / (1 - delta);
  const auto [r_prime, eps_prime] = randomized_transform(rate_known(1.0, 20, delta), delta, alpha);
  CHECK(eps_prime == doctest::Approx(eps).epsilon(1e-12));
  CHECK(rate_known_randomized(1.0, 20, eps) == doctest::Approx(r_prime).epsilon(1e-12));
}

TEST_CASE("error exponent is linear with the stated intercepts") {
  CHECK(error_exponent_known(0.7, 0.0, 16) == doctest::Approx(0.7));
  CHECK(error_exponent_known(1.0, 0.5, 40) == doctest::Approx(0.4875).epsilon(1e-12));
  // root at the eps -> 1 rate limit
  const double root = 1.0 / (1 + 1.0 / 12);
  CHECK(error_exponent_known(1.0, root, 12) == doctest::Approx(0.0).epsilon(1e-12));
  // substituting the achievable rate reproduces -log eps * C/(K + C - log eps)
  for (double eps : {0.5, 0.1, 0.001}) {
    const double c = 0.3, k = 24;
    const double r = rate_known(c, k, eps);
    const double expected = -std::log2(eps) * c / (k + c - std::log2(eps));
    CHECK(error_exponent_known(c, r, k) == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("weak converse") {
  CHECK(converse_rate(1.0, 10, 0.0) == doctest::Approx(1.0 + 1.0 / 9.0).epsilon(1e-12));
  CHECK_THROWS_AS(converse_rate(1.0, 1, 0.9), std::domain_error);
  for (double c : {0.2, 0.6, 1.0})
    for (double k : {4.0, 10.0, 24.0, 64.0})
      for (double eps : {0.01, 0.1, 0.3}) {
        if ((1 - eps) * k <= 1) continue;
        CHECK(rate_known(c, k, eps) < converse_rate(c, k, eps));
      }
}

TEST_CASE("burnashev exponent") {
  const BurnashevResult bsc = burnashev_exponent(Dmc::bsc(0.25), 0.1);
  CHECK(bsc.c1_bits == doctest::Approx(0.5 * std::log2(3.0)).epsilon(1e-12));
  CHECK_FALSE(bsc.infinite);
  CHECK(bsc.exponent_bits ==
        doctest::Approx(bsc.c1_bits * (1 - 0.1 / bsc.capacity_bits)).epsilon(1e-12));

  const BurnashevResult at_capacity = burnashev_exponent(Dmc::bsc(0.25), bsc.capacity_bits);
  CHECK(at_capacity.exponent_bits == doctest::Approx(0.0).epsilon(1e-9));

  const BurnashevResult z = burnashev_exponent(Dmc::z_channel(0.5), 0.1);
  CHECK(z.infinite);
  CHECK(std::isinf(z.c1_bits));
  CHECK(std::isinf(z.exponent_bits));
  CHECK_THROWS_AS(burnashev_exponent(Dmc::bsc(0.25), 0.5), std::domain_error);
}

TEST_CASE("universal rate sits below the known rate and needs a large enough M") {
  for (double c : {0.2, 0.5, 1.0})
    for (double k : {8.0, 16.0, 32.0, 64.0, 128.0})
      for (double eps : {0.25, 0.01}) {
        const double ru = rate_universal(c, k, eps, 2, 2);
        CHECK(ru < rate_known(c, k, eps));
      }
  CHECK_NOTHROW(rate_universal(1.0, 4, 0.5, 2, 2));   // 4 ln2 > 2
  CHECK_THROWS_AS(rate_universal(1.0, 2, 0.5, 2, 2), std::domain_error);  // 2 ln2 < 2
}

TEST_CASE("universal gap approaches the loglog penalty term") {
  // exact ratios of (rate_known - rate_universal) to (|X||Y|/2) C log2 K / K
  CHECK(universal_gap_ratio(1.0, 200, std::exp2(-10), 2, 2) ==
        doctest::Approx(1.179943).epsilon(1e-5));
  double prev = std::numeric_limits<double>::infinity();
  for (double k : {200.0, 1e6, 1e9, 1e12}) {
    const double ratio = universal_gap_ratio(1.0, k, std::exp2(-10), 2, 2);
    CHECK(ratio > 1.0);
    CHECK(ratio < prev);
    prev = ratio;
  }
  CHECK(universal_gap_ratio(1.0, 1e12, std::exp2(-10), 2, 2) < 1.1);
}

TEST_CASE("randomized universal rate") {
  const double eps = 0.5;
  const double base = rate_universal(1.0, 20, eps, 2, 2);
  CHECK(base == doctest::Approx(0.5007091337).epsilon(1e-9));
  CHECK(rate_universal_randomized(1.0, 20, eps, eps / 2, 2, 2) ==
        doctest::Approx(0.7297149840).epsilon(1e-9));
  CHECK(rate_universal_randomized(1.0, 20, eps, eps / 2, 2, 2) > base);
  // the delta -> eps limit recovers the unrandomized rate
  CHECK(rate_universal_randomized(1.0, 20, eps, eps * (1 - 1e-10), 2, 2) ==
        doctest::Approx(base).epsilon(1e-6));
  CHECK_THROWS_AS(rate_universal_randomized(1.0, 20, eps, eps, 2, 2), std::domain_error);
  CHECK_THROWS_AS(rate_universal_randomized(1.0, 20, eps, 0.0, 2, 2), std::domain_error);

  const DeltaOptimum best = optimize_rate_universal_randomized(1.0, 20, eps, 2, 2);
  CHECK(best.rate >= rate_universal_randomized(1.0, 20, eps, eps * 1e-6, 2, 2) - 1e-9);
  CHECK(best.rate >= rate_universal_randomized(1.0, 20, eps, eps * (1 - 1e-9), 2, 2) - 1e-9);
  CHECK(best.rate >= rate_universal_randomized(1.0, 20, eps, eps / 2, 2, 2) - 1e-9);
}

TEST_CASE("limited feedback rate") {
  CHECK(rate_limited_feedback(1.0, 10, std::exp2(-10), 5) ==
        doctest::Approx(10.0 / 24.0).epsilon(1e-12));
  // s = 1 drops the +C excess term, as printed
  CHECK(rate_limited_feedback(0.3, 12, 0.01, 1) ==
        doctest::Approx(0.3 / (1 + (-std::log2(0.01)) / 12)).epsilon(1e-12));
  double prev = 1e300;
  for (int s : {1, 2, 4, 16, 256, 65536}) {
    const double r = rate_limited_feedback(1.0, 16, 0.01, s);
    CHECK(r < prev);
    prev = r;
  }
  CHECK(rate_limited_feedback(1.0, 16, 0.01, 1 << 20) < 1e-3);
  CHECK_THROWS_AS(rate_limited_feedback(1.0, 16, 0.01, 0), std::domain_error);
}

TEST_CASE("joint source-channel time bound") {
  CHECK(joint_sc_expected_time(0.0, 1.0, 0.5) == doctest::Approx(2.0));
  CHECK(joint_sc_expected_time(8.0, 2.0, std::exp2(-10)) == doctest::Approx(10.0));
  // per-bit rearrangement
  const double h = 5.3, c = 0.7, eps = 0.01, k = 12;
  CHECK(k / ((h - std::log2(eps) + c) / c) ==
        doctest::Approx(joint_sc_rate(h / k, c, eps, k)).epsilon(1e-12));
}

TEST_CASE("slepian-wolf rate bounds") {
  const SlepianWolfRates r = slepian_wolf_rates(2.0, 0.0, 0.5);
  CHECK(r.r1 == doctest::Approx(5.0));
  CHECK(r.r2 == doctest::Approx(3.0));
  CHECK(r.sum == doctest::Approx(8.0));
  CHECK(r.sum == doctest::Approx(r.r1 + r.r2).epsilon(1e-12));
  CHECK_THROWS_AS(slepian_wolf_rates(2.0, 1.0, 2.0), std::domain_error);
}

TEST_CASE("complete universal rate") {
  // |S| = 2, L = log2 M: the block penalty reduces to (1/2) log2(L/2pi e)/L
  const double c = 0.5, eps = 0.125, hper = 0.8813;
  const int l = 32;
  const double got = rate_complete_universal(c, l, eps, 2, 2, hper, 2, l);
  const double hhat = hper + 0.5 * std::log2(l / (2 * 3.14159265358979323846 * std::exp(1.0))) / l;
  const double beta = redundancy_constants(2, 2).beta;
  const double ln2 = std::log(2.0);
  const double penalty = c + beta - std::log2(eps) + 2 * (std::log2(static_cast<double>(l)) -
                                                          std::log2(c) - 1 / ln2);
  const double expected = c * (1 - 2 / (l * ln2)) / (hhat + penalty / l);
  CHECK(got == doctest::Approx(expected).epsilon(1e-12));

  // a deterministic source still has a positive denominator
  CHECK(rate_complete_universal(c, l, eps, 2, 2, 0.0, 2, l) > 0);

  // never beats the informed joint source-channel rate
  for (int k = 16; k <= 64; k += 8) {
    const double complete = rate_complete_universal(0.4, k, 0.05, 2, 2, 0.9, 2, k);
    CHECK(complete <= joint_sc_rate(0.9, 0.4, 0.05, k));
  }
  CHECK_THROWS_AS(rate_complete_universal(c, 12, eps, 2, 2, hper, 2, 11), std::domain_error);

  const RateBand band = complete_universal_band(c, l, eps, 2, 2, hper, 2, l);
  CHECK(band.low == doctest::Approx(got));
  CHECK(band.high > band.low);
}

TEST_CASE("expected-time helpers") {
  CHECK(wald_expected_time(16.0, 0.5) == doctest::Approx(33.0));
  // reassemble the universal expected-time bound from its parts
  const double c = 0.18872187554086717, eps = std::exp2(-6);
  const double k = 12;
  const double beta = redundancy_constants(2, 2).beta;
  const double ln2 = std::log(2.0);
  const double a = k - std::log2(eps);
  const double num = a + 2 * (std::log2(k) - std::log2(c) - 1 / ln2) + beta + c;
  const double den = c * (1 - 2 / (k * ln2));
  CHECK(universal_expected_time(c, k, eps, 2, 2) == doctest::Approx(num / den).epsilon(1e-12));

  const auto [r_prime, eps_prime] = randomized_transform(0.5, 0.1, 0.3);
  CHECK(r_prime == doctest::Approx(0.5 / 0.7).epsilon(1e-12));
  CHECK(eps_prime == doctest::Approx(0.3 + 0.1 - 0.03).epsilon(1e-12));
  CHECK_THROWS_AS(randomized_transform(0.5, 0.1, 1.0), std::domain_error);
}
