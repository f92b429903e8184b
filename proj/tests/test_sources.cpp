#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "rateless/sources.hpp"
#include "test_util.hpp"

using namespace rateless;

namespace {
double h2(double p) { return -p * std::log2(p) - (1 - p) * std::log2(1 - p); }
}  // namespace

TEST_CASE("message source sampling and entropy") {
  const MessageSource point(std::vector<double>{1.0, 0.0, 0.0});
  Rng rng(1, 1);
  for (int i = 0; i < 50; ++i) CHECK(point.sample_message(rng) == 0);
  CHECK(point.entropy_bits() == doctest::Approx(0.0));

  const MessageSource uni = MessageSource::uniform(8);
  CHECK(uni.entropy_bits() == doctest::Approx(3.0));
  CHECK(uni.per_bit_entropy() == doctest::Approx(1.0));
  std::vector<std::uint64_t> counts(8, 0);
  const std::uint64_t n = 100000;
  Rng rng2(2, 1);
  for (std::uint64_t i = 0; i < n; ++i) ++counts[uni.sample_message(rng2)];
  for (const auto c : counts) CHECK(std::abs(static_cast<double>(c) / n - 0.125) < 0.004);

  // plug-in entropy of the empirical distribution approaches H(W)
  const MessageSource zipf = MessageSource::zipf(64, 1.0);
  std::vector<std::uint64_t> zc(64, 0);
  Rng rng3(3, 1);
  const std::uint64_t nz = 1000000;
  for (std::uint64_t i = 0; i < nz; ++i) ++zc[zipf.sample_message(rng3)];
  double h_emp = 0;
  for (const auto c : zc)
    if (c > 0) {
      const double p = static_cast<double>(c) / nz;
      h_emp -= p * std::log2(p);
    }
  CHECK(std::abs(h_emp - zipf.entropy_bits()) < 0.01);
}

TEST_CASE("universal source probability") {
  CHECK(universal_source_log_prob({0}, 2) == doctest::Approx(-1.0));
  CHECK(universal_source_log_prob({0, 0}, 2) == doctest::Approx(std::log2(3.0 / 8.0)));
  CHECK(universal_source_log_prob({0, 0, 1, 1}, 2) ==
        doctest::Approx(universal_source_log_prob({0, 1, 0, 1}, 2)).epsilon(1e-12));
  CHECK_THROWS_AS(universal_source_log_prob({2}, 2), std::out_of_range);
}

TEST_CASE("universal source probabilities sum to one") {
  for (int l = 1; l <= 10; ++l) {
    double total = 0;
    for (std::uint32_t bits = 0; bits < (1u << l); ++bits) {
      std::vector<int> block(static_cast<std::size_t>(l));
      for (int k = 0; k < l; ++k) block[static_cast<std::size_t>(k)] = (bits >> k) & 1u;
      total += std::exp2(universal_source_log_prob(block, 2));
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("universal thresholds") {
  // L = 1 binary: phat = 1/2, a = -log2(eps) + 1
  CHECK(universal_threshold({0}, 2, 0.5) == doctest::Approx(2.0));
  CHECK_THROWS_AS(universal_threshold({0}, 2, 1.5), std::domain_error);

  // all-same block: phat(0^L) = prod (k+1/2)/(k+1)
  const int l = 16;
  double expected = 0;
  for (int k = 0; k < l; ++k) expected += std::log2((k + 0.5) / (k + 1.0));
  CHECK(universal_threshold(std::vector<int>(l, 0), 2, 0.25) ==
        doctest::Approx(2.0 - expected).epsilon(1e-12));

  // thresholds never drop below -log2 eps
  Rng rng(5, 1);
  for (int rep = 0; rep < 100; ++rep) {
    std::vector<int> block(12);
    for (auto& s : block) s = static_cast<int>(rng.next_u64() % 2);
    CHECK(universal_threshold(block, 2, 0.125) >= 3.0 - 1e-12);
  }
}

TEST_CASE("expected universal threshold matches the asymptotic display") {
  // exact binomial enumeration of E{a_w} at L=1024, gamma=(0.3,0.7);
  // the residual against -log2 eps + H + ((|S|-1)/2) log2(L/2 pi e) stays in [0,2]
  const int l = 1024;
  const double g0 = 0.3;
  const double eps = 0.0625;
  long double expected_a = 0;
  for (int n = 0; n <= l; ++n) {
    const long double logp = std::lgamma(static_cast<long double>(l) + 1) -
                             std::lgamma(static_cast<long double>(n) + 1) -
                             std::lgamma(static_cast<long double>(l - n) + 1) +
                             n * std::log(static_cast<long double>(g0)) +
                             (l - n) * std::log(static_cast<long double>(1 - g0));
    std::vector<int> block(static_cast<std::size_t>(l), 1);
    for (int i = 0; i < n; ++i) block[static_cast<std::size_t>(i)] = 0;
    expected_a += std::exp(logp) * universal_threshold(block, 2, eps);
  }
  const double display = -std::log2(eps) + l * h2(g0) +
                         0.5 * std::log2(l / (2 * 3.14159265358979323846 * std::exp(1.0)));
  const double c_residual = static_cast<double>(expected_a) - display;
  CHECK(c_residual >= 0.0);
  CHECK(c_residual <= 2.0);
}

TEST_CASE("iid block source") {
  const IidSymbolSource src({0.3, 0.7}, 12);
  CHECK(src.message_count() == 4096);
  CHECK(src.symbol_entropy_bits() == doctest::Approx(h2(0.3)).epsilon(1e-12));
  CHECK(src.per_bit_entropy() == doctest::Approx(h2(0.3)).epsilon(1e-12));

  Rng rng(6, 1);
  const auto block = src.sample_block(rng);
  CHECK(block.size() == 12);
  CHECK(src.decode_block(src.encode_block(block)) == block);

  // mixed-radix round trip over the whole message set
  const IidSymbolSource small({0.5, 0.25, 0.25}, 3);
  for (std::uint64_t w = 0; w < small.message_count(); ++w)
    CHECK(small.encode_block(small.decode_block(w)) == w);

  // empirical symbol frequency
  std::uint64_t zeros = 0, total = 0;
  for (int rep = 0; rep < 20000; ++rep)
    for (int s : src.sample_block(rng)) {
      zeros += s == 0 ? 1 : 0;
      ++total;
    }
  CHECK(std::abs(static_cast<double>(zeros) / static_cast<double>(total) - 0.3) < 0.005);
}

TEST_CASE("correlated pair source entropies") {
  const auto ent = conditional_entropy({{0.4, 0.1}, {0.1, 0.4}});
  CHECK(ent.h1 == doctest::Approx(1.0));
  CHECK(ent.h2_given_1 == doctest::Approx(h2(0.2)).epsilon(1e-12));
  CHECK(ent.h_joint == doctest::Approx(ent.h1 + ent.h2_given_1).epsilon(1e-10));

  // W2 = W1 deterministically
  const auto same = conditional_entropy({{0.5, 0.0}, {0.0, 0.5}});
  CHECK(same.h2_given_1 == doctest::Approx(0.0));

  // independent uniform
  const auto ind = conditional_entropy({{0.25, 0.25}, {0.25, 0.25}});
  CHECK(ind.h1 == doctest::Approx(1.0));
  CHECK(ind.h2_given_1 == doctest::Approx(1.0));
  CHECK(ind.h_joint == doctest::Approx(2.0));
}

TEST_CASE("chain rule holds for random joints") {
  Rng rng(8, 1);
  for (int rep = 0; rep < 50; ++rep) {
    const auto flat = testutil::random_distribution(rng, 4);
    const auto ent = conditional_entropy({{flat[0], flat[1]}, {flat[2], flat[3]}});
    CHECK(ent.h_joint == doctest::Approx(ent.h1 + ent.h2_given_1).epsilon(1e-10));
  }
}

TEST_CASE("side-information thresholds") {
  // fully dependent single symbol: pi(w2|w1) = 1 gives a = -log2(eps/2)
  const CorrelatedPairSource same({{0.5, 0.0}, {0.0, 0.5}}, 1);
  const auto a_same = side_info_threshold_bits(same, 0, 0.5);
  CHECK(a_same[0] == doctest::Approx(2.0));
  CHECK(std::isinf(a_same[1]));

  // independent W2 uniform over 4 (two independent fair bits): a = 2 + 2
  const CorrelatedPairSource ind({{0.25, 0.25}, {0.25, 0.25}}, 2);
  const auto a_ind = side_info_threshold_bits(ind, 1, 0.5);
  for (const double a : a_ind) CHECK(a == doctest::Approx(4.0));

  CHECK_THROWS_AS(side_info_threshold_bits(ind, 4, 0.5), std::out_of_range);
  CHECK_THROWS_AS(side_info_threshold_bits(ind, 0, 1.5), std::domain_error);
}

TEST_CASE("correlated pair block probabilities") {
  const CorrelatedPairSource src({{0.4, 0.1}, {0.1, 0.4}}, 4);
  CHECK(src.w1_count() == 16);
  CHECK(src.h1_bits() == doctest::Approx(4.0));
  CHECK(src.h2_given_1_bits() == doctest::Approx(4 * h2(0.2)).epsilon(1e-12));

  // marginal and conditional block probabilities multiply per symbol
  CHECK(src.log2_marginal_w1(0b0101) == doctest::Approx(4 * std::log2(0.5)).epsilon(1e-12));
  CHECK(src.log2_conditional_w2(0b0000, 0b0000) ==
        doctest::Approx(4 * std::log2(0.8)).epsilon(1e-12));
  CHECK(src.log2_conditional_w2(0b1111, 0b0000) ==
        doctest::Approx(4 * std::log2(0.2)).epsilon(1e-12));

  // sampled pairs agree with the per-symbol joint
  Rng rng(9, 1);
  std::uint64_t mismatch = 0;
  const int n = 50000;
  for (int i = 0; i < n; ++i) {
    const auto [w1, w2] = src.sample_pair(rng);
    mismatch += __builtin_popcountll(w1 ^ w2);
  }
  CHECK(std::abs(static_cast<double>(mismatch) / (4.0 * n) - 0.2) < 0.01);
}
