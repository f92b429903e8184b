#pragma once

#include <cstdint>
#include <vector>

#include "rateless/channel.hpp"
#include "rateless/rng.hpp"

namespace rateless {

// Deterministic, lazily evaluated infinite random codebook shared by encoder
// and decoder. Symbol (w, k) is a pure function of (seed, w, k): the prior CDF
// is inverted against a counter-mode word, so decoder-side access to an
// arbitrary position is O(1) and never stores the codebook.
class Codebook {
 public:
  static Codebook discrete(std::uint64_t seed, std::uint64_t message_count, InputPrior prior);
  static Codebook gaussian(std::uint64_t seed, std::uint64_t message_count, double signal_power);

  std::uint64_t message_count() const { return message_count_; }
  std::uint64_t seed() const { return seed_; }
  bool is_gaussian() const { return gaussian_; }
  const InputPrior& prior() const { return prior_; }
  double signal_power() const { return signal_power_; }

  // Key identifying codeword w; pair with symbol_at for tight decoder loops.
  std::uint64_t message_key(std::uint64_t w) const;

  int symbol(std::uint64_t w, std::uint64_t k) const;
  int symbol_at(std::uint64_t msg_key, std::uint64_t k) const {
    return invert_cdf(to_unit(stream_at(msg_key, k)));
  }

  double gaussian_symbol(std::uint64_t w, std::uint64_t k) const;
  double gaussian_symbol_at(std::uint64_t msg_key, std::uint64_t k) const;

  std::vector<int> prefix(std::uint64_t w, std::size_t n) const;

 private:
  Codebook() : prior_(InputPrior::uniform(2)) {}

  int invert_cdf(double u) const {
    const int n = static_cast<int>(cdf_.size());
    for (int i = 0; i + 1 < n; ++i)
      if (u < cdf_[static_cast<std::size_t>(i)]) return i;
    return n - 1;
  }
  void check_message(std::uint64_t w) const;

  std::uint64_t seed_ = 0;
  std::uint64_t message_count_ = 0;
  InputPrior prior_;
  std::vector<double> cdf_;
  bool gaussian_ = false;
  double signal_power_ = 0;
};

}  // namespace rateless
