#include "rateless/codebook.hpp"

#include <cmath>
#include <stdexcept>

namespace rateless {

namespace {
// Distinct substream tags so codeword symbols never collide with other
// consumers of the same seed.
constexpr std::uint64_t kCodebookStream = 0xc0deb00cull;
}  // namespace

Codebook Codebook::discrete(std::uint64_t seed, std::uint64_t message_count, InputPrior prior) {
  if (message_count < 1) throw std::invalid_argument("codebook needs at least one message");
  Codebook cb;
  cb.seed_ = seed;
  cb.message_count_ = message_count;
  cb.prior_ = std::move(prior);
  double acc = 0;
  cb.cdf_.reserve(cb.prior_.probs.size());
  for (double p : cb.prior_.probs) {
    acc += p;
    cb.cdf_.push_back(acc);
  }
  return cb;
}

Codebook Codebook::gaussian(std::uint64_t seed, std::uint64_t message_count, double signal_power) {
  if (message_count < 1) throw std::invalid_argument("codebook needs at least one message");
  if (!(signal_power > 0)) throw std::invalid_argument("signal power must be positive");
  Codebook cb;
  cb.seed_ = seed;
  cb.message_count_ = message_count;
  cb.gaussian_ = true;
  cb.signal_power_ = signal_power;
  return cb;
}

std::uint64_t Codebook::message_key(std::uint64_t w) const {
  check_message(w);
  return substream(substream(seed_, kCodebookStream), w);
}

void Codebook::check_message(std::uint64_t w) const {
  if (w >= message_count_) throw std::out_of_range("message index out of range");
}

int Codebook::symbol(std::uint64_t w, std::uint64_t k) const {
  if (gaussian_) throw std::logic_error("discrete symbol requested from gaussian codebook");
  return symbol_at(message_key(w), k);
}

double Codebook::gaussian_symbol_at(std::uint64_t msg_key, std::uint64_t k) const {
  const double z = gaussian_from(stream_at(msg_key, 2 * k), stream_at(msg_key, 2 * k + 1));
  return std::sqrt(signal_power_) * z;
}

double Codebook::gaussian_symbol(std::uint64_t w, std::uint64_t k) const {
  if (!gaussian_) throw std::logic_error("gaussian symbol requested from discrete codebook");
  return gaussian_symbol_at(message_key(w), k);
}

std::vector<int> Codebook::prefix(std::uint64_t w, std::size_t n) const {
  const std::uint64_t key = message_key(w);
  std::vector<int> out;
  out.reserve(n);
  for (std::size_t k = 0; k < n; ++k) out.push_back(symbol_at(key, k));
  return out;
}

}  // namespace rateless
