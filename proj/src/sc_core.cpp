#include "ssa/sc_core.hpp"

#include <cmath>
#include <stdexcept>

namespace ssa {

Probability::Probability(double value) : value_(value) {
  if (!(value >= 0.0 && value <= 1.0)) {
    throw std::invalid_argument("Probability outside [0,1]");
  }
}

EncoderRange::EncoderRange(double lo_in, double hi_in) : lo(lo_in), hi(hi_in) {
  if (!(lo < hi)) {
    throw std::invalid_argument("EncoderRange requires lo < hi");
  }
}

double EncoderRange::norm(double x) const noexcept {
  const double f = (x - lo) / (hi - lo);
  if (f < 0.0) return 0.0;
  if (f > 1.0) return 1.0;
  return f;
}

LfsrRng::LfsrRng(std::uint16_t seed) : state_(seed) {
  if (seed == 0) {
    throw std::invalid_argument("LfsrRng seed must be nonzero");
  }
}

std::uint16_t LfsrRng::next() noexcept {
  const std::uint16_t word = state_;
  // Taps 16,15,13,4 map to state bits 0,1,3,12 in the right-shift form.
  const std::uint16_t fb =
      static_cast<std::uint16_t>((state_ ^ (state_ >> 1) ^ (state_ >> 3) ^ (state_ >> 12)) & 1u);
  state_ = static_cast<std::uint16_t>((state_ >> 1) | (fb << 15));
  return word;
}

std::uint64_t splitmix64(std::uint64_t z) noexcept {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint16_t derive_seed(std::uint64_t global_seed, std::uint32_t module_id,
                          std::uint32_t row, std::uint32_t col) noexcept {
  std::uint64_t h = splitmix64(global_seed);
  h = splitmix64(h ^ module_id);
  h = splitmix64(h ^ row);
  h = splitmix64(h ^ col);
  auto s = static_cast<std::uint16_t>((h ^ (h >> 16) ^ (h >> 32) ^ (h >> 48)) & 0xFFFFu);
  return s != 0 ? s : 0xACE1;
}

LfsrRng derive_rng(std::uint64_t global_seed, std::uint32_t module_id,
                   std::uint32_t row, std::uint32_t col) {
  return LfsrRng(derive_seed(global_seed, module_id, row, col));
}

Bit bernoulli_bit(Probability p, LfsrRng& rng) noexcept {
  // Threshold in [0, 65536]; 65536 means "always fire" since draws are 16-bit.
  const auto threshold = static_cast<std::uint32_t>(std::lround(p.value() * 65536.0));
  const std::uint32_t draw = rng.next();
  return static_cast<Bit>(draw < threshold ? 1 : 0);
}

Bit bernoulli_encode(double x, const EncoderRange& range, LfsrRng& rng) noexcept {
  return bernoulli_bit(Probability(range.norm(x)), rng);
}

Bit bernoulli_from_count(std::uint32_t count, std::uint32_t denom, LfsrRng& rng) {
  if (denom == 0 || denom > 65536 || (denom & (denom - 1)) != 0) {
    throw std::invalid_argument("bernoulli_from_count: denom must be a power of two <= 65536");
  }
  if (count > denom) {
    throw std::overflow_error("bernoulli_from_count: count exceeds denom");
  }
  const std::uint32_t draw = rng.next();
  return static_cast<Bit>((draw & (denom - 1)) < count ? 1 : 0);
}

Bit bernoulli_from_count_general(std::uint32_t count, std::uint32_t denom,
                                 LfsrRng& rng) {
  if (denom == 0) {
    throw std::invalid_argument("bernoulli_from_count_general: denom must be >= 1");
  }
  if (count > denom) {
    throw std::overflow_error("bernoulli_from_count_general: count exceeds denom");
  }
  const auto threshold = static_cast<std::uint32_t>(
      std::lround(static_cast<double>(count) * 65536.0 / static_cast<double>(denom)));
  const std::uint32_t draw = rng.next();
  return static_cast<Bit>(draw < threshold ? 1 : 0);
}

BitStream::BitStream(std::vector<Bit> bits) : bits_(std::move(bits)) {}

double BitStream::rate() const noexcept {
  if (bits_.empty()) return 0.0;
  std::size_t ones = 0;
  for (Bit b : bits_) ones += b;
  return static_cast<double>(ones) / static_cast<double>(bits_.size());
}

BitStream encode_stream(double x, const EncoderRange& range, LfsrRng& rng,
                        std::size_t t_steps) {
  std::vector<Bit> bits;
  bits.reserve(t_steps);
  for (std::size_t t = 0; t < t_steps; ++t) {
    bits.push_back(bernoulli_encode(x, range, rng));
  }
  return BitStream(std::move(bits));
}

}  // namespace ssa
