#ifndef SSA_SC_CORE_HPP
#define SSA_SC_CORE_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

// Stochastic-computing primitives: Bernoulli rate encoding on top of a
// 16-bit maximal-length LFSR, AND-gate multiplication of spike rates, and
// count-to-Bernoulli re-encoding for normalized sums.

namespace ssa {

using Bit = std::uint8_t;

/// A validated probability in [0, 1].
class Probability {
 public:
  explicit Probability(double value);
  double value() const noexcept { return value_; }

 private:
  double value_;
};

/// Linear range [lo, hi) mapped onto [0, 1]; values outside saturate, matching
/// the clamping behavior of a fixed-point hardware encoder.
struct EncoderRange {
  EncoderRange(double lo, double hi);
  double lo;
  double hi;

  /// clamp((x - lo) / (hi - lo), 0, 1)
  double norm(double x) const noexcept;
};

/// 16-bit Fibonacci LFSR, taps at bits 16,15,13,4 (maximal length, period
/// 2^16 - 1). State is never zero. next() returns the pre-advance word, so
/// the first draw after seeding is the seed itself.
class LfsrRng {
 public:
  static constexpr std::uint32_t kPeriod = 65535;

  explicit LfsrRng(std::uint16_t seed);

  std::uint16_t next() noexcept;
  std::uint16_t state() const noexcept { return state_; }

 private:
  std::uint16_t state_;
};

/// splitmix64 finalizer-chain used to derive per-encoder LFSR seeds from
/// (global_seed, module_id, row, col). Folds the 64-bit mix to 16 bits by
/// XOR of its four 16-bit halves; a zero fold maps to 0xACE1. Documented
/// bit-exactly in the README so traces reproduce across implementations.
std::uint64_t splitmix64(std::uint64_t z) noexcept;
std::uint16_t derive_seed(std::uint64_t global_seed, std::uint32_t module_id,
                          std::uint32_t row, std::uint32_t col) noexcept;
LfsrRng derive_rng(std::uint64_t global_seed, std::uint32_t module_id,
                   std::uint32_t row, std::uint32_t col);

// Encoder module ids for seed derivation. Fixed constants: changing them
// changes every committed trace.
inline constexpr std::uint32_t kModuleInput = 0;  // X input encoders (N x D)
inline constexpr std::uint32_t kModuleScore = 1;  // S encoders (N x N)
inline constexpr std::uint32_t kModuleAttn = 2;   // row output encoders (N)
inline constexpr std::uint32_t kModuleProbQ = 3;  // independent-input Q (N x D_K)
inline constexpr std::uint32_t kModuleProbK = 4;  // independent-input K
inline constexpr std::uint32_t kModuleProbV = 5;  // independent-input V

/// One Bernoulli draw with success probability p: fires iff the 16-bit draw
/// is below round(p * 2^16). p = 1 gives threshold 65536, which no draw can
/// reach, so it always fires; p = 0 never fires (the LFSR never emits 0).
Bit bernoulli_bit(Probability p, LfsrRng& rng) noexcept;

/// Encode a real value against a range: one draw, fires with rate norm(x).
Bit bernoulli_encode(double x, const EncoderRange& range, LfsrRng& rng) noexcept;

/// AND of two spike bits. For independent Bernoulli streams the output rate
/// is the product of the input rates.
inline Bit sc_and(Bit a, Bit b) noexcept { return static_cast<Bit>(a & b); }

/// Re-encode an integer count as a Bernoulli bit with probability
/// count/denom, computed as (draw mod denom) < count. denom must be a power
/// of two <= 65536 so the modulo is a mask and no normalization is needed.
/// Throws on count > denom (counter overflow) or non-power-of-two denom.
Bit bernoulli_from_count(std::uint32_t count, std::uint32_t denom, LfsrRng& rng);

/// General-denominator variant via threshold comparison against
/// round(count * 2^16 / denom). Works for any denom >= 1 but is excluded
/// from the bit-exactness contract between the functional and cycle models.
Bit bernoulli_from_count_general(std::uint32_t count, std::uint32_t denom,
                                 LfsrRng& rng);

/// Spike train of fixed horizon.
class BitStream {
 public:
  BitStream() = default;
  explicit BitStream(std::vector<Bit> bits);

  std::size_t size() const noexcept { return bits_.size(); }
  Bit operator[](std::size_t t) const noexcept { return bits_[t]; }
  void push(Bit b) { bits_.push_back(b); }

  /// Empirical spike rate: ones / length.
  double rate() const noexcept;

  const std::vector<Bit>& bits() const noexcept { return bits_; }

 private:
  std::vector<Bit> bits_;
};

/// T independent encodings of the same value.
BitStream encode_stream(double x, const EncoderRange& range, LfsrRng& rng,
                        std::size_t t_steps);

}  // namespace ssa

#endif  // SSA_SC_CORE_HPP
