#ifndef SSA_SSA_FUNCTIONAL_HPP
#define SSA_SSA_FUNCTIONAL_HPP

#include <cstdint>
#include <vector>

#include "ssa/lif.hpp"
#include "ssa/matrix.hpp"
#include "ssa/sc_core.hpp"

// Time-step-level functional model of the stochastic attention block. Each
// step samples the N x N score matrix S^t and the N x D_K output Attn^t by
// count-to-Bernoulli re-encoding, with one LFSR per encoder instance and a
// canonical draw schedule (score encoders row-major, one draw each; then each
// row's output encoder draws key_dim times in column order). The cycle-level
// simulator reproduces these bits exactly.

namespace ssa {

struct SsaConfig {
  std::size_t tokens = 4;       // N
  std::size_t embed_dim = 8;    // D
  std::size_t key_dim = 8;      // D_K; counter is UINT8, so <= 256
  std::size_t t_steps = 64;     // T
  std::uint64_t global_seed = 1;
  EncoderRange input_range{0.0, 1.0};

  // One LFSR shared by all N^2 score encoders instead of one each. Models
  // hardware PRNG reuse; off by default to keep encoder streams independent.
  bool shared_score_rng = false;

  // Permit non-power-of-two tokens/key_dim via threshold re-encoding. Such
  // configurations are outside the functional-vs-cycle bit-exactness
  // guarantee (the exact mod-mask encoder needs power-of-two denominators).
  bool allow_general_dims = false;

  void validate() const;
};

/// Count-to-Bernoulli dispatch: exact mod-mask path for power-of-two
/// denominators, threshold path otherwise.
Bit encode_count(std::uint32_t count, std::uint32_t denom, LfsrRng& rng);

/// The per-instance LFSRs of one attention block: N^2 score encoders
/// (or one, in shared mode) plus N row output encoders. Copyable, so a
/// sampled step can be replayed from a snapshot.
class EncoderBank {
 public:
  EncoderBank(std::uint64_t global_seed, std::size_t tokens, bool shared_score_rng = false);

  LfsrRng& score_rng(std::size_t i, std::size_t j) noexcept;
  LfsrRng& attn_rng(std::size_t i) noexcept { return attn_rngs_[i]; }

  std::size_t tokens() const noexcept { return tokens_; }
  bool shared_score() const noexcept { return shared_score_; }

 private:
  std::size_t tokens_;
  bool shared_score_;
  std::vector<LfsrRng> score_rngs_;  // tokens^2 row-major, or a single shared one
  std::vector<LfsrRng> attn_rngs_;   // tokens
};

/// One sampled attention step plus the exact Bernoulli parameters behind it.
struct SsaStepOutput {
  SpikeMatrix s;            // N x N sampled scores
  SpikeMatrix attn;         // N x D_K sampled outputs
  RealMatrix score_params;  // count/D_K behind each s bit
  RealMatrix attn_params;   // count/N behind each attn bit, given the sampled s
};

/// Sample one attention step from binary Q/K/V (each N x D_K), drawing from
/// the bank in canonical order.
SsaStepOutput ssa_step(const SpikeMatrix& q_t, const SpikeMatrix& k_t,
                       const SpikeMatrix& v_t, EncoderBank& bank);

/// Fresh Bernoulli encodings of a fixed real matrix, one LFSR per element,
/// new draws every step.
class MatrixEncoder {
 public:
  MatrixEncoder(RealMatrix values, EncoderRange range, std::uint64_t global_seed,
                std::uint32_t module_id);

  SpikeMatrix step();

  const RealMatrix& values() const noexcept { return values_; }

 private:
  RealMatrix values_;
  EncoderRange range_;
  std::vector<LfsrRng> rngs_;  // rows*cols, row-major
};

/// Full functional pipeline for T steps: Bernoulli-encode X, run the LIF
/// query/key/value layers (state persists across steps), sample attention.
std::vector<SsaStepOutput> ssa_run(const RealMatrix& x, const QkvWeights& weights,
                                   const LifConfig& lif_cfg, const SsaConfig& cfg);

/// Probability matrices for the independence-based test mode (all N x D_K,
/// entries in [0,1]).
struct BernoulliInputs {
  RealMatrix pq;
  RealMatrix pk;
  RealMatrix pv;
};

/// Bypass the LIF path: draw Q/K/V independently from fixed probability
/// matrices each step. This is the mode whose time average converges to
/// linear_ssa_expectation (the AND-gate product rule needs independence).
std::vector<SsaStepOutput> ssa_run_independent(const BernoulliInputs& inputs,
                                               const SsaConfig& cfg);

/// Elementwise mean of the sampled attention bits over all steps.
RealMatrix decode_output(const std::vector<SsaStepOutput>& outputs);

}  // namespace ssa

#endif  // SSA_SSA_FUNCTIONAL_HPP
