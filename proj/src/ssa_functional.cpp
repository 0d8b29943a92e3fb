#include "ssa/ssa_functional.hpp"

#include <stdexcept>

namespace ssa {

namespace {

bool is_pow2(std::size_t v) { return v != 0 && (v & (v - 1)) == 0; }

}  // namespace

void SsaConfig::validate() const {
  if (tokens == 0 || embed_dim == 0 || key_dim == 0) {
    throw std::invalid_argument("SsaConfig: dimensions must be positive");
  }
  if (key_dim > 256) {
    throw std::invalid_argument("SsaConfig: key_dim exceeds the UINT8 counter range (max 256)");
  }
  if (tokens > 65536) {
    throw std::invalid_argument("SsaConfig: tokens exceeds the 16-bit encoder range");
  }
  if (!allow_general_dims) {
    if (!is_pow2(key_dim)) {
      throw std::invalid_argument("SsaConfig: key_dim must be a power of two (or set allow_general_dims)");
    }
    if (!is_pow2(tokens)) {
      throw std::invalid_argument("SsaConfig: tokens must be a power of two (or set allow_general_dims)");
    }
  }
}

Bit encode_count(std::uint32_t count, std::uint32_t denom, LfsrRng& rng) {
  if (denom != 0 && denom <= 65536 && (denom & (denom - 1)) == 0) {
    return bernoulli_from_count(count, denom, rng);
  }
  return bernoulli_from_count_general(count, denom, rng);
}

EncoderBank::EncoderBank(std::uint64_t global_seed, std::size_t tokens, bool shared_score_rng)
    : tokens_(tokens), shared_score_(shared_score_rng) {
  if (tokens == 0) {
    throw std::invalid_argument("EncoderBank: tokens must be positive");
  }
  if (shared_score_) {
    score_rngs_.push_back(derive_rng(global_seed, kModuleScore, 0, 0));
  } else {
    score_rngs_.reserve(tokens * tokens);
    for (std::size_t i = 0; i < tokens; ++i) {
      for (std::size_t j = 0; j < tokens; ++j) {
        score_rngs_.push_back(derive_rng(global_seed, kModuleScore,
                                         static_cast<std::uint32_t>(i),
                                         static_cast<std::uint32_t>(j)));
      }
    }
  }
  attn_rngs_.reserve(tokens);
  for (std::size_t i = 0; i < tokens; ++i) {
    attn_rngs_.push_back(derive_rng(global_seed, kModuleAttn,
                                    static_cast<std::uint32_t>(i), 0));
  }
}

LfsrRng& EncoderBank::score_rng(std::size_t i, std::size_t j) noexcept {
  return shared_score_ ? score_rngs_[0] : score_rngs_[i * tokens_ + j];
}

SsaStepOutput ssa_step(const SpikeMatrix& q_t, const SpikeMatrix& k_t,
                       const SpikeMatrix& v_t, EncoderBank& bank) {
  if (!q_t.same_shape(k_t) || !q_t.same_shape(v_t)) {
    throw std::invalid_argument("ssa_step: Q/K/V shapes differ");
  }
  const std::size_t n = q_t.rows();
  const std::size_t key_dim = q_t.cols();
  if (n != bank.tokens()) {
    throw std::invalid_argument("ssa_step: bank sized for a different token count");
  }
  if (key_dim > 256) {
    throw std::overflow_error("ssa_step: key_dim exceeds the UINT8 counter range");
  }
  if (n > 65536) {
    throw std::overflow_error("ssa_step: tokens exceeds the row-adder encoder range");
  }

  SsaStepOutput out;
  out.s = SpikeMatrix(n, n);
  out.score_params = RealMatrix(n, n);

  // Score encoders, row-major, one draw each.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      std::uint32_t count = 0;
      for (std::size_t d = 0; d < key_dim; ++d) count += sc_and(q_t(i, d), k_t(j, d));
      out.score_params(i, j) = static_cast<double>(count) / static_cast<double>(key_dim);
      out.s.set(i, j, encode_count(count, static_cast<std::uint32_t>(key_dim),
                                   bank.score_rng(i, j)));
    }
  }

  // Row output encoders, key_dim draws each in column order.
  out.attn = SpikeMatrix(n, key_dim);
  out.attn_params = RealMatrix(n, key_dim);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t d = 0; d < key_dim; ++d) {
      std::uint32_t count = 0;
      for (std::size_t j = 0; j < n; ++j) count += sc_and(out.s(i, j), v_t(j, d));
      out.attn_params(i, d) = static_cast<double>(count) / static_cast<double>(n);
      out.attn.set(i, d, encode_count(count, static_cast<std::uint32_t>(n),
                                      bank.attn_rng(i)));
    }
  }
  return out;
}

MatrixEncoder::MatrixEncoder(RealMatrix values, EncoderRange range,
                             std::uint64_t global_seed, std::uint32_t module_id)
    : values_(std::move(values)), range_(range) {
  if (!values_.all_finite()) {
    throw std::invalid_argument("MatrixEncoder: values must be finite");
  }
  rngs_.reserve(values_.rows() * values_.cols());
  for (std::size_t r = 0; r < values_.rows(); ++r) {
    for (std::size_t c = 0; c < values_.cols(); ++c) {
      rngs_.push_back(derive_rng(global_seed, module_id, static_cast<std::uint32_t>(r),
                                 static_cast<std::uint32_t>(c)));
    }
  }
}

SpikeMatrix MatrixEncoder::step() {
  SpikeMatrix bits(values_.rows(), values_.cols());
  for (std::size_t r = 0; r < values_.rows(); ++r) {
    for (std::size_t c = 0; c < values_.cols(); ++c) {
      bits.set(r, c, bernoulli_encode(values_(r, c), range_, rngs_[r * values_.cols() + c]));
    }
  }
  return bits;
}

std::vector<SsaStepOutput> ssa_run(const RealMatrix& x, const QkvWeights& weights,
                                   const LifConfig& lif_cfg, const SsaConfig& cfg) {
  cfg.validate();
  if (x.rows() != cfg.tokens || x.cols() != cfg.embed_dim) {
    throw std::invalid_argument("ssa_run: X must be tokens x embed_dim");
  }
  weights.validate();
  if (weights.embed_dim() != cfg.embed_dim || weights.key_dim() != cfg.key_dim) {
    throw std::invalid_argument("ssa_run: weights must be embed_dim x key_dim");
  }

  MatrixEncoder input(x, cfg.input_range, cfg.global_seed, kModuleInput);
  QkvEncoder qkv(weights, lif_cfg, cfg.tokens);
  EncoderBank bank(cfg.global_seed, cfg.tokens, cfg.shared_score_rng);

  std::vector<SsaStepOutput> outputs;
  outputs.reserve(cfg.t_steps);
  for (std::size_t t = 0; t < cfg.t_steps; ++t) {
    const SpikeMatrix x_t = input.step();
    const QkvEncoder::Output enc = qkv.step(x_t);
    outputs.push_back(ssa_step(enc.q, enc.k, enc.v, bank));
  }
  return outputs;
}

std::vector<SsaStepOutput> ssa_run_independent(const BernoulliInputs& inputs,
                                               const SsaConfig& cfg) {
  cfg.validate();
  for (const RealMatrix* p : {&inputs.pq, &inputs.pk, &inputs.pv}) {
    if (p->rows() != cfg.tokens || p->cols() != cfg.key_dim) {
      throw std::invalid_argument("ssa_run_independent: probability matrices must be tokens x key_dim");
    }
    if (!p->all_in_unit_interval()) {
      throw std::invalid_argument("ssa_run_independent: probabilities must lie in [0,1]");
    }
  }

  const EncoderRange unit(0.0, 1.0);
  MatrixEncoder enc_q(inputs.pq, unit, cfg.global_seed, kModuleProbQ);
  MatrixEncoder enc_k(inputs.pk, unit, cfg.global_seed, kModuleProbK);
  MatrixEncoder enc_v(inputs.pv, unit, cfg.global_seed, kModuleProbV);
  EncoderBank bank(cfg.global_seed, cfg.tokens, cfg.shared_score_rng);

  std::vector<SsaStepOutput> outputs;
  outputs.reserve(cfg.t_steps);
  for (std::size_t t = 0; t < cfg.t_steps; ++t) {
    outputs.push_back(ssa_step(enc_q.step(), enc_k.step(), enc_v.step(), bank));
  }
  return outputs;
}

RealMatrix decode_output(const std::vector<SsaStepOutput>& outputs) {
  if (outputs.empty()) {
    throw std::invalid_argument("decode_output: empty output sequence");
  }
  const SpikeMatrix& first = outputs.front().attn;
  RealMatrix mean(first.rows(), first.cols(), 0.0);
  for (const SsaStepOutput& step : outputs) {
    if (!step.attn.same_shape(first)) {
      throw std::invalid_argument("decode_output: inconsistent shapes across steps");
    }
    for (std::size_t i = 0; i < mean.rows(); ++i) {
      for (std::size_t d = 0; d < mean.cols(); ++d) {
        mean(i, d) += step.attn(i, d);
      }
    }
  }
  for (double& v : mean.data()) v /= static_cast<double>(outputs.size());
  return mean;
}

}  // namespace ssa
