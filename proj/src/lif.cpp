#include "ssa/lif.hpp"

#include <stdexcept>

namespace ssa {

void LifConfig::validate() const {
  if (!(beta >= 0.0 && beta < 1.0)) {
    throw std::invalid_argument("LifConfig: beta must be in [0, 1)");
  }
  if (!(v_threshold > 0.0)) {
    throw std::invalid_argument("LifConfig: v_threshold must be > 0");
  }
}

LifLayer::LifLayer(LifConfig config, std::size_t rows, std::size_t cols)
    : config_(config), membrane_(rows, cols, 0.0) {
  config_.validate();
}

SpikeMatrix LifLayer::step(const RealMatrix& current) {
  if (!current.same_shape(membrane_)) {
    throw std::invalid_argument("LifLayer::step: current shape mismatch");
  }
  SpikeMatrix spikes(membrane_.rows(), membrane_.cols());
  for (std::size_t r = 0; r < membrane_.rows(); ++r) {
    for (std::size_t c = 0; c < membrane_.cols(); ++c) {
      double v = config_.beta * membrane_(r, c) + current(r, c);
      if (v >= config_.v_threshold) {
        spikes.set(r, c, 1);
        v = config_.reset == ResetMode::kToZero ? 0.0 : v - config_.v_threshold;
      }
      membrane_(r, c) = v;
    }
  }
  return spikes;
}

void LifLayer::reset_state() {
  for (double& v : membrane_.data()) v = 0.0;
}

void QkvWeights::validate() const {
  if (!w_q.same_shape(w_k) || !w_q.same_shape(w_v)) {
    throw std::invalid_argument("QkvWeights: W_Q/W_K/W_V must share one shape");
  }
  if (!w_q.all_finite() || !w_k.all_finite() || !w_v.all_finite()) {
    throw std::invalid_argument("QkvWeights: entries must be finite");
  }
}

RealMatrix spike_matmul(const SpikeMatrix& spikes, const RealMatrix& weights) {
  if (spikes.cols() != weights.rows()) {
    throw std::invalid_argument("spike_matmul: inner dimensions differ");
  }
  RealMatrix out(spikes.rows(), weights.cols(), 0.0);
  for (std::size_t i = 0; i < spikes.rows(); ++i) {
    for (std::size_t k = 0; k < spikes.cols(); ++k) {
      if (!spikes(i, k)) continue;
      for (std::size_t j = 0; j < weights.cols(); ++j) {
        out(i, j) += weights(k, j);
      }
    }
  }
  return out;
}

QkvEncoder::QkvEncoder(QkvWeights weights, LifConfig config, std::size_t tokens)
    : weights_(std::move(weights)),
      q_layer_(config, tokens, weights_.key_dim()),
      k_layer_(config, tokens, weights_.key_dim()),
      v_layer_(config, tokens, weights_.key_dim()) {
  weights_.validate();
}

QkvEncoder::Output QkvEncoder::step(const SpikeMatrix& x_t) {
  if (x_t.cols() != weights_.embed_dim()) {
    throw std::invalid_argument("QkvEncoder::step: x_t column count != embed_dim");
  }
  Output out;
  out.q = q_layer_.step(spike_matmul(x_t, weights_.w_q));
  out.k = k_layer_.step(spike_matmul(x_t, weights_.w_k));
  out.v = v_layer_.step(spike_matmul(x_t, weights_.w_v));
  return out;
}

void QkvEncoder::reset_state() {
  q_layer_.reset_state();
  k_layer_.reset_state();
  v_layer_.reset_state();
}

}  // namespace ssa
