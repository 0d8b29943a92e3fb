#include "ssa/attention_oracle.hpp"

#include <cmath>
#include <stdexcept>

namespace ssa {

namespace {

void require_same_shape(const RealMatrix& a, const RealMatrix& b, const char* what) {
  if (!a.same_shape(b)) {
    throw std::invalid_argument(std::string(what) + ": shape mismatch");
  }
}

}  // namespace

RealMatrix softmax_attention(const RealMatrix& q, const RealMatrix& k,
                             const RealMatrix& v, std::size_t key_dim) {
  require_same_shape(q, k, "softmax_attention");
  require_same_shape(q, v, "softmax_attention");
  if (q.cols() != key_dim) {
    throw std::invalid_argument("softmax_attention: key_dim != column count");
  }
  const std::size_t n = q.rows();
  const double scale = 1.0 / std::sqrt(static_cast<double>(key_dim));

  RealMatrix scores(n, n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double dot = 0.0;
      for (std::size_t d = 0; d < key_dim; ++d) dot += q(i, d) * k(j, d);
      scores(i, j) = dot * scale;
    }
  }

  // Row-wise softmax with max subtraction; rows sum to 1 by construction.
  for (std::size_t i = 0; i < n; ++i) {
    double row_max = scores(i, 0);
    for (std::size_t j = 1; j < n; ++j) row_max = std::max(row_max, scores(i, j));
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      scores(i, j) = std::exp(scores(i, j) - row_max);
      sum += scores(i, j);
    }
    for (std::size_t j = 0; j < n; ++j) scores(i, j) /= sum;
  }

  RealMatrix out(n, key_dim, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t d = 0; d < key_dim; ++d) {
      double acc = 0.0;
      for (std::size_t j = 0; j < n; ++j) acc += scores(i, j) * v(j, d);
      out(i, d) = acc;
    }
  }
  return out;
}

RealMatrix linear_ssa_expectation(const RealMatrix& pq, const RealMatrix& pk,
                                  const RealMatrix& pv) {
  require_same_shape(pq, pk, "linear_ssa_expectation");
  require_same_shape(pq, pv, "linear_ssa_expectation");
  if (!pq.all_in_unit_interval() || !pk.all_in_unit_interval() ||
      !pv.all_in_unit_interval()) {
    throw std::invalid_argument("linear_ssa_expectation: entries must lie in [0,1]");
  }
  const std::size_t n = pq.rows();
  const std::size_t key_dim = pq.cols();

  // (pq * pk^T) / D_K, then (* pv) / N.
  RealMatrix score(n, n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double dot = 0.0;
      for (std::size_t d = 0; d < key_dim; ++d) dot += pq(i, d) * pk(j, d);
      score(i, j) = dot / static_cast<double>(key_dim);
    }
  }
  RealMatrix out(n, key_dim, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t d = 0; d < key_dim; ++d) {
      double acc = 0.0;
      for (std::size_t j = 0; j < n; ++j) acc += score(i, j) * pv(j, d);
      out(i, d) = acc / static_cast<double>(n);
    }
  }
  return out;
}

RealMatrix exact_score_params(const SpikeMatrix& q_t, const SpikeMatrix& k_t) {
  if (!q_t.same_shape(k_t)) {
    throw std::invalid_argument("exact_score_params: shape mismatch");
  }
  const std::size_t n = q_t.rows();
  const std::size_t key_dim = q_t.cols();
  RealMatrix params(n, n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      std::uint32_t count = 0;
      for (std::size_t d = 0; d < key_dim; ++d) count += sc_and(q_t(i, d), k_t(j, d));
      params(i, j) = static_cast<double>(count) / static_cast<double>(key_dim);
    }
  }
  return params;
}

RealMatrix exact_attn_params(const SpikeMatrix& s_t, const SpikeMatrix& v_t) {
  if (s_t.rows() != s_t.cols() || s_t.rows() != v_t.rows()) {
    throw std::invalid_argument("exact_attn_params: S must be N x N with V N x D_K");
  }
  const std::size_t n = s_t.rows();
  const std::size_t key_dim = v_t.cols();
  RealMatrix params(n, key_dim, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t d = 0; d < key_dim; ++d) {
      std::uint32_t count = 0;
      for (std::size_t j = 0; j < n; ++j) count += sc_and(s_t(i, j), v_t(j, d));
      params(i, d) = static_cast<double>(count) / static_cast<double>(n);
    }
  }
  return params;
}

}  // namespace ssa
