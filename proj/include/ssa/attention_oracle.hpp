#ifndef SSA_ATTENTION_ORACLE_HPP
#define SSA_ATTENTION_ORACLE_HPP

#include "ssa/matrix.hpp"

// Exact reference computations used as ground truth by the test suites:
// floating-point attention, the expectation of the stochastic attention
// pipeline under independent Bernoulli inputs, and the exact per-step
// Bernoulli parameters implied by sampled spike matrices.

namespace ssa {

/// softmax(Q K^T / sqrt(key_dim)) V with row-wise softmax (max-subtracted).
/// Reference only; the stochastic pipeline replaces this with the linear form.
RealMatrix softmax_attention(const RealMatrix& q, const RealMatrix& k,
                             const RealMatrix& v, std::size_t key_dim);

/// Expected time-averaged stochastic attention output for independent
/// Bernoulli Q/K/V streams with parameter matrices pq/pk/pv (each N x D_K):
///   (1 / (N * D_K)) * pq * pk^T * pv.
RealMatrix linear_ssa_expectation(const RealMatrix& pq, const RealMatrix& pk,
                                  const RealMatrix& pv);

/// Exact Bernoulli parameter of the score matrix given sampled Q^t/K^t:
/// entry (i,j) = (1/D_K) * sum_d (Q[i,d] AND K[j,d]). Counts over a
/// power-of-two denominator are exactly representable in double.
RealMatrix exact_score_params(const SpikeMatrix& q_t, const SpikeMatrix& k_t);

/// Exact Bernoulli parameter of the output given sampled S^t/V^t:
/// entry (i,d) = (1/N) * sum_j (S[i,j] AND V[j,d]).
RealMatrix exact_attn_params(const SpikeMatrix& s_t, const SpikeMatrix& v_t);

}  // namespace ssa

#endif  // SSA_ATTENTION_ORACLE_HPP
