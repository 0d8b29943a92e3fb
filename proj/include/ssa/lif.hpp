#ifndef SSA_LIF_HPP
#define SSA_LIF_HPP

#include <cstddef>

#include "ssa/matrix.hpp"

// Discrete-time leaky integrate-and-fire layer turning weighted spike input
// into binary query/key/value streams. Update rule per step:
//   v <- beta * v + current;  spike iff v >= v_threshold;  then reset.
// Firing at exact threshold equality counts as a spike.

namespace ssa {

enum class ResetMode { kToZero, kSubtract };

struct LifConfig {
  double beta = 0.9;          // membrane leak per step, in [0, 1)
  double v_threshold = 1.0;   // > 0
  ResetMode reset = ResetMode::kToZero;

  void validate() const;
};

/// One LIF neuron per matrix entry. Membrane shape is fixed at construction.
class LifLayer {
 public:
  LifLayer(LifConfig config, std::size_t rows, std::size_t cols);

  /// Integrate one step of input current and emit spikes.
  SpikeMatrix step(const RealMatrix& current);

  const RealMatrix& membrane() const noexcept { return membrane_; }
  const LifConfig& config() const noexcept { return config_; }
  void reset_state();

 private:
  LifConfig config_;
  RealMatrix membrane_;
};

/// Query/key/value projection weights, each embed_dim x key_dim.
struct QkvWeights {
  RealMatrix w_q;
  RealMatrix w_k;
  RealMatrix w_v;

  void validate() const;
  std::size_t embed_dim() const noexcept { return w_q.rows(); }
  std::size_t key_dim() const noexcept { return w_q.cols(); }
};

/// Product of a binary matrix with a real matrix, evaluated accumulate-only:
/// each output row is the sum of the weight rows selected by the input spikes.
RealMatrix spike_matmul(const SpikeMatrix& spikes, const RealMatrix& weights);

/// Three LIF layers with private state, producing Q^t/K^t/V^t from X^t.
class QkvEncoder {
 public:
  QkvEncoder(QkvWeights weights, LifConfig config, std::size_t tokens);

  struct Output {
    SpikeMatrix q;
    SpikeMatrix k;
    SpikeMatrix v;
  };

  /// x_t is tokens x embed_dim binary; outputs are tokens x key_dim binary.
  Output step(const SpikeMatrix& x_t);

  void reset_state();
  const QkvWeights& weights() const noexcept { return weights_; }

 private:
  QkvWeights weights_;
  LifLayer q_layer_;
  LifLayer k_layer_;
  LifLayer v_layer_;
};

}  // namespace ssa

#endif  // SSA_LIF_HPP
