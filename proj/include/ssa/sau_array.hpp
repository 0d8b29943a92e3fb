#ifndef SSA_SAU_ARRAY_HPP
#define SSA_SAU_ARRAY_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "ssa/matrix.hpp"
#include "ssa/ssa_functional.hpp"

// Cycle-accurate simulator of the N x N stochastic-attention-unit array.
// Keys and values stream across rows while queries stream down columns, one
// bit column per clock. Each SAU ANDs its query/key bits into a UINT8
// counter; after key_dim clocks the counter is re-encoded into the held
// score bit s_reg and cleared. A key_dim-stage FIFO inside each SAU delays
// the value stream so that V bit d reaches the output AND exactly when
// s_reg is valid. Row adders sum the N output ANDs and a per-row encoder
// re-encodes the sum into the emitted attention bit, so row i emits
// Attn[i,0..key_dim-1] sequentially and the output matrix arrives column by
// column. Timing contract: 2*key_dim clocks per unpipelined step;
// key_dim*(T+1) clocks total when the accumulate phase of step t+1 overlaps
// the weighted-sum phase of step t.

namespace ssa {

/// Port values for one accumulate clock: q per column, k and v per row.
struct PortBits {
  std::vector<Bit> q;
  std::vector<Bit> k;
  std::vector<Bit> v;
};

/// Per-cycle port assignments for one time step (key_dim entries; entry c
/// carries column c of Q^t, K^t and V^t).
struct PortStreams {
  std::vector<PortBits> cycles;
};

PortStreams stream_schedule(const SpikeMatrix& q_t, const SpikeMatrix& k_t,
                            const SpikeMatrix& v_t);

/// One stochastic attention unit: score counter, held score bit, and the
/// value delay line.
struct SauState {
  std::uint8_t counter = 0;
  Bit s_reg = 0;
  std::vector<Bit> v_fifo;   // key_dim-stage ring buffer
  std::size_t fifo_pos = 0;  // next slot to pop/push
};

/// One per-clock trace record. Port vectors are empty on idle sides.
struct CycleRecord {
  std::uint64_t cycle = 0;
  std::int64_t acc_step = -1;  // time step accumulating this clock, -1 if none
  std::int64_t ws_step = -1;   // time step in weighted-sum this clock, -1 if none
  std::vector<Bit> q, k, v;    // port bits (acc side)
  int attn_d = -1;             // output column emitted this clock
  std::vector<Bit> attn_bits;  // one bit per row when ws side active
  std::vector<Bit> s_bits;     // n*n score encoder outputs, boundary clocks only
  std::vector<std::uint8_t> counters;  // per-SAU counters, full-dump mode only
};

/// Trace of a simulation run. Summary counters always accumulate; per-clock
/// records only when capture_records is set (full register dumps cost the
/// most, so they sit behind a second flag).
struct CycleTrace {
  std::size_t tokens = 0;
  std::size_t key_dim = 0;
  bool capture_records = false;
  bool full_dump = false;
  std::vector<CycleRecord> records;

  std::uint64_t cycles = 0;
  std::uint64_t and_evals = 0;
  std::uint64_t rng_draws = 0;
  std::uint64_t row_adds = 0;
  std::uint8_t max_counter = 0;
};

/// Line-delimited text form of a trace (see README for the field layout).
void write_trace(std::ostream& os, const CycleTrace& trace);

/// The N x N array plus row adders and Bernoulli encoders, clocked as one
/// synchronous state machine. Encoder seeding matches EncoderBank, which is
/// what makes the emitted bits equal the functional model's bit for bit.
class SsaBlock {
 public:
  SsaBlock(std::size_t tokens, std::size_t key_dim, std::uint64_t global_seed,
           bool shared_score_rng = false);

  /// Drive one time step unpipelined: key_dim accumulate clocks, then
  /// key_dim weighted-sum clocks. Returns the assembled N x key_dim output.
  SpikeMatrix run_timestep(const SpikeMatrix& q_t, const SpikeMatrix& k_t,
                           const SpikeMatrix& v_t, CycleTrace* trace = nullptr);

  /// Drive a sequence of time steps. Pipelined mode overlaps step t+1's
  /// accumulate phase with step t's weighted-sum phase: key_dim*(T+1)
  /// clocks total instead of 2*key_dim*T. Outputs are bit-identical either
  /// way because every encoder owns its draw stream.
  std::vector<SpikeMatrix> run_stream(const std::vector<QkvEncoder::Output>& steps,
                                      bool pipelined, CycleTrace* trace = nullptr);

  std::size_t tokens() const noexcept { return tokens_; }
  std::size_t key_dim() const noexcept { return key_dim_; }
  std::uint64_t cycle() const noexcept { return cycle_; }
  const SauState& sau(std::size_t i, std::size_t j) const noexcept {
    return saus_[i * tokens_ + j];
  }

 private:
  struct ClockInput {
    const PortBits* acc = nullptr;  // accumulate-side ports, null when idle
    std::int64_t acc_step = -1;
    bool boundary = false;          // latch s_reg and clear counters at clock end
    bool ws = false;                // weighted-sum side active
    std::int64_t ws_step = -1;
    int ws_d = -1;                  // output column index
  };

  /// Advance one clock; appends the emitted row bits to out_column when the
  /// weighted-sum side is active.
  void clock(const ClockInput& in, std::vector<Bit>* out_column, CycleTrace* trace);

  std::size_t tokens_;
  std::size_t key_dim_;
  std::vector<SauState> saus_;  // tokens^2, row-major
  EncoderBank bank_;
  std::uint64_t cycle_ = 0;
};

}  // namespace ssa

#endif  // SSA_SAU_ARRAY_HPP
