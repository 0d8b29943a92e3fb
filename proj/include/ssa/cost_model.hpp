#ifndef SSA_COST_MODEL_HPP
#define SSA_COST_MODEL_HPP

#include <cstdint>
#include <string>
#include <vector>

// Operation and memory-access counting for three attention implementations
// (real-valued MAC, integer-multiplier spiking, stochastic spiking), plus a
// linear energy model over configurable per-operation costs. Per-op energy
// constants are inputs with mandatory provenance; the shipped example config
// carries clearly labeled assumed values, not measured ground truth.

namespace ssa {

/// Memory traffic for one access class; widths differ between traffic
/// classes, so bits are totaled rather than implied by a single width.
struct MemTraffic {
  std::uint64_t accesses = 0;
  std::uint64_t bits = 0;

  void add(std::uint64_t n_accesses, std::uint64_t bits_per_access) {
    accesses += n_accesses;
    bits += n_accesses * bits_per_access;
  }
  MemTraffic& operator+=(const MemTraffic& o) {
    accesses += o.accesses;
    bits += o.bits;
    return *this;
  }
};

struct OpCounts {
  std::uint64_t mac_ops = 0;      // real/integer multiply-accumulate
  std::uint64_t ac_ops = 0;       // accumulate-only (binary-gated adds)
  std::uint64_t and_ops = 0;      // single-gate AND evaluations
  std::uint64_t add_ops = 0;      // counter increments and row adds
  std::uint64_t rng_draws = 0;    // LFSR advances
  std::uint64_t compare_ops = 0;  // threshold / modulo comparisons
  std::uint64_t softmax_ops = 0;  // exponential-equivalent ops
  MemTraffic mem_reads;
  MemTraffic mem_writes;
};

/// Stochastic spiking attention block, per the N x N array dataflow:
/// 2*N^2*D_K ANDs per step (score + weighted-sum phases), N^2*D_K counter
/// increments plus N*D_K row adds, N^2 + N*D_K encoder draws (one compare
/// each), and 1-bit streaming traffic (3*N*D_K read, N*D_K written) per step.
OpCounts count_ops_ssa(std::size_t tokens, std::size_t key_dim, std::size_t t_steps);

struct AnnCostOptions {
  /// Exponential-equivalent ops charged per attention-map element for the
  /// row softmax. Zero removes softmax from the counts entirely.
  double softmax_op_equiv = 1.0;
};

/// Real-valued baseline (single pass, INT8 storage): 2*N^2*D_K MACs for the
/// two matrix products, softmax per options, 8-bit traffic including the
/// intermediate score-matrix round trip.
OpCounts count_ops_ann(std::size_t tokens, std::size_t key_dim,
                       const AnnCostOptions& options = {});

/// Integer-multiplier spiking baseline: binary operands turn the per-step
/// products into accumulations (2*N^2*D_K ACs), activations stream at one
/// bit, and the integer score matrix makes an 8-bit round trip per step.
OpCounts count_ops_spikformer(std::size_t tokens, std::size_t key_dim,
                              std::size_t t_steps);

/// Per-operation energies in pJ plus per-bit memory energies. provenance
/// must name where the constants came from.
struct EnergyConfig {
  double mac_pj = -1.0;
  double ac_pj = -1.0;
  double and_pj = -1.0;
  double add_pj = -1.0;
  double rng_draw_pj = -1.0;
  double compare_pj = -1.0;
  double softmax_pj = -1.0;
  double mem_read_pj_per_bit = -1.0;
  double mem_write_pj_per_bit = -1.0;
  std::string provenance;

  void validate() const;  // throws if any energy is missing/nonpositive
};

struct EnergyBreakdownEntry {
  std::string category;
  std::uint64_t count = 0;
  double energy_uj = 0.0;
};

struct EnergyReport {
  double processing_uj = 0.0;
  double memory_uj = 0.0;
  double total_uj = 0.0;  // processing + memory, exactly
  std::vector<EnergyBreakdownEntry> breakdown;
};

/// Dot product of counts with per-op energies.
EnergyReport energy(const OpCounts& counts, const EnergyConfig& cfg);

}  // namespace ssa

#endif  // SSA_COST_MODEL_HPP
