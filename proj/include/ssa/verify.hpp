#ifndef SSA_VERIFY_HPP
#define SSA_VERIFY_HPP

#include <cstdint>
#include <string>
#include <vector>

// Self-verification suite: statistical properties of the stochastic
// primitives, oracle equivalences, functional-vs-cycle bit-exactness, cycle
// count contracts, convergence to the linear-attention expectation, and
// count/trace agreement. Tolerances are fixed here, not configurable; the
// seed only shifts which pseudo-random instances are drawn.

namespace ssa {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerifyOptions {
  std::uint64_t global_seed = 1;
};

CheckResult check_sc_product(const VerifyOptions& opt);           // AND-gate rate product
CheckResult check_exact_params(const VerifyOptions& opt);         // sampled vs oracle params
CheckResult check_bit_exactness(const VerifyOptions& opt);        // functional vs cycle sim
CheckResult check_cycle_contracts(const VerifyOptions& opt);      // latency / throughput
CheckResult check_convergence(const VerifyOptions& opt);          // decode vs expectation
CheckResult check_count_trace_agreement(const VerifyOptions& opt);
CheckResult check_energy_report_structure(const VerifyOptions& opt);

// Supplementary library invariants (cheap, run by the verify command).
CheckResult check_lfsr_period(const VerifyOptions& opt);
CheckResult check_count_encoder_exactness(const VerifyOptions& opt);

/// The acceptance set, in criterion order.
std::vector<CheckResult> run_acceptance_checks(const VerifyOptions& opt);

/// Acceptance set plus supplementary invariants.
std::vector<CheckResult> run_all_checks(const VerifyOptions& opt);

}  // namespace ssa

#endif  // SSA_VERIFY_HPP
