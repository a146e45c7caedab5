#pragma once

#include "opsplit/lifts.hpp"
#include "opsplit/types.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace opsplit {

/*
 * Fixed-point splitting iterations over the product-space lifts. Every run
 * produces a monitored point sequence p_0, p_1, ... in the base space:
 *
 *   - the relaxed reduced-lift iteration and its anchored variant monitor the
 *     coordinator resolvent value,
 *   - the standard-lift iteration monitors the block mean,
 *   - the three-operator scheme monitors its third resolvent value,
 *   - the chain iteration monitors its last resolvent value.
 *
 * The default stopping rule is the Cauchy test ||p_k - p_{k-1}|| < epsilon
 * (strict); a trace that stops via this rule has converged = true and its
 * last recorded residual below epsilon. Exhausting max_iter or a timeout
 * returns a truthful non-converged trace rather than throwing. A
 * caller-supplied success test replaces the Cauchy rule entirely; the
 * converged flag then reports that test's outcome.
 */

struct SolverConfig {
  double gamma = 1.0;
  double lambda = 1.0;
  double beta = 0.5;   // anchored variant only
  Vec anchor;          // anchored variant only
  double epsilon = 1e-6;
  int max_iter = 100000;
  // Relaxation 2 for the averaged iterations is only sound under uniform
  // monotonicity of the underlying sum; the caller vouches for it with this.
  bool assert_uniform_monotone = false;
};

struct SolverTrace {
  int iterations = 0;              // number of residuals evaluated
  std::vector<double> residuals;   // ||p_k - p_{k-1}|| for k = 1..iterations
  Vec final_p;                     // last monitored point
  bool converged = false;
  double wall_time_secs = 0.0;
};

/// Optional per-run controls. `success`, when set, replaces the Cauchy
/// stopping rule (it is evaluated on every monitored point, including the
/// first). `on_monitor` observes (k, p_k) for every iteration performed.
/// With `record_residuals` cleared the trace keeps only the residual count,
/// which bounds memory on very long timeout-governed runs.
struct RunControl {
  std::optional<double> timeout_secs{};
  std::function<bool(const Vec&)> success{};
  std::function<void(int, const Vec&)> on_monitor{};
  bool record_residuals = true;
};

/// Strict Cauchy test: true iff ||p_next - p_prev|| < epsilon.
bool stopping_check(const Vec& p_prev, const Vec& p_next, double epsilon);

/// Relaxed splitting iteration on the reduced lift; lambda in (0, 2), with
/// lambda = 2 admitted under assert_uniform_monotone.
SolverTrace reduced_dr_run(const ReducedLift& lift, const SolverConfig& config,
                           const BlockVector& x0, const RunControl& control = {});

/// Relaxed splitting iteration on the standard lift; same lambda range.
SolverTrace standard_dr_run(const StandardLift& lift, const SolverConfig& config,
                            const BlockVector& x0, const RunControl& control = {});

/// Three-operator scheme on the base space, state (x, y); lambda in (0, 1].
SolverTrace ryu_run(const ResolventOperator& op_a, const ResolventOperator& op_b,
                    const ResolventOperator& op_c, const SolverConfig& config, const Vec& x0,
                    const Vec& y0, const RunControl& control = {});

/// Chain iteration over r >= 2 resolvents with r-1 governing blocks;
/// lambda in (0, 1) strictly. For r = 2 it degenerates to the classical
/// two-operator iteration.
SolverTrace malitsky_tam_run(const std::vector<ResolventPtr>& operators,
                             const SolverConfig& config, const BlockVector& z0,
                             const RunControl& control = {});

/// Anchored variant on the reduced lift: inputs are blended toward the
/// anchor with weight 1 - beta before each resolvent. The monitored point
/// converges to the resolvent of the aggregated sum, at gamma rescaled by
/// 1/(2(1-beta)), evaluated at the anchor. lambda in (0, 2], beta in (0, 1).
SolverTrace aamr_run(const ReducedLift& lift, const SolverConfig& config, const BlockVector& x0,
                     const RunControl& control = {});

}  // namespace opsplit
