#pragma once

#include <cstdint>
#include <vector>

#include "nomacoop/channel.hpp"
#include "nomacoop/ergodic.hpp"
#include "nomacoop/rates.hpp"

namespace nomacoop {

enum class RateEvaluatorKind { ClosedForm, MonteCarlo };

/// Bisection controls. tolerance is the bracket width on gamma_2. The
/// Monte Carlo evaluator (and the regime test, which is always Monte
/// Carlo) reuses one fixed (seed, stream) per evaluation, so runs are
/// deterministic and comparisons across gamma values share draws.
struct BisectionSpec {
    double tolerance = 1e-6;
    int max_iterations = 60;
    RateEvaluatorKind evaluator = RateEvaluatorKind::ClosedForm;
    std::uint64_t mc_samples = 200000;
    std::uint64_t mc_seed = 0x5eed;
    std::uint64_t regime_samples = 200000;
    int threads = 1;
    bool record_trace = false;
};

enum class AllocationStatus { Converged, SystemOutage, MaxIterations };

struct AllocationTracePoint {
    int algorithm;  // 1 = fairness, 2 = max-sum-rate
    int iteration;
    double gamma_lo, gamma_hi, gamma2;
    double r1, r2;
};

struct AllocationResult {
    double gamma2_star = 0;
    double alpha2_star = 0;  // meaningful for OMA searches; mirrors gamma2_star otherwise
    double achieved_r1 = 0;
    double achieved_r2 = 0;
    int iterations = 0;
    AllocationStatus status = AllocationStatus::Converged;
    std::vector<AllocationTracePoint> trace;
};

struct RegimeSinrs {
    double ev11 = 0, ev21 = 0, ew1 = 0, ew2 = 0;
};

/// Bisection for the max-min fairness split: drives E[R1] = E[R2] using
/// the monotonicity of the two rates in gamma_2. L1 < L2 is not required
/// mechanically; a violation is logged to stderr.
AllocationResult fairness_bisection(const ChannelProfile& profile,
                                    const BisectionSpec& spec = {});

/// Bisection for max sum-rate under the minimum-rate floor. Returns
/// SystemOutage (at the fairness point) when the fairness-point common
/// rate R0 fails the floor; otherwise follows the published branch order:
/// infeasible midpoints move toward the violated user's relief, feasible
/// midpoints move with the objective's regime (E[V11] < E[W1] < E[V21]
/// increasing, else decreasing).
AllocationResult max_sum_rate_bisection(const ChannelProfile& profile, double rate_floor,
                                        const BisectionSpec& spec = {});

/// Monte Carlo means of the raw SINRs V11, V21, W1, W2 used by the
/// max-sum-rate regime test.
RegimeSinrs expected_regime_sinrs(const ChannelProfile& profile, const PowerSplit& split,
                                  std::uint64_t samples, const SeededRng& rng,
                                  int threads = 1);

enum class AllocationObjective { Fairness, SumRateWithFloor };

/// Exhaustive scan controls. grid_points interior points of
/// (range_lo, range_hi) are visited; narrowing the range refines a coarse
/// pass. Monte Carlo backed schemes draw one common-random-number sample
/// set up front and evaluate every grid point on it. OMA couples
/// gamma_i = alpha_i unless oma_joint_scan, which scans a
/// sqrt(grid_points)^2 grid over (gamma2, alpha2) independently.
struct GridSearchSpec {
    int grid_points = 10000;
    double range_lo = 0.0;
    double range_hi = 1.0;
    AllocationObjective objective = AllocationObjective::Fairness;
    double rate_floor = 0;
    std::uint64_t mc_samples = 100000;
    std::uint64_t mc_seed = 0x5eed;
    int threads = 1;
    bool oma_joint_scan = false;
    bool uni_near_approx = true;  // analysis-level uni evaluator
};

/// Baseline "numerically found" optimum for any scheme. Closed forms back
/// BiCoopNearApprox, UniCoop and Oma; selection/MRC bi variants and
/// ConvNoma use the Monte Carlo evaluator.
AllocationResult grid_search_allocation(const ChannelProfile& profile,
                                        const OmaSplit& base_oma, SchemeKind scheme,
                                        const GridSearchSpec& spec = {});

}  // namespace nomacoop
