#include "nomacoop/power_alloc.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <stdexcept>

#include "nomacoop/mc.hpp"
#include "nomacoop/numerics.hpp"

namespace nomacoop {

namespace {

constexpr std::uint64_t kEvaluatorStream = 0xeb01;
constexpr std::uint64_t kRegimeStream = 0xa162;
constexpr std::uint64_t kGridStream = 0xc12d;

struct RateEvaluation {
    double r1, r2;
};

// E[R1], E[R2] of bi-directional cooperative NOMA at one gamma_2, via the
// closed forms or the Monte Carlo estimator with fixed draws.
RateEvaluation evaluate_bi_rates(const ChannelProfile& profile, double gamma2,
                                 const BisectionSpec& spec) {
    const PowerSplit split = PowerSplit::two_user(1.0 - gamma2, gamma2);
    if (spec.evaluator == RateEvaluatorKind::ClosedForm) {
        return {ergodic_bi_r1_closed(profile, split), ergodic_r2_closed(profile, split)};
    }
    const ErgodicResult mc = monte_carlo_ergodic(
        profile, split, OmaSplit::equal(2), SchemeKind::BiCoopNearApprox, spec.mc_samples,
        SeededRng(spec.mc_seed, kEvaluatorStream), spec.threads);
    return {mc.r1_mean, mc.r2_mean};
}

void maybe_log_ordering(const ChannelProfile& profile) {
    if (profile.variance(0) >= profile.variance(1)) {
        std::clog << "[power_alloc] note: L1 >= L2; the fairness analysis assumes "
                     "L1 < L2 but the bisection mechanics do not require it\n";
    }
}

}  // namespace

AllocationResult fairness_bisection(const ChannelProfile& profile,
                                    const BisectionSpec& spec) {
    if (profile.user_count() != 2) throw std::invalid_argument("two-user algorithm");
    if (!(spec.tolerance > 0.0) || spec.max_iterations < 1) {
        throw std::invalid_argument("invalid BisectionSpec");
    }
    maybe_log_ordering(profile);

    AllocationResult res;
    double lo = 0.0, hi = 1.0;
    while (hi - lo >= spec.tolerance && res.iterations < spec.max_iterations) {
        const double mid = 0.5 * (lo + hi);
        const RateEvaluation r = evaluate_bi_rates(profile, mid, spec);
        if (r.r1 < r.r2) {
            hi = mid;
        } else {
            lo = mid;
        }
        ++res.iterations;
        if (spec.record_trace) {
            res.trace.push_back({1, res.iterations, lo, hi, mid, r.r1, r.r2});
        }
    }
    res.gamma2_star = 0.5 * (lo + hi);
    const RateEvaluation r = evaluate_bi_rates(profile, res.gamma2_star, spec);
    res.alpha2_star = res.gamma2_star;
    res.achieved_r1 = r.r1;
    res.achieved_r2 = r.r2;
    res.status = (hi - lo < spec.tolerance) ? AllocationStatus::Converged
                                            : AllocationStatus::MaxIterations;
    return res;
}

AllocationResult max_sum_rate_bisection(const ChannelProfile& profile, double rate_floor,
                                        const BisectionSpec& spec) {
    if (profile.user_count() != 2) throw std::invalid_argument("two-user algorithm");
    if (rate_floor < 0.0) throw std::invalid_argument("rate floor must be >= 0");

    // fairness-point common rate gates feasibility of the whole problem
    AllocationResult fair = fairness_bisection(profile, spec);
    const double common_rate = std::min(fair.achieved_r1, fair.achieved_r2);
    if (common_rate <= rate_floor) {
        AllocationResult res = fair;
        res.status = AllocationStatus::SystemOutage;
        return res;
    }

    AllocationResult res;
    if (spec.record_trace) res.trace = fair.trace;
    double lo = 0.0, hi = 1.0;
    const SeededRng regime_rng(spec.mc_seed, kRegimeStream);
    while (hi - lo >= spec.tolerance && res.iterations < spec.max_iterations) {
        const double mid = 0.5 * (lo + hi);
        const RateEvaluation r = evaluate_bi_rates(profile, mid, spec);
        if (std::min(r.r1, r.r2) <= rate_floor) {
            // infeasible midpoint: move toward the violated user's relief
            if (r.r1 > r.r2) {
                lo = mid;
            } else {
                hi = mid;
            }
        } else {
            const PowerSplit split = PowerSplit::two_user(1.0 - mid, mid);
            const RegimeSinrs regime = expected_regime_sinrs(
                profile, split, spec.regime_samples, regime_rng, spec.threads);
            const bool increasing = regime.ev11 < regime.ew1 && regime.ew1 < regime.ev21;
            if (increasing) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        ++res.iterations;
        if (spec.record_trace) {
            res.trace.push_back({2, res.iterations, lo, hi, mid, r.r1, r.r2});
        }
    }
    res.gamma2_star = 0.5 * (lo + hi);
    res.alpha2_star = res.gamma2_star;
    const RateEvaluation r = evaluate_bi_rates(profile, res.gamma2_star, spec);
    res.achieved_r1 = r.r1;
    res.achieved_r2 = r.r2;
    res.status = (hi - lo < spec.tolerance) ? AllocationStatus::Converged
                                            : AllocationStatus::MaxIterations;
    return res;
}

RegimeSinrs expected_regime_sinrs(const ChannelProfile& profile, const PowerSplit& split,
                                  std::uint64_t samples, const SeededRng& rng,
                                  int threads) {
    if (samples < 1) throw std::invalid_argument("samples must be >= 1");
    if (profile.user_count() != 2) throw std::invalid_argument("two-user operation");
    const double s2 = profile.noise_variance();
    const double l1 = profile.variance(0), l2 = profile.variance(1);
    const double lc21 = profile.coop_variance(1, 0), lc12 = profile.coop_variance(0, 1);
    const double g1 = split.gamma(0), g2 = split.gamma(1);

    auto draw = [&](SeededRng& r, std::span<double> out) {
        const double h1 = r.exponential(l1);
        const double h2 = r.exponential(l2);
        out[0] = sinr_kernel(h1, g1, g2, s2);
        out[1] = sinr_kernel(h2, g1, g2, s2);
        out[2] = r.exponential(lc21) / s2;
        out[3] = r.exponential(lc12) / s2;
    };
    const McStats stats = run_monte_carlo(samples, 4, rng, threads, draw);
    return {stats.mean[0], stats.mean[1], stats.mean[2], stats.mean[3]};
}

namespace {

// Common-random-number sample set shared by every grid point of a Monte
// Carlo backed search.
struct CrnDraws {
    std::vector<double> h1, h2, w1, w2;
};

CrnDraws make_crn_draws(const ChannelProfile& profile, std::uint64_t samples,
                        std::uint64_t seed, bool need_w) {
    CrnDraws d;
    SeededRng rng(seed, kGridStream);
    d.h1.resize(samples);
    d.h2.resize(samples);
    if (need_w) {
        d.w1.resize(samples);
        d.w2.resize(samples);
    }
    const double l1 = profile.variance(0), l2 = profile.variance(1);
    const double lc21 = profile.coop_variance(1, 0), lc12 = profile.coop_variance(0, 1);
    const double s2 = profile.noise_variance();
    for (std::uint64_t i = 0; i < samples; ++i) {
        d.h1[i] = rng.exponential(l1);
        d.h2[i] = rng.exponential(l2);
        if (need_w) {
            d.w1[i] = rng.exponential(lc21) / s2;
            d.w2[i] = rng.exponential(lc12) / s2;
        }
    }
    return d;
}

RateEvaluation grid_point_rates(const ChannelProfile& profile, SchemeKind scheme,
                                double gamma2, double alpha2, const GridSearchSpec& spec,
                                const CrnDraws& draws) {
    const double s2 = profile.noise_variance();
    const PowerSplit split = PowerSplit::two_user(1.0 - gamma2, gamma2);
    switch (scheme) {
        case SchemeKind::BiCoopNearApprox:
            return {ergodic_bi_r1_closed(profile, split),
                    ergodic_r2_closed(profile, split)};
        case SchemeKind::UniCoop:
            if (spec.uni_near_approx) {
                return {ergodic_uni_r1_closed(profile, split),
                        ergodic_r2_closed(profile, split)};
            }
            break;  // Monte Carlo below
        case SchemeKind::Oma: {
            const OmaSplit oma = OmaSplit::two_user(1.0 - alpha2, 1.0 - gamma2);
            return {oma.alpha(0) * c1(oma.gamma(0) * profile.variance(0) /
                                      (oma.alpha(0) * s2)),
                    oma.alpha(1) * c1(oma.gamma(1) * profile.variance(1) /
                                      (oma.alpha(1) * s2))};
        }
        default:
            break;
    }

    // Monte Carlo evaluator over the shared draw set
    const double g1 = 1.0 - gamma2, g2 = gamma2;
    double sum1 = 0.0, sum2 = 0.0;
    const std::size_t n = draws.h1.size();
    for (std::size_t i = 0; i < n; ++i) {
        TwoUserSinrs s;
        s.v11 = sinr_kernel(draws.h1[i], g1, g2, s2);
        s.v21 = sinr_kernel(draws.h2[i], g1, g2, s2);
        s.v22 = sinr_kernel(draws.h2[i], g2, 0.0, s2);
        s.w1 = draws.w1.empty() ? 0.0 : draws.w1[i];
        s.w2 = draws.w2.empty() ? 0.0 : draws.w2[i];
        double z1 = 0.0;
        switch (scheme) {
            case SchemeKind::BiCoopSelection:
                z1 = z1_bi_selection(s, draws.h1[i], draws.h2[i]);
                break;
            case SchemeKind::BiCoopMrc:
                z1 = z1_bi_mrc(s, draws.h1[i], draws.h2[i]);
                break;
            case SchemeKind::UniCoop:
                z1 = z1_uni(s);
                break;
            case SchemeKind::ConvNoma:
                z1 = z1_conv_noma(s);
                break;
            default:
                throw std::logic_error("unexpected scheme in MC grid evaluator");
        }
        sum1 += std::log2(1.0 + z1);
        sum2 += std::log2(1.0 + s.v22);
    }
    return {sum1 / static_cast<double>(n), sum2 / static_cast<double>(n)};
}

}  // namespace

AllocationResult grid_search_allocation(const ChannelProfile& profile,
                                        const OmaSplit& base_oma, SchemeKind scheme,
                                        const GridSearchSpec& spec) {
    if (profile.user_count() != 2) throw std::invalid_argument("two-user search");
    if (spec.grid_points < 2) throw std::invalid_argument("grid_points must be >= 2");
    if (!(0.0 <= spec.range_lo && spec.range_lo < spec.range_hi && spec.range_hi <= 1.0)) {
        throw std::invalid_argument("grid range must satisfy 0 <= lo < hi <= 1");
    }
    (void)base_oma;

    const bool mc_backed = scheme == SchemeKind::BiCoopSelection ||
                           scheme == SchemeKind::BiCoopMrc ||
                           scheme == SchemeKind::ConvNoma ||
                           (scheme == SchemeKind::UniCoop && !spec.uni_near_approx);
    const bool need_w = mc_backed && scheme != SchemeKind::ConvNoma;
    CrnDraws draws;
    if (mc_backed) {
        draws = make_crn_draws(profile, spec.mc_samples, spec.mc_seed, need_w);
    }

    const bool joint = scheme == SchemeKind::Oma && spec.oma_joint_scan;
    const int g_gamma = joint ? std::max(2, static_cast<int>(std::sqrt(
                                                static_cast<double>(spec.grid_points))))
                              : spec.grid_points;
    const int g_alpha = joint ? g_gamma : 1;

    AllocationResult best;
    best.status = AllocationStatus::SystemOutage;
    double best_objective = -std::numeric_limits<double>::infinity();
    AllocationResult best_fair;  // fallback when the floor is infeasible everywhere
    double best_fair_value = -std::numeric_limits<double>::infinity();
    int evaluations = 0;

    const double span = spec.range_hi - spec.range_lo;
    for (int j = 1; j <= g_gamma; ++j) {
        const double gamma2 = spec.range_lo + span * j / (g_gamma + 1);
        for (int a = 1; a <= g_alpha; ++a) {
            const double alpha2 =
                joint ? spec.range_lo + span * a / (g_alpha + 1) : gamma2;
            const RateEvaluation r =
                grid_point_rates(profile, scheme, gamma2, alpha2, spec, draws);
            ++evaluations;
            const double fair_value = std::min(r.r1, r.r2);
            if (fair_value > best_fair_value) {
                best_fair_value = fair_value;
                best_fair.gamma2_star = gamma2;
                best_fair.alpha2_star = alpha2;
                best_fair.achieved_r1 = r.r1;
                best_fair.achieved_r2 = r.r2;
            }
            double objective;
            if (spec.objective == AllocationObjective::Fairness) {
                objective = fair_value;
            } else {
                if (fair_value < spec.rate_floor) continue;  // infeasible point
                objective = r.r1 + r.r2;
            }
            if (objective > best_objective) {
                best_objective = objective;
                best.gamma2_star = gamma2;
                best.alpha2_star = alpha2;
                best.achieved_r1 = r.r1;
                best.achieved_r2 = r.r2;
                best.status = AllocationStatus::Converged;
            }
        }
    }
    if (best.status == AllocationStatus::SystemOutage) {
        best_fair.status = AllocationStatus::SystemOutage;
        best_fair.iterations = evaluations;
        return best_fair;
    }
    best.iterations = evaluations;
    return best;
}

}  // namespace nomacoop
