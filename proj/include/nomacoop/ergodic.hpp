#pragma once

#include <cstdint>

#include "nomacoop/channel.hpp"
#include "nomacoop/rates.hpp"

namespace nomacoop {

/// Ergodic-rate estimate. sum_mean is defined as r1_mean + r2_mean exactly;
/// std errors are 0 for closed forms and for single-sample runs.
struct ErgodicResult {
    double r1_mean = 0;
    double r2_mean = 0;
    double sum_mean = 0;
    double std_error = 0;  // std error of the sum estimate
    double r1_std_error = 0;
    double r2_std_error = 0;
    std::uint64_t sample_count = 0;
};

/// The published two-user uni-directional sum capacity exists in two
/// inconsistent prints; AppendixConsistent is the one the Monte Carlo
/// oracle confirms and is the default everywhere. MainText is retained
/// for documentation only.
enum class UniCapacityForm { AppendixConsistent, MainText };

/// E[rate of s1] under the near-user approximation, six-term closed form.
double ergodic_bi_r1_closed(const ChannelProfile& profile, const PowerSplit& split);

/// E[rate of s2] = c1(gamma2*L2/sigma^2); common to all NOMA schemes.
double ergodic_r2_closed(const ChannelProfile& profile, const PowerSplit& split);

/// Five-term closed-form sum capacity of bi-directional cooperative NOMA
/// (near-user approximation). Equals r1_closed + r2_closed identically.
double ergodic_bi_sum_closed(const ChannelProfile& profile, const PowerSplit& split);

double ergodic_uni_r1_closed(const ChannelProfile& profile, const PowerSplit& split,
                             UniCapacityForm form = UniCapacityForm::AppendixConsistent);

/// Sum form; collapses to c1(L2/sigma^2) in the appendix-consistent print.
double ergodic_uni_sum_closed(const ChannelProfile& profile, const PowerSplit& split,
                              UniCapacityForm form = UniCapacityForm::AppendixConsistent);

struct RateBounds {
    double lower = 0;
    double upper = 0;
};

/// Bounds on the conventional-NOMA user-1 ergodic rate: upper is the
/// Jensen-style min of the two single-user closed forms, lower is 0.
RateBounds ergodic_noma_r1_bounds(const ChannelProfile& profile, const PowerSplit& split);

/// sum_i alpha_i * c1(gamma_i L_i / (alpha_i sigma^2)).
double ergodic_oma_closed(const ChannelProfile& profile, const OmaSplit& oma);

/// Monte Carlo ergodic-rate estimator over independent fading draws; the
/// universal oracle for the closed forms above. Deterministic for a fixed
/// (seed, stream) and independent of the thread count. uni_near_approx
/// selects v21 combining for UniCoop (the analysis-level form) instead of
/// the full min/max rule.
ErgodicResult monte_carlo_ergodic(const ChannelProfile& profile, const PowerSplit& split,
                                  const OmaSplit& oma, SchemeKind scheme,
                                  std::uint64_t samples, const SeededRng& rng,
                                  int threads = 0, bool uni_near_approx = false);

}  // namespace nomacoop
