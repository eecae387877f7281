#pragma once

#include <cstdint>
#include <vector>

#include "nomacoop/channel.hpp"
#include "nomacoop/rates.hpp"

namespace nomacoop {

/// Targeted rates and the SINR thresholds they imply. eps_i = 2^rt_i - 1
/// for the NOMA decoders; eps_o_i = 2^{rt_i/alpha_i} - 1 for OMA, whose
/// user i only holds an alpha_i slice of the resource.
struct RateTargets {
    double rt1 = 0, rt2 = 0;
    double eps1 = 0, eps2 = 0;
    double eps_o1 = 0, eps_o2 = 0;

    static RateTargets from_rates(double rt1, double rt2, const OmaSplit& oma);
};

enum class OutageRegime {
    FeasiblePower,    // gamma1/gamma2 > eps1, single-case expressions
    InfeasiblePower,  // gamma1/gamma2 <= eps1: outage is certain
    ThresholdCaseA,   // user-2 middle case: eps2/gamma2 > eps1/(gamma1-eps1*gamma2)
    ThresholdCaseB,   // user-2 final case
};

struct OutageReport {
    double probability = 1.0;
    OutageRegime regime = OutageRegime::InfeasiblePower;
    double xi = 0.0;  // sigma^2 eps1/(gamma1 - eps1 gamma2); +inf when infeasible
    double high_snr_approx = 1.0;  // clamped to [0,1]; meaningful at high SNR only
};

/// Non-SIC user, bi-directional cooperation: diversity order 2.
OutageReport outage_bi_user1(const ChannelProfile& profile, const PowerSplit& split,
                             const RateTargets& targets);
/// Identical to the bi-directional form (user 1 is helped either way).
OutageReport outage_uni_user1(const ChannelProfile& profile, const PowerSplit& split,
                              const RateTargets& targets);
OutageReport outage_noma_user1(const ChannelProfile& profile, const PowerSplit& split,
                               const RateTargets& targets);
OutageReport outage_oma_user1(const ChannelProfile& profile, const OmaSplit& oma,
                              const RateTargets& targets);
/// SIC user, three-case closed form; case B carries the cooperation power
/// gain over the uni-directional scheme.
OutageReport outage_bi_user2(const ChannelProfile& profile, const PowerSplit& split,
                             const RateTargets& targets);
/// Also the conventional-NOMA user-2 outage.
OutageReport outage_uni_user2(const ChannelProfile& profile, const PowerSplit& split,
                              const RateTargets& targets);
OutageReport outage_oma_user2(const ChannelProfile& profile, const OmaSplit& oma,
                              const RateTargets& targets);

struct EmpiricalOutage {
    double probability = 0;
    double std_error = 0;  // binomial
};

/// Event-counting oracle. Events follow the decode-failure algebra of each
/// scheme, including conditional cooperation: help toward user 1 exists
/// only when user 2 decodes s1, and help toward user 2 only when user 1
/// decodes s1 directly. Accepted schemes: BiCoopSelection, UniCoop,
/// ConvNoma, Oma (no event algebra is defined for MRC or the near
/// approximation). user_index is 1 or 2.
EmpiricalOutage empirical_outage(const ChannelProfile& profile, const PowerSplit& split,
                                 const OmaSplit& oma, const RateTargets& targets,
                                 SchemeKind scheme, int user_index, std::uint64_t samples,
                                 const SeededRng& rng, int threads = 0);

/// Shared-draw variant used by the outage sweep recipe: one fading draw
/// feeds all eight (scheme, user) indicators. Order: bi u1, bi u2, uni u1,
/// uni u2, noma u1, noma u2, oma u1, oma u2.
std::vector<EmpiricalOutage> empirical_outage_all(const ChannelProfile& profile,
                                                  const PowerSplit& split,
                                                  const OmaSplit& oma,
                                                  const RateTargets& targets,
                                                  std::uint64_t samples,
                                                  const SeededRng& rng, int threads = 0);

/// Closed-form outage of one (scheme, user) pair; dispatch helper.
OutageReport outage_closed_form(const ChannelProfile& profile, const PowerSplit& split,
                                const OmaSplit& oma, const RateTargets& targets,
                                SchemeKind scheme, int user_index);

/// Least-squares diversity-order estimate: negated slope of log10(outage)
/// against snr_db/10 over the given grid. The profile's own noise variance
/// is ignored; each grid point substitutes 10^{-snr/10}. Requires >= 10
/// grid points spanning >= 2 decades with every probability < 0.1.
double diversity_order_fit(SchemeKind scheme, int user_index,
                           const ChannelProfile& profile, const PowerSplit& split,
                           const OmaSplit& oma, const RateTargets& targets,
                           const std::vector<double>& snr_grid_db);

}  // namespace nomacoop
