#include "nomacoop/ergodic.hpp"

#include <cmath>
#include <stdexcept>

#include "nomacoop/mc.hpp"
#include "nomacoop/numerics.hpp"

namespace nomacoop {

namespace {

struct TwoUserParams {
    double l1, l2, s2, g2;
};

TwoUserParams unpack(const ChannelProfile& profile, const PowerSplit& split) {
    if (profile.user_count() != 2 || split.user_count() != 2) {
        throw std::invalid_argument("closed forms are two-user only");
    }
    return {profile.variance(0), profile.variance(1), profile.noise_variance(),
            split.gamma(1)};
}

}  // namespace

double ergodic_bi_r1_closed(const ChannelProfile& profile, const PowerSplit& split) {
    const auto [l1, l2, s2, g2] = unpack(profile, split);
    const double lh = l1 * l2 / (l1 + l2);  // harmonic combination of the two links
    return c1(l1 / s2) - c1(g2 * l1 / s2) + c1(l2 / s2) - c1(g2 * l2 / s2) -
           c1(lh / s2) + c1(g2 * lh / s2);
}

double ergodic_r2_closed(const ChannelProfile& profile, const PowerSplit& split) {
    const auto [l1, l2, s2, g2] = unpack(profile, split);
    (void)l1;
    return c1(g2 * l2 / s2);
}

double ergodic_bi_sum_closed(const ChannelProfile& profile, const PowerSplit& split) {
    const auto [l1, l2, s2, g2] = unpack(profile, split);
    const double lh = l1 * l2 / (l1 + l2);
    return c1(l1 / s2) - c1(g2 * l1 / s2) + c1(l2 / s2) - c1(lh / s2) +
           c1(g2 * lh / s2);
}

double ergodic_uni_r1_closed(const ChannelProfile& profile, const PowerSplit& split,
                             UniCapacityForm form) {
    const auto [l1, l2, s2, g2] = unpack(profile, split);
    const double l = form == UniCapacityForm::AppendixConsistent ? l2 : l1;
    return c1(l / s2) - c1(g2 * l / s2);
}

double ergodic_uni_sum_closed(const ChannelProfile& profile, const PowerSplit& split,
                              UniCapacityForm form) {
    return ergodic_uni_r1_closed(profile, split, form) +
           ergodic_r2_closed(profile, split);
}

RateBounds ergodic_noma_r1_bounds(const ChannelProfile& profile, const PowerSplit& split) {
    const auto [l1, l2, s2, g2] = unpack(profile, split);
    RateBounds b;
    b.lower = 0.0;
    b.upper = std::min(c1(l1 / s2) - c1(g2 * l1 / s2), c1(l2 / s2) - c1(g2 * l2 / s2));
    return b;
}

double ergodic_oma_closed(const ChannelProfile& profile, const OmaSplit& oma) {
    if (profile.user_count() != oma.user_count()) {
        throw std::invalid_argument("profile/split user counts differ");
    }
    const double s2 = profile.noise_variance();
    double sum = 0.0;
    for (int i = 0; i < oma.user_count(); ++i) {
        sum += oma.alpha(i) * c1(oma.gamma(i) * profile.variance(i) / (oma.alpha(i) * s2));
    }
    return sum;
}

ErgodicResult monte_carlo_ergodic(const ChannelProfile& profile, const PowerSplit& split,
                                  const OmaSplit& oma, SchemeKind scheme,
                                  std::uint64_t samples, const SeededRng& rng,
                                  int threads, bool uni_near_approx) {
    if (samples < 1) throw std::invalid_argument("samples must be >= 1");
    if (profile.user_count() != 2) {
        throw std::invalid_argument("monte_carlo_ergodic is two-user; see multiuser module");
    }

    const double s2 = profile.noise_variance();
    const double l1 = profile.variance(0);
    const double l2 = profile.variance(1);
    const double lc12 = profile.coop_variance(0, 1);
    const double lc21 = profile.coop_variance(1, 0);
    const double g1 = split.gamma(0);
    const double g2 = split.gamma(1);
    const double a1 = oma.alpha(0), a2 = oma.alpha(1);
    const double og1 = oma.gamma(0), og2 = oma.gamma(1);

    // draw order per realization: h1, h2, then w1/w2 only when the
    // combining rule consumes them
    const bool needs_w1 = scheme == SchemeKind::BiCoopSelection ||
                          scheme == SchemeKind::BiCoopMrc ||
                          (scheme == SchemeKind::UniCoop && !uni_near_approx);
    const bool needs_w2 =
        scheme == SchemeKind::BiCoopSelection || scheme == SchemeKind::BiCoopMrc;

    auto draw = [&](SeededRng& r, std::span<double> out) {
        const double h1 = r.exponential(l1);
        const double h2 = r.exponential(l2);
        if (scheme == SchemeKind::Oma) {
            out[0] = oma_rate(a1, og1, h1, s2);
            out[1] = oma_rate(a2, og2, h2, s2);
            out[2] = out[0] + out[1];
            return;
        }
        TwoUserSinrs s;
        s.v11 = sinr_kernel(h1, g1, g2, s2);
        s.v21 = sinr_kernel(h2, g1, g2, s2);
        s.v22 = sinr_kernel(h2, g2, 0.0, s2);
        s.w1 = needs_w1 ? r.exponential(lc21) / s2 : 0.0;
        s.w2 = needs_w2 ? r.exponential(lc12) / s2 : 0.0;
        double z1 = 0.0;
        switch (scheme) {
            case SchemeKind::BiCoopSelection: z1 = z1_bi_selection(s, h1, h2); break;
            case SchemeKind::BiCoopMrc: z1 = z1_bi_mrc(s, h1, h2); break;
            case SchemeKind::BiCoopNearApprox: z1 = z1_bi_near_approx(s); break;
            case SchemeKind::UniCoop: z1 = z1_uni(s, uni_near_approx); break;
            case SchemeKind::ConvNoma: z1 = z1_conv_noma(s); break;
            case SchemeKind::Oma: break;
        }
        out[0] = std::log2(1.0 + z1);
        out[1] = std::log2(1.0 + s.v22);
        out[2] = out[0] + out[1];
    };

    const McStats stats = run_monte_carlo(samples, 3, rng, threads, draw);
    ErgodicResult res;
    res.sample_count = samples;
    res.r1_mean = stats.mean[0];
    res.r2_mean = stats.mean[1];
    res.sum_mean = res.r1_mean + res.r2_mean;
    res.r1_std_error = stats.std_error[0];
    res.r2_std_error = stats.std_error[1];
    res.std_error = stats.std_error[2];
    return res;
}

}  // namespace nomacoop
