#include "nomacoop/outage.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "nomacoop/mc.hpp"

namespace nomacoop {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

struct OutageParams {
    double l1, l2, lc, s2;
    double g1, g2;
    double feasible;  // gamma1 - eps1*gamma2
    double xi;
};

OutageParams unpack(const ChannelProfile& profile, double g1, double g2,
                    const RateTargets& t) {
    if (profile.user_count() != 2) throw std::invalid_argument("two-user closed forms");
    OutageParams p;
    p.l1 = profile.variance(0);
    p.l2 = profile.variance(1);
    p.lc = profile.coop_variance(0, 1);
    p.s2 = profile.noise_variance();
    p.g1 = g1;
    p.g2 = g2;
    p.feasible = g1 - t.eps1 * g2;
    p.xi = p.feasible > 0.0 ? p.s2 * t.eps1 / p.feasible : kInf;
    return p;
}

OutageReport certain_outage(double xi) { return {1.0, OutageRegime::InfeasiblePower, xi, 1.0}; }

}  // namespace

RateTargets RateTargets::from_rates(double rt1, double rt2, const OmaSplit& oma) {
    if (rt1 < 0.0 || rt2 < 0.0) throw std::invalid_argument("targeted rates must be >= 0");
    RateTargets t;
    t.rt1 = rt1;
    t.rt2 = rt2;
    t.eps1 = std::exp2(rt1) - 1.0;
    t.eps2 = std::exp2(rt2) - 1.0;
    t.eps_o1 = std::exp2(rt1 / oma.alpha(0)) - 1.0;
    t.eps_o2 = std::exp2(rt2 / oma.alpha(1)) - 1.0;
    return t;
}

OutageReport outage_bi_user1(const ChannelProfile& profile, const PowerSplit& split,
                             const RateTargets& t) {
    const OutageParams p = unpack(profile, split.gamma(0), split.gamma(1), t);
    if (!(p.feasible > 0.0)) return certain_outage(p.xi);
    OutageReport r;
    r.regime = OutageRegime::FeasiblePower;
    r.xi = p.xi;
    r.probability = (1.0 - std::exp(-p.xi / p.l1)) *
                    (1.0 - std::exp(-p.s2 * t.eps1 / p.lc - p.xi / p.l2));
    const double direct = p.s2 * t.eps1 / (p.l1 * p.feasible);
    r.high_snr_approx =
        clamp01(direct * (p.s2 * t.eps1 / p.lc + p.s2 * t.eps1 / (p.l2 * p.feasible)));
    return r;
}

OutageReport outage_uni_user1(const ChannelProfile& profile, const PowerSplit& split,
                              const RateTargets& t) {
    return outage_bi_user1(profile, split, t);
}

OutageReport outage_noma_user1(const ChannelProfile& profile, const PowerSplit& split,
                               const RateTargets& t) {
    const OutageParams p = unpack(profile, split.gamma(0), split.gamma(1), t);
    if (!(p.feasible > 0.0)) return certain_outage(p.xi);
    OutageReport r;
    r.regime = OutageRegime::FeasiblePower;
    r.xi = p.xi;
    r.probability = 1.0 - std::exp(-p.xi / p.l1);
    r.high_snr_approx = clamp01(p.s2 * t.eps1 / (p.l1 * p.feasible));
    return r;
}

OutageReport outage_oma_user1(const ChannelProfile& profile, const OmaSplit& oma,
                              const RateTargets& t) {
    const OutageParams p = unpack(profile, oma.gamma(0), oma.gamma(1), t);
    OutageReport r;
    r.regime = OutageRegime::FeasiblePower;
    r.xi = p.xi;
    const double exponent = oma.alpha(0) * p.s2 * t.eps_o1 / (oma.gamma(0) * p.l1);
    r.probability = 1.0 - std::exp(-exponent);
    r.high_snr_approx = clamp01(exponent);
    return r;
}

OutageReport outage_bi_user2(const ChannelProfile& profile, const PowerSplit& split,
                             const RateTargets& t) {
    const OutageParams p = unpack(profile, split.gamma(0), split.gamma(1), t);
    if (!(p.feasible > 0.0)) return certain_outage(p.xi);
    OutageReport r;
    r.xi = p.xi;
    const double own = p.s2 * t.eps2 / (p.g2 * p.l2);  // exponent of the V22 event
    if (t.eps2 / p.g2 > t.eps1 / p.feasible) {
        r.regime = OutageRegime::ThresholdCaseA;
        r.probability = 1.0 - std::exp(-own);
        r.high_snr_approx = clamp01(own);
        return r;
    }
    r.regime = OutageRegime::ThresholdCaseB;
    const double b = std::exp(-p.xi / p.l2);
    r.probability = (1.0 - b) - std::exp(-p.s2 * t.eps1 / p.lc - p.xi / p.l1) *
                                    (std::exp(-own) - b);
    const double sic = p.s2 * t.eps1 / (p.l2 * p.feasible);
    r.high_snr_approx = clamp01(sic - (sic - own) * (1.0 - p.s2 * t.eps1 / p.lc -
                                                     p.s2 * t.eps1 / (p.l1 * p.feasible)));
    return r;
}

OutageReport outage_uni_user2(const ChannelProfile& profile, const PowerSplit& split,
                              const RateTargets& t) {
    const OutageParams p = unpack(profile, split.gamma(0), split.gamma(1), t);
    if (!(p.feasible > 0.0)) return certain_outage(p.xi);
    OutageReport r;
    r.xi = p.xi;
    const double own = p.s2 * t.eps2 / (p.g2 * p.l2);
    if (t.eps2 / p.g2 > t.eps1 / p.feasible) {
        r.regime = OutageRegime::ThresholdCaseA;
        r.probability = 1.0 - std::exp(-own);
        r.high_snr_approx = clamp01(own);
    } else {
        r.regime = OutageRegime::ThresholdCaseB;
        r.probability = 1.0 - std::exp(-p.xi / p.l2);
        r.high_snr_approx = clamp01(p.s2 * t.eps1 / (p.l2 * p.feasible));
    }
    return r;
}

OutageReport outage_oma_user2(const ChannelProfile& profile, const OmaSplit& oma,
                              const RateTargets& t) {
    const OutageParams p = unpack(profile, oma.gamma(0), oma.gamma(1), t);
    OutageReport r;
    r.regime = OutageRegime::FeasiblePower;
    r.xi = p.xi;
    const double exponent = oma.alpha(1) * p.s2 * t.eps_o2 / (oma.gamma(1) * p.l2);
    r.probability = 1.0 - std::exp(-exponent);
    r.high_snr_approx = clamp01(exponent);
    return r;
}

OutageReport outage_closed_form(const ChannelProfile& profile, const PowerSplit& split,
                                const OmaSplit& oma, const RateTargets& targets,
                                SchemeKind scheme, int user_index) {
    if (user_index != 1 && user_index != 2) {
        throw std::invalid_argument("user_index must be 1 or 2");
    }
    switch (scheme) {
        case SchemeKind::BiCoopSelection:
            return user_index == 1 ? outage_bi_user1(profile, split, targets)
                                   : outage_bi_user2(profile, split, targets);
        case SchemeKind::UniCoop:
            return user_index == 1 ? outage_uni_user1(profile, split, targets)
                                   : outage_uni_user2(profile, split, targets);
        case SchemeKind::ConvNoma:
            return user_index == 1 ? outage_noma_user1(profile, split, targets)
                                   : outage_uni_user2(profile, split, targets);
        case SchemeKind::Oma:
            return user_index == 1 ? outage_oma_user1(profile, oma, targets)
                                   : outage_oma_user2(profile, oma, targets);
        default:
            throw std::invalid_argument("no outage closed form for this scheme");
    }
}

namespace {

struct EventInputs {
    double v11, v21, v22, w1, w2;
    double oma_snr1, oma_snr2;
};

bool outage_event(const EventInputs& e, const RateTargets& t, SchemeKind scheme,
                  int user_index) {
    switch (scheme) {
        case SchemeKind::BiCoopSelection:
            if (user_index == 1) {
                return (e.v11 < t.eps1 && e.v21 < t.eps1) ||
                       (std::max(e.v11, e.w1) < t.eps1 && e.v21 > t.eps1);
            }
            // help toward user 2 requires user 1 to decode s1 directly
            if (e.v11 < t.eps1) return e.v22 < t.eps2 || e.v21 < t.eps1;
            return e.v22 < t.eps2 || std::max(e.v21, e.w2) < t.eps1;
        case SchemeKind::UniCoop:
            if (user_index == 1) {
                return (e.v11 < t.eps1 && e.v21 < t.eps1) ||
                       (std::max(e.v11, e.w1) < t.eps1 && e.v21 > t.eps1);
            }
            return e.v22 < t.eps2 || e.v21 < t.eps1;
        case SchemeKind::ConvNoma:
            if (user_index == 1) return e.v11 < t.eps1;
            return e.v22 < t.eps2 || e.v21 < t.eps1;
        case SchemeKind::Oma:
            return user_index == 1 ? e.oma_snr1 < t.eps_o1 : e.oma_snr2 < t.eps_o2;
        default:
            throw std::invalid_argument("no outage event algebra for this scheme");
    }
}

}  // namespace

EmpiricalOutage empirical_outage(const ChannelProfile& profile, const PowerSplit& split,
                                 const OmaSplit& oma, const RateTargets& targets,
                                 SchemeKind scheme, int user_index, std::uint64_t samples,
                                 const SeededRng& rng, int threads) {
    if (samples < 1) throw std::invalid_argument("samples must be >= 1");
    if (user_index != 1 && user_index != 2) {
        throw std::invalid_argument("user_index must be 1 or 2");
    }
    if (scheme == SchemeKind::BiCoopMrc || scheme == SchemeKind::BiCoopNearApprox) {
        throw std::invalid_argument("no outage event algebra for this scheme");
    }
    const double s2 = profile.noise_variance();
    const double l1 = profile.variance(0), l2 = profile.variance(1);
    const double lc21 = profile.coop_variance(1, 0), lc12 = profile.coop_variance(0, 1);
    const double g1 = split.gamma(0), g2 = split.gamma(1);

    const bool needs_w1 = user_index == 1 &&
                          (scheme == SchemeKind::BiCoopSelection || scheme == SchemeKind::UniCoop);
    const bool needs_w2 = user_index == 2 && scheme == SchemeKind::BiCoopSelection;

    auto draw = [&](SeededRng& r, std::span<double> out) {
        const double h1 = r.exponential(l1);
        const double h2 = r.exponential(l2);
        EventInputs e{};
        e.v11 = sinr_kernel(h1, g1, g2, s2);
        e.v21 = sinr_kernel(h2, g1, g2, s2);
        e.v22 = sinr_kernel(h2, g2, 0.0, s2);
        e.w1 = needs_w1 ? r.exponential(lc21) / s2 : 0.0;
        e.w2 = needs_w2 ? r.exponential(lc12) / s2 : 0.0;
        e.oma_snr1 = oma.gamma(0) * h1 / (oma.alpha(0) * s2);
        e.oma_snr2 = oma.gamma(1) * h2 / (oma.alpha(1) * s2);
        out[0] = outage_event(e, targets, scheme, user_index) ? 1.0 : 0.0;
    };
    const McStats stats = run_monte_carlo(samples, 1, rng, threads, draw);
    const double p = stats.mean[0];
    return {p, std::sqrt(p * (1.0 - p) / static_cast<double>(samples))};
}

std::vector<EmpiricalOutage> empirical_outage_all(const ChannelProfile& profile,
                                                  const PowerSplit& split,
                                                  const OmaSplit& oma,
                                                  const RateTargets& targets,
                                                  std::uint64_t samples,
                                                  const SeededRng& rng, int threads) {
    if (samples < 1) throw std::invalid_argument("samples must be >= 1");
    const double s2 = profile.noise_variance();
    const double l1 = profile.variance(0), l2 = profile.variance(1);
    const double lc21 = profile.coop_variance(1, 0), lc12 = profile.coop_variance(0, 1);
    const double g1 = split.gamma(0), g2 = split.gamma(1);

    static constexpr SchemeKind kSchemes[] = {SchemeKind::BiCoopSelection,
                                              SchemeKind::UniCoop, SchemeKind::ConvNoma,
                                              SchemeKind::Oma};
    auto draw = [&](SeededRng& r, std::span<double> out) {
        EventInputs e{};
        const double h1 = r.exponential(l1);
        const double h2 = r.exponential(l2);
        e.v11 = sinr_kernel(h1, g1, g2, s2);
        e.v21 = sinr_kernel(h2, g1, g2, s2);
        e.v22 = sinr_kernel(h2, g2, 0.0, s2);
        e.w1 = r.exponential(lc21) / s2;
        e.w2 = r.exponential(lc12) / s2;
        e.oma_snr1 = oma.gamma(0) * h1 / (oma.alpha(0) * s2);
        e.oma_snr2 = oma.gamma(1) * h2 / (oma.alpha(1) * s2);
        int k = 0;
        for (SchemeKind scheme : kSchemes) {
            for (int user = 1; user <= 2; ++user) {
                out[k++] = outage_event(e, targets, scheme, user) ? 1.0 : 0.0;
            }
        }
    };
    const McStats stats = run_monte_carlo(samples, 8, rng, threads, draw);
    std::vector<EmpiricalOutage> res(8);
    for (int k = 0; k < 8; ++k) {
        const double p = stats.mean[k];
        res[k] = {p, std::sqrt(p * (1.0 - p) / static_cast<double>(samples))};
    }
    return res;
}

double diversity_order_fit(SchemeKind scheme, int user_index,
                           const ChannelProfile& profile, const PowerSplit& split,
                           const OmaSplit& oma, const RateTargets& targets,
                           const std::vector<double>& snr_grid_db) {
    if (snr_grid_db.size() < 10) {
        throw std::domain_error("diversity fit needs at least 10 SNR points");
    }
    const auto [lo, hi] = std::minmax_element(snr_grid_db.begin(), snr_grid_db.end());
    if (*hi - *lo < 20.0 - 1e-9) {
        throw std::domain_error("diversity fit needs a >= 2 decade SNR span");
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(snr_grid_db.size());
    for (double snr : snr_grid_db) {
        const ChannelProfile at_snr =
            profile.with_noise_variance(snr_db_to_noise_variance(snr));
        const OutageReport rep =
            outage_closed_form(at_snr, split, oma, targets, scheme, user_index);
        if (!(rep.probability < 0.1)) {
            throw std::domain_error("grid point outside the high-SNR regime (p >= 0.1)");
        }
        const double x = snr / 10.0;
        const double y = std::log10(rep.probability);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return -slope;
}

}  // namespace nomacoop
