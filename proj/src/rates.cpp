#include "nomacoop/rates.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nomacoop {

namespace {

void check_fractions(const std::vector<double>& f, const char* what) {
    if (f.empty()) throw std::invalid_argument(std::string(what) + " must be non-empty");
    double sum = 0.0;
    for (double v : f) {
        if (!(v > 0.0) || !(v < 1.0)) {
            throw std::invalid_argument(std::string(what) + " entries must lie in (0,1)");
        }
        sum += v;
    }
    if (std::fabs(sum - 1.0) > 1e-12) {
        throw std::invalid_argument(std::string(what) + " must sum to 1");
    }
}

}  // namespace

PowerSplit::PowerSplit(std::vector<double> gamma) : gamma_(std::move(gamma)) {
    check_fractions(gamma_, "power split");
}

PowerSplit PowerSplit::two_user(double gamma1, double gamma2) {
    return PowerSplit({gamma1, gamma2});
}

OmaSplit::OmaSplit(std::vector<double> alpha, std::vector<double> gamma)
    : alpha_(std::move(alpha)), gamma_(std::move(gamma)) {
    check_fractions(alpha_, "resource split");
    check_fractions(gamma_, "power split");
    if (alpha_.size() != gamma_.size()) {
        throw std::invalid_argument("alpha and gamma must have the same user count");
    }
}

OmaSplit OmaSplit::two_user(double alpha1, double gamma1) {
    return OmaSplit({alpha1, 1.0 - alpha1}, {gamma1, 1.0 - gamma1});
}

OmaSplit OmaSplit::equal(int users) {
    std::vector<double> f(users, 1.0 / users);
    return OmaSplit(f, f);
}

const char* scheme_name(SchemeKind scheme) {
    switch (scheme) {
        case SchemeKind::BiCoopSelection: return "bi_sel";
        case SchemeKind::BiCoopMrc: return "bi_mrc";
        case SchemeKind::BiCoopNearApprox: return "bi";
        case SchemeKind::UniCoop: return "uni";
        case SchemeKind::ConvNoma: return "noma";
        case SchemeKind::Oma: return "oma";
    }
    return "unknown";
}

TwoUserSinrs direct_sinrs(const FadingRealization& realization,
                          const ChannelProfile& profile, const PowerSplit& split) {
    if (realization.user_count() != 2 || profile.user_count() != 2 ||
        split.user_count() != 2) {
        throw std::invalid_argument("direct_sinrs expects two-user inputs");
    }
    const double s2 = profile.noise_variance();
    const double g1 = split.gamma(0);
    const double g2 = split.gamma(1);
    const double h1 = realization.direct(0);
    const double h2 = realization.direct(1);
    TwoUserSinrs s;
    s.v11 = sinr_kernel(h1, g1, g2, s2);
    s.v21 = sinr_kernel(h2, g1, g2, s2);
    s.v22 = sinr_kernel(h2, g2, 0.0, s2);
    s.w1 = realization.coop(1, 0) / s2;
    s.w2 = realization.coop(0, 1) / s2;
    return s;
}

double z1_bi_selection(const TwoUserSinrs& s, double h1_sq, double h2_sq) {
    if (h1_sq < h2_sq) {
        return std::min(std::max(s.v11, s.w1), s.v21);
    }
    return std::min(s.v11, std::max(s.v21, s.w2));
}

double z1_bi_mrc(const TwoUserSinrs& s, double h1_sq, double h2_sq) {
    if (h1_sq < h2_sq) {
        return std::min(s.v11 + s.w1, s.v21);
    }
    return std::min(s.v11, s.v21 + s.w2);
}

double z1_bi_near_approx(const TwoUserSinrs& s) { return std::max(s.v11, s.v21); }

double z1_uni(const TwoUserSinrs& s, bool near_approx) {
    if (near_approx) return s.v21;
    return std::min(std::max(s.v11, s.w1), s.v21);
}

double z1_conv_noma(const TwoUserSinrs& s) { return std::min(s.v11, s.v21); }

RatePair scheme_rates(const FadingRealization& realization, const ChannelProfile& profile,
                      const PowerSplit& split, const OmaSplit& oma, SchemeKind scheme) {
    if (scheme == SchemeKind::Oma) {
        if (realization.user_count() != 2 || oma.user_count() != 2) {
            throw std::invalid_argument("scheme_rates expects two-user inputs");
        }
        RatePair r;
        r.r1 = oma_rate(oma.alpha(0), oma.gamma(0), realization.direct(0),
                        profile.noise_variance());
        r.r2 = oma_rate(oma.alpha(1), oma.gamma(1), realization.direct(1),
                        profile.noise_variance());
        return r;
    }

    const TwoUserSinrs s = direct_sinrs(realization, profile, split);
    double z1 = 0.0;
    switch (scheme) {
        case SchemeKind::BiCoopSelection:
            z1 = z1_bi_selection(s, realization.direct(0), realization.direct(1));
            break;
        case SchemeKind::BiCoopMrc:
            z1 = z1_bi_mrc(s, realization.direct(0), realization.direct(1));
            break;
        case SchemeKind::BiCoopNearApprox:
            z1 = z1_bi_near_approx(s);
            break;
        case SchemeKind::UniCoop:
            z1 = z1_uni(s);
            break;
        case SchemeKind::ConvNoma:
            z1 = z1_conv_noma(s);
            break;
        case SchemeKind::Oma:
            break;  // handled above
    }
    RatePair r;
    r.r1 = std::log2(1.0 + z1);
    r.r2 = std::log2(1.0 + s.v22);
    return r;
}

}  // namespace nomacoop
