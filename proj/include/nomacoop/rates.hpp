#pragma once

#include <string>
#include <vector>

#include "nomacoop/channel.hpp"

namespace nomacoop {

/// NOMA power ratios: each gamma_i in (0,1), summing to 1 within 1e-12.
class PowerSplit {
  public:
    explicit PowerSplit(std::vector<double> gamma);
    static PowerSplit two_user(double gamma1, double gamma2);

    int user_count() const { return static_cast<int>(gamma_.size()); }
    double gamma(int user) const { return gamma_.at(user); }
    const std::vector<double>& gammas() const { return gamma_; }

  private:
    std::vector<double> gamma_;
};

/// OMA resource fractions alpha_i (summing to 1) plus per-user power
/// fractions gamma_i; user i sends over its alpha_i slice with power
/// density gamma_i / alpha_i.
class OmaSplit {
  public:
    OmaSplit(std::vector<double> alpha, std::vector<double> gamma);
    static OmaSplit two_user(double alpha1, double gamma1);
    static OmaSplit equal(int users);

    int user_count() const { return static_cast<int>(alpha_.size()); }
    double alpha(int user) const { return alpha_.at(user); }
    double gamma(int user) const { return gamma_.at(user); }

  private:
    std::vector<double> alpha_;
    std::vector<double> gamma_;
};

enum class SchemeKind {
    BiCoopSelection,
    BiCoopMrc,
    BiCoopNearApprox,
    UniCoop,
    ConvNoma,
    Oma,
};

const char* scheme_name(SchemeKind scheme);

/// Two-user SINRs: v11/v22/v21 from the direct phase, w1/w2 from the
/// cooperative phase.
struct TwoUserSinrs {
    double v11 = 0, v22 = 0, v21 = 0, w1 = 0, w2 = 0;
};

/// Shared SINR kernel h^2*g_sig / (h^2*g_int + sigma^2); every module
/// computes SINRs through this one expression so reductions bit-match.
inline double sinr_kernel(double h_sq, double gamma_signal, double gamma_interference,
                          double noise_variance) {
    return h_sq * gamma_signal / (h_sq * gamma_interference + noise_variance);
}

/// OMA per-user rate alpha*log2(1 + gamma*h^2/(alpha*sigma^2)).
inline double oma_rate(double alpha, double gamma, double h_sq, double noise_variance) {
    return alpha * std::log2(1.0 + gamma * h_sq / (alpha * noise_variance));
}

TwoUserSinrs direct_sinrs(const FadingRealization& realization,
                          const ChannelProfile& profile, const PowerSplit& split);

/// Selection combining: the helped user takes the better of direct and
/// cooperative receptions; ties in channel order treat user 1 as stronger.
double z1_bi_selection(const TwoUserSinrs& s, double h1_sq, double h2_sq);

/// Maximal-ratio combining variant (max replaced by sum).
double z1_bi_mrc(const TwoUserSinrs& s, double h1_sq, double h2_sq);

/// Near-user approximation max{v11, v21}.
double z1_bi_near_approx(const TwoUserSinrs& s);

/// Uni-directional cooperation (helper fixed to user 2); near_approx
/// collapses to v21.
double z1_uni(const TwoUserSinrs& s, bool near_approx = false);

/// Conventional NOMA min{v11, v21}.
double z1_conv_noma(const TwoUserSinrs& s);

struct RatePair {
    double r1 = 0, r2 = 0;
};

/// Achievable rates of one realization under the given scheme. r2 is
/// log2(1+v22) for every NOMA scheme; OMA uses the alpha/gamma split.
RatePair scheme_rates(const FadingRealization& realization, const ChannelProfile& profile,
                      const PowerSplit& split, const OmaSplit& oma, SchemeKind scheme);

}  // namespace nomacoop
