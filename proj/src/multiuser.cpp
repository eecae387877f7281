#include "nomacoop/multiuser.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "nomacoop/mc.hpp"

namespace nomacoop {

MultiUserScenario::MultiUserScenario(ChannelProfile profile_, PowerSplit split_,
                                     CsitMode mode_)
    : profile(std::move(profile_)), split(std::move(split_)), mode(mode_) {
    const int k = profile.user_count();
    if (k < 2) throw std::invalid_argument("need at least two users");
    if (split.user_count() != k) {
        throw std::invalid_argument("profile/split user counts differ");
    }
    if (mode == CsitMode::Statistical) {
        for (int i = 0; i + 1 < k; ++i) {
            if (!(profile.variance(i) < profile.variance(i + 1))) {
                throw std::invalid_argument(
                    "statistical CSIT requires strictly ascending variances");
            }
            if (!(split.gamma(i) > split.gamma(i + 1))) {
                throw std::invalid_argument(
                    "statistical CSIT requires strictly descending power ratios");
            }
        }
    }
}

SinrMatrix::SinrMatrix(int users)
    : users_(users),
      values_(static_cast<std::size_t>(users) * (users + 1) / 2,
              std::numeric_limits<double>::quiet_NaN()) {}

namespace {

std::size_t tri_index(int user, int signal, int users) {
    if (signal < 0 || user < signal || user >= users) {
        throw std::out_of_range("SinrMatrix is defined for 0 <= signal <= user < K");
    }
    return static_cast<std::size_t>(user) * (user + 1) / 2 + signal;
}

}  // namespace

double SinrMatrix::at(int user, int signal) const {
    return values_[tri_index(user, signal, users_)];
}

void SinrMatrix::set(int user, int signal, double value) {
    values_[tri_index(user, signal, users_)] = value;
}

SinrMatrix sinr_matrix(const FadingRealization& realization,
                       const MultiUserScenario& scenario) {
    const int k = scenario.user_count();
    if (realization.user_count() != k) {
        throw std::invalid_argument("realization/scenario user counts differ");
    }
    // suffix[j] = sum of gamma_{j}..gamma_{K-1}; interference for signal j
    // is suffix[j+1], empty (0) for the last signal
    std::vector<double> suffix(k + 1, 0.0);
    for (int j = k - 1; j >= 0; --j) suffix[j] = suffix[j + 1] + scenario.split.gamma(j);

    SinrMatrix m(k);
    const double s2 = scenario.profile.noise_variance();
    for (int i = 0; i < k; ++i) {
        const double h = realization.direct(i);
        for (int j = 0; j <= i; ++j) {
            m.set(i, j, sinr_kernel(h, scenario.split.gamma(j), suffix[j + 1], s2));
        }
    }
    return m;
}

namespace {

void check_signal(int signal, int k) {
    if (signal < 0 || signal >= k) throw std::out_of_range("signal index out of range");
}

int strongest_user(const FadingRealization& realization, int from, int k) {
    int i0 = from;
    for (int i = from + 1; i < k; ++i) {
        if (realization.direct(i) > realization.direct(i0)) i0 = i;
    }
    return i0;
}

}  // namespace

namespace {

double z_bi_from(const SinrMatrix& m, const FadingRealization& realization, double s2,
                 int k, int signal, bool near_approx) {
    if (near_approx) {
        double z = m.at(signal, signal);
        for (int i = signal + 1; i < k; ++i) z = std::max(z, m.at(i, signal));
        return z;
    }
    const int i0 = strongest_user(realization, signal, k);
    double z = std::numeric_limits<double>::infinity();
    for (int i = signal; i < k; ++i) {
        const double zi = (i == i0)
                              ? m.at(i, signal)
                              : std::max(m.at(i, signal), realization.coop(i0, i) / s2);
        z = std::min(z, zi);
    }
    return z;
}

double z_uni_from(const SinrMatrix& m, const FadingRealization& realization, double s2,
                  int k, int signal, bool near_approx, UniHelperGain gain) {
    const int helper = k - 1;
    if (near_approx) return m.at(helper, signal);
    double z = std::numeric_limits<double>::infinity();
    for (int i = signal; i < k; ++i) {
        double zi;
        if (i == helper) {
            zi = m.at(i, signal);
        } else {
            const int receiver = gain == UniHelperGain::PerReceiver ? i : signal;
            zi = std::max(m.at(i, signal), realization.coop(helper, receiver) / s2);
        }
        z = std::min(z, zi);
    }
    return z;
}

double z_noma_from(const SinrMatrix& m, int k, int signal) {
    double z = m.at(signal, signal);
    for (int i = signal + 1; i < k; ++i) z = std::min(z, m.at(i, signal));
    return z;
}

}  // namespace

double z_bi_multi(const FadingRealization& realization, const MultiUserScenario& scenario,
                  int signal, bool near_approx) {
    const int k = scenario.user_count();
    check_signal(signal, k);
    const SinrMatrix m = sinr_matrix(realization, scenario);
    return z_bi_from(m, realization, scenario.profile.noise_variance(), k, signal,
                     near_approx);
}

double z_uni_multi(const FadingRealization& realization, const MultiUserScenario& scenario,
                   int signal, bool near_approx, UniHelperGain gain) {
    const int k = scenario.user_count();
    check_signal(signal, k);
    const SinrMatrix m = sinr_matrix(realization, scenario);
    return z_uni_from(m, realization, scenario.profile.noise_variance(), k, signal,
                      near_approx, gain);
}

double z_noma_multi(const FadingRealization& realization,
                    const MultiUserScenario& scenario, int signal) {
    const int k = scenario.user_count();
    check_signal(signal, k);
    const SinrMatrix m = sinr_matrix(realization, scenario);
    return z_noma_from(m, k, signal);
}

std::vector<double> multiuser_rates(const FadingRealization& realization,
                                    const MultiUserScenario& scenario, SchemeKind scheme,
                                    const OmaSplit& oma) {
    const int k = scenario.user_count();
    std::vector<double> rates(k);
    if (scheme == SchemeKind::Oma) {
        if (oma.user_count() != k) {
            throw std::invalid_argument("OMA split user count mismatch");
        }
        for (int j = 0; j < k; ++j) {
            rates[j] = oma_rate(oma.alpha(j), oma.gamma(j), realization.direct(j),
                                scenario.profile.noise_variance());
        }
        return rates;
    }
    const SinrMatrix m = sinr_matrix(realization, scenario);
    const double s2 = scenario.profile.noise_variance();
    for (int j = 0; j < k; ++j) {
        double z;
        switch (scheme) {
            case SchemeKind::BiCoopSelection:
                z = z_bi_from(m, realization, s2, k, j, false);
                break;
            case SchemeKind::BiCoopNearApprox:
                z = z_bi_from(m, realization, s2, k, j, true);
                break;
            case SchemeKind::UniCoop:
                z = z_uni_from(m, realization, s2, k, j, false, UniHelperGain::PerReceiver);
                break;
            case SchemeKind::ConvNoma:
                z = z_noma_from(m, k, j);
                break;
            default:
                throw std::invalid_argument("no K-user chain for this scheme");
        }
        rates[j] = std::log2(1.0 + z);
    }
    return rates;
}

namespace {

constexpr std::uint64_t kSearchStream = 0x5ea5;

double search_objective(const ChannelProfile& profile, SchemeKind scheme,
                        const std::vector<double>& gamma,
                        const MultiUserSearchSpec& spec) {
    const MultiUserScenario scenario(profile, PowerSplit(gamma), CsitMode::Statistical);
    const int k = profile.user_count();
    const OmaSplit oma = OmaSplit::equal(k);
    auto draw = [&](SeededRng& r, std::span<double> out) {
        FadingRealization real;
        sample_fading_into(profile, r, real);
        const std::vector<double> rates = multiuser_rates(real, scenario, scheme, oma);
        for (int j = 0; j < k; ++j) out[j] = rates[j];
    };
    const McStats stats = run_monte_carlo(spec.samples, k, SeededRng(spec.seed, kSearchStream),
                                          spec.threads, draw);
    const double min_rate = *std::min_element(stats.mean.begin(), stats.mean.end());
    if (spec.objective == AllocationObjective::Fairness) return min_rate;
    if (min_rate < spec.rate_floor) return -std::numeric_limits<double>::infinity();
    double sum = 0.0;
    for (double m : stats.mean) sum += m;
    return sum;
}

}  // namespace

std::vector<double> optimize_power_multiuser(const ChannelProfile& profile,
                                             SchemeKind scheme,
                                             const MultiUserSearchSpec& spec) {
    const int k = profile.user_count();
    if (k < 2) throw std::invalid_argument("need at least two users");

    // start from the ratio-2 profile gamma_k = 2 gamma_{k+1}
    std::vector<double> gamma(k);
    double norm = 0.0;
    for (int i = 0; i < k; ++i) norm += std::exp2(k - 1 - i);
    for (int i = 0; i < k; ++i) gamma[i] = std::exp2(k - 1 - i) / norm;

    const double margin = 1e-3 / k;  // keeps the descending order strict
    double best = search_objective(profile, scheme, gamma, spec);
    for (int sweep = 0; sweep < spec.sweeps; ++sweep) {
        bool improved = false;
        for (int t = 0; t + 1 < k; ++t) {
            // transfer x from gamma[t] to gamma[t+1], all others fixed
            const double delta = gamma[t] - gamma[t + 1];
            double x_hi = (delta - margin) / 2.0;
            double x_lo = margin - gamma[t + 1];
            if (t > 0) x_lo = std::max(x_lo, gamma[t] - gamma[t - 1] + margin);
            if (t + 2 < k) x_lo = std::max(x_lo, gamma[t + 2] - gamma[t + 1] + margin);
            if (!(x_lo < x_hi)) continue;
            for (int s = 0; s < spec.steps_per_pair; ++s) {
                const double x =
                    x_lo + (x_hi - x_lo) * (s + 1) / (spec.steps_per_pair + 1);
                if (std::fabs(x) < 1e-15) continue;
                std::vector<double> cand = gamma;
                cand[t] -= x;
                cand[t + 1] += x;
                const double value = search_objective(profile, scheme, cand, spec);
                if (value > best) {
                    best = value;
                    gamma = cand;
                    improved = true;
                }
            }
        }
        if (!improved) break;
    }
    return gamma;
}

}  // namespace nomacoop
