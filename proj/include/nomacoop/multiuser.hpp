#pragma once

#include <cstdint>
#include <vector>

#include "nomacoop/channel.hpp"
#include "nomacoop/power_alloc.hpp"
#include "nomacoop/rates.hpp"

namespace nomacoop {

enum class CsitMode { Statistical, None };

/// K-user scenario. Statistical-CSIT mode enforces the analysis ordering:
/// variances strictly ascending, power ratios strictly descending. No-CSIT
/// mode takes user roles as given.
struct MultiUserScenario {
    ChannelProfile profile;
    PowerSplit split;
    CsitMode mode;

    MultiUserScenario(ChannelProfile profile, PowerSplit split, CsitMode mode);
    int user_count() const { return profile.user_count(); }
};

/// Lower-triangular SINR table: at(i, j) = SINR at user i for signal j,
/// defined for i >= j (0-based indices).
class SinrMatrix {
  public:
    explicit SinrMatrix(int users);
    double at(int user, int signal) const;
    void set(int user, int signal, double value);
    int user_count() const { return users_; }

  private:
    int users_;
    std::vector<double> values_;
};

/// Which cooperation gain the uni-directional chain reads: the standard
/// per-receiver W_{i,K}, or the paper-literal W_{j,K} shared across
/// receivers of phase j.
enum class UniHelperGain { PerReceiver, PaperLiteral };

SinrMatrix sinr_matrix(const FadingRealization& realization,
                       const MultiUserScenario& scenario);

/// Bi-directional chain for signal j: the instantaneously strongest of
/// users j..K-1 helps the rest; near_approx collapses to max of the
/// direct-phase SINRs. Ties pick the lowest user index.
double z_bi_multi(const FadingRealization& realization, const MultiUserScenario& scenario,
                  int signal, bool near_approx = false);

/// Uni-directional chain: helper fixed to user K-1; near_approx collapses
/// to that user's direct SINR.
double z_uni_multi(const FadingRealization& realization, const MultiUserScenario& scenario,
                   int signal, bool near_approx = false,
                   UniHelperGain gain = UniHelperGain::PerReceiver);

/// Conventional NOMA: min of the direct-phase SINRs over users j..K-1.
double z_noma_multi(const FadingRealization& realization,
                    const MultiUserScenario& scenario, int signal);

/// Per-signal rates log2(1+Z) for the scheme; OMA rates use the K-entry
/// alpha/gamma split. BiCoopMrc has no K-user chain and is rejected.
std::vector<double> multiuser_rates(const FadingRealization& realization,
                                    const MultiUserScenario& scenario, SchemeKind scheme,
                                    const OmaSplit& oma);

/// Coordinate-descent grid over the simplex with the strictly-descending
/// gamma constraint; candidates are compared on one common-random-number
/// Monte Carlo sample set.
struct MultiUserSearchSpec {
    AllocationObjective objective = AllocationObjective::Fairness;
    double rate_floor = 0;
    int steps_per_pair = 8;
    int sweeps = 2;
    std::uint64_t samples = 20000;
    std::uint64_t seed = 0x5eed;
    int threads = 1;
};

std::vector<double> optimize_power_multiuser(const ChannelProfile& profile,
                                             SchemeKind scheme,
                                             const MultiUserSearchSpec& spec);

}  // namespace nomacoop
