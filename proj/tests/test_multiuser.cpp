#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>

#include "nomacoop/multiuser.hpp"
#include "support/test_util.hpp"

using namespace nomacoop;

namespace {

MultiUserScenario two_user_scenario(double g2 = 0.25) {
    return MultiUserScenario(ChannelProfile::two_user(6.25e-4, 2.5e-3, 1e-3, 0.1),
                             PowerSplit::two_user(1.0 - g2, g2), CsitMode::Statistical);
}

MultiUserScenario four_user_scenario() {
    std::vector<double> l = {1e-4, 4e-4, 9e-4, 2.5e-3};
    std::vector<double> g = {8.0 / 15, 4.0 / 15, 2.0 / 15, 1.0 / 15};
    return MultiUserScenario(ChannelProfile(std::move(l), 1e-3, 0.1), PowerSplit(g),
                             CsitMode::Statistical);
}

// same cooperative draw for every sender toward a given receiver; valid
// when pair variances are equal, and it couples the schemes' help links
FadingRealization coupled_coop(FadingRealization real) {
    const int k = real.user_count();
    for (int r = 0; r < k; ++r) {
        const double shared = real.coop_powers[static_cast<std::size_t>((r == 0 ? 1 : 0)) * k + r];
        for (int s = 0; s < k; ++s) {
            if (s == r) continue;
            real.coop_powers[static_cast<std::size_t>(s) * k + r] = shared;
        }
    }
    return real;
}

}  // namespace

TEST_CASE("scenario validation in statistical-CSIT mode") {
    std::vector<double> bad_l = {2e-3, 1e-3};  // descending variances
    CHECK_THROWS_AS(MultiUserScenario(ChannelProfile(bad_l, 1.0, 0.1),
                                      PowerSplit::two_user(0.75, 0.25),
                                      CsitMode::Statistical),
                    std::invalid_argument);
    std::vector<double> bad_g = {0.25, 0.75};  // ascending split
    CHECK_THROWS_AS(MultiUserScenario(ChannelProfile({1e-3, 2e-3}, 1.0, 0.1),
                                      PowerSplit(bad_g), CsitMode::Statistical),
                    std::invalid_argument);
    // no-CSIT mode takes arbitrary role orderings
    CHECK_NOTHROW(MultiUserScenario(ChannelProfile(bad_l, 1.0, 0.1), PowerSplit(bad_g),
                                    CsitMode::None));
}

TEST_CASE("SINR table structure") {
    const MultiUserScenario sc = four_user_scenario();
    SeededRng rng(5, 5);
    const FadingRealization real = sample_fading(sc.profile, rng);
    const SinrMatrix m = sinr_matrix(real, sc);

    // last signal sees an empty interference sum
    for (int i = 3; i < 4; ++i) {
        CHECK(m.at(i, 3) ==
              doctest::Approx(real.direct(i) * sc.split.gamma(3) / 0.1).epsilon(1e-12));
    }
    // the SIC chain strictly reduces interference: each decoded signal sees
    // less interference than a no-SIC receiver of the same signal would
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j <= i; ++j) {
            double all_others = 0.0;
            for (int t = 0; t < 4; ++t) {
                if (t != j) all_others += sc.split.gamma(t);
            }
            const double no_sic =
                sinr_kernel(real.direct(i), sc.split.gamma(j), all_others, 0.1);
            CHECK(m.at(i, j) >= no_sic);
        }
    }
    // ordering in the user index follows the channel-power ordering
    for (int j = 0; j < 4; ++j) {
        for (int a = j; a < 4; ++a) {
            for (int b = j; b < 4; ++b) {
                if (real.direct(a) >= real.direct(b)) {
                    CHECK(m.at(a, j) >= m.at(b, j));
                }
            }
        }
    }
    CHECK_THROWS_AS(m.at(0, 1), std::out_of_range);  // below the diagonal
}

TEST_CASE("homogeneity: joint power/noise rescale leaves the table unchanged") {
    const MultiUserScenario sc = four_user_scenario();
    SeededRng rng(6, 6);
    FadingRealization real = sample_fading(sc.profile, rng);
    const SinrMatrix m1 = sinr_matrix(real, sc);

    const double c = 13.0;
    FadingRealization scaled = real;
    for (double& h : scaled.direct_powers) h *= c;
    MultiUserScenario sc2(
        ChannelProfile(sc.profile.variances(), 1e-3, sc.profile.noise_variance() * c),
        sc.split, CsitMode::Statistical);
    const SinrMatrix m2 = sinr_matrix(scaled, sc2);
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j <= i; ++j) {
            CHECK(m1.at(i, j) == doctest::Approx(m2.at(i, j)).epsilon(1e-12));
        }
    }
}

TEST_CASE("K = 2 reductions bit-match the two-user module") {
    const MultiUserScenario sc = two_user_scenario();
    const OmaSplit oma = OmaSplit::equal(2);
    SeededRng rng(7, 7);
    FadingRealization real;
    for (int i = 0; i < 20000; ++i) {
        sample_fading_into(sc.profile, rng, real);
        const TwoUserSinrs s = direct_sinrs(real, sc.profile, sc.split);

        // SINR table reduction
        const SinrMatrix m = sinr_matrix(real, sc);
        REQUIRE(m.at(0, 0) == s.v11);
        REQUIRE(m.at(1, 0) == s.v21);
        REQUIRE(m.at(1, 1) == s.v22);

        // chain reductions
        REQUIRE(z_bi_multi(real, sc, 0) ==
                z1_bi_selection(s, real.direct(0), real.direct(1)));
        REQUIRE(z_bi_multi(real, sc, 0, /*near_approx=*/true) == z1_bi_near_approx(s));
        REQUIRE(z_uni_multi(real, sc, 0) == z1_uni(s));
        REQUIRE(z_uni_multi(real, sc, 0, /*near_approx=*/true) ==
                z1_uni(s, /*near_approx=*/true));
        REQUIRE(z_noma_multi(real, sc, 0) == z1_conv_noma(s));
        REQUIRE(z_bi_multi(real, sc, 1) == s.v22);

        // rate reductions for every supported scheme
        for (SchemeKind scheme :
             {SchemeKind::BiCoopSelection, SchemeKind::BiCoopNearApprox,
              SchemeKind::UniCoop, SchemeKind::ConvNoma, SchemeKind::Oma}) {
            const std::vector<double> kr = multiuser_rates(real, sc, scheme, oma);
            const RatePair two = scheme_rates(real, sc.profile, sc.split, oma, scheme);
            REQUIRE(kr[0] == two.r1);
            REQUIRE(kr[1] == two.r2);
        }
    }
}

TEST_CASE("singleton chain for the last signal and perfect-cooperation collapse") {
    const MultiUserScenario sc = four_user_scenario();
    SeededRng rng(8, 8);
    FadingRealization real = sample_fading(sc.profile, rng);
    const SinrMatrix m = sinr_matrix(real, sc);
    CHECK(z_bi_multi(real, sc, 3) == m.at(3, 3));
    CHECK(z_uni_multi(real, sc, 3) == m.at(3, 3));

    // enormous cooperative links make the exact chain meet the approximation
    for (double& g : real.coop_powers) {
        if (g != 0.0) g = 1e9;
    }
    for (int j = 0; j < 4; ++j) {
        CHECK(z_bi_multi(real, sc, j) ==
              doctest::Approx(z_bi_multi(real, sc, j, true)).epsilon(1e-12));
    }
}

TEST_CASE("uni helper-gain indexings coincide at K = 2 and may differ at K = 3") {
    const MultiUserScenario sc2 = two_user_scenario();
    SeededRng rng(9, 9);
    FadingRealization real2 = sample_fading(sc2.profile, rng);
    CHECK(z_uni_multi(real2, sc2, 0, false, UniHelperGain::PerReceiver) ==
          z_uni_multi(real2, sc2, 0, false, UniHelperGain::PaperLiteral));

    const MultiUserScenario sc3(ChannelProfile({1e-4, 4e-4, 9e-4}, 1e-3, 0.1),
                                PowerSplit({4.0 / 7, 2.0 / 7, 1.0 / 7}),
                                CsitMode::Statistical);
    bool differed = false;
    FadingRealization real3;
    for (int i = 0; i < 2000 && !differed; ++i) {
        sample_fading_into(sc3.profile, rng, real3);
        differed = z_uni_multi(real3, sc3, 0, false, UniHelperGain::PerReceiver) !=
                   z_uni_multi(real3, sc3, 0, false, UniHelperGain::PaperLiteral);
    }
    CHECK(differed);
}

TEST_CASE("per-realization ordering chains") {
    const MultiUserScenario sc = four_user_scenario();
    const OmaSplit oma = OmaSplit::equal(4);
    SeededRng rng(10, 10);
    FadingRealization real;
    for (int i = 0; i < 300000; ++i) {
        sample_fading_into(sc.profile, rng, real);
        for (int j = 0; j < 4; ++j) {
            const double noma = z_noma_multi(real, sc, j);
            // cooperation can only help relative to no cooperation
            REQUIRE(z_bi_multi(real, sc, j) >= noma);
            REQUIRE(z_uni_multi(real, sc, j) >= noma);
            // near-approximation chain is deterministic
            REQUIRE(z_bi_multi(real, sc, j, true) >= z_uni_multi(real, sc, j, true));
            REQUIRE(z_uni_multi(real, sc, j, true) >= noma);
        }
        // with receiver-coupled help links the exact chain orders as well
        const FadingRealization coupled = coupled_coop(real);
        for (int j = 0; j < 4; ++j) {
            REQUIRE(z_bi_multi(coupled, sc, j) >= z_uni_multi(coupled, sc, j));
        }
        // rates in near-approximation mode keep the scheme ordering
        const auto bi = multiuser_rates(real, sc, SchemeKind::BiCoopNearApprox, oma);
        const auto uni_near = [&] {
            std::vector<double> r(4);
            for (int j = 0; j < 4; ++j) {
                r[j] = std::log2(1.0 + z_uni_multi(real, sc, j, true));
            }
            return r;
        }();
        const auto noma_r = multiuser_rates(real, sc, SchemeKind::ConvNoma, oma);
        const double bi_sum = std::accumulate(bi.begin(), bi.end(), 0.0);
        const double uni_sum = std::accumulate(uni_near.begin(), uni_near.end(), 0.0);
        const double noma_sum = std::accumulate(noma_r.begin(), noma_r.end(), 0.0);
        REQUIRE(bi_sum >= uni_sum);
        REQUIRE(uni_sum >= noma_sum);
    }
}

TEST_CASE("mean sum-rate chain for the annulus experiment shape") {
    Geometry geom;
    geom.cell_radius = 50.0;
    geom.ring_width = 25.0;
    geom.max_angle = 0.35;
    geom.user_count = 4;
    const OmaSplit oma = OmaSplit::equal(4);
    const std::vector<double> gamma = {8.0 / 15, 4.0 / 15, 2.0 / 15, 1.0 / 15};

    SeededRng rng(11, 11);
    double bi = 0, uni = 0, noma = 0;
    FadingRealization real;
    for (int placement = 0; placement < 40; ++placement) {
        const Geometry placed = place_users_annulus(geom, rng);
        ChannelProfile profile = profile_from_geometry(placed, 0.1);
        const MultiUserScenario sc(profile, PowerSplit(gamma), CsitMode::None);
        for (int i = 0; i < 4000; ++i) {
            sample_fading_into(profile, rng, real);
            const auto rb = multiuser_rates(real, sc, SchemeKind::BiCoopSelection, oma);
            const auto ru = multiuser_rates(real, sc, SchemeKind::UniCoop, oma);
            const auto rn = multiuser_rates(real, sc, SchemeKind::ConvNoma, oma);
            bi += std::accumulate(rb.begin(), rb.end(), 0.0);
            uni += std::accumulate(ru.begin(), ru.end(), 0.0);
            noma += std::accumulate(rn.begin(), rn.end(), 0.0);
        }
    }
    CHECK(bi >= uni);
    CHECK(uni >= noma);
}

TEST_CASE("power search returns a strictly descending simplex point and improves") {
    const ChannelProfile profile({1e-4, 4e-4, 9e-4, 2.5e-3}, 1e-3, 0.01);
    MultiUserSearchSpec spec;
    spec.objective = AllocationObjective::Fairness;
    spec.samples = 4000;
    spec.steps_per_pair = 4;
    spec.sweeps = 1;
    spec.seed = 22;
    const std::vector<double> gamma =
        optimize_power_multiuser(profile, SchemeKind::BiCoopSelection, spec);
    REQUIRE(gamma.size() == 4);
    double sum = 0.0;
    for (std::size_t i = 0; i < gamma.size(); ++i) {
        sum += gamma[i];
        if (i) CHECK(gamma[i - 1] > gamma[i]);
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
}
