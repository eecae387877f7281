#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "nomacoop/channel.hpp"
#include "support/test_util.hpp"

using namespace nomacoop;

TEST_CASE("path loss follows the inverse-square model") {
    CHECK(path_loss(40.0) == doctest::Approx(6.25e-4).epsilon(1e-12));
    CHECK(path_loss(1.0) == doctest::Approx(1.0));
    CHECK(path_loss(50.0) == doctest::Approx(4.0e-4).epsilon(1e-12));
    CHECK_THROWS_AS(path_loss(0.0), std::domain_error);
    CHECK_THROWS_AS(path_loss(-2.0), std::domain_error);
}

TEST_CASE("snr conversion for unit transmit power") {
    CHECK(snr_db_to_noise_variance(10.0) == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(snr_db_to_noise_variance(0.0) == doctest::Approx(1.0));
    CHECK(snr_db_to_noise_variance(30.0) == doctest::Approx(1e-3).epsilon(1e-12));
    CHECK_THROWS_AS(snr_db_to_noise_variance(std::nan("")), std::domain_error);
}

TEST_CASE("profile validation") {
    CHECK_THROWS_AS(ChannelProfile::two_user(0.0, 1.0, 1.0, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(ChannelProfile::two_user(1.0, 1.0, -1.0, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(ChannelProfile::two_user(1.0, 1.0, 1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(ChannelProfile({1.0, 1.0}, {1.0, 2.0, 3.0, 1.0}, 0.1),
                    std::invalid_argument);  // asymmetric coop matrix
    const ChannelProfile p = ChannelProfile::two_user(1.0, 2.0, 3.0, 0.1);
    CHECK(p.coop_variance(0, 1) == 3.0);
    CHECK(p.coop_variance(1, 0) == 3.0);
    CHECK_THROWS_AS(p.coop_variance(1, 1), std::invalid_argument);
}

TEST_CASE("fading powers are exponential with the profile means") {
    const double l1 = 6.25e-4;
    const ChannelProfile profile = ChannelProfile::two_user(l1, 2.5e-3, 1.0, 0.1);
    SeededRng rng(42, 0);
    test_util::RunningMean mean_h1;
    int above_median = 0;
    const int n = 1000000;
    FadingRealization real;
    for (int i = 0; i < n; ++i) {
        sample_fading_into(profile, rng, real);
        mean_h1.add(real.direct(0));
        if (real.direct(0) > l1 * std::log(2.0)) ++above_median;
    }
    CHECK(std::fabs(mean_h1.mean() - l1) < 3.0 * mean_h1.std_error());
    const double frac = static_cast<double>(above_median) / n;
    CHECK(std::fabs(frac - 0.5) < 3.0 * std::sqrt(0.25 / n));
}

TEST_CASE("identical seeds reproduce identical realizations") {
    const ChannelProfile profile = ChannelProfile::two_user(1.0, 2.0, 3.0, 0.1);
    SeededRng a(123, 7), b(123, 7);
    for (int i = 0; i < 100; ++i) {
        const FadingRealization ra = sample_fading(profile, a);
        const FadingRealization rb = sample_fading(profile, b);
        CHECK(ra.direct_powers == rb.direct_powers);
        CHECK(ra.coop_powers == rb.coop_powers);
    }
    SeededRng c(123, 8);  // different stream, different draws
    CHECK(sample_fading(profile, c).direct_powers !=
          sample_fading(profile, a).direct_powers);
}

TEST_CASE("normalized fading power passes a KS test against Exp(1)") {
    const ChannelProfile profile = ChannelProfile::two_user(6.25e-4, 2.5e-3, 1.0, 0.1);
    SeededRng rng(99, 3);
    const int n = 100000;
    std::vector<double> draws;
    draws.reserve(n);
    FadingRealization real;
    for (int i = 0; i < n; ++i) {
        sample_fading_into(profile, rng, real);
        draws.push_back(real.direct(1) / 2.5e-3);
    }
    const double d = test_util::ks_statistic(
        std::move(draws), [](double x) { return 1.0 - std::exp(-x); });
    CHECK(d < test_util::ks_critical_1pct(n));
}

TEST_CASE("annulus placement stays inside the ring") {
    Geometry geom;
    geom.cell_radius = 50.0;
    geom.ring_width = 50.0;
    geom.max_angle = 0.35;
    geom.user_count = 4;
    SeededRng rng(7, 1);
    double min_d = 1e9, max_d = -1e9;
    for (int i = 0; i < 100000; ++i) {
        const Geometry placed = place_users_annulus(geom, rng);
        for (double d : placed.distances) {
            min_d = std::min(min_d, d);
            max_d = std::max(max_d, d);
        }
    }
    CHECK(min_d >= 0.0);
    CHECK(max_d <= 50.0);
}

TEST_CASE("degenerate ring pins every user to the cell edge") {
    Geometry geom;
    geom.cell_radius = 50.0;
    geom.ring_width = 0.0;
    geom.max_angle = 0.35;
    geom.user_count = 3;
    SeededRng rng(1, 1);
    const Geometry placed = place_users_annulus(geom, rng);
    for (double d : placed.distances) CHECK(d == doctest::Approx(50.0).epsilon(1e-12));
}

TEST_CASE("zero angular spread collapses pair distances to |di - dj|") {
    Geometry geom;
    geom.cell_radius = 50.0;
    geom.ring_width = 20.0;
    geom.max_angle = 0.0;
    geom.user_count = 3;
    SeededRng rng(5, 2);
    const Geometry placed = place_users_annulus(geom, rng);
    for (int a = 0; a < 3; ++a) {
        for (int b = 0; b < 3; ++b) {
            if (a == b) continue;
            CHECK(placed.pair_distance(a, b) ==
                  doctest::Approx(std::fabs(placed.distances[a] - placed.distances[b]))
                      .epsilon(1e-9));
        }
    }
}

TEST_CASE("radial coordinate is uniform over [R-delta, R]") {
    Geometry geom;
    geom.cell_radius = 50.0;
    geom.ring_width = 30.0;
    geom.max_angle = 0.35;
    geom.user_count = 2;
    SeededRng rng(11, 4);
    const int n = 100000;
    std::vector<double> draws;
    draws.reserve(n);
    for (int i = 0; i < n / 2; ++i) {
        const Geometry placed = place_users_annulus(geom, rng);
        draws.push_back(placed.distances[0]);
        draws.push_back(placed.distances[1]);
    }
    const double d = test_util::ks_statistic(std::move(draws), [](double x) {
        return std::clamp((x - 20.0) / 30.0, 0.0, 1.0);
    });
    CHECK(d < test_util::ks_critical_1pct(n));
}

TEST_CASE("geometry validation errors") {
    Geometry geom;
    geom.cell_radius = 50.0;
    geom.ring_width = 60.0;  // wider than the cell
    geom.max_angle = 0.1;
    geom.user_count = 2;
    SeededRng rng(1, 1);
    CHECK_THROWS_AS(place_users_annulus(geom, rng), std::invalid_argument);
    geom.ring_width = 10.0;
    geom.user_count = 1;
    CHECK_THROWS_AS(place_users_annulus(geom, rng), std::invalid_argument);
}

TEST_CASE("profile_from_geometry applies inverse-square losses") {
    Geometry geom;
    geom.cell_radius = 50.0;
    geom.ring_width = 10.0;
    geom.max_angle = 0.3;
    geom.user_count = 3;
    SeededRng rng(3, 3);
    const Geometry placed = place_users_annulus(geom, rng);
    const ChannelProfile profile = profile_from_geometry(placed, 0.1);
    for (int i = 0; i < 3; ++i) {
        CHECK(profile.variance(i) ==
              doctest::Approx(1.0 / (placed.distances[i] * placed.distances[i])));
    }
    CHECK(profile.coop_variance(0, 2) ==
          doctest::Approx(1.0 / (placed.pair_distance(0, 2) * placed.pair_distance(0, 2))));
}
