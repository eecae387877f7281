#include "nomacoop/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace nomacoop {

namespace {

void check_positive(double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw std::invalid_argument(std::string(what) + " must be finite and > 0");
    }
}

}  // namespace

ChannelProfile::ChannelProfile(std::vector<double> variances, double coop_variance,
                               double noise_variance)
    : variances_(std::move(variances)), noise_variance_(noise_variance) {
    if (variances_.empty()) throw std::invalid_argument("profile needs at least one user");
    for (double v : variances_) check_positive(v, "direct-link variance");
    check_positive(coop_variance, "cooperation-link variance");
    check_positive(noise_variance_, "noise variance");
    const std::size_t k = variances_.size();
    coop_.assign(k * k, coop_variance);
}

ChannelProfile::ChannelProfile(std::vector<double> variances,
                               std::vector<double> coop_matrix, double noise_variance)
    : variances_(std::move(variances)),
      coop_(std::move(coop_matrix)),
      noise_variance_(noise_variance) {
    if (variances_.empty()) throw std::invalid_argument("profile needs at least one user");
    const std::size_t k = variances_.size();
    if (coop_.size() != k * k) {
        throw std::invalid_argument("cooperation matrix must be K*K");
    }
    for (double v : variances_) check_positive(v, "direct-link variance");
    check_positive(noise_variance_, "noise variance");
    for (std::size_t a = 0; a < k; ++a) {
        for (std::size_t b = a + 1; b < k; ++b) {
            check_positive(coop_[a * k + b], "cooperation-link variance");
            if (coop_[a * k + b] != coop_[b * k + a]) {
                throw std::invalid_argument("cooperation matrix must be symmetric");
            }
        }
    }
}

ChannelProfile ChannelProfile::two_user(double l1, double l2, double coop_variance,
                                        double noise_variance) {
    return ChannelProfile({l1, l2}, coop_variance, noise_variance);
}

double ChannelProfile::coop_variance(int a, int b) const {
    if (a == b) throw std::invalid_argument("no self cooperation link");
    return coop_.at(static_cast<std::size_t>(a) * user_count() + b);
}

ChannelProfile ChannelProfile::with_noise_variance(double noise_variance) const {
    ChannelProfile copy = *this;
    check_positive(noise_variance, "noise variance");
    copy.noise_variance_ = noise_variance;
    return copy;
}

double path_loss(double distance) {
    if (!(distance > 0.0) || !std::isfinite(distance)) {
        throw std::domain_error("distance must be finite and > 0");
    }
    return 1.0 / (distance * distance);
}

double snr_db_to_noise_variance(double snr_db) {
    if (!std::isfinite(snr_db)) throw std::domain_error("snr_db must be finite");
    return std::pow(10.0, -snr_db / 10.0);
}

void sample_fading_into(const ChannelProfile& profile, SeededRng& rng,
                        FadingRealization& out) {
    const int k = profile.user_count();
    out.direct_powers.resize(k);
    out.coop_powers.resize(static_cast<std::size_t>(k) * k);
    for (int i = 0; i < k; ++i) {
        out.direct_powers[i] = rng.exponential(profile.variance(i));
    }
    for (int s = 0; s < k; ++s) {
        for (int r = 0; r < k; ++r) {
            if (s == r) {
                out.coop_powers[static_cast<std::size_t>(s) * k + r] = 0.0;
                continue;
            }
            out.coop_powers[static_cast<std::size_t>(s) * k + r] =
                rng.exponential(profile.coop_variance(s, r));
        }
    }
}

FadingRealization sample_fading(const ChannelProfile& profile, SeededRng& rng) {
    FadingRealization out;
    sample_fading_into(profile, rng, out);
    return out;
}

Geometry place_users_annulus(const Geometry& geom, SeededRng& rng) {
    if (geom.user_count < 2) throw std::invalid_argument("need at least two users");
    if (!(geom.cell_radius > 0.0)) throw std::invalid_argument("cell radius must be > 0");
    if (geom.ring_width < 0.0 || geom.ring_width > geom.cell_radius) {
        throw std::invalid_argument("ring width must lie in [0, cell radius]");
    }
    if (geom.max_angle < 0.0) throw std::invalid_argument("max angle must be >= 0");

    Geometry placed = geom;
    const int k = geom.user_count;
    placed.distances.resize(k);
    placed.pair_distances.assign(static_cast<std::size_t>(k) * k, 0.0);

    std::vector<double> angle(k, 0.0);
    for (int i = 0; i < k; ++i) {
        placed.distances[i] =
            rng.uniform(geom.cell_radius - geom.ring_width, geom.cell_radius);
        if (i > 0) angle[i] = rng.uniform(0.0, geom.max_angle);
    }
    for (int a = 0; a < k; ++a) {
        for (int b = 0; b < k; ++b) {
            if (a == b) continue;
            const double xa = placed.distances[a] * std::cos(angle[a]);
            const double ya = placed.distances[a] * std::sin(angle[a]);
            const double xb = placed.distances[b] * std::cos(angle[b]);
            const double yb = placed.distances[b] * std::sin(angle[b]);
            placed.pair_distances[static_cast<std::size_t>(a) * k + b] =
                std::hypot(xa - xb, ya - yb);
        }
    }
    return placed;
}

ChannelProfile profile_from_geometry(const Geometry& geom, double noise_variance) {
    const int k = geom.user_count;
    if (static_cast<int>(geom.distances.size()) != k) {
        throw std::invalid_argument("geometry distances not filled");
    }
    std::vector<double> variances(k);
    for (int i = 0; i < k; ++i) variances[i] = path_loss(geom.distances[i]);
    std::vector<double> coop(static_cast<std::size_t>(k) * k, 1.0);
    for (int a = 0; a < k; ++a) {
        for (int b = 0; b < k; ++b) {
            if (a == b) continue;
            coop[static_cast<std::size_t>(a) * k + b] = path_loss(geom.pair_distance(a, b));
        }
    }
    return ChannelProfile(std::move(variances), std::move(coop), noise_variance);
}

}  // namespace nomacoop
