#pragma once

#include <vector>

#include "nomacoop/rng.hpp"

namespace nomacoop {

/// Slow-fading description of one scenario: per-user direct-link variances
/// L_i, symmetric inter-user cooperation-link variances, and the normalized
/// noise variance. All entries strictly positive.
class ChannelProfile {
  public:
    /// uniform cooperation-link variance for every user pair
    ChannelProfile(std::vector<double> variances, double coop_variance,
                   double noise_variance);
    /// full K*K symmetric cooperation matrix (row-major; diagonal ignored)
    ChannelProfile(std::vector<double> variances, std::vector<double> coop_matrix,
                   double noise_variance);

    static ChannelProfile two_user(double l1, double l2, double coop_variance,
                                   double noise_variance);

    int user_count() const { return static_cast<int>(variances_.size()); }
    double variance(int user) const { return variances_.at(user); }
    const std::vector<double>& variances() const { return variances_; }
    double coop_variance(int a, int b) const;
    double noise_variance() const { return noise_variance_; }

    /// copy with a different noise variance (SNR sweeps)
    ChannelProfile with_noise_variance(double noise_variance) const;

  private:
    std::vector<double> variances_;
    std::vector<double> coop_;  // K*K row-major, symmetric
    double noise_variance_ = 0.0;
};

/// Cell geometry for the random-user experiments. distances/pair_distances
/// are filled by place_users_annulus.
struct Geometry {
    double cell_radius = 0.0;  // R
    double ring_width = 0.0;   // delta: users drawn from [R-delta, R]
    double max_angle = 0.0;    // theta, radians
    int user_count = 0;        // K

    std::vector<double> distances;       // d_k from the BS
    std::vector<double> pair_distances;  // K*K row-major inter-user distances

    double pair_distance(int a, int b) const {
        return pair_distances.at(static_cast<std::size_t>(a) * user_count + b);
    }
};

/// One draw of all instantaneous channel powers.
struct FadingRealization {
    std::vector<double> direct_powers;  // |h_i|^2
    std::vector<double> coop_powers;    // K*K row-major [sender*K + receiver]

    int user_count() const { return static_cast<int>(direct_powers.size()); }
    double direct(int user) const { return direct_powers[user]; }
    double coop(int sender, int receiver) const {
        return coop_powers[static_cast<std::size_t>(sender) * user_count() + receiver];
    }
};

/// L = 1/d^2
double path_loss(double distance);

/// noise variance for unit transmit power: 10^(-snr_db/10)
double snr_db_to_noise_variance(double snr_db);

/// Draws |h_i|^2 ~ Exp(L_i) and each |g_{k,i}|^2 ~ Exp(coop variance of the
/// pair), all independent. Draw order is fixed: direct powers for users
/// 0..K-1, then cooperation pairs sender-major with the diagonal skipped.
FadingRealization sample_fading(const ChannelProfile& profile, SeededRng& rng);

/// Allocation-free variant for hot loops.
void sample_fading_into(const ChannelProfile& profile, SeededRng& rng,
                        FadingRealization& out);

/// Places K users with radius uniform over [R-delta, R]; user 0 sits at
/// angle 0 and the rest draw angles uniformly from [0, theta), so every
/// pairwise angular separation stays below theta. Fills distances and
/// pair_distances.
Geometry place_users_annulus(const Geometry& geom, SeededRng& rng);

/// ChannelProfile from placed geometry: L_i = 1/d_i^2 from the BS
/// distances, pairwise cooperation variances 1/d_ij^2.
ChannelProfile profile_from_geometry(const Geometry& geom, double noise_variance);

}  // namespace nomacoop
