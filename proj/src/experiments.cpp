#include "nomacoop/experiments.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "nomacoop/channel.hpp"
#include "nomacoop/ergodic.hpp"
#include "nomacoop/mc.hpp"
#include "nomacoop/multiuser.hpp"
#include "nomacoop/numerics.hpp"
#include "nomacoop/outage.hpp"
#include "nomacoop/power_alloc.hpp"

#ifndef NOMACOOP_BUILD_ID
#define NOMACOOP_BUILD_ID "unversioned"
#endif

namespace nomacoop {

namespace {

using nlohmann::json;

// ---------------------------------------------------------------- schema

enum class ParamKind { Number, Integer, Boolean, NumberArray, String };

struct ParamSpec {
    const char* key;
    ParamKind kind;
    json default_value;  // null marks a required key
};

struct Recipe {
    const char* id;
    const char* figures;
    const char* summary;
    std::vector<ParamSpec> params;
    ResultTable (*run)(const RunConfig&, const json&);
};

json default_grid(double lo, double hi, double step) {
    json a = json::array();
    for (double v = lo; v <= hi + 1e-9; v += step) a.push_back(v);
    return a;
}

void check_kind(const std::string& recipe, const ParamSpec& spec, const json& v) {
    const std::string where = recipe + ".params." + spec.key;
    switch (spec.kind) {
        case ParamKind::Number:
            if (!v.is_number()) throw ConfigError(where + " must be a number");
            break;
        case ParamKind::Integer:
            if (!v.is_number_integer()) throw ConfigError(where + " must be an integer");
            break;
        case ParamKind::Boolean:
            if (!v.is_boolean()) throw ConfigError(where + " must be a boolean");
            break;
        case ParamKind::String:
            if (!v.is_string()) throw ConfigError(where + " must be a string");
            break;
        case ParamKind::NumberArray:
            if (!v.is_array() || v.empty()) {
                throw ConfigError(where + " must be a non-empty number array");
            }
            for (const auto& e : v) {
                if (!e.is_number()) throw ConfigError(where + " entries must be numbers");
            }
            break;
    }
}

json resolve_params(const Recipe& recipe, const json& given) {
    if (!given.is_object()) throw ConfigError("params must be an object");
    for (const auto& [key, value] : given.items()) {
        (void)value;
        const bool known = std::any_of(
            recipe.params.begin(), recipe.params.end(),
            [&](const ParamSpec& s) { return key == s.key; });
        if (!known) {
            throw ConfigError(std::string(recipe.id) + ": unknown params key '" + key + "'");
        }
    }
    json resolved = json::object();
    for (const ParamSpec& spec : recipe.params) {
        if (given.contains(spec.key)) {
            check_kind(recipe.id, spec, given.at(spec.key));
            resolved[spec.key] = given.at(spec.key);
        } else if (spec.default_value.is_null()) {
            throw ConfigError(std::string(recipe.id) + ": missing required params key '" +
                              spec.key + "'");
        } else {
            resolved[spec.key] = spec.default_value;
        }
    }
    return resolved;
}

std::vector<double> grid_of(const json& a) {
    std::vector<double> g;
    for (const auto& v : a) g.push_back(v.get<double>());
    return g;
}

std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

void echo_params(ResultTable& table, const json& params) {
    // canonical (sorted) key order so the echo is byte-stable
    for (auto it = params.begin(); it != params.end(); ++it) {
        std::string value;
        if (it.value().is_array()) {
            value = "[";
            for (std::size_t i = 0; i < it.value().size(); ++i) {
                if (i) value += ", ";
                value += format_number(it.value()[i].get<double>());
            }
            value += "]";
        } else if (it.value().is_boolean()) {
            value = it.value().get<bool>() ? "true" : "false";
        } else if (it.value().is_string()) {
            value = it.value().get<std::string>();
        } else {
            value = format_number(it.value().get<double>());
        }
        table.add_metadata(std::string("params.") + it.key(), value);
    }
}

// Sequential stream dispenser: every Monte Carlo call in a recipe takes
// the next stream in fixed program order, making runs reproducible.
struct StreamCounter {
    std::uint64_t seed;
    std::uint64_t next = 1;
    SeededRng take() { return SeededRng(seed, next++); }
};

double min_component(const ErgodicResult& r) { return std::min(r.r1_mean, r.r2_mean); }

double min_component_stderr(const ErgodicResult& r) {
    return r.r1_mean <= r.r2_mean ? r.r1_std_error : r.r2_std_error;
}

// ------------------------------------------------- two-user sweep recipes

ResultTable run_fairness_vs_d2(const RunConfig& cfg, const json& p) {
    const double d1 = p.at("d1").get<double>();
    const std::vector<double> d2_grid = grid_of(p.at("d2_grid"));
    const double s2 = snr_db_to_noise_variance(p.at("snr_db").get<double>());
    const double lc = p.at("coop_variance").get<double>();
    const int grid_points = p.at("grid_points").get<int>();
    const std::uint64_t mc_grid_samples = p.at("mc_grid_samples").get<std::uint64_t>();
    const double tol = p.at("bisection_tolerance").get<double>();
    const std::uint64_t samples = cfg.samples ? cfg.samples : 1000000;

    StreamCounter streams{cfg.seed};
    ResultTable t;
    t.columns = {"d2"};
    for (const char* s : {"bi", "uni", "noma", "oma"}) {
        t.columns.push_back(std::string(s) + "_gamma2");
        t.columns.push_back(std::string(s) + "_closed");
        t.columns.push_back(std::string(s) + "_mc");
        t.columns.push_back(std::string(s) + "_stderr");
    }

    const OmaSplit oma_eq = OmaSplit::equal(2);
    for (double d2 : d2_grid) {
        const ChannelProfile profile =
            ChannelProfile::two_user(path_loss(d1), path_loss(d2), lc, s2);
        std::vector<double> row{d2};

        // bi: fairness bisection on the closed forms
        BisectionSpec bspec;
        bspec.tolerance = tol;
        bspec.threads = cfg.threads;
        const AllocationResult bi = fairness_bisection(profile, bspec);
        const PowerSplit bi_split = PowerSplit::two_user(1.0 - bi.gamma2_star, bi.gamma2_star);
        const ErgodicResult bi_mc =
            monte_carlo_ergodic(profile, bi_split, oma_eq, SchemeKind::BiCoopSelection,
                                samples, streams.take(), cfg.threads);
        row.insert(row.end(),
                   {bi.gamma2_star, std::min(bi.achieved_r1, bi.achieved_r2),
                    min_component(bi_mc), min_component_stderr(bi_mc)});

        // uni: closed-form grid search
        GridSearchSpec uspec;
        uspec.grid_points = grid_points;
        const AllocationResult uni =
            grid_search_allocation(profile, oma_eq, SchemeKind::UniCoop, uspec);
        const PowerSplit uni_split =
            PowerSplit::two_user(1.0 - uni.gamma2_star, uni.gamma2_star);
        const ErgodicResult uni_mc = monte_carlo_ergodic(
            profile, uni_split, oma_eq, SchemeKind::UniCoop, samples, streams.take(),
            cfg.threads);
        row.insert(row.end(),
                   {uni.gamma2_star, std::min(uni.achieved_r1, uni.achieved_r2),
                    min_component(uni_mc), min_component_stderr(uni_mc)});

        // conventional NOMA: two-stage Monte Carlo grid (common draws)
        GridSearchSpec nspec;
        nspec.grid_points = 201;
        nspec.mc_samples = mc_grid_samples;
        nspec.mc_seed = cfg.seed;
        const AllocationResult coarse =
            grid_search_allocation(profile, oma_eq, SchemeKind::ConvNoma, nspec);
        const double cell = 1.0 / (nspec.grid_points + 1);
        nspec.range_lo = std::max(1e-9, coarse.gamma2_star - 2 * cell);
        nspec.range_hi = std::min(1.0 - 1e-9, coarse.gamma2_star + 2 * cell);
        const AllocationResult noma =
            grid_search_allocation(profile, oma_eq, SchemeKind::ConvNoma, nspec);
        const PowerSplit noma_split =
            PowerSplit::two_user(1.0 - noma.gamma2_star, noma.gamma2_star);
        const ErgodicResult noma_mc = monte_carlo_ergodic(
            profile, noma_split, oma_eq, SchemeKind::ConvNoma, samples, streams.take(),
            cfg.threads);
        // the analytic column for conventional NOMA is the Jensen-style
        // bound on user 1 (no exact closed form exists)
        const double noma_bound =
            std::min(ergodic_noma_r1_bounds(profile, noma_split).upper,
                     ergodic_r2_closed(profile, noma_split));
        row.insert(row.end(), {noma.gamma2_star, noma_bound, min_component(noma_mc),
                               min_component_stderr(noma_mc)});

        // OMA: coupled gamma = alpha grid search on the closed form
        GridSearchSpec ospec;
        ospec.grid_points = grid_points;
        const AllocationResult oma =
            grid_search_allocation(profile, oma_eq, SchemeKind::Oma, ospec);
        const OmaSplit oma_split =
            OmaSplit::two_user(1.0 - oma.alpha2_star, 1.0 - oma.gamma2_star);
        const ErgodicResult oma_mc = monte_carlo_ergodic(
            profile, PowerSplit::two_user(0.5, 0.5), oma_split, SchemeKind::Oma, samples,
            streams.take(), cfg.threads);
        row.insert(row.end(),
                   {oma.gamma2_star, std::min(oma.achieved_r1, oma.achieved_r2),
                    min_component(oma_mc), min_component_stderr(oma_mc)});

        t.add_row(std::move(row));
    }
    return t;
}

ResultTable run_sumrate_vs_d2(const RunConfig& cfg, const json& p) {
    const double d1 = p.at("d1").get<double>();
    const std::vector<double> d2_grid = grid_of(p.at("d2_grid"));
    const double s2 = snr_db_to_noise_variance(p.at("snr_db").get<double>());
    const double lc = p.at("coop_variance").get<double>();
    const double rate_floor = p.at("rate_floor").get<double>();
    const int grid_points = p.at("grid_points").get<int>();
    const int mc_grid_points = p.at("mc_grid_points").get<int>();
    const std::uint64_t mc_grid_samples = p.at("mc_grid_samples").get<std::uint64_t>();
    const double tol = p.at("bisection_tolerance").get<double>();
    const std::uint64_t samples = cfg.samples ? cfg.samples : 1000000;

    StreamCounter streams{cfg.seed};
    ResultTable t;
    t.columns = {"d2"};
    for (const char* s : {"bi", "uni", "noma", "oma"}) {
        t.columns.push_back(std::string(s) + "_gamma2");
        t.columns.push_back(std::string(s) + "_status");
        t.columns.push_back(std::string(s) + "_closed");
        t.columns.push_back(std::string(s) + "_mc");
        t.columns.push_back(std::string(s) + "_stderr");
    }

    const OmaSplit oma_eq = OmaSplit::equal(2);
    for (double d2 : d2_grid) {
        const ChannelProfile profile =
            ChannelProfile::two_user(path_loss(d1), path_loss(d2), lc, s2);
        std::vector<double> row{d2};

        BisectionSpec bspec;
        bspec.tolerance = tol;
        bspec.mc_seed = cfg.seed;
        bspec.threads = cfg.threads;
        const AllocationResult bi = max_sum_rate_bisection(profile, rate_floor, bspec);
        const PowerSplit bi_split =
            PowerSplit::two_user(1.0 - bi.gamma2_star, bi.gamma2_star);
        const ErgodicResult bi_mc =
            monte_carlo_ergodic(profile, bi_split, oma_eq, SchemeKind::BiCoopSelection,
                                samples, streams.take(), cfg.threads);
        row.insert(row.end(), {bi.gamma2_star, static_cast<double>(bi.status),
                               ergodic_bi_sum_closed(profile, bi_split), bi_mc.sum_mean,
                               bi_mc.std_error});

        auto baseline = [&](SchemeKind scheme, int points, std::uint64_t mc_samples) {
            GridSearchSpec spec;
            spec.grid_points = points;
            spec.objective = AllocationObjective::SumRateWithFloor;
            spec.rate_floor = rate_floor;
            spec.mc_samples = mc_samples;
            spec.mc_seed = cfg.seed;
            return grid_search_allocation(profile, oma_eq, scheme, spec);
        };

        const AllocationResult uni = baseline(SchemeKind::UniCoop, grid_points, 0);
        const PowerSplit uni_split =
            PowerSplit::two_user(1.0 - uni.gamma2_star, uni.gamma2_star);
        const ErgodicResult uni_mc = monte_carlo_ergodic(
            profile, uni_split, oma_eq, SchemeKind::UniCoop, samples, streams.take(),
            cfg.threads);
        row.insert(row.end(), {uni.gamma2_star, static_cast<double>(uni.status),
                               ergodic_uni_sum_closed(profile, uni_split), uni_mc.sum_mean,
                               uni_mc.std_error});

        const AllocationResult noma =
            baseline(SchemeKind::ConvNoma, mc_grid_points, mc_grid_samples);
        const PowerSplit noma_split =
            PowerSplit::two_user(1.0 - noma.gamma2_star, noma.gamma2_star);
        const ErgodicResult noma_mc = monte_carlo_ergodic(
            profile, noma_split, oma_eq, SchemeKind::ConvNoma, samples, streams.take(),
            cfg.threads);
        const double noma_bound =
            ergodic_noma_r1_bounds(profile, noma_split).upper +
            ergodic_r2_closed(profile, noma_split);
        row.insert(row.end(), {noma.gamma2_star, static_cast<double>(noma.status),
                               noma_bound, noma_mc.sum_mean, noma_mc.std_error});

        const AllocationResult oma = baseline(SchemeKind::Oma, grid_points, 0);
        const OmaSplit oma_split =
            OmaSplit::two_user(1.0 - oma.alpha2_star, 1.0 - oma.gamma2_star);
        const ErgodicResult oma_mc = monte_carlo_ergodic(
            profile, PowerSplit::two_user(0.5, 0.5), oma_split, SchemeKind::Oma, samples,
            streams.take(), cfg.threads);
        row.insert(row.end(), {oma.gamma2_star, static_cast<double>(oma.status),
                               ergodic_oma_closed(profile, oma_split), oma_mc.sum_mean,
                               oma_mc.std_error});

        t.add_row(std::move(row));
    }
    return t;
}

ResultTable run_sumrate_no_csit(const RunConfig& cfg, const json& p) {
    const double d1 = p.at("d1").get<double>();
    const std::vector<double> d2_grid = grid_of(p.at("d2_grid"));
    const double s2 = snr_db_to_noise_variance(p.at("snr_db").get<double>());
    const double lc = p.at("coop_variance").get<double>();
    const double gamma1 = p.at("gamma1").get<double>();
    const double oma_alpha1 = p.at("oma_alpha1").get<double>();
    const double oma_gamma1 = p.at("oma_gamma1").get<double>();
    const std::uint64_t samples = cfg.samples ? cfg.samples : 1000000;

    StreamCounter streams{cfg.seed};
    ResultTable t;
    t.columns = {"d2",      "bi_closed",  "bi_mc",   "bi_stderr", "uni_closed",
                 "uni_mc",  "uni_stderr", "noma_mc", "noma_stderr", "oma_closed",
                 "oma_mc",  "oma_stderr"};

    const PowerSplit split = PowerSplit::two_user(gamma1, 1.0 - gamma1);
    const OmaSplit oma = OmaSplit::two_user(oma_alpha1, oma_gamma1);
    for (double d2 : d2_grid) {
        const ChannelProfile profile =
            ChannelProfile::two_user(path_loss(d1), path_loss(d2), lc, s2);
        const ErgodicResult bi =
            monte_carlo_ergodic(profile, split, oma, SchemeKind::BiCoopSelection, samples,
                                streams.take(), cfg.threads);
        const ErgodicResult uni = monte_carlo_ergodic(
            profile, split, oma, SchemeKind::UniCoop, samples, streams.take(), cfg.threads);
        const ErgodicResult noma = monte_carlo_ergodic(
            profile, split, oma, SchemeKind::ConvNoma, samples, streams.take(), cfg.threads);
        const ErgodicResult omar = monte_carlo_ergodic(
            profile, split, oma, SchemeKind::Oma, samples, streams.take(), cfg.threads);
        t.add_row({d2, ergodic_bi_sum_closed(profile, split), bi.sum_mean, bi.std_error,
                   ergodic_uni_sum_closed(profile, split), uni.sum_mean, uni.std_error,
                   noma.sum_mean, noma.std_error, ergodic_oma_closed(profile, oma),
                   omar.sum_mean, omar.std_error});
    }
    return t;
}

// ------------------------------------------------------- outage recipe

ResultTable run_outage_vs_snr(const RunConfig& cfg, const json& p) {
    const double d1 = p.at("d1").get<double>();
    const double d2 = p.at("d2").get<double>();
    const double rt1 = p.at("rt1").get<double>();
    const double rt2 = p.at("rt2").get<double>();
    const double gamma1 = p.at("gamma1").get<double>();
    const double alpha1 = p.at("alpha1").get<double>();
    const double lc = p.at("coop_variance").get<double>();
    const std::vector<double> snr_grid = grid_of(p.at("snr_grid_db"));
    const std::uint64_t samples = cfg.samples ? cfg.samples : 10000000;

    const PowerSplit split = PowerSplit::two_user(gamma1, 1.0 - gamma1);
    const OmaSplit oma = OmaSplit::two_user(alpha1, gamma1);
    const RateTargets targets = RateTargets::from_rates(rt1, rt2, oma);

    StreamCounter streams{cfg.seed};
    ResultTable t;
    t.columns = {"snr_db"};
    static constexpr const char* kCurves[] = {"bi1",   "bi2",  "uni1", "uni2",
                                              "noma1", "noma2", "oma1", "oma2"};
    for (const char* c : kCurves) {
        t.columns.push_back(std::string(c) + "_analytic");
        t.columns.push_back(std::string(c) + "_empirical");
        t.columns.push_back(std::string(c) + "_stderr");
    }

    static constexpr SchemeKind kSchemes[] = {SchemeKind::BiCoopSelection,
                                              SchemeKind::UniCoop, SchemeKind::ConvNoma,
                                              SchemeKind::Oma};
    for (double snr : snr_grid) {
        const ChannelProfile profile = ChannelProfile::two_user(
            path_loss(d1), path_loss(d2), lc, snr_db_to_noise_variance(snr));
        const std::vector<EmpiricalOutage> emp =
            empirical_outage_all(profile, split, oma, targets, samples, streams.take(),
                                 cfg.threads);
        std::vector<double> row{snr};
        int k = 0;
        for (SchemeKind scheme : kSchemes) {
            for (int user = 1; user <= 2; ++user, ++k) {
                const OutageReport rep =
                    outage_closed_form(profile, split, oma, targets, scheme, user);
                row.insert(row.end(), {rep.probability, emp[k].probability,
                                       emp[k].std_error});
            }
        }
        t.add_row(std::move(row));
    }
    return t;
}

// ------------------------------------------------------- annulus recipe

std::vector<double> ratio_power_profile(int k, double ratio) {
    std::vector<double> gamma(k);
    double norm = 0.0;
    for (int i = 0; i < k; ++i) norm += std::pow(ratio, k - 1 - i);
    for (int i = 0; i < k; ++i) gamma[i] = std::pow(ratio, k - 1 - i) / norm;
    return gamma;
}

// Relabels users so variances ascend (the statistical-CSIT role order).
ChannelProfile sorted_profile(const ChannelProfile& profile) {
    const int k = profile.user_count();
    std::vector<int> order(k);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return profile.variance(a) < profile.variance(b);
    });
    std::vector<double> variances(k);
    std::vector<double> coop(static_cast<std::size_t>(k) * k, 1.0);
    for (int i = 0; i < k; ++i) {
        variances[i] = profile.variance(order[i]);
        for (int j = 0; j < k; ++j) {
            if (i == j) continue;
            coop[static_cast<std::size_t>(i) * k + j] =
                profile.coop_variance(order[i], order[j]);
        }
    }
    return ChannelProfile(std::move(variances), std::move(coop),
                          profile.noise_variance());
}

ResultTable run_annulus_capacity(const RunConfig& cfg, const json& p) {
    const std::string objective = p.at("objective").get<std::string>();
    if (objective != "fairness" && objective != "sumrate") {
        throw ConfigError("annulus_capacity.params.objective must be 'fairness' or 'sumrate'");
    }
    const int k = p.at("users").get<int>();
    const double cell_radius = p.at("cell_radius").get<double>();
    const double max_angle = p.at("max_angle").get<double>();
    const std::vector<double> delta_grid = grid_of(p.at("ring_width_grid"));
    const int placements = p.at("placements").get<int>();
    const double s2 = snr_db_to_noise_variance(p.at("snr_db").get<double>());
    const double gamma_ratio = p.at("gamma_ratio").get<double>();
    const bool optimize_power = p.at("optimize_power").get<bool>();
    const int opt_steps = p.at("opt_steps").get<int>();
    const int opt_sweeps = p.at("opt_sweeps").get<int>();
    const std::uint64_t opt_samples = p.at("opt_samples").get<std::uint64_t>();
    const double rate_floor = p.at("rate_floor").get<double>();
    const std::uint64_t fading_samples = cfg.samples ? cfg.samples
                                                     : p.at("fading_samples").get<std::uint64_t>();
    if (k < 2) throw ConfigError("annulus_capacity.params.users must be >= 2");
    if (placements < 1) throw ConfigError("annulus_capacity.params.placements must be >= 1");

    const bool with_nocsit = objective == "sumrate";
    StreamCounter streams{cfg.seed};
    ResultTable t;
    t.columns = {"delta"};
    static constexpr const char* kNames[] = {"bi", "uni", "noma", "oma"};
    for (const char* s : kNames) t.columns.push_back(std::string(s) + "_stat");
    if (with_nocsit) {
        for (const char* s : kNames) t.columns.push_back(std::string(s) + "_nocsit");
    }

    static constexpr SchemeKind kSchemes[] = {SchemeKind::BiCoopSelection,
                                              SchemeKind::UniCoop, SchemeKind::ConvNoma,
                                              SchemeKind::Oma};
    const OmaSplit oma_eq = OmaSplit::equal(k);
    const std::vector<double> fixed_gamma = ratio_power_profile(k, gamma_ratio);

    // metric of one (profile, gamma) cell: per-user mean rates over fading
    // draws for all four schemes at once, collapsed per the objective
    auto evaluate_modes = [&](const ChannelProfile& profile,
                              const std::vector<double>& gamma, CsitMode mode) {
        const MultiUserScenario scenario(profile, PowerSplit(gamma), mode);
        auto draw = [&](SeededRng& r, std::span<double> out) {
            FadingRealization real;
            sample_fading_into(profile, r, real);
            int off = 0;
            for (SchemeKind scheme : kSchemes) {
                const std::vector<double> rates =
                    multiuser_rates(real, scenario, scheme, oma_eq);
                for (int u = 0; u < k; ++u) out[off + u] = rates[u];
                off += k;
            }
        };
        const McStats stats =
            run_monte_carlo(fading_samples, 4 * k, streams.take(), cfg.threads, draw);
        std::array<double, 4> metric{};
        for (int s = 0; s < 4; ++s) {
            const auto begin = stats.mean.begin() + s * k;
            if (objective == "fairness") {
                metric[s] = *std::min_element(begin, begin + k);
            } else {
                metric[s] = std::accumulate(begin, begin + k, 0.0);
            }
        }
        return metric;
    };

    for (double delta : delta_grid) {
        Geometry geom;
        geom.cell_radius = cell_radius;
        geom.ring_width = delta;
        geom.max_angle = max_angle;
        geom.user_count = k;

        std::array<double, 4> stat_sum{};
        std::array<double, 4> nocsit_sum{};
        for (int pl = 0; pl < placements; ++pl) {
            SeededRng place_rng = streams.take();
            const Geometry placed = place_users_annulus(geom, place_rng);
            const ChannelProfile profile = profile_from_geometry(placed, s2);

            const ChannelProfile stat = sorted_profile(profile);
            std::vector<double> gamma = fixed_gamma;
            if (optimize_power) {
                MultiUserSearchSpec search;
                search.objective = objective == "fairness"
                                       ? AllocationObjective::Fairness
                                       : AllocationObjective::SumRateWithFloor;
                search.rate_floor = rate_floor;
                search.steps_per_pair = opt_steps;
                search.sweeps = opt_sweeps;
                search.samples = opt_samples;
                SeededRng seeder = streams.take();
                search.seed = seeder.next_u64();
                search.threads = cfg.threads;
                gamma = optimize_power_multiuser(stat, SchemeKind::BiCoopSelection, search);
            }
            const std::array<double, 4> stat_m =
                evaluate_modes(stat, gamma, CsitMode::Statistical);
            for (int s = 0; s < 4; ++s) stat_sum[s] += stat_m[s];

            if (with_nocsit) {
                const std::array<double, 4> no_m =
                    evaluate_modes(profile, fixed_gamma, CsitMode::None);
                for (int s = 0; s < 4; ++s) nocsit_sum[s] += no_m[s];
            }
        }
        std::vector<double> row{delta};
        for (int s = 0; s < 4; ++s) row.push_back(stat_sum[s] / placements);
        if (with_nocsit) {
            for (int s = 0; s < 4; ++s) row.push_back(nocsit_sum[s] / placements);
        }
        t.add_row(std::move(row));
    }
    return t;
}

// ------------------------------------------------------ allocation trace

ResultTable run_alloc_trace(const RunConfig& cfg, const json& p) {
    const double d1 = p.at("d1").get<double>();
    const double d2 = p.at("d2").get<double>();
    const double s2 = snr_db_to_noise_variance(p.at("snr_db").get<double>());
    const double lc = p.at("coop_variance").get<double>();
    const double rate_floor = p.at("rate_floor").get<double>();
    const double tol = p.at("tolerance").get<double>();

    const ChannelProfile profile =
        ChannelProfile::two_user(path_loss(d1), path_loss(d2), lc, s2);
    BisectionSpec spec;
    spec.tolerance = tol;
    spec.mc_seed = cfg.seed;
    spec.threads = cfg.threads;
    spec.record_trace = true;

    ResultTable t;
    t.columns = {"algorithm", "iteration", "gamma_lo", "gamma_hi", "gamma2", "r1", "r2"};
    const AllocationResult fair = fairness_bisection(profile, spec);
    for (const auto& pt : fair.trace) {
        t.add_row({static_cast<double>(pt.algorithm), static_cast<double>(pt.iteration),
                   pt.gamma_lo, pt.gamma_hi, pt.gamma2, pt.r1, pt.r2});
    }
    const AllocationResult sum = max_sum_rate_bisection(profile, rate_floor, spec);
    for (const auto& pt : sum.trace) {
        if (pt.algorithm != 2) continue;  // fairness prologue already listed
        t.add_row({static_cast<double>(pt.algorithm), static_cast<double>(pt.iteration),
                   pt.gamma_lo, pt.gamma_hi, pt.gamma2, pt.r1, pt.r2});
    }
    t.add_metadata("fairness_gamma2", format_number(fair.gamma2_star));
    t.add_metadata("max_sum_rate_gamma2", format_number(sum.gamma2_star));
    t.add_metadata("max_sum_rate_status",
                   sum.status == AllocationStatus::SystemOutage ? "system_outage"
                   : sum.status == AllocationStatus::Converged  ? "converged"
                                                                : "max_iterations");
    return t;
}

// ------------------------------------------------------------- registry

const std::vector<Recipe>& recipes() {
    static const std::vector<Recipe> kRecipes = {
        {"fairness_vs_d2", "Fig. 3",
         "max-min fair rate vs d2 under statistical CSIT; per-scheme optimal splits",
         {{"d1", ParamKind::Number, 40.0},
          {"d2_grid", ParamKind::NumberArray, default_grid(10, 40, 5)},
          {"snr_db", ParamKind::Number, 10.0},
          {"coop_variance", ParamKind::Number, 1.0},
          {"grid_points", ParamKind::Integer, 10001},
          {"mc_grid_samples", ParamKind::Integer, 20000},
          {"bisection_tolerance", ParamKind::Number, 1e-8}},
         run_fairness_vs_d2},
        {"sumrate_vs_d2", "Fig. 4",
         "sum rate vs d2 under statistical CSIT with a minimum-rate floor",
         {{"d1", ParamKind::Number, 40.0},
          {"d2_grid", ParamKind::NumberArray, default_grid(10, 40, 5)},
          {"snr_db", ParamKind::Number, 10.0},
          {"coop_variance", ParamKind::Number, 1.0},
          {"rate_floor", ParamKind::Number, 0.8},
          {"grid_points", ParamKind::Integer, 10001},
          {"mc_grid_points", ParamKind::Integer, 2001},
          {"mc_grid_samples", ParamKind::Integer, 20000},
          {"bisection_tolerance", ParamKind::Number, 1e-8}},
         run_sumrate_vs_d2},
        {"sumrate_no_csit", "Fig. 5",
         "sum rate vs d2 with fixed splits and no CSIT",
         {{"d1", ParamKind::Number, 40.0},
          {"d2_grid", ParamKind::NumberArray, default_grid(10, 70, 5)},
          {"snr_db", ParamKind::Number, 10.0},
          {"gamma1", ParamKind::Number, 0.8},
          {"oma_alpha1", ParamKind::Number, 0.5},
          {"oma_gamma1", ParamKind::Number, 0.5},
          {"coop_variance", ParamKind::Number, 1.8e-3}},
         run_sumrate_no_csit},
        {"outage_vs_snr", "Figs. 6-9",
         "analytic and empirical outage vs transmit SNR for one (d2, rt1, rt2) setup",
         {{"d1", ParamKind::Number, 40.0},
          {"d2", ParamKind::Number, 20.0},
          {"rt1", ParamKind::Number, 0.7},
          {"rt2", ParamKind::Number, 1.5},
          {"gamma1", ParamKind::Number, 0.75},
          {"alpha1", ParamKind::Number, 0.5},
          {"coop_variance", ParamKind::Number, 1.0},
          {"snr_grid_db", ParamKind::NumberArray, default_grid(0, 40, 2)}},
         run_outage_vs_snr},
        {"annulus_capacity", "Figs. 11-12",
         "mean capacity vs ring width for K users placed in the outer ring",
         {{"objective", ParamKind::String, "sumrate"},
          {"users", ParamKind::Integer, 4},
          {"cell_radius", ParamKind::Number, 50.0},
          {"max_angle", ParamKind::Number, nullptr},  // required; 0.35 is the smoke value
          {"ring_width_grid", ParamKind::NumberArray, json::array({5, 15, 25, 35, 45})},
          {"placements", ParamKind::Integer, 100},
          {"fading_samples", ParamKind::Integer, 2000},
          {"snr_db", ParamKind::Number, 10.0},
          {"gamma_ratio", ParamKind::Number, 2.0},
          {"optimize_power", ParamKind::Boolean, false},
          {"opt_steps", ParamKind::Integer, 6},
          {"opt_sweeps", ParamKind::Integer, 1},
          {"opt_samples", ParamKind::Integer, 4000},
          {"rate_floor", ParamKind::Number, 0.0}},
         run_annulus_capacity},
        {"alloc_trace", "Algorithms 1-2",
         "single-shot bisection trace for the fairness and max-sum-rate splits",
         {{"d1", ParamKind::Number, 40.0},
          {"d2", ParamKind::Number, 20.0},
          {"snr_db", ParamKind::Number, 10.0},
          {"coop_variance", ParamKind::Number, 1.0},
          {"rate_floor", ParamKind::Number, 0.01},
          {"tolerance", ParamKind::Number, 1e-6}},
         run_alloc_trace},
    };
    return kRecipes;
}

const Recipe& find_recipe(const std::string& id) {
    for (const Recipe& r : recipes()) {
        if (id == r.id) return r;
    }
    throw ConfigError("unknown experiment '" + id + "' (see list-recipes)");
}

}  // namespace

std::vector<RecipeInfo> list_recipes() {
    std::vector<RecipeInfo> out;
    for (const Recipe& r : recipes()) out.push_back({r.id, r.figures, r.summary});
    return out;
}

RunConfig parse_run_config(const json& config) {
    if (!config.is_object()) throw ConfigError("config must be a JSON object");
    static constexpr const char* kKnown[] = {"experiment", "seed",        "samples",
                                             "threads",    "output_path", "plot_path",
                                             "params"};
    for (const auto& [key, value] : config.items()) {
        (void)value;
        const bool known =
            std::any_of(std::begin(kKnown), std::end(kKnown),
                        [&](const char* k) { return key == k; });
        if (!known) throw ConfigError("unknown config key '" + key + "'");
    }
    if (!config.contains("experiment") || !config.at("experiment").is_string()) {
        throw ConfigError("config requires a string 'experiment' key");
    }
    RunConfig cfg;
    cfg.experiment = config.at("experiment").get<std::string>();
    const Recipe& recipe = find_recipe(cfg.experiment);
    const auto read_u64 = [&](const char* key, std::uint64_t& out) {
        const json& v = config.at(key);
        if (!v.is_number_integer() ||
            (v.is_number_integer() && !v.is_number_unsigned() &&
             v.get<std::int64_t>() < 0)) {
            throw ConfigError(std::string(key) + " must be a nonnegative integer");
        }
        out = v.get<std::uint64_t>();
    };
    if (config.contains("seed")) read_u64("seed", cfg.seed);
    if (config.contains("samples")) read_u64("samples", cfg.samples);
    if (config.contains("threads")) {
        if (!config.at("threads").is_number_integer() ||
            config.at("threads").get<int>() < 0) {
            throw ConfigError("threads must be an integer >= 0");
        }
        cfg.threads = config.at("threads").get<int>();
    }
    if (config.contains("output_path")) {
        if (!config.at("output_path").is_string()) {
            throw ConfigError("output_path must be a string");
        }
        cfg.output_path = config.at("output_path").get<std::string>();
    }
    if (config.contains("plot_path")) {
        if (!config.at("plot_path").is_string()) {
            throw ConfigError("plot_path must be a string");
        }
        cfg.plot_path = config.at("plot_path").get<std::string>();
    }
    cfg.params = resolve_params(recipe, config.value("params", json::object()));
    return cfg;
}

RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw ConfigError("config parse error in " + path + ": " + e.what());
    }
    return parse_run_config(j);
}

ResultTable run_recipe(const RunConfig& config) {
    const Recipe& recipe = find_recipe(config.experiment);
    const json params = resolve_params(recipe, config.params);

    const auto start = std::chrono::steady_clock::now();
    ResultTable table = recipe.run(config, params);

    ResultTable out;
    out.columns = std::move(table.columns);
    out.rows = std::move(table.rows);
    out.add_metadata("experiment", config.experiment);
    out.add_metadata("figures", recipe.figures);
    out.add_metadata("seed", std::to_string(config.seed));
    out.add_metadata("samples", std::to_string(config.samples));
    out.add_metadata("build_id", NOMACOOP_BUILD_ID);
    echo_params(out, params);
    for (auto& kv : table.metadata) out.metadata.push_back(std::move(kv));
    const auto wall = std::chrono::duration_cast<std::chrono::milliseconds>(
                          std::chrono::steady_clock::now() - start)
                          .count();
    // volatile line; excluded from byte-identity comparisons
    out.add_metadata("wall_time_ms", std::to_string(wall));
    return out;
}

}  // namespace nomacoop
