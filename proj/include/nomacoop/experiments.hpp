#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "nomacoop/table.hpp"

namespace nomacoop {

/// Configuration problems (unknown keys, bad types, missing required
/// keys). The CLI maps these to exit code 1.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// One experiment run: recipe id, reproducibility knobs, output paths and
/// the recipe-specific parameter block.
struct RunConfig {
    std::string experiment;
    std::uint64_t seed = 1;
    std::uint64_t samples = 0;  // 0 = recipe default
    int threads = 0;            // 0 = auto; scheduling only, never results
    std::string output_path;
    std::string plot_path;  // optional gnuplot-style blocks
    nlohmann::json params = nlohmann::json::object();
};

struct RecipeInfo {
    std::string id;
    std::string figures;  // data-reproduction target
    std::string summary;
};

std::vector<RecipeInfo> list_recipes();

/// Strict parse: unknown keys anywhere are rejected with key-level
/// messages; recipe params are validated against the recipe's schema.
RunConfig parse_run_config(const nlohmann::json& config);
RunConfig load_run_config(const std::string& path);

/// Executes the recipe. Deterministic: identical (config, seed) give
/// identical numerical output for any thread count; only the wall_time_ms
/// metadata line varies between runs.
ResultTable run_recipe(const RunConfig& config);

}  // namespace nomacoop
