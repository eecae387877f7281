#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "nomacoop/experiments.hpp"
#include "nomacoop/table.hpp"

namespace {

// --threads wins; NOMACOOP_THREADS applies only when the flag is absent
int effective_threads(bool flag_given, int flag_value, int config_value) {
    if (flag_given) return flag_value;
    if (const char* env = std::getenv("NOMACOOP_THREADS")) {
        try {
            const int v = std::stoi(env);
            if (v >= 0) return v;
        } catch (...) {
            // fall through to the config value
        }
    }
    return config_value;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bi-directional cooperative NOMA experiment runner"};
    app.require_subcommand(1);

    std::string config_path;
    std::uint64_t seed = 0;
    std::uint64_t samples = 0;
    std::string out_path;
    int threads = 0;

    CLI::App* run = app.add_subcommand("run", "execute a recipe from a config file");
    run->add_option("config", config_path, "JSON run configuration")->required();
    run->add_option("--seed", seed, "override the config seed");
    run->add_option("--samples", samples, "override the Monte Carlo depth");
    run->add_option("--out", out_path, "override the CSV output path");
    run->add_option("--threads", threads, "worker threads (0 = auto)");

    CLI::App* list = app.add_subcommand("list-recipes", "print available recipes");
    CLI::App* validate = app.add_subcommand("validate", "check a config file");
    std::string validate_path;
    validate->add_option("config", validate_path, "JSON run configuration")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (list->parsed()) {
            for (const auto& r : nomacoop::list_recipes()) {
                std::cout << r.id << "  [" << r.figures << "]  " << r.summary << "\n";
            }
            return 0;
        }
        if (validate->parsed()) {
            nomacoop::load_run_config(validate_path);
            std::cout << "ok\n";
            return 0;
        }
        nomacoop::RunConfig cfg = nomacoop::load_run_config(config_path);
        if (run->count("--seed")) cfg.seed = seed;
        if (run->count("--samples")) cfg.samples = samples;
        if (!out_path.empty()) cfg.output_path = out_path;
        cfg.threads = effective_threads(run->count("--threads") > 0, threads, cfg.threads);
        if (cfg.output_path.empty()) {
            throw nomacoop::ConfigError("no output path: set output_path or pass --out");
        }

        const nomacoop::ResultTable table = nomacoop::run_recipe(cfg);
        nomacoop::emit_csv(table, cfg.output_path);
        if (!cfg.plot_path.empty()) nomacoop::emit_plot_data(table, cfg.plot_path);
        std::cout << "wrote " << table.rows.size() << " rows to " << cfg.output_path
                  << "\n";
        return 0;
    } catch (const nomacoop::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "runtime error: " << e.what() << "\n";
        return 2;
    }
}
