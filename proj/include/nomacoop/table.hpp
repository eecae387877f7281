#pragma once

#include <string>
#include <utility>
#include <vector>

namespace nomacoop {

/// Sweep output: named columns, numeric rows, and an ordered metadata
/// block (config echo, seed, build id, wall time). Cells must be finite.
struct ResultTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    std::vector<std::pair<std::string, std::string>> metadata;

    void add_metadata(const std::string& key, const std::string& value) {
        metadata.emplace_back(key, value);
    }
    void add_row(std::vector<double> row);
};

/// CSV layout: '#'-prefixed metadata lines, a header row, then one
/// comma-separated row per grid point with 10 significant digits and LF
/// line endings. Throws on non-finite cells.
std::string render_csv(const ResultTable& table);
void emit_csv(const ResultTable& table, const std::string& path);

/// gnuplot-style blocks: for each non-x column one "x y" block headed by
/// a column-map comment, blank-line separated. The first column is x.
std::string render_plot_data(const ResultTable& table);
void emit_plot_data(const ResultTable& table, const std::string& path);

}  // namespace nomacoop
