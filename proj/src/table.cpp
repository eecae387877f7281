#include "nomacoop/table.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace nomacoop {

namespace {

std::string format_cell(double v) {
    if (!std::isfinite(v)) throw std::invalid_argument("non-finite table cell");
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

void write_file(const std::string& text, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << text;
    if (!out.good()) throw std::runtime_error("write failed: " + path);
}

}  // namespace

void ResultTable::add_row(std::vector<double> row) {
    if (row.size() != columns.size()) {
        throw std::invalid_argument("row width does not match column count");
    }
    rows.push_back(std::move(row));
}

std::string render_csv(const ResultTable& table) {
    std::string out;
    for (const auto& [key, value] : table.metadata) {
        out += "# " + key + " = " + value + "\n";
    }
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        if (c) out += ',';
        out += table.columns[c];
    }
    out += '\n';
    for (const auto& row : table.rows) {
        if (row.size() != table.columns.size()) {
            throw std::invalid_argument("ragged table row");
        }
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out += ',';
            out += format_cell(row[c]);
        }
        out += '\n';
    }
    return out;
}

void emit_csv(const ResultTable& table, const std::string& path) {
    write_file(render_csv(table), path);
}

std::string render_plot_data(const ResultTable& table) {
    if (table.columns.empty()) throw std::invalid_argument("plot data needs an x column");
    std::string out;
    for (const auto& [key, value] : table.metadata) {
        out += "# " + key + " = " + value + "\n";
    }
    for (std::size_t c = 1; c < table.columns.size(); ++c) {
        if (c > 1) out += '\n';
        out += "# curve: " + table.columns[c] + "  (x = " + table.columns[0] + ")\n";
        for (const auto& row : table.rows) {
            out += format_cell(row[0]) + " " + format_cell(row[c]) + "\n";
        }
    }
    return out;
}

void emit_plot_data(const ResultTable& table, const std::string& path) {
    write_file(render_plot_data(table), path);
}

}  // namespace nomacoop
