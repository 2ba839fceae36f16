#pragma once

#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace halfline::app {

using CsvCell = std::variant<double, long long, std::string>;

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<CsvCell>> rows;

    void add(std::vector<CsvCell> row) { rows.push_back(std::move(row)); }
};

/// 17 significant digits, the shortest form printf gives for that precision.
std::string format_number(double v);

/// Comment block (one "# " line per line of config_echo), header row, rows.
void write_csv(std::ostream& out, const std::string& config_echo, const CsvTable& table);

/// Writes to path, or to fallback when path is empty. Throws std::runtime_error
/// when the file cannot be written.
void write_csv_to(const std::string& path, std::ostream& fallback, const std::string& config_echo,
                  const CsvTable& table);

struct SvgSeries {
    std::string name;
    std::vector<double> x;
    std::vector<double> y;
};

struct SvgPlot {
    std::string title;
    std::string x_label;
    std::string y_label;
    bool log_x = false;
    std::vector<SvgSeries> series;
    /// Optional horizontal reference lines (value, label).
    std::vector<std::pair<double, std::string>> reference_lines;
};

/// Polylines with axes, tick labels and a legend.
std::string render_svg(const SvgPlot& plot);
void write_svg(const std::string& path, const SvgPlot& plot);

} // namespace halfline::app
