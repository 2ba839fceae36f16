#include "halfline/app/output.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace halfline::app {

namespace {

std::string cell_text(const CsvCell& cell) {
    if (const double* d = std::get_if<double>(&cell)) return format_number(*d);
    if (const long long* i = std::get_if<long long>(&cell)) return std::to_string(*i);
    return std::get<std::string>(cell);
}

std::string escape_xml(const std::string& s) {
    std::string out;
    for (char ch : s) {
        switch (ch) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += ch;
        }
    }
    return out;
}

std::string fixed(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

std::string tick_label(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"};

} // namespace

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_csv(std::ostream& out, const std::string& config_echo, const CsvTable& table) {
    std::istringstream lines(config_echo);
    std::string line;
    while (std::getline(lines, line)) out << "# " << line << "\n";
    for (std::size_t i = 0; i < table.header.size(); ++i) {
        out << (i ? "," : "") << table.header[i];
    }
    out << "\n";
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << cell_text(row[i]);
        out << "\n";
    }
}

void write_csv_to(const std::string& path, std::ostream& fallback, const std::string& config_echo,
                  const CsvTable& table) {
    if (path.empty()) {
        write_csv(fallback, config_echo, table);
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    write_csv(out, config_echo, table);
    if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

std::string render_svg(const SvgPlot& plot) {
    constexpr double width = 720.0, height = 440.0;
    constexpr double left = 80.0, right = 190.0, top = 40.0, bottom = 60.0;
    const double pw = width - left - right;
    const double ph = height - top - bottom;

    auto tx = [&](double x) { return plot.log_x ? std::log10(x) : x; };
    double x0 = std::numeric_limits<double>::infinity(), x1 = -x0;
    double y0 = x0, y1 = -x0;
    for (const auto& s : plot.series) {
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!std::isfinite(s.y[i]) || (plot.log_x && !(s.x[i] > 0.0))) continue;
            x0 = std::min(x0, tx(s.x[i]));
            x1 = std::max(x1, tx(s.x[i]));
            y0 = std::min(y0, s.y[i]);
            y1 = std::max(y1, s.y[i]);
        }
    }
    for (const auto& r : plot.reference_lines) {
        y0 = std::min(y0, r.first);
        y1 = std::max(y1, r.first);
    }
    if (!(x1 > x0)) { x0 -= 1.0; x1 += 1.0; }
    if (!(y1 > y0)) { y0 -= 1.0; y1 += 1.0; }
    const double pad = 0.05 * (y1 - y0);
    y0 -= pad;
    y1 += pad;
    auto px = [&](double x) { return left + (tx(x) - x0) / (x1 - x0) * pw; };
    auto py = [&](double y) { return top + (y1 - y) / (y1 - y0) * ph; };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
       << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << left + pw / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">"
       << escape_xml(plot.title) << "</text>\n";
    os << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << pw << "\" height=\"" << ph
       << "\" fill=\"none\" stroke=\"black\"/>\n";

    for (int i = 0; i <= 5; ++i) {
        const double fy = y0 + (y1 - y0) * i / 5.0;
        const double yy = py(fy);
        os << "<line x1=\"" << left - 5 << "\" y1=\"" << fixed(yy, 2) << "\" x2=\"" << left
           << "\" y2=\"" << fixed(yy, 2) << "\" stroke=\"black\"/>\n";
        os << "<text x=\"" << left - 8 << "\" y=\"" << fixed(yy + 4, 2)
           << "\" text-anchor=\"end\">" << tick_label(fy) << "</text>\n";
        const double fx = x0 + (x1 - x0) * i / 5.0;
        const double xx = left + pw * i / 5.0;
        os << "<line x1=\"" << fixed(xx, 2) << "\" y1=\"" << top + ph << "\" x2=\"" << fixed(xx, 2)
           << "\" y2=\"" << top + ph + 5 << "\" stroke=\"black\"/>\n";
        os << "<text x=\"" << fixed(xx, 2) << "\" y=\"" << top + ph + 20
           << "\" text-anchor=\"middle\">" << tick_label(plot.log_x ? std::pow(10.0, fx) : fx)
           << "</text>\n";
    }
    os << "<text x=\"" << left + pw / 2 << "\" y=\"" << height - 15
       << "\" text-anchor=\"middle\">" << escape_xml(plot.x_label) << "</text>\n";
    os << "<text x=\"18\" y=\"" << top + ph / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
       << top + ph / 2 << ")\">" << escape_xml(plot.y_label) << "</text>\n";

    for (const auto& r : plot.reference_lines) {
        const double yy = py(r.first);
        os << "<line x1=\"" << left << "\" y1=\"" << fixed(yy, 2) << "\" x2=\"" << left + pw
           << "\" y2=\"" << fixed(yy, 2) << "\" stroke=\"gray\" stroke-dasharray=\"6,4\"/>\n";
        os << "<text x=\"" << left + pw + 6 << "\" y=\"" << fixed(yy + 4, 2) << "\" fill=\"gray\">"
           << escape_xml(r.second) << "</text>\n";
    }

    for (std::size_t k = 0; k < plot.series.size(); ++k) {
        const auto& s = plot.series[k];
        const char* color = kColors[k % (sizeof kColors / sizeof kColors[0])];
        os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
        bool first = true;
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!std::isfinite(s.y[i]) || (plot.log_x && !(s.x[i] > 0.0))) continue;
            os << (first ? "" : " ") << fixed(px(s.x[i]), 2) << "," << fixed(py(s.y[i]), 2);
            first = false;
        }
        os << "\"/>\n";
        const double ly = top + 14.0 + 18.0 * static_cast<double>(k);
        os << "<line x1=\"" << left + pw + 10 << "\" y1=\"" << ly << "\" x2=\"" << left + pw + 30
           << "\" y2=\"" << ly << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
        os << "<text x=\"" << left + pw + 36 << "\" y=\"" << ly + 4 << "\">" << escape_xml(s.name)
           << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

void write_svg(const std::string& path, const SvgPlot& plot) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << render_svg(plot);
}

} // namespace halfline::app
