// Copyright 2026 The excitonfb Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "excitonfb/output.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

namespace excitonfb {

namespace {

std::string num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string coord(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.2f", x);
    return buf;
}

std::string short_num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

std::string sanitize(std::string s) {
    for (char& ch : s) {
        if (ch == ',' || ch == '\n' || ch == '\r') ch = ';';
    }
    return s;
}

std::string xml_escape(const std::string& s) {
    std::string out;
    for (char ch : s) {
        switch (ch) {
            case '&':
                out += "&amp;";
                break;
            case '<':
                out += "&lt;";
                break;
            case '>':
                out += "&gt;";
                break;
            case '"':
                out += "&quot;";
                break;
            default:
                out += ch;
        }
    }
    return out;
}

// XML comments may not contain "--".
std::string comment_safe(std::string s) {
    for (std::size_t i = s.find("--"); i != std::string::npos; i = s.find("--", i)) s[i + 1] = '_';
    return s;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    for (std::string field; std::getline(ss, field, ',');) out.push_back(field);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

double parse_num(const std::string& s) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) throw std::invalid_argument("malformed number '" + s + "'");
    return v;
}

std::string x_header(SweepParameter p) {
    return std::string(parameter_name(p)) + " [" + std::string(parameter_unit(p)) + "]";
}

struct Series {
    std::string label;
    std::vector<std::pair<double, double>> points;
};

std::vector<Series> collect_series(const SweepTable& table, bool log_y) {
    std::vector<Series> out;
    std::map<std::string, std::size_t> index;
    for (const SweepRow& row : table.rows) {
        const std::string label =
            (row.series.empty() ? std::string() : row.series + " ") + std::string(channel_name(row.channel));
        auto [it, inserted] = index.try_emplace(label, out.size());
        if (inserted) out.push_back({label, {}});
        const double y = row.stat.mean;
        if (!row.ok() || !std::isfinite(y) || (log_y && !(y > 0.0))) continue;
        auto& pts = out[it->second].points;
        if (!pts.empty() && !(row.x > pts.back().first)) {
            throw std::invalid_argument("write_svg_plot: x values of series '" + label + "' are not increasing");
        }
        pts.emplace_back(row.x, y);
    }
    return out;
}

}  // namespace

std::string format_csv(const SweepTable& table, const Provenance& provenance) {
    std::ostringstream out;
    for (const auto& [key, value] : provenance) out << "# " << key << " = " << value << "\n";
    const bool ensemble = table.ensemble > 1;
    out << "series," << x_header(table.parameter) << ",channel,";
    if (ensemble) {
        out << "sigma_e_mean [eV],sigma_e_stderr [eV],count,status\n";
    } else {
        out << "sigma_e [eV],status\n";
    }
    for (const SweepRow& row : table.rows) {
        out << sanitize(row.series) << "," << num(row.x) << "," << channel_name(row.channel) << ","
            << num(row.stat.mean) << ",";
        if (ensemble) out << num(row.stat.std_error) << "," << row.stat.count << ",";
        out << sanitize(row.status) << "\n";
    }
    return out.str();
}

void write_csv(const SweepTable& table, const std::string& path, const Provenance& provenance) {
    write_file(path, format_csv(table, provenance));
}

SweepTable parse_csv(const std::string& text) {
    std::istringstream in(text);
    SweepTable table;
    bool have_header = false;
    bool ensemble = false;
    for (std::string line; std::getline(in, line);) {
        if (line.empty() || line.front() == '#') continue;
        const auto fields = split_csv(line);
        if (!have_header) {
            if (fields.size() < 5 || fields[0] != "series") throw std::invalid_argument("parse_csv: bad header");
            const std::string& x = fields[1];
            table.parameter = parse_parameter(x.substr(0, x.find(' ')));
            ensemble = fields.size() == 7;
            have_header = true;
            continue;
        }
        if (fields.size() != (ensemble ? 7u : 5u)) throw std::invalid_argument("parse_csv: ragged row '" + line + "'");
        SweepRow row;
        row.series = fields[0];
        row.x = parse_num(fields[1]);
        row.channel = parse_channel(fields[2]);
        row.stat.mean = parse_num(fields[3]);
        if (ensemble) {
            row.stat.std_error = parse_num(fields[4]);
            row.stat.count = static_cast<std::size_t>(std::stoull(fields[5]));
            row.status = fields[6];
        } else {
            row.stat.count = 1;
            row.status = fields[4];
        }
        table.rows.push_back(std::move(row));
    }
    if (!have_header) throw std::invalid_argument("parse_csv: missing header");
    table.ensemble = ensemble ? 2 : 1;
    if (ensemble) {
        for (const SweepRow& r : table.rows) table.ensemble = std::max(table.ensemble, r.stat.count);
    }
    return table;
}

SweepTable read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_csv(ss.str());
}

double AxisMap::px(double x) const {
    const double span = x_max - x_min;
    return left + (span > 0.0 ? (x - x_min) / span : 0.5) * (right - left);
}

double AxisMap::py(double y) const {
    const double v = log_y ? std::log10(y) : y;
    const double span = y_max - y_min;
    return bottom - (span > 0.0 ? (v - y_min) / span : 0.5) * (bottom - top);
}

AxisMap plot_axes(const SweepTable& table, const PlotSpec& spec) {
    AxisMap map;
    map.left = spec.margin_left;
    map.right = spec.width - spec.margin_right;
    map.top = spec.margin_top;
    map.bottom = spec.height - spec.margin_bottom;
    map.log_y = spec.log_y;
    double x_lo = std::numeric_limits<double>::infinity();
    double x_hi = -x_lo;
    double y_lo = x_lo;
    double y_hi = -x_lo;
    for (const Series& s : collect_series(table, spec.log_y)) {
        for (const auto& [x, y] : s.points) {
            const double v = spec.log_y ? std::log10(y) : y;
            x_lo = std::min(x_lo, x);
            x_hi = std::max(x_hi, x);
            y_lo = std::min(y_lo, v);
            y_hi = std::max(y_hi, v);
        }
    }
    if (!std::isfinite(x_lo)) throw std::invalid_argument("write_svg_plot: no plottable points");
    map.x_min = x_lo;
    map.x_max = x_hi;
    map.y_min = y_lo;
    map.y_max = y_hi;
    return map;
}

std::string render_svg(const SweepTable& table, const PlotSpec& spec, const Provenance& provenance) {
    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                                    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};
    const std::vector<Series> series = collect_series(table, spec.log_y);
    const AxisMap map = plot_axes(table, spec);

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << coord(spec.width) << "\" height=\""
        << coord(spec.height) << "\" viewBox=\"0 0 " << coord(spec.width) << " " << coord(spec.height) << "\">\n";
    if (!provenance.empty()) {
        svg << "<!--\n";
        for (const auto& [key, value] : provenance) svg << comment_safe(key + " = " + value) << "\n";
        svg << "-->\n";
    }
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg << "<rect x=\"" << coord(map.left) << "\" y=\"" << coord(map.top) << "\" width=\""
        << coord(map.right - map.left) << "\" height=\"" << coord(map.bottom - map.top)
        << "\" fill=\"none\" stroke=\"black\"/>\n";
    if (!spec.title.empty()) {
        svg << "<text x=\"" << coord((map.left + map.right) / 2) << "\" y=\"" << coord(map.top - 14)
            << "\" text-anchor=\"middle\" font-size=\"15\">" << xml_escape(spec.title) << "</text>\n";
    }

    const int ticks = 5;
    for (int i = 0; i < ticks; ++i) {
        const double fx = map.x_min + (map.x_max - map.x_min) * i / (ticks - 1);
        const double x = map.px(fx);
        svg << "<line x1=\"" << coord(x) << "\" y1=\"" << coord(map.bottom) << "\" x2=\"" << coord(x) << "\" y2=\""
            << coord(map.bottom + 5) << "\" stroke=\"black\"/>\n";
        svg << "<text x=\"" << coord(x) << "\" y=\"" << coord(map.bottom + 20)
            << "\" text-anchor=\"middle\" font-size=\"12\">" << short_num(fx) << "</text>\n";
        const double fv = map.y_min + (map.y_max - map.y_min) * i / (ticks - 1);
        const double y = map.py(spec.log_y ? std::pow(10.0, fv) : fv);
        svg << "<line x1=\"" << coord(map.left - 5) << "\" y1=\"" << coord(y) << "\" x2=\"" << coord(map.left)
            << "\" y2=\"" << coord(y) << "\" stroke=\"black\"/>\n";
        svg << "<text x=\"" << coord(map.left - 8) << "\" y=\"" << coord(y + 4)
            << "\" text-anchor=\"end\" font-size=\"12\">" << short_num(spec.log_y ? std::pow(10.0, fv) : fv)
            << "</text>\n";
    }
    svg << "<text x=\"" << coord((map.left + map.right) / 2) << "\" y=\"" << coord(spec.height - 15)
        << "\" text-anchor=\"middle\" font-size=\"13\">" << parameter_name(table.parameter) << " ["
        << parameter_unit(table.parameter) << "]</text>\n";
    svg << "<text x=\"20\" y=\"" << coord((map.top + map.bottom) / 2) << "\" text-anchor=\"middle\" font-size=\"13\""
        << " transform=\"rotate(-90 20 " << coord((map.top + map.bottom) / 2) << ")\">sigma_e [eV]"
        << (spec.log_y ? " (log)" : "") << "</text>\n";

    for (std::size_t i = 0; i < series.size(); ++i) {
        const char* color = palette[i % std::size(palette)];
        svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
        for (std::size_t k = 0; k < series[i].points.size(); ++k) {
            const auto& [x, y] = series[i].points[k];
            svg << (k ? " " : "") << coord(map.px(x)) << "," << coord(map.py(y));
        }
        svg << "\"/>\n";
        const double ly = map.top + 10 + 20.0 * static_cast<double>(i);
        svg << "<line x1=\"" << coord(map.right + 12) << "\" y1=\"" << coord(ly) << "\" x2=\""
            << coord(map.right + 36) << "\" y2=\"" << coord(ly) << "\" stroke=\"" << color
            << "\" stroke-width=\"2\"/>\n";
        svg << "<text x=\"" << coord(map.right + 42) << "\" y=\"" << coord(ly + 4) << "\" font-size=\"12\">"
            << xml_escape(series[i].label) << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

void write_svg_plot(const SweepTable& table, const std::string& path, const PlotSpec& spec,
                    const Provenance& provenance) {
    write_file(path, render_svg(table, spec, provenance));
}

}  // namespace excitonfb
