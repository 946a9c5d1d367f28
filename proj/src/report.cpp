// Copyright 2026 The tpe Authors
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


#include "tpe/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

namespace tpe {

namespace {

std::string format_double(double v) {
    if (std::isnan(v)) return "";
    char buf[32];
    const auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string xml_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string num(double v) {
    std::ostringstream ss;
    ss.precision(6);
    ss << v;
    return ss.str();
}

// Piecewise-linear viridis approximation.
std::string colour(double f) {
    static const double stops[5][3] = {{68, 1, 84}, {59, 82, 139}, {33, 145, 140}, {94, 201, 98}, {253, 231, 37}};
    if (!std::isfinite(f)) return "#cccccc";
    f = std::clamp(f, 0.0, 1.0) * 4.0;
    const int i = std::min(3, static_cast<int>(f));
    const double t = f - i;
    char buf[8];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", static_cast<int>(stops[i][0] + t * (stops[i + 1][0] - stops[i][0])),
                  static_cast<int>(stops[i][1] + t * (stops[i + 1][1] - stops[i][1])),
                  static_cast<int>(stops[i][2] + t * (stops[i + 1][2] - stops[i][2])));
    return buf;
}

struct Scale {
    double lo, hi;
    bool log;
    double pix0, pix1;
    double operator()(double v) const {
        const double a = log ? std::log10(lo) : lo, b = log ? std::log10(hi) : hi;
        const double x = log ? std::log10(v) : v;
        return b == a ? 0.5 * (pix0 + pix1) : pix0 + (x - a) / (b - a) * (pix1 - pix0);
    }
};

std::vector<double> column_values(const SweepResult& r, std::size_t c) {
    std::vector<double> v;
    for (const auto& row : r.rows) {
        const double* d = std::get_if<double>(&row[c]);
        v.push_back(d ? *d : std::numeric_limits<double>::quiet_NaN());
    }
    return v;
}

std::vector<double> distinct(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

std::pair<double, double> finite_range(const std::vector<double>& v) {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (double x : v)
        if (std::isfinite(x)) {
            lo = std::min(lo, x);
            hi = std::max(hi, x);
        }
    if (!(lo <= hi)) return {0.0, 1.0};
    if (lo == hi) return {lo - 0.5, hi + 0.5};
    return {lo, hi};
}

bool is_log(const SweepResult& r, const std::string& name) {
    return std::find(r.metadata.log_axes.begin(), r.metadata.log_axes.end(), name) != r.metadata.log_axes.end();
}

void axis_labels(std::ostringstream& s, const Scale& sx, const Scale& sy, const std::string& xl, const std::string& yl,
                 double top, double bottom) {
    s << "<line x1=\"" << sx.pix0 << "\" y1=\"" << bottom << "\" x2=\"" << sx.pix1 << "\" y2=\"" << bottom
      << "\" stroke=\"black\"/>\n";
    s << "<line x1=\"" << sx.pix0 << "\" y1=\"" << top << "\" x2=\"" << sx.pix0 << "\" y2=\"" << bottom
      << "\" stroke=\"black\"/>\n";
    s << "<text x=\"" << sx.pix0 << "\" y=\"" << bottom + 18 << "\" font-size=\"11\">" << num(sx.lo) << "</text>\n";
    s << "<text x=\"" << sx.pix1 << "\" y=\"" << bottom + 18 << "\" font-size=\"11\" text-anchor=\"end\">" << num(sx.hi)
      << "</text>\n";
    s << "<text x=\"" << 0.5 * (sx.pix0 + sx.pix1) << "\" y=\"" << bottom + 34
      << "\" font-size=\"12\" text-anchor=\"middle\">" << xml_escape(xl) << (sx.log ? " (log)" : "") << "</text>\n";
    s << "<text x=\"" << sx.pix0 - 6 << "\" y=\"" << bottom << "\" font-size=\"11\" text-anchor=\"end\">" << num(sy.lo)
      << "</text>\n";
    s << "<text x=\"" << sx.pix0 - 6 << "\" y=\"" << top + 10 << "\" font-size=\"11\" text-anchor=\"end\">"
      << num(sy.hi) << "</text>\n";
    s << "<text x=\"16\" y=\"" << 0.5 * (top + bottom) << "\" font-size=\"12\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
      << 0.5 * (top + bottom) << ")\">" << xml_escape(yl) << (sy.log ? " (log)" : "") << "</text>\n";
}

std::string pick_column(const SweepResult& r, const std::string& column) {
    if (!column.empty()) return column;
    for (const auto& c : r.columns)
        if (c.ends_with(".concurrence") || c.ends_with(".spectrum")) return c;
    for (std::size_t i = 0; i < r.columns.size(); ++i)
        if (!r.rows.empty() && std::holds_alternative<double>(r.rows[0][i]) &&
            std::find(r.metadata.axes.begin(), r.metadata.axes.end(), r.columns[i]) == r.metadata.axes.end())
            return r.columns[i];
    return "";
}

}  // namespace

std::set<ReportFormat> parse_formats(const std::string& list) {
    std::set<ReportFormat> out;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item == "csv") out.insert(ReportFormat::Csv);
        else if (item == "json") out.insert(ReportFormat::Json);
        else if (item == "svg") out.insert(ReportFormat::Svg);
        else throw ConfigError("unknown report format: " + item);
    }
    if (out.empty()) throw ConfigError("no report format given");
    return out;
}

void write_csv(const SweepResult& r, std::ostream& out) {
    for (std::size_t i = 0; i < r.columns.size(); ++i) out << (i ? "," : "") << csv_field(r.columns[i]);
    out << "\r\n";
    for (const auto& row : r.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out << ',';
            if (const double* d = std::get_if<double>(&row[i])) out << format_double(*d);
            else out << csv_field(std::get<std::string>(row[i]));
        }
        out << "\r\n";
    }
}

std::string to_csv(const SweepResult& r) {
    std::ostringstream ss;
    write_csv(r, ss);
    return ss.str();
}

nlohmann::json to_json(const SweepResult& r) {
    nlohmann::json j;
    j["name"] = r.name;
    j["columns"] = r.columns;
    j["rows"] = nlohmann::json::array();
    for (const auto& row : r.rows) {
        nlohmann::json jr = nlohmann::json::array();
        for (const Cell& c : row) {
            if (const double* d = std::get_if<double>(&c)) jr.push_back(std::isfinite(*d) ? nlohmann::json(*d) : nlohmann::json());
            else jr.push_back(std::get<std::string>(c));
        }
        j["rows"].push_back(std::move(jr));
    }
    const SweepMetadata& m = r.metadata;
    j["metadata"] = {{"spec_hash", m.spec_hash}, {"code_version", m.code_version}, {"wall_time_s", m.wall_time_s},
                     {"threads", m.threads}, {"axes", m.axes}, {"log_axes", m.log_axes}};
    return j;
}

SweepResult result_from_json(const nlohmann::json& j) {
    SweepResult r;
    try {
        r.name = j.at("name").get<std::string>();
        r.columns = j.at("columns").get<std::vector<std::string>>();
        for (const auto& jr : j.at("rows")) {
            std::vector<Cell> row;
            for (const auto& c : jr) {
                if (c.is_null()) row.emplace_back(std::numeric_limits<double>::quiet_NaN());
                else if (c.is_number()) row.emplace_back(c.get<double>());
                else row.emplace_back(c.get<std::string>());
            }
            if (row.size() != r.columns.size()) throw Error("row width does not match the columns");
            r.rows.push_back(std::move(row));
        }
        const auto& m = j.at("metadata");
        r.metadata.spec_hash = m.at("spec_hash").get<std::string>();
        r.metadata.code_version = m.at("code_version").get<std::string>();
        r.metadata.wall_time_s = m.at("wall_time_s").get<double>();
        r.metadata.threads = m.at("threads").get<int>();
        r.metadata.axes = m.at("axes").get<std::vector<std::string>>();
        r.metadata.log_axes = m.at("log_axes").get<std::vector<std::string>>();
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("malformed report: ") + e.what());
    }
    return r;
}

std::string to_svg(const SweepResult& r, const std::string& column) {
    std::vector<std::string> dims = r.metadata.axes;
    if (std::find(r.columns.begin(), r.columns.end(), "t") != r.columns.end()) dims.push_back("t");
    if (dims.empty() || dims.size() > 2 || r.rows.empty()) return "";
    const std::string value = pick_column(r, column);
    if (value.empty()) return "";
    const std::vector<double> z = column_values(r, r.column(value));
    const double W = 640, H = 420, left = 70, right = 120, top = 30, bottom = H - 60;

    std::ostringstream s;
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" viewBox=\"0 0 " << W
      << ' ' << H << "\">\n";
    s << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    s << "<text x=\"" << W / 2 << "\" y=\"18\" font-size=\"13\" text-anchor=\"middle\">" << xml_escape(r.name + ": " + value)
      << "</text>\n";

    if (dims.size() == 1) {
        const std::vector<double> x = column_values(r, r.column(dims[0]));
        const auto [xlo, xhi] = finite_range(x);
        // Every concurrence (or spectrum) column shares the plot when no column was named.
        std::vector<std::string> series{value};
        if (column.empty() && value.find('.') != std::string::npos)
            for (const auto& c : r.columns)
                if (c != value && c.ends_with(value.substr(value.find('.')))) series.push_back(c);
        std::vector<double> all;
        for (const auto& c : series) {
            const auto v = column_values(r, r.column(c));
            all.insert(all.end(), v.begin(), v.end());
        }
        const auto [ylo, yhi] = finite_range(all);
        const Scale sx{xlo, xhi, is_log(r, dims[0]), left, W - right};
        const Scale sy{ylo, yhi, false, bottom, top};
        axis_labels(s, sx, sy, dims[0], value, top, bottom);
        static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};
        for (std::size_t k = 0; k < series.size(); ++k) {
            const auto y = column_values(r, r.column(series[k]));
            s << "<polyline fill=\"none\" stroke=\"" << palette[k % 4] << "\" stroke-width=\"1.5\" points=\"";
            for (std::size_t i = 0; i < x.size(); ++i)
                if (std::isfinite(x[i]) && std::isfinite(y[i])) s << sx(x[i]) << ',' << sy(y[i]) << ' ';
            s << "\"/>\n";
            s << "<text x=\"" << W - right + 8 << "\" y=\"" << top + 14 * (k + 1) << "\" font-size=\"11\" fill=\""
              << palette[k % 4] << "\">" << xml_escape(series[k]) << "</text>\n";
        }
    } else {
        const std::vector<double> x = column_values(r, r.column(dims[1]));
        const std::vector<double> y = column_values(r, r.column(dims[0]));
        const std::vector<double> xs = distinct(x), ys = distinct(y);
        const bool lx = is_log(r, dims[1]), ly = is_log(r, dims[0]);
        const Scale sx{xs.front(), xs.back(), lx, left, W - right};
        const Scale sy{ys.front(), ys.back(), ly, bottom, top};
        const auto [zlo, zhi] = finite_range(z);
        auto cell_edges = [](const std::vector<double>& v, std::size_t i, const Scale& sc) {
            const double c = sc(v[i]);
            const double a = i > 0 ? 0.5 * (c + sc(v[i - 1])) : c - (v.size() > 1 ? 0.5 * (sc(v[1]) - c) : 5.0);
            const double b = i + 1 < v.size() ? 0.5 * (c + sc(v[i + 1])) : c + (v.size() > 1 ? 0.5 * (c - sc(v[i - 1])) : 5.0);
            return std::pair{std::min(a, b), std::max(a, b)};
        };
        for (std::size_t k = 0; k < z.size(); ++k) {
            const std::size_t ix = std::lower_bound(xs.begin(), xs.end(), x[k]) - xs.begin();
            const std::size_t iy = std::lower_bound(ys.begin(), ys.end(), y[k]) - ys.begin();
            const auto [x0, x1] = cell_edges(xs, ix, sx);
            const auto [y0, y1] = cell_edges(ys, iy, sy);
            s << "<rect x=\"" << x0 << "\" y=\"" << y0 << "\" width=\"" << x1 - x0 << "\" height=\"" << y1 - y0
              << "\" fill=\"" << colour((z[k] - zlo) / (zhi - zlo)) << "\"/>\n";
        }
        axis_labels(s, sx, sy, dims[1], dims[0], top, bottom);
        for (int i = 0; i <= 10; ++i) {
            const double yy = bottom - (bottom - top) * (i / 10.0);
            s << "<rect x=\"" << W - right + 20 << "\" y=\"" << yy - (bottom - top) / 10.0 << "\" width=\"16\" height=\""
              << (bottom - top) / 10.0 << "\" fill=\"" << colour(i / 10.0) << "\"/>\n";
        }
        s << "<text x=\"" << W - right + 40 << "\" y=\"" << bottom << "\" font-size=\"11\">" << num(zlo) << "</text>\n";
        s << "<text x=\"" << W - right + 40 << "\" y=\"" << top + 10 << "\" font-size=\"11\">" << num(zhi) << "</text>\n";
    }
    s << "</svg>\n";
    return s.str();
}

std::vector<std::filesystem::path> emit_report(const SweepResult& r, const std::filesystem::path& dir,
                                               const std::set<ReportFormat>& formats) {
    if (r.rows.empty()) throw Error("nothing to report");
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw Error("cannot create " + dir.string() + ": " + ec.message());
    std::vector<std::filesystem::path> written;
    auto write = [&](const std::string& ext, const std::string& text) {
        const std::filesystem::path path = dir / (r.name + "." + ext);
        std::ofstream out(path, std::ios::binary);
        if (!out) throw Error("cannot write " + path.string());
        out << text;
        if (!out) throw Error("cannot write " + path.string());
        written.push_back(path);
    };
    if (formats.count(ReportFormat::Csv)) write("csv", to_csv(r));
    if (formats.count(ReportFormat::Json)) write("json", to_json(r).dump(2) + "\n");
    if (formats.count(ReportFormat::Svg)) {
        const std::string svg = to_svg(r);
        if (!svg.empty()) write("svg", svg);
    }
    return written;
}

}  // namespace tpe
