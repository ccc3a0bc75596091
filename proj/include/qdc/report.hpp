#pragma once

// Machine-readable outputs: CSV sweep tables, JSON fits and tomograms, and
// self-contained SVG renderings. All numbers are printed with the shortest
// round-tripping decimal form so repeated runs are byte-identical; wall-clock
// timestamps appear only in the run manifest.

#include <charconv>
#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qdc/experiment.hpp"
#include "qdc/fringe_fit.hpp"
#include "qdc/tomography.hpp"

namespace qdc {

inline constexpr const char* kToolName = "qdc";
inline constexpr const char* kToolVersion = "0.1.0";

using json = nlohmann::ordered_json;

inline std::string format_number(double v) {
    std::array<char, 32> buf{};
    const auto [p, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), p);
}

// Fixed-precision variant for SVG coordinates.
inline std::string format_fixed(double v, int decimals = 2) {
    std::array<char, 48> buf{};
    const auto [p, ec] =
        std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::fixed, decimals);
    return std::string(buf.data(), p);
}

inline void write_text_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    out << content;
}

inline std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open for reading: " + path.string());
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

// ---------------------------------------------------------------- sweep CSV

inline std::string sweep_csv(const std::vector<DetectionRecord>& records, CircuitLevel level) {
    std::string out = "alpha_rad,theta_rad,level,p\n";
    for (const DetectionRecord& r : records) {
        out += format_number(r.alpha);
        out += ',';
        out += format_number(r.theta);
        out += ',';
        out += to_string(level);
        out += ',';
        out += format_number(r.p);
        out += '\n';
    }
    return out;
}

// --------------------------------------------------------------- JSON forms

inline json records_json(const std::vector<DetectionRecord>& records, CircuitLevel level) {
    json arr = json::array();
    for (const DetectionRecord& r : records)
        arr.push_back({{"alpha_rad", r.alpha},
                       {"theta_rad", r.theta},
                       {"level", to_string(level)},
                       {"p", r.p}});
    return arr;
}

inline json fit_json(double alpha, const FringeFit& f) {
    return {{"alpha_rad", alpha},
            {"offset", f.offset},
            {"amplitude", f.amplitude},
            {"phase_rad", f.phase},
            {"rms_residual", f.rms_residual}};
}

inline json expectations_json(const PauliExpectations& e) {
    json obj = json::object();
    for (int i = 0; i < PauliExpectations::kCount; ++i)
        obj[PauliExpectations::labels()[i]] = e.value(i);
    return obj;
}

inline PauliExpectations expectations_from_json(const json& obj) {
    PauliExpectations e;
    for (int i = 0; i < PauliExpectations::kCount; ++i)
        e.set(i, obj.at(PauliExpectations::labels()[i]).get<double>());
    return e;
}

inline json matrix_json(const Mat4& m) {
    json real = json::array(), imag = json::array();
    for (int r = 0; r < 4; ++r) {
        json row_r = json::array(), row_i = json::array();
        for (int c = 0; c < 4; ++c) {
            row_r.push_back(m(r, c).real());
            row_i.push_back(m(r, c).imag());
        }
        real.push_back(row_r);
        imag.push_back(row_i);
    }
    return {{"real", real}, {"imag", imag}};
}

inline Mat4 matrix_from_json(const json& obj) {
    Mat4 m;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c)
            m(r, c) = cplx(obj.at("real").at(r).at(c).get<double>(),
                           obj.at("imag").at(r).at(c).get<double>());
    return m;
}

// ----------------------------------------------------------------- manifest

inline json dephase_json(const DephaseSpec& spec) {
    json obj = {{"mode", spec.mode == DephaseSpec::Mode::Ideal ? "ideal" : "gradient"}};
    if (spec.mode == DephaseSpec::Mode::Gradient) {
        obj["samples"] = spec.samples;
        obj["refocus"] = spec.refocus;
        obj["gyro_ratio"] = spec.gyro_ratio;
    }
    return obj;
}

inline std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

/// Base manifest; each command appends its own config echo and output list.
inline json make_manifest(const std::string& command, const SpinSystem& sys, std::uint64_t seed) {
    return {{"tool", kToolName},
            {"version", kToolVersion},
            {"command", command},
            {"generated_utc", utc_timestamp()},
            {"j_coupling_hz", sys.j_coupling_hz},
            {"epsilon", sys.epsilon},
            {"seed", seed}};
}

// ------------------------------------------------------------------ SVG

namespace svg {

inline const std::array<const char*, 8>& palette() {
    static const std::array<const char*, 8> colors = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                                      "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};
    return colors;
}

inline std::string angle_label(double v) {
    // Compact label for common fractions of pi.
    const double q = v / kPi;
    const double r = std::round(q * 8.0) / 8.0;
    if (std::abs(q - r) < 1e-9) {
        if (r == 0.0) return "0";
        if (r == 1.0) return "&#960;";
        if (r == 2.0) return "2&#960;";
        if (r == 0.5) return "&#960;/2";
        if (r == 1.5) return "3&#960;/2";
        if (r == 0.25) return "&#960;/4";
        if (r == 0.75) return "3&#960;/4";
    }
    return format_fixed(v, 3);
}

}  // namespace svg

/// Line plot of detection probability against theta, one series per alpha.
inline std::string sweep_svg(const std::vector<DetectionRecord>& records) {
    const double width = 760, height = 480;
    const double ml = 64, mr = 150, mt = 36, mb = 52;
    const double pw = width - ml - mr, ph = height - mt - mb;

    double tmin = records.front().theta, tmax = records.front().theta;
    for (const DetectionRecord& r : records) {
        tmin = std::min(tmin, r.theta);
        tmax = std::max(tmax, r.theta);
    }
    if (tmax <= tmin) tmax = tmin + 1.0;
    auto px = [&](double theta) { return ml + (theta - tmin) / (tmax - tmin) * pw; };
    auto py = [&](double p) { return mt + (1.0 - p) * ph; };

    std::vector<double> alphas;
    for (const DetectionRecord& r : records)
        if (alphas.empty() || std::abs(alphas.back() - r.alpha) > 1e-15) {
            bool seen = false;
            for (double a : alphas) seen = seen || std::abs(a - r.alpha) <= 1e-15;
            if (!seen) alphas.push_back(r.alpha);
        }

    std::string s;
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + format_fixed(width, 0) +
         "\" height=\"" + format_fixed(height, 0) + "\" viewBox=\"0 0 " + format_fixed(width, 0) +
         " " + format_fixed(height, 0) + "\">\n";
    s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    s += "<text x=\"" + format_fixed(ml, 0) + "\" y=\"22\" font-family=\"sans-serif\" font-size=\"15\">"
         "detection probability Tr(&#916;&#961; |10&#10217;&#10216;10|) vs path phase</text>\n";

    // grid and axes
    for (int i = 0; i <= 4; ++i) {
        const double p = 0.25 * i;
        s += "<line x1=\"" + format_fixed(ml, 1) + "\" y1=\"" + format_fixed(py(p), 1) + "\" x2=\"" +
             format_fixed(ml + pw, 1) + "\" y2=\"" + format_fixed(py(p), 1) +
             "\" stroke=\"#dddddd\"/>\n";
        s += "<text x=\"" + format_fixed(ml - 8, 1) + "\" y=\"" + format_fixed(py(p) + 4, 1) +
             "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">" +
             format_fixed(p, 2) + "</text>\n";
    }
    for (int i = 0; i <= 4; ++i) {
        const double theta = tmin + (tmax - tmin) * i / 4.0;
        s += "<line x1=\"" + format_fixed(px(theta), 1) + "\" y1=\"" + format_fixed(mt, 1) +
             "\" x2=\"" + format_fixed(px(theta), 1) + "\" y2=\"" + format_fixed(mt + ph, 1) +
             "\" stroke=\"#eeeeee\"/>\n";
        s += "<text x=\"" + format_fixed(px(theta), 1) + "\" y=\"" + format_fixed(mt + ph + 18, 1) +
             "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" +
             svg::angle_label(theta) + "</text>\n";
    }
    s += "<rect x=\"" + format_fixed(ml, 1) + "\" y=\"" + format_fixed(mt, 1) + "\" width=\"" +
         format_fixed(pw, 1) + "\" height=\"" + format_fixed(ph, 1) +
         "\" fill=\"none\" stroke=\"#333333\"/>\n";
    s += "<text x=\"" + format_fixed(ml + pw / 2, 1) + "\" y=\"" + format_fixed(height - 14, 1) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">&#952; (rad)</text>\n";

    // one polyline + markers per alpha series
    for (size_t si = 0; si < alphas.size(); ++si) {
        const char* color = svg::palette()[si % svg::palette().size()];
        std::string pts;
        for (const DetectionRecord& r : records) {
            if (std::abs(r.alpha - alphas[si]) > 1e-15) continue;
            pts += format_fixed(px(r.theta), 1) + "," + format_fixed(py(r.p), 1) + " ";
        }
        s += "<polyline points=\"" + pts + "\" fill=\"none\" stroke=\"" + color +
             "\" stroke-width=\"1.6\"/>\n";
        for (const DetectionRecord& r : records) {
            if (std::abs(r.alpha - alphas[si]) > 1e-15) continue;
            s += "<circle cx=\"" + format_fixed(px(r.theta), 1) + "\" cy=\"" +
                 format_fixed(py(r.p), 1) + "\" r=\"2.4\" fill=\"" + color + "\"/>\n";
        }
        const double ly = mt + 16 + 18 * si;
        s += "<line x1=\"" + format_fixed(ml + pw + 12, 1) + "\" y1=\"" + format_fixed(ly - 4, 1) +
             "\" x2=\"" + format_fixed(ml + pw + 34, 1) + "\" y2=\"" + format_fixed(ly - 4, 1) +
             "\" stroke=\"" + color + "\" stroke-width=\"2\"/>\n";
        s += "<text x=\"" + format_fixed(ml + pw + 40, 1) + "\" y=\"" + format_fixed(ly, 1) +
             "\" font-family=\"sans-serif\" font-size=\"12\">&#945; = " + svg::angle_label(alphas[si]) +
             "</text>\n";
    }
    s += "</svg>\n";
    return s;
}

/// Faux-3D bar rendering of the real part of a deviation matrix in the
/// computational basis, rows drawn back to front.
inline std::string tomo_svg(const Mat4& m, const std::string& title) {
    const double width = 640, height = 480;
    const double cell = 74, depth_x = 30, depth_y = 20;
    const double ox = 120, oy = 330;     // origin of the front-left cell
    const double bar = 44, zscale = 300; // bar footprint and height scale

    double vmax = 0.5;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) vmax = std::max(vmax, std::abs(m(r, c).real()));
    const double zs = 0.5 * zscale / vmax;

    static const char* basis[4] = {"|00&#10217;", "|01&#10217;", "|10&#10217;", "|11&#10217;"};

    std::string s;
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + format_fixed(width, 0) +
         "\" height=\"" + format_fixed(height, 0) + "\" viewBox=\"0 0 " + format_fixed(width, 0) +
         " " + format_fixed(height, 0) + "\">\n";
    s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    s += "<text x=\"24\" y=\"28\" font-family=\"sans-serif\" font-size=\"15\">" + title + "</text>\n";

    // base plane outline
    {
        const double x0 = ox, y0 = oy;
        const double x1 = ox + 4 * cell, y1 = oy;
        const double x2 = ox + 4 * cell + 4 * depth_x, y2 = oy - 4 * depth_y;
        const double x3 = ox + 4 * depth_x, y3 = oy - 4 * depth_y;
        s += "<polygon points=\"" + format_fixed(x0, 1) + "," + format_fixed(y0, 1) + " " +
             format_fixed(x1, 1) + "," + format_fixed(y1, 1) + " " + format_fixed(x2, 1) + "," +
             format_fixed(y2, 1) + " " + format_fixed(x3, 1) + "," + format_fixed(y3, 1) +
             "\" fill=\"#f7f7f7\" stroke=\"#cccccc\"/>\n";
    }

    // column labels (front edge) and row labels (left edge)
    for (int c = 0; c < 4; ++c)
        s += "<text x=\"" + format_fixed(ox + c * cell + bar / 2 + 6, 1) + "\" y=\"" +
             format_fixed(oy + 22, 1) +
             "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" + basis[c] +
             "</text>\n";
    for (int r = 0; r < 4; ++r)
        s += "<text x=\"" + format_fixed(ox - 14 + r * depth_x, 1) + "\" y=\"" +
             format_fixed(oy - r * depth_y - 4, 1) +
             "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">" + basis[r] +
             "</text>\n";

    // bars, back row first
    for (int r = 3; r >= 0; --r) {
        for (int c = 0; c < 4; ++c) {
            const double v = m(r, c).real();
            const double bx = ox + c * cell + r * depth_x + (cell - bar) / 2.0;
            const double by = oy - r * depth_y;
            const double h = v * zs;
            const double top = by - h;
            const bool neg = v < 0.0;
            const char *front = neg ? "#e07b54" : "#4f81bd";
            const char *side = neg ? "#b35434" : "#2f5d94";
            const char *cap = neg ? "#f3a986" : "#7ba7d7";
            if (std::abs(v) * zs < 0.75) {
                s += "<polygon points=\"" + format_fixed(bx, 1) + "," + format_fixed(by, 1) + " " +
                     format_fixed(bx + bar, 1) + "," + format_fixed(by, 1) + " " +
                     format_fixed(bx + bar + depth_x * 0.45, 1) + "," +
                     format_fixed(by - depth_y * 0.45, 1) + " " +
                     format_fixed(bx + depth_x * 0.45, 1) + "," + format_fixed(by - depth_y * 0.45, 1) +
                     "\" fill=\"#e0e0e0\" stroke=\"#aaaaaa\" stroke-width=\"0.5\"/>\n";
                continue;
            }
            // front face
            s += "<rect x=\"" + format_fixed(bx, 1) + "\" y=\"" + format_fixed(std::min(by, top), 1) +
                 "\" width=\"" + format_fixed(bar, 1) + "\" height=\"" +
                 format_fixed(std::abs(h), 1) + "\" fill=\"" + front +
                 "\" stroke=\"#20344f\" stroke-width=\"0.6\"/>\n";
            // side face
            s += "<polygon points=\"" + format_fixed(bx + bar, 1) + "," + format_fixed(by, 1) + " " +
                 format_fixed(bx + bar + depth_x * 0.45, 1) + "," +
                 format_fixed(by - depth_y * 0.45, 1) + " " +
                 format_fixed(bx + bar + depth_x * 0.45, 1) + "," +
                 format_fixed(top - depth_y * 0.45, 1) + " " + format_fixed(bx + bar, 1) + "," +
                 format_fixed(top, 1) + "\" fill=\"" + side +
                 "\" stroke=\"#20344f\" stroke-width=\"0.6\"/>\n";
            // cap
            s += "<polygon points=\"" + format_fixed(bx, 1) + "," + format_fixed(top, 1) + " " +
                 format_fixed(bx + bar, 1) + "," + format_fixed(top, 1) + " " +
                 format_fixed(bx + bar + depth_x * 0.45, 1) + "," +
                 format_fixed(top - depth_y * 0.45, 1) + " " + format_fixed(bx + depth_x * 0.45, 1) +
                 "," + format_fixed(top - depth_y * 0.45, 1) + "\" fill=\"" + cap +
                 "\" stroke=\"#20344f\" stroke-width=\"0.6\"/>\n";
            // value label for the taller bars
            if (std::abs(v) >= 0.05)
                s += "<text x=\"" + format_fixed(bx + bar / 2, 1) + "\" y=\"" +
                     format_fixed(top - depth_y * 0.45 - 4, 1) +
                     "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"10\">" +
                     format_fixed(v, 2) + "</text>\n";
        }
    }
    s += "</svg>\n";
    return s;
}

}  // namespace qdc
