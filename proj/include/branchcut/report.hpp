#pragma once

// Deterministic artifact writers.  All floating-point output goes through
// one %.17g formatter so CSV bytes round-trip to the exact doubles and
// repeated runs produce identical files.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "branchcut/audit.hpp"
#include "branchcut/complex_ops.hpp"
#include "branchcut/region.hpp"

namespace branchcut {

struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline std::string fmt_g17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

inline void write_text_file(const std::filesystem::path& path, const std::string& content) {
    std::error_code ec;
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path(), ec);
        if (ec) throw io_error("cannot create directory " + path.parent_path().string());
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot open " + path.string() + " for writing");
    out << content;
    out.flush();
    if (!out) throw io_error("write failed for " + path.string());
}

/// param,re,im rows of a numeric trace.
inline std::string curve_csv(const NumericTrace& trace) {
    std::string out = "param,re,im\n";
    for (const auto& s : trace.samples)
        out += fmt_g17(s.t) + "," + fmt_g17(s.z.real()) + "," + fmt_g17(s.z.imag()) + "\n";
    return out;
}

/// param,re,im rows of a plain point list, parameterized by index.
inline std::string points_csv(const std::vector<Complex>& pts) {
    std::string out = "param,re,im\n";
    for (size_t k = 0; k < pts.size(); ++k)
        out += std::to_string(k) + "," + fmt_g17(pts[k].real()) + "," + fmt_g17(pts[k].imag()) +
               "\n";
    return out;
}

/// curve,param,re,im rows for a figure made of several named pieces.
struct NamedPolyline {
    std::string name;
    std::vector<TraceSample> samples;
};

inline std::string figure_csv(const std::vector<NamedPolyline>& pieces) {
    std::string out = "curve,param,re,im\n";
    for (const auto& p : pieces)
        for (const auto& s : p.samples)
            out += p.name + "," + fmt_g17(s.t) + "," + fmt_g17(s.z.real()) + "," +
                   fmt_g17(s.z.imag()) + "\n";
    return out;
}

inline std::string evaluation_csv(const std::vector<std::tuple<double, Complex, double>>& rows) {
    std::string out = "theta,f_re,f_im,deviation\n";
    for (const auto& [theta, f, dev] : rows)
        out += fmt_g17(theta) + "," + fmt_g17(f.real()) + "," + fmt_g17(f.imag()) + "," +
               fmt_g17(dev) + "\n";
    return out;
}

inline std::string jumps_csv(const std::vector<Jump>& jumps,
                             const std::vector<BisectResult>& located) {
    std::string out = "re,im,jump_re,jump_im,jump_abs,crossed,arg_cut_distance\n";
    for (size_t k = 0; k < located.size(); ++k) {
        const BisectResult& b = located[k];
        Complex d = k < jumps.size() ? jumps[k].delta : Complex(0.0, 0.0);
        out += fmt_g17(b.location.real()) + "," + fmt_g17(b.location.imag()) + "," +
               fmt_g17(d.real()) + "," + fmt_g17(d.imag()) + "," + fmt_g17(std::abs(d)) + "," +
               log_arg_name(b.crossed) + "," + fmt_g17(b.arg_cut_distance) + "\n";
    }
    return out;
}

inline std::string components_csv(const std::vector<ComponentInfo>& comps) {
    std::string out = "component,rep_re,rep_im,value_re,value_im,max_deviation,cells\n";
    for (const auto& c : comps)
        out += std::to_string(c.label) + "," + fmt_g17(c.representative.real()) + "," +
               fmt_g17(c.representative.imag()) + "," + fmt_g17(c.value.real()) + "," +
               fmt_g17(c.value.imag()) + "," + fmt_g17(c.max_deviation) + "," +
               std::to_string(c.cells) + "\n";
    return out;
}

inline std::string zeros_csv(const std::vector<ZeroFinding>& zeros) {
    std::string out = "re,im,isolated,witness_radius,cluster_cells\n";
    for (const auto& z : zeros)
        out += fmt_g17(z.location.real()) + "," + fmt_g17(z.location.imag()) + "," +
               (z.isolated ? "1" : "0") + "," + fmt_g17(z.witness_radius) + "," +
               std::to_string(z.cluster_cells) + "\n";
    return out;
}

inline std::string manifest_text(const std::vector<std::pair<std::string, std::string>>& kv) {
    std::string out;
    for (const auto& [k, v] : kv) out += k + "=" + v + "\n";
    return out;
}

// ---------------------------------------------------------------------
// Minimal SVG writer: white canvas, axis cross, red curves and dots.

struct SvgCurve {
    std::vector<Complex> pts;
    std::string color = "#cc2222";
    double width = 1.5;
    bool fill = false;  // closed translucent polygon instead of a line
};

struct SvgDot {
    Complex at;
    std::string color = "#cc2222";
    double radius = 3.0;
};

inline std::string svg_figure(const Window& win, const std::vector<SvgCurve>& curves,
                              const std::vector<SvgDot>& dots) {
    const double size = 640.0, m = 40.0;
    auto sx = [&](double x) { return m + (x - win.x0) / win.width() * (size - 2 * m); };
    auto sy = [&](double y) { return size - m - (y - win.y0) / win.height() * (size - 2 * m); };
    auto num = [](double v) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.6g", v);
        return std::string(buf);
    };
    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"640\" "
           "viewBox=\"0 0 640 640\">\n";
    out += "<rect x=\"0\" y=\"0\" width=\"640\" height=\"640\" fill=\"#ffffff\"/>\n";
    if (win.x0 < 0.0 && win.x1 > 0.0)
        out += "<line x1=\"" + num(sx(0)) + "\" y1=\"" + num(sy(win.y0)) + "\" x2=\"" +
               num(sx(0)) + "\" y2=\"" + num(sy(win.y1)) +
               "\" stroke=\"#bbbbbb\" stroke-width=\"1\"/>\n";
    if (win.y0 < 0.0 && win.y1 > 0.0)
        out += "<line x1=\"" + num(sx(win.x0)) + "\" y1=\"" + num(sy(0)) + "\" x2=\"" +
               num(sx(win.x1)) + "\" y2=\"" + num(sy(0)) +
               "\" stroke=\"#bbbbbb\" stroke-width=\"1\"/>\n";
    out += "<rect x=\"" + num(m) + "\" y=\"" + num(m) + "\" width=\"" + num(size - 2 * m) +
           "\" height=\"" + num(size - 2 * m) +
           "\" fill=\"none\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
    for (const auto& c : curves) {
        if (c.pts.size() < 2) continue;
        std::string pts;
        for (Complex z : c.pts) {
            if (!pts.empty()) pts += ' ';
            pts += num(sx(z.real())) + "," + num(sy(z.imag()));
        }
        if (c.fill) {
            out += "<polygon points=\"" + pts + "\" fill=\"" + c.color +
                   "\" fill-opacity=\"0.25\" stroke=\"" + c.color + "\" stroke-width=\"" +
                   num(c.width) + "\"/>\n";
        } else {
            out += "<polyline points=\"" + pts + "\" fill=\"none\" stroke=\"" + c.color +
                   "\" stroke-width=\"" + num(c.width) + "\"/>\n";
        }
    }
    for (const auto& d : dots)
        out += "<circle cx=\"" + num(sx(d.at.real())) + "\" cy=\"" + num(sy(d.at.imag())) +
               "\" r=\"" + num(d.radius) + "\" fill=\"" + d.color + "\"/>\n";
    out += "</svg>\n";
    return out;
}

}  // namespace branchcut
