#pragma once

// Branch-cut preimages: where each factor map lands on the negative real
// axis.  F1 and F2 admit closed-form curves; F3's preimage of -r is the
// root pair of z^2 - (2i + 2r e^{-ic}) z - 1 = 0, swept over r >= 0.

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "branchcut/complex_ops.hpp"
#include "branchcut/construction.hpp"
#include "branchcut/region.hpp"

namespace branchcut {

enum class FuncId { f1, f2, f3, identity };

inline const char* func_name(FuncId id) {
    switch (id) {
        case FuncId::f1: return "F1";
        case FuncId::f2: return "F2";
        case FuncId::f3: return "F3";
        case FuncId::identity: return "z";
    }
    return "?";
}

struct PreimageQuery {
    FuncId func;
    PhaseParam phase;  // used by F3 only
    double r_max = 100.0;
    int samples = 1000;
};

/// Point of the closed-form preimage curve at cut depth r (F(z) = -r).
///   F1: z = (-r + i r^2) / (r^2 + 1), the left half of |z - i/2| = 1/2
///   F2: z = i r / (r + 1), the segment [0, i)
///   identity: z = -r
inline Complex closed_form_point(FuncId func, double r) {
    if (!(r >= 0.0) || !std::isfinite(r))
        throw std::invalid_argument("closed_form_point: r must be finite and >= 0");
    switch (func) {
        case FuncId::f1: {
            double den = r * r + 1.0;
            return {-r / den, r * r / den};
        }
        case FuncId::f2:
            return {0.0, r / (r + 1.0)};
        case FuncId::identity:
            return {-r, 0.0};
        case FuncId::f3:
            throw std::invalid_argument("closed_form_point: F3 has no single-point form");
    }
    throw std::logic_error("closed_form_point: bad func");
}

/// Sampled closed-form preimage curve, parameterized by r.  Sampling is
/// dense near r = 0 (linear band) and geometric out to r_max, since the
/// curves compress all of [0, inf) into bounded arcs.  For F3 the result
/// is the degenerate two-point set {i, -i}.
inline ParamCurve closed_form_preimage(const PreimageQuery& q) {
    if (q.samples < 2) throw std::invalid_argument("closed_form_preimage: samples must be >= 2");
    if (!(q.r_max > 0.0) || !std::isfinite(q.r_max))
        throw std::invalid_argument("closed_form_preimage: r_max must be positive and finite");
    NumericTrace tr;
    if (q.func == FuncId::f3) {
        tr.samples.push_back({0.0, Complex(0.0, 1.0)});
        tr.samples.push_back({1.0, Complex(0.0, -1.0)});
        return ParamCurve(std::move(tr));
    }
    std::vector<double> rs;
    rs.reserve(q.samples);
    const int n_lin = q.samples / 4;
    const double r_lo = q.r_max * 0.01;
    for (int i = 0; i < n_lin; ++i) rs.push_back(r_lo * i / n_lin);
    const int n_geo = q.samples - n_lin;
    for (int j = 0; j < n_geo; ++j)
        rs.push_back(r_lo * std::pow(q.r_max / r_lo, static_cast<double>(j) / (n_geo - 1)));
    tr.samples.reserve(rs.size());
    for (double r : rs) tr.samples.push_back({r, closed_form_point(q.func, r)});
    return ParamCurve(std::move(tr));
}

/// The two roots of z^2 - (2i + 2r e^{-ic}) z - 1 = 0, i.e. the full
/// preimage F3(z) = -r.  `outer` is the root of larger modulus; `inner`
/// is recovered from the product relation outer * inner = -1 to avoid
/// cancellation.  At r = 0 both collapse to the double root i.
struct RootPair {
    Complex outer;
    Complex inner;
};

inline RootPair f3_preimage_oracle(const PhaseParam& p, double r) {
    if (!(r >= 0.0) || !std::isfinite(r))
        throw std::invalid_argument("f3_preimage_oracle: r must be finite and >= 0");
    Complex b = 2.0 * kI + 2.0 * r * c_exp(Complex(0.0, -p.c()));
    Complex s = std::sqrt(b * b + 4.0);
    if (std::real(std::conj(b) * s) < 0.0) s = -s;
    Complex outer = 0.5 * (b + s);
    Complex inner = -1.0 / outer;
    return {outer, inner};
}

/// Real and imaginary residuals of the polar cut condition for F3 at
/// z = s e^{i theta}: both vanish exactly when F3(z) = -r.
inline std::pair<double, double> polar_cut_residuals(double s, double theta,
                                                     const PhaseParam& p, double r) {
    if (!(s > 0.0) || !std::isfinite(s))
        throw std::invalid_argument("polar_cut_residuals: s must be positive");
    const double sc = std::sin(p.c()), cc = std::cos(p.c());
    const double st = std::sin(theta), ct = std::cos(theta);
    const double s2 = s * s;
    double res_im = 2.0 * s * cc - s2 * st * cc - s2 * ct * sc + ct * sc - st * cc;
    double res_re = (-2.0 * s * sc - s2 * ct * cc + s2 * st * sc + ct * cc + st * sc) + 2.0 * r * s;
    return {res_im, res_re};
}

/// All lattice points of an (n+1) x (n+1) grid over the window whose image
/// under the selected factor map lies within tol of the cut in the L^inf
/// metric.  Points are emitted bottom row first, left to right.
inline std::vector<Complex> grid_scan_preimage(FuncId func, const PhaseParam& p,
                                               const Window& win, int n, double tol) {
    if (n < 32) throw std::invalid_argument("grid_scan_preimage: need n >= 32");
    if (!(tol > 0.0) || !std::isfinite(tol))
        throw std::invalid_argument("grid_scan_preimage: tol must be positive");
    std::vector<Complex> hits;
    const double dx = win.width() / n;
    const double dy = win.height() / n;
    for (int iy = 0; iy <= n; ++iy) {
        for (int ix = 0; ix <= n; ++ix) {
            Complex z(win.x0 + ix * dx, win.y0 + iy * dy);
            Complex w;
            try {
                switch (func) {
                    case FuncId::f1: w = eval_f1(z); break;
                    case FuncId::f2: w = eval_f2(z); break;
                    case FuncId::f3: w = rational_f3(z, p); break;
                    case FuncId::identity: w = z; break;
                }
            } catch (const std::exception&) {
                continue;  // pole or origin on the lattice
            }
            if (cut_distance_linf(w) < tol) hits.push_back(z);
        }
    }
    return hits;
}

/// One-sided Hausdorff distance from a scanned point set to a reference
/// curve: the largest nearest-curve distance over all points.
inline double compare_preimages(const ParamCurve& curve, const std::vector<Complex>& points) {
    if (points.empty()) throw std::invalid_argument("compare_preimages: empty point set");
    double worst = 0.0;
    for (Complex z : points) worst = std::max(worst, curve.distance_to(z));
    return worst;
}

}  // namespace branchcut
