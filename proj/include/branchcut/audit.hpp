#pragma once

// Numerical analyticity audit.
//
// The instruments here answer, with computed values only: is the composite
// map analytic where claimed, where exactly does it jump, what curve do
// the jump points form, and is it constant on each connected component of
// the domain once that curve is excluded.

#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "branchcut/complex_ops.hpp"
#include "branchcut/construction.hpp"
#include "branchcut/preimage.hpp"
#include "branchcut/region.hpp"

namespace branchcut {

/// Piecewise-linear scan path with a maximum sample spacing.
struct Path {
    std::vector<Complex> waypoints;
    double step;

    Path(std::vector<Complex> w, double s) : waypoints(std::move(w)), step(s) {
        if (waypoints.size() < 2) throw std::invalid_argument("Path: need >= 2 waypoints");
        if (!(step > 0.0) || !std::isfinite(step))
            throw std::invalid_argument("Path: step must be positive");
        for (size_t i = 1; i < waypoints.size(); ++i)
            if (waypoints[i] == waypoints[i - 1])
                throw std::invalid_argument("Path: consecutive waypoints coincide");
    }
};

/// Waypoints along a circular arc, dense enough that chord error is
/// negligible next to the resample step.
inline Path make_arc_path(Complex center, double radius, double angle0, double angle1,
                          double step) {
    if (!(radius > 0.0) || !(angle1 > angle0))
        throw std::invalid_argument("make_arc_path: bad arc");
    int m = std::max(32, static_cast<int>(std::ceil((angle1 - angle0) / 0.01)));
    std::vector<Complex> pts;
    pts.reserve(m + 1);
    for (int k = 0; k <= m; ++k) {
        double a = angle0 + (angle1 - angle0) * k / m;
        pts.push_back(center + radius * Complex(std::cos(a), std::sin(a)));
    }
    return Path(std::move(pts), step);
}

/// Samples along the path with spacing <= step, endpoints included.
inline std::vector<Complex> resample(const Path& path) {
    std::vector<Complex> out;
    out.push_back(path.waypoints.front());
    for (size_t k = 0; k + 1 < path.waypoints.size(); ++k) {
        Complex a = path.waypoints[k], b = path.waypoints[k + 1];
        int m = std::max(1, static_cast<int>(std::ceil(std::abs(b - a) / path.step)));
        for (int j = 1; j <= m; ++j) out.push_back(a + (static_cast<double>(j) / m) * (b - a));
    }
    return out;
}

/// Magnitude of the discretized Cauchy-Riemann operator
/// (central differences of 2 df/dz-bar): ~0 for holomorphic maps,
/// order unity for conjugation-like maps.
template <class F>
double cr_residual(F&& f, Complex z, double h) {
    if (!(h > 0.0) || !std::isfinite(h))
        throw std::invalid_argument("cr_residual: h must be positive");
    Complex dx = (f(z + h) - f(z - h)) / (2.0 * h);
    Complex dy = (f(z + Complex(0.0, h)) - f(z - Complex(0.0, h))) / (2.0 * h);
    return std::abs(dx + kI * dy);
}

struct Jump {
    Complex a;      // sample before the jump
    Complex b;      // sample after the jump
    Complex delta;  // f(b) - f(a)
};

struct ScanResult {
    std::vector<Jump> jumps;
    std::vector<Complex> gaps;  // samples where f was undefined
    size_t samples = 0;
};

/// Walks the path and flags consecutive sample pairs whose values differ
/// by more than jump_threshold.  Samples where f throws become gaps and
/// never pair into jumps.
template <class F>
ScanResult path_scan(F&& f, const Path& path, double jump_threshold = 1.0) {
    if (!(jump_threshold > 0.0))
        throw std::invalid_argument("path_scan: jump_threshold must be positive");
    auto pts = resample(path);
    ScanResult out;
    out.samples = pts.size();
    std::vector<std::optional<Complex>> vals;
    vals.reserve(pts.size());
    for (Complex z : pts) {
        try {
            vals.push_back(f(z));
        } catch (const std::domain_error&) {
            vals.push_back(std::nullopt);
            out.gaps.push_back(z);
        } catch (const std::range_error&) {
            vals.push_back(std::nullopt);
            out.gaps.push_back(z);
        }
    }
    for (size_t k = 0; k + 1 < pts.size(); ++k) {
        if (!vals[k] || !vals[k + 1]) continue;
        Complex d = *vals[k + 1] - *vals[k];
        if (std::abs(d) > jump_threshold) out.jumps.push_back({pts[k], pts[k + 1], d});
    }
    return out;
}

struct bracket_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class LogArg { f1, f2, f3, identity };

inline const char* log_arg_name(LogArg a) {
    switch (a) {
        case LogArg::f1: return "F1";
        case LogArg::f2: return "F2";
        case LogArg::f3: return "F3";
        case LogArg::identity: return "z";
    }
    return "?";
}

struct BisectResult {
    Complex location;
    LogArg crossed;           // which log argument sits on the cut here
    double arg_cut_distance;  // cut distance of that argument's value
};

/// Shrinks a jump bracket by interval halving, always keeping the half
/// that carries the larger value difference.  If the tracked jump decays
/// below 30% of the initial one the bracket was spurious (smooth
/// variation, not a discontinuity) and bracket_error is thrown.
template <class F>
BisectResult bisect_discontinuity(F&& f, Complex a, Complex b, double tol,
                                  const PhaseParam& p) {
    if (!(tol > 0.0) || !std::isfinite(tol))
        throw std::invalid_argument("bisect_discontinuity: tol must be positive");
    if (!(std::abs(b - a) > tol))
        throw std::invalid_argument("bisect_discontinuity: bracket narrower than tol");
    Complex fa = f(a), fb = f(b);
    const double j0 = std::abs(fb - fa);
    if (j0 == 0.0) throw bracket_error("bisect_discontinuity: no jump across bracket");
    while (std::abs(b - a) > tol) {
        Complex m = 0.5 * (a + b);
        Complex fm = f(m);
        double left = std::abs(fm - fa), right = std::abs(fb - fm);
        if (left >= right) {
            b = m;
            fb = fm;
        } else {
            a = m;
            fa = fm;
        }
        if (std::abs(fb - fa) < 0.3 * j0)
            throw bracket_error("bisect_discontinuity: jump decayed, bracket was spurious");
    }
    BisectResult out;
    out.location = 0.5 * (a + b);
    out.crossed = LogArg::identity;
    out.arg_cut_distance = cut_distance(out.location);
    auto consider = [&](LogArg which, Complex w) {
        double d = cut_distance(w);
        if (d < out.arg_cut_distance) {
            out.arg_cut_distance = d;
            out.crossed = which;
        }
    };
    try {
        consider(LogArg::f1, eval_f1(out.location));
        consider(LogArg::f2, eval_f2(out.location));
        consider(LogArg::f3, rational_f3(out.location, p));
    } catch (const std::domain_error&) {
        // located point collided with a pole/origin; keep best so far
    }
    return out;
}

struct TraceResult {
    ParamCurve curve;
    bool complete;  // false when a predictor step collapsed mid-trace
};

/// Predictor-corrector continuation of the curve im(F3(z)) = 0, re(F3) <= 0
/// through the seed.  Marches both directions; the branch that reaches the
/// double point z = i ends with that exact point appended, the other runs
/// until it leaves the window by a small margin.  The result is ordered
/// from the foot outward and parameterized by cumulative arc length.
inline TraceResult trace_discontinuity_curve(const PhaseParam& p, const Window& win,
                                             Complex seed, double step) {
    if (!(step > 0.0) || !std::isfinite(step))
        throw std::invalid_argument("trace_discontinuity_curve: step must be positive");
    auto g = [&](Complex z) { return rational_f3(z, p); };
    auto level = [&](Complex z) { return g(z).imag(); };
    auto grad = [&](Complex z) -> Complex {
        double h = 1e-6 * std::max(1.0, std::abs(z));
        return {(level(z + h) - level(z - h)) / (2.0 * h),
                (level(z + Complex(0.0, h)) - level(z - Complex(0.0, h))) / (2.0 * h)};
    };
    auto correct = [&](Complex z, bool& ok) {
        ok = false;
        for (int it = 0; it < 12; ++it) {
            double b = level(z);
            if (std::abs(b) <= 1e-12 * std::max(1.0, std::abs(g(z)))) {
                ok = true;
                return z;
            }
            Complex gr = grad(z);
            double n2 = std::norm(gr);
            if (n2 < 1e-30) return z;
            z -= b / n2 * gr;
        }
        ok = std::abs(level(z)) <= 1e-10 * std::max(1.0, std::abs(g(z)));
        return z;
    };

    bool seed_ok = false;
    Complex z0 = correct(seed, seed_ok);
    if (!seed_ok)
        throw std::invalid_argument("trace_discontinuity_curve: seed not on the curve");
    Complex gr0 = grad(z0);
    if (std::norm(gr0) < 1e-30)
        throw std::invalid_argument("trace_discontinuity_curve: degenerate seed gradient");
    Complex t0 = Complex(gr0.imag(), -gr0.real()) / std::abs(gr0);

    const double margin = 2.0 * step;
    auto outside = [&](Complex z) {
        return z.real() < win.x0 - margin || z.real() > win.x1 + margin ||
               z.imag() < win.y0 - margin || z.imag() > win.y1 + margin;
    };

    auto march = [&](Complex dir) {
        std::vector<Complex> pts;
        bool partial = false, reached_foot = false;
        Complex z = z0, prev = dir;
        for (long k = 0; k < 200000; ++k) {
            Complex gr = grad(z);
            if (std::norm(gr) < 1e-30) {
                partial = true;
                break;
            }
            Complex t = Complex(gr.imag(), -gr.real()) / std::abs(gr);
            if (t.real() * prev.real() + t.imag() * prev.imag() < 0.0) t = -t;
            double h = step;
            bool stepped = false;
            for (int halves = 0; halves < 8 && !stepped; ++halves) {
                bool ok = false;
                Complex zc = correct(z + h * t, ok);
                double moved = std::abs(zc - z);
                if (ok && moved > 0.1 * h && moved < 3.0 * h) {
                    prev = (zc - z) / moved;
                    z = zc;
                    stepped = true;
                } else {
                    h *= 0.5;
                }
            }
            if (!stepped) {
                partial = true;
                break;
            }
            if (std::abs(z - kI) < 1.5 * step || g(z).real() > 1e-9) {
                reached_foot = true;  // at (or just past) the double point i
                break;
            }
            pts.push_back(z);
            if (outside(z)) break;
        }
        return std::tuple(pts, partial, reached_foot);
    };

    auto [pts_a, partial_a, foot_a] = march(t0);
    auto [pts_b, partial_b, foot_b] = march(-t0);

    std::vector<Complex> chain;
    auto append_reversed = [&](const std::vector<Complex>& v) {
        chain.insert(chain.end(), v.rbegin(), v.rend());
    };
    if (foot_a && !foot_b) {
        chain.push_back(kI);
        append_reversed(pts_a);
        chain.push_back(z0);
        chain.insert(chain.end(), pts_b.begin(), pts_b.end());
    } else if (foot_b && !foot_a) {
        chain.push_back(kI);
        append_reversed(pts_b);
        chain.push_back(z0);
        chain.insert(chain.end(), pts_a.begin(), pts_a.end());
    } else {
        append_reversed(pts_a);
        chain.push_back(z0);
        chain.insert(chain.end(), pts_b.begin(), pts_b.end());
        if (foot_a && foot_b) chain.push_back(kI);
    }

    NumericTrace tr;
    tr.samples.reserve(chain.size());
    double t = 0.0;
    for (size_t k = 0; k < chain.size(); ++k) {
        if (k > 0) {
            double d = std::abs(chain[k] - chain[k - 1]);
            if (d == 0.0) continue;
            t += d;
        }
        tr.samples.push_back({t, chain[k]});
    }
    if (tr.samples.size() < 2)
        throw std::runtime_error("trace_discontinuity_curve: trace collapsed");
    return {ParamCurve(std::move(tr)), !(partial_a || partial_b)};
}

struct ZeroFinding {
    Complex location;
    bool isolated;
    double witness_radius;
    long cluster_cells;
};

/// Scans a lattice for near-zero values, clusters hits, refines each
/// cluster representative by a damped Newton step, then probes circles of
/// decreasing radius around it.  A zero is isolated when every probe
/// circle is zero-free at the strict tolerance.
template <class F>
std::vector<ZeroFinding> isolated_zero_audit(F&& f, const Region& region, const Window& win,
                                             int n, const std::vector<double>& probe_radii,
                                             double zero_tol) {
    if (n < 64) throw std::invalid_argument("isolated_zero_audit: need n >= 64");
    if (!(zero_tol > 0.0)) throw std::invalid_argument("isolated_zero_audit: bad zero_tol");
    if (probe_radii.empty())
        throw std::invalid_argument("isolated_zero_audit: need probe radii");

    const int m = n + 1;
    const double dx = win.width() / n, dy = win.height() / n;
    const double cell = std::max(dx, dy);
    const size_t total = static_cast<size_t>(m) * m;
    std::vector<char> valid(total, 0);
    std::vector<Complex> val(total);
    std::vector<double> mag(total, std::numeric_limits<double>::infinity());
    auto at = [&](int ix, int iy) { return static_cast<size_t>(iy) * m + ix; };
    for (int iy = 0; iy < m; ++iy) {
        for (int ix = 0; ix < m; ++ix) {
            Complex z(win.x0 + ix * dx, win.y0 + iy * dy);
            if (!region.contains(z)) continue;
            try {
                Complex w = f(z);
                size_t idx = at(ix, iy);
                valid[idx] = 1;
                val[idx] = w;
                mag[idx] = std::abs(w);
            } catch (const std::exception&) {
            }
        }
    }

    // Detection threshold adapts to the local slope so shallow zeros of
    // smooth maps are caught between lattice points.
    std::vector<char> marked(total, 0);
    for (int iy = 0; iy < m; ++iy) {
        for (int ix = 0; ix < m; ++ix) {
            size_t idx = at(ix, iy);
            if (!valid[idx]) continue;
            double slope = 0.0;
            const int nb[4][2] = {{ix - 1, iy}, {ix + 1, iy}, {ix, iy - 1}, {ix, iy + 1}};
            for (const auto& q : nb) {
                if (q[0] < 0 || q[1] < 0 || q[0] >= m || q[1] >= m) continue;
                size_t j = at(q[0], q[1]);
                if (valid[j]) slope = std::max(slope, std::abs(val[j] - val[idx]) / cell);
            }
            if (mag[idx] < zero_tol + 2.0 * cell * slope) marked[idx] = 1;
        }
    }

    // 4-neighbor clustering in row-major discovery order.
    std::vector<int> cluster(total, -1);
    std::vector<std::vector<size_t>> members;
    std::vector<size_t> stack;
    for (size_t seed = 0; seed < total; ++seed) {
        if (!marked[seed] || cluster[seed] != -1) continue;
        int id = static_cast<int>(members.size());
        members.emplace_back();
        cluster[seed] = id;
        stack.assign(1, seed);
        while (!stack.empty()) {
            size_t cur = stack.back();
            stack.pop_back();
            members[id].push_back(cur);
            int ix = static_cast<int>(cur % m), iy = static_cast<int>(cur / m);
            const int nb[4][2] = {{ix - 1, iy}, {ix + 1, iy}, {ix, iy - 1}, {ix, iy + 1}};
            for (const auto& q : nb) {
                if (q[0] < 0 || q[1] < 0 || q[0] >= m || q[1] >= m) continue;
                size_t j = at(q[0], q[1]);
                if (marked[j] && cluster[j] == -1) {
                    cluster[j] = id;
                    stack.push_back(j);
                }
            }
        }
    }

    auto refine = [&](Complex z) {
        Complex best = z;
        double best_mag = std::abs(f(z));
        for (int it = 0; it < 40; ++it) {
            Complex w;
            try {
                w = f(z);
            } catch (const std::exception&) {
                break;
            }
            double a = std::abs(w);
            if (a < best_mag && region.contains(z)) {
                best = z;
                best_mag = a;
            }
            if (a <= zero_tol * 1e-3) break;
            double h = 1e-7 * std::max(1.0, std::abs(z));
            Complex fp;
            try {
                fp = (f(z + h) - f(z - h)) / (2.0 * h);
            } catch (const std::exception&) {
                break;
            }
            if (std::abs(fp) < 1e-14) break;  // locally flat, nothing to polish
            Complex delta = w / fp;
            if (std::abs(delta) > 4.0 * cell) delta *= 4.0 * cell / std::abs(delta);
            z -= delta;
        }
        return best;
    };

    std::vector<ZeroFinding> findings;
    for (const auto& cells : members) {
        size_t rep = cells.front();
        for (size_t idx : cells)
            if (mag[idx] < mag[rep] || (mag[idx] == mag[rep] && idx < rep)) rep = idx;
        Complex z0(win.x0 + static_cast<double>(rep % m) * dx,
                   win.y0 + static_cast<double>(rep / m) * dy);
        Complex loc = refine(z0);
        double fmag;
        try {
            fmag = std::abs(f(loc));
        } catch (const std::exception&) {
            continue;
        }
        if (fmag > zero_tol) continue;  // detection fired on a shallow dip, not a zero

        bool isolated = true;
        double witness = 0.0;
        std::vector<double> radii = probe_radii;
        std::sort(radii.begin(), radii.end());
        for (double rho : radii) {
            const int K = 64;
            bool zero_on_circle = false;
            int checked = 0;
            for (int k = 0; k < K; ++k) {
                double a = 2.0 * kPi * k / K;
                Complex zp = loc + rho * Complex(std::cos(a), std::sin(a));
                if (!region.contains(zp)) continue;
                try {
                    if (std::abs(f(zp)) < zero_tol) zero_on_circle = true;
                    ++checked;
                } catch (const std::exception&) {
                }
            }
            if (zero_on_circle) {
                isolated = false;
                witness = rho;
                break;
            }
            if (checked >= K / 4 && witness == 0.0) witness = rho;
        }
        if (isolated && witness == 0.0) isolated = false;  // probes inconclusive
        findings.push_back({loc, isolated, witness, static_cast<long>(cells.size())});
    }
    return findings;
}

struct ComponentInfo {
    int label;
    Complex representative;
    Complex value;
    double max_deviation;
    long cells;
};

/// Reference value and worst in-component deviation for every labeled
/// component.
template <class F>
std::vector<ComponentInfo> component_values(F&& f, const ComponentLabeling& lab) {
    std::vector<ComponentInfo> out;
    out.reserve(lab.count);
    for (int l = 0; l < lab.count; ++l)
        out.push_back({l, lab.representatives[l], f(lab.representatives[l]), 0.0, 0});
    for (int iy = 0; iy < lab.n; ++iy) {
        for (int ix = 0; ix < lab.n; ++ix) {
            int l = lab.labels[static_cast<size_t>(iy) * lab.n + ix];
            if (l < 0) continue;
            ComponentInfo& ci = out[l];
            ++ci.cells;
            double dev;
            try {
                dev = std::abs(f(lab.cell_center(ix, iy)) - ci.value);
            } catch (const std::exception&) {
                dev = std::numeric_limits<double>::infinity();
            }
            ci.max_deviation = std::max(ci.max_deviation, dev);
        }
    }
    return out;
}

struct AuditOptions {
    bool include_trace = true;
    bool run_zero_audit = true;
    double guard = 1e-6;
    double constancy_tol = 1e-8;
    double jump_threshold = 1.0;
    double path_step = 1e-3;
    double bisect_tol = 1e-9;
    double zero_tol = 1e-9;
    std::vector<double> probe_radii = {1e-2, 1e-3, 1e-4};
};

struct AuditReport {
    double c = 0.0;
    Window window{-1.0, 1.0, -1.0, 1.0};
    int n = 0;
    ScanResult scan;
    std::vector<BisectResult> located;
    std::optional<TraceResult> trace;
    ComponentLabeling labeling;
    std::vector<ComponentInfo> components;
    bool constancy_ok = false;
    double worst_deviation = 0.0;
    std::vector<ZeroFinding> zeros;
};

/// Full pipeline: scan a circle for jumps, bisect the first jump, trace
/// the discontinuity curve through it, exclude the curve from the domain,
/// label components and check f is constant on each.  The zero audit runs
/// on the domain without the traced curve, reproducing the non-isolated
/// zero continuum at computed-value level.
inline AuditReport run_component_audit(const PhaseParam& p, const Window& win, int n,
                                       const AuditOptions& opt = {}) {
    if (n < 200) throw std::invalid_argument("run_component_audit: need n >= 200");
    AuditReport rep;
    rep.c = p.c();
    rep.window = win;
    rep.n = n;
    auto f = [&](Complex z) { return eval_f(z, p); };
    const double cell = std::max(win.width(), win.height()) / n;
    const double guard = std::max(opt.guard, 0.75 * cell);
    Region region = make_region(RegionVariant::fig3, guard);

    double radius = 0.45 * std::min(win.width(), win.height());
    Path path = make_arc_path(Complex(0.0, 0.0), radius, 0.3, 2.8, opt.path_step);
    rep.scan = path_scan(f, path, opt.jump_threshold);

    if (opt.include_trace && !rep.scan.jumps.empty()) {
        for (const Jump& j : rep.scan.jumps)
            rep.located.push_back(bisect_discontinuity(f, j.a, j.b, opt.bisect_tol, p));
        double step = std::min(0.01, 0.5 * cell);
        rep.trace = trace_discontinuity_curve(p, win, rep.located.front().location, step);
        region.add_curve(rep.trace->curve);
    }

    rep.labeling = connected_components(region, win, n);
    rep.components = component_values(f, rep.labeling);
    rep.constancy_ok = true;
    for (const auto& ci : rep.components) {
        rep.worst_deviation = std::max(rep.worst_deviation, ci.max_deviation);
        if (!(ci.max_deviation <= opt.constancy_tol)) rep.constancy_ok = false;
    }

    if (opt.run_zero_audit) {
        Region plain = make_region(RegionVariant::fig3, guard);
        rep.zeros = isolated_zero_audit(f, plain, win, n, opt.probe_radii, opt.zero_tol);
    }
    return rep;
}

}  // namespace branchcut
