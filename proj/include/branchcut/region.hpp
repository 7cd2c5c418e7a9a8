#pragma once

// Geometric model of the cut-away domains the audit runs on.
//
// A Region is the plane minus a guard-thickened union of exclusion
// primitives: parametric curves (arcs, segments, rays, numeric traces),
// a closed half-disk, half-planes and isolated points.  Membership and
// distance queries are exact for the analytic primitives and use
// nearest-sample search with local segment refinement for traces.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "branchcut/complex_ops.hpp"

namespace branchcut {

struct Window {
    double x0, x1, y0, y1;

    Window(double a, double b, double c, double d) : x0(a), x1(b), y0(c), y1(d) {
        if (!(std::isfinite(a) && std::isfinite(b) && std::isfinite(c) && std::isfinite(d)))
            throw std::invalid_argument("Window: bounds must be finite");
        if (!(a < b && c < d))
            throw std::invalid_argument("Window: need x0 < x1 and y0 < y1");
    }

    double width() const { return x1 - x0; }
    double height() const { return y1 - y0; }
    bool contains(Complex z) const {
        return z.real() >= x0 && z.real() <= x1 && z.imag() >= y0 && z.imag() <= y1;
    }
};

namespace detail {

inline double segment_distance(Complex z, Complex a, Complex b) {
    Complex ab = b - a;
    double len2 = std::norm(ab);
    if (len2 == 0.0) return std::abs(z - a);
    double t = ((z.real() - a.real()) * ab.real() + (z.imag() - a.imag()) * ab.imag()) / len2;
    t = std::clamp(t, 0.0, 1.0);
    return std::abs(z - (a + t * ab));
}

inline std::string fmt_pair(Complex z) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%g,%g", z.real(), z.imag());
    return buf;
}

}  // namespace detail

struct CircleArc {
    Complex center;
    double radius;
    double angle0;  // radians, measured from center
    double angle1;  // angle1 > angle0, sweep at most 2*pi
};

struct Segment {
    Complex a;
    Complex b;
    bool include_a = true;
    bool include_b = true;
};

struct Ray {
    Complex anchor;
    Complex dir;  // unit vector
};

struct TraceSample {
    double t;
    Complex z;
};

/// Polyline with strictly increasing parameter values.
struct NumericTrace {
    std::vector<TraceSample> samples;
};

/// One exclusion curve.  point_at maps the parameter to the plane;
/// distance_to is the Euclidean distance to the curve as a point set.
class ParamCurve {
  public:
    enum class Kind { circle_arc, segment, ray, numeric_trace };

    explicit ParamCurve(CircleArc arc) : kind_(Kind::circle_arc), shape_(arc) {
        if (!(arc.radius > 0.0)) throw std::invalid_argument("ParamCurve: radius must be positive");
        if (!(arc.angle1 > arc.angle0) || arc.angle1 - arc.angle0 > 2.0 * kPi + 1e-12)
            throw std::invalid_argument("ParamCurve: bad angle range");
    }

    explicit ParamCurve(Segment s) : kind_(Kind::segment), shape_(s) {
        if (s.a == s.b) throw std::invalid_argument("ParamCurve: degenerate segment");
    }

    explicit ParamCurve(Ray r) : kind_(Kind::ray), shape_(r) {
        double n = std::abs(r.dir);
        if (!(n > 0.0)) throw std::invalid_argument("ParamCurve: ray needs a direction");
        std::get<Ray>(shape_).dir = r.dir / n;
    }

    explicit ParamCurve(NumericTrace tr) : kind_(Kind::numeric_trace), shape_(std::move(tr)) {
        const auto& s = std::get<NumericTrace>(shape_).samples;
        if (s.size() < 2) throw std::invalid_argument("ParamCurve: trace needs >= 2 samples");
        for (size_t i = 1; i < s.size(); ++i) {
            if (!(s[i].t > s[i - 1].t))
                throw std::invalid_argument("ParamCurve: trace parameters must increase");
            if (s[i].z == s[i - 1].z)
                throw std::invalid_argument("ParamCurve: consecutive trace points coincide");
        }
    }

    Kind kind() const { return kind_; }

    /// Arc and segment take t in [0, 1]; ray takes t >= 0 (arclength);
    /// traces interpolate between their parameter bounds.
    Complex point_at(double t) const {
        switch (kind_) {
            case Kind::circle_arc: {
                const auto& a = std::get<CircleArc>(shape_);
                double phi = a.angle0 + t * (a.angle1 - a.angle0);
                return a.center + a.radius * Complex(std::cos(phi), std::sin(phi));
            }
            case Kind::segment: {
                const auto& s = std::get<Segment>(shape_);
                return s.a + t * (s.b - s.a);
            }
            case Kind::ray: {
                const auto& r = std::get<Ray>(shape_);
                if (t < 0.0) throw std::invalid_argument("ParamCurve: ray parameter < 0");
                return r.anchor + t * r.dir;
            }
            case Kind::numeric_trace:
                return trace_point(t);
        }
        throw std::logic_error("ParamCurve: bad kind");
    }

    double distance_to(Complex z) const {
        switch (kind_) {
            case Kind::circle_arc:
                return arc_distance(z);
            case Kind::segment: {
                const auto& s = std::get<Segment>(shape_);
                return detail::segment_distance(z, s.a, s.b);
            }
            case Kind::ray: {
                const auto& r = std::get<Ray>(shape_);
                double t = (z.real() - r.anchor.real()) * r.dir.real() +
                           (z.imag() - r.anchor.imag()) * r.dir.imag();
                t = std::max(t, 0.0);
                return std::abs(z - (r.anchor + t * r.dir));
            }
            case Kind::numeric_trace:
                return trace_distance(z);
        }
        throw std::logic_error("ParamCurve: bad kind");
    }

    const NumericTrace& trace() const { return std::get<NumericTrace>(shape_); }

    std::string describe() const {
        char buf[192];
        switch (kind_) {
            case Kind::circle_arc: {
                const auto& a = std::get<CircleArc>(shape_);
                std::snprintf(buf, sizeof(buf), "arc center=%s radius=%g angles=%g,%g",
                              detail::fmt_pair(a.center).c_str(), a.radius, a.angle0, a.angle1);
                return buf;
            }
            case Kind::segment: {
                const auto& s = std::get<Segment>(shape_);
                std::snprintf(buf, sizeof(buf), "segment from=%s to=%s include_ends=%d,%d",
                              detail::fmt_pair(s.a).c_str(), detail::fmt_pair(s.b).c_str(),
                              s.include_a ? 1 : 0, s.include_b ? 1 : 0);
                return buf;
            }
            case Kind::ray: {
                const auto& r = std::get<Ray>(shape_);
                std::snprintf(buf, sizeof(buf), "ray anchor=%s dir=%s",
                              detail::fmt_pair(r.anchor).c_str(), detail::fmt_pair(r.dir).c_str());
                return buf;
            }
            case Kind::numeric_trace: {
                const auto& s = std::get<NumericTrace>(shape_).samples;
                std::snprintf(buf, sizeof(buf), "trace samples=%zu from=%s to=%s", s.size(),
                              detail::fmt_pair(s.front().z).c_str(),
                              detail::fmt_pair(s.back().z).c_str());
                return buf;
            }
        }
        throw std::logic_error("ParamCurve: bad kind");
    }

  private:
    Complex trace_point(double t) const {
        const auto& s = std::get<NumericTrace>(shape_).samples;
        if (t <= s.front().t) return s.front().z;
        if (t >= s.back().t) return s.back().z;
        auto it = std::lower_bound(s.begin(), s.end(), t,
                                   [](const TraceSample& a, double v) { return a.t < v; });
        const TraceSample& hi = *it;
        const TraceSample& lo = *(it - 1);
        double u = (t - lo.t) / (hi.t - lo.t);
        return lo.z + u * (hi.z - lo.z);
    }

    /// Nearest-sample scan with stride, then exact point-to-segment
    /// refinement around the best index.
    double trace_distance(Complex z) const {
        const auto& s = std::get<NumericTrace>(shape_).samples;
        const size_t n = s.size();
        const size_t stride = n > 64 ? 8 : 1;
        size_t best = 0;
        double bd2 = std::norm(z - s[0].z);
        for (size_t i = stride; i < n; i += stride) {
            double d2 = std::norm(z - s[i].z);
            if (d2 < bd2) { bd2 = d2; best = i; }
        }
        double dl = std::norm(z - s[n - 1].z);
        if (dl < bd2) { bd2 = dl; best = n - 1; }
        size_t lo = best > 2 * stride ? best - 2 * stride : 0;
        size_t hi = std::min(n - 1, best + 2 * stride);
        double out = std::sqrt(bd2);
        for (size_t i = lo; i < hi; ++i)
            out = std::min(out, detail::segment_distance(z, s[i].z, s[i + 1].z));
        return out;
    }

    double arc_distance(Complex z) const {
        const auto& a = std::get<CircleArc>(shape_);
        Complex rel = z - a.center;
        if (rel == Complex(0.0, 0.0)) return a.radius;
        double phi = std::atan2(rel.imag(), rel.real());
        // bring phi into [angle0, angle0 + 2*pi)
        while (phi < a.angle0) phi += 2.0 * kPi;
        if (phi <= a.angle1) return std::abs(std::abs(rel) - a.radius);
        Complex e0 = a.center + a.radius * Complex(std::cos(a.angle0), std::sin(a.angle0));
        Complex e1 = a.center + a.radius * Complex(std::cos(a.angle1), std::sin(a.angle1));
        return std::min(std::abs(z - e0), std::abs(z - e1));
    }

    Kind kind_;
    std::variant<CircleArc, Segment, Ray, NumericTrace> shape_;
};

/// Closed disk, optionally restricted to its re <= 0 half.  The half-disk
/// form requires the center on the imaginary axis so that the straight
/// face is the vertical diameter.
struct ExcludedDisk {
    Complex center;
    double radius;
    bool left_half_only = false;

    double distance_to(Complex z) const {
        if (left_half_only && z.real() > 0.0) {
            Complex lo(0.0, center.imag() - radius);
            Complex hi(0.0, center.imag() + radius);
            return detail::segment_distance(z, lo, hi);
        }
        return std::max(0.0, std::abs(z - center) - radius);
    }
};

/// Excluded closed half-plane {im(z) <= im_max}.
struct ExcludedHalfPlane {
    double im_max;

    double distance_to(Complex z) const { return std::max(0.0, z.imag() - im_max); }
};

enum class RegionVariant { fig3, upper_half, custom };

class Region {
  public:
    explicit Region(double guard = 1e-6, RegionVariant v = RegionVariant::custom)
        : guard_(guard), variant_(v) {
        if (!(guard >= 0.0) || !std::isfinite(guard))
            throw std::invalid_argument("Region: guard must be finite and >= 0");
    }

    void add_curve(ParamCurve c) { curves_.push_back(std::move(c)); }

    void add_disk(ExcludedDisk d) {
        if (!(d.radius > 0.0)) throw std::invalid_argument("Region: disk radius must be positive");
        if (d.left_half_only && d.center.real() != 0.0)
            throw std::invalid_argument("Region: half-disk center must sit on the imaginary axis");
        disks_.push_back(d);
    }

    void add_half_plane(ExcludedHalfPlane h) { half_planes_.push_back(h); }
    void add_point(Complex p) { points_.push_back(p); }

    double guard() const { return guard_; }
    RegionVariant variant() const { return variant_; }
    const std::vector<ParamCurve>& curves() const { return curves_; }

    double distance_to_exclusions(Complex z) const {
        double d = std::numeric_limits<double>::infinity();
        for (const auto& c : curves_) d = std::min(d, c.distance_to(z));
        for (const auto& k : disks_) d = std::min(d, k.distance_to(z));
        for (const auto& h : half_planes_) d = std::min(d, h.distance_to(z));
        for (const auto& p : points_) d = std::min(d, std::abs(z - p));
        return d;
    }

    /// True when z sits strictly farther than the guard from every
    /// exclusion primitive.
    bool contains(Complex z) const {
        if (!is_finite(z)) return false;
        return distance_to_exclusions(z) > guard_;
    }

    std::string describe() const {
        const char* name = variant_ == RegionVariant::fig3        ? "fig3"
                           : variant_ == RegionVariant::upper_half ? "upper-half"
                                                                   : "custom";
        char head[96];
        std::snprintf(head, sizeof(head), "region variant=%s guard=%g", name, guard_);
        std::string out = head;
        out += '\n';
        for (const auto& c : curves_) out += c.describe() + '\n';
        for (const auto& d : disks_) {
            char buf[160];
            std::snprintf(buf, sizeof(buf), "half-disk center=%s radius=%g side=%s",
                          detail::fmt_pair(d.center).c_str(), d.radius,
                          d.left_half_only ? "re<=0" : "full");
            out += buf;
            out += '\n';
        }
        for (const auto& h : half_planes_) {
            char buf[96];
            std::snprintf(buf, sizeof(buf), "half-plane im<=%g", h.im_max);
            out += buf;
            out += '\n';
        }
        for (const auto& p : points_) {
            out += "point at=" + detail::fmt_pair(p) + '\n';
        }
        return out;
    }

  private:
    double guard_;
    RegionVariant variant_;
    std::vector<ParamCurve> curves_;
    std::vector<ExcludedDisk> disks_;
    std::vector<ExcludedHalfPlane> half_planes_;
    std::vector<Complex> points_;
};

/// The two stock domains.  fig3 removes from the plane the negative real
/// ray, the closed left half-disk |z - i/2| <= 1/2 with re <= 0, the
/// segment [0, i] and the points 0, i, -i.  upper_half keeps im > 0 and
/// removes the same half-disk.
inline Region make_region(RegionVariant v, double guard = 1e-6) {
    Region r(guard, v);
    switch (v) {
        case RegionVariant::fig3:
            r.add_curve(ParamCurve(Ray{Complex(0.0, 0.0), Complex(-1.0, 0.0)}));
            r.add_curve(ParamCurve(Segment{Complex(0.0, 0.0), Complex(0.0, 1.0)}));
            r.add_disk(ExcludedDisk{Complex(0.0, 0.5), 0.5, true});
            r.add_point(Complex(0.0, 0.0));
            r.add_point(Complex(0.0, 1.0));
            r.add_point(Complex(0.0, -1.0));
            break;
        case RegionVariant::upper_half:
            r.add_half_plane(ExcludedHalfPlane{0.0});
            r.add_disk(ExcludedDisk{Complex(0.0, 0.5), 0.5, true});
            break;
        case RegionVariant::custom:
            break;
    }
    return r;
}

/// Grid cell labeling produced by connected_components.
struct ComponentLabeling {
    int n = 0;  // cells per axis
    double x0 = 0, y0 = 0, dx = 0, dy = 0;
    std::vector<int> labels;  // row-major, -1 = excluded cell
    int count = 0;
    std::vector<Complex> representatives;  // first cell center per label

    Complex cell_center(int ix, int iy) const {
        return {x0 + (ix + 0.5) * dx, y0 + (iy + 0.5) * dy};
    }

    /// Label of the cell containing z, or -1 when outside / excluded.
    int label_at(Complex z) const {
        int ix = static_cast<int>(std::floor((z.real() - x0) / dx));
        int iy = static_cast<int>(std::floor((z.imag() - y0) / dy));
        if (ix < 0 || iy < 0 || ix >= n || iy >= n) return -1;
        return labels[static_cast<size_t>(iy) * n + ix];
    }
};

/// 4-neighbor flood fill over the n x n grid of cell centers inside the
/// window.  Labels are assigned in row-major discovery order, so the
/// result is deterministic.
inline ComponentLabeling connected_components(const Region& region, const Window& win, int n) {
    if (n < 2) throw std::invalid_argument("connected_components: need n >= 2");
    ComponentLabeling out;
    out.n = n;
    out.x0 = win.x0;
    out.y0 = win.y0;
    out.dx = win.width() / n;
    out.dy = win.height() / n;
    const size_t total = static_cast<size_t>(n) * n;
    std::vector<char> inside(total, 0);
    for (int iy = 0; iy < n; ++iy)
        for (int ix = 0; ix < n; ++ix)
            inside[static_cast<size_t>(iy) * n + ix] =
                region.contains(out.cell_center(ix, iy)) ? 1 : 0;

    out.labels.assign(total, -1);
    int next = 0;
    std::vector<size_t> stack;
    for (size_t seed = 0; seed < total; ++seed) {
        if (!inside[seed] || out.labels[seed] != -1) continue;
        int label = next++;
        out.labels[seed] = label;
        out.representatives.push_back(
            out.cell_center(static_cast<int>(seed % n), static_cast<int>(seed / n)));
        stack.assign(1, seed);
        while (!stack.empty()) {
            size_t cur = stack.back();
            stack.pop_back();
            int ix = static_cast<int>(cur % n);
            int iy = static_cast<int>(cur / n);
            const int nb[4][2] = {{ix - 1, iy}, {ix + 1, iy}, {ix, iy - 1}, {ix, iy + 1}};
            for (const auto& q : nb) {
                if (q[0] < 0 || q[1] < 0 || q[0] >= n || q[1] >= n) continue;
                size_t idx = static_cast<size_t>(q[1]) * n + q[0];
                if (inside[idx] && out.labels[idx] == -1) {
                    out.labels[idx] = label;
                    stack.push_back(idx);
                }
            }
        }
    }
    out.count = next;
    return out;
}

}  // namespace branchcut
