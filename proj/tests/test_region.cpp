#include <catch2/catch_amalgamated.hpp>

#include "branchcut/preimage.hpp"
#include "branchcut/region.hpp"
#include "helpers.hpp"

using namespace branchcut;

namespace {

// Independent reference flood fill (counts only), for cross-checking the
// library labeling.
int oracle_component_count(const Region& region, const Window& win, int n) {
    std::vector<char> in(static_cast<size_t>(n) * n, 0);
    double dx = win.width() / n, dy = win.height() / n;
    for (int iy = 0; iy < n; ++iy)
        for (int ix = 0; ix < n; ++ix)
            in[static_cast<size_t>(iy) * n + ix] =
                region.contains(Complex(win.x0 + (ix + 0.5) * dx, win.y0 + (iy + 0.5) * dy));
    std::vector<char> seen(in.size(), 0);
    int count = 0;
    std::vector<size_t> queue;
    for (size_t s = 0; s < in.size(); ++s) {
        if (!in[s] || seen[s]) continue;
        ++count;
        seen[s] = 1;
        queue.assign(1, s);
        while (!queue.empty()) {
            size_t cur = queue.back();
            queue.pop_back();
            int ix = static_cast<int>(cur % n), iy = static_cast<int>(cur / n);
            const int nb[4][2] = {{ix - 1, iy}, {ix + 1, iy}, {ix, iy - 1}, {ix, iy + 1}};
            for (auto& q : nb) {
                if (q[0] < 0 || q[1] < 0 || q[0] >= n || q[1] >= n) continue;
                size_t j = static_cast<size_t>(q[1]) * n + q[0];
                if (in[j] && !seen[j]) {
                    seen[j] = 1;
                    queue.push_back(j);
                }
            }
        }
    }
    return count;
}

// Cut-preimage curve of F3 built directly from the quadratic roots,
// sampled uniformly in sqrt(r) so spacing stays fine near the foot.
ParamCurve oracle_f3_curve(const PhaseParam& p, double r_max, int count) {
    NumericTrace tr;
    for (int k = 0; k <= count; ++k) {
        double s = std::sqrt(r_max) * k / count;
        double r = s * s;
        tr.samples.push_back({static_cast<double>(k), f3_preimage_oracle(p, r).outer});
    }
    return ParamCurve(std::move(tr));
}

}  // namespace

TEST_CASE("window validation", "[region]") {
    REQUIRE_NOTHROW(Window(-4.0, 4.0, -4.0, 4.0));
    REQUIRE_THROWS_AS(Window(4.0, -4.0, -4.0, 4.0), std::invalid_argument);
    REQUIRE_THROWS_AS(Window(-4.0, 4.0, 2.0, 2.0), std::invalid_argument);
    double inf = std::numeric_limits<double>::infinity();
    REQUIRE_THROWS_AS(Window(-inf, 4.0, -4.0, 4.0), std::invalid_argument);
}

TEST_CASE("parametric curve primitives", "[region]") {
    SECTION("segment") {
        ParamCurve seg{Segment{Complex(0.0, 0.0), Complex(0.0, 1.0)}};
        REQUIRE(std::abs(seg.point_at(0.5) - Complex(0.0, 0.5)) < 1e-16);
        REQUIRE(seg.distance_to(Complex(0.0, 0.25)) == 0.0);
        REQUIRE(seg.distance_to(Complex(0.5, 0.5)) == Catch::Approx(0.5));
        REQUIRE(seg.distance_to(Complex(0.0, 2.0)) == Catch::Approx(1.0));
        REQUIRE_THROWS_AS(ParamCurve(Segment{Complex(1.0, 1.0), Complex(1.0, 1.0)}),
                          std::invalid_argument);
    }

    SECTION("ray") {
        ParamCurve ray{Ray{Complex(0.0, 0.0), Complex(-2.0, 0.0)}};
        REQUIRE(std::abs(ray.point_at(3.0) - Complex(-3.0, 0.0)) < 1e-16);
        REQUIRE(ray.distance_to(Complex(-5.0, 0.0)) == 0.0);
        REQUIRE(ray.distance_to(Complex(-5.0, 0.7)) == Catch::Approx(0.7));
        REQUIRE(ray.distance_to(Complex(3.0, 4.0)) == Catch::Approx(5.0));
    }

    SECTION("circle arc") {
        ParamCurve arc{CircleArc{Complex(0.0, 0.5), 0.5, kPi / 2.0, 3.0 * kPi / 2.0}};
        REQUIRE(std::abs(arc.point_at(0.0) - Complex(0.0, 1.0)) < 1e-15);
        REQUIRE(std::abs(arc.point_at(0.5) - Complex(-0.5, 0.5)) < 1e-15);
        REQUIRE(std::abs(arc.point_at(1.0) - Complex(0.0, 0.0)) < 1e-15);
        REQUIRE(arc.distance_to(Complex(-1.0, 0.5)) == Catch::Approx(0.5));
        REQUIRE(arc.distance_to(Complex(-0.5, 0.5)) < 1e-15);
        // On the right of the center the arc is far: nearest are endpoints.
        REQUIRE(arc.distance_to(Complex(0.5, 0.5)) ==
                Catch::Approx(std::abs(Complex(0.5, 0.5) - Complex(0.0, 1.0))));
    }

    SECTION("numeric trace validation") {
        NumericTrace bad1;
        bad1.samples = {{0.0, Complex(0.0, 0.0)}};
        REQUIRE_THROWS_AS(ParamCurve(std::move(bad1)), std::invalid_argument);
        NumericTrace bad2;
        bad2.samples = {{0.0, Complex(0.0, 0.0)}, {0.0, Complex(1.0, 0.0)}};
        REQUIRE_THROWS_AS(ParamCurve(std::move(bad2)), std::invalid_argument);
        NumericTrace bad3;
        bad3.samples = {{0.0, Complex(0.0, 0.0)}, {1.0, Complex(0.0, 0.0)}};
        REQUIRE_THROWS_AS(ParamCurve(std::move(bad3)), std::invalid_argument);
    }

    SECTION("trace distance agrees with exhaustive segment search") {
        PhaseParam p(-kPi / 4.0);
        ParamCurve curve = oracle_f3_curve(p, 20.0, 700);
        const auto& samples = curve.trace().samples;
        testutil::ZGen gen(31u, 0.2, 8.0);
        for (int t = 0; t < 300; ++t) {
            Complex z = gen();
            double brute = std::numeric_limits<double>::infinity();
            for (size_t k = 0; k + 1 < samples.size(); ++k) {
                Complex a = samples[k].z, b = samples[k + 1].z;
                Complex ab = b - a;
                double u = ((z.real() - a.real()) * ab.real() +
                            (z.imag() - a.imag()) * ab.imag()) /
                           std::norm(ab);
                u = std::clamp(u, 0.0, 1.0);
                brute = std::min(brute, std::abs(z - (a + u * ab)));
            }
            REQUIRE(curve.distance_to(z) == Catch::Approx(brute).margin(1e-12));
        }
    }

    SECTION("trace interpolation") {
        NumericTrace tr;
        tr.samples = {{0.0, Complex(0.0, 0.0)}, {1.0, Complex(2.0, 0.0)},
                      {2.0, Complex(2.0, 2.0)}};
        ParamCurve c{std::move(tr)};
        REQUIRE(std::abs(c.point_at(0.5) - Complex(1.0, 0.0)) < 1e-15);
        REQUIRE(std::abs(c.point_at(1.5) - Complex(2.0, 1.0)) < 1e-15);
        REQUIRE(std::abs(c.point_at(-1.0) - Complex(0.0, 0.0)) < 1e-15);
        REQUIRE(std::abs(c.point_at(9.0) - Complex(2.0, 2.0)) < 1e-15);
    }
}

TEST_CASE("half-disk distance", "[region]") {
    ExcludedDisk d{Complex(0.0, 0.5), 0.5, true};
    REQUIRE(d.distance_to(Complex(-0.25, 0.43)) == 0.0);   // interior
    REQUIRE(d.distance_to(Complex(-0.5, 0.5)) == 0.0);     // boundary arc
    REQUIRE(d.distance_to(Complex(-1.0, 0.5)) == Catch::Approx(0.5));
    REQUIRE(d.distance_to(Complex(0.5, 0.5)) == Catch::Approx(0.5));   // off the face
    REQUIRE(d.distance_to(Complex(0.3, 2.0)) ==
            Catch::Approx(std::abs(Complex(0.3, 2.0) - Complex(0.0, 1.0))));
    REQUIRE(d.distance_to(Complex(0.25, 0.5)) == Catch::Approx(0.25));
    // right half of the same circle is NOT excluded
    REQUIRE(d.distance_to(Complex(0.25, 0.93)) > 0.2);
}

TEST_CASE("fig3 region membership and distance", "[region]") {
    Region region = make_region(RegionVariant::fig3);

    SECTION("membership examples") {
        REQUIRE(region.contains(Complex(2.0, 2.0)));
        REQUIRE(region.contains(c_exp(Complex(0.0, kPi / 4.0))));
        REQUIRE(region.contains(Complex(0.5, -0.5)));
        REQUIRE_FALSE(region.contains(Complex(-1.0, 0.0)));       // on the ray
        REQUIRE_FALSE(region.contains(Complex(0.0, -1.0)));       // excluded point
        REQUIRE_FALSE(region.contains(Complex(0.0, 0.25)));       // on the segment
        REQUIRE_FALSE(region.contains(Complex(-0.25, 0.43)));     // inside the half-disk
        REQUIRE_FALSE(region.contains(Complex(0.0, 1.0)));        // the pole
    }

    SECTION("distance examples") {
        REQUIRE(region.distance_to_exclusions(Complex(1.0, 0.0)) == Catch::Approx(1.0));
        REQUIRE(region.distance_to_exclusions(Complex(-2.0, 1.0)) == Catch::Approx(1.0));
        REQUIRE(region.distance_to_exclusions(Complex(0.5, 0.5)) == Catch::Approx(0.5));
        REQUIRE(region.distance_to_exclusions(Complex(-1.0, 0.0)) == 0.0);
        REQUIRE(region.distance_to_exclusions(Complex(-0.25, 0.43)) == 0.0);
    }

    SECTION("guard monotonicity") {
        Region tight = make_region(RegionVariant::fig3, 1e-9);
        Region loose = make_region(RegionVariant::fig3, 0.2);
        testutil::ZGen gen(32u, 0.05, 6.0);
        for (int t = 0; t < 2000; ++t) {
            Complex z = gen();
            if (loose.contains(z)) REQUIRE(tight.contains(z));
        }
    }

    SECTION("non-finite points are never contained") {
        double inf = std::numeric_limits<double>::infinity();
        REQUIRE_FALSE(region.contains(Complex(inf, 0.0)));
        REQUIRE_FALSE(region.contains(Complex(0.0, std::nan(""))));
    }

    SECTION("description lists every primitive") {
        std::string desc = region.describe();
        REQUIRE(desc.find("variant=fig3") != std::string::npos);
        REQUIRE(desc.find("ray") != std::string::npos);
        REQUIRE(desc.find("segment") != std::string::npos);
        REQUIRE(desc.find("half-disk") != std::string::npos);
        REQUIRE(desc.find("point at=0,-1") != std::string::npos);
    }
}

TEST_CASE("upper-half region variant", "[region]") {
    Region region = make_region(RegionVariant::upper_half);
    REQUIRE(region.contains(Complex(0.0, 2.0)));
    REQUIRE(region.contains(Complex(0.25, 0.25)));
    REQUIRE(region.contains(Complex(-2.0, 0.5)));
    REQUIRE_FALSE(region.contains(Complex(-2.0, 0.0)));
    REQUIRE_FALSE(region.contains(Complex(0.0, -2.0)));
    REQUIRE_FALSE(region.contains(Complex(-0.25, 0.5)));
    REQUIRE_FALSE(region.contains(Complex(0.0, 1.0)));
}

TEST_CASE("connected components of fig3", "[region]") {
    Window win(-4.0, 4.0, -4.0, 4.0);

    SECTION("plain domain is connected") {
        Region region = make_region(RegionVariant::fig3, 0.015);
        for (int n : {200, 400}) {
            ComponentLabeling lab = connected_components(region, win, n);
            REQUIRE(lab.count == 1);
            REQUIRE(lab.count == oracle_component_count(region, win, n));
            REQUIRE(static_cast<int>(lab.representatives.size()) == lab.count);
        }
    }

    SECTION("adding the F3 cut-preimage curve splits the domain in two") {
        PhaseParam p(-kPi / 4.0);
        for (int n : {200, 400}) {
            double cell = win.width() / n;
            Region region = make_region(RegionVariant::fig3, 0.75 * cell);
            region.add_curve(oracle_f3_curve(p, 35.0, 900));
            ComponentLabeling lab = connected_components(region, win, n);
            REQUIRE(lab.count == 2);
            REQUIRE(lab.count == oracle_component_count(region, win, n));
            int side_a = lab.label_at(c_exp(Complex(0.0, kPi / 4.0)));
            int side_b = lab.label_at(c_exp(Complex(0.0, 3.0 * kPi / 4.0)));
            REQUIRE(side_a >= 0);
            REQUIRE(side_b >= 0);
            REQUIRE(side_a != side_b);
        }
    }

    SECTION("empty region is one component") {
        Region empty(1e-6);
        ComponentLabeling lab = connected_components(empty, Window(-1, 1, -1, 1), 64);
        REQUIRE(lab.count == 1);
        REQUIRE(lab.labels[0] == 0);
    }

    SECTION("labeling bookkeeping") {
        Region region = make_region(RegionVariant::fig3, 0.02);
        ComponentLabeling lab = connected_components(region, win, 100);
        for (int iy = 0; iy < lab.n; ++iy)
            for (int ix = 0; ix < lab.n; ++ix)
                REQUIRE(lab.label_at(lab.cell_center(ix, iy)) ==
                        lab.labels[static_cast<size_t>(iy) * lab.n + ix]);
        REQUIRE(lab.label_at(Complex(99.0, 0.0)) == -1);
    }
}
