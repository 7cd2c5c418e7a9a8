#pragma once

// Command-line front end.
//
//   branchcut curves    write the cut-preimage figures (CSV/SVG)
//   branchcut evaluate  tabulate f on the unit circle
//   branchcut audit     run the full analyticity audit
//   branchcut check     run the invariant battery
//
// Exit codes: 0 success, 2 audit contradiction or failed check,
// 3 invalid configuration, 4 I/O failure.

#include <cstdlib>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "branchcut/audit.hpp"
#include "branchcut/complex_ops.hpp"
#include "branchcut/construction.hpp"
#include "branchcut/preimage.hpp"
#include "branchcut/region.hpp"
#include "branchcut/report.hpp"

namespace branchcut {

struct RunConfig {
    double c = -kPi / 4.0;
    std::string window_spec = "-4,4,-4,4";
    int grid = 400;
    double guard = 1e-6;
    std::string out_dir;
    std::string format = "both";
    bool no_trace = false;
    std::string theta_spec;
    int samples = 1000;
    double r_max = 100.0;
    std::vector<std::string> tol_specs;

    Window window() const {
        auto parts = split_doubles(window_spec);
        if (parts.size() != 4)
            throw std::invalid_argument("--window expects x0,x1,y0,y1");
        return Window(parts[0], parts[1], parts[2], parts[3]);
    }

    std::vector<double> thetas() const {
        if (theta_spec.empty()) return {kPi / 4.0, 3.0 * kPi / 4.0};
        auto parts = split_doubles(theta_spec);
        if (parts.empty()) throw std::invalid_argument("--theta expects a comma-separated list");
        return parts;
    }

    std::map<std::string, double> tolerances() const {
        std::map<std::string, double> out;
        for (const auto& spec : tol_specs) {
            auto eq = spec.find('=');
            if (eq == std::string::npos || eq == 0)
                throw std::invalid_argument("--tol expects name=value, got '" + spec + "'");
            double v;
            try {
                size_t used = 0;
                v = std::stod(spec.substr(eq + 1), &used);
                if (used != spec.size() - eq - 1) throw std::invalid_argument(spec);
            } catch (const std::exception&) {
                throw std::invalid_argument("--tol value in '" + spec + "' is not a number");
            }
            if (!(v > 0.0)) throw std::invalid_argument("--tol values must be positive");
            out[spec.substr(0, eq)] = v;
        }
        return out;
    }

    std::filesystem::path out_path() const {
        if (!out_dir.empty()) return out_dir;
        if (const char* env = std::getenv("BRANCHCUT_OUT")) {
            if (*env) return env;
        }
        return "out";
    }

    bool want_csv() const { return format == "csv" || format == "both"; }
    bool want_svg() const { return format == "svg" || format == "both"; }

    std::vector<std::pair<std::string, std::string>> manifest(const std::string& command) const {
        std::vector<std::pair<std::string, std::string>> kv;
        kv.emplace_back("command", command);
        kv.emplace_back("c", fmt_g17(c));
        kv.emplace_back("window", window_spec);
        kv.emplace_back("grid", std::to_string(grid));
        kv.emplace_back("guard", fmt_g17(guard));
        kv.emplace_back("format", format);
        kv.emplace_back("samples", std::to_string(samples));
        kv.emplace_back("r_max", fmt_g17(r_max));
        kv.emplace_back("no_trace", no_trace ? "1" : "0");
        for (const auto& t : tol_specs) kv.emplace_back("tol", t);
        return kv;
    }

  private:
    static std::vector<double> split_doubles(const std::string& s) {
        std::vector<double> out;
        std::stringstream ss(s);
        std::string item;
        while (std::getline(ss, item, ',')) {
            if (item.empty()) continue;
            size_t used = 0;
            double v = std::stod(item, &used);
            if (used != item.size())
                throw std::invalid_argument("cannot parse number '" + item + "'");
            out.push_back(v);
        }
        return out;
    }
};

namespace detail {

inline std::vector<Complex> trace_points(const NumericTrace& tr) {
    std::vector<Complex> out;
    out.reserve(tr.samples.size());
    for (const auto& s : tr.samples) out.push_back(s.z);
    return out;
}

inline NumericTrace sample_arc(Complex center, double radius, double a0, double a1, int count) {
    NumericTrace tr;
    for (int k = 0; k <= count; ++k) {
        double a = a0 + (a1 - a0) * k / count;
        tr.samples.push_back({a, center + radius * Complex(std::cos(a), std::sin(a))});
    }
    return tr;
}

inline NumericTrace sample_segment(Complex a, Complex b, int count) {
    NumericTrace tr;
    for (int k = 0; k <= count; ++k) {
        double t = static_cast<double>(k) / count;
        tr.samples.push_back({t, a + t * (b - a)});
    }
    return tr;
}

}  // namespace detail

/// Writes fig1/fig2 (closed-form cut preimages of F1, F2) and fig3 (the
/// audited domain) plus a plain-text region table and a manifest.
inline int cmd_curves(const RunConfig& cfg) {
    PhaseParam p(cfg.c);
    Window win = cfg.window();
    auto dir = cfg.out_path();

    struct Item {
        FuncId func;
        const char* name;
    };
    for (const Item& item : {Item{FuncId::f1, "fig1"}, Item{FuncId::f2, "fig2"}}) {
        ParamCurve curve = closed_form_preimage({item.func, p, cfg.r_max, cfg.samples});
        if (cfg.want_csv())
            write_text_file(dir / (std::string(item.name) + ".csv"), curve_csv(curve.trace()));
        if (cfg.want_svg()) {
            std::vector<SvgCurve> cs = {{detail::trace_points(curve.trace())}};
            std::vector<SvgDot> dots = {{Complex(0.0, 0.0)}, {Complex(0.0, 1.0)}};
            write_text_file(dir / (std::string(item.name) + ".svg"), svg_figure(win, cs, dots));
        }
    }

    Region region = make_region(RegionVariant::fig3, cfg.guard);
    write_text_file(dir / "region.txt", region.describe());

    NumericTrace ray = detail::sample_segment(Complex(0.0, 0.0), Complex(win.x0, 0.0), 200);
    NumericTrace arc = detail::sample_arc(Complex(0.0, 0.5), 0.5, kPi / 2.0, 3.0 * kPi / 2.0, 200);
    NumericTrace seg = detail::sample_segment(Complex(0.0, 0.0), Complex(0.0, 1.0), 100);
    std::vector<Complex> marks = {Complex(0.0, 0.0), Complex(0.0, 1.0), Complex(0.0, -1.0)};
    if (cfg.want_csv()) {
        std::vector<NamedPolyline> pieces = {
            {"ray", ray.samples}, {"arc", arc.samples}, {"segment", seg.samples}};
        NamedPolyline pts{"point", {}};
        for (size_t k = 0; k < marks.size(); ++k)
            pts.samples.push_back({static_cast<double>(k), marks[k]});
        pieces.push_back(pts);
        write_text_file(dir / "fig3.csv", figure_csv(pieces));
    }
    if (cfg.want_svg()) {
        std::vector<SvgCurve> cs;
        cs.push_back({detail::trace_points(ray)});
        SvgCurve disk{detail::trace_points(arc)};
        disk.fill = true;
        cs.push_back(disk);
        cs.push_back({detail::trace_points(seg)});
        std::vector<SvgDot> dots;
        for (Complex z : marks) dots.push_back({z});
        write_text_file(dir / "fig3.svg", svg_figure(win, cs, dots));
    }
    write_text_file(dir / "manifest.txt", manifest_text(cfg.manifest("curves")));
    return 0;
}

/// Evaluates f on the unit circle at the requested angles and reports the
/// deviation from the expected locally-constant value.
inline int cmd_evaluate(const RunConfig& cfg) {
    PhaseParam p(cfg.c);
    std::vector<std::tuple<double, Complex, double>> rows;
    for (double theta : cfg.thetas()) {
        if (!(theta > -kPi && theta <= kPi))
            throw std::invalid_argument("theta must lie in (-pi, pi]");
        if (std::abs(theta - kPi / 2.0) < 1e-9)
            throw std::invalid_argument("theta = pi/2 is singular (z = i is a pole of F1)");
        Complex z = c_exp(Complex(0.0, theta));
        Complex fv = eval_f(z, p);
        Complex expected;
        if (theta > 0.0 && theta < kPi / 2.0) {
            expected = Complex(0.0, 0.0);
        } else if (theta > kPi / 2.0 && theta < kPi) {
            expected = Complex(0.0, -2.0 * kPi);
        } else {
            double k = std::round(fv.imag() / (2.0 * kPi));
            expected = Complex(0.0, 2.0 * kPi * k);
        }
        rows.emplace_back(theta, fv, std::abs(fv - expected));
    }
    std::cout << "theta            f(e^{i theta})                       deviation\n";
    for (const auto& [theta, fv, dev] : rows) {
        char line[160];
        std::snprintf(line, sizeof(line), "%-16.10g %.10g%+.10gi      %.3g\n", theta, fv.real(),
                      fv.imag(), dev);
        std::cout << line;
    }
    if (cfg.want_csv()) {
        auto dir = cfg.out_path();
        write_text_file(dir / "evaluate.csv", evaluation_csv(rows));
        write_text_file(dir / "manifest.txt", manifest_text(cfg.manifest("evaluate")));
    }
    return 0;
}

/// Runs the component audit and writes the CSV bundle plus a summary.
/// Returns 2 when the constancy check fails (e.g. with --no-trace).
inline int cmd_audit(const RunConfig& cfg) {
    PhaseParam p(cfg.c);
    Window win = cfg.window();
    AuditOptions opt;
    opt.guard = cfg.guard;
    opt.include_trace = !cfg.no_trace;
    auto tols = cfg.tolerances();
    if (auto it = tols.find("constancy"); it != tols.end()) opt.constancy_tol = it->second;
    if (auto it = tols.find("zero"); it != tols.end()) opt.zero_tol = it->second;
    if (auto it = tols.find("jump"); it != tols.end()) opt.jump_threshold = it->second;

    AuditReport rep = run_component_audit(p, win, cfg.grid, opt);

    std::string summary;
    {
        char buf[256];
        std::snprintf(buf, sizeof(buf), "audit: c=%.17g window=[%g,%g]x[%g,%g] grid=%d\n",
                      rep.c, win.x0, win.x1, win.y0, win.y1, rep.n);
        summary += buf;
        std::snprintf(buf, sizeof(buf), "scan: %zu samples, %zu jumps, %zu gaps\n",
                      rep.scan.samples, rep.scan.jumps.size(), rep.scan.gaps.size());
        summary += buf;
        for (size_t k = 0; k < rep.located.size(); ++k) {
            const auto& b = rep.located[k];
            std::snprintf(buf, sizeof(buf),
                          "jump %zu: z=%.12g%+.12gi |delta|=%.6g crossed=%s cut_distance=%.3g\n",
                          k + 1, b.location.real(), b.location.imag(),
                          std::abs(rep.scan.jumps[k].delta), log_arg_name(b.crossed),
                          b.arg_cut_distance);
            summary += buf;
        }
        if (rep.trace) {
            const auto& s = rep.trace->curve.trace().samples;
            std::snprintf(buf, sizeof(buf),
                          "trace: %zu samples from %g%+gi to %g%+gi complete=%s\n", s.size(),
                          s.front().z.real(), s.front().z.imag(), s.back().z.real(),
                          s.back().z.imag(), rep.trace->complete ? "yes" : "no");
            summary += buf;
        } else {
            summary += "trace: disabled\n";
        }
        std::snprintf(buf, sizeof(buf), "components: %d\n", rep.labeling.count);
        summary += buf;
        for (const auto& ci : rep.components) {
            std::snprintf(buf, sizeof(buf),
                          "  component %d: rep=%g%+gi value=%.12g%+.12gi max_deviation=%.3g "
                          "cells=%ld\n",
                          ci.label, ci.representative.real(), ci.representative.imag(),
                          ci.value.real(), ci.value.imag(), ci.max_deviation, ci.cells);
            summary += buf;
        }
        for (const auto& zf : rep.zeros) {
            std::snprintf(buf, sizeof(buf),
                          "zero cluster: at %.6g%+.6gi isolated=%s witness_radius=%g cells=%ld\n",
                          zf.location.real(), zf.location.imag(), zf.isolated ? "yes" : "no",
                          zf.witness_radius, zf.cluster_cells);
            summary += buf;
        }
        if (rep.constancy_ok) {
            summary += "verdict: f is locally constant on each component of D minus the traced "
                       "curve\n";
        } else {
            std::snprintf(buf, sizeof(buf),
                          "verdict: contradiction: values differ by up to %.6g within a single "
                          "component\n",
                          rep.worst_deviation);
            summary += buf;
        }
    }
    std::cout << summary;

    auto dir = cfg.out_path();
    write_text_file(dir / "summary.txt", summary);
    if (cfg.want_csv()) {
        write_text_file(dir / "jumps.csv", jumps_csv(rep.scan.jumps, rep.located));
        write_text_file(dir / "components.csv", components_csv(rep.components));
        write_text_file(dir / "zeros.csv", zeros_csv(rep.zeros));
        if (rep.trace) write_text_file(dir / "trace.csv", curve_csv(rep.trace->curve.trace()));
    }
    if (cfg.want_svg()) {
        std::vector<SvgCurve> cs;
        NumericTrace ray = detail::sample_segment(Complex(0.0, 0.0), Complex(win.x0, 0.0), 200);
        NumericTrace arc =
            detail::sample_arc(Complex(0.0, 0.5), 0.5, kPi / 2.0, 3.0 * kPi / 2.0, 200);
        NumericTrace seg = detail::sample_segment(Complex(0.0, 0.0), Complex(0.0, 1.0), 100);
        cs.push_back({detail::trace_points(ray), "#555555", 1.0});
        SvgCurve disk{detail::trace_points(arc), "#555555", 1.0};
        disk.fill = true;
        cs.push_back(disk);
        cs.push_back({detail::trace_points(seg), "#555555", 1.0});
        if (rep.trace) cs.push_back({detail::trace_points(rep.trace->curve.trace())});
        std::vector<SvgDot> dots;
        for (const auto& ci : rep.components) dots.push_back({ci.representative, "#2255cc", 4.0});
        write_text_file(dir / "audit.svg", svg_figure(win, cs, dots));
    }
    write_text_file(dir / "manifest.txt", manifest_text(cfg.manifest("audit")));
    return rep.constancy_ok ? 0 : 2;
}

/// Invariant battery: prints one PASS/FAIL line per check.  The `identity`
/// tolerance override tightens or loosens the algebraic-identity checks.
inline int cmd_check(const RunConfig& cfg) {
    auto tols = cfg.tolerances();
    const double id_tol = tols.count("identity") ? tols.at("identity") : 0.0;
    auto pick = [&](double fallback) { return id_tol > 0.0 ? id_tol : fallback; };

    int failures = 0;
    auto report = [&](const std::string& name, double margin, double tol) {
        bool pass = margin <= tol;
        if (!pass) ++failures;
        char line[160];
        std::snprintf(line, sizeof(line), "[%s] %-24s margin=%.3g tol=%.3g\n",
                      pass ? "PASS" : "FAIL", name.c_str(), margin, tol);
        std::cout << line;
    };

    std::mt19937 rng(20240817u);
    std::uniform_real_distribution<double> uang(-kPi, kPi);
    std::uniform_real_distribution<double> ulog(-3.0, 3.0);
    auto rand_z = [&]() {
        return std::exp(ulog(rng)) * c_exp(Complex(0.0, uang(rng)));
    };

    {  // the negative real axis maps to exactly +pi
        double worst = 0.0;
        for (int k = 0; k < 500; ++k) {
            double x = std::pow(10.0, -8.0 + 16.0 * k / 499.0);
            worst = std::max(worst, std::abs(principal_arg(Complex(-x, 0.0)) - kPi));
            worst = std::max(worst, std::abs(principal_arg(Complex(-x, -0.0)) - kPi));
        }
        report("arg-negative-axis", worst, 0.0);
    }
    {  // polar round trip
        double worst = 0.0;
        for (int k = 0; k < 2000; ++k) {
            Complex z = rand_z();
            worst = std::max(worst, std::abs(from_polar(to_polar(z)) - z) / std::abs(z));
        }
        report("polar-roundtrip", worst, pick(1e-14));
    }
    {  // exp(log(z)) = z
        double worst = 0.0;
        for (int k = 0; k < 2000; ++k) {
            Complex z = rand_z();
            worst = std::max(worst, std::abs(c_exp(pln(z)) - z) / std::abs(z));
        }
        report("exp-log-roundtrip", worst, pick(kRoundTripTol));
    }
    {  // product rule with explicit branch offset
        double worst = 0.0;
        bool k_ok = true;
        for (int t = 0; t < 2000; ++t) {
            Complex a = rand_z(), b = rand_z();
            int k = log_branch_offset(a, b);
            if (k < -1 || k > 1) k_ok = false;
            Complex dev = pln(a * b) - pln(a) - pln(b) - Complex(0.0, 2.0 * kPi * k);
            worst = std::max(worst, std::abs(dev));
        }
        report("log-branch-offset", k_ok ? worst : 1.0, pick(kIdentityTol));
    }
    {  // F2 = i F1
        double worst = 0.0;
        for (int t = 0; t < 2000; ++t) {
            Complex z = rand_z();
            if (std::abs(z - kI) < 1e-6) continue;
            Complex a = eval_f2(z), b = kI * eval_f1(z);
            worst = std::max(worst, std::abs(a - b) / std::max(1e-300, std::abs(a)));
        }
        report("f2-equals-i-f1", worst, pick(1e-15));
    }
    {  // F3 via logs equals F3 via the rational form
        PhaseParam p(cfg.c);
        double worst = 0.0;
        for (int t = 0; t < 2000; ++t) {
            Complex z = rand_z();
            if (std::abs(z * z - 1.0) < 1e-2) continue;
            Complex a = eval_f3(z, p), b = rational_f3(z, p);
            worst = std::max(worst, std::abs(a - b) / std::max(1e-300, std::abs(b)));
        }
        report("f3-branch-free", worst, pick(kIdentityTol));
    }
    {  // sin^2 + cos^2 = 1, relative to the summand size
        double worst = 0.0;
        std::uniform_real_distribution<double> u10(-10.0, 10.0);
        for (int t = 0; t < 2000; ++t) {
            Complex z(u10(rng), u10(rng));
            if (std::abs(z) > 10.0) continue;
            Complex s = c_sin(z), c = c_cos(z);
            double scale = 1.0 + std::norm(s) + std::norm(c);
            worst = std::max(worst, std::abs(s * s + c * c - 1.0) / scale);
        }
        report("sin2-plus-cos2", worst, pick(kIdentityTol));
    }
    {  // root pair product is -1
        double worst = 0.0;
        for (double c : {-3.0, -3.0 * kPi / 4.0, -kPi / 4.0, -0.1}) {
            PhaseParam p(c);
            for (double r : {0.0, 0.01, 0.3, 1.0, 5.0, 40.0}) {
                RootPair roots = f3_preimage_oracle(p, r);
                worst = std::max(worst, std::abs(roots.outer * roots.inner + 1.0));
            }
        }
        report("root-product", worst, pick(kIdentityTol));
    }
    {  // unit-circle case values are 0 and -2 pi i
        double worst = 0.0;
        for (double c : {-3.0 * kPi / 4.0, -kPi / 4.0, -1.0}) {
            PhaseParam p(c);
            for (int k = 0; k < 60; ++k) {
                double th1 = 0.02 + (kPi / 2.0 - 0.04) * k / 59.0;
                double th2 = kPi / 2.0 + 0.02 + (kPi / 2.0 - 0.04) * k / 59.0;
                worst = std::max(worst, std::abs(eval_f(c_exp(Complex(0.0, th1)), p)));
                worst = std::max(worst,
                                 std::abs(eval_f(c_exp(Complex(0.0, th2)), p) +
                                          Complex(0.0, 2.0 * kPi)));
            }
        }
        report("arc-case-values", worst, 1e-9);
    }
    {  // f lands on a 2 pi i multiple wherever defined
        PhaseParam p(cfg.c);
        Region region = make_region(RegionVariant::fig3, 1e-3);
        double worst = 0.0;
        int used = 0;
        while (used < 500) {
            Complex z = rand_z();
            if (std::abs(z) > 50.0 || !region.contains(z)) continue;
            ++used;
            Complex fv = eval_f(z, p);
            double k = std::round(fv.imag() / (2.0 * kPi));
            worst = std::max(worst, std::abs(fv - Complex(0.0, 2.0 * kPi * k)));
        }
        report("f-2pii-multiple", worst, pick(1e-10));
    }
    {  // CSV output is byte-deterministic
        PhaseParam p(cfg.c);
        ParamCurve c1 = closed_form_preimage({FuncId::f1, p, cfg.r_max, cfg.samples});
        ParamCurve c2 = closed_form_preimage({FuncId::f1, p, cfg.r_max, cfg.samples});
        bool same = curve_csv(c1.trace()) == curve_csv(c2.trace());
        report("csv-determinism", same ? 0.0 : 1.0, 0.0);
    }
    return failures == 0 ? 0 : 2;
}

/// Parses arguments (program name excluded) and dispatches.  All
/// configuration problems map to exit code 3, I/O failures to 4.
inline int run_cli(const std::vector<std::string>& args) {
    RunConfig cfg;
    CLI::App app{"numerical audit of a branch-cut construction", "branchcut"};
    app.require_subcommand(1);

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--c", cfg.c, "phase parameter in (-pi, 0), not -pi/2");
        sub->add_option("--window", cfg.window_spec, "view window x0,x1,y0,y1");
        sub->add_option("--grid", cfg.grid, "cells per axis");
        sub->add_option("--guard", cfg.guard, "exclusion guard distance");
        sub->add_option("--out", cfg.out_dir, "output directory (default $BRANCHCUT_OUT or ./out)");
        sub->add_option("--format", cfg.format, "csv, svg or both");
        sub->add_option("--tol", cfg.tol_specs, "tolerance override name=value (repeatable)");
    };

    CLI::App* curves = app.add_subcommand("curves", "write cut-preimage figures");
    add_common(curves);
    curves->add_option("--samples", cfg.samples, "points per closed-form curve");
    curves->add_option("--r-max", cfg.r_max, "largest cut depth to sample");

    CLI::App* evaluate = app.add_subcommand("evaluate", "tabulate f on the unit circle");
    add_common(evaluate);
    evaluate->add_option("--theta", cfg.theta_spec, "comma-separated angles in (-pi, pi]");

    CLI::App* audit = app.add_subcommand("audit", "run the analyticity audit");
    add_common(audit);
    audit->add_flag("--no-trace", cfg.no_trace, "skip the discontinuity-curve exclusion");

    CLI::App* check = app.add_subcommand("check", "run the invariant battery");
    add_common(check);

    std::vector<const char*> argv;
    argv.push_back("branchcut");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 3;
    }

    try {
        if (cfg.format != "csv" && cfg.format != "svg" && cfg.format != "both")
            throw std::invalid_argument("--format must be csv, svg or both");
        if (cfg.grid < 32) throw std::invalid_argument("--grid must be at least 32");
        cfg.tolerances();  // validate early
        if (curves->parsed()) return cmd_curves(cfg);
        if (evaluate->parsed()) return cmd_evaluate(cfg);
        if (audit->parsed()) return cmd_audit(cfg);
        if (check->parsed()) return cmd_check(cfg);
        return 3;
    } catch (const io_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const bracket_error& e) {
        std::cerr << "audit error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 3;
    } catch (const std::domain_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}

}  // namespace branchcut
