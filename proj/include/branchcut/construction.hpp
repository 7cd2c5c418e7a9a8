#pragma once

// The function under audit and its factor maps.
//
//   F1(z) = z / (iz + 1)          pole at z = i
//   F2(z) = iz / (iz + 1)         so F2 = i * F1
//   F3(z) = i e^{ic} (1 - sin(-i Ln z))
//   f(z)  = Ln F1 + Ln F2 + Ln F3 - Ln z + ln 2 - i pi/2 - i c
//
// The phase parameter c is constrained to (-pi, 0) with c != -pi/2.

#include <cmath>
#include <stdexcept>

#include "branchcut/complex_ops.hpp"

namespace branchcut {

/// Margin below which c is considered to collide with -pi/2 (or the
/// interval endpoints) and is rejected.
inline constexpr double kPhaseMargin = 1e-9;

struct pole_error : std::domain_error {
    using std::domain_error::domain_error;
};

/// Validated phase parameter c in (-pi, 0), bounded away from -pi/2.
class PhaseParam {
  public:
    explicit PhaseParam(double c) : c_(c) {
        if (!std::isfinite(c) || c <= -kPi + kPhaseMargin || c >= -kPhaseMargin)
            throw std::invalid_argument("PhaseParam: c must lie in (-pi, 0)");
        if (std::abs(c + kPi / 2.0) < kPhaseMargin)
            throw std::invalid_argument("PhaseParam: c too close to -pi/2");
    }

    double c() const { return c_; }

    /// e^{ic}
    Complex phase() const { return c_exp(Complex(0.0, c_)); }

  private:
    double c_;
};

inline Complex eval_f1(Complex z) {
    Complex den = kI * z + 1.0;
    if (den == Complex(0.0, 0.0)) throw pole_error("eval_f1: pole at z = i");
    return z / den;
}

inline Complex eval_f2(Complex z) {
    Complex den = kI * z + 1.0;
    if (den == Complex(0.0, 0.0)) throw pole_error("eval_f2: pole at z = i");
    return (kI * z) / den;
}

/// F3 exactly as written: the branch of Ln z matters only through sin,
/// which cancels the choice; see rational_f3 for the branch-free form.
inline Complex eval_f3(Complex z, const PhaseParam& p) {
    if (z == Complex(0.0, 0.0)) throw std::domain_error("eval_f3: z = 0");
    return kI * p.phase() * (1.0 - c_sin(-kI * pln(z)));
}

/// Same map as eval_f3 via sin(-i Ln z) = (z - 1/z) / (2i); no logarithm,
/// no overflow for large |z|.
inline Complex rational_f3(Complex z, const PhaseParam& p) {
    if (z == Complex(0.0, 0.0)) throw std::domain_error("rational_f3: z = 0");
    Complex s = (z - 1.0 / z) / Complex(0.0, 2.0);
    return kI * p.phase() * (1.0 - s);
}

/// The seven-term composite.  Throws pole_error at z = i and
/// std::domain_error when any logarithm argument vanishes (z = 0 in
/// exact arithmetic).
inline Complex eval_f(Complex z, const PhaseParam& p) {
    Complex w1 = eval_f1(z);
    Complex w2 = eval_f2(z);
    Complex w3 = eval_f3(z, p);
    if (w1 == Complex(0.0, 0.0) || w2 == Complex(0.0, 0.0) || w3 == Complex(0.0, 0.0))
        throw std::domain_error("eval_f: logarithm argument vanished");
    return pln(w1) + pln(w2) + pln(w3) - pln(z) +
           Complex(std::numbers::ln2, -kPi / 2.0 - p.c());
}

/// Closed forms of the factors on the unit circle z = e^{i theta}.
/// The shared denominator 2 cos(theta/2 + pi/4) vanishes at theta = pi/2.
struct UnitCircleForms {
    Complex f1;
    Complex f2;
    Complex f3;
};

inline UnitCircleForms unit_circle_forms(double theta, const PhaseParam& p) {
    if (!(theta > -kPi && theta <= kPi))
        throw std::invalid_argument("unit_circle_forms: theta must lie in (-pi, pi]");
    double half = theta / 2.0 + kPi / 4.0;
    double den = 2.0 * std::cos(half);
    if (std::abs(den) < 1e-12)
        throw std::domain_error("unit_circle_forms: singular denominator at theta = pi/2");
    Complex rot = c_exp(Complex(0.0, theta / 2.0));
    UnitCircleForms out;
    out.f1 = c_exp(Complex(0.0, -kPi / 4.0)) * rot / den;
    out.f2 = c_exp(Complex(0.0, kPi / 4.0)) * rot / den;
    double c2 = std::cos(half);
    out.f3 = 2.0 * kI * p.phase() * (c2 * c2);
    return out;
}

}  // namespace branchcut
