#pragma once

// Principal-branch complex primitives.
//
// Everything downstream depends on one convention: the argument of a
// nonzero complex number lies in (-pi, pi], and the negative real axis
// maps to exactly +pi.  A signed zero in the imaginary part would let
// atan2 return -pi, so it is normalized away before any angle is taken.

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace branchcut {

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr Complex kI{0.0, 1.0};

/// Relative tolerance for algebraic identities checked in tests and audits.
inline constexpr double kIdentityTol = 1e-12;

/// Relative tolerance for exp/log round trips.
inline constexpr double kRoundTripTol = 1e-13;

inline bool is_finite(Complex z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

/// Argument in (-pi, pi]; exactly +pi on the negative real axis.
/// Throws std::domain_error for 0 or non-finite input.
inline double principal_arg(Complex z) {
    if (!is_finite(z)) throw std::domain_error("principal_arg: non-finite input");
    if (z.real() == 0.0 && z.imag() == 0.0)
        throw std::domain_error("principal_arg: argument of zero is undefined");
    double im = z.imag();
    if (im == 0.0) im = 0.0;  // -0.0 -> +0.0 so atan2 picks +pi, not -pi
    return std::atan2(im, z.real());
}

/// Modulus/angle pair with the angle already reduced to (-pi, pi].
struct PolarForm {
    double modulus;
    double angle;

    PolarForm(double m, double a) : modulus(m), angle(a) {
        if (!(m > 0.0) || !std::isfinite(m))
            throw std::invalid_argument("PolarForm: modulus must be positive and finite");
        if (!(a > -kPi && a <= kPi))
            throw std::invalid_argument("PolarForm: angle must lie in (-pi, pi]");
    }
};

inline PolarForm to_polar(Complex z) {
    return PolarForm(std::abs(z), principal_arg(z));
}

inline Complex from_polar(const PolarForm& p) {
    return {p.modulus * std::cos(p.angle), p.modulus * std::sin(p.angle)};
}

/// Principal logarithm: ln|z| + i*arg(z) with arg in (-pi, pi].
inline Complex pln(Complex z) {
    return {std::log(std::abs(z)), principal_arg(z)};
}

/// Complex exponential via exp(x)(cos y + i sin y).  Inputs whose real or
/// imaginary magnitude would overflow double range are rejected loudly.
inline Complex c_exp(Complex z) {
    if (!is_finite(z)) throw std::domain_error("c_exp: non-finite input");
    if (z.real() > 700.0 || std::abs(z.imag()) > 700.0)
        throw std::range_error("c_exp: input magnitude too large");
    double m = std::exp(z.real());
    return {m * std::cos(z.imag()), m * std::sin(z.imag())};
}

/// sin(z) = (e^{iz} - e^{-iz}) / (2i), built on c_exp.
inline Complex c_sin(Complex z) {
    Complex d = c_exp(kI * z) - c_exp(-kI * z);
    return Complex(0.0, -0.5) * d;
}

/// cos(z) = (e^{iz} + e^{-iz}) / 2.
inline Complex c_cos(Complex z) {
    return 0.5 * (c_exp(kI * z) + c_exp(-kI * z));
}

/// Branch correction k in Ln(ab) = Ln(a) + Ln(b) + 2*pi*i*k.
/// Always one of {-1, 0, 1}.
inline int log_branch_offset(Complex a, Complex b) {
    Complex diff = pln(a * b) - pln(a) - pln(b);
    return static_cast<int>(std::llround(diff.imag() / (2.0 * kPi)));
}

/// Euclidean distance from w to the branch cut {x <= 0, y = 0}.
inline double cut_distance(Complex w) {
    if (w.real() <= 0.0) return std::abs(w.imag());
    return std::abs(w);
}

/// Chebyshev-style cut distance used by grid scans: max of the imaginary
/// offset and the positive part of the real component.
inline double cut_distance_linf(Complex w) {
    return std::max(std::abs(w.imag()), std::max(w.real(), 0.0));
}

/// True when w lies on the cut up to tol in the L^inf metric.
inline bool on_cut(Complex w, double tol = 0.0) {
    return cut_distance_linf(w) <= tol;
}

}  // namespace branchcut
