#pragma once

#include <cmath>
#include <complex>
#include <random>

#include "branchcut/complex_ops.hpp"

namespace testutil {

using branchcut::Complex;

inline bool close_abs(Complex a, Complex b, double tol) { return std::abs(a - b) <= tol; }

inline bool close_rel(Complex a, Complex b, double tol) {
    double scale = std::max(std::abs(a), std::abs(b));
    if (scale == 0.0) return true;
    return std::abs(a - b) <= tol * scale;
}

/// Deterministic point generator: modulus log-uniform in [mod_lo, mod_hi],
/// angle uniform in (-pi, pi).
class ZGen {
  public:
    ZGen(unsigned seed, double mod_lo, double mod_hi)
        : rng_(seed), ang_(-branchcut::kPi + 1e-12, branchcut::kPi),
          logm_(std::log(mod_lo), std::log(mod_hi)) {}

    Complex operator()() {
        double m = std::exp(logm_(rng_));
        double a = ang_(rng_);
        return {m * std::cos(a), m * std::sin(a)};
    }

  private:
    std::mt19937 rng_;
    std::uniform_real_distribution<double> ang_;
    std::uniform_real_distribution<double> logm_;
};

/// Uniform-in-area annulus sampler.
class AnnulusGen {
  public:
    AnnulusGen(unsigned seed, double r_lo, double r_hi)
        : rng_(seed), ang_(-branchcut::kPi + 1e-12, branchcut::kPi),
          area_(r_lo * r_lo, r_hi * r_hi) {}

    Complex operator()() {
        double m = std::sqrt(area_(rng_));
        double a = ang_(rng_);
        return {m * std::cos(a), m * std::sin(a)};
    }

  private:
    std::mt19937 rng_;
    std::uniform_real_distribution<double> ang_;
    std::uniform_real_distribution<double> area_;
};

}  // namespace testutil
