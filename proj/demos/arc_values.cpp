// Evaluates the composite map on both unit-circle arcs and shows the two
// locally constant values, plus the cut preimage of F3 at a sample depth.

#include <cstdio>

#include "branchcut/construction.hpp"
#include "branchcut/preimage.hpp"

using namespace branchcut;

int main() {
    PhaseParam p(-kPi / 4.0);
    for (double theta : {kPi / 6.0, kPi / 3.0, 2.0 * kPi / 3.0, 5.0 * kPi / 6.0}) {
        Complex f = eval_f(c_exp(Complex(0.0, theta)), p);
        std::printf("theta = %8.5f   f = %+.3e %+.3ei\n", theta, f.real(), f.imag());
    }
    RootPair roots = f3_preimage_oracle(p, 1.0);
    std::printf("F3(z) = -1 at z = %.6f%+.6fi and z = %.6f%+.6fi\n", roots.outer.real(),
                roots.outer.imag(), roots.inner.real(), roots.inner.imag());
    std::printf("product of the roots: %.17g%+.17gi\n", (roots.outer * roots.inner).real(),
                (roots.outer * roots.inner).imag());
    return 0;
}
