#pragma once

#include <vector>

#include "qp/poly.hpp"
#include "qp/rat.hpp"

namespace qp {

/// A certified complex root: the approximation is stored exactly (a Gaussian
/// rational, dyadic on the numeric path, radius 0 when the root is rational),
/// together with an exact rational upper bound on the distance to the true
/// root and the exact multiplicity from the squarefree decomposition.
struct CRoot {
    GaussRat approx;
    Rat radius;        // 0 means the root is exact
    int multiplicity;  // >= 1
};

/// Certified complex roots of p != 0, one CRoot per distinct root.
///
/// Multiplicities come from the exact squarefree decomposition and sum to
/// deg(p). Rational roots are returned exactly. The remaining roots are
/// approximated by an Aberth iteration at `precision_bits` working precision
/// (doubling on certification failure, up to 4096 bits) and certified with
/// exact arithmetic: each disk D(approx, radius) contains exactly one root
/// of p, and 2 * radius is below the minimum pairwise distance between the
/// approximations. Roots are sorted by (Re, Im).
///
/// Throws ZeroPolynomial for p = 0 and CertificationFailure past 4096 bits.
std::vector<CRoot> complex_roots(const QPoly& p, unsigned precision_bits = 256);

/// Exact upper bound for |p(z)| at a Gaussian rational point.
Rat poly_abs_upper_bound(const QPoly& p, const GaussRat& z);

}  // namespace qp
