#pragma once

#include <utility>
#include <vector>

#include "qp/poly.hpp"
#include "qp/rat.hpp"

namespace qp {

/// Open isolating interval (lo, hi) for one real root, or an exact hit when
/// lo == hi.
struct RealRootInterval {
    Rat lo, hi;
    bool exact() const { return lo == hi; }
};

/// Sturm-based isolation of the real roots of a squarefree polynomial.
/// Intervals are returned in increasing order and are pairwise disjoint.
std::vector<RealRootInterval> isolate_real_roots(const QPoly& p);

/// Refines an isolating interval of squarefree p by bisection until
/// hi - lo <= width.
RealRootInterval refine_real_root(const QPoly& p, RealRootInterval iv, const Rat& width);

/// All rational roots of p (any degree), each with its multiplicity in p.
/// Exact: candidates come from certified real-root isolation plus the
/// denominator bound of the rational root theorem, and every candidate is
/// verified by exact evaluation.
std::vector<std::pair<Rat, int>> rational_roots(const QPoly& p);

/// Monic irreducible factorization over Q. Complete for polynomials whose
/// squarefree factors have degree <= 4 after rational roots are removed
/// (all this library needs); throws otherwise.
/// Returns pairs (monic irreducible factor, multiplicity).
std::vector<std::pair<QPoly, int>> factor_rational_poly(const QPoly& p);

}  // namespace qp
