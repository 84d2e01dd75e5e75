#pragma once

#include <array>
#include <vector>

#include "qp/poly.hpp"
#include "qp/rat.hpp"

namespace qp::moduli {

/// j(lambda) = 256 (1 - lambda + lambda^2)^3 / (lambda^2 (1 - lambda)^2),
/// exactly; lambda in {0, 1} maps to infinity.
P1Rat legendre_j(const Rat& lambda);

/// The same formula over the Gaussian rationals (for certified-numeric
/// oracles); throws PoleValue at lambda in {0, 1}.
GaussRat legendre_j(const GaussRat& lambda);

/// A critical point of the Legendre j-function: a rational lambda or a root
/// of an irreducible minimal polynomial (selected by index in the (Re, Im)
/// order of the certified roots).
struct CriticalLambda {
    enum class Kind { Rational, Algebraic };
    Kind kind = Kind::Rational;
    Rat value;       // Rational
    QPoly min_poly;  // Algebraic
    int root_index = 0;
};

struct RamificationDatum {
    CriticalLambda critical_lambda;
    P1Rat critical_value;
    int index = 2;  // ramification index, >= 2 at every critical point
};

/// Differentiates j exactly, factors the numerator of j' over Q, evaluates
/// the critical values, and verifies each ramification index by the exact
/// order of vanishing. Returns the rational critical points ascending
/// (-1, 1/2, 2, all with value 1728 and index 2) followed by the two roots
/// of lambda^2 - lambda + 1 (value 0, index 3).
std::vector<RamificationDatum> legendre_ramification();

/// Fiber bookkeeping for the j-map on pencils: the scheme-theoretic fiber
/// class coefficient is always 12; the reduced orbit closure divides it by
/// the fiber multiplicity (2 over 1728, 3 over 0, 1 elsewhere including
/// infinity).
struct FiberStructure {
    P1Rat a;
    int multiplicity = 1;
    int fiber_class_coeff = 12;
    int reduced_class_coeff = 12;
};

FiberStructure fiber_structure(const P1Rat& a);

/// The Moebius image of the fourth point after the first three are sent to
/// 0, 1, infinity. Exact on P^1(Q); throws CoincidentRoots.
Rat cross_ratio_lambda(const std::array<P1Rat, 4>& roots);

/// The same map on four finite Gaussian rationals (certified approximations
/// with disjoint disks).
GaussRat cross_ratio_lambda(const std::array<GaussRat, 4>& roots);

}  // namespace qp::moduli
