#pragma once

#include <array>

#include "qp/pencil.hpp"

namespace qp {

enum class Path { Exact, CertifiedNumeric };

/// Result of simultaneous diagonalization of a smooth pencil.
///
/// `basis` is the 2x2 basis change that replaced Q0 by a smooth member when
/// det(Q0) = 0 (identity otherwise); `transform` has the eigenbasis in its
/// columns, so transform^T * Q0' * transform = I and
/// transform^T * Q1' * transform = diag(lambdas) for the basis-changed pair —
/// exactly on the Exact path, within `residual` entrywise on the numeric one.
/// Lambdas are sorted ascending (rational) or by (Re, Im) (numeric).
struct DiagonalizationResult {
    std::vector<CRoot> lambdas;
    Mat<GaussRat> transform;
    QMat basis;
    Path path = Path::Exact;
    Rat residual;  // exact upper bound; 0 on the exact path
    unsigned precision_bits = 0;
};

/// Result of the tangency normal form: applying the congruence g to the
/// basis-changed pencil (m first, then g Q g^T) yields
/// <x0^2+x1^2+x2^2, x0 x3 + a x1^2 + b x2^2> with a != b, both nonzero —
/// exactly on the Exact path, within `residual` entrywise otherwise.
struct NodalFormResult {
    GaussRat a, b;
    Mat<GaussRat> g;
    Mat<GaussRat> m;
    Path path = Path::Exact;
    Rat residual;
    unsigned precision_bits = 0;
};

/// Base-locus singular point with the rank of the quadratic term of the
/// local equation (rank 2 = ordinary node).
struct NodePoint {
    std::vector<Rat> point;  // primitive projective representative
    int local_rank = 0;
};
struct NodeReport {
    std::vector<NodePoint> singular_points;
    bool is_ordinary_node() const {
        return singular_points.size() == 1 && singular_points[0].local_rank == 2;
    }
};

/// <sum x_i^2, sum lambda_i x_i^2>; throws RepeatedLambda unless the lambdas
/// are pairwise distinct. Its discriminant is prod(s + lambda_i t).
Pencil diagonal_pencil(const std::array<Rat, 4>& lambdas);

/// Simultaneous diagonalization of a smooth pencil via the eigen-
/// decomposition of B0^{-1} B1. Exact when the characteristic quartic splits
/// over Q and the normalizing square roots are rational; certified numeric
/// otherwise. Throws NotSmooth outside the smooth locus.
DiagonalizationResult simultaneous_diagonalize(const Pencil& p, unsigned precision_bits = 256);

/// Tangency normal form W_{a,b}; throws NotNodal unless classify(p) lands in
/// the nodal stratum. Square-root obstructions route to the certified
/// numeric path, never to an error.
NodalFormResult nodal_normalize(const Pencil& p, unsigned precision_bits = 256);

/// Full canonicalization to W_node = W_{1,2}: composes nodal_normalize with
/// the parameter change sending the discriminant divisor to
/// 2[0] + [-1] + [-1/2] and the final rescaling.
NodalFormResult nodal_canonicalize(const Pencil& p, unsigned precision_bits = 256);

/// Locates the base-locus singular points of a nodal pencil through the
/// vertex criterion and reports the rank of the local quadratic at each.
NodeReport verify_node(const Pencil& p);

}  // namespace qp
