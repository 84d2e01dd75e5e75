#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qp/linalg.hpp"
#include "qp/numfield.hpp"
#include "qp/quartic.hpp"
#include "qp/roots.hpp"

namespace qp {

/// Symmetric 4x4 matrix of a quadric q(x) = x^T M x (cross terms split in
/// half across the two symmetric slots).
class SymMat4 {
  public:
    SymMat4() : m_(4, 4) {}
    explicit SymMat4(QMat m);

    const QMat& mat() const { return m_; }
    const Rat& operator()(int i, int j) const { return m_(i, j); }

    /// Builder keyed by monomials: add c * x_i x_j.
    SymMat4& add_term(int i, int j, const Rat& c);
    static SymMat4 from_terms(std::initializer_list<std::tuple<int, int, Rat>> terms);

    /// q(v) = v^T M v, exactly.
    Rat eval(const std::vector<Rat>& v) const;

    bool is_zero() const;
    friend bool operator==(const SymMat4& a, const SymMat4& b) { return a.m_ == b.m_; }
    friend bool operator!=(const SymMat4& a, const SymMat4& b) { return !(a == b); }

  private:
    QMat m_;
};

/// An ordered pair of linearly independent quadrics spanning a pencil.
/// The point of the Grassmannian is the span; the pair is kept so that
/// transformations stay reproducible.
class Pencil {
  public:
    Pencil(SymMat4 q0, SymMat4 q1);

    const SymMat4& q0() const { return q0_; }
    const SymMat4& q1() const { return q1_; }

  private:
    SymMat4 q0_, q1_;
};

/// det(s Q0 + t Q1), expanded exactly.
BinaryQuartic discriminant_quartic(const Pencil& p);

/// <g Q0 g^T, g Q1 g^T> for invertible g; scales the discriminant by det(g)^2.
Pencil congruence_act(const QMat& g, const Pencil& p);

/// Basis change <m00 Q0 + m01 Q1, m10 Q0 + m11 Q1> for invertible 2x2 m.
/// The member at new parameters (s : t) is the old member at (s, t) * m.
Pencil basis_change(const QMat& m, const Pencil& p);

/// A root of the discriminant on P^1: (1 : tau) with rational tau, the point
/// at infinity (0 : 1), or an algebraic tau given by a monic irreducible
/// minimal polynomial and a certified approximation.
struct RootP1 {
    enum class Kind { Rational, Infinity, Algebraic };
    Kind kind = Kind::Rational;
    Rat tau;         // Rational
    QPoly min_poly;  // Algebraic
    CRoot approx;    // Algebraic

    static RootP1 rational(Rat t) {
        RootP1 r;
        r.kind = Kind::Rational;
        r.tau = std::move(t);
        return r;
    }
    static RootP1 infinity() {
        RootP1 r;
        r.kind = Kind::Infinity;
        return r;
    }
    static RootP1 algebraic(QPoly m, CRoot a) {
        RootP1 r;
        r.kind = Kind::Algebraic;
        r.min_poly = std::move(m);
        r.approx = std::move(a);
        return r;
    }
    std::string str() const;
};

/// One singular member of a pencil: the discriminant root, its multiplicity,
/// the exact rank of the member, and (for rank 3) whether the vertex lies on
/// the base locus.
struct SingularMember {
    RootP1 root;
    int multiplicity = 1;
    int rank = 0;
    bool vertex_on_base_locus = false;
};

/// Every singular member of the pencil, with exact ranks (number-field
/// arithmetic at irrational roots). Throws LineInD when the discriminant is
/// identically zero.
std::vector<SingularMember> singular_members(const Pencil& p);

/// Classification verdict.
struct OrbitClass {
    enum class Tag { SmoothFiber, NodalStratum, DeeperStratum, LineInD };
    Tag tag = Tag::LineInD;
    std::optional<P1Rat> j;  // present iff SmoothFiber
    RootType root_type;      // empty for LineInD
    std::vector<SingularMember> diagnostics;

    static const char* tag_name(Tag t);
};

/// Classifies the pencil:
///  - SmoothFiber with the j-invariant when the discriminant has four
///    distinct roots,
///  - NodalStratum when the root type is 2+1+1 and the double-root member
///    has rank 3 (its vertex then automatically lies on the base locus),
///  - DeeperStratum for every other nonzero discriminant,
///  - LineInD when the discriminant vanishes identically.
OrbitClass classify(const Pencil& p);

/// Dimension report for the infinitesimal stabilizer
/// {X in gl4 : X^T Qi + Qi X in span(Q0, Q1), i = 0, 1} modulo scalars.
struct StabilizerReport {
    int lie_algebra_dim = 0;
    int orbit_dim = 15;
};

/// Exact kernel dimension of the 20x20 rational linear system, minus the
/// scalar line.
StabilizerReport infinitesimal_stabilizer_dim(const Pencil& p);

}  // namespace qp
