#pragma once

#include <array>
#include <vector>

#include "qp/linalg.hpp"
#include "qp/poly.hpp"
#include "qp/rat.hpp"

namespace qp {

/// Multiset of root multiplicities, sorted descending; sums to 4 for a
/// nonzero quartic (the root at infinity included). Empty for the zero form.
using RootType = std::vector<int>;

/// A binary quartic f(s,t) = c0 s^4 + c1 s^3 t + c2 s^2 t^2 + c3 s t^3 + c4 t^4
/// with exact rational coefficients. The zero form is permitted but flagged.
class BinaryQuartic {
  public:
    BinaryQuartic() : c_{Rat(0), Rat(0), Rat(0), Rat(0), Rat(0)} {}
    explicit BinaryQuartic(std::array<Rat, 5> c) : c_(std::move(c)) {}

    const Rat& c(int i) const { return c_.at(size_t(i)); }
    const std::array<Rat, 5>& coeffs() const { return c_; }

    /// Binomially weighted coefficient a_i = c_i / binom(4, i).
    Rat a(int i) const {
        static const int binom[5] = {1, 4, 6, 4, 1};
        return c_.at(size_t(i)) / binom[i];
    }

    bool is_zero() const {
        for (const Rat& x : c_)
            if (sgn(x) != 0) return false;
        return true;
    }

    /// Dehomogenization f(1, t) as a polynomial in t.
    QPoly dehomogenized() const {
        return QPoly(std::vector<Rat>(c_.begin(), c_.end()));
    }
    /// Inverse of dehomogenized(): p of degree <= 4 gives the form with
    /// c_i = coeff of t^i (padding the top with zeros).
    static BinaryQuartic from_poly(const QPoly& p) {
        if (p.degree() > 4) throw Error("BinaryQuartic: degree exceeds 4");
        std::array<Rat, 5> c;
        for (int i = 0; i <= 4; ++i) c[size_t(i)] = p.coeff(i);
        return BinaryQuartic(std::move(c));
    }

    /// prod (s - r_i t) for the given affine roots r_i (monic in s).
    static BinaryQuartic from_roots(const std::array<Rat, 4>& roots) {
        QPoly f(1);
        for (const Rat& r : roots) f *= QPoly{Rat(1), -r};  // (1 - r t) paired with s
        // f currently holds coefficients of t^i for prod (1 - r_i t); the
        // binary form is s^4 * prod(1 - r_i t/s) = prod (s - r_i t).
        return from_poly(f);
    }

    friend bool operator==(const BinaryQuartic& a, const BinaryQuartic& b) {
        return a.c_ == b.c_;
    }
    friend bool operator!=(const BinaryQuartic& a, const BinaryQuartic& b) {
        return !(a == b);
    }
    friend BinaryQuartic operator*(const Rat& s, const BinaryQuartic& f) {
        std::array<Rat, 5> c;
        for (int i = 0; i <= 4; ++i) c[size_t(i)] = s * f.c_[size_t(i)];
        return BinaryQuartic(std::move(c));
    }

    std::string str() const;

  private:
    std::array<Rat, 5> c_;
};

/// The classical degree-2 and degree-3 invariants and the discriminant
/// Delta = I^3 - 27 J^2.
struct InvariantTriple {
    Rat I, J, Delta;
};

/// I = a0 a4 - 4 a1 a3 + 3 a2^2, J = a0 a2 a4 + 2 a1 a2 a3 - a2^3 - a0 a3^2
/// - a1^2 a4, Delta = I^3 - 27 J^2, in the binomially weighted coefficients.
InvariantTriple invariants(const BinaryQuartic& f);

/// j = 1728 I^3 / Delta as a point of P^1 (infinity when Delta = 0, I != 0).
/// Throws ZeroForm for the zero form and UndefinedJ when I = J = 0.
P1Rat j_invariant(const BinaryQuartic& f);

/// f((s,t) * M) for an invertible 2x2 matrix M; the substitution scales
/// (I, J, Delta) by det(M)^(4, 6, 12). Throws SingularSubstitution.
BinaryQuartic gl2_substitute(const BinaryQuartic& f, const QMat& m);

/// Root multiplicities on P^1, decided exactly by squarefree decomposition;
/// the root at infinity is the degree drop of f(1, t). Empty for zero form.
RootType root_type(const BinaryQuartic& f);

}  // namespace qp
