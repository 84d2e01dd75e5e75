#include "qp/quartic.hpp"

#include <algorithm>
#include <sstream>

namespace qp {

std::string BinaryQuartic::str() const {
    static const char* mono[5] = {"s^4", "s^3*t", "s^2*t^2", "s*t^3", "t^4"};
    std::ostringstream os;
    bool first = true;
    for (int i = 0; i <= 4; ++i) {
        if (sgn(c_[size_t(i)]) == 0) continue;
        if (!first) os << " + ";
        os << "(" << rat_to_string(c_[size_t(i)]) << ")*" << mono[i];
        first = false;
    }
    return first ? "0" : os.str();
}

InvariantTriple invariants(const BinaryQuartic& f) {
    Rat a0 = f.a(0), a1 = f.a(1), a2 = f.a(2), a3 = f.a(3), a4 = f.a(4);
    Rat I = a0 * a4 - 4 * a1 * a3 + 3 * a2 * a2;
    Rat J = a0 * a2 * a4 + 2 * a1 * a2 * a3 - a2 * a2 * a2 - a0 * a3 * a3 - a1 * a1 * a4;
    Rat Delta = I * I * I - 27 * J * J;
    return {I, J, Delta};
}

P1Rat j_invariant(const BinaryQuartic& f) {
    if (f.is_zero()) throw ZeroForm("j_invariant: zero form");
    auto [I, J, Delta] = invariants(f);
    if (sgn(I) == 0 && sgn(J) == 0)
        throw UndefinedJ("j_invariant: I = J = 0 (root of multiplicity >= 3)");
    if (sgn(Delta) == 0) return P1Rat::infinity();
    return P1Rat(1728 * I * I * I / Delta);
}

BinaryQuartic gl2_substitute(const BinaryQuartic& f, const QMat& m) {
    if (m.rows() != 2 || m.cols() != 2) throw Error("gl2_substitute: need a 2x2 matrix");
    Rat det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    if (sgn(det) == 0) throw SingularSubstitution("gl2_substitute: det = 0");
    // (s,t) * M = (m00 s + m10 t, m01 s + m11 t); substitute as binary linear
    // forms u, v and expand sum c_i u^(4-i) v^i by convolution on t-degree.
    QPoly u{m(0, 0), m(1, 0)};
    QPoly v{m(0, 1), m(1, 1)};
    QPoly acc;
    for (int i = 0; i <= 4; ++i) {
        if (sgn(f.c(i)) == 0) continue;
        QPoly term(f.c(i));
        for (int k = 0; k < 4 - i; ++k) term *= u;
        for (int k = 0; k < i; ++k) term *= v;
        acc += term;
    }
    // acc holds the coefficient of t^k of the substituted form; a degree-4
    // homogeneous form is determined by these five coefficients.
    return BinaryQuartic::from_poly(acc);
}

RootType root_type(const BinaryQuartic& f) {
    if (f.is_zero()) return {};
    QPoly p = f.dehomogenized();
    RootType type;
    int infinity_mult = 4 - p.degree();
    if (infinity_mult > 0) type.push_back(infinity_mult);
    if (p.degree() > 0) {
        for (const auto& [factor, mult] : squarefree_decomposition(p))
            for (int k = 0; k < factor.degree(); ++k) type.push_back(mult);
    }
    std::sort(type.rbegin(), type.rend());
    return type;
}

}  // namespace qp
