#include "qp/pencil.hpp"

#include <algorithm>
#include <sstream>

#include "qp/factor.hpp"

namespace qp {

SymMat4::SymMat4(QMat m) : m_(std::move(m)) {
    if (m_.rows() != 4 || m_.cols() != 4) throw Error("SymMat4: need a 4x4 matrix");
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (m_(i, j) != m_(j, i)) throw Error("SymMat4: matrix not symmetric");
}

SymMat4& SymMat4::add_term(int i, int j, const Rat& c) {
    if (i == j) {
        m_(i, i) += c;
    } else {
        Rat half = c / 2;
        m_(i, j) += half;
        m_(j, i) += half;
    }
    return *this;
}

SymMat4 SymMat4::from_terms(std::initializer_list<std::tuple<int, int, Rat>> terms) {
    SymMat4 q;
    for (const auto& [i, j, c] : terms) q.add_term(i, j, c);
    return q;
}

Rat SymMat4::eval(const std::vector<Rat>& v) const {
    if (v.size() != 4) throw Error("SymMat4: eval needs a 4-vector");
    Rat acc(0);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) acc += v[size_t(i)] * m_(i, j) * v[size_t(j)];
    return acc;
}

bool SymMat4::is_zero() const {
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (sgn(m_(i, j)) != 0) return false;
    return true;
}

Pencil::Pencil(SymMat4 q0, SymMat4 q1) : q0_(std::move(q0)), q1_(std::move(q1)) {
    // exact linear independence: rank of the 2x10 coefficient matrix
    QMat coeffs(2, 10);
    int c = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = i; j < 4; ++j) {
            coeffs(0, c) = q0_(i, j);
            coeffs(1, c) = q1_(i, j);
            ++c;
        }
    if (coeffs.rank() != 2)
        throw DependentGenerators("Pencil: generators are linearly dependent");
}

BinaryQuartic discriminant_quartic(const Pencil& p) {
    // det(s Q0 + t Q1) is homogeneous of degree 4, so det(Q0 + t Q1) as a
    // polynomial in t carries all five coefficients.
    Mat<QPoly> m(4, 4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) m(i, j) = QPoly{p.q0()(i, j), p.q1()(i, j)};
    return BinaryQuartic::from_poly(m.det());
}

Pencil congruence_act(const QMat& g, const Pencil& p) {
    if (g.rows() != 4 || g.cols() != 4) throw Error("congruence_act: need a 4x4 matrix");
    if (sgn(g.det()) == 0) throw SingularGroupElement("congruence_act: det(g) = 0");
    QMat gt = g.transposed();
    return Pencil(SymMat4(g * p.q0().mat() * gt), SymMat4(g * p.q1().mat() * gt));
}

Pencil basis_change(const QMat& m, const Pencil& p) {
    if (m.rows() != 2 || m.cols() != 2) throw Error("basis_change: need a 2x2 matrix");
    if (sgn(m.det()) == 0) throw SingularSubstitution("basis_change: det(m) = 0");
    QMat a = m(0, 0) * p.q0().mat() + m(0, 1) * p.q1().mat();
    QMat b = m(1, 0) * p.q0().mat() + m(1, 1) * p.q1().mat();
    return Pencil(SymMat4(std::move(a)), SymMat4(std::move(b)));
}

std::string RootP1::str() const {
    switch (kind) {
        case Kind::Rational: return "(1:" + rat_to_string(tau) + ")";
        case Kind::Infinity: return "(0:1)";
        case Kind::Algebraic: {
            std::ostringstream os;
            os << "(1:t), " << min_poly.str("t") << " = 0 near "
               << rat_to_string(approx.approx.re) << (sgn(approx.approx.im) >= 0 ? "+" : "")
               << rat_to_string(approx.approx.im) << "i";
            return os.str();
        }
    }
    return "?";
}

namespace {

/// Rank, and for rank 3 the base-locus test of the kernel vector, for the
/// member Q0 + tau Q1 at a root of the minimal polynomial m (degree >= 2).
std::pair<int, bool> member_rank_algebraic(const Pencil& p, const QPoly& m) {
    NumberField field(m);
    NFElem u = NFElem::generator(&field);
    Mat<NFElem> a(4, 4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            a(i, j) = NFElem(p.q0()(i, j)) + u * NFElem(p.q1()(i, j));
    int rank = a.rank();
    bool on_base = false;
    if (rank == 3) {
        auto ker = a.kernel();
        if (ker.size() != 1) throw Error("singular_members: kernel dimension mismatch");
        const auto& v = ker[0];
        NFElem q1v(0);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) q1v += v[size_t(i)] * NFElem(p.q1()(i, j)) * v[size_t(j)];
        // A(u) v = 0 makes v^T Q0 v = -u v^T Q1 v, so vanishing of v^T Q1 v
        // already puts the vertex on the base locus.
        on_base = q1v.is_zero();
    }
    return {rank, on_base};
}

std::pair<int, bool> member_rank_rational(const QMat& member, const SymMat4& complement) {
    int rank = member.rank();
    bool on_base = false;
    if (rank == 3) {
        auto ker = member.kernel();
        if (ker.size() != 1) throw Error("singular_members: kernel dimension mismatch");
        on_base = sgn(complement.eval(ker[0])) == 0;
    }
    return {rank, on_base};
}

}  // namespace

std::vector<SingularMember> singular_members(const Pencil& p) {
    BinaryQuartic disc = discriminant_quartic(p);
    if (disc.is_zero()) throw LineInD("singular_members: discriminant vanishes identically");

    std::vector<SingularMember> out;
    QPoly f = disc.dehomogenized();
    int infinity_mult = 4 - f.degree();

    if (f.degree() > 0) {
        for (const auto& [factor, mult] : squarefree_decomposition(f)) {
            QPoly rest = factor;
            for (const auto& [r, one] : rational_roots(factor)) {
                (void)one;
                SingularMember sm;
                sm.root = RootP1::rational(r);
                sm.multiplicity = mult;
                QMat member = p.q0().mat() + r * p.q1().mat();
                std::tie(sm.rank, sm.vertex_on_base_locus) =
                    member_rank_rational(member, p.q1());
                out.push_back(std::move(sm));
                rest = exact_div(rest, QPoly{-r, Rat(1)});
            }
            if (rest.degree() > 0) {
                for (const auto& [g, m_one] : factor_rational_poly(rest)) {
                    (void)m_one;
                    auto [rank, on_base] = member_rank_algebraic(p, g);
                    for (const CRoot& approx : complex_roots(g)) {
                        SingularMember sm;
                        sm.root = RootP1::algebraic(g, approx);
                        sm.multiplicity = mult;
                        sm.rank = rank;
                        sm.vertex_on_base_locus = on_base;
                        out.push_back(std::move(sm));
                    }
                }
            }
        }
    }
    if (infinity_mult > 0) {
        SingularMember sm;
        sm.root = RootP1::infinity();
        sm.multiplicity = infinity_mult;
        std::tie(sm.rank, sm.vertex_on_base_locus) =
            member_rank_rational(p.q1().mat(), p.q0());
        out.push_back(std::move(sm));
    }

    // deterministic order: rational roots ascending, then algebraic by
    // approximation, then the root at infinity
    auto key = [](const SingularMember& sm) {
        switch (sm.root.kind) {
            case RootP1::Kind::Rational: return 0;
            case RootP1::Kind::Algebraic: return 1;
            case RootP1::Kind::Infinity: return 2;
        }
        return 3;
    };
    std::sort(out.begin(), out.end(), [&](const SingularMember& a, const SingularMember& b) {
        if (key(a) != key(b)) return key(a) < key(b);
        if (a.root.kind == RootP1::Kind::Rational) return a.root.tau < b.root.tau;
        if (a.root.kind == RootP1::Kind::Algebraic) {
            if (a.root.approx.approx.re != b.root.approx.approx.re)
                return a.root.approx.approx.re < b.root.approx.approx.re;
            return a.root.approx.approx.im < b.root.approx.approx.im;
        }
        return false;
    });
    return out;
}

const char* OrbitClass::tag_name(Tag t) {
    switch (t) {
        case Tag::SmoothFiber: return "SmoothFiber";
        case Tag::NodalStratum: return "NodalStratum";
        case Tag::DeeperStratum: return "DeeperStratum";
        case Tag::LineInD: return "LineInD";
    }
    return "?";
}

OrbitClass classify(const Pencil& p) {
    OrbitClass oc;
    BinaryQuartic disc = discriminant_quartic(p);
    if (disc.is_zero()) {
        oc.tag = OrbitClass::Tag::LineInD;
        return oc;
    }
    oc.root_type = root_type(disc);
    oc.diagnostics = singular_members(p);

    const RootType smooth_type{1, 1, 1, 1};
    const RootType nodal_type{2, 1, 1};
    if (oc.root_type == smooth_type) {
        oc.tag = OrbitClass::Tag::SmoothFiber;
        oc.j = j_invariant(disc);
        return oc;
    }
    if (oc.root_type == nodal_type) {
        for (const SingularMember& sm : oc.diagnostics) {
            if (sm.multiplicity != 2) continue;
            if (sm.rank == 3) {
                if (!sm.vertex_on_base_locus)
                    throw Error("classify: rank-3 double root without vertex on base locus");
                oc.tag = OrbitClass::Tag::NodalStratum;
                return oc;
            }
        }
    }
    oc.tag = OrbitClass::Tag::DeeperStratum;
    return oc;
}

StabilizerReport infinitesimal_stabilizer_dim(const Pencil& p) {
    // Unknowns: X (16, row-major), then alpha0, alpha1, beta0, beta1 in
    // X^T Q0 + Q0 X = alpha0 Q0 + alpha1 Q1,
    // X^T Q1 + Q1 X = beta0 Q0 + beta1 Q1.
    // Equations: the 10 upper-triangular entries of each symmetric condition.
    const QMat& q0 = p.q0().mat();
    const QMat& q1 = p.q1().mat();
    QMat sys(20, 20);
    int eq = 0;
    for (int cond = 0; cond < 2; ++cond) {
        const QMat& q = cond == 0 ? q0 : q1;
        for (int r = 0; r < 4; ++r)
            for (int c = r; c < 4; ++c) {
                // coefficient of X[k][l] in (X^T Q + Q X)[r][c]:
                // sum_k X[k][r] Q[k][c] + sum_l Q[r][l] X[l][c]
                for (int k = 0; k < 4; ++k) {
                    sys(eq, k * 4 + r) += q(k, c);
                    sys(eq, k * 4 + c) += q(r, k);
                }
                int base = 16 + 2 * cond;
                sys(eq, base + 0) -= q0(r, c);
                sys(eq, base + 1) -= q1(r, c);
                ++eq;
            }
    }
    int kernel_dim = 20 - sys.rank();
    if (kernel_dim < 1)
        throw Error("infinitesimal_stabilizer_dim: scalar solution missing");
    StabilizerReport rep;
    rep.lie_algebra_dim = kernel_dim - 1;
    rep.orbit_dim = 15 - rep.lie_algebra_dim;
    return rep;
}

}  // namespace qp
