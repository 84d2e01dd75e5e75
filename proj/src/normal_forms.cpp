#include "qp/normal_forms.hpp"

#include <algorithm>
#include <cmath>

#include "qp/bigfloat.hpp"
#include "qp/factor.hpp"

namespace qp {

namespace {

Mat<GaussRat> to_gauss_mat(const QMat& m) {
    return m.map<GaussRat>([](const Rat& r) { return GaussRat(r); });
}

/// Exact residual: max upper bound of |entries| of a Gaussian matrix.
Rat max_abs_bound(const Mat<GaussRat>& m) {
    Rat worst(0);
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) {
            Rat b = sqrt_upper_bound(m(i, j).norm());
            if (b > worst) worst = b;
        }
    return worst;
}

Mat<GaussRat> w_node_q0_target() {
    Mat<GaussRat> t(4, 4);
    for (int i = 0; i < 3; ++i) t(i, i) = GaussRat(Rat(1));
    return t;
}

Mat<GaussRat> w_ab_q1_target(const GaussRat& a, const GaussRat& b) {
    Mat<GaussRat> t(4, 4);
    t(0, 3) = GaussRat(Rat(1, 2));
    t(3, 0) = GaussRat(Rat(1, 2));
    t(1, 1) = a;
    t(2, 2) = b;
    return t;
}

// ---------------------------------------------------------------------------
// diagonal_pencil and simultaneous diagonalization
// ---------------------------------------------------------------------------

QPoly char_poly(const QMat& t) {
    Mat<QPoly> m(4, 4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            m(i, j) = (i == j) ? QPoly{-t(i, j), Rat(1)} : QPoly(-t(i, j));
        }
    return m.det();
}

/// Rational eigenvector for a rational eigenvalue (kernel must be a line).
std::vector<Rat> rational_eigenvector(const QMat& t, const Rat& lambda) {
    QMat shifted = t;
    for (int i = 0; i < 4; ++i) shifted(i, i) -= lambda;
    auto ker = shifted.kernel();
    if (ker.size() != 1)
        throw Error("simultaneous_diagonalize: eigenvalue multiplicity mismatch");
    return ker[0];
}

struct NumericColumn {
    CRoot lambda;
    std::vector<GaussRat> column;  // unnormalized eigenvector at the root
    GaussRat norm_value;           // v^T B0 v evaluated at the root
};

}  // namespace

Pencil diagonal_pencil(const std::array<Rat, 4>& lambdas) {
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (lambdas[size_t(i)] == lambdas[size_t(j)])
                throw RepeatedLambda("diagonal_pencil: repeated lambda");
    SymMat4 q0 = SymMat4::from_terms(
        {{0, 0, Rat(1)}, {1, 1, Rat(1)}, {2, 2, Rat(1)}, {3, 3, Rat(1)}});
    SymMat4 q1 = SymMat4::from_terms({{0, 0, lambdas[0]},
                                      {1, 1, lambdas[1]},
                                      {2, 2, lambdas[2]},
                                      {3, 3, lambdas[3]}});
    return Pencil(q0, q1);
}

DiagonalizationResult simultaneous_diagonalize(const Pencil& p, unsigned precision_bits) {
    if (classify(p).tag != OrbitClass::Tag::SmoothFiber)
        throw NotSmooth("simultaneous_diagonalize: pencil not in the smooth locus");

    // choose a smooth member as the quadratic form B0
    QMat basis = QMat::identity(2);
    Pencil base = p;
    if (sgn(p.q0().mat().det()) == 0) {
        bool found = false;
        const int candidates[] = {0, 1, -1, 2, -2, 3, -3};
        for (int k : candidates) {
            QMat m = QMat::identity(2);
            m(0, 1) = k;
            Pencil cand = basis_change(m, p);
            if (sgn(cand.q0().mat().det()) != 0) {
                basis = m;
                base = cand;
                found = true;
                break;
            }
        }
        if (!found) throw Error("simultaneous_diagonalize: no smooth member found");
    }

    const QMat& b0 = base.q0().mat();
    const QMat& b1 = base.q1().mat();
    QMat t = b0.inverse() * b1;
    QPoly chi = char_poly(t);

    auto factors = factor_rational_poly(chi);
    for (const auto& [f, mult] : factors) {
        (void)f;
        if (mult != 1) throw Error("simultaneous_diagonalize: repeated eigenvalue");
    }

    // exact path: four rational eigenvalues with rational normalizers
    bool all_linear = true;
    for (const auto& [f, mult] : factors) {
        (void)mult;
        if (f.degree() != 1) all_linear = false;
    }
    if (all_linear) {
        std::vector<Rat> lambdas;
        for (const auto& [f, mult] : factors) {
            (void)mult;
            lambdas.push_back(-f.coeff(0));
        }
        std::sort(lambdas.begin(), lambdas.end());
        std::vector<std::vector<Rat>> cols;
        bool exact_ok = true;
        for (const Rat& lam : lambdas) {
            std::vector<Rat> v = rational_eigenvector(t, lam);
            Rat n(0);
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) n += v[size_t(i)] * b0(i, j) * v[size_t(j)];
            auto root = sqrt_exact(n);
            if (!root) {
                exact_ok = false;
                break;
            }
            for (Rat& x : v) x /= *root;
            cols.push_back(std::move(v));
        }
        if (exact_ok) {
            DiagonalizationResult res;
            res.path = Path::Exact;
            res.basis = basis;
            res.residual = Rat(0);
            Mat<GaussRat> g(4, 4);
            for (int j = 0; j < 4; ++j) {
                res.lambdas.push_back({GaussRat(lambdas[size_t(j)]), Rat(0), 1});
                for (int i = 0; i < 4; ++i) g(i, j) = GaussRat(cols[size_t(j)][size_t(i)]);
            }
            res.transform = g;
            // contract check
            Mat<GaussRat> gb0 = g.transposed() * to_gauss_mat(b0) * g;
            Mat<GaussRat> gb1 = g.transposed() * to_gauss_mat(b1) * g;
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) {
                    GaussRat want0 = (i == j) ? GaussRat(Rat(1)) : GaussRat();
                    GaussRat want1 =
                        (i == j) ? GaussRat(lambdas[size_t(i)]) : GaussRat();
                    if (gb0(i, j) != want0 || gb1(i, j) != want1)
                        throw Error("simultaneous_diagonalize: exact path verification failed");
                }
            return res;
        }
    }

    // certified numeric path
    unsigned bits = round_up_precision(precision_bits);
    const Rat tolerance = pow2(-long(precision_bits) / 2);
    while (true) {
        std::vector<NumericColumn> cols;
        for (const auto& [f, mult] : factors) {
            (void)mult;
            if (f.degree() == 1) {
                Rat lam = -f.coeff(0);
                std::vector<Rat> v = rational_eigenvector(t, lam);
                Rat n(0);
                for (int i = 0; i < 4; ++i)
                    for (int j = 0; j < 4; ++j)
                        n += v[size_t(i)] * b0(i, j) * v[size_t(j)];
                NumericColumn col;
                col.lambda = {GaussRat(lam), Rat(0), 1};
                for (const Rat& x : v) col.column.emplace_back(x);
                col.norm_value = GaussRat(n);
                cols.push_back(std::move(col));
            } else {
                NumberField field(f);
                NFElem u = NFElem::generator(&field);
                Mat<NFElem> shifted(4, 4);
                for (int i = 0; i < 4; ++i)
                    for (int j = 0; j < 4; ++j) {
                        shifted(i, j) = NFElem(t(i, j));
                        if (i == j) shifted(i, j) -= u;
                    }
                auto ker = shifted.kernel();
                if (ker.size() != 1)
                    throw Error("simultaneous_diagonalize: field eigenvector missing");
                const auto& v = ker[0];
                NFElem n(0);
                for (int i = 0; i < 4; ++i)
                    for (int j = 0; j < 4; ++j)
                        n += v[size_t(i)] * NFElem(b0(i, j)) * v[size_t(j)];
                for (const CRoot& root : complex_roots(f, bits)) {
                    NumericColumn col;
                    col.lambda = root;
                    auto conv = [](const Rat& c) { return GaussRat(c); };
                    for (int i = 0; i < 4; ++i)
                        col.column.push_back(
                            v[size_t(i)].eval<GaussRat>(root.approx, conv));
                    col.norm_value = n.eval<GaussRat>(root.approx, conv);
                    cols.push_back(std::move(col));
                }
            }
        }
        std::sort(cols.begin(), cols.end(), [](const NumericColumn& a, const NumericColumn& b) {
            if (a.lambda.approx.re != b.lambda.approx.re)
                return a.lambda.approx.re < b.lambda.approx.re;
            return a.lambda.approx.im < b.lambda.approx.im;
        });
        if (cols.size() != 4) throw Error("simultaneous_diagonalize: eigenvalue count");

        // normalize columns by 1/sqrt(norm_value) in floating complex, then
        // snap and verify exactly
        Mat<GaussRat> g(4, 4);
        dispatch_precision(bits, [&](auto tag) {
            constexpr unsigned B = decltype(tag)::value;
            for (int j = 0; j < 4; ++j) {
                CplxBF<B> nv = gauss_to_cplx<B>(cols[size_t(j)].norm_value);
                CplxBF<B> scale = CplxBF<B>(1) / sqrt(nv);
                for (int i = 0; i < 4; ++i) {
                    CplxBF<B> e =
                        gauss_to_cplx<B>(cols[size_t(j)].column[size_t(i)]) * scale;
                    g(i, j) = cplx_to_gauss<B>(e);
                }
            }
            return 0;
        });

        Mat<GaussRat> gb0 = g.transposed() * to_gauss_mat(b0) * g;
        Mat<GaussRat> gb1 = g.transposed() * to_gauss_mat(b1) * g;
        Mat<GaussRat> dev0 = gb0 - Mat<GaussRat>::identity(4);
        Mat<GaussRat> dev1 = gb1;
        for (int i = 0; i < 4; ++i) dev1(i, i) -= cols[size_t(i)].lambda.approx;
        Rat residual = std::max(max_abs_bound(dev0), max_abs_bound(dev1));
        if (residual < tolerance) {
            DiagonalizationResult res;
            res.path = Path::CertifiedNumeric;
            res.basis = basis;
            res.transform = g;
            res.residual = residual;
            res.precision_bits = bits;
            for (auto& c : cols) res.lambdas.push_back(c.lambda);
            return res;
        }
        if (bits >= kMaxPrecisionBits)
            throw CertificationFailure("simultaneous_diagonalize: residual bound failed");
        bits *= 2;
    }
}

// ---------------------------------------------------------------------------
// tangency normal form
// ---------------------------------------------------------------------------

namespace {

struct NodalExactStage {
    QMat m;      // 2x2 basis change placing the double root at (1:0)
    QMat g_pre;  // rational congruence: kernel at e3, 3x3 part diagonal
    std::array<Rat, 3> d;
    QMat q1;  // current second form; q1(3,3) = 0
    Rat nu;   // sum of l_i^2 / d_i, nonzero on the nodal stratum
};

NodalExactStage nodal_exact_stage(const Pencil& p) {
    OrbitClass oc = classify(p);
    if (oc.tag != OrbitClass::Tag::NodalStratum)
        throw NotNodal("nodal normal form: pencil not in the nodal stratum");

    // the double root of a 2+1+1 rational quartic is rational (possibly at
    // infinity); place it at (1:0)
    QMat m = QMat::identity(2);
    bool placed = false;
    for (const SingularMember& sm : oc.diagnostics) {
        if (sm.multiplicity != 2) continue;
        if (sm.root.kind == RootP1::Kind::Rational) {
            m(0, 1) = sm.root.tau;
        } else if (sm.root.kind == RootP1::Kind::Infinity) {
            m = QMat(2, 2);
            m(0, 1) = 1;
            m(1, 0) = 1;
        } else {
            throw Error("nodal normal form: irrational double root");
        }
        placed = true;
        break;
    }
    if (!placed) throw Error("nodal normal form: double root not found");

    Pencil p1 = basis_change(m, p);
    const QMat& a_full = p1.q0().mat();

    // kernel of the rank-3 double-root member to e3
    auto ker = a_full.kernel();
    if (ker.size() != 1) throw Error("nodal normal form: double-root member rank != 3");
    const std::vector<Rat>& v = ker[0];
    QMat g1(4, 4);
    for (int j = 0; j < 4; ++j) g1(3, j) = v[size_t(j)];
    int filled = 0;
    for (int cand = 0; cand < 4 && filled < 3; ++cand) {
        QMat trial = g1;
        trial(filled, cand) = 1;
        // keep the candidate row if it increases the rank
        QMat probe(filled + 2, 4);
        for (int j = 0; j < 4; ++j) probe(0, j) = v[size_t(j)];
        for (int r = 0; r < filled; ++r)
            for (int j = 0; j < 4; ++j) probe(r + 1, j) = g1(r, j);
        for (int j = 0; j < 4; ++j) probe(filled + 1, j) = trial(filled, j);
        if (probe.rank() == filled + 2) {
            g1 = trial;
            ++filled;
        }
    }
    if (filled != 3) throw Error("nodal normal form: basis completion failed");

    QMat a1 = g1 * a_full * g1.transposed();
    for (int i = 0; i < 4; ++i)
        if (sgn(a1(i, 3)) != 0 || sgn(a1(3, i)) != 0)
            throw Error("nodal normal form: kernel not moved to e3");

    QMat a3(3, 3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) a3(i, j) = a1(i, j);
    auto [g2_small, dvec] = congruent_diagonalize(a3);
    for (const Rat& di : dvec)
        if (sgn(di) == 0) throw Error("nodal normal form: 3x3 part not full rank");
    QMat g2 = QMat::identity(4);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) g2(i, j) = g2_small(i, j);

    NodalExactStage st;
    st.m = m;
    st.g_pre = g2 * g1;
    st.d = {dvec[0], dvec[1], dvec[2]};
    st.q1 = st.g_pre * p1.q1().mat() * st.g_pre.transposed();

    if (sgn(st.q1(3, 3)) != 0)
        throw Error("nodal normal form: tangency coefficient nonzero");
    Rat nu(0);
    for (int i = 0; i < 3; ++i) {
        Rat li = 2 * st.q1(i, 3);
        nu += li * li / st.d[size_t(i)];
    }
    if (sgn(nu) == 0) throw Error("nodal normal form: isotropic tangency direction");
    st.nu = nu;
    return st;
}

/// Field operations for the pipeline: exact rationals or complex big floats.
struct RatField {
    using E = Rat;
    static E from_rat(const Rat& r) { return r; }
    static std::optional<E> sqrt(const E& x) { return sqrt_exact(x); }
    static bool is_zero(const E& x) { return sgn(x) == 0; }
    static double mag(const E& x) { return std::abs(x.get_d()); }
    static GaussRat to_gauss(const E& x) { return GaussRat(x); }
    static bool less(const E& x, const E& y) { return x < y; }
};

template <unsigned Bits>
struct CplxField {
    using E = CplxBF<Bits>;
    static E from_rat(const Rat& r) {
        return {rat_to_bigfloat<Bits>(r), BigFloat<Bits>(0)};
    }
    static std::optional<E> sqrt(const E& x) { return qp::sqrt(x); }
    static bool is_zero(const E& x) { return x.norm() == 0; }
    static double mag(const E& x) { return x.norm().template convert_to<double>(); }
    static GaussRat to_gauss(const E& x) { return cplx_to_gauss<Bits>(x); }
    static bool less(const E& x, const E& y) {
        if (x.re != y.re) return x.re < y.re;
        return x.im < y.im;
    }
};

template <class Field>
struct PipelineOut {
    Mat<typename Field::E> g;  // field-stage congruence (applies after g_pre)
    typename Field::E a, b;
    bool ok = false;  // false when a square root was not available (exact path)
};

template <class Field>
PipelineOut<Field> nodal_field_stage(const NodalExactStage& st) {
    using E = typename Field::E;
    PipelineOut<Field> out{Mat<E>::identity(4), E(0), E(0), false};

    Mat<E> q1 = st.q1.map<E>([](const Rat& r) { return Field::from_rat(r); });
    Mat<E> g = Mat<E>::identity(4);
    auto apply = [&](const Mat<E>& step) {
        g = step * g;
        q1 = step * q1 * step.transposed();
    };

    // rescale the diagonal to ones
    Mat<E> g3 = Mat<E>::identity(4);
    for (int i = 0; i < 3; ++i) {
        auto s = Field::sqrt(Field::from_rat(st.d[size_t(i)]));
        if (!s) return out;
        g3(i, i) = E(1) / *s;
    }
    apply(g3);

    // rotate the tangency direction onto e0
    std::array<E, 3> l{q1(0, 3) + q1(0, 3), q1(1, 3) + q1(1, 3), q1(2, 3) + q1(2, 3)};
    E nu = l[0] * l[0] + l[1] * l[1] + l[2] * l[2];
    auto snu = Field::sqrt(nu);
    if (!snu) return out;
    std::array<E, 3> b0{l[0] / *snu, l[1] / *snu, l[2] / *snu};

    int pick = -1;
    double best = -1;
    for (int k = 0; k < 3; ++k) {
        E ww = E(1) - b0[size_t(k)] * b0[size_t(k)];
        if (Field::is_zero(ww)) continue;
        double w = Field::mag(ww);
        if (w > best) {
            best = w;
            pick = k;
        }
    }
    if (pick < 0) throw Error("nodal normal form: no usable completion axis");
    std::array<E, 3> w{E(0) - b0[size_t(pick)] * b0[0], E(0) - b0[size_t(pick)] * b0[1],
                       E(0) - b0[size_t(pick)] * b0[2]};
    w[size_t(pick)] = w[size_t(pick)] + E(1);
    E ww = w[0] * w[0] + w[1] * w[1] + w[2] * w[2];
    auto sw = Field::sqrt(ww);
    if (!sw) return out;
    std::array<E, 3> b1{w[0] / *sw, w[1] / *sw, w[2] / *sw};
    // cross product completes the orthonormal triple without a square root
    std::array<E, 3> b2{b0[1] * b1[2] - b0[2] * b1[1], b0[2] * b1[0] - b0[0] * b1[2],
                        b0[0] * b1[1] - b0[1] * b1[0]};
    Mat<E> g4 = Mat<E>::identity(4);
    for (int j = 0; j < 3; ++j) {
        g4(0, j) = b0[size_t(j)];
        g4(1, j) = b1[size_t(j)];
        g4(2, j) = b2[size_t(j)];
    }
    apply(g4);

    // scale x3 so the cross term becomes exactly x0 x3
    Mat<E> g5 = Mat<E>::identity(4);
    g5(3, 3) = E(1) / *snu;
    apply(g5);

    // shear x3 to kill the x0-involving terms of the residual 3x3 block
    Mat<E> g6 = Mat<E>::identity(4);
    g6(0, 3) = E(0) - q1(0, 0);
    g6(1, 3) = E(0) - (q1(0, 1) + q1(0, 1));
    g6(2, 3) = E(0) - (q1(0, 2) + q1(0, 2));
    apply(g6);

    // orthogonal 2x2 eigen-diagonalization of the (x1, x2) block
    E m11 = q1(1, 1), m12 = q1(1, 2), m22 = q1(2, 2);
    E a, b;
    if (Field::is_zero(m12)) {
        a = m11;
        b = m22;
    } else {
        E tr = m11 + m22;
        E det = m11 * m22 - m12 * m12;
        E disc = tr * tr - (det + det + det + det);
        auto sd = Field::sqrt(disc);
        if (!sd) return out;
        E two = E(2);
        a = (tr - *sd) / two;
        b = (tr + *sd) / two;
        std::array<E, 2> v1{m12, a - m11};
        std::array<E, 2> v2{a - m22, m12};
        std::array<E, 2> v = (Field::mag(v1[0] * v1[0] + v1[1] * v1[1]) >=
                              Field::mag(v2[0] * v2[0] + v2[1] * v2[1]))
                                 ? v1
                                 : v2;
        E vv = v[0] * v[0] + v[1] * v[1];
        if (Field::is_zero(vv)) throw Error("nodal normal form: isotropic eigenvector");
        auto sv = Field::sqrt(vv);
        if (!sv) return out;
        std::array<E, 2> u{v[0] / *sv, v[1] / *sv};
        Mat<E> g7 = Mat<E>::identity(4);
        g7(1, 1) = u[0];
        g7(1, 2) = u[1];
        g7(2, 1) = E(0) - u[1];
        g7(2, 2) = u[0];
        apply(g7);
        a = q1(1, 1);
        b = q1(2, 2);
    }

    // deterministic order (ascending); records the x1 <-> x2 swap
    if (Field::less(b, a)) {
        Mat<E> g8 = Mat<E>::identity(4);
        g8(1, 1) = E(0);
        g8(2, 2) = E(0);
        g8(1, 2) = E(1);
        g8(2, 1) = E(1);
        apply(g8);
        std::swap(a, b);
    }

    out.g = g;
    out.a = a;
    out.b = b;
    out.ok = true;
    return out;
}

/// Applies (g, m) over the Gaussian rationals, exactly.
std::pair<Mat<GaussRat>, Mat<GaussRat>> apply_gauss(const Mat<GaussRat>& g,
                                                    const Mat<GaussRat>& m,
                                                    const Pencil& p) {
    Mat<GaussRat> q0 = to_gauss_mat(p.q0().mat());
    Mat<GaussRat> q1 = to_gauss_mat(p.q1().mat());
    Mat<GaussRat> n0 = m(0, 0) * q0 + m(0, 1) * q1;
    Mat<GaussRat> n1 = m(1, 0) * q0 + m(1, 1) * q1;
    Mat<GaussRat> gt = g.transposed();
    return {g * n0 * gt, g * n1 * gt};
}

NodalFormResult finish_exact(const Pencil& p, const NodalExactStage& st,
                             const PipelineOut<RatField>& out) {
    NodalFormResult res;
    res.path = Path::Exact;
    res.residual = Rat(0);
    res.a = GaussRat(out.a);
    res.b = GaussRat(out.b);
    res.g = to_gauss_mat(out.g * st.g_pre);
    res.m = to_gauss_mat(st.m);
    if (res.a == res.b || res.a.is_zero() || res.b.is_zero())
        throw Error("nodal_normalize: degenerate residual pair");
    auto [f0, f1] = apply_gauss(res.g, res.m, p);
    if (f0 != w_node_q0_target() || f1 != w_ab_q1_target(res.a, res.b))
        throw Error("nodal_normalize: exact path verification failed");
    return res;
}

}  // namespace

NodalFormResult nodal_normalize(const Pencil& p, unsigned precision_bits) {
    NodalExactStage st = nodal_exact_stage(p);

    auto exact = nodal_field_stage<RatField>(st);
    if (exact.ok) return finish_exact(p, st, exact);

    unsigned bits = round_up_precision(precision_bits);
    const Rat tolerance = pow2(-long(precision_bits) / 2);
    while (true) {
        NodalFormResult res = dispatch_precision(bits, [&](auto tag) {
            constexpr unsigned B = decltype(tag)::value;
            using F = CplxField<B>;
            auto numeric = nodal_field_stage<F>(st);
            if (!numeric.ok)
                throw Error("nodal_normalize: numeric square root unavailable");
            NodalFormResult r;
            r.path = Path::CertifiedNumeric;
            r.precision_bits = B;
            r.a = F::to_gauss(numeric.a);
            r.b = F::to_gauss(numeric.b);
            Mat<GaussRat> g_field =
                numeric.g.template map<GaussRat>([](const CplxBF<B>& e) {
                    return cplx_to_gauss<B>(e);
                });
            r.g = g_field * to_gauss_mat(st.g_pre);
            r.m = to_gauss_mat(st.m);
            return r;
        });
        auto [f0, f1] = apply_gauss(res.g, res.m, p);
        // read a and b off the verified result so the residual covers them
        res.a = f1(1, 1);
        res.b = f1(2, 2);
        Mat<GaussRat> dev0 = f0 - w_node_q0_target();
        Mat<GaussRat> dev1 = f1 - w_ab_q1_target(res.a, res.b);
        res.residual = std::max(max_abs_bound(dev0), max_abs_bound(dev1));
        if (res.residual < tolerance) return res;
        if (bits >= kMaxPrecisionBits)
            throw CertificationFailure("nodal_normalize: residual bound failed");
        bits *= 2;
    }
}

NodalFormResult nodal_canonicalize(const Pencil& p, unsigned precision_bits) {
    unsigned bits = round_up_precision(precision_bits);
    const Rat tolerance = pow2(-long(precision_bits) / 2);
    while (true) {
        NodalFormResult base = nodal_normalize(p, bits);
        // parameter change fixing the double root and sending the residual
        // simple roots -1/a, -1/b to -1, -1/2:
        //   beta = (2a - b)/(a - b), delta = 1/(b - a);
        // then x3 -> x3/delta and the shear x3 -> x3 - beta x0 restore the
        // normal form with (a, b) = (1, 2).
        GaussRat a = base.a, b = base.b;
        GaussRat diff = a - b;
        if (diff.is_zero()) throw Error("nodal_canonicalize: coincident residual roots");
        GaussRat beta = (a + a - b) / diff;
        GaussRat delta = GaussRat(Rat(1)) / (b - a);

        Mat<GaussRat> m2 = Mat<GaussRat>::identity(2);
        m2(1, 0) = beta;
        m2(1, 1) = delta;

        Mat<GaussRat> scale = Mat<GaussRat>::identity(4);
        scale(3, 3) = GaussRat(Rat(1)) / delta;
        Mat<GaussRat> shear = Mat<GaussRat>::identity(4);
        shear(0, 3) = GaussRat() - beta;

        NodalFormResult res;
        res.path = base.path;
        res.precision_bits = base.precision_bits;
        res.g = shear * scale * base.g;
        res.m = m2 * base.m;

        auto [f0, f1] = apply_gauss(res.g, res.m, p);
        res.a = f1(1, 1);
        res.b = f1(2, 2);
        Mat<GaussRat> dev0 = f0 - w_node_q0_target();
        Mat<GaussRat> dev1 = f1 - w_ab_q1_target(GaussRat(Rat(1)), GaussRat(Rat(2)));
        if (res.path == Path::Exact) {
            if (!(dev0 == Mat<GaussRat>(4, 4)) || !(dev1 == Mat<GaussRat>(4, 4)))
                throw Error("nodal_canonicalize: exact path verification failed");
            res.residual = Rat(0);
            return res;
        }
        res.residual = std::max(max_abs_bound(dev0), max_abs_bound(dev1));
        if (res.residual < tolerance) return res;
        if (bits >= kMaxPrecisionBits)
            throw CertificationFailure("nodal_canonicalize: residual bound failed");
        bits *= 2;
    }
}

NodeReport verify_node(const Pencil& p) {
    OrbitClass oc = classify(p);
    if (oc.tag != OrbitClass::Tag::NodalStratum)
        throw NotNodal("verify_node: pencil not in the nodal stratum");

    // base-locus singular points come from vertices of singular members;
    // in the nodal stratum only the rank-3 double-root member qualifies
    int on_base = 0;
    Rat tau;
    bool at_infinity = false;
    for (const SingularMember& sm : oc.diagnostics) {
        if (sm.vertex_on_base_locus) {
            ++on_base;
            if (sm.root.kind == RootP1::Kind::Rational) {
                tau = sm.root.tau;
            } else if (sm.root.kind == RootP1::Kind::Infinity) {
                at_infinity = true;
            } else {
                throw Error("verify_node: irrational double root");
            }
        }
    }
    if (on_base != 1) throw Error("verify_node: singular point count mismatch");

    QMat member = at_infinity ? p.q1().mat() : QMat(p.q0().mat() + tau * p.q1().mat());
    auto ker = member.kernel();
    if (ker.size() != 1) throw Error("verify_node: vertex is not a single point");
    std::vector<Rat> v = ker[0];

    // normalize to a primitive integer representative
    Int lcm_den(1);
    for (const Rat& x : v)
        mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), x.get_den().get_mpz_t());
    Int content(0);
    for (Rat& x : v) {
        x *= Rat(lcm_den);
        mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), x.get_num().get_mpz_t());
    }
    int first_nonzero = -1;
    for (size_t i = 0; i < 4; ++i)
        if (sgn(v[i]) != 0) {
            if (first_nonzero < 0) first_nonzero = int(i);
            v[i] /= Rat(content);
        }
    if (first_nonzero >= 0 && sgn(v[size_t(first_nonzero)]) < 0)
        for (Rat& x : v) x = -x;

    // Jacobian rank at the vertex must be exactly 1
    QMat jac(2, 4);
    std::vector<Rat> q0v = p.q0().mat().apply(v);
    std::vector<Rat> q1v = p.q1().mat().apply(v);
    for (int j = 0; j < 4; ++j) {
        jac(0, j) = 2 * q0v[size_t(j)];
        jac(1, j) = 2 * q1v[size_t(j)];
    }
    if (jac.rank() != 1) throw Error("verify_node: Jacobian rank at the vertex is not 1");

    // gradient-free member (the double-root member itself) and a transverse
    // companion with nonvanishing differential
    const QMat& a_mat = member;
    std::vector<Rat> grad;  // G v for the companion G, up to the factor 2
    {
        bool q1_nonzero = false;
        for (const Rat& x : q1v)
            if (sgn(x) != 0) q1_nonzero = true;
        grad = q1_nonzero ? q1v : q0v;
    }

    // local chart: drop the coordinate of the first nonzero vertex entry,
    // then intersect with ker(dG)
    int chart = first_nonzero;
    std::vector<int> complement;
    for (int j = 0; j < 4; ++j)
        if (j != chart) complement.push_back(j);
    int lead = -1;
    for (int j : complement)
        if (sgn(grad[size_t(j)]) != 0) {
            lead = j;
            break;
        }
    if (lead < 0) throw Error("verify_node: companion gradient vanished on the chart");
    std::vector<std::vector<Rat>> w;
    for (int j : complement) {
        if (j == lead) continue;
        std::vector<Rat> wj(4, Rat(0));
        wj[size_t(j)] = 1;
        wj[size_t(lead)] = -grad[size_t(j)] / grad[size_t(lead)];
        w.push_back(std::move(wj));
    }

    QMat local(2, 2);
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) {
            Rat acc(0);
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j)
                    acc += w[size_t(r)][size_t(i)] * a_mat(i, j) * w[size_t(c)][size_t(j)];
            local(r, c) = acc;
        }

    NodeReport rep;
    NodePoint pt;
    pt.point = v;
    pt.local_rank = local.rank();
    rep.singular_points.push_back(std::move(pt));
    return rep;
}

}  // namespace qp
