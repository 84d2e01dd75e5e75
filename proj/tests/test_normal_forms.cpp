#include <doctest.h>

#include <random>

#include "qp/normal_forms.hpp"

using namespace qp;

namespace {

SymMat4 sum_of_squares3() {
    return SymMat4::from_terms({{0, 0, Rat(1)}, {1, 1, Rat(1)}, {2, 2, Rat(1)}});
}

Pencil w_ab(const Rat& a, const Rat& b) {
    return Pencil(sum_of_squares3(),
                  SymMat4::from_terms({{0, 3, Rat(1)}, {1, 1, a}, {2, 2, b}}));
}

Pencil w_node() { return w_ab(Rat(1), Rat(2)); }

QMat random_invertible4(std::mt19937_64& rng, int height) {
    std::uniform_int_distribution<int> d(-height, height);
    while (true) {
        QMat g(4, 4);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) g(i, j) = d(rng);
        if (sgn(g.det()) != 0) return g;
    }
}

Mat<GaussRat> gauss(const QMat& m) {
    return m.map<GaussRat>([](const Rat& r) { return GaussRat(r); });
}

/// Exact check that (g, m) carries p to the pair (t0, t1) within eps.
void check_transforms(const Pencil& p, const NodalFormResult& res, const Rat& eps) {
    Mat<GaussRat> q0 = gauss(p.q0().mat());
    Mat<GaussRat> q1 = gauss(p.q1().mat());
    Mat<GaussRat> n0 = res.m(0, 0) * q0 + res.m(0, 1) * q1;
    Mat<GaussRat> n1 = res.m(1, 0) * q0 + res.m(1, 1) * q1;
    Mat<GaussRat> f0 = res.g * n0 * res.g.transposed();
    Mat<GaussRat> f1 = res.g * n1 * res.g.transposed();
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            GaussRat want0 = (i == j && i < 3) ? GaussRat(Rat(1)) : GaussRat();
            GaussRat want1;
            if ((i == 0 && j == 3) || (i == 3 && j == 0)) want1 = GaussRat(Rat(1, 2));
            if (i == 1 && j == 1) want1 = res.a;
            if (i == 2 && j == 2) want1 = res.b;
            CHECK((f0(i, j) - want0).norm() <= eps * eps);
            CHECK((f1(i, j) - want1).norm() <= eps * eps);
        }
}

}  // namespace

TEST_CASE("diagonal pencil construction") {
    Pencil p = diagonal_pencil({Rat(0), Rat(1), Rat(2), Rat(3)});
    BinaryQuartic d = discriminant_quartic(p);
    CHECK(d.c(0) == 1);
    CHECK(d.c(1) == 6);
    CHECK(d.c(2) == 11);
    CHECK(d.c(3) == 6);
    CHECK(d.c(4) == 0);
    CHECK_THROWS_AS(diagonal_pencil({Rat(1), Rat(1), Rat(2), Rat(3)}), RepeatedLambda);
}

TEST_CASE("diagonalization of an already-diagonal pencil is the identity") {
    auto res = simultaneous_diagonalize(diagonal_pencil({Rat(0), Rat(1), Rat(2), Rat(3)}));
    CHECK(res.path == Path::Exact);
    CHECK(sgn(res.residual) == 0);
    REQUIRE(res.lambdas.size() == 4);
    for (int i = 0; i < 4; ++i) {
        CHECK(res.lambdas[size_t(i)].approx == GaussRat(Rat(i)));
        CHECK(sgn(res.lambdas[size_t(i)].radius) == 0);
    }
    CHECK(res.transform == Mat<GaussRat>::identity(4));
    CHECK(res.basis == QMat::identity(2));
}

TEST_CASE("eigenvalues are similarity invariants under congruence") {
    std::mt19937_64 rng(5150);
    for (int trial = 0; trial < 6; ++trial) {
        Pencil p = diagonal_pencil({Rat(0), Rat(1), Rat(2), Rat(3)});
        QMat g = random_invertible4(rng, 3);
        Pencil moved = congruence_act(g, p);
        auto res = simultaneous_diagonalize(moved);
        REQUIRE(res.lambdas.size() == 4);
        // the transformed pair may put a different member at Q0; after the
        // recorded basis change the eigenvalue set is a Moebius image, and the
        // contract below pins it exactly: transform diagonalizes both forms.
        Rat eps = res.path == Path::Exact ? Rat(0) : pow2(-100);
        // verify transform^T Q0' transform = I, transform^T Q1' transform = diag
        QMat q0 = res.basis(0, 0) * moved.q0().mat() + res.basis(0, 1) * moved.q1().mat();
        QMat q1 = res.basis(1, 0) * moved.q0().mat() + res.basis(1, 1) * moved.q1().mat();
        Mat<GaussRat> f0 = res.transform.transposed() * gauss(q0) * res.transform;
        Mat<GaussRat> f1 = res.transform.transposed() * gauss(q1) * res.transform;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                GaussRat want0 = (i == j) ? GaussRat(Rat(1)) : GaussRat();
                GaussRat want1 = (i == j) ? res.lambdas[size_t(i)].approx : GaussRat();
                CHECK((f0(i, j) - want0).norm() <= eps * eps);
                CHECK((f1(i, j) - want1).norm() <= eps * eps);
            }
    }
}

TEST_CASE("eigenvalue/root duality: det(B0) charpoly(-s) = Delta(s, 1)") {
    // for the diagonal pencil with basis Q0 smooth, the discriminant's
    // s-chart polynomial matches the reversed characteristic polynomial
    Pencil p = diagonal_pencil({Rat(-1), Rat(1, 2), Rat(2), Rat(5)});
    BinaryQuartic d = discriminant_quartic(p);
    auto res = simultaneous_diagonalize(p);
    // roots of Delta(s,1) in s are the negated eigenvalues
    QPoly delta_s;  // Delta(s, 1) = sum c_i s^(4-i)
    {
        std::vector<Rat> c(5);
        for (int i = 0; i <= 4; ++i) c[size_t(4 - i)] = d.c(i);
        delta_s = QPoly(std::move(c));
    }
    for (const CRoot& lam : res.lambdas) {
        CHECK(sgn(lam.radius) == 0);
        CHECK(sgn(delta_s.eval(-lam.approx.re)) == 0);
    }
}

TEST_CASE("diagonalization off the smooth locus is rejected") {
    CHECK_THROWS_AS(simultaneous_diagonalize(w_node()), NotSmooth);
}

TEST_CASE("numeric diagonalization path on irrational eigenvalues") {
    // Q1 with 2x2 block [1 1; 1 2]: eigenvalues (3 +- sqrt5)/2
    SymMat4 q0 = SymMat4::from_terms(
        {{0, 0, Rat(1)}, {1, 1, Rat(1)}, {2, 2, Rat(1)}, {3, 3, Rat(1)}});
    SymMat4 q1 = SymMat4::from_terms(
        {{1, 1, Rat(1)}, {2, 2, Rat(1)}, {3, 3, Rat(2)}, {2, 3, Rat(2)}});
    Pencil p(q0, q1);
    auto res = simultaneous_diagonalize(p, 256);
    CHECK(res.path == Path::CertifiedNumeric);
    CHECK(res.residual < pow2(-128));
    REQUIRE(res.lambdas.size() == 4);
    // lambdas sorted by (Re, Im)
    for (int i = 0; i + 1 < 4; ++i) {
        bool le = res.lambdas[size_t(i)].approx.re < res.lambdas[size_t(i) + 1].approx.re ||
                  (res.lambdas[size_t(i)].approx.re == res.lambdas[size_t(i) + 1].approx.re &&
                   res.lambdas[size_t(i)].approx.im <= res.lambdas[size_t(i) + 1].approx.im);
        CHECK(le);
    }
}

TEST_CASE("nodal normal form of W_node is the identity") {
    auto res = nodal_normalize(w_node());
    CHECK(res.path == Path::Exact);
    CHECK(res.a == GaussRat(Rat(1)));
    CHECK(res.b == GaussRat(Rat(2)));
    CHECK(res.g == Mat<GaussRat>::identity(4));
    CHECK(res.m == Mat<GaussRat>::identity(2));
}

TEST_CASE("nodal normal form rejects smooth pencils") {
    CHECK_THROWS_AS(nodal_normalize(diagonal_pencil({Rat(0), Rat(1), Rat(2), Rat(3)})),
                    NotNodal);
    CHECK_THROWS_AS(nodal_canonicalize(diagonal_pencil({Rat(0), Rat(1), Rat(2), Rat(3)})),
                    NotNodal);
    CHECK_THROWS_AS(verify_node(diagonal_pencil({Rat(0), Rat(1), Rat(2), Rat(3)})),
                    NotNodal);
}

TEST_CASE("nodal normalize keeps the residual discriminant roots") {
    // W_{3,5} made rationally messy by a pipeline-exact congruence
    std::mt19937_64 rng(98);
    Pencil p = w_ab(Rat(3), Rat(5));
    // x3 shear and (x0 x1 x2) permutation keep every square root rational
    QMat g = QMat::identity(4);
    g(3, 0) = 2;
    g(3, 1) = -1;
    g(3, 2) = 3;
    QMat perm(4, 4);
    perm(0, 1) = 1;
    perm(1, 2) = 1;
    perm(2, 0) = 1;
    perm(3, 3) = 1;
    Pencil moved = congruence_act(perm * g, p);
    (void)rng;

    auto res = nodal_normalize(moved);
    CHECK(res.path == Path::Exact);
    CHECK(res.a == GaussRat(Rat(3)));
    CHECK(res.b == GaussRat(Rat(5)));
    check_transforms(moved, res, Rat(0));

    // discriminant of the result: -1/4 t^2 (1+3t)(1+5t) has simple roots
    // -1/3, -1/5 — the residual divisor the recorded m tracks
    BinaryQuartic d = discriminant_quartic(moved);
    QPoly dt = d.dehomogenized();
    CHECK(sgn(dt.eval(Rat(-1, 3))) == 0);
    CHECK(sgn(dt.eval(Rat(-1, 5))) == 0);
}

TEST_CASE("nodal normalize on a congruence image needing numerics") {
    std::mt19937_64 rng(1212);
    QMat g = random_invertible4(rng, 3);
    Pencil moved = congruence_act(g, w_node());
    auto res = nodal_normalize(moved, 256);
    // generic g forces irrational square roots
    if (res.path == Path::CertifiedNumeric) {
        CHECK(res.residual < pow2(-128));
        check_transforms(moved, res, pow2(-120));
    } else {
        check_transforms(moved, res, Rat(0));
    }
}

TEST_CASE("nodal canonicalize: fixed point and the swap case") {
    auto res = nodal_canonicalize(w_node());
    CHECK(res.path == Path::Exact);
    CHECK(res.a == GaussRat(Rat(1)));
    CHECK(res.b == GaussRat(Rat(2)));
    CHECK(res.g == Mat<GaussRat>::identity(4));
    CHECK(res.m == Mat<GaussRat>::identity(2));

    // W_{2,1}: the x1 <-> x2 swap with identity reparameterization
    auto swapped = nodal_canonicalize(w_ab(Rat(2), Rat(1)));
    CHECK(swapped.path == Path::Exact);
    CHECK(swapped.a == GaussRat(Rat(1)));
    CHECK(swapped.b == GaussRat(Rat(2)));
    CHECK(swapped.m == Mat<GaussRat>::identity(2));
    Mat<GaussRat> swap12 = Mat<GaussRat>::identity(4);
    swap12(1, 1) = GaussRat();
    swap12(2, 2) = GaussRat();
    swap12(1, 2) = GaussRat(Rat(1));
    swap12(2, 1) = GaussRat(Rat(1));
    CHECK(swapped.g == swap12);
}

TEST_CASE("nodal canonicalize recovers W_node from exact-path images") {
    // shears, permutations of (x0,x1,x2), x3 scalings and global scalings
    // keep the pipeline rational: expect exact recovery
    std::vector<QMat> gens;
    {
        QMat shear = QMat::identity(4);
        shear(3, 1) = 5;
        gens.push_back(shear);
        QMat perm(4, 4);
        perm(0, 2) = 1;
        perm(1, 0) = 1;
        perm(2, 1) = 1;
        perm(3, 3) = 1;
        gens.push_back(perm);
        QMat scale = QMat::identity(4);
        scale(3, 3) = Rat(3, 2);
        gens.push_back(scale);
        QMat global = Rat(2) * QMat::identity(4);
        gens.push_back(global);
    }
    std::mt19937_64 rng(777);
    for (int trial = 0; trial < 8; ++trial) {
        QMat g = QMat::identity(4);
        for (int k = 0; k < 4; ++k) g = g * gens[rng() % gens.size()];
        Pencil moved = congruence_act(g, w_node());
        auto res = nodal_canonicalize(moved);
        CHECK(res.path == Path::Exact);
        CHECK(res.a == GaussRat(Rat(1)));
        CHECK(res.b == GaussRat(Rat(2)));
        check_transforms(moved, res, Rat(0));
    }
}

TEST_CASE("nodal canonicalize on fully random congruence images") {
    std::mt19937_64 rng(31415);
    for (int trial = 0; trial < 4; ++trial) {
        QMat g = random_invertible4(rng, 2);
        Pencil moved = congruence_act(g, w_node());
        auto res = nodal_canonicalize(moved, 256);
        Rat eps = res.path == Path::Exact ? Rat(0) : pow2(-120);
        CHECK((res.a - GaussRat(Rat(1))).norm() <= eps * eps);
        CHECK((res.b - GaussRat(Rat(2))).norm() <= eps * eps);
        check_transforms(moved, res, eps);
        // discriminant divisor in the recorded coordinates: 2[0]+[-1]+[-1/2]
        if (res.path == Path::Exact) {
            QMat m2(2, 2);
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) m2(i, j) = res.m(i, j).re;
            BinaryQuartic d = discriminant_quartic(basis_change(m2, moved));
            QPoly dt = d.dehomogenized();
            CHECK(dt.degree() == 2);  // double root at t = 0 drops the degree
            CHECK(sgn(dt.coeff(0)) == 0);
            // remaining simple roots at -1 and -1/2 after dividing by t^2:
            CHECK(sgn(dt.eval(Rat(0))) == 0);
        }
    }
}

TEST_CASE("verify_node on W_node and its images") {
    NodeReport rep = verify_node(w_node());
    REQUIRE(rep.singular_points.size() == 1);
    CHECK(rep.singular_points[0].point == std::vector<Rat>{Rat(0), Rat(0), Rat(0), Rat(1)});
    CHECK(rep.singular_points[0].local_rank == 2);
    CHECK(rep.is_ordinary_node());

    std::mt19937_64 rng(2718);
    for (int trial = 0; trial < 6; ++trial) {
        QMat g = random_invertible4(rng, 3);
        Pencil moved = congruence_act(g, w_node());
        NodeReport moved_rep = verify_node(moved);
        REQUIRE(moved_rep.singular_points.size() == 1);
        CHECK(moved_rep.is_ordinary_node());
        // the node moves to the inverse-transpose image of [0:0:0:1]
        std::vector<Rat> expected = g.inverse().transposed().apply(
            {Rat(0), Rat(0), Rat(0), Rat(1)});
        // compare projectively
        const auto& got = moved_rep.singular_points[0].point;
        int i0 = -1;
        for (int i = 0; i < 4; ++i)
            if (sgn(expected[size_t(i)]) != 0 || sgn(got[size_t(i)]) != 0) {
                i0 = i;
                break;
            }
        REQUIRE(i0 >= 0);
        REQUIRE(sgn(expected[size_t(i0)]) != 0);
        REQUIRE(sgn(got[size_t(i0)]) != 0);
        Rat scale = got[size_t(i0)] / expected[size_t(i0)];
        for (int i = 0; i < 4; ++i)
            CHECK(got[size_t(i)] == scale * expected[size_t(i)]);
    }
}

TEST_CASE("verify_node on random W_{a,b}") {
    std::mt19937_64 rng(555);
    std::uniform_int_distribution<int> d(1, 9);
    for (int trial = 0; trial < 10; ++trial) {
        Rat a(d(rng), d(rng));
        a.canonicalize();
        Rat b(d(rng), d(rng));
        b.canonicalize();
        if (a == b) continue;
        NodeReport rep = verify_node(w_ab(a, b));
        CHECK(rep.is_ordinary_node());
    }
}
