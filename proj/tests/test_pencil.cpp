#include <doctest.h>

#include <random>

#include "qp/pencil.hpp"

using namespace qp;

namespace {

SymMat4 sum_of_squares3() {  // x0^2 + x1^2 + x2^2
    return SymMat4::from_terms({{0, 0, Rat(1)}, {1, 1, Rat(1)}, {2, 2, Rat(1)}});
}

SymMat4 node_q1() {  // x0 x3 + x1^2 + 2 x2^2
    return SymMat4::from_terms({{0, 3, Rat(1)}, {1, 1, Rat(1)}, {2, 2, Rat(2)}});
}

Pencil w_node() { return Pencil(sum_of_squares3(), node_q1()); }

SymMat4 diag(const Rat& a, const Rat& b, const Rat& c, const Rat& d) {
    return SymMat4::from_terms({{0, 0, a}, {1, 1, b}, {2, 2, c}, {3, 3, d}});
}

Pencil diag_pencil_0123() {
    return Pencil(diag(1, 1, 1, 1), diag(0, 1, 2, 3));
}

QMat random_invertible4(std::mt19937_64& rng, int height) {
    std::uniform_int_distribution<int> d(-height, height);
    while (true) {
        QMat g(4, 4);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) g(i, j) = d(rng);
        if (sgn(g.det()) != 0) return g;
    }
}

}  // namespace

TEST_CASE("pencil construction rejects dependent generators") {
    SymMat4 q = sum_of_squares3();
    QMat two = Rat(2) * q.mat();
    CHECK_THROWS_AS(Pencil(q, SymMat4(two)), DependentGenerators);
    CHECK_NOTHROW(w_node());
}

TEST_CASE("discriminant of a diagonal pencil is prod(s + lambda_i t)") {
    BinaryQuartic d = discriminant_quartic(diag_pencil_0123());
    // prod(s + lambda t) for lambda in {0,1,2,3}: s(s+t)(s+2t)(s+3t)
    // = s^4 + 6 s^3 t + 11 s^2 t^2 + 6 s t^3
    CHECK(d.c(0) == 1);
    CHECK(d.c(1) == 6);
    CHECK(d.c(2) == 11);
    CHECK(d.c(3) == 6);
    CHECK(d.c(4) == 0);
}

TEST_CASE("discriminant of the nodal pencil: -1/4 t^2 (s+t)(s+2t)") {
    BinaryQuartic d = discriminant_quartic(w_node());
    // -1/4 t^2 (s+t)(s+2t) = -1/4 (s^2 t^2 + 3 s t^3 + 2 t^4)
    CHECK(d.c(0) == 0);
    CHECK(d.c(1) == 0);
    CHECK(d.c(2) == Rat(-1, 4));
    CHECK(d.c(3) == Rat(-3, 4));
    CHECK(d.c(4) == Rat(-1, 2));
}

TEST_CASE("congruence scales the discriminant by det(g)^2") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 25; ++trial) {
        QMat g = random_invertible4(rng, 4);
        Pencil p = trial % 2 == 0 ? w_node() : diag_pencil_0123();
        BinaryQuartic before = discriminant_quartic(p);
        BinaryQuartic after = discriminant_quartic(congruence_act(g, p));
        Rat factor = g.det() * g.det();
        for (int i = 0; i <= 4; ++i) CHECK(after.c(i) == factor * before.c(i));
    }
    QMat sing(4, 4);
    CHECK_THROWS_AS(congruence_act(sing, w_node()), SingularGroupElement);
}

TEST_CASE("singular members of the diagonal pencil") {
    auto members = singular_members(diag_pencil_0123());
    REQUIRE(members.size() == 4);
    // roots of (1+t)(1+2t)(1+3t) plus the member Q1 at infinity
    CHECK(members[0].root.kind == RootP1::Kind::Rational);
    CHECK(members[0].root.tau == Rat(-1));
    CHECK(members[1].root.tau == Rat(-1, 2));
    CHECK(members[2].root.tau == Rat(-1, 3));
    CHECK(members[3].root.kind == RootP1::Kind::Infinity);
    for (const auto& m : members) {
        CHECK(m.multiplicity == 1);
        CHECK(m.rank == 3);
        CHECK(!m.vertex_on_base_locus);
    }
}

TEST_CASE("singular members of the nodal pencil") {
    auto members = singular_members(w_node());
    REQUIRE(members.size() == 3);
    // Delta(1,t) = -1/4 t^2 (1+t)(1+2t): double root t=0, simple t=-1, -1/2
    CHECK(members[0].root.tau == Rat(-1));
    CHECK(members[0].multiplicity == 1);
    CHECK(members[0].rank == 3);
    CHECK(!members[0].vertex_on_base_locus);
    CHECK(members[1].root.tau == Rat(-1, 2));
    CHECK(members[1].multiplicity == 1);
    CHECK(members[2].root.tau == Rat(0));
    CHECK(members[2].multiplicity == 2);
    CHECK(members[2].rank == 3);
    CHECK(members[2].vertex_on_base_locus);
}

TEST_CASE("line inside the determinant hypersurface") {
    // <x0 x1, x0 x2>: every member is divisible by x0, det identically 0
    SymMat4 q0 = SymMat4::from_terms({{0, 1, Rat(1)}});
    SymMat4 q1 = SymMat4::from_terms({{0, 2, Rat(1)}});
    Pencil p(q0, q1);
    CHECK(discriminant_quartic(p).is_zero());
    CHECK_THROWS_AS(singular_members(p), LineInD);
    CHECK(classify(p).tag == OrbitClass::Tag::LineInD);
}

TEST_CASE("classification of reference pencils") {
    OrbitClass smooth = classify(diag_pencil_0123());
    CHECK(smooth.tag == OrbitClass::Tag::SmoothFiber);
    REQUIRE(smooth.j.has_value());
    // roots {0,-1,-2,-3}: j = 35152/9 (matches the Legendre value at -3)
    CHECK(*smooth.j == P1Rat(Rat(35152, 9)));
    CHECK(smooth.root_type == RootType{1, 1, 1, 1});

    OrbitClass nodal = classify(w_node());
    CHECK(nodal.tag == OrbitClass::Tag::NodalStratum);
    CHECK(nodal.root_type == RootType{2, 1, 1});
    CHECK(!nodal.j.has_value());

    // <x0^2 + x1^2, x2^2 + x3^2>: Delta = s^2 t^2, both double roots rank 2
    Pencil deep(diag(1, 1, 0, 0), diag(0, 0, 1, 1));
    OrbitClass dc = classify(deep);
    CHECK(dc.tag == OrbitClass::Tag::DeeperStratum);
    CHECK(dc.root_type == RootType{2, 2});
    for (const auto& m : dc.diagnostics) CHECK(m.rank == 2);
}

TEST_CASE("irrational discriminant roots get exact number-field ranks") {
    // <diag(1,1,1,1), diag(0,0,2,2) with off-diagonal twist>: build a pencil
    // whose discriminant has an irrational quadratic factor.
    // diag pencil with lambdas (0, 0, 2, 2) would be degenerate; instead use
    // lambda = (0, 1, sqrt2-ish) via a rotation-free construction:
    // Q1 = diag(0,1,1,2) + E_{23}: char roots of the 2x2 block [1 1; 1 2]
    // are (3 +- sqrt5)/2, irrational.
    SymMat4 q0 = diag(1, 1, 1, 1);
    SymMat4 q1 = SymMat4::from_terms(
        {{1, 1, Rat(1)}, {2, 2, Rat(1)}, {3, 3, Rat(2)}, {2, 3, Rat(2)}});
    Pencil p(q0, q1);
    OrbitClass oc = classify(p);
    CHECK(oc.tag == OrbitClass::Tag::SmoothFiber);
    int algebraic = 0;
    for (const auto& m : oc.diagnostics) {
        CHECK(m.rank == 3);
        if (m.root.kind == RootP1::Kind::Algebraic) ++algebraic;
    }
    CHECK(algebraic == 2);
}

TEST_CASE("classification is invariant under congruence and basis change") {
    std::mt19937_64 rng(31337);
    std::uniform_int_distribution<int> d(-3, 3);
    for (int trial = 0; trial < 20; ++trial) {
        Pencil p = trial % 2 == 0 ? w_node() : diag_pencil_0123();
        OrbitClass base = classify(p);

        QMat g = random_invertible4(rng, 3);
        OrbitClass moved = classify(congruence_act(g, p));
        CHECK(moved.tag == base.tag);
        CHECK(moved.root_type == base.root_type);
        if (base.j.has_value()) {
            REQUIRE(moved.j.has_value());
            CHECK(*moved.j == *base.j);
        }

        QMat m(2, 2);
        do {
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) m(i, j) = d(rng);
        } while (sgn(m.det()) == 0);
        OrbitClass mixed = classify(basis_change(m, p));
        CHECK(mixed.tag == base.tag);
        // the root multiset moves by a Moebius map; the type is preserved
        CHECK(mixed.root_type == base.root_type);
        if (base.j.has_value()) CHECK(*mixed.j == *base.j);
    }
}

TEST_CASE("infinitesimal stabilizers") {
    auto rep = infinitesimal_stabilizer_dim(diag_pencil_0123());
    CHECK(rep.lie_algebra_dim == 0);
    CHECK(rep.orbit_dim == 15);

    rep = infinitesimal_stabilizer_dim(w_node());
    CHECK(rep.lie_algebra_dim == 0);

    SymMat4 q0 = SymMat4::from_terms({{0, 1, Rat(1)}});
    SymMat4 q1 = SymMat4::from_terms({{0, 2, Rat(1)}});
    rep = infinitesimal_stabilizer_dim(Pencil(q0, q1));
    CHECK(rep.lie_algebra_dim >= 1);
}

TEST_CASE("stabilizer dimension is congruence invariant") {
    std::mt19937_64 rng(777);
    for (int trial = 0; trial < 10; ++trial) {
        QMat g = random_invertible4(rng, 3);
        auto a = infinitesimal_stabilizer_dim(diag_pencil_0123());
        auto b = infinitesimal_stabilizer_dim(congruence_act(g, diag_pencil_0123()));
        CHECK(a.lie_algebra_dim == b.lie_algebra_dim);
    }
}
