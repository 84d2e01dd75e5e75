#include <doctest.h>

#include <random>

#include "qp/quartic.hpp"

using namespace qp;

namespace {

BinaryQuartic quartic(int c0, int c1, int c2, int c3, int c4) {
    return BinaryQuartic({Rat(c0), Rat(c1), Rat(c2), Rat(c3), Rat(c4)});
}

std::mt19937_64 rng(0x5eed);

BinaryQuartic random_quartic(int height) {
    std::uniform_int_distribution<int> d(-height, height);
    while (true) {
        BinaryQuartic f({Rat(d(rng)), Rat(d(rng)), Rat(d(rng)), Rat(d(rng)), Rat(d(rng))});
        if (!f.is_zero()) return f;
    }
}

QMat mat2(int a, int b, int c, int d) {
    QMat m(2, 2);
    m(0, 0) = a;
    m(0, 1) = b;
    m(1, 0) = c;
    m(1, 1) = d;
    return m;
}

}  // namespace

TEST_CASE("invariants of reference forms") {
    // s^4 + t^4
    auto iv = invariants(quartic(1, 0, 0, 0, 1));
    CHECK(iv.I == 1);
    CHECK(iv.J == 0);
    CHECK(iv.Delta == 1);

    // s^4 - s t^3: a3 = -1/4
    iv = invariants(quartic(1, 0, 0, -1, 0));
    CHECK(iv.I == 0);
    CHECK(iv.J == Rat(-1, 16));
    CHECK(iv.Delta == Rat(-27, 256));

    iv = invariants(BinaryQuartic());
    CHECK(iv.I == 0);
    CHECK(iv.J == 0);
    CHECK(iv.Delta == 0);
}

TEST_CASE("j-invariant of reference forms") {
    CHECK(j_invariant(quartic(1, 0, 0, 0, 1)) == P1Rat(Rat(1728)));
    // st(s-t)(s-2t) = s^3 t - 3 s^2 t^2 + 2 s t^3
    CHECK(j_invariant(quartic(0, 1, -3, 2, 0)) == P1Rat(Rat(1728)));
    // s^3 t has a triple root
    CHECK_THROWS_AS(j_invariant(quartic(0, 1, 0, 0, 0)), UndefinedJ);
    CHECK_THROWS_AS(j_invariant(BinaryQuartic()), ZeroForm);
    // squarefree cubic factor times double root: Delta = 0, I != 0 -> infinity
    // f = s^2 t^2 + t^4 = t^2 (s^2 + t^2): root type 2+1+1
    BinaryQuartic f = quartic(0, 0, 1, 0, 1);
    CHECK(root_type(f) == RootType{2, 1, 1});
    CHECK(j_invariant(f).is_infinity());
}

TEST_CASE("gl2 substitution basics") {
    BinaryQuartic f = random_quartic(9);
    CHECK(gl2_substitute(f, mat2(1, 0, 0, 1)) == f);

    BinaryQuartic g = quartic(1, 0, 0, 0, 1);
    CHECK(gl2_substitute(g, mat2(0, 1, 1, 0)) == g);  // swap s and t

    CHECK_THROWS_AS(gl2_substitute(f, mat2(1, 2, 2, 4)), SingularSubstitution);

    // covariance weights on st(s-t)(s-2t) under diag(2,1)
    BinaryQuartic h = quartic(0, 1, -3, 2, 0);
    auto before = invariants(h);
    auto after = invariants(gl2_substitute(h, mat2(2, 0, 0, 1)));
    CHECK(after.I == 16 * before.I);
    CHECK(after.J == 64 * before.J);
    CHECK(j_invariant(h) == j_invariant(gl2_substitute(h, mat2(2, 0, 0, 1))));
}

TEST_CASE("gl2 covariance weights (4, 6, 12) on random pairs") {
    std::uniform_int_distribution<int> d(-4, 4);
    int done = 0;
    while (done < 60) {
        BinaryQuartic f = random_quartic(6);
        QMat m = mat2(d(rng), d(rng), d(rng), d(rng));
        Rat det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
        if (sgn(det) == 0) continue;
        auto iv = invariants(f);
        auto iv2 = invariants(gl2_substitute(f, m));
        Rat d4 = det * det * det * det;
        CHECK(iv2.I == d4 * iv.I);
        CHECK(iv2.J == d4 * det * det * iv.J);
        CHECK(iv2.Delta == d4 * d4 * d4 * iv.Delta);
        ++done;
    }
}

TEST_CASE("root types, including roots at infinity") {
    CHECK(root_type(quartic(0, 1, -3, 2, 0)) == RootType{1, 1, 1, 1});
    // -1/4 t^2 (s+t)(s+2t) = -1/4 (s^2 t^2 + 3 s t^3 + 2 t^4)
    BinaryQuartic nodal({Rat(0), Rat(0), Rat(-1, 4), Rat(-3, 4), Rat(-1, 2)});
    CHECK(root_type(nodal) == RootType{2, 1, 1});
    CHECK(root_type(quartic(0, 0, 1, 0, 0)) == RootType{2, 2});  // s^2 t^2
    CHECK(root_type(quartic(1, 0, 0, 0, 0)) == RootType{4});     // s^4: (0:1)^4
    CHECK(root_type(quartic(0, 1, 0, 0, 0)) == RootType{3, 1});  // s^3 t
    CHECK(root_type(quartic(1, 0, 0, 0, 1)) == RootType{1, 1, 1, 1});
    CHECK(root_type(BinaryQuartic()).empty());
}

TEST_CASE("Delta = 0 iff repeated root, on random quartics") {
    for (int trial = 0; trial < 200; ++trial) {
        BinaryQuartic f = random_quartic(5);
        auto iv = invariants(f);
        bool squarefree = root_type(f) == RootType{1, 1, 1, 1};
        CHECK(squarefree == (sgn(iv.Delta) != 0));
    }
}
