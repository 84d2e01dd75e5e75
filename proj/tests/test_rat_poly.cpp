#include <doctest.h>

#include <random>

#include "qp/linalg.hpp"
#include "qp/poly.hpp"
#include "qp/rat.hpp"

using namespace qp;

TEST_CASE("rational parsing and formatting") {
    CHECK(rat_to_string(rat_from_string("3/6")) == "1/2");
    CHECK(rat_to_string(rat_from_string("-4/2")) == "-2");
    CHECK(rat_to_string(rat_from_string("7")) == "7");
    CHECK(rat_from_string("0/5") == Rat(0));
    CHECK_THROWS_AS(rat_from_string("x"), SchemaError);
    CHECK_THROWS_AS(rat_from_string(""), SchemaError);
}

TEST_CASE("exact square roots and upper bounds") {
    CHECK(*sqrt_exact(Rat(9, 4)) == Rat(3, 2));
    CHECK(!sqrt_exact(Rat(2)).has_value());
    CHECK(!sqrt_exact(Rat(-1)).has_value());
    Rat x(7, 3);
    Rat u = sqrt_upper_bound(x);
    CHECK(u * u >= x);
    CHECK(u * u <= x * (Rat(1) + pow2(-100)));
    CHECK(sqrt_upper_bound(Rat(0)) == 0);
}

TEST_CASE("polynomial arithmetic and division") {
    QPoly p{Rat(-1), Rat(0), Rat(1)};  // x^2 - 1
    QPoly q{Rat(1), Rat(1)};           // x + 1
    auto [quot, rem] = divmod(p, q);
    CHECK(rem.is_zero());
    CHECK(quot == QPoly{Rat(-1), Rat(1)});
    CHECK(p.eval(Rat(3)) == 8);
    CHECK(gcd(p, q) == q);

    QPoly z;
    CHECK(z.is_zero());
    CHECK(z.degree() == -1);
    CHECK_THROWS_AS(divmod(p, z), Error);
}

TEST_CASE("squarefree decomposition (Yun)") {
    // (x-1)^2 (x+2)^3 x
    QPoly f{Rat(-1), Rat(1)};
    QPoly g{Rat(2), Rat(1)};
    QPoly p = QPoly::x() * f * f * g * g * g;
    auto dec = squarefree_decomposition(p);
    REQUIRE(dec.size() == 3);
    CHECK(dec[0].first == QPoly::x());
    CHECK(dec[0].second == 1);
    CHECK(dec[1].first == f);
    CHECK(dec[1].second == 2);
    CHECK(dec[2].first == g);
    CHECK(dec[2].second == 3);

    QPoly recon(1);
    for (const auto& [fac, mult] : dec)
        for (int i = 0; i < mult; ++i) recon *= fac;
    CHECK(recon == p.monic());
}

TEST_CASE("squarefree decomposition on random products") {
    std::mt19937_64 rng(20240811);
    std::uniform_int_distribution<int> coeff(-5, 5);
    for (int trial = 0; trial < 40; ++trial) {
        QPoly p(1);
        QPoly used(1);
        for (int k = 0; k < 3; ++k) {
            QPoly lin{Rat(coeff(rng)), Rat(1)};
            int mult = 1 + int(rng() % 3);
            if (!(used % lin).is_zero() || used.degree() == 0) {
                for (int i = 0; i < mult; ++i) p *= lin;
                used *= lin;
            }
        }
        if (p.degree() == 0) continue;
        QPoly recon(1);
        for (const auto& [fac, mult] : squarefree_decomposition(p))
            for (int i = 0; i < mult; ++i) recon *= fac;
        CHECK(recon == p.monic());
    }
}

TEST_CASE("matrix rank, kernel, inverse, det") {
    QMat m(3, 3);
    m(0, 0) = 1;
    m(0, 1) = 2;
    m(0, 2) = 3;
    m(1, 0) = 2;
    m(1, 1) = 4;
    m(1, 2) = 6;
    m(2, 0) = 1;
    m(2, 1) = 0;
    m(2, 2) = 1;
    CHECK(m.rank() == 2);
    auto ker = m.kernel();
    REQUIRE(ker.size() == 1);
    // check m * k = 0
    auto mk = m.apply(ker[0]);
    for (const Rat& x : mk) CHECK(sgn(x) == 0);
    CHECK(sgn(m.det()) == 0);

    QMat id = QMat::identity(4);
    CHECK(id.inverse() == id);

    QMat a(2, 2);
    a(0, 0) = 1;
    a(0, 1) = 2;
    a(1, 0) = 3;
    a(1, 1) = 4;
    CHECK(a.det() == Rat(-2));
    CHECK(a.inverse() * a == QMat::identity(2));
}

TEST_CASE("congruent diagonalization of symmetric matrices") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> coeff(-6, 6);
    for (int trial = 0; trial < 30; ++trial) {
        QMat m(4, 4);
        for (int i = 0; i < 4; ++i)
            for (int j = i; j < 4; ++j) {
                m(i, j) = coeff(rng);
                m(j, i) = m(i, j);
            }
        auto [g, d] = congruent_diagonalize(m);
        QMat res = g * m * g.transposed();
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                if (i == j) {
                    CHECK(res(i, j) == d[size_t(i)]);
                } else {
                    CHECK(sgn(res(i, j)) == 0);
                }
            }
    }
}
