#include "qp/moduli.hpp"

#include <algorithm>
#include <mutex>

#include "qp/factor.hpp"
#include "qp/numfield.hpp"
#include "qp/roots.hpp"

namespace qp::moduli {

namespace {

const QPoly& legendre_numerator_base() {
    static const QPoly p{Rat(1), Rat(-1), Rat(1)};  // 1 - lambda + lambda^2
    return p;
}

const QPoly& legendre_denominator() {
    // lambda^2 (1 - lambda)^2 = lambda^2 - 2 lambda^3 + lambda^4
    static const QPoly q{Rat(0), Rat(0), Rat(1), Rat(-2), Rat(1)};
    return q;
}

QPoly legendre_numerator() {
    const QPoly& p = legendre_numerator_base();
    return Rat(256) * (p * p * p);
}

int order_of_vanishing(QPoly f, const QPoly& factor) {
    int ord = 0;
    while (!f.is_zero()) {
        auto [q, r] = divmod(f, factor);
        if (!r.is_zero()) break;
        ++ord;
        f = q;
    }
    return ord;
}

}  // namespace

P1Rat legendre_j(const Rat& lambda) {
    Rat den = lambda * lambda * (1 - lambda) * (1 - lambda);
    if (sgn(den) == 0) return P1Rat::infinity();
    Rat p = 1 - lambda + lambda * lambda;
    return P1Rat(256 * p * p * p / den);
}

GaussRat legendre_j(const GaussRat& lambda) {
    GaussRat one(Rat(1));
    GaussRat den = lambda * lambda * (one - lambda) * (one - lambda);
    if (den.is_zero()) throw PoleValue("legendre_j: lambda in {0, 1}");
    GaussRat p = one - lambda + lambda * lambda;
    return GaussRat(Rat(256)) * p * p * p / den;
}

std::vector<RamificationDatum> legendre_ramification() {
    const QPoly num = legendre_numerator();
    const QPoly& den = legendre_denominator();

    // numerator of j' before cancellation
    QPoly raw = num.derivative() * den - num * den.derivative();
    QPoly cancel = gcd(raw, den * den);
    QPoly critical = exact_div(raw, cancel).monic();

    // expected factor structure: (2 lambda - 1)(lambda - 2)(lambda + 1)
    // times (lambda^2 - lambda + 1)^2
    auto factors = factor_rational_poly(critical);
    std::vector<Rat> rational_points;
    QPoly quadratic;
    int quadratic_mult = 0;
    for (const auto& [f, mult] : factors) {
        if (f.degree() == 1) {
            if (mult != 1) throw Error("legendre_ramification: unexpected multiplicity");
            rational_points.push_back(-f.coeff(0));
        } else if (f.degree() == 2) {
            quadratic = f;
            quadratic_mult = mult;
        } else {
            throw Error("legendre_ramification: unexpected factor degree");
        }
    }
    std::sort(rational_points.begin(), rational_points.end());
    if (rational_points != std::vector<Rat>{Rat(-1), Rat(1, 2), Rat(2)})
        throw Error("legendre_ramification: rational critical points mismatch");
    if (quadratic != QPoly{Rat(1), Rat(-1), Rat(1)} || quadratic_mult != 2)
        throw Error("legendre_ramification: quadratic factor mismatch");

    std::vector<RamificationDatum> out;

    // finite critical values at the rational points, with exact indices
    QPoly diff_1728 = num - Rat(1728) * den;
    for (const Rat& lam : rational_points) {
        P1Rat value = legendre_j(lam);
        if (value != P1Rat(Rat(1728)))
            throw Error("legendre_ramification: critical value is not 1728");
        QPoly root_factor{-lam, Rat(1)};
        int ord = order_of_vanishing(diff_1728, root_factor);
        if (ord != 2) throw Error("legendre_ramification: index over 1728 is not 2");
        RamificationDatum d;
        d.critical_lambda.kind = CriticalLambda::Kind::Rational;
        d.critical_lambda.value = lam;
        d.critical_value = value;
        d.index = ord;
        out.push_back(std::move(d));
    }

    // the quadratic critical points: j vanishes to order 3
    {
        NumberField field(quadratic);
        NFElem u = NFElem::generator(&field);
        auto conv = [](const Rat& c) { return NFElem(c); };
        NFElem num_at = num.eval<NFElem>(u, conv);
        NFElem den_at = den.eval<NFElem>(u, conv);
        if (!num_at.is_zero() || den_at.is_zero())
            throw Error("legendre_ramification: critical value over the quadratic is not 0");
        int ord = order_of_vanishing(num, quadratic);
        if (ord != 3) throw Error("legendre_ramification: index over 0 is not 3");
        auto roots = complex_roots(quadratic);
        for (int idx = 0; idx < int(roots.size()); ++idx) {
            RamificationDatum d;
            d.critical_lambda.kind = CriticalLambda::Kind::Algebraic;
            d.critical_lambda.min_poly = quadratic;
            d.critical_lambda.root_index = idx;
            d.critical_value = P1Rat(Rat(0));
            d.index = ord;
            out.push_back(std::move(d));
        }
    }
    return out;
}

FiberStructure fiber_structure(const P1Rat& a) {
    // the multiplicity table is proved by legendre_ramification; cross-check
    // it once per process
    static std::once_flag verified;
    std::call_once(verified, [] {
        auto data = legendre_ramification();
        int over_1728 = 0, over_0 = 0;
        for (const auto& d : data) {
            if (d.critical_value == P1Rat(Rat(1728)) && d.index == 2) ++over_1728;
            if (d.critical_value == P1Rat(Rat(0)) && d.index == 3) ++over_0;
        }
        if (over_1728 != 3 || over_0 != 2 || data.size() != 5)
            throw Error("fiber_structure: ramification table verification failed");
    });

    FiberStructure f;
    f.a = a;
    if (a == P1Rat(Rat(1728))) {
        f.multiplicity = 2;
    } else if (a == P1Rat(Rat(0))) {
        f.multiplicity = 3;
    } else {
        f.multiplicity = 1;
    }
    f.fiber_class_coeff = 12;
    f.reduced_class_coeff = 12 / f.multiplicity;
    return f;
}

namespace {

/// "Difference" of projective points as the determinant of their
/// homogeneous coordinates.
Rat proj_det(const P1Rat& p, const P1Rat& q) {
    Rat px = p.is_infinity() ? Rat(1) : p.value();
    Rat py = p.is_infinity() ? Rat(0) : Rat(1);
    Rat qx = q.is_infinity() ? Rat(1) : q.value();
    Rat qy = q.is_infinity() ? Rat(0) : Rat(1);
    return px * qy - qx * py;
}

}  // namespace

Rat cross_ratio_lambda(const std::array<P1Rat, 4>& r) {
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (r[size_t(i)] == r[size_t(j)])
                throw CoincidentRoots("cross_ratio_lambda: repeated point");
    Rat num = proj_det(r[3], r[0]) * proj_det(r[1], r[2]);
    Rat den = proj_det(r[3], r[2]) * proj_det(r[1], r[0]);
    return num / den;
}

GaussRat cross_ratio_lambda(const std::array<GaussRat, 4>& r) {
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (r[size_t(i)] == r[size_t(j)])
                throw CoincidentRoots("cross_ratio_lambda: repeated point");
    GaussRat num = (r[3] - r[0]) * (r[1] - r[2]);
    GaussRat den = (r[3] - r[2]) * (r[1] - r[0]);
    return num / den;
}

}  // namespace qp::moduli
