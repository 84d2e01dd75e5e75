#include "qp/roots.hpp"

#include <algorithm>

#include "qp/bigfloat.hpp"
#include "qp/factor.hpp"

namespace qp {

namespace {

template <unsigned Bits>
struct AberthResult {
    std::vector<GaussRat> points;  // dyadic snapshots of the approximations
    bool converged = false;
};

/// Aberth-Ehrlich simultaneous iteration on a squarefree polynomial with no
/// rational roots. Deterministic: fixed initial configuration, Gauss-Seidel
/// sweeps, fixed iteration cap.
template <unsigned Bits>
AberthResult<Bits> aberth(const QPoly& p) {
    using F = BigFloat<Bits>;
    using C = CplxBF<Bits>;
    const int n = p.degree();
    std::vector<C> coeff(size_t(n) + 1);
    for (int i = 0; i <= n; ++i)
        coeff[size_t(i)] = C(rat_to_bigfloat<Bits>(p.coeff(i)), F(0));
    const C lead = coeff[size_t(n)];
    for (int i = 0; i <= n; ++i) coeff[size_t(i)] = coeff[size_t(i)] / lead;

    auto eval = [&](const C& z, C& val, C& dval) {
        val = C(0);
        dval = C(0);
        for (int i = n; i >= 0; --i) {
            dval = dval * z + val;
            val = val * z + coeff[size_t(i)];
        }
    };

    // initial points on a circle of the Cauchy radius, angles offset to dodge
    // the real axis
    F radius(0);
    for (int i = 0; i < n; ++i) {
        F a = abs(coeff[size_t(i)].re) + abs(coeff[size_t(i)].im);
        if (a > radius) radius = a;
    }
    radius += 1;
    const F pi = 4 * atan(F(1));
    std::vector<C> z(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        F theta = 2 * pi * F(i) / F(n) + F(1) / F(2 * n + 3);
        z[size_t(i)] = C(radius * cos(theta), radius * sin(theta));
    }

    const F tol = ldexp(F(1), -int(Bits) + 6);
    const int max_iter = 60 + 12 * n;
    bool converged = false;
    for (int iter = 0; iter < max_iter && !converged; ++iter) {
        F worst(0);
        for (int i = 0; i < n; ++i) {
            C val, dval;
            eval(z[size_t(i)], val, dval);
            if (val.norm() == 0) continue;
            C newton = (dval.norm() == 0) ? C(F(1) / F(1000), F(1) / F(997)) : val / dval;
            C s(0);
            for (int j = 0; j < n; ++j) {
                if (j == i) continue;
                s += C(1) / (z[size_t(i)] - z[size_t(j)]);
            }
            C denom = C(1) - newton * s;
            C corr = (denom.norm() == 0) ? newton : newton / denom;
            z[size_t(i)] = z[size_t(i)] - corr;
            F rel = corr.abs() / (1 + z[size_t(i)].abs());
            if (rel > worst) worst = rel;
        }
        if (worst < tol) converged = true;
    }

    AberthResult<Bits> out;
    out.converged = converged;
    out.points.reserve(size_t(n));
    for (const C& w : z) out.points.push_back(cplx_to_gauss<Bits>(w));
    return out;
}

bool aberth_at(const QPoly& p, unsigned bits, std::vector<GaussRat>& pts) {
    return dispatch_precision(bits, [&](auto tag) {
        auto r = aberth<decltype(tag)::value>(p);
        pts = std::move(r.points);
        return r.converged;
    });
}

/// Exact evaluation of p at a Gaussian rational point.
GaussRat eval_gauss(const QPoly& p, const GaussRat& z) {
    GaussRat acc(Rat(0));
    for (int i = p.degree(); i >= 0; --i) acc = acc * z + GaussRat(p.coeff(i));
    return acc;
}

/// Weierstrass-disk radii for the points z_i and the squarefree factor q:
/// r_i = n |q(z_i)| / (|lc| prod_{j != i} |z_i - z_j|). The disks cover the
/// roots of q, and pairwise disjoint disks isolate one root each. Returned
/// as exact rational upper bounds; empty on coincident points.
std::vector<Rat> certified_radii(const QPoly& q, const std::vector<GaussRat>& z) {
    const int n = q.degree();
    Rat lead_norm = GaussRat(q.leading()).norm();
    std::vector<Rat> radii;
    radii.reserve(z.size());
    for (size_t i = 0; i < z.size(); ++i) {
        Rat num = eval_gauss(q, z[i]).norm();
        Rat den = lead_norm;
        for (size_t j = 0; j < z.size(); ++j) {
            if (j == i) continue;
            den *= (z[i] - z[j]).norm();
        }
        if (sgn(den) == 0) return {};
        Rat r2 = Rat(n) * Rat(n) * num / den;
        radii.push_back(sqrt_upper_bound(r2));
    }
    return radii;
}

struct FactorRoots {
    std::vector<GaussRat> points;
    std::vector<Rat> radii;
    int multiplicity;
};

}  // namespace

Rat poly_abs_upper_bound(const QPoly& p, const GaussRat& z) {
    return sqrt_upper_bound(eval_gauss(p, z).norm());
}

std::vector<CRoot> complex_roots(const QPoly& p, unsigned precision_bits) {
    if (p.is_zero()) throw ZeroPolynomial("complex_roots of zero polynomial");
    if (precision_bits < 64) throw Error("complex_roots: precision_bits must be >= 64");
    if (p.degree() == 0) return {};

    // Exact part: multiplicities and rational roots.
    struct Piece {
        QPoly nonrational;  // squarefree, no rational roots
        std::vector<Rat> rational;
        int multiplicity;
    };
    std::vector<Piece> pieces;
    for (const auto& [f, mult] : squarefree_decomposition(p)) {
        Piece piece;
        piece.multiplicity = mult;
        piece.nonrational = f;
        for (const auto& [r, m] : rational_roots(f)) {
            (void)m;
            piece.rational.push_back(r);
            piece.nonrational = exact_div(piece.nonrational, QPoly{-r, Rat(1)});
        }
        pieces.push_back(std::move(piece));
    }

    const Rat target = pow2(-long(precision_bits) / 2);
    unsigned bits = round_up_precision(precision_bits);
    while (true) {
        std::vector<FactorRoots> numeric;
        bool ok = true;
        for (const Piece& piece : pieces) {
            if (piece.nonrational.degree() <= 0) continue;
            FactorRoots fr;
            fr.multiplicity = piece.multiplicity;
            if (!aberth_at(piece.nonrational, bits, fr.points)) {
                ok = false;
                break;
            }
            fr.radii = certified_radii(piece.nonrational, fr.points);
            if (fr.radii.empty() && !fr.points.empty()) {
                ok = false;
                break;
            }
            numeric.push_back(std::move(fr));
        }

        if (ok) {
            std::vector<CRoot> roots;
            for (const Piece& piece : pieces)
                for (const Rat& r : piece.rational)
                    roots.push_back({GaussRat(r), Rat(0), piece.multiplicity});
            for (const FactorRoots& fr : numeric)
                for (size_t i = 0; i < fr.points.size(); ++i)
                    roots.push_back({fr.points[i], fr.radii[i], fr.multiplicity});

            // certification: within each factor the disks must be pairwise
            // disjoint (each then contains exactly one root); globally,
            // 2 * radius must stay below the minimum pairwise distance.
            for (const FactorRoots& fr : numeric) {
                for (size_t i = 0; i < fr.points.size() && ok; ++i)
                    for (size_t j = i + 1; j < fr.points.size() && ok; ++j) {
                        Rat d2 = (fr.points[i] - fr.points[j]).norm();
                        Rat rr = fr.radii[i] + fr.radii[j];
                        if (!(rr * rr < d2)) ok = false;
                    }
            }
            Rat min_d2(-1);
            for (size_t i = 0; i < roots.size() && ok; ++i)
                for (size_t j = i + 1; j < roots.size(); ++j) {
                    Rat d2 = (roots[i].approx - roots[j].approx).norm();
                    if (sgn(d2) == 0) {
                        ok = false;
                        break;
                    }
                    if (sgn(min_d2) < 0 || d2 < min_d2) min_d2 = d2;
                }
            if (ok && sgn(min_d2) > 0) {
                for (const CRoot& r : roots)
                    if (!(4 * r.radius * r.radius < min_d2)) {
                        ok = false;
                        break;
                    }
            }
            if (ok) {
                // precision target: radius <= 2^(-precision/2) * max(1, |z|)
                for (const CRoot& r : roots) {
                    Rat scale2 = std::max(Rat(1), r.approx.norm());
                    if (!(r.radius * r.radius <= target * target * scale2)) {
                        ok = false;
                        break;
                    }
                }
            }
            if (ok) {
                std::sort(roots.begin(), roots.end(), [](const CRoot& a, const CRoot& b) {
                    if (a.approx.re != b.approx.re) return a.approx.re < b.approx.re;
                    return a.approx.im < b.approx.im;
                });
                return roots;
            }
        }

        if (bits >= kMaxPrecisionBits)
            throw CertificationFailure("complex_roots: certification failed at 4096 bits");
        bits *= 2;
    }
}

}  // namespace qp
