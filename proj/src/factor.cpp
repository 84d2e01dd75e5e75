#include "qp/factor.hpp"

#include <algorithm>

namespace qp {

namespace {

/// Sturm chain of a squarefree polynomial.
std::vector<QPoly> sturm_chain(const QPoly& p) {
    std::vector<QPoly> chain;
    chain.push_back(p);
    chain.push_back(p.derivative());
    while (!chain.back().is_zero() && chain.back().degree() > 0) {
        QPoly r = -(chain[chain.size() - 2] % chain.back());
        if (r.is_zero()) break;
        chain.push_back(r.monic() * (r.leading() > 0 ? Rat(1) : Rat(-1)));
    }
    return chain;
}

int sign_at(const QPoly& p, const Rat& x) { return sgn(p.eval(x)); }

int sign_at_neg_inf(const QPoly& p) {
    if (p.is_zero()) return 0;
    int s = sgn(p.leading());
    return (p.degree() % 2 == 0) ? s : -s;
}

int variations(const std::vector<int>& signs) {
    int v = 0;
    int prev = 0;
    for (int s : signs) {
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++v;
        prev = s;
    }
    return v;
}

int variations_at(const std::vector<QPoly>& chain, const Rat& x) {
    std::vector<int> signs;
    signs.reserve(chain.size());
    for (const QPoly& q : chain) signs.push_back(sign_at(q, x));
    return variations(signs);
}

/// Cauchy bound: every real root lies in (-B, B).
Rat root_bound(const QPoly& p) {
    Rat b(0);
    const Rat lead = abs(Rat(p.leading()));
    for (int i = 0; i < p.degree(); ++i) {
        Rat q = abs(p.coeff(i)) / lead;
        if (q > b) b = q;
    }
    return b + 1;
}

void isolate_rec(const std::vector<QPoly>& chain, const QPoly& p, Rat lo, Rat hi,
                 int vlo, int vhi, std::vector<RealRootInterval>& out) {
    int count = vlo - vhi;
    if (count <= 0) return;
    if (count == 1) {
        out.push_back({std::move(lo), std::move(hi)});
        return;
    }
    Rat mid = (lo + hi) / 2;
    if (sign_at(p, mid) == 0) {
        out.push_back({mid, mid});
        // shrink a bracket around the exact root until it contains only it,
        // then recurse on the two outer pieces
        Rat eps = (hi - lo) / 4;
        Rat l2, r2;
        int vl2 = 0, vr2 = 0;
        while (true) {
            l2 = mid - eps;
            r2 = mid + eps;
            if (sign_at(p, l2) != 0 && sign_at(p, r2) != 0) {
                vl2 = variations_at(chain, l2);
                vr2 = variations_at(chain, r2);
                if (vl2 - vr2 == 1) break;
            }
            eps /= 2;
        }
        isolate_rec(chain, p, lo, l2, vlo, vl2, out);
        isolate_rec(chain, p, r2, hi, vr2, vhi, out);
        return;
    }
    int vmid = variations_at(chain, mid);
    isolate_rec(chain, p, lo, mid, vlo, vmid, out);
    isolate_rec(chain, p, mid, hi, vmid, vhi, out);
}

}  // namespace

std::vector<RealRootInterval> isolate_real_roots(const QPoly& p) {
    if (p.is_zero()) throw ZeroPolynomial("isolate_real_roots of zero");
    if (p.degree() == 0) return {};
    auto chain = sturm_chain(p);
    Rat b = root_bound(p);
    Rat lo = -b, hi = b;
    // Endpoints are outside the root range, so p(lo), p(hi) != 0 and the
    // Sturm counts at the endpoints equal the counts at -inf / +inf.
    std::vector<RealRootInterval> out;
    int vlo = variations_at(chain, lo);
    int vhi = variations_at(chain, hi);
    // cross-check with the sign-at-infinity variant
    {
        std::vector<int> s_lo, s_hi;
        for (const QPoly& q : chain) {
            s_lo.push_back(sign_at_neg_inf(q));
            s_hi.push_back(q.is_zero() ? 0 : sgn(q.leading()));
        }
        if (variations(s_lo) != vlo || variations(s_hi) != vhi)
            throw Error("isolate_real_roots: inconsistent Sturm counts at the bound");
    }
    isolate_rec(chain, p, lo, hi, vlo, vhi, out);
    std::sort(out.begin(), out.end(),
              [](const RealRootInterval& a, const RealRootInterval& b) { return a.lo < b.lo; });
    return out;
}

RealRootInterval refine_real_root(const QPoly& p, RealRootInterval iv, const Rat& width) {
    if (iv.exact()) return iv;
    int slo = sign_at(p, iv.lo);
    while (iv.hi - iv.lo > width) {
        Rat mid = (iv.lo + iv.hi) / 2;
        int smid = sign_at(p, mid);
        if (smid == 0) return {mid, mid};
        if (smid == slo) {
            iv.lo = mid;
        } else {
            iv.hi = mid;
        }
    }
    return iv;
}

namespace {

/// Continued-fraction convergents of x with denominator <= qmax.
std::vector<Rat> convergents_up_to(const Rat& x, const Int& qmax) {
    std::vector<Rat> out;
    Int p0(1), q0(0), p1, q1;  // p1/q1 = floor(x)
    Int a;
    mpz_fdiv_q(a.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
    p1 = a;
    q1 = 1;
    Rat frac = x - Rat(a);
    out.push_back(Rat(p1));
    while (sgn(frac) != 0) {
        frac = 1 / frac;
        mpz_fdiv_q(a.get_mpz_t(), frac.get_num().get_mpz_t(), frac.get_den().get_mpz_t());
        frac -= Rat(a);
        Int p2 = a * p1 + p0;
        Int q2 = a * q1 + q0;
        if (q2 > qmax) break;
        Rat c(p2, q2);
        c.canonicalize();
        out.push_back(c);
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
    }
    return out;
}

/// Leading coefficient of the primitive integer form of p (positive).
Int primitive_leading(const QPoly& p) {
    Int lcm_den(1);
    for (const Rat& c : p.coeffs())
        mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), c.get_den().get_mpz_t());
    std::vector<Int> zc;
    zc.reserve(p.coeffs().size());
    Int content(0);
    for (const Rat& c : p.coeffs()) {
        Rat scaled = c * Rat(lcm_den);
        zc.push_back(scaled.get_num());
        mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), zc.back().get_mpz_t());
    }
    Int lead = zc.back() / content;
    return abs(lead);
}

/// Rational roots of a squarefree polynomial.
std::vector<Rat> rational_roots_squarefree(const QPoly& p) {
    std::vector<Rat> roots;
    if (p.degree() < 1) return roots;
    if (sgn(p.coeff(0)) == 0) {
        roots.push_back(Rat(0));
        // squarefree: x divides exactly once
        QPoly q = exact_div(p, QPoly::x());
        auto rest = rational_roots_squarefree(q);
        roots.insert(roots.end(), rest.begin(), rest.end());
        std::sort(roots.begin(), roots.end());
        return roots;
    }
    Int qmax = primitive_leading(p);
    // A rational root a/b in lowest terms has b | qmax. Refine each isolating
    // interval to width < 1/(2 qmax^2); the root, if rational, is then a
    // convergent of the midpoint (best-approximation theorem).
    Rat width = Rat(1, 2 * qmax * qmax);
    width.canonicalize();
    for (RealRootInterval iv : isolate_real_roots(p)) {
        iv = refine_real_root(p, iv, width);
        if (iv.exact()) {
            roots.push_back(iv.lo);
            continue;
        }
        Rat mid = (iv.lo + iv.hi) / 2;
        for (const Rat& cand : convergents_up_to(mid, qmax)) {
            if (cand <= iv.lo || cand >= iv.hi) continue;
            if (sgn(p.eval(cand)) == 0) {
                roots.push_back(cand);
                break;
            }
        }
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

/// Splits a monic quartic with no rational roots into two monic irreducible
/// quadratics when possible.
std::vector<QPoly> try_split_quartic(const QPoly& f) {
    // depress: dep(y) = f(y - c3/4) has no cubic term (f monic)
    Rat sh = f.coeff(3) / 4;
    QPoly y_shift{-sh, Rat(1)};
    QPoly dep;
    for (int i = 4; i >= 0; --i) dep = dep * y_shift + QPoly(f.coeff(i));
    Rat p = dep.coeff(2), q = dep.coeff(1), r = dep.coeff(0);
    // resolvent cubic for z = s^2 where y^4+py^2+qy+r = (y^2+sy+t)(y^2-sy+w)
    QPoly resolvent{-q * q, p * p - 4 * r, 2 * p, Rat(1)};
    auto zroots = rational_roots_squarefree(squarefree_part(resolvent));
    auto undepress = [&sh](const QPoly& g) {
        // substitute y = x + sh back
        QPoly back{sh, Rat(1)};
        QPoly out;
        for (int i = g.degree(); i >= 0; --i) out = out * back + QPoly(g.coeff(i));
        return out;
    };
    for (const Rat& z0 : zroots) {
        if (sgn(z0) < 0) continue;
        if (sgn(z0) == 0) {
            if (sgn(q) != 0) continue;
            auto disc_sqrt = sqrt_exact(p * p - 4 * r);
            if (!disc_sqrt) continue;
            Rat t = (p - *disc_sqrt) / 2;
            Rat w = (p + *disc_sqrt) / 2;
            return {undepress(QPoly{t, Rat(0), Rat(1)}), undepress(QPoly{w, Rat(0), Rat(1)})};
        }
        auto s = sqrt_exact(z0);
        if (!s) continue;
        Rat t = (p + z0) / 2 - q / (2 * *s);
        Rat w = (p + z0) / 2 + q / (2 * *s);
        return {undepress(QPoly{t, *s, Rat(1)}), undepress(QPoly{w, -*s, Rat(1)})};
    }
    return {};
}

/// Irreducible factorization of a monic squarefree polynomial of degree <= 4
/// whose rational roots have already been removed.
std::vector<QPoly> factor_squarefree_no_rational(const QPoly& f) {
    int d = f.degree();
    if (d == 0) return {};
    if (d == 2 || d == 3) return {f};  // no rational root => irreducible
    if (d == 4) {
        auto split = try_split_quartic(f);
        if (split.empty()) return {f};
        if (!(split[0] * split[1] == f))
            throw Error("factor: quartic split verification failed");
        return split;
    }
    throw Error("factor: squarefree factor of degree > 4 with no rational root");
}

}  // namespace

std::vector<std::pair<Rat, int>> rational_roots(const QPoly& p) {
    if (p.is_zero()) throw ZeroPolynomial("rational_roots of zero");
    std::vector<std::pair<Rat, int>> out;
    for (const auto& [f, mult] : squarefree_decomposition(p))
        for (const Rat& r : rational_roots_squarefree(f)) out.emplace_back(r, mult);
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

std::vector<std::pair<QPoly, int>> factor_rational_poly(const QPoly& p) {
    if (p.is_zero()) throw ZeroPolynomial("factor of zero");
    std::vector<std::pair<QPoly, int>> out;
    for (const auto& [f, mult] : squarefree_decomposition(p)) {
        QPoly rest = f;
        for (const Rat& r : rational_roots_squarefree(f)) {
            out.emplace_back(QPoly{-r, Rat(1)}, mult);
            rest = exact_div(rest, QPoly{-r, Rat(1)});
        }
        for (const QPoly& g : factor_squarefree_no_rational(rest)) out.emplace_back(g, mult);
    }
    // deterministic order: by degree, then coefficients
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.first.degree() != b.first.degree()) return a.first.degree() < b.first.degree();
        for (int i = a.first.degree(); i >= 0; --i) {
            if (a.first.coeff(i) != b.first.coeff(i)) return a.first.coeff(i) < b.first.coeff(i);
        }
        return a.second < b.second;
    });
    return out;
}

}  // namespace qp
