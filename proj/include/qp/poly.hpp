#pragma once

#include <algorithm>
#include <concepts>
#include <initializer_list>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "qp/errors.hpp"
#include "qp/rat.hpp"

namespace qp {

/// Commutative ring with 0 and 1 reachable from int literals.
template <class R>
concept ring_element = requires(R a, R b) {
    R(0);
    R(1);
    { a + b } -> std::convertible_to<R>;
    { a - b } -> std::convertible_to<R>;
    { a * b } -> std::convertible_to<R>;
    { -a } -> std::convertible_to<R>;
    { a == b } -> std::convertible_to<bool>;
};

template <class R>
concept field_element = ring_element<R> && requires(R a, R b) {
    { a / b } -> std::convertible_to<R>;
};

/// Dense univariate polynomial over a commutative ring R.
/// coeff(i) is the coefficient of x^i; the top stored coefficient of a
/// nonzero polynomial is nonzero, and the zero polynomial stores nothing.
template <ring_element R>
class Poly {
  public:
    Poly() = default;
    Poly(std::initializer_list<R> coeffs) : c_(coeffs) { normalize(); }
    explicit Poly(std::vector<R> coeffs) : c_(std::move(coeffs)) { normalize(); }
    /// Constant polynomial.
    explicit Poly(const R& constant) {
        c_.push_back(constant);
        normalize();
    }
    Poly(int constant) : Poly(R(constant)) {}  // NOLINT: ring-element literal

    static Poly monomial(const R& coeff, int degree) {
        std::vector<R> c(static_cast<size_t>(degree) + 1, R(0));
        c.back() = coeff;
        return Poly(std::move(c));
    }
    static Poly x() { return monomial(R(1), 1); }

    bool is_zero() const { return c_.empty(); }
    /// Degree; -1 for the zero polynomial.
    int degree() const { return static_cast<int>(c_.size()) - 1; }

    const R& coeff(int i) const {
        static const R zero(0);
        if (i < 0 || i >= static_cast<int>(c_.size())) return zero;
        return c_[static_cast<size_t>(i)];
    }
    const R& leading() const {
        if (is_zero()) throw Error("Poly: leading coefficient of zero");
        return c_.back();
    }
    const std::vector<R>& coeffs() const { return c_; }

    friend Poly operator+(const Poly& a, const Poly& b) {
        std::vector<R> c(std::max(a.c_.size(), b.c_.size()), R(0));
        for (size_t i = 0; i < a.c_.size(); ++i) c[i] = c[i] + a.c_[i];
        for (size_t i = 0; i < b.c_.size(); ++i) c[i] = c[i] + b.c_[i];
        return Poly(std::move(c));
    }
    friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }
    Poly operator-() const {
        std::vector<R> c;
        c.reserve(c_.size());
        for (const R& x : c_) c.push_back(-x);
        return Poly(std::move(c));
    }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return Poly();
        std::vector<R> c(a.c_.size() + b.c_.size() - 1, R(0));
        for (size_t i = 0; i < a.c_.size(); ++i)
            for (size_t j = 0; j < b.c_.size(); ++j)
                c[i + j] = c[i + j] + a.c_[i] * b.c_[j];
        return Poly(std::move(c));
    }
    friend Poly operator*(const Poly& a, const R& s) {
        std::vector<R> c;
        c.reserve(a.c_.size());
        for (const R& x : a.c_) c.push_back(x * s);
        return Poly(std::move(c));
    }
    friend Poly operator*(const R& s, const Poly& a) { return a * s; }

    Poly& operator+=(const Poly& o) { return *this = *this + o; }
    Poly& operator-=(const Poly& o) { return *this = *this - o; }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    /// Multiplies by x^k.
    Poly shifted(int k) const {
        if (is_zero()) return Poly();
        std::vector<R> c(static_cast<size_t>(k), R(0));
        c.insert(c.end(), c_.begin(), c_.end());
        return Poly(std::move(c));
    }

    Poly derivative() const {
        if (c_.size() <= 1) return Poly();
        std::vector<R> c;
        c.reserve(c_.size() - 1);
        for (size_t i = 1; i < c_.size(); ++i) c.push_back(c_[i] * R(static_cast<int>(i)));
        return Poly(std::move(c));
    }

    /// Horner evaluation at a point of any ring S admitting a coefficient map.
    template <class S, class Conv>
    S eval(const S& x, Conv conv) const {
        S acc(0);
        for (size_t i = c_.size(); i-- > 0;) acc = acc * x + conv(c_[i]);
        return acc;
    }
    R eval(const R& x) const {
        return eval<R>(x, [](const R& c) { return c; });
    }

    /// Coefficient reversal in degree-n space: x^n * p(1/x).
    Poly reversed(int n) const {
        if (n < degree()) throw Error("Poly: reversal degree below actual degree");
        std::vector<R> c(static_cast<size_t>(n) + 1, R(0));
        for (int i = 0; i <= degree(); ++i) c[static_cast<size_t>(n - i)] = coeff(i);
        return Poly(std::move(c));
    }

    // ---- field-only operations ----

    Poly scaled_div(const R& s) const
        requires field_element<R>
    {
        if (s == R(0)) throw Error("Poly: division by zero scalar");
        std::vector<R> c;
        c.reserve(c_.size());
        for (const R& x : c_) c.push_back(x / s);
        return Poly(std::move(c));
    }

    Poly monic() const
        requires field_element<R>
    {
        if (is_zero()) return *this;
        return scaled_div(leading());
    }

    friend std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b)
        requires field_element<R>
    {
        if (b.is_zero()) throw Error("Poly: division by zero polynomial");
        Poly q;
        Poly r = a;
        const R& lead = b.leading();
        while (!r.is_zero() && r.degree() >= b.degree()) {
            R coef = r.leading() / lead;
            int d = r.degree() - b.degree();
            Poly t = monomial(coef, d);
            q += t;
            r -= b * t;
        }
        return {q, r};
    }
    friend Poly operator/(const Poly& a, const Poly& b)
        requires field_element<R>
    {
        return divmod(a, b).first;
    }
    friend Poly operator%(const Poly& a, const Poly& b)
        requires field_element<R>
    {
        return divmod(a, b).second;
    }

    /// Exact quotient; throws if the division leaves a remainder.
    friend Poly exact_div(const Poly& a, const Poly& b)
        requires field_element<R>
    {
        auto [q, r] = divmod(a, b);
        if (!r.is_zero()) throw Error("Poly: exact_div has remainder");
        return q;
    }

    std::string str(const std::string& var = "x") const {
        if (is_zero()) return "0";
        std::ostringstream os;
        bool first = true;
        for (size_t i = c_.size(); i-- > 0;) {
            if (c_[i] == R(0)) continue;
            if (!first) os << " + ";
            os << "(" << c_[i] << ")";
            if (i == 1) os << "*" << var;
            if (i > 1) os << "*" << var << "^" << i;
            first = false;
        }
        return os.str();
    }

  private:
    void normalize() {
        while (!c_.empty() && c_.back() == R(0)) c_.pop_back();
    }

    std::vector<R> c_;
};

/// Monic gcd via the Euclidean algorithm.
template <field_element R>
Poly<R> gcd(const Poly<R>& a, const Poly<R>& b) {
    Poly<R> f = a, g = b;
    while (!g.is_zero()) {
        Poly<R> r = (f % g).monic();
        f = std::move(g);
        g = std::move(r);
    }
    return f.monic();
}

/// Extended gcd: returns (g, u, v) monic with u*a + v*b = g.
template <field_element R>
std::tuple<Poly<R>, Poly<R>, Poly<R>> extended_gcd(const Poly<R>& a, const Poly<R>& b) {
    Poly<R> r0 = a, r1 = b;
    Poly<R> s0(1), s1(0), t0(0), t1(1);
    while (!r1.is_zero()) {
        auto [q, r] = divmod(r0, r1);
        r0 = std::move(r1);
        r1 = std::move(r);
        Poly<R> s = s0 - q * s1;
        s0 = std::move(s1);
        s1 = std::move(s);
        Poly<R> t = t0 - q * t1;
        t0 = std::move(t1);
        t1 = std::move(t);
    }
    if (r0.is_zero()) return {r0, s0, t0};
    const R lead = r0.leading();
    return {r0.scaled_div(lead), s0.scaled_div(lead), t0.scaled_div(lead)};
}

/// Yun's squarefree decomposition: p = c * prod f_i^i with the f_i monic,
/// squarefree and pairwise coprime. Returns the (f_i, i) with f_i nonconstant.
template <field_element R>
std::vector<std::pair<Poly<R>, int>> squarefree_decomposition(const Poly<R>& p) {
    if (p.is_zero()) throw ZeroPolynomial("squarefree_decomposition of zero");
    std::vector<std::pair<Poly<R>, int>> out;
    Poly<R> f = p.monic();
    if (f.degree() == 0) return out;
    Poly<R> fp = f.derivative();
    Poly<R> g = gcd(f, fp);
    if (g.degree() == 0) {
        out.emplace_back(f, 1);
        return out;
    }
    Poly<R> w = exact_div(f, g);
    Poly<R> y = exact_div(fp, g);
    Poly<R> z = y - w.derivative();
    int i = 1;
    while (w.degree() > 0) {
        Poly<R> fac = gcd(w, z);
        if (fac.degree() > 0) out.emplace_back(fac, i);
        w = exact_div(w, fac);
        y = exact_div(z, fac);
        z = y - w.derivative();
        ++i;
    }
    return out;
}

/// Product of the distinct irreducible factors of p, monic.
template <field_element R>
Poly<R> squarefree_part(const Poly<R>& p) {
    Poly<R> out(1);
    for (const auto& [f, m] : squarefree_decomposition(p)) out *= f;
    return out;
}

using QPoly = Poly<Rat>;

}  // namespace qp
