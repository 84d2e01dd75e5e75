#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "qp/errors.hpp"

namespace qp {

using Int = mpz_class;

/// Exact rational number. mpq_class keeps gcd(num, den) = 1, den > 0 and
/// represents zero as 0/1, which is exactly the invariant we need.
using Rat = mpq_class;

inline bool is_zero(const Rat& r) { return sgn(r) == 0; }
inline bool is_one(const Rat& r) { return r == 1; }

inline Rat rat(long num, long den = 1) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

/// Parses "p/q" or "p" (optional sign, arbitrary precision).
Rat rat_from_string(const std::string& s);

/// Canonical form: "p" when q = 1, otherwise "p/q".
std::string rat_to_string(const Rat& r);

/// floor(sqrt(n)); requires n >= 0.
Int isqrt_floor(const Int& n);

bool is_perfect_square(const Int& n);

/// Exact square root when r is a square of a rational.
std::optional<Rat> sqrt_exact(const Rat& r);

/// A rational u with u >= sqrt(x) and u - sqrt(x) <= 2^-120 * max(1, sqrt(x)).
/// Requires x >= 0.
Rat sqrt_upper_bound(const Rat& x);

/// 2^e as an exact rational; e may be negative.
Rat pow2(long e);

/// abs-value comparison helper: |a| < |b| exactly.
inline bool abs_less(const Rat& a, const Rat& b) { return abs(a) < abs(b); }

// ---------------------------------------------------------------------------

/// A point of P^1 over the rationals: a finite value or the point at infinity.
class P1Rat {
  public:
    P1Rat() : finite_(true), v_(0) {}
    explicit P1Rat(Rat v) : finite_(true), v_(std::move(v)) {}
    static P1Rat infinity() {
        P1Rat p;
        p.finite_ = false;
        return p;
    }

    bool is_infinity() const { return !finite_; }
    const Rat& value() const {
        if (!finite_) throw Error("P1Rat: value() at infinity");
        return v_;
    }

    friend bool operator==(const P1Rat& a, const P1Rat& b) {
        if (a.finite_ != b.finite_) return false;
        return !a.finite_ || a.v_ == b.v_;
    }
    friend bool operator!=(const P1Rat& a, const P1Rat& b) { return !(a == b); }

    std::string str() const { return finite_ ? rat_to_string(v_) : "inf"; }

  private:
    bool finite_;
    Rat v_;
};

std::ostream& operator<<(std::ostream& os, const P1Rat& p);

// ---------------------------------------------------------------------------

/// Gaussian rational a + b*i: exact complex arithmetic over Q(i).
struct GaussRat {
    Rat re, im;

    GaussRat() : re(0), im(0) {}
    GaussRat(int n) : re(n), im(0) {}  // NOLINT: ring-element literal
    GaussRat(Rat r) : re(std::move(r)), im(0) {}
    GaussRat(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}

    bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
    GaussRat conj() const { return {re, -im}; }
    /// |z|^2, exact.
    Rat norm() const { return re * re + im * im; }

    GaussRat operator-() const { return {-re, -im}; }
    friend GaussRat operator+(const GaussRat& a, const GaussRat& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend GaussRat operator-(const GaussRat& a, const GaussRat& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend GaussRat operator*(const GaussRat& a, const GaussRat& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend GaussRat operator/(const GaussRat& a, const GaussRat& b) {
        Rat n = b.norm();
        if (sgn(n) == 0) throw Error("GaussRat: division by zero");
        GaussRat w = a * b.conj();
        return {w.re / n, w.im / n};
    }
    GaussRat& operator+=(const GaussRat& o) { return *this = *this + o; }
    GaussRat& operator-=(const GaussRat& o) { return *this = *this - o; }
    GaussRat& operator*=(const GaussRat& o) { return *this = *this * o; }
    GaussRat& operator/=(const GaussRat& o) { return *this = *this / o; }

    friend bool operator==(const GaussRat& a, const GaussRat& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const GaussRat& a, const GaussRat& b) { return !(a == b); }
};

std::ostream& operator<<(std::ostream& os, const GaussRat& z);

}  // namespace qp
