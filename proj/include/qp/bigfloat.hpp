#pragma once

// Internal numeric kernel: fixed-precision binary floats and complex
// arithmetic on top of them, with exact conversions to and from rationals.
// Exact decisions never happen here; these types only locate values that a
// rational computation then certifies.

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <algorithm>
#include <utility>

#include "qp/rat.hpp"

namespace qp {

namespace mp = boost::multiprecision;

template <unsigned Bits>
using BigFloat = mp::number<mp::cpp_bin_float<Bits, mp::digit_base_2>>;

template <unsigned Bits>
struct CplxBF {
    BigFloat<Bits> re, im;

    CplxBF() : re(0), im(0) {}
    CplxBF(int n) : re(n), im(0) {}  // NOLINT: ring-element literal
    CplxBF(BigFloat<Bits> r, BigFloat<Bits> i) : re(std::move(r)), im(std::move(i)) {}

    friend CplxBF operator+(const CplxBF& a, const CplxBF& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend CplxBF operator-(const CplxBF& a, const CplxBF& b) {
        return {a.re - b.re, a.im - b.im};
    }
    CplxBF operator-() const { return {-re, -im}; }
    friend CplxBF operator*(const CplxBF& a, const CplxBF& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend CplxBF operator/(const CplxBF& a, const CplxBF& b) {
        BigFloat<Bits> n = b.re * b.re + b.im * b.im;
        return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
    }
    CplxBF& operator+=(const CplxBF& o) { return *this = *this + o; }
    CplxBF& operator-=(const CplxBF& o) { return *this = *this - o; }
    CplxBF& operator*=(const CplxBF& o) { return *this = *this * o; }
    CplxBF& operator/=(const CplxBF& o) { return *this = *this / o; }
    friend bool operator==(const CplxBF& a, const CplxBF& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const CplxBF& a, const CplxBF& b) { return !(a == b); }

    BigFloat<Bits> norm() const { return re * re + im * im; }
    BigFloat<Bits> abs() const {
        using std::sqrt;
        return sqrt(norm());
    }
};

/// Principal square root.
template <unsigned Bits>
CplxBF<Bits> sqrt(const CplxBF<Bits>& z) {
    using F = BigFloat<Bits>;
    using std::sqrt;
    F r = z.abs();
    if (r == 0) return CplxBF<Bits>();
    F re = sqrt((r + z.re) / 2);
    F im = sqrt((r - z.re) / 2);
    if (z.im < 0) im = -im;
    return {re, im};
}

template <unsigned Bits>
BigFloat<Bits> rat_to_bigfloat(const Rat& r) {
    BigFloat<Bits> num(r.get_num().get_str());
    BigFloat<Bits> den(r.get_den().get_str());
    return num / den;
}

/// Nearest dyadic rational with about Bits significant bits; exact for 0.
template <unsigned Bits>
Rat bigfloat_to_rat(const BigFloat<Bits>& x) {
    if (x == 0) return Rat(0);
    int e = 0;
    BigFloat<Bits> m = frexp(x, &e);  // |m| in [0.5, 1)
    Int mant(0);
    int remaining = int(Bits);
    while (remaining > 0 && m != 0) {
        int take = std::min(remaining, 62);
        m = ldexp(m, take);
        auto chunk = static_cast<long long>(m);  // truncates toward zero
        m -= BigFloat<Bits>(chunk);
        mant = (mant << take) + Int(static_cast<long>(chunk));
        remaining -= take;
    }
    mant <<= remaining;
    long shift = long(e) - long(Bits);
    Rat out(mant);
    if (shift >= 0) {
        out *= Rat(Int(1) << shift);
    } else {
        out /= Rat(Int(1) << (-shift));
    }
    out.canonicalize();
    return out;
}

template <unsigned Bits>
CplxBF<Bits> gauss_to_cplx(const GaussRat& z) {
    return {rat_to_bigfloat<Bits>(z.re), rat_to_bigfloat<Bits>(z.im)};
}

template <unsigned Bits>
GaussRat cplx_to_gauss(const CplxBF<Bits>& z) {
    return {bigfloat_to_rat<Bits>(z.re), bigfloat_to_rat<Bits>(z.im)};
}

/// Runs fn with a compile-time precision chosen from the supported menu.
template <class Fn>
auto dispatch_precision(unsigned bits, Fn&& fn) {
    switch (bits) {
        case 64: return fn(std::integral_constant<unsigned, 64>{});
        case 128: return fn(std::integral_constant<unsigned, 128>{});
        case 256: return fn(std::integral_constant<unsigned, 256>{});
        case 512: return fn(std::integral_constant<unsigned, 512>{});
        case 1024: return fn(std::integral_constant<unsigned, 1024>{});
        case 2048: return fn(std::integral_constant<unsigned, 2048>{});
        case 4096: return fn(std::integral_constant<unsigned, 4096>{});
        default: throw Error("unsupported working precision");
    }
}

/// Smallest supported precision >= bits (capped at 4096).
inline unsigned round_up_precision(unsigned bits) {
    unsigned p = 64;
    while (p < bits && p < 4096) p *= 2;
    return p;
}

constexpr unsigned kMaxPrecisionBits = 4096;

}  // namespace qp
