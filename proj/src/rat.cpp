#include "qp/rat.hpp"

#include <ostream>

namespace qp {

Rat rat_from_string(const std::string& s) {
    if (s.empty()) throw SchemaError("empty rational literal");
    try {
        Rat r(s);
        r.canonicalize();
        return r;
    } catch (const std::invalid_argument&) {
        throw SchemaError("bad rational literal: '" + s + "'");
    }
}

std::string rat_to_string(const Rat& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Int isqrt_floor(const Int& n) {
    if (sgn(n) < 0) throw Error("isqrt_floor: negative argument");
    Int s;
    mpz_sqrt(s.get_mpz_t(), n.get_mpz_t());
    return s;
}

bool is_perfect_square(const Int& n) {
    return sgn(n) >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

std::optional<Rat> sqrt_exact(const Rat& r) {
    if (sgn(r) < 0) return std::nullopt;
    const Int& num = r.get_num();
    const Int& den = r.get_den();
    if (!is_perfect_square(num) || !is_perfect_square(den)) return std::nullopt;
    Rat s(isqrt_floor(num), isqrt_floor(den));
    s.canonicalize();
    return s;
}

Rat sqrt_upper_bound(const Rat& x) {
    if (sgn(x) < 0) throw Error("sqrt_upper_bound: negative argument");
    if (sgn(x) == 0) return Rat(0);
    // (isqrt(floor(x * 4^k)) + 2) / 2^k is an upper bound for sqrt(x):
    // with m = floor(x*4^k) >= x*4^k - 1 >= 0, sqrt(m) >= 2^k sqrt(x) - 1,
    // so isqrt(m) + 2 > 2^k sqrt(x). Scale k with the size of x so the
    // overestimate stays below 2^-120 relative.
    long size = long(mpz_sizeinbase(x.get_num().get_mpz_t(), 2)) -
                long(mpz_sizeinbase(x.get_den().get_mpz_t(), 2));
    long k = 130;
    if (size < 0) k += (-size) / 2 + 2;
    Int scaled_num = x.get_num() << (2 * k);
    Int m = scaled_num / x.get_den();
    Int s = isqrt_floor(m) + 2;
    Rat r(s, Int(1) << k);
    r.canonicalize();
    return r;
}

Rat pow2(long e) {
    Rat r;
    if (e >= 0) {
        r = Rat(Int(1) << e);
    } else {
        r = Rat(1, Int(1) << (-e));
    }
    r.canonicalize();
    return r;
}

std::ostream& operator<<(std::ostream& os, const P1Rat& p) { return os << p.str(); }

std::ostream& operator<<(std::ostream& os, const GaussRat& z) {
    os << rat_to_string(z.re);
    if (sgn(z.im) != 0) os << (sgn(z.im) > 0 ? "+" : "") << rat_to_string(z.im) << "i";
    return os;
}

}  // namespace qp
