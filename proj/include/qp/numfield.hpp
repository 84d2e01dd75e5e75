#pragma once

#include <memory>
#include <utility>

#include "qp/poly.hpp"
#include "qp/rat.hpp"

namespace qp {

/// The number field Q[u]/(m) for a monic irreducible m of degree >= 1.
/// Field identity is by pointer: elements interoperate when they share a
/// NumberField instance (rational constants carry no field and adopt one).
class NumberField {
  public:
    explicit NumberField(QPoly modulus) : m_(std::move(modulus)) {
        if (m_.degree() < 1) throw Error("NumberField: modulus must be nonconstant");
        if (!(m_.leading() == Rat(1))) m_ = m_.monic();
    }
    const QPoly& modulus() const { return m_; }
    int degree() const { return m_.degree(); }

  private:
    QPoly m_;
};

/// An element of a number field, represented by its reduced polynomial in the
/// generator. A null field pointer marks a rational constant, so the type
/// models field_element with int literals.
class NFElem {
  public:
    NFElem() : f_(nullptr), rep_() {}
    NFElem(int n) : f_(nullptr), rep_(Rat(n)) {}  // NOLINT: ring-element literal
    explicit NFElem(Rat r) : f_(nullptr), rep_(std::move(r)) {}
    NFElem(const NumberField* f, QPoly rep) : f_(f), rep_(std::move(rep)) { reduce(); }

    static NFElem generator(const NumberField* f) { return NFElem(f, QPoly::x()); }

    const QPoly& rep() const { return rep_; }
    const NumberField* field() const { return f_; }
    bool is_zero() const { return rep_.is_zero(); }
    bool is_rational() const { return rep_.degree() <= 0; }
    Rat rational_value() const {
        if (!is_rational()) throw Error("NFElem: not rational");
        return rep_.is_zero() ? Rat(0) : rep_.coeff(0);
    }

    friend NFElem operator+(const NFElem& a, const NFElem& b) {
        return NFElem(join(a, b), a.rep_ + b.rep_);
    }
    friend NFElem operator-(const NFElem& a, const NFElem& b) {
        return NFElem(join(a, b), a.rep_ - b.rep_);
    }
    friend NFElem operator*(const NFElem& a, const NFElem& b) {
        return NFElem(join(a, b), a.rep_ * b.rep_);
    }
    NFElem operator-() const { return NFElem(f_, -rep_); }
    friend NFElem operator/(const NFElem& a, const NFElem& b) { return a * b.inverse(); }

    NFElem inverse() const {
        if (rep_.is_zero()) throw Error("NFElem: division by zero");
        if (f_ == nullptr) return NFElem(Rat(1) / rep_.coeff(0));
        auto [g, u, v] = extended_gcd(rep_, f_->modulus());
        if (g.degree() != 0)
            throw Error("NFElem: modulus not irreducible (zero divisor hit)");
        (void)v;
        return NFElem(f_, u.scaled_div(g.coeff(0)));
    }

    NFElem& operator+=(const NFElem& o) { return *this = *this + o; }
    NFElem& operator-=(const NFElem& o) { return *this = *this - o; }
    NFElem& operator*=(const NFElem& o) { return *this = *this * o; }
    NFElem& operator/=(const NFElem& o) { return *this = *this / o; }

    friend bool operator==(const NFElem& a, const NFElem& b) {
        return (a - b).is_zero();
    }
    friend bool operator!=(const NFElem& a, const NFElem& b) { return !(a == b); }

    /// Evaluates the representative at a point (e.g. a certified root of the
    /// modulus) in any ring admitting rational coefficients.
    template <class S, class Conv>
    S eval(const S& x, Conv conv) const {
        return rep_.template eval<S>(x, conv);
    }

  private:
    static const NumberField* join(const NFElem& a, const NFElem& b) {
        if (a.f_ && b.f_ && a.f_ != b.f_) throw Error("NFElem: mixed number fields");
        return a.f_ ? a.f_ : b.f_;
    }
    void reduce() {
        if (f_ && rep_.degree() >= f_->modulus().degree()) rep_ = rep_ % f_->modulus();
    }

    const NumberField* f_;
    QPoly rep_;
};

}  // namespace qp
