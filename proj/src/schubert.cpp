#include "qp/schubert.hpp"

#include "qp/moduli.hpp"

namespace qp::schubert {

Partition2::Partition2(int a_, int b_, int n_) : a(a_), b(b_), n(n_) {
    if (n < 3 || b < 0 || a < b || a > n - 2)
        throw Error("Partition2: need n-2 >= a >= b >= 0");
}

int ClassSum::codim() const {
    if (terms_.empty()) return -1;
    return terms_.begin()->first.first + terms_.begin()->first.second;
}

long long ClassSum::coeff(const Partition2& p) const {
    if (p.n != n_) throw AmbientMismatch("ClassSum: mixed Grassmannians");
    auto it = terms_.find({p.a, p.b});
    return it == terms_.end() ? 0 : it->second;
}

ClassSum& ClassSum::add(const Partition2& p, long long coeff) {
    if (p.n != n_) throw AmbientMismatch("ClassSum: mixed Grassmannians");
    if (coeff == 0) return *this;
    if (!terms_.empty() && p.codim() != codim())
        throw Error("ClassSum: mixed codimensions");
    auto [it, fresh] = terms_.try_emplace({p.a, p.b}, 0);
    (void)fresh;
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
    return *this;
}

ClassSum operator+(const ClassSum& x, const ClassSum& y) {
    if (x.n_ != y.n_) throw AmbientMismatch("ClassSum: mixed Grassmannians");
    ClassSum out = x;
    for (const auto& [ab, c] : y.terms_) out.add(Partition2(ab.first, ab.second, y.n_), c);
    return out;
}

ClassSum operator*(long long s, const ClassSum& x) {
    ClassSum out(x.n_);
    if (s == 0) return out;
    for (const auto& [ab, c] : x.terms_)
        out.add(Partition2(ab.first, ab.second, x.n_), s * c);
    return out;
}

ClassSum ClassSum::single(const Partition2& p, long long coeff) {
    ClassSum out(p.n);
    out.add(p, coeff);
    return out;
}

ClassSum pieri_sigma1(const Partition2& p) {
    ClassSum out(p.n);
    if (p.a + 1 <= p.n - 2) out.add(Partition2(p.a + 1, p.b, p.n), 1);
    if (p.b + 1 <= p.a) out.add(Partition2(p.a, p.b + 1, p.n), 1);
    return out;
}

ClassSum pieri_sigma1(const ClassSum& c) {
    ClassSum out(c.n());
    for (const auto& [ab, coeff] : c.terms()) {
        ClassSum step = pieri_sigma1(Partition2(ab.first, ab.second, c.n()));
        out = out + coeff * step;
    }
    return out;
}

long long degree(const ClassSum& c) {
    int top = 2 * (c.n() - 2);
    if (c.empty() || c.codim() != top)
        throw NotTopDegree("degree: class is not in the top codimension");
    return c.coeff(Partition2(c.n() - 2, c.n() - 2, c.n()));
}

DivisorClassReport divisor_class_report(int slice_count, const P1Rat& a) {
    moduli::FiberStructure fs = moduli::fiber_structure(a);
    if (slice_count % fs.multiplicity != 0)
        throw NonDivisibleMultiplicity(
            "divisor_class_report: multiplicity does not divide the slice count");
    DivisorClassReport rep;
    Partition2 sigma1(1, 0, 10);
    rep.multiplicity = fs.multiplicity;
    rep.fiber_class = ClassSum::single(sigma1, slice_count);
    rep.reduced_class = ClassSum::single(sigma1, slice_count / fs.multiplicity);
    return rep;
}

}  // namespace qp::schubert
