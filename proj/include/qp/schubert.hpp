#pragma once

#include <map>
#include <utility>

#include "qp/rat.hpp"

namespace qp::schubert {

/// A Schubert class sigma_{a,b} on Gr(2,n): n-2 >= a >= b >= 0.
struct Partition2 {
    int a = 0;
    int b = 0;
    int n = 10;

    Partition2() = default;
    Partition2(int a_, int b_, int n_);
    int codim() const { return a + b; }
    friend bool operator==(const Partition2& x, const Partition2& y) {
        return x.a == y.a && x.b == y.b && x.n == y.n;
    }
};

/// Integer combination of Schubert classes of one codimension on one
/// Grassmannian. Mixed-n arithmetic is refused.
class ClassSum {
  public:
    explicit ClassSum(int n) : n_(n) {}

    int n() const { return n_; }
    bool empty() const { return terms_.empty(); }
    /// Common codimension of the stored terms; -1 when empty.
    int codim() const;
    const std::map<std::pair<int, int>, long long>& terms() const { return terms_; }
    long long coeff(const Partition2& p) const;

    ClassSum& add(const Partition2& p, long long coeff);
    friend ClassSum operator+(const ClassSum& x, const ClassSum& y);
    friend ClassSum operator*(long long s, const ClassSum& x);
    friend bool operator==(const ClassSum& x, const ClassSum& y) {
        return x.n_ == y.n_ && x.terms_ == y.terms_;
    }

    static ClassSum single(const Partition2& p, long long coeff = 1);

  private:
    int n_;
    std::map<std::pair<int, int>, long long> terms_;
};

/// Pieri rule for multiplication by sigma_1: the sum of the valid one-box
/// additions (a+1, b) and (a, b+1), coefficient 1 each.
ClassSum pieri_sigma1(const Partition2& p);
ClassSum pieri_sigma1(const ClassSum& c);

/// Degree of a top-codimension class: the coefficient of sigma_{n-2,n-2}.
/// Throws NotTopDegree unless codim = 2(n-2).
long long degree(const ClassSum& c);

/// The divisor classes of the paper's table on Gr(2,10): the fiber class
/// slice_count * sigma_1 and the reduced orbit-closure class
/// (slice_count / multiplicity(a)) * sigma_1.
struct DivisorClassReport {
    ClassSum fiber_class;
    ClassSum reduced_class;
    int multiplicity = 1;

    DivisorClassReport() : fiber_class(10), reduced_class(10) {}
};

DivisorClassReport divisor_class_report(int slice_count, const P1Rat& a);

}  // namespace qp::schubert
