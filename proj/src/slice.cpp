#include "qp/slice.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace qp::slice {

namespace {

using PPoly = Poly<QPoly>;  // outer variable t, inner coefficients in Q[u]

/// Deterministic bounded integers from a seeded mt19937_64 (the engine is
/// fully specified by the standard; the bounding below avoids the
/// implementation-defined std::uniform_int_distribution).
class SeededRng {
  public:
    explicit SeededRng(unsigned long long seed) : eng_(seed) {}

    long next_int(long lo, long hi) {
        unsigned long long span = static_cast<unsigned long long>(hi - lo) + 1;
        unsigned long long limit = ~0ULL - (~0ULL % span);
        unsigned long long draw;
        do {
            draw = eng_();
        } while (draw >= limit);
        return lo + long(draw % span);
    }

  private:
    std::mt19937_64 eng_;
};

int rank_of_span(const std::array<SymMat4, 3>& span) {
    QMat coeffs(3, 10);
    for (int r = 0; r < 3; ++r) {
        int c = 0;
        for (int i = 0; i < 4; ++i)
            for (int j = i; j < 4; ++j) coeffs(r, c++) = span[size_t(r)](i, j);
    }
    return coeffs.rank();
}

/// Chart basis: q plus the two span members away from the pivot coordinate.
std::pair<QMat, std::array<QMat, 2>> chart_basis(const PlaneSlice& sl) {
    int pivot = -1;
    for (int i = 0; i < 3; ++i)
        if (sgn(sl.q_coeffs[size_t(i)]) != 0) {
            pivot = i;
            break;
        }
    if (pivot < 0) throw BadSlice("PlaneSlice: q has no nonzero coordinate");
    QMat q(4, 4);
    for (int i = 0; i < 3; ++i) {
        QMat scaled = sl.q_coeffs[size_t(i)] * sl.span[size_t(i)].mat();
        q = (i == 0) ? scaled : QMat(q + scaled);
    }
    std::array<QMat, 2> dirs{QMat(4, 4), QMat(4, 4)};
    int k = 0;
    for (int i = 0; i < 3; ++i)
        if (i != pivot) dirs[size_t(k++)] = sl.span[size_t(i)].mat();
    return {q, dirs};
}

/// Coefficients c_k(u) of det(s M(q) + t M(r(u))), k = t-degree, as
/// polynomials in u; r(u) = d0 + u d1 on chart 0 and v d0 + d1 on chart 1.
std::array<QPoly, 5> family_coeffs(const QMat& q, const QMat& d0, const QMat& d1,
                                   bool chart0) {
    Mat<PPoly> m(4, 4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            QPoly dir = chart0 ? QPoly{d0(i, j), d1(i, j)} : QPoly{d1(i, j), d0(i, j)};
            m(i, j) = PPoly{QPoly(q(i, j)), dir};
        }
    PPoly det = m.det();
    std::array<QPoly, 5> c;
    for (int k = 0; k <= 4; ++k) c[size_t(k)] = det.coeff(k);
    return c;
}

struct SliceInvariants {
    QPoly I, J, Delta;
};

SliceInvariants invariants_in_parameter(const std::array<QPoly, 5>& c) {
    QPoly a0 = c[0];
    QPoly a1 = c[1].scaled_div(Rat(4));
    QPoly a2 = c[2].scaled_div(Rat(6));
    QPoly a3 = c[3].scaled_div(Rat(4));
    QPoly a4 = c[4];
    SliceInvariants out;
    out.I = a0 * a4 - Rat(4) * (a1 * a3) + Rat(3) * (a2 * a2);
    out.J = a0 * a2 * a4 + Rat(2) * (a1 * a2 * a3) - a2 * a2 * a2 - a0 * a3 * a3 -
            a1 * a1 * a4;
    out.Delta = out.I * out.I * out.I - Rat(27) * (out.J * out.J);
    if (out.I.degree() > 4 || out.J.degree() > 6 || out.Delta.degree() > 12)
        throw Error("slice: weighted degree bound violated");
    return out;
}

struct ChartData {
    SliceInvariants inv0, inv1;
    QMat q;
};

ChartData chart_data(const PlaneSlice& sl) {
    auto [q, dirs] = chart_basis(sl);
    ChartData out;
    out.q = q;
    out.inv0 = invariants_in_parameter(family_coeffs(q, dirs[0], dirs[1], true));
    out.inv1 = invariants_in_parameter(family_coeffs(q, dirs[0], dirs[1], false));
    return out;
}

bool is_squarefree(const QPoly& p) {
    if (p.degree() <= 0) return p.degree() == 0;
    return gcd(p, p.derivative()).degree() == 0;
}

int order_at_zero(const QPoly& p) {
    for (int i = 0; i <= p.degree(); ++i)
        if (sgn(p.coeff(i)) != 0) return i;
    return p.degree() + 1;
}

/// Roots with multiplicity over both charts of a weighted-degree-12 pair.
int projective_root_count(const QPoly& chart0, const QPoly& chart1) {
    if (chart0.is_zero() || chart1.is_zero())
        throw BadSlice("slice: restriction polynomial vanishes identically");
    if (chart1 != chart0.reversed(12))
        throw Error("slice: chart polynomials fail the reversal identity");
    return chart0.degree() + order_at_zero(chart1);
}

}  // namespace

PlaneSlice make_slice(std::array<SymMat4, 3> span, std::array<Rat, 3> q_coeffs,
                      long seed) {
    PlaneSlice sl{std::move(span), std::move(q_coeffs), seed};
    if (rank_of_span(sl.span) != 3)
        throw BadSlice("PlaneSlice: span matrices are linearly dependent");
    auto [q, dirs] = chart_basis(sl);
    (void)dirs;
    if (sgn(q.det()) == 0) throw BadSlice("PlaneSlice: q lies on the slice quartic");
    return sl;
}

QMat span_point(const PlaneSlice& sl, const std::array<Rat, 3>& coeffs) {
    QMat out(4, 4);
    for (int i = 0; i < 3; ++i)
        out = out + coeffs[size_t(i)] * sl.span[size_t(i)].mat();
    return out;
}

QPoly tangent_polynomial(const PlaneSlice& sl) { return chart_data(sl).inv0.Delta; }

TangentPolys tangent_polynomials(const PlaneSlice& sl) {
    ChartData data = chart_data(sl);
    TangentPolys out;
    out.chart0 = data.inv0.Delta;
    out.chart1 = data.inv1.Delta;
    out.consistent = !out.chart0.is_zero() && out.chart1 == out.chart0.reversed(12);
    return out;
}

TangentCount count_tangents(const PlaneSlice& sl) {
    TangentPolys tp = tangent_polynomials(sl);
    TangentCount out;
    if (tp.chart0.is_zero() || tp.chart1.is_zero()) {
        out.count_with_multiplicity = 0;
        out.all_simple = false;
        return out;
    }
    out.count_with_multiplicity = tp.chart0.degree() + order_at_zero(tp.chart1);
    out.all_simple = tp.consistent && is_squarefree(tp.chart0) && is_squarefree(tp.chart1);
    return out;
}

int j_fiber_count(const PlaneSlice& sl, const Rat& a) {
    ChartData data = chart_data(sl);
    auto numerator = [&a](const SliceInvariants& inv) {
        return (Rat(1728) - a) * (inv.I * inv.I * inv.I) + (Rat(27) * a) * (inv.J * inv.J);
    };
    return projective_root_count(numerator(data.inv0), numerator(data.inv1));
}

int j_fiber_count(const PlaneSlice& sl, const P1Rat& a) {
    if (a.is_infinity())
        throw PoleValue("j_fiber_count: a = infinity (use count_tangents)");
    return j_fiber_count(sl, a.value());
}

PlaneSlice random_slice(long seed, int height) {
    int retries = 0;
    return random_slice(seed, height, retries);
}

PlaneSlice random_slice(long seed, int height, int& retries_out) {
    if (height < 2) throw Error("random_slice: height must be >= 2");
    SeededRng rng(static_cast<unsigned long long>(seed));
    const int max_attempts = 32;
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        std::array<SymMat4, 3> span;
        for (int k = 0; k < 3; ++k) {
            QMat m(4, 4);
            for (int i = 0; i < 4; ++i)
                for (int j = i; j < 4; ++j) {
                    m(i, j) = rng.next_int(-height, height);
                    m(j, i) = m(i, j);
                }
            span[size_t(k)] = SymMat4(m);
        }
        std::array<Rat, 3> q_coeffs{Rat(rng.next_int(-height, height)),
                                    Rat(rng.next_int(-height, height)),
                                    Rat(rng.next_int(-height, height))};
        if (rank_of_span(span) != 3) continue;
        bool zero_q = sgn(q_coeffs[0]) == 0 && sgn(q_coeffs[1]) == 0 && sgn(q_coeffs[2]) == 0;
        if (zero_q) continue;
        PlaneSlice sl{span, q_coeffs, seed};
        {
            auto [qmat, dirs] = chart_basis(sl);
            (void)dirs;
            if (sgn(qmat.det()) == 0) continue;
        }
        TangentPolys tp = tangent_polynomials(sl);
        if (tp.chart0.degree() != 12) continue;
        if (!tp.consistent) continue;
        if (!is_squarefree(tp.chart0) || !is_squarefree(tp.chart1)) continue;
        retries_out = attempt;
        return sl;
    }
    std::ostringstream os;
    os << "random_slice: genericity not reached after " << max_attempts
       << " attempts (seed " << seed << ", height " << height << ")";
    throw GenericityExhausted(os.str());
}

CampaignReport slice_campaign(int n_trials, long seed, int height,
                              const std::vector<Rat>& test_values) {
    if (n_trials < 1) throw Error("slice_campaign: n_trials must be >= 1");
    CampaignReport report;
    report.ok = true;
    for (int trial = 0; trial < n_trials; ++trial) {
        TrialRecord rec;
        rec.seed = seed + trial;
        PlaneSlice sl = random_slice(rec.seed, height, rec.retries);

        TangentPolys tp = tangent_polynomials(sl);
        TangentCount tc = count_tangents(sl);
        rec.tangent_degree = tp.chart0.degree();
        rec.tangent_count = tc.count_with_multiplicity;
        rec.all_simple = tc.all_simple;
        rec.tangent_squarefree = is_squarefree(tp.chart0) && is_squarefree(tp.chart1);
        if (rec.tangent_count != 12 || !rec.all_simple) {
            std::ostringstream os;
            os << "seed " << rec.seed << ": tangent count " << rec.tangent_count
               << (rec.all_simple ? "" : " (non-simple tangency)");
            rec.failures.push_back(os.str());
        }
        for (const Rat& a : test_values) {
            int count = j_fiber_count(sl, a);
            rec.fiber_counts.emplace_back(a, count);
            if (count != 12) {
                std::ostringstream os;
                os << "seed " << rec.seed << ": j-fiber count " << count << " at a = "
                   << rat_to_string(a);
                rec.failures.push_back(os.str());
            }
        }
        if (!rec.ok()) report.ok = false;
        report.trials.push_back(std::move(rec));
    }

    SliceReport& agg = report.aggregate;
    agg.tangent_poly_degree = report.trials.front().tangent_degree;
    agg.tangent_squarefree = true;
    agg.tangent_count_with_multiplicity = report.trials.front().tangent_count;
    for (const Rat& a : test_values) agg.j_fiber_counts.emplace_back(a, 12);
    for (const TrialRecord& rec : report.trials) {
        agg.retries += rec.retries;
        agg.tangent_squarefree = agg.tangent_squarefree && rec.tangent_squarefree;
        for (const std::string& f : rec.failures) agg.genericity_failures.push_back(f);
        if (rec.tangent_degree != agg.tangent_poly_degree ||
            rec.tangent_count != agg.tangent_count_with_multiplicity)
            report.ok = false;
        for (size_t i = 0; i < test_values.size(); ++i)
            if (rec.fiber_counts[i].second != agg.j_fiber_counts[i].second)
                report.ok = false;
    }
    return report;
}

}  // namespace qp::slice
