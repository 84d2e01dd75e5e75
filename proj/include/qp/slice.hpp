#pragma once

#include <array>
#include <string>
#include <vector>

#include "qp/pencil.hpp"

namespace qp::slice {

/// A plane in the P^9 of quadrics together with a marked point: three
/// linearly independent symmetric matrices spanning the plane and the
/// coordinates of the point q in that span, with det(M(q)) != 0.
struct PlaneSlice {
    std::array<SymMat4, 3> span;
    std::array<Rat, 3> q_coeffs;
    long seed = 0;  // provenance (0 for hand-built slices)
};

/// Validates the PlaneSlice invariants; throws BadSlice.
PlaneSlice make_slice(std::array<SymMat4, 3> span, std::array<Rat, 3> q_coeffs,
                      long seed = 0);

/// The matrix of the point with the given span coordinates.
QMat span_point(const PlaneSlice& sl, const std::array<Rat, 3>& coeffs);

/// Restriction data of the determinant hypersurface to the lines through q:
/// the discriminant of the line's binary quartic as a polynomial in the line
/// parameter, in the two affine charts. Chart 1 is the degree-12 coefficient
/// reversal of chart 0 (checked exactly).
struct TangentPolys {
    QPoly chart0;  // parameter u, direction p0 + u p1
    QPoly chart1;  // parameter v, direction v p0 + p1
    bool consistent = true;
};

/// Discriminant-in-the-parameter of the restricted family; degree <= 12 by
/// the weighted homogeneity of the discriminant.
QPoly tangent_polynomial(const PlaneSlice& sl);
TangentPolys tangent_polynomials(const PlaneSlice& sl);

/// Tangent lines to the slice quartic through q, counted with multiplicity
/// across both charts; all_simple iff both chart polynomials are squarefree
/// and agree on the overlap.
struct TangentCount {
    int count_with_multiplicity = 0;
    bool all_simple = false;
};
TangentCount count_tangents(const PlaneSlice& sl);

/// Number of parameters u (with multiplicity, both charts) where the binary
/// quartic of the line has j-invariant a: the root count of
/// (1728 - a) I(u)^3 + 27 a J(u)^2. Throws PoleValue at a = infinity and
/// BadSlice when the polynomial vanishes identically.
int j_fiber_count(const PlaneSlice& sl, const Rat& a);
int j_fiber_count(const PlaneSlice& sl, const P1Rat& a);

/// Seeded deterministic sampling: symmetric integer matrices with entries in
/// [-height, height], resampled (at most 32 times) until the slice passes
/// the genericity checks (span rank 3, det(M(q)) != 0, tangent polynomial of
/// exact degree 12 and squarefree). Throws GenericityExhausted.
PlaneSlice random_slice(long seed, int height);
PlaneSlice random_slice(long seed, int height, int& retries_out);

struct TrialRecord {
    long seed = 0;
    int retries = 0;
    int tangent_degree = 0;
    int tangent_count = 0;
    bool all_simple = false;
    bool tangent_squarefree = false;
    std::vector<std::pair<Rat, int>> fiber_counts;
    std::vector<std::string> failures;
    bool ok() const { return failures.empty(); }
};

/// Aggregate of a campaign (the per-trial data must agree; disagreements are
/// recorded as failures).
struct SliceReport {
    int tangent_poly_degree = 0;
    bool tangent_squarefree = false;
    int tangent_count_with_multiplicity = 0;
    std::vector<std::pair<Rat, int>> j_fiber_counts;
    std::vector<std::string> genericity_failures;
    int retries = 0;
};

struct CampaignReport {
    std::vector<TrialRecord> trials;
    SliceReport aggregate;
    bool ok = false;
};

/// Runs n_trials independent seeded trials (trial i uses seed base_seed + i),
/// counts tangents and j-fiber points for every test value, and aggregates.
/// Any count other than 12 after the genericity checks is recorded as a hard
/// failure with its reproduction seed.
CampaignReport slice_campaign(int n_trials, long seed, int height,
                              const std::vector<Rat>& test_values);

}  // namespace qp::slice
