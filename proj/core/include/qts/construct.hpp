#pragma once

#include <cstdint>

#include "qts/quot.hpp"
#include "qts/stability.hpp"

namespace qts {

// Rank-two datum on pairwise distinct points: diagonal actions, framing
// row alpha_j over the j-th point. With no two alphas proportional the
// result is stable for n >= 3 and strictly semistable at n = 2.
struct Rank2Spec {
  std::vector<std::array<Rational, 3>> points;
  std::vector<std::array<Rational, 2>> alphas;
};

// input_error on repeated points, a zero alpha row, or size mismatch.
QuotPoint build_rank2(const Rank2Spec& spec);

// Random spec with distinct points and pairwise non-proportional alphas.
Rank2Spec random_rank2_spec(int n, std::uint64_t seed);

// One extension step: glue a fresh point line onto a base datum, growing
// both the rank and the length by one. The new generator maps to (u, 1):
// its closure sweeps the old quotient too, so no short rank-one subsheaf
// appears. u = 0 gives the direct sum with the point ideal, which is
// never stable for r < n: the new generator then spans a length-one
// submodule of slope 1 >= n/r.
struct ExtensionSpec {
  QuotPoint base;
  std::array<Rational, 3> new_point;
  std::vector<Rational> u;  // base.n coefficients, the new column's base part
};

// precondition_error when the base is invalid or new_point lies in its
// support; dim_error on a wrong-length u.
QuotPoint extend_by_point(const ExtensionSpec& spec);

struct RetryResult {
  QuotPoint qp;
  int tries = 0;
};

// Draws u from growing integer boxes (size doubling every eight tries)
// until the extension is certified stable. Throws retry_exhausted with
// the verdict trail when max_tries random draws all fail; on the data
// this is used for, stable choices are generic and exhaustion indicates
// a bug rather than bad luck.
RetryResult retry_stable_extension(const QuotPoint& base, const std::array<Rational, 3>& new_point,
                                   std::uint64_t seed, int max_tries = 64,
                                   const StabilityOptions& opts = {});

struct IterateResult {
  QuotPoint qp;
  std::vector<int> tries;  // retry counts per extension step
};

// Builder behind the dimension experiments. r > n: precondition_error,
// nothing semistable exists there. r = n: the polystable direct sum of n
// point ideals (no stable datum exists). r < n: an ideal-sheaf datum of
// length n-r+1 extended r-1 times by fresh points, certified stable at
// every step.
IterateResult iterate_construction(int r, int n, std::uint64_t seed,
                                   const StabilityOptions& opts = {});

struct PointHomCount {
  std::array<Rational, 3> point;
  long long dim = 0;
};

// dim hom(E, I_q) = dim Hom(Q, k_q): computed at every support point.
std::vector<PointHomCount> count_point_quotient_homs(const QuotPoint& qp);
// Same at one arbitrary probe point.
long long point_quotient_hom_dim(const QuotPoint& qp, const std::array<Rational, 3>& q);

// Deterministic sampler. reduced = true: n distinct joint eigenlines with
// a dense enough framing. reduced = false: a random partition into
// curvilinear blocks along random axes (thick whenever n >= 2), framing
// redrawn until the datum validates.
QuotPoint random_quot_point(int n, int r, bool reduced, std::uint64_t seed);

// Fresh random framing over the same module actions, redrawn until the
// datum validates. Keeps n and r.
QuotPoint reframe_random(const QuotPoint& base, std::uint64_t seed);

// Direct sum of the point ideals of the given points: the polystable
// representative of the class with these rank-one factors. Points may
// repeat; that is the representative of a diagonal class.
QuotPoint polystable_rep(const std::vector<std::array<Rational, 3>>& pts);

}  // namespace qts
