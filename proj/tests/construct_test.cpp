#include "doctest.h"
#include "helpers.hpp"
#include "qts/construct.hpp"
#include "qts/homology.hpp"
#include "qts/rng.hpp"

using namespace qts;
using qth::diag_datum;
using qth::jordan2_datum;
using qth::mat;

TEST_CASE("rank-2 builder validates its spec") {
  Rank2Spec bad;
  bad.points = {{Rational(0), Rational(0), Rational(0)},
                {Rational(0), Rational(0), Rational(0)}};
  bad.alphas = {{Rational(1), Rational(0)}, {Rational(0), Rational(1)}};
  CHECK_THROWS_AS(build_rank2(bad), input_error);

  Rank2Spec zero_row;
  zero_row.points = {{Rational(0), Rational(0), Rational(0)},
                     {Rational(1), Rational(0), Rational(0)}};
  zero_row.alphas = {{Rational(1), Rational(0)}, {Rational(0), Rational(0)}};
  CHECK_THROWS_AS(build_rank2(zero_row), input_error);

  Rank2Spec mismatch = zero_row;
  mismatch.alphas.pop_back();
  CHECK_THROWS_AS(build_rank2(mismatch), input_error);
}

TEST_CASE("random rank-2 data: stable from length 3 on, wall at length 2") {
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const QuotPoint wall = build_rank2(random_rank2_spec(2, seed));
    const auto v2 = check_stability(wall);
    CHECK(v2.status == Stability::strictly_semistable);
    CHECK(v2.certified);
  }
  for (int n = 3; n <= 6; ++n)
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
      const QuotPoint qp = build_rank2(random_rank2_spec(n, seed));
      CHECK(validate(qp).ok);
      const auto v = check_stability(qp);
      CHECK(v.status == Stability::stable);
      CHECK(v.certified);
      CHECK(ext1_E_E(qp) == 4LL * n - 3);
    }
}

TEST_CASE("rank-2 data carry the expected length-(n-1) sub-ideals") {
  // dropping any single point leaves an invariant subspace of length n-1
  // whose framing preimage is exactly one line
  const int n = 5;
  const QuotPoint qp = build_rank2(random_rank2_spec(n, 77));
  for (int skip = 0; skip < n; ++skip) {
    Mat rows(n - 1, n);
    int k = 0;
    for (int i = 0; i < n; ++i) {
      if (i == skip) continue;
      rows(k++, i) = 1;
    }
    const Submodule sm = make_submodule(qp, rows);
    CHECK(sm.length == n - 1);
    CHECK(sm.framing_preimage_dim == 1);
  }
}

TEST_CASE("extension step: orientation, degenerate u, input checks") {
  const QuotPoint base = iterate_construction(1, 2, 3).qp;
  ExtensionSpec spec;
  spec.base = base;
  spec.new_point = {Rational(9), Rational(9), Rational(9)};

  spec.u = {Rational(0), Rational(0)};  // direct sum: the fresh line destabilizes
  const QuotPoint split = extend_by_point(spec);
  CHECK(validate(split).ok);
  CHECK(check_stability(split).status == Stability::unstable);

  spec.u = {Rational(1), Rational(2)};  // genuine extension
  const QuotPoint ext = extend_by_point(spec);
  CHECK(validate(ext).ok);
  CHECK(ext.n == base.n + 1);
  CHECK(ext.r == base.r + 1);
  CHECK(check_stability(ext).status == Stability::stable);

  spec.u = {Rational(1)};
  CHECK_THROWS_AS(extend_by_point(spec), dim_error);

  spec.u = {Rational(1), Rational(2)};
  spec.new_point = support_decomposition(base)[0].point;
  CHECK_THROWS_AS(extend_by_point(spec), precondition_error);
}

TEST_CASE("iterated construction covers the whole admissible range") {
  CHECK_THROWS_AS(iterate_construction(3, 2, 0), precondition_error);
  CHECK_THROWS_AS(iterate_construction(0, 2, 0), input_error);

  // r = n: the polystable direct sum, never stable
  const auto wall = iterate_construction(3, 3, 5);
  CHECK(validate(wall.qp).ok);
  CHECK(check_stability(wall.qp).status == Stability::strictly_semistable);
  CHECK(jordan_holder(wall.qp).factors.size() == 3);

  // r < n: certified stable all the way up
  for (auto [r, n] : std::vector<std::pair<int, int>>{{1, 4}, {2, 5}, {4, 5}}) {
    const auto res = iterate_construction(r, n, 7);
    CHECK(validate(res.qp).ok);
    CHECK(static_cast<int>(res.tries.size()) == r - 1);
    const auto v = check_stability(res.qp);
    CHECK(v.status == Stability::stable);
    CHECK(v.certified);
    CHECK(ext1_E_E(res.qp) == component_dim_formula(r, n));
  }
}

TEST_CASE("hom counts at points: one on support, zero off it") {
  const QuotPoint qp = iterate_construction(2, 4, 9).qp;
  for (const auto& pc : count_point_quotient_homs(qp)) CHECK(pc.dim == 1);
  CHECK(point_quotient_hom_dim(qp, {Rational(1000), Rational(0), Rational(0)}) == 0);

  // cyclic thick module still has a one-dimensional point hom
  const auto thick_counts = count_point_quotient_homs(jordan2_datum());
  REQUIRE(thick_counts.size() == 1);
  CHECK(thick_counts[0].dim == 1);

  // a polystable direct sum has one at every summand's point
  const QuotPoint poly = polystable_rep(
      {{Rational(0), Rational(0), Rational(0)}, {Rational(1), Rational(2), Rational(3)}});
  for (const auto& pc : count_point_quotient_homs(poly)) CHECK(pc.dim == 1);
}

TEST_CASE("samplers produce valid data of the requested kind, reproducibly") {
  for (std::uint64_t seed : {1, 2, 3, 4}) {
    const QuotPoint red = random_quot_point(4, 2, true, seed);
    CHECK(validate(red).ok);
    CHECK(is_reduced_support(red));

    const QuotPoint thick = random_quot_point(4, 2, false, seed);
    CHECK(validate(thick).ok);
    CHECK(!is_reduced_support(thick));

    CHECK(random_quot_point(4, 2, true, seed) == red);  // same seed, same datum
  }
  CHECK(random_quot_point(3, 2, true, 1) != random_quot_point(3, 2, true, 2));

  const QuotPoint base = random_quot_point(3, 2, true, 11);
  const QuotPoint reframed = reframe_random(base, 12);
  CHECK(validate(reframed).ok);
  CHECK(reframed.A == base.A);
  CHECK(reframed.B == base.B);
  CHECK(reframed.C == base.C);
  CHECK(reframed.V != base.V);
}

TEST_CASE("polystable representatives are on the wall with the right class") {
  const std::vector<std::array<Rational, 3>> pts = {
      {Rational(0), Rational(0), Rational(0)},
      {Rational(1), Rational(0), Rational(0)},
      {Rational(0), Rational(5), Rational(-2)}};
  const QuotPoint rep = polystable_rep(pts);
  CHECK(validate(rep).ok);
  const auto v = check_stability(rep);
  CHECK(v.status == Stability::strictly_semistable);
  const auto cls = s_equivalence_class(rep);
  REQUIRE(cls.size() == 3);
  for (const auto& fac : cls) CHECK(fac.rank == 1);

  // repeated points are legal: the diagonal classes of the symmetric power.
  // Their support is thick, so the wall is seen but not certified — invariant
  // subspaces of a repeated factor form an infinite lattice, outside the
  // exhaustive path's domain — and the filtration honestly refuses.
  const QuotPoint diag = polystable_rep({pts[0], pts[0]});
  CHECK(validate(diag).ok);
  const auto dv = check_stability(diag);
  CHECK(dv.status == Stability::strictly_semistable);
  CHECK(!dv.certified);
  CHECK_THROWS_AS(s_equivalence_class(diag), uncertified_error);
}

TEST_CASE("retry search reports its trail when asked for the impossible") {
  // gluing a point onto a rank-1 base of equal length cannot be stable:
  // the result has r = n, where nothing is stable
  const QuotPoint base = iterate_construction(1, 1, 0).qp;
  CHECK_THROWS_AS(
      retry_stable_extension(base, {Rational(5), Rational(5), Rational(5)}, 1, 8),
      retry_exhausted);
}
