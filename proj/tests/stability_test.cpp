#include <algorithm>

#include "doctest.h"
#include "helpers.hpp"
#include "qts/construct.hpp"
#include "qts/rng.hpp"
#include "qts/stability.hpp"

using namespace qts;
using qth::diag_datum;
using qth::mat;
using qth::point_ideal;
using qth::sign_oracle;
using qth::witness_problem;

TEST_CASE("rank-one data are certified stable") {
  const auto v = check_stability(point_ideal("0", "0", "0"));
  CHECK(v.status == Stability::stable);
  CHECK(v.certified);
  CHECK(!v.witness.has_value());

  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const QuotPoint qp = random_quot_point(4, 1, true, seed);
    const auto w = check_stability(qp);
    CHECK(w.status == Stability::stable);
    CHECK(w.certified);
  }
}

TEST_CASE("direct sums at rank = length sit exactly on the wall") {
  const QuotPoint qp = diag_datum({{"0", "0", "0"}, {"1", "2", "3"}}, {{"1", "0"}, {"0", "1"}});
  const auto v = check_stability(qp);
  CHECK(v.status == Stability::strictly_semistable);
  CHECK(v.certified);
  CHECK(!witness_problem(qp, v).has_value());
}

TEST_CASE("rank above length is unstable with a verifying witness") {
  Rng rng(7);
  const std::pair<int, int> shapes[] = {{2, 1}, {3, 2}, {4, 3}, {5, 2}};
  for (auto [r, n] : shapes) {
    for (int t = 0; t < 5; ++t) {
      const QuotPoint qp = random_quot_point(n, r, true, rng.word());
      const auto v = check_stability(qp);
      CHECK(v.status == Stability::unstable);
      CHECK(v.certified);
      const auto problem = witness_problem(qp, v);
      if (problem) FAIL_CHECK(*problem);
    }
  }
}

TEST_CASE("verdict status survives framing changes and conjugation") {
  Rng rng(8);
  auto invertible = [&](int n) {
    Mat h(n, n);
    do {
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) h(i, j) = Rational(rng.uniform(-2, 2));
    } while (rank(h) < n);
    return h;
  };

  const QuotPoint stable = iterate_construction(2, 4, 11).qp;
  const QuotPoint wall = diag_datum({{"0", "0", "0"}, {"1", "1", "1"}}, {{"1", "0"}, {"0", "1"}});
  const QuotPoint unstable = random_quot_point(2, 3, true, 13);

  for (const QuotPoint& qp : {stable, wall, unstable}) {
    const auto base = check_stability(qp);
    const auto moved = check_stability(conjugate(qp, invertible(qp.n)));
    const auto reframed = check_stability(apply_framing_change(qp, invertible(qp.r)));
    CHECK(base.status == moved.status);
    CHECK(base.status == reframed.status);
    CHECK(base.certified == moved.certified);
    CHECK(base.certified == reframed.certified);
  }
}

TEST_CASE("checker dominates the sign-vector oracle on reduced data") {
  Rng rng(9);
  for (int n = 2; n <= 4; ++n)
    for (int r = 2; r <= 4; ++r)
      for (int t = 0; t < 8; ++t) {
        const QuotPoint qp = random_quot_point(n, r, true, rng.word());
        const auto v = check_stability(qp);
        CHECK(v.certified);
        const auto scan = sign_oracle(qp);
        if (scan.violation) CHECK(v.status == Stability::unstable);
        if (scan.equality && !scan.violation) CHECK(v.status != Stability::stable);
        const auto problem = witness_problem(qp, v);
        if (problem) FAIL_CHECK(*problem);
      }
}

TEST_CASE("jordan-holder: factor bookkeeping and the stable base case") {
  // stable input: one factor of full rank carrying the whole support
  const auto res = iterate_construction(3, 5, 21);
  const auto f = jordan_holder(res.qp);
  CHECK(f.input_stable);
  REQUIRE(f.factors.size() == 1);
  CHECK(f.factors[0].rank == 3);
  CHECK(f.factors[0].support.size() == 5);

  // polystable input: n rank-one factors matching the support multiset
  const QuotPoint poly =
      diag_datum({{"0", "0", "0"}, {"1", "0", "0"}, {"0", "2", "0"}},
                 {{"1", "0", "0"}, {"0", "1", "0"}, {"0", "0", "1"}});
  const auto g = jordan_holder(poly);
  CHECK(!g.input_stable);
  REQUIRE(g.factors.size() == 3);
  long long len = 0, rk = 0;
  for (const auto& fac : g.factors) {
    rk += fac.rank;
    len += static_cast<long long>(fac.support.size());
    // every factor has the common slope: length/rank = n/r
    CHECK(static_cast<long long>(fac.support.size()) * poly.r ==
          static_cast<long long>(poly.n) * fac.rank);
  }
  CHECK(len == poly.n);
  CHECK(rk == poly.r);

  // deterministic: repeated runs agree exactly
  const auto g2 = jordan_holder(poly);
  CHECK(g.factors == g2.factors);

  CHECK_THROWS_AS(jordan_holder(random_quot_point(2, 3, true, 5)), precondition_error);
}

TEST_CASE("jordan-holder splits length-2 wall data into matching halves") {
  // two rank-one pieces of length two: slope 2 on both sides
  const QuotPoint qp = diag_datum(
      {{"0", "0", "0"}, {"1", "0", "0"}, {"0", "1", "0"}, {"0", "0", "1"}},
      {{"1", "1", "0", "0"}, {"0", "0", "1", "1"}});
  const auto v = check_stability(qp);
  CHECK(v.status == Stability::strictly_semistable);
  const auto f = jordan_holder(qp);
  REQUIRE(f.factors.size() == 2);
  for (const auto& fac : f.factors) {
    CHECK(fac.rank == 1);
    CHECK(fac.support.size() == 2);
  }
  // the S-equivalence class is sorted canonically
  const auto cls = s_equivalence_class(qp);
  CHECK(std::is_sorted(cls.begin(), cls.end(), factor_less));
}

TEST_CASE("isomorphism testing: reflexive, orbit-constant, certifying") {
  const QuotPoint a = random_quot_point(3, 2, true, 31);

  const auto self = is_isomorphic(a, a);
  REQUIRE(self.answer == IsoAnswer::yes);
  REQUIRE(self.maps.has_value());

  // a GL_n x GL_r translate is isomorphic, and maps verify by definition
  const Mat h = mat({{"1", "1", "0"}, {"0", "1", "0"}, {"1", "0", "1"}});
  const Mat g = mat({{"2", "1"}, {"1", "1"}});
  const QuotPoint b = apply_framing_change(conjugate(a, h), g);
  const std::pair<QuotPoint, QuotPoint> directions[] = {{a, b}, {b, a}};
  for (const auto& [x, y] : directions) {
    const auto res = is_isomorphic(x, y);
    REQUIRE(res.answer == IsoAnswer::yes);
    REQUIRE(res.maps.has_value());
    const auto& [hm, gm] = *res.maps;
    CHECK(hm * x.A == y.A * hm);
    CHECK(hm * x.B == y.B * hm);
    CHECK(hm * x.C == y.C * hm);
    CHECK(hm * x.V == y.V * gm);
  }

  // distinct support multisets are never isomorphic
  const QuotPoint c = random_quot_point(3, 2, true, 32);
  CHECK(is_isomorphic(a, c).answer == IsoAnswer::no);

  // a starved search must admit ignorance, not guess
  IsoOptions tight;
  tight.grid_radius = 0;
  CHECK(is_isomorphic(a, b, tight).answer == IsoAnswer::unknown);
}
