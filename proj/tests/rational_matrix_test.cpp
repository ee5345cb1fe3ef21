#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "qts/hilbert.hpp"
#include "qts/matrix.hpp"
#include "qts/rng.hpp"

using namespace qts;
using qth::mat;

namespace {

Mat random_mat(Rng& rng, int rows, int cols, int box = 3, int dmax = 2) {
  Mat m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = rng.small_rational(box, dmax);
  return m;
}

}  // namespace

TEST_CASE("rational literals canonicalize; malformed ones are rejected") {
  CHECK(to_string(parse_rational("6/8")) == "3/4");
  CHECK(to_string(parse_rational("-6/8")) == "-3/4");
  CHECK(to_string(parse_rational("6/-8")) == "-3/4");
  CHECK(to_string(parse_rational("-6/-8")) == "3/4");
  CHECK(to_string(parse_rational("0/5")) == "0");
  CHECK(to_string(parse_rational("17")) == "17");
  CHECK(parse_rational("2/4") == make_rational(1, 2));

  CHECK_THROWS_AS(parse_rational("1/0"), input_error);
  CHECK_THROWS_AS(parse_rational(""), input_error);
  CHECK_THROWS_AS(parse_rational("/2"), input_error);
  CHECK_THROWS_AS(parse_rational("3/"), input_error);
  CHECK_THROWS_AS(parse_rational("a"), input_error);
  CHECK_THROWS_AS(parse_rational("1/2/3"), input_error);
  CHECK_THROWS_AS(parse_rational("1.5"), input_error);
  CHECK_THROWS_AS(parse_rational("1 /2"), input_error);
}

TEST_CASE("rational arithmetic is exact") {
  Rng rng(101);
  for (int t = 0; t < 200; ++t) {
    const Rational a = rng.small_rational(50, 40);
    const Rational b = rng.small_rational(50, 40);
    CHECK((a + b) - b == a);
    if (b != 0) CHECK((a / b) * b == a);
    CHECK(parse_rational(to_string(a)) == a);
  }
}

TEST_CASE("rref reaches the canonical form and is idempotent") {
  const auto r = rref(mat({{"1", "2"}, {"2", "4"}}));
  CHECK(r.pivots == std::vector<int>{0});
  CHECK(r.m == mat({{"1", "2"}, {"0", "0"}}));

  Rng rng(102);
  for (int t = 0; t < 50; ++t) {
    const Mat m = random_mat(rng, 1 + t % 4, 1 + (t / 4) % 5);
    const auto r1 = rref(m);
    const auto r2 = rref(r1.m);
    CHECK(r1.m == r2.m);
    CHECK(r1.pivots == r2.pivots);
  }
}

TEST_CASE("rank + nullity = columns, and both rank paths agree") {
  Rng rng(103);
  for (int t = 0; t < 80; ++t) {
    Mat m = random_mat(rng, 1 + t % 5, 1 + (t / 5) % 5);
    if (t % 3 == 0 && m.rows() > 1) {
      // plant a dependent row
      for (int j = 0; j < m.cols(); ++j) m(0, j) = Rational(2) * m(m.rows() - 1, j);
    }
    const long long rk = rank(m);
    CHECK(rk == static_cast<long long>(rref(m).pivots.size()));
    CHECK(rk + nullity(m) == m.cols());
    for (const Mat& x : nullspace(m)) {
      CHECK(x.rows() == m.cols());
      CHECK((m * x).is_zero());
    }
    CHECK(nullspace_mat(m).cols() == nullity(m));
  }
}

TEST_CASE("solve returns exact solutions precisely when consistent") {
  Rng rng(104);
  for (int t = 0; t < 60; ++t) {
    const Mat a = random_mat(rng, 3, 3);
    const Mat x0 = random_mat(rng, 3, 2);
    const auto x = solve(a, a * x0);
    REQUIRE(x.has_value());
    CHECK(a * *x == a * x0);
  }
  const Mat a = mat({{"1", "0"}, {"0", "0"}});
  CHECK(!solve(a, mat({{"0"}, {"1"}})).has_value());
}

TEST_CASE("inverse round trips; singular input is refused") {
  Rng rng(105);
  int done = 0;
  while (done < 20) {
    const Mat a = random_mat(rng, 3, 3);
    if (rank(a) < 3) continue;
    CHECK(a * inverse(a) == Mat::identity(3));
    CHECK(inverse(a) * a == Mat::identity(3));
    ++done;
  }
  CHECK_THROWS_AS(inverse(mat({{"1", "2"}, {"2", "4"}})), precondition_error);
}

TEST_CASE("span algebra: modular law of dimensions and containment") {
  Rng rng(106);
  for (int t = 0; t < 40; ++t) {
    const Mat u = row_basis(random_mat(rng, 1 + t % 3, 5, 2, 1));
    const Mat w = row_basis(random_mat(rng, 1 + (t / 3) % 3, 5, 2, 1));
    const Mat s = row_span_sum(u, w);
    const Mat i = row_span_intersect(u, w);
    CHECK(s.rows() + i.rows() == u.rows() + w.rows());
    for (int k = 0; k < u.rows(); ++k) CHECK(row_span_contains(s, select_rows(u, {k})));
    for (int k = 0; k < i.rows(); ++k) {
      CHECK(row_span_contains(u, select_rows(i, {k})));
      CHECK(row_span_contains(w, select_rows(i, {k})));
    }
  }
}

TEST_CASE("vec flattening matches the Kronecker identity") {
  Rng rng(107);
  for (int t = 0; t < 25; ++t) {
    const Mat p = random_mat(rng, 2, 2);
    const Mat g = random_mat(rng, 2, 3);
    const Mat q = random_mat(rng, 3, 3);
    CHECK(vec_row(p * g * q) == kron(p, q.transpose()) * vec_row(g));
  }
  CHECK(kron(Mat::identity(2), Mat::identity(3)) == Mat::identity(6));
}

TEST_CASE("stacking shapes and row/column selection") {
  const Mat a = mat({{"1", "2"}, {"3", "4"}});
  const Mat b = mat({{"5", "6"}, {"7", "8"}});
  CHECK(hstack(a, b).cols() == 4);
  CHECK(vstack(a, b).rows() == 4);
  CHECK(vstack(Mat(0, 2), a) == a);
  CHECK(select_rows(a, {1}) == mat({{"3", "4"}}));
  CHECK(select_cols(a, {0}) == mat({{"1"}, {"3"}}));
}

TEST_CASE("kernel polynomial: leading coefficient r/6, positive at large t") {
  for (int r = 1; r <= 5; ++r)
    for (long long n : {1LL, 4LL, 9LL}) {
      const HilbertPoly p = kernel_poly(r, n);
      CHECK(p.c[3] == make_rational(r, 6));
      CHECK(eval(p, Rational(1000)) > 0);
    }
}

TEST_CASE("reduced comparison of kernel polynomials matches the slope sign") {
  // kernel(s,k)/s vs kernel(r,n)/r orders by n*s - k*r: fewer points per
  // rank means a larger normalized polynomial.
  for (int s = 1; s <= 3; ++s)
    for (int k = 1; k <= 4; ++k)
      for (int r = 1; r <= 3; ++r)
        for (int n = 1; n <= 4; ++n) {
          const auto got = compare_reduced(kernel_poly(s, k), s, kernel_poly(r, n), r);
          const long long lhs = static_cast<long long>(n) * s - static_cast<long long>(k) * r;
          const auto want =
              lhs > 0 ? Ordering::greater : (lhs < 0 ? Ordering::less : Ordering::equal);
          CHECK(got == want);
        }
  CHECK(compare_reduced(kernel_poly(1, 1), 1, kernel_poly(2, 2), 2) == Ordering::equal);
}
