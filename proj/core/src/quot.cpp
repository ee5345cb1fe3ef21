#include "qts/quot.hpp"

#include <boost/multiprecision/miller_rabin.hpp>

#include <algorithm>
#include <map>
#include <set>

namespace qts {

namespace {

// --- dense polynomial helpers, coefficients ascending ---------------------

using Poly = std::vector<Rational>;  // p[k] is the coefficient of t^k

void poly_trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

int poly_deg(const Poly& p) { return int(p.size()) - 1; }

Poly poly_derivative(const Poly& p) {
  Poly d;
  for (int k = 1; k < int(p.size()); ++k) d.push_back(Rational(k) * p[k]);
  poly_trim(d);
  return d;
}

// Division with remainder; divisor must be nonzero after trimming.
std::pair<Poly, Poly> poly_divmod(Poly num, Poly den) {
  poly_trim(num);
  poly_trim(den);
  const int dd = poly_deg(den);
  Poly quo(std::max(0, poly_deg(num) - dd + 1), Rational(0));
  while (poly_deg(num) >= dd) {
    const int k = poly_deg(num) - dd;
    const Rational f = num.back() / den.back();
    quo[k] = f;
    for (int i = 0; i <= dd; ++i) num[k + i] -= f * den[i];
    num.pop_back();  // the leading term cancels exactly
    poly_trim(num);
  }
  return {quo, num};
}

Poly poly_monic(Poly p) {
  poly_trim(p);
  if (p.empty()) return p;
  const Rational lead = p.back();
  for (auto& c : p) c /= lead;
  return p;
}

Poly poly_gcd(Poly a, Poly b) {
  poly_trim(a);
  poly_trim(b);
  while (!b.empty()) {
    Poly r = poly_divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return poly_monic(a);
}

// Characteristic polynomial, monic, via the trace recursion of
// Faddeev and LeVerrier. Returns coefficients of t^0 .. t^n.
Poly char_poly(const Mat& a) {
  const int n = a.rows();
  Poly p(n + 1, Rational(0));
  p[n] = 1;
  Mat m = Mat::identity(n);
  for (int k = 1; k <= n; ++k) {
    m = a * m;
    Rational tr = 0;
    for (int i = 0; i < n; ++i) tr += m(i, i);
    const Rational ck = -tr / k;
    p[n - k] = ck;
    for (int i = 0; i < n; ++i) m(i, i) += ck;
  }
  return p;
}

Rational poly_eval(const Poly& p, const Rational& x) {
  Rational v = 0;
  for (int k = poly_deg(p); k >= 0; --k) v = v * x + p[k];
  return v;
}

// Trial division up to a fixed bound, then a primality test on the
// cofactor. nullopt means the factorization could not be completed and the
// caller should give up rather than guess.
std::optional<std::vector<Int>> factor_int(Int v) {
  std::vector<Int> primes;
  if (v < 0) v = -v;
  if (v <= 1) return primes;
  for (Int p = 2; p * p <= v && p <= 1000000; p = (p == 2 ? Int(3) : p + 2)) {
    while (v % p == 0) {
      primes.push_back(p);
      v /= p;
    }
  }
  if (v > 1) {
    if (v <= 1000000000000LL || boost::multiprecision::miller_rabin_test(v, 25))
      primes.push_back(v);
    else
      return std::nullopt;
  }
  return primes;
}

std::optional<std::set<Int>> divisors_of(const Int& v) {
  const auto primes = factor_int(v);
  if (!primes) return std::nullopt;
  std::set<Int> divs{Int(1)};
  for (const Int& p : *primes) {
    std::set<Int> next = divs;
    for (const Int& d : divs) next.insert(d * p);
    divs = std::move(next);
    if (divs.size() > 4096) return std::nullopt;
  }
  return divs;
}

// All rational roots of a squarefree polynomial. The result can be
// incomplete only when nullopt is returned (factorization gave up);
// otherwise every rational root is present.
std::optional<std::vector<Rational>> rational_roots_squarefree(const Poly& sf) {
  std::vector<Rational> roots;
  Poly p = sf;
  poly_trim(p);
  if (p.empty() || poly_deg(p) == 0) return roots;

  // Clear denominators to a primitive integer polynomial.
  Int den_lcm = 1;
  for (const auto& c : p) den_lcm = lcm(den_lcm, Int(denominator(c)));
  std::vector<Int> a(p.size());
  for (int k = 0; k < int(p.size()); ++k) a[k] = numerator(Rational(den_lcm) * p[k]);

  int shift = 0;
  while (a[0] == 0) {
    roots.push_back(Rational(0));
    a.erase(a.begin());
    ++shift;
    if (a.empty()) return roots;
  }
  const int d = int(a.size()) - 1;
  if (d == 0) return roots;
  if (d == 1) {
    roots.push_back(make_rational(-a[0], a[1]));
    return roots;
  }
  if (d == 2) {
    const Int disc = a[1] * a[1] - 4 * a[2] * a[0];
    if (disc < 0) return roots;
    const Int s = sqrt(disc);
    if (s * s != disc) return roots;
    roots.push_back(make_rational(-a[1] + s, 2 * a[2]));
    roots.push_back(make_rational(-a[1] - s, 2 * a[2]));
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
  }

  const auto d0 = divisors_of(a[0]);
  const auto dl = divisors_of(a[d]);
  if (!d0 || !dl) return std::nullopt;
  std::set<Rational> found;
  for (const Int& p_num : *d0)
    for (const Int& q_den : *dl) {
      if (gcd(p_num, q_den) != 1) continue;
      const Rational cand(p_num, q_den);
      if (poly_eval(p, cand) == 0) found.insert(cand);
      if (poly_eval(p, -cand) == 0) found.insert(-cand);
    }
  roots.insert(roots.end(), found.begin(), found.end());
  std::sort(roots.begin(), roots.end());
  return roots;
}

Mat mat_pow(const Mat& a, long long e) {
  Mat r = Mat::identity(a.rows());
  Mat base = a;
  while (e > 0) {
    if (e & 1) r = r * base;
    base = base * base;
    e >>= 1;
  }
  return r;
}

// Canonical row basis of the generalized eigenspace ker (a - lambda)^n.
Mat generalized_eigenspace_rows(const Mat& a, const Rational& lambda) {
  const int n = a.rows();
  Mat shifted = a;
  for (int i = 0; i < n; ++i) shifted(i, i) -= lambda;
  const Mat power = mat_pow(shifted, n);
  return row_basis(nullspace_mat(power).transpose());
}

std::vector<int> pivots_of_canonical(const Mat& basis_rows) {
  std::vector<int> piv;
  for (int i = 0; i < basis_rows.rows(); ++i) {
    int j = 0;
    while (j < basis_rows.cols() && basis_rows(i, j) == 0) ++j;
    piv.push_back(j);
  }
  return piv;
}

}  // namespace

ValidationReport validate(const QuotPoint& qp) {
  if (qp.n < 1 || qp.r < 1)
    throw dim_error("validate: need n >= 1 and r >= 1, got n=" + std::to_string(qp.n) +
                    " r=" + std::to_string(qp.r));
  auto square = [&](const Mat& m, const char* name) {
    if (m.rows() != qp.n || m.cols() != qp.n)
      throw dim_error(std::string("validate: ") + name + " must be " + std::to_string(qp.n) + "x" +
                      std::to_string(qp.n));
  };
  square(qp.A, "A");
  square(qp.B, "B");
  square(qp.C, "C");
  if (qp.V.rows() != qp.n || qp.V.cols() != qp.r)
    throw dim_error("validate: framing must be " + std::to_string(qp.n) + "x" +
                    std::to_string(qp.r));

  ValidationReport rep;
  auto commutator = [&](const Mat& x, const Mat& y, const char* label) {
    const Mat c = x * y - y * x;
    if (!c.is_zero()) {
      rep.ok = false;
      rep.issues.push_back(
          {ValidationIssue::Kind::commutator, std::string(label) + " does not vanish", c});
    }
  };
  commutator(qp.A, qp.B, "[A,B]");
  commutator(qp.A, qp.C, "[A,C]");
  commutator(qp.B, qp.C, "[B,C]");

  const Mat closure = krylov_closure_rows(qp.A, qp.B, qp.C, qp.V.transpose());
  if (closure.rows() < qp.n) {
    rep.ok = false;
    rep.issues.push_back({ValidationIssue::Kind::cyclicity,
                          "framing generates a subspace of dimension " +
                              std::to_string(closure.rows()) + " < " + std::to_string(qp.n),
                          closure});
  }
  return rep;
}

void require_valid(const QuotPoint& qp) {
  const ValidationReport rep = validate(qp);
  if (!rep.ok) throw precondition_error("invalid datum: " + rep.issues.front().detail);
}

Mat krylov_closure_rows(const Mat& A, const Mat& B, const Mat& C, const Mat& seed_rows) {
  Mat cur = row_basis(seed_rows);
  for (;;) {
    Mat stacked = cur;
    stacked = vstack(stacked, cur * A.transpose());
    stacked = vstack(stacked, cur * B.transpose());
    stacked = vstack(stacked, cur * C.transpose());
    Mat next = row_basis(stacked);
    if (next.rows() == cur.rows()) return next;
    cur = std::move(next);
  }
}

Submodule krylov_closure(const QuotPoint& qp, const Mat& seed_cols) {
  const Mat rows = krylov_closure_rows(qp.A, qp.B, qp.C, seed_cols.transpose());
  return make_submodule(qp, rows);
}

Mat framing_preimage(const QuotPoint& qp, const Mat& basis_rows) {
  // Residual of v against the canonical basis K: v - K^T (v at pivots);
  // vanishes exactly on the span. W(M) is the kernel of the residual of V.
  const Mat K = basis_rows;
  const std::vector<int> piv = pivots_of_canonical(K);
  Mat sel(K.rows(), qp.n);
  for (int i = 0; i < K.rows(); ++i) sel(i, piv[i]) = 1;
  const Mat residual = (Mat::identity(qp.n) - K.transpose() * sel) * qp.V;
  return row_basis(nullspace_mat(residual).transpose());
}

Submodule make_submodule(const QuotPoint& qp, const Mat& spanning_rows) {
  if (spanning_rows.cols() != qp.n && spanning_rows.rows() != 0)
    throw dim_error("make_submodule: ambient dimension mismatch");
  Submodule s;
  s.basis = spanning_rows.rows() ? row_basis(spanning_rows) : Mat(0, qp.n);
  const Mat closed = s.basis.rows() ? krylov_closure_rows(qp.A, qp.B, qp.C, s.basis) : s.basis;
  if (closed.rows() != s.basis.rows())
    throw precondition_error("make_submodule: span is not invariant");
  s.length = s.basis.rows();
  s.framing_preimage_dim = framing_preimage(qp, s.basis).rows();
  return s;
}

std::optional<std::vector<std::pair<Rational, long long>>> rational_eigenvalues(const Mat& a) {
  if (a.rows() != a.cols()) throw dim_error("rational_eigenvalues: matrix not square");
  const int n = a.rows();
  std::vector<std::pair<Rational, long long>> out;
  if (n == 0) return out;
  if (n == 1) {
    out.push_back({a(0, 0), 1});
    return out;
  }
  const Poly cp = char_poly(a);
  const Poly sf = poly_divmod(cp, poly_gcd(cp, poly_derivative(cp))).first;
  const auto roots = rational_roots_squarefree(sf);
  if (!roots) return std::nullopt;
  long long total = 0;
  for (const Rational& lambda : *roots) {
    const Mat space = generalized_eigenspace_rows(a, lambda);
    if (space.rows() == 0) continue;
    out.push_back({lambda, space.rows()});
    total += space.rows();
  }
  if (total != n) return std::nullopt;  // spectrum not fully rational
  return out;
}

namespace {

struct Block {
  Mat basis;  // rows, original coordinates
  Mat ops[3];
};

void split_block(const Block& blk, int axis, std::vector<SupportPoint>& out,
                 std::array<Rational, 3>& point) {
  if (axis == 3) {
    out.push_back({point, blk.basis.rows(), row_basis(blk.basis)});
    return;
  }
  const auto eig = rational_eigenvalues(blk.ops[axis]);
  if (!eig)
    throw unsupported_error(
        "support requires a rational joint spectrum; a coordinate action has irrational or "
        "out-of-range eigenvalues");
  for (const auto& [lambda, mult] : *eig) {
    (void)mult;
    const Mat sub = generalized_eigenspace_rows(blk.ops[axis], lambda);
    const std::vector<int> piv = pivots_of_canonical(sub);
    Block next;
    next.basis = sub * blk.basis;
    for (int k = 0; k < 3; ++k) next.ops[k] = restrict_operator(blk.ops[k], sub, piv);
    point[axis] = lambda;
    split_block(next, axis + 1, out, point);
  }
}

}  // namespace

std::vector<SupportPoint> module_support(const Mat& A, const Mat& B, const Mat& C) {
  Block top{Mat::identity(A.rows()), {A, B, C}};
  std::vector<SupportPoint> out;
  std::array<Rational, 3> point{Rational(0), Rational(0), Rational(0)};
  split_block(top, 0, out, point);
  std::sort(out.begin(), out.end(),
            [](const SupportPoint& x, const SupportPoint& y) { return x.point < y.point; });
  return out;
}

std::vector<SupportPoint> support_decomposition(const QuotPoint& qp) {
  return module_support(qp.A, qp.B, qp.C);
}

bool is_reduced_support(const QuotPoint& qp) {
  const auto pts = support_decomposition(qp);
  return std::all_of(pts.begin(), pts.end(),
                     [](const SupportPoint& p) { return p.multiplicity == 1; });
}

QuotPoint apply_framing_change(const QuotPoint& qp, const Mat& g) {
  if (g.rows() != qp.r || g.cols() != qp.r) throw dim_error("apply_framing_change: g must be rxr");
  if (rank(g) != qp.r) throw precondition_error("apply_framing_change: g is singular");
  QuotPoint out = qp;
  out.V = qp.V * g;
  return out;
}

QuotPoint conjugate(const QuotPoint& qp, const Mat& h) {
  if (h.rows() != qp.n || h.cols() != qp.n) throw dim_error("conjugate: h must be nxn");
  const Mat hinv = inverse(h);  // throws precondition_error when singular
  QuotPoint out = qp;
  out.A = h * qp.A * hinv;
  out.B = h * qp.B * hinv;
  out.C = h * qp.C * hinv;
  out.V = h * qp.V;
  return out;
}

QuotPoint direct_sum(const QuotPoint& a, const QuotPoint& b) {
  if (a.r != b.r) throw dim_error("direct_sum: framing ranks disagree");
  QuotPoint s;
  s.n = a.n + b.n;
  s.r = a.r;
  auto blockdiag = [&](const Mat& x, const Mat& y) {
    Mat m(s.n, s.n);
    for (int i = 0; i < a.n; ++i)
      for (int j = 0; j < a.n; ++j) m(i, j) = x(i, j);
    for (int i = 0; i < b.n; ++i)
      for (int j = 0; j < b.n; ++j) m(a.n + i, a.n + j) = y(i, j);
    return m;
  };
  s.A = blockdiag(a.A, b.A);
  s.B = blockdiag(a.B, b.B);
  s.C = blockdiag(a.C, b.C);
  s.V = vstack(a.V, b.V);
  return s;
}

Mat restrict_operator(const Mat& op, const Mat& basis_rows, const std::vector<int>& pivots) {
  return select_cols(basis_rows * op.transpose(), pivots).transpose();
}

}  // namespace qts
