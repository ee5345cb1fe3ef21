#include "qts/construct.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "qts/rng.hpp"

namespace qts {

QuotPoint build_rank2(const Rank2Spec& spec) {
  const int n = int(spec.points.size());
  if (n < 1) throw input_error("build_rank2: need at least one point");
  if (spec.alphas.size() != spec.points.size())
    throw input_error("build_rank2: points and alphas must pair up");
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (spec.points[i] == spec.points[j]) throw input_error("build_rank2: repeated point");
  QuotPoint qp;
  qp.n = n;
  qp.r = 2;
  qp.A = Mat(n, n);
  qp.B = Mat(n, n);
  qp.C = Mat(n, n);
  qp.V = Mat(n, 2);
  for (int i = 0; i < n; ++i) {
    qp.A(i, i) = spec.points[i][0];
    qp.B(i, i) = spec.points[i][1];
    qp.C(i, i) = spec.points[i][2];
    if (spec.alphas[i][0] == 0 && spec.alphas[i][1] == 0)
      throw input_error("build_rank2: zero framing row " + std::to_string(i));
    qp.V(i, 0) = spec.alphas[i][0];
    qp.V(i, 1) = spec.alphas[i][1];
  }
  return qp;
}

namespace {

std::array<Rational, 3> draw_point(Rng& rng, int box) {
  return {Rational(int(rng.uniform(-box, box))), Rational(int(rng.uniform(-box, box))),
          Rational(int(rng.uniform(-box, box)))};
}

std::vector<std::array<Rational, 3>> draw_distinct_points(Rng& rng, int count, int box) {
  std::set<std::vector<std::string>> seen;
  std::vector<std::array<Rational, 3>> pts;
  while (int(pts.size()) < count) {
    const auto p = draw_point(rng, box);
    const std::vector<std::string> key{to_string(p[0]), to_string(p[1]), to_string(p[2])};
    if (seen.insert(key).second) pts.push_back(p);
  }
  return pts;
}

}  // namespace

Rank2Spec random_rank2_spec(int n, std::uint64_t seed) {
  if (n < 1) throw input_error("random_rank2_spec: need n >= 1");
  Rng rng(seed);
  Rank2Spec spec;
  spec.points = draw_distinct_points(rng, n, 2 * n + 2);
  for (int i = 0; i < n; ++i) {
    for (;;) {
      std::array<Rational, 2> a{Rational(int(rng.uniform(-3, 3))),
                                Rational(int(rng.uniform(-3, 3)))};
      if (a[0] == 0 && a[1] == 0) continue;
      bool indep = true;
      for (int j = 0; j < i && indep; ++j)
        indep = (spec.alphas[j][0] * a[1] - spec.alphas[j][1] * a[0]) != 0;
      if (!indep) continue;
      spec.alphas.push_back(a);
      break;
    }
  }
  return spec;
}

QuotPoint extend_by_point(const ExtensionSpec& spec) {
  require_valid(spec.base);
  if (int(spec.u.size()) != spec.base.n)
    throw dim_error("extend_by_point: u must have base length entries");
  for (const SupportPoint& p : support_decomposition(spec.base))
    if (p.point == spec.new_point)
      throw precondition_error("extend_by_point: new point already lies in the support");

  const QuotPoint& b = spec.base;
  QuotPoint out;
  out.n = b.n + 1;
  out.r = b.r + 1;
  auto grow = [&](const Mat& m, const Rational& corner) {
    Mat g(out.n, out.n);
    for (int i = 0; i < b.n; ++i)
      for (int j = 0; j < b.n; ++j) g(i, j) = m(i, j);
    g(b.n, b.n) = corner;
    return g;
  };
  out.A = grow(b.A, spec.new_point[0]);
  out.B = grow(b.B, spec.new_point[1]);
  out.C = grow(b.C, spec.new_point[2]);
  out.V = Mat(out.n, out.r);
  for (int i = 0; i < b.n; ++i)
    for (int j = 0; j < b.r; ++j) out.V(i, j) = b.V(i, j);
  for (int i = 0; i < b.n; ++i) out.V(i, b.r) = spec.u[i];
  out.V(b.n, b.r) = 1;
  return out;
}

RetryResult retry_stable_extension(const QuotPoint& base, const std::array<Rational, 3>& new_point,
                                   std::uint64_t seed, int max_tries,
                                   const StabilityOptions& opts) {
  Rng rng(seed);
  std::ostringstream trail;
  for (int t = 0; t < max_tries; ++t) {
    const int box = 1 << std::min(t / 8, 8);
    ExtensionSpec spec{base, new_point, {}};
    bool nonzero = false;
    for (int i = 0; i < base.n; ++i) {
      spec.u.push_back(Rational(int(rng.uniform(-box, box))));
      nonzero = nonzero || spec.u.back() != 0;
    }
    if (!nonzero) spec.u[std::size_t(rng.uniform(0, base.n - 1))] = 1;
    const QuotPoint qp = extend_by_point(spec);
    const StabilityVerdict v = check_stability(qp, opts);
    if (v.status == Stability::stable && v.certified) return {qp, t + 1};
    trail << (t ? ", " : "")
          << (v.status == Stability::stable
                  ? "stable(uncertified)"
                  : v.status == Stability::strictly_semistable ? "semistable" : "unstable");
  }
  throw retry_exhausted("retry_stable_extension: no stable extension in " +
                        std::to_string(max_tries) + " tries; verdicts: " + trail.str());
}

IterateResult iterate_construction(int r, int n, std::uint64_t seed,
                                   const StabilityOptions& opts) {
  if (r < 1 || n < 1) throw input_error("iterate_construction: need r >= 1 and n >= 1");
  if (r > n)
    throw precondition_error(
        "iterate_construction: no semistable datum exists with rank above length");
  Rng rng(mix_seed(seed, 0));
  const auto pts = draw_distinct_points(rng, n, 3 * n + 3);

  IterateResult out;
  if (r == n) {
    // Polystable direct sum of the n point ideals; nothing stable exists.
    QuotPoint qp;
    qp.n = n;
    qp.r = n;
    qp.A = Mat(n, n);
    qp.B = Mat(n, n);
    qp.C = Mat(n, n);
    for (int i = 0; i < n; ++i) {
      qp.A(i, i) = pts[i][0];
      qp.B(i, i) = pts[i][1];
      qp.C(i, i) = pts[i][2];
    }
    qp.V = Mat::identity(n);
    out.qp = qp;
    return out;
  }

  const int base_len = n - r + 1;
  QuotPoint cur;
  cur.n = base_len;
  cur.r = 1;
  cur.A = Mat(base_len, base_len);
  cur.B = Mat(base_len, base_len);
  cur.C = Mat(base_len, base_len);
  cur.V = Mat(base_len, 1);
  for (int i = 0; i < base_len; ++i) {
    cur.A(i, i) = pts[i][0];
    cur.B(i, i) = pts[i][1];
    cur.C(i, i) = pts[i][2];
    cur.V(i, 0) = 1;
  }
  for (int step = 1; step < r; ++step) {
    RetryResult rr =
        retry_stable_extension(cur, pts[base_len + step - 1], mix_seed(seed, step), 64, opts);
    cur = std::move(rr.qp);
    out.tries.push_back(rr.tries);
  }
  out.qp = cur;
  return out;
}

long long point_quotient_hom_dim(const QuotPoint& qp, const std::array<Rational, 3>& q) {
  // Module maps Q -> k_q: row functionals killed by the shifted actions.
  Mat a = qp.A.transpose(), b = qp.B.transpose(), c = qp.C.transpose();
  for (int i = 0; i < qp.n; ++i) {
    a(i, i) -= q[0];
    b(i, i) -= q[1];
    c(i, i) -= q[2];
  }
  return nullity(vstack(vstack(a, b), c));
}

std::vector<PointHomCount> count_point_quotient_homs(const QuotPoint& qp) {
  require_valid(qp);
  std::vector<PointHomCount> out;
  for (const SupportPoint& p : support_decomposition(qp))
    out.push_back({p.point, point_quotient_hom_dim(qp, p.point)});
  return out;
}

QuotPoint random_quot_point(int n, int r, bool reduced, std::uint64_t seed) {
  if (n < 1 || r < 1) throw input_error("random_quot_point: need n >= 1 and r >= 1");
  Rng rng(seed);
  QuotPoint qp;
  qp.n = n;
  qp.r = r;
  qp.A = Mat(n, n);
  qp.B = Mat(n, n);
  qp.C = Mat(n, n);

  if (reduced) {
    const auto pts = draw_distinct_points(rng, n, 2 * n + 2);
    for (int i = 0; i < n; ++i) {
      qp.A(i, i) = pts[i][0];
      qp.B(i, i) = pts[i][1];
      qp.C(i, i) = pts[i][2];
    }
    qp.V = Mat(n, r);
    for (int i = 0; i < n; ++i) {
      for (;;) {
        bool nonzero = false;
        for (int j = 0; j < r; ++j) {
          qp.V(i, j) = Rational(int(rng.uniform(-3, 3)));
          nonzero = nonzero || qp.V(i, j) != 0;
        }
        if (nonzero) break;  // diagonal datum is cyclic iff no framing row vanishes
      }
    }
    return qp;
  }

  // Partition n into curvilinear blocks, at least one thick when n allows.
  std::vector<int> parts;
  for (;;) {
    parts.clear();
    int rest = n;
    while (rest > 0) {
      const int p = int(rng.uniform(1, std::min<long long>(rest, 4)));
      parts.push_back(p);
      rest -= p;
    }
    const bool thick = std::any_of(parts.begin(), parts.end(), [](int p) { return p >= 2; });
    if (n == 1 || thick) break;
  }
  const auto pts = draw_distinct_points(rng, int(parts.size()), 2 * n + 2);
  int at = 0;
  for (std::size_t b = 0; b < parts.size(); ++b) {
    const int m = parts[b];
    const int axis = int(rng.uniform(0, 2));
    Mat* ops[3] = {&qp.A, &qp.B, &qp.C};
    for (int k = 0; k < 3; ++k)
      for (int i = 0; i < m; ++i) (*ops[k])(at + i, at + i) = pts[b][k];
    for (int i = 0; i + 1 < m; ++i) (*ops[axis])(at + i, at + i + 1) = 1;
    at += m;
  }
  for (int attempt = 0; attempt < 64; ++attempt) {
    qp.V = Mat(n, r);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < r; ++j) qp.V(i, j) = Rational(int(rng.uniform(-3, 3)));
    if (validate(qp).ok) return qp;
  }
  throw error("random_quot_point: could not find a cyclic framing (bug)");
}

QuotPoint reframe_random(const QuotPoint& base, std::uint64_t seed) {
  Rng rng(seed);
  QuotPoint qp = base;
  for (int attempt = 0; attempt < 64; ++attempt) {
    for (int i = 0; i < qp.n; ++i)
      for (int j = 0; j < qp.r; ++j) qp.V(i, j) = Rational(int(rng.uniform(-3, 3)));
    if (validate(qp).ok) return qp;
  }
  throw error("reframe_random: could not find a cyclic framing (bug)");
}

QuotPoint polystable_rep(const std::vector<std::array<Rational, 3>>& pts) {
  const int n = int(pts.size());
  if (n < 1) throw input_error("polystable_rep: need at least one point");
  QuotPoint qp;
  qp.n = n;
  qp.r = n;
  qp.A = Mat(n, n);
  qp.B = Mat(n, n);
  qp.C = Mat(n, n);
  for (int i = 0; i < n; ++i) {
    qp.A(i, i) = pts[i][0];
    qp.B(i, i) = pts[i][1];
    qp.C(i, i) = pts[i][2];
  }
  qp.V = Mat::identity(n);
  return qp;
}

}  // namespace qts
