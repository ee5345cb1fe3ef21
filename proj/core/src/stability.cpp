#include "qts/stability.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <sstream>

#include "qts/rng.hpp"

namespace qts {

namespace {

std::string mat_key(const Mat& m) {
  std::ostringstream os;
  os << m.rows() << 'x' << m.cols() << ':';
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) os << m(i, j) << ',';
  return os.str();
}

bool point_less(const std::array<Rational, 3>& a, const std::array<Rational, 3>& b) {
  for (int k = 0; k < 3; ++k) {
    if (a[k] < b[k]) return true;
    if (b[k] < a[k]) return false;
  }
  return false;
}

struct ReducedData {
  std::vector<SupportPoint> pts;  // sorted, all multiplicity one
  Mat Vp;                         // framing in primary coordinates, n x r
};

// Change of basis to the joint eigenlines; row j of Vp holds the
// coefficients of the framing vectors over the j-th support point.
ReducedData primary_coordinates(const QuotPoint& qp) {
  ReducedData d;
  d.pts = support_decomposition(qp);
  Mat H(0, qp.n);
  for (const auto& p : d.pts) H = vstack(H, p.basis);
  d.Vp = inverse(H.transpose()) * qp.V;
  return d;
}

struct SubsetScan {
  bool violation = false;
  long long v_defect = 0;  // r*len - n*dim, negative when violating
  unsigned v_mask = 0;
  long long v_d = 0;
  bool equality = false;
  long long e_d = 0;
  unsigned e_mask = 0;
};

// Scans every proper subset of the support points. For reduced support a
// framing subspace can always be replaced by the coordinate subset
// carrying its closure without lowering the defect, so this is exact.
SubsetScan scan_subsets(const Mat& Vp, int n, int r) {
  SubsetScan best;
  for (unsigned mask = 0; mask + 1 < (1u << n); ++mask) {
    std::vector<int> comp;
    for (int j = 0; j < n; ++j)
      if (!(mask & (1u << j))) comp.push_back(j);
    const long long d = r - rank(select_rows(Vp, comp));
    if (d <= 0) continue;
    if (d >= r) throw error("stability: full framing preimage on a proper subset (not cyclic?)");
    const long long len = std::popcount(mask);
    const long long defect = r * len - n * d;
    if (defect < 0) {
      if (!best.violation || defect < best.v_defect ||
          (defect == best.v_defect && len < std::popcount(best.v_mask))) {
        best.violation = true;
        best.v_defect = defect;
        best.v_mask = mask;
        best.v_d = d;
      }
    } else if (defect == 0 && d <= r - 1) {
      if (!best.equality || d < best.e_d) {
        best.equality = true;
        best.e_d = d;
        best.e_mask = mask;
      }
    }
  }
  return best;
}

StabilityWitness subset_witness(const QuotPoint& qp, const ReducedData& rd, unsigned mask,
                                long long d) {
  std::vector<int> sel, comp;
  for (int j = 0; j < qp.n; ++j)
    (mask & (1u << j) ? sel : comp).push_back(j);
  Mat mrows(0, qp.n);
  for (int j : sel) mrows = vstack(mrows, rd.pts[j].basis);
  StabilityWitness w;
  w.destabilizing.basis = row_basis(mrows);
  w.destabilizing.length = long(sel.size());
  w.destabilizing.framing_preimage_dim = d;
  w.framing_subspace = row_basis(nullspace_mat(select_rows(rd.Vp, comp)).transpose());
  return w;
}

StabilityVerdict check_reduced(const QuotPoint& qp, const ReducedData& rd) {
  const SubsetScan scan = scan_subsets(rd.Vp, qp.n, qp.r);
  StabilityVerdict v;
  v.certified = true;
  if (scan.violation) {
    v.status = Stability::unstable;
    v.witness = subset_witness(qp, rd, scan.v_mask, scan.v_d);
  } else if (scan.equality) {
    v.status = Stability::strictly_semistable;
    v.witness = subset_witness(qp, rd, scan.e_mask, scan.e_d);
  } else {
    v.status = Stability::stable;
  }
  return v;
}

// Candidate invariant subspaces for the heuristic path: Krylov closures of
// framing combinations, saturated under pairwise span sums.
std::map<std::string, Mat> heuristic_candidates(const QuotPoint& qp, const StabilityOptions& opts) {
  std::map<std::string, Mat> cands;
  auto add = [&](const Mat& rows) { cands.emplace(mat_key(rows), rows); };
  add(Mat(0, qp.n));

  std::vector<Mat> lambdas;
  if (qp.r <= 8) {
    const long long total = [&] {
      long long t = 1;
      for (int i = 0; i < qp.r; ++i) t *= 3;
      return t;
    }();
    for (long long code = 1; code < total; ++code) {
      Mat l(qp.r, 1);
      long long c = code;
      for (int i = 0; i < qp.r; ++i) {
        l(i, 0) = Rational(int(c % 3) - 1);
        c /= 3;
      }
      lambdas.push_back(l);
    }
  } else {
    for (int i = 0; i < qp.r; ++i) {
      Mat l(qp.r, 1);
      l(i, 0) = 1;
      lambdas.push_back(l);
      for (int j = i + 1; j < qp.r; ++j)
        for (int sj : {1, -1}) {
          Mat l2(qp.r, 1);
          l2(i, 0) = 1;
          l2(j, 0) = sj;
          lambdas.push_back(l2);
        }
    }
  }
  Rng rng(opts.seed);
  for (int s = 0; s < opts.samples; ++s) {
    Mat l(qp.r, 1);
    bool nonzero = false;
    for (int i = 0; i < qp.r; ++i) {
      l(i, 0) = Rational(int(rng.uniform(-3, 3)));
      nonzero = nonzero || l(i, 0) != 0;
    }
    if (nonzero) lambdas.push_back(l);
  }

  for (const Mat& l : lambdas) {
    if (int(cands.size()) >= 2048) break;
    add(krylov_closure_rows(qp.A, qp.B, qp.C, (qp.V * l).transpose()));
  }

  for (int round = 0; round < 4; ++round) {
    const std::vector<std::pair<std::string, Mat>> snapshot(cands.begin(), cands.end());
    bool grew = false;
    for (std::size_t i = 0; i < snapshot.size() && int(cands.size()) < 2048; ++i)
      for (std::size_t j = i + 1; j < snapshot.size() && int(cands.size()) < 2048; ++j) {
        const Mat sum = row_span_sum(snapshot[i].second, snapshot[j].second);
        if (sum.rows() >= qp.n) continue;
        const auto key = mat_key(sum);
        if (!cands.count(key)) {
          cands.emplace(key, sum);
          grew = true;
        }
      }
    if (!grew) break;
  }
  return cands;
}

StabilityVerdict check_heuristic(const QuotPoint& qp, const StabilityOptions& opts) {
  StabilityVerdict v;
  v.certified = false;
  bool violation = false, equality = false;
  long long best_defect = 0;
  StabilityWitness v_wit, e_wit;
  long long e_d = 0;

  for (const auto& [key, rows] : heuristic_candidates(qp, opts)) {
    if (rows.rows() >= qp.n) continue;  // proper subspaces only
    const Mat w = framing_preimage(qp, rows);
    const long long d = w.rows();
    if (d == 0) continue;
    const long long len = rows.rows();
    const long long defect = qp.r * len - qp.n * d;
    if (defect < 0 && (!violation || defect < best_defect)) {
      violation = true;
      best_defect = defect;
      v_wit = {w, Submodule{rows, len, d}};
    } else if (defect == 0 && d <= qp.r - 1 && (!equality || d < e_d)) {
      equality = true;
      e_d = d;
      e_wit = {w, Submodule{rows, len, d}};
    }
  }

  if (violation) {
    // A violating pair is a proof regardless of how it was found.
    v.status = Stability::unstable;
    v.certified = true;
    v.witness = v_wit;
  } else if (equality) {
    v.status = Stability::strictly_semistable;
    v.witness = e_wit;
  } else {
    v.status = Stability::stable;
  }
  return v;
}

}  // namespace

StabilityVerdict check_stability(const QuotPoint& qp, const StabilityOptions& opts) {
  require_valid(qp);
  if (qp.n <= opts.max_exhaustive_n) {
    try {
      const ReducedData rd = primary_coordinates(qp);
      const bool reduced =
          std::all_of(rd.pts.begin(), rd.pts.end(),
                      [](const SupportPoint& p) { return p.multiplicity == 1; });
      if (reduced) return check_reduced(qp, rd);
    } catch (const unsupported_error&) {
      // irrational spectrum: fall through to the heuristic
    }
  }
  return check_heuristic(qp, opts);
}

namespace {

struct Piece {
  std::vector<int> pts;  // indices into the global sorted support
  Mat F;                 // framing in primary coordinates, |pts| x rank
  int rank = 0;
};

void jh_recurse(const Piece& piece, const std::vector<SupportPoint>& support,
                std::vector<JHFactor>& out) {
  const int nc = int(piece.pts.size());
  const int rc = piece.rank;
  auto emit = [&](int rank_out) {
    JHFactor f;
    f.rank = rank_out;
    for (int idx : piece.pts) f.support.push_back(support[idx].point);
    std::sort(f.support.begin(), f.support.end(), point_less);
    out.push_back(std::move(f));
  };
  if (rc == 1) {
    emit(1);  // rank one with reduced support is an ideal sheaf, stable
    return;
  }
  const SubsetScan scan = scan_subsets(piece.F, nc, rc);
  if (scan.violation) throw error("jordan_holder: internal: piece is not semistable");
  if (!scan.equality) {
    emit(rc);  // stable piece of higher rank
    return;
  }

  std::vector<int> sel, comp;
  for (int j = 0; j < nc; ++j)
    (scan.e_mask & (1u << j) ? sel : comp).push_back(j);
  const Mat Wmat = nullspace_mat(select_rows(piece.F, comp));  // rc x d
  const long long d = Wmat.cols();

  Piece sub;
  for (int j : sel) sub.pts.push_back(piece.pts[j]);
  sub.F = select_rows(piece.F * Wmat, sel);
  sub.rank = int(d);

  const Mat wrows = row_basis(Wmat.transpose());
  std::vector<bool> is_pivot(rc, false);
  for (int i = 0; i < wrows.rows(); ++i) {
    int j = 0;
    while (j < rc && wrows(i, j) == 0) ++j;
    is_pivot[j] = true;
  }
  std::vector<int> free_cols;
  for (int j = 0; j < rc; ++j)
    if (!is_pivot[j]) free_cols.push_back(j);

  Piece quot;
  for (int j : comp) quot.pts.push_back(piece.pts[j]);
  quot.F = select_cols(select_rows(piece.F, comp), free_cols);
  quot.rank = rc - int(d);

  jh_recurse(sub, support, out);
  jh_recurse(quot, support, out);
}

}  // namespace

JHFiltration jordan_holder(const QuotPoint& qp, const StabilityOptions& opts) {
  const StabilityVerdict verdict = check_stability(qp, opts);
  if (verdict.status == Stability::unstable)
    throw precondition_error("jordan_holder: unstable datum has no such filtration");
  if (!verdict.certified)
    throw uncertified_error("jordan_holder: verdict is heuristic, refusing to filter");

  JHFiltration out;
  if (verdict.status == Stability::stable) {
    out.input_stable = true;
    JHFactor f;
    f.rank = qp.r;
    for (const auto& p : support_decomposition(qp))
      for (long long k = 0; k < p.multiplicity; ++k) f.support.push_back(p.point);
    std::sort(f.support.begin(), f.support.end(), point_less);
    out.factors.push_back(std::move(f));
    return out;
  }

  // Certified strictly semistable implies the reduced subset path ran.
  const ReducedData rd = primary_coordinates(qp);
  Piece top;
  for (int j = 0; j < qp.n; ++j) top.pts.push_back(j);
  top.F = rd.Vp;
  top.rank = qp.r;
  jh_recurse(top, rd.pts, out.factors);
  return out;
}

bool factor_less(const JHFactor& a, const JHFactor& b) {
  if (a.rank != b.rank) return a.rank < b.rank;
  if (a.support.size() != b.support.size()) return a.support.size() < b.support.size();
  for (std::size_t i = 0; i < a.support.size(); ++i) {
    if (point_less(a.support[i], b.support[i])) return true;
    if (point_less(b.support[i], a.support[i])) return false;
  }
  return false;
}

std::vector<JHFactor> s_equivalence_class(const QuotPoint& qp, const StabilityOptions& opts) {
  std::vector<JHFactor> factors = jordan_holder(qp, opts).factors;
  std::sort(factors.begin(), factors.end(), factor_less);
  return factors;
}

namespace {

Mat unvec(const Mat& col, int offset, int rows, int cols) {
  Mat m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = col(offset + i * cols + j, 0);
  return m;
}

}  // namespace

IsoResult is_isomorphic(const QuotPoint& a, const QuotPoint& b, const IsoOptions& opts) {
  require_valid(a);
  require_valid(b);
  if (a.n != b.n || a.r != b.r) return {IsoAnswer::no, std::nullopt};
  const int n = a.n, r = a.r;

  try {
    const auto sa = support_decomposition(a);
    const auto sb = support_decomposition(b);
    auto key = [](const std::vector<SupportPoint>& s) {
      std::vector<std::pair<std::array<Rational, 3>, long long>> k;
      for (const auto& p : s) k.push_back({p.point, p.multiplicity});
      return k;  // already sorted by point
    };
    if (key(sa) != key(sb)) return {IsoAnswer::no, std::nullopt};
  } catch (const unsupported_error&) {
    // cannot compare supports exactly; proceed to the linear stage
  }

  // Intertwiner equations h X = X' h for X in {A,B,C} and h V = V' g,
  // in the unknowns vec(h), vec(g).
  const Mat In = Mat::identity(n), Ir = Mat::identity(r);
  auto op_block = [&](const Mat& x, const Mat& xp) { return kron(In, x.transpose()) - kron(xp, In); };
  Mat sys = op_block(a.A, b.A);
  sys = vstack(sys, op_block(a.B, b.B));
  sys = vstack(sys, op_block(a.C, b.C));
  Mat glue = hstack(sys, Mat(3 * n * n, r * r));
  Mat frame = hstack(kron(In, a.V.transpose()), -kron(b.V, Ir));
  Mat full = vstack(glue, frame);

  const Mat K = nullspace_mat(full);
  const int m = K.cols();
  if (m == 0) return {IsoAnswer::no, std::nullopt};

  std::vector<Mat> hs(m), gs(m);
  for (int k = 0; k < m; ++k) {
    std::vector<int> one{k};
    const Mat col = select_cols(K, one);
    hs[k] = unvec(col, 0, n, n);
    gs[k] = unvec(col, n * n, r, r);
  }

  long long budget = opts.max_combinations;
  bool complete = true;
  for (int radius = 1; radius <= opts.grid_radius; ++radius) {
    const long long base = 2 * radius + 1;
    long long total = 1;
    for (int k = 0; k < m; ++k) {
      total *= base;
      if (total > 4 * opts.max_combinations) break;  // avoid overflow, will truncate anyway
    }
    for (long long code = 0; code < total; ++code) {
      if (budget-- <= 0) {
        complete = false;
        break;
      }
      long long c = code;
      std::vector<int> coef(m);
      int maxabs = 0;
      for (int k = 0; k < m; ++k) {
        coef[k] = int(c % base) - radius;
        maxabs = std::max(maxabs, std::abs(coef[k]));
        c /= base;
      }
      if (maxabs != radius) continue;  // inner shells were already scanned
      Mat h(n, n), g(r, r);
      for (int k = 0; k < m; ++k) {
        if (coef[k] == 0) continue;
        h = h + Rational(coef[k]) * hs[k];
        g = g + Rational(coef[k]) * gs[k];
      }
      if (rank(h) < n || rank(g) < r) continue;
      return {IsoAnswer::yes, std::make_pair(h, g)};
    }
    if (budget <= 0) break;
  }

  // det(h)det(g) has degree at most n + r in each grid variable; a full
  // grid with more values than the degree certifies identical vanishing.
  if (complete && n + r <= 2 * opts.grid_radius) return {IsoAnswer::no, std::nullopt};
  return {IsoAnswer::unknown, std::nullopt};
}

}  // namespace qts
