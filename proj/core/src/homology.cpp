#include "qts/homology.hpp"

namespace qts {

namespace {

void require_commuting(const FiniteModule& m, const char* who) {
  if (m.A.rows() != m.n || m.A.cols() != m.n || m.B.rows() != m.n || m.B.cols() != m.n ||
      m.C.rows() != m.n || m.C.cols() != m.n)
    throw dim_error(std::string("koszul_ext: ") + who + " has mismatched shapes");
  if (!(m.A * m.B - m.B * m.A).is_zero() || !(m.A * m.C - m.C * m.A).is_zero() ||
      !(m.B * m.C - m.C * m.B).is_zero())
    throw precondition_error(std::string("koszul_ext: ") + who + " actions do not commute");
}

// dX as a matrix on vec(g) for g : V_M -> V_N, so g is nN x nM.
Mat delta(const Mat& xm, const Mat& xn) {
  return kron(Mat::identity(xn.rows()), xm.transpose()) - kron(xn, Mat::identity(xm.rows()));
}

ExtTable koszul_ext_direct(const FiniteModule& m, const FiniteModule& n) {
  const long long a = (long long)m.n * n.n;
  const Mat la = delta(m.A, n.A);
  const Mat lb = delta(m.B, n.B);
  const Mat lc = delta(m.C, n.C);
  const int ai = int(a);
  const Mat z(ai, ai);

  const Mat d0 = vstack(vstack(la, lb), lc);
  const Mat d1 = vstack(vstack(hstack(hstack(lb, -la), z), hstack(hstack(lc, z), -la)),
                        hstack(hstack(z, lc), -lb));
  const Mat d2 = hstack(hstack(lc, -lb), la);

  const long long r0 = rank(d0);
  const long long r1 = rank(d1);
  const long long r2 = rank(d2);

  ExtTable t;
  t.hom = a - r0;
  t.ext1 = (3 * a - r1) - r0;
  t.ext2 = (3 * a - r2) - r1;
  t.ext3 = a - r2;
  return t;
}

struct ModuleBlock {
  std::array<Rational, 3> point;
  FiniteModule mod;
};

std::vector<ModuleBlock> decompose(const FiniteModule& m) {
  std::vector<ModuleBlock> blocks;
  for (const SupportPoint& p : module_support(m.A, m.B, m.C)) {
    const Mat basis = p.basis;
    std::vector<int> piv;
    for (int i = 0; i < basis.rows(); ++i) {
      int j = 0;
      while (j < basis.cols() && basis(i, j) == 0) ++j;
      piv.push_back(j);
    }
    ModuleBlock b;
    b.point = p.point;
    b.mod.n = basis.rows();
    b.mod.A = restrict_operator(m.A, basis, piv);
    b.mod.B = restrict_operator(m.B, basis, piv);
    b.mod.C = restrict_operator(m.C, basis, piv);
    blocks.push_back(std::move(b));
  }
  return blocks;
}

}  // namespace

FiniteModule quotient_module(const QuotPoint& qp) { return {qp.n, qp.A, qp.B, qp.C}; }

ExtTable koszul_ext(const FiniteModule& m, const FiniteModule& n) {
  require_commuting(m, "first argument");
  require_commuting(n, "second argument");
  try {
    const std::vector<ModuleBlock> bm = decompose(m);
    const std::vector<ModuleBlock> bn = decompose(n);
    ExtTable total;
    for (const auto& p : bm)
      for (const auto& q : bn) {
        if (p.point != q.point) continue;  // disjoint blocks contribute nothing
        const ExtTable t = koszul_ext_direct(p.mod, q.mod);
        total.hom += t.hom;
        total.ext1 += t.ext1;
        total.ext2 += t.ext2;
        total.ext3 += t.ext3;
      }
    return total;
  } catch (const unsupported_error&) {
    return koszul_ext_direct(m, n);  // irrational support: no shortcut
  }
}

CohomologyTable kernel_cohomology(const QuotPoint& qp) {
  require_valid(qp);
  const long long rank_v = rank(qp.V);
  CohomologyTable t;
  t.h0 = qp.r - rank_v;
  t.h1 = qp.n - rank_v;
  return t;
}

long long hom_E_Q(const QuotPoint& qp) {
  require_valid(qp);
  const FiniteModule q = quotient_module(qp);
  const ExtTable t = koszul_ext(q, q);
  return (long long)qp.r * qp.n + t.ext1 - t.hom;
}

long long ext1_E_E(const QuotPoint& qp, const StabilityOptions& opts) {
  const StabilityVerdict v = check_stability(qp, opts);
  if (v.status != Stability::stable)
    throw precondition_error("ext1_E_E: datum is not stable, formula does not apply");
  if (!v.certified) throw uncertified_error("ext1_E_E: stability verdict is heuristic");
  return hom_E_Q(qp) - (long long)qp.r * qp.r + 1;
}

namespace {

Mat commutator_system(const Mat& a, const Mat& b, const Mat& c) {
  const int n = a.rows();
  const Mat in = Mat::identity(n);
  auto k = [&](const Mat& x) { return kron(in, x.transpose()) - kron(x, in); };
  const Mat ka = k(a), kb = k(b), kc = k(c);
  const Mat z(n * n, n * n);
  return vstack(vstack(hstack(hstack(kb, -ka), z), hstack(hstack(kc, z), -ka)),
                hstack(hstack(z, kc), -kb));
}

}  // namespace

long long adhm_tangent(const QuotPoint& qp) {
  require_valid(qp);
  const Mat sys = commutator_system(qp.A, qp.B, qp.C);
  // The framing direction is unconstrained, contributing rn free columns;
  // cyclicity makes the gauge action free, so n^2 directions are pure gauge.
  const long long nullsp = (long long)sys.cols() + (long long)qp.r * qp.n - rank(sys);
  return nullsp - (long long)qp.n * qp.n;
}

long long commuting_variety_tangent(const Mat& a, const Mat& b, const Mat& c) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || c.rows() != c.cols() ||
      a.rows() != b.rows() || a.rows() != c.rows())
    throw dim_error("commuting_variety_tangent: need three square matrices of one size");
  const Mat sys = commutator_system(a, b, c);
  return sys.cols() - rank(sys);
}

long long hom_IZ_OZ(const FiniteModule& m) {
  const ExtTable t = koszul_ext(m, m);
  return m.n - t.hom + t.ext1;
}

long long component_dim_formula(int r, long long n) { return n * (r + 2) - (long long)r * r + 1; }

long long family_dim_derived(long long hom_iz_oz, int r, long long n) {
  return hom_iz_oz + (n - r - 1) * (r - 1);
}

long long family_dim_stated(long long hom_iz_oz, int r, long long n) {
  return hom_iz_oz + (long long)(r - 1) * (n - 1);
}

ExtTable disjoint_ext_formula(int rank_f, long long h1_g, int rank_g, long long h0_qf) {
  ExtTable t;
  t.hom = 0;
  t.ext1 = rank_f * h1_g;
  t.ext2 = rank_g * h0_qf;
  t.ext3 = 0;
  return t;
}

}  // namespace qts
