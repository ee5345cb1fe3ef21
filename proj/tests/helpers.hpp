#pragma once

// Shared builders and oracles for the test corpus.

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qts/quot.hpp"
#include "qts/stability.hpp"

namespace qth {

using qts::Mat;
using qts::QuotPoint;

inline Mat mat(const std::vector<std::vector<std::string>>& rows) {
  return Mat::from_strings(rows);
}

// Diagonal actions at the given points; one framing row per generator.
inline QuotPoint diag_datum(const std::vector<std::array<std::string, 3>>& pts,
                            const std::vector<std::vector<std::string>>& framing_rows) {
  QuotPoint qp;
  qp.n = static_cast<int>(pts.size());
  qp.r = static_cast<int>(framing_rows.size());
  qp.A = Mat(qp.n, qp.n);
  qp.B = Mat(qp.n, qp.n);
  qp.C = Mat(qp.n, qp.n);
  for (int i = 0; i < qp.n; ++i) {
    qp.A(i, i) = qts::parse_rational(pts[i][0]);
    qp.B(i, i) = qts::parse_rational(pts[i][1]);
    qp.C(i, i) = qts::parse_rational(pts[i][2]);
  }
  qp.V = mat(framing_rows).transpose();
  return qp;
}

inline QuotPoint point_ideal(const std::string& x, const std::string& y, const std::string& z) {
  return diag_datum({{x, y, z}}, {{"1"}});
}

// Curvilinear double point at the origin along the first axis; cyclic
// generator is the second basis vector.
inline QuotPoint jordan2_datum() {
  QuotPoint qp;
  qp.n = 2;
  qp.r = 1;
  qp.A = mat({{"0", "1"}, {"0", "0"}});
  qp.B = Mat(2, 2);
  qp.C = Mat(2, 2);
  qp.V = mat({{"0"}, {"1"}});
  return qp;
}

// Brute-force search over framing subspaces spanned by {-1,0,1}-vectors.
// It under-approximates: it can find violations and slope equalities but
// never certifies their absence. Any finding here that check_stability
// missed is a bug in the checker.
struct OracleScan {
  bool violation = false;
  bool equality = false;
};

inline OracleScan sign_oracle(const QuotPoint& qp) {
  OracleScan scan;
  const int r = qp.r;
  std::vector<Mat> vecs;  // nonzero sign vectors, first nonzero entry +1
  long long total = 1;
  for (int i = 0; i < r; ++i) total *= 3;
  for (long long code = 1; code < total; ++code) {
    Mat row(1, r);
    long long c = code;
    int first = -1;
    for (int i = 0; i < r; ++i) {
      const int t = static_cast<int>(c % 3);
      c /= 3;
      row(0, i) = t == 2 ? -1 : t;
      if (first < 0 && t != 0) first = i;
    }
    if (row(0, first) < 0) continue;
    vecs.push_back(row);
  }

  auto consider = [&](const std::vector<int>& pick) {
    Mat rows(static_cast<int>(pick.size()), r);
    for (int j = 0; j < static_cast<int>(pick.size()); ++j)
      for (int i = 0; i < r; ++i) rows(j, i) = vecs[pick[j]](0, i);
    const Mat w = qts::row_basis(rows);
    const int d = w.rows();
    if (d == 0 || d >= r) return;
    const qts::Submodule sm = qts::krylov_closure(qp, qp.V * w.transpose());
    const long long defect = qp.r * sm.length - static_cast<long long>(qp.n) * d;
    if (defect < 0)
      scan.violation = true;
    else if (defect == 0)
      scan.equality = true;
  };

  const int maxk = r - 1;
  std::vector<int> pick;
  std::function<void(int)> rec = [&](int start) {
    if (!pick.empty()) consider(pick);
    if (static_cast<int>(pick.size()) == maxk) return;
    for (int i = start; i < static_cast<int>(vecs.size()); ++i) {
      pick.push_back(i);
      rec(i + 1);
      pick.pop_back();
    }
  };
  rec(0);
  return scan;
}

// Re-derives every claim a verdict's witness makes, through make_submodule
// and framing_preimage rather than the checker's own bookkeeping.
inline std::optional<std::string> witness_problem(const QuotPoint& qp,
                                                  const qts::StabilityVerdict& v) {
  using qts::Stability;
  if (v.status == Stability::stable)
    return v.witness ? std::optional<std::string>("stable verdict carries a witness")
                     : std::nullopt;
  if (!v.witness) {
    if (v.certified) return "certified non-stable verdict without witness";
    return std::nullopt;
  }
  const auto& wit = *v.witness;
  qts::Submodule sm;
  try {
    sm = qts::make_submodule(qp, wit.destabilizing.basis);
  } catch (const std::exception& e) {
    return std::string("witness basis not invariant: ") + e.what();
  }
  if (sm.length != wit.destabilizing.length) return "witness length mismatch";
  const long long d = wit.framing_subspace.rows();
  if (d != wit.destabilizing.framing_preimage_dim) return "witness preimage dim mismatch";
  if (qts::framing_preimage(qp, wit.destabilizing.basis) != wit.framing_subspace)
    return "witness subspace is not the framing preimage";
  for (int i = 0; i < wit.framing_subspace.rows(); ++i) {
    Mat w(qp.r, 1);
    for (int k = 0; k < qp.r; ++k) w(k, 0) = wit.framing_subspace(i, k);
    if (!qts::row_span_contains(sm.basis, (qp.V * w).transpose()))
      return "witness subspace does not map into the submodule";
  }
  const long long defect = qp.r * sm.length - static_cast<long long>(qp.n) * d;
  if (v.status == Stability::unstable && defect >= 0)
    return "unstable witness does not violate the inequality";
  if (v.status == Stability::strictly_semistable) {
    if (defect != 0) return "equality witness has nonzero defect";
    if (d < 1 || d > qp.r - 1) return "equality witness dimension out of range";
  }
  return std::nullopt;
}

}  // namespace qth

#ifdef QTS_CLI_PATH

#include <cstdio>
#include <fstream>
#include <sys/wait.h>

namespace qth {

struct CliResult {
  int exit_code = -1;
  std::string out;
};

inline CliResult run_cli(const std::string& args, const std::string& stdin_file = "") {
  std::string cmd = std::string(QTS_CLI_PATH) + " " + args;
  cmd += stdin_file.empty() ? " < /dev/null" : " < " + stdin_file;
  cmd += " 2>/dev/null";
  CliResult res;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return res;
  char buf[4096];
  std::size_t k;
  while ((k = fread(buf, 1, sizeof buf, p)) > 0) res.out.append(buf, k);
  const int st = pclose(p);
  res.exit_code = (st >= 0 && WIFEXITED(st)) ? WEXITSTATUS(st) : -1;
  return res;
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  f << text;
}

}  // namespace qth

#endif  // QTS_CLI_PATH
