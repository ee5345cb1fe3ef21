#include "qts/io.hpp"

#include <utility>

#include "qts/errors.hpp"

namespace qts {

namespace {

const Json& field(const Json& j, const char* name, const std::string& where) {
  if (!j.is_object()) throw input_error(where + ": expected an object");
  auto it = j.find(name);
  if (it == j.end()) throw input_error(where + ": missing field '" + name + "'");
  return *it;
}

int int_field(const Json& j, const char* name, const std::string& where) {
  const Json& f = field(j, name, where);
  if (!f.is_number_integer())
    throw input_error(where + ": field '" + name + "' must be an integer");
  return f.get<int>();
}

}  // namespace

Json to_json(const Rational& x) { return to_string(x); }

Rational rational_from_json(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const input_error& e) {
      throw input_error(where + ": " + e.what());
    }
  }
  throw input_error(where + ": expected a rational as \"p/q\" string or integer");
}

Json to_json(const Mat& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Mat mat_from_json(const Json& j, const std::string& where) {
  if (!j.is_array() || j.empty())
    throw input_error(where + ": expected a non-empty array of rows");
  int rows = static_cast<int>(j.size());
  if (!j[0].is_array() || j[0].empty())
    throw input_error(where + ": row 0 must be a non-empty array");
  int cols = static_cast<int>(j[0].size());
  Mat m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    const Json& row = j[i];
    if (!row.is_array() || static_cast<int>(row.size()) != cols)
      throw input_error(where + ": row " + std::to_string(i) + " must have " +
                        std::to_string(cols) + " entries");
    for (int k = 0; k < cols; ++k)
      m(i, k) = rational_from_json(row[k], where + "[" + std::to_string(i) + "][" +
                                               std::to_string(k) + "]");
  }
  return m;
}

Json to_json(const QuotPoint& qp) {
  Json j;
  j["n"] = qp.n;
  j["r"] = qp.r;
  j["A"] = to_json(qp.A);
  j["B"] = to_json(qp.B);
  j["C"] = to_json(qp.C);
  // Row i of "framing" is the i-th framing vector, column i of V.
  j["framing"] = to_json(qp.V.transpose());
  return j;
}

QuotPoint quot_point_from_json(const Json& j) {
  const std::string where = "datum";
  QuotPoint qp;
  qp.n = int_field(j, "n", where);
  qp.r = int_field(j, "r", where);
  if (qp.n < 1) throw input_error(where + ": n must be at least 1");
  if (qp.r < 1) throw input_error(where + ": r must be at least 1");
  qp.A = mat_from_json(field(j, "A", where), where + ".A");
  qp.B = mat_from_json(field(j, "B", where), where + ".B");
  qp.C = mat_from_json(field(j, "C", where), where + ".C");
  const std::pair<const char*, const Mat*> ops[] = {{"A", &qp.A}, {"B", &qp.B}, {"C", &qp.C}};
  for (auto [name, m] : ops)
    if (m->rows() != qp.n || m->cols() != qp.n)
      throw input_error(where + "." + name + ": expected shape " + std::to_string(qp.n) + " x " +
                        std::to_string(qp.n));
  Mat framing = mat_from_json(field(j, "framing", where), where + ".framing");
  if (framing.rows() != qp.r || framing.cols() != qp.n)
    throw input_error(where + ".framing: expected " + std::to_string(qp.r) + " rows of " +
                      std::to_string(qp.n) + " entries");
  qp.V = framing.transpose();
  return qp;
}

Json to_json(const std::array<Rational, 3>& p) {
  return Json::array({to_json(p[0]), to_json(p[1]), to_json(p[2])});
}

std::array<Rational, 3> point_from_json(const Json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 3)
    throw input_error(where + ": expected a point as an array of three rationals");
  return {rational_from_json(j[0], where + "[0]"), rational_from_json(j[1], where + "[1]"),
          rational_from_json(j[2], where + "[2]")};
}

Json to_json(const ValidationReport& rep) {
  Json j;
  j["ok"] = rep.ok;
  Json issues = Json::array();
  for (const auto& issue : rep.issues) {
    Json ij;
    ij["kind"] = issue.kind == ValidationIssue::Kind::commutator ? "commutator" : "cyclicity";
    ij["detail"] = issue.detail;
    ij["witness"] = to_json(issue.witness);
    issues.push_back(std::move(ij));
  }
  j["issues"] = std::move(issues);
  return j;
}

Json to_json(const std::vector<SupportPoint>& support) {
  Json j = Json::array();
  for (const auto& sp : support) {
    Json pj;
    pj["point"] = to_json(sp.point);
    pj["multiplicity"] = sp.multiplicity;
    pj["basis"] = to_json(sp.basis);
    j.push_back(std::move(pj));
  }
  return j;
}

Json to_json(const Submodule& sm) {
  Json j;
  j["basis"] = to_json(sm.basis);
  j["length"] = sm.length;
  j["framing_preimage_dim"] = sm.framing_preimage_dim;
  return j;
}

Json to_json(const StabilityVerdict& v) {
  Json j;
  switch (v.status) {
    case Stability::stable: j["status"] = "stable"; break;
    case Stability::strictly_semistable: j["status"] = "strictly_semistable"; break;
    case Stability::unstable: j["status"] = "unstable"; break;
  }
  j["certified"] = v.certified;
  if (v.witness) {
    Json w;
    w["framing_subspace"] = to_json(v.witness->framing_subspace);
    w["submodule"] = to_json(v.witness->destabilizing);
    j["witness"] = std::move(w);
  } else {
    j["witness"] = nullptr;
  }
  return j;
}

Json to_json(const JHFactor& f) {
  Json j;
  j["rank"] = f.rank;
  Json pts = Json::array();
  for (const auto& p : f.support) pts.push_back(to_json(p));
  j["support"] = std::move(pts);
  return j;
}

Json to_json(const JHFiltration& f) {
  Json j;
  j["input_stable"] = f.input_stable;
  Json factors = Json::array();
  for (const auto& fac : f.factors) factors.push_back(to_json(fac));
  j["factors"] = std::move(factors);
  return j;
}

Json class_to_json(const std::vector<JHFactor>& factors) {
  Json j;
  Json arr = Json::array();
  for (const auto& fac : factors) arr.push_back(to_json(fac));
  j["factors"] = std::move(arr);
  return j;
}

Json to_json(const IsoResult& iso) {
  Json j;
  switch (iso.answer) {
    case IsoAnswer::yes: j["answer"] = "yes"; break;
    case IsoAnswer::no: j["answer"] = "no"; break;
    case IsoAnswer::unknown: j["answer"] = "unknown"; break;
  }
  if (iso.maps) {
    Json m;
    m["h"] = to_json(iso.maps->first);
    m["g"] = to_json(iso.maps->second);
    j["maps"] = std::move(m);
  } else {
    j["maps"] = nullptr;
  }
  return j;
}

Json to_json(const ExtTable& t) {
  Json j;
  j["hom"] = t.hom;
  j["ext1"] = t.ext1;
  j["ext2"] = t.ext2;
  j["ext3"] = t.ext3;
  return j;
}

Json to_json(const CohomologyTable& t) {
  Json j;
  j["h0"] = t.h0;
  j["h1"] = t.h1;
  j["h2"] = t.h2;
  j["h3"] = t.h3;
  return j;
}

namespace {

Json failures_to_json(const std::vector<TrialFailure>& failures) {
  Json j = Json::array();
  for (const auto& f : failures) {
    Json fj;
    fj["trial"] = f.trial;
    fj["what"] = f.what;
    j.push_back(std::move(fj));
  }
  return j;
}

}  // namespace

Json to_json(const EmptinessReport& rep) {
  Json j;
  j["r"] = rep.r;
  j["n"] = rep.n;
  j["trials"] = rep.trials;
  j["failures"] = failures_to_json(rep.failures);
  j["ok"] = rep.ok();
  return j;
}

Json to_json(const SymnReport& rep) {
  Json j;
  j["n"] = rep.n;
  j["trials"] = rep.trials;
  j["semistable_pairs"] = rep.semistable_pairs;
  j["unstable_excluded"] = rep.unstable_excluded;
  j["failures"] = failures_to_json(rep.failures);
  j["ok"] = rep.ok();
  return j;
}

Json to_json(const DimensionReport& rep) {
  Json j;
  j["r"] = rep.r;
  j["n"] = rep.n;
  j["trials"] = rep.trials;
  j["expected_ext1"] = rep.expected_ext1;
  Json hist;
  for (const auto& [tries, count] : rep.retry_histogram) hist[std::to_string(tries)] = count;
  j["retry_histogram"] = std::move(hist);
  j["failures"] = failures_to_json(rep.failures);
  j["ok"] = rep.ok();
  return j;
}

Json to_json(const CommvarReport& rep) {
  Json j;
  j["n"] = rep.n;
  j["trials"] = rep.trials;
  Json hist;
  for (const auto& [dim, count] : rep.histogram) hist[std::to_string(dim)] = count;
  j["histogram"] = std::move(hist);
  return j;
}

Json parse_json(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t byte = e.byte > 0 ? e.byte - 1 : 0;
    if (byte > text.size()) byte = text.size();
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < byte; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw input_error(source + ":" + std::to_string(line) + ":" + std::to_string(col) +
                      ": " + e.what());
  }
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace qts
