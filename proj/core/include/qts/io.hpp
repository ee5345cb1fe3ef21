#pragma once

#include <nlohmann/json.hpp>
#include <string>

#include "qts/construct.hpp"
#include "qts/experiments.hpp"
#include "qts/homology.hpp"
#include "qts/stability.hpp"

namespace qts {

using Json = nlohmann::ordered_json;

// Rationals travel as canonical strings "p" or "p/q"; bare JSON integers
// are accepted on input. Matrices are arrays of row arrays. A datum is
//   { "n": .., "r": .., "A": [[..]], "B": [[..]], "C": [[..]],
//     "framing": [[..]] }
// with "framing" holding r rows of n entries, row i being the i-th
// framing vector. See docs/formats.md.

Json to_json(const Rational& x);
Rational rational_from_json(const Json& j, const std::string& where);

Json to_json(const Mat& m);
Mat mat_from_json(const Json& j, const std::string& where);

Json to_json(const QuotPoint& qp);
QuotPoint quot_point_from_json(const Json& j);

Json to_json(const std::array<Rational, 3>& p);
std::array<Rational, 3> point_from_json(const Json& j, const std::string& where);

Json to_json(const ValidationReport& rep);
Json to_json(const std::vector<SupportPoint>& support);
Json to_json(const Submodule& sm);
Json to_json(const StabilityVerdict& v);
Json to_json(const JHFactor& f);
Json to_json(const JHFiltration& f);
Json class_to_json(const std::vector<JHFactor>& factors);
Json to_json(const IsoResult& iso);
Json to_json(const ExtTable& t);
Json to_json(const CohomologyTable& t);
Json to_json(const EmptinessReport& rep);
Json to_json(const SymnReport& rep);
Json to_json(const DimensionReport& rep);
Json to_json(const CommvarReport& rep);

// Parse with a line/column diagnostic naming the source on failure.
Json parse_json(const std::string& text, const std::string& source);

// Two-space indent, sorted object keys as written, trailing newline:
// byte-stable across runs.
std::string dump_json(const Json& j);

}  // namespace qts
