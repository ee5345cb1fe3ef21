#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "qts/matrix.hpp"

namespace qts {

// A framed module datum: three commuting n x n matrices giving the three
// coordinate actions on a length-n quotient Q, plus r framing vectors
// (the images of the standard generators) as the columns of V. The datum
// is a point of the parameter space exactly when A, B, C pairwise commute
// and the framing generates Q under the action.
struct QuotPoint {
  int n = 0;
  int r = 0;
  Mat A, B, C;  // n x n
  Mat V;        // n x r, column j is the j-th framing vector

  bool operator==(const QuotPoint&) const = default;
};

struct ValidationIssue {
  enum class Kind { commutator, cyclicity };
  Kind kind;
  std::string detail;
  Mat witness;  // nonzero commutator, or the proper invariant subspace hit
};

struct ValidationReport {
  bool ok = true;
  std::vector<ValidationIssue> issues;
};

// Shape errors throw dim_error; semantic violations are reported.
ValidationReport validate(const QuotPoint& qp);
void require_valid(const QuotPoint& qp);  // precondition_error when not ok

// Invariant subspace M of Q together with the data stability cares about:
// its length and the dimension of W(M) = { lambda : V lambda in M }.
struct Submodule {
  Mat basis;  // canonical rows, full row rank
  long long length = 0;
  long long framing_preimage_dim = 0;
};

// Smallest invariant subspace containing the given seed columns.
Mat krylov_closure_rows(const Mat& A, const Mat& B, const Mat& C, const Mat& seed_rows);
Submodule krylov_closure(const QuotPoint& qp, const Mat& seed_cols);

// Wraps an invariant subspace given by spanning rows; computes W(M).
Submodule make_submodule(const QuotPoint& qp, const Mat& spanning_rows);

// Subspace W(M) of Q^r for the invariant subspace spanned by basis rows.
Mat framing_preimage(const QuotPoint& qp, const Mat& basis_rows);

struct SupportPoint {
  std::array<Rational, 3> point;
  long long multiplicity = 0;
  Mat basis;  // canonical rows of the joint primary component
};

// Joint primary decomposition over the rational field. Throws
// unsupported_error when some coordinate action has an eigenvalue outside
// the rationals; exact arithmetic stops there by design.
std::vector<SupportPoint> module_support(const Mat& A, const Mat& B, const Mat& C);
std::vector<SupportPoint> support_decomposition(const QuotPoint& qp);
bool is_reduced_support(const QuotPoint& qp);

// Distinct rational eigenvalues with algebraic multiplicities, or nullopt
// when the spectrum does not lie entirely in the rationals.
std::optional<std::vector<std::pair<Rational, long long>>> rational_eigenvalues(const Mat& a);

// Group actions on the datum. apply_framing_change composes the framing
// with g in GL_r (an isomorphism of the source O^r); conjugate moves the
// quotient basis by h in GL_n. Both throw precondition_error on singular
// input.
QuotPoint apply_framing_change(const QuotPoint& qp, const Mat& g);
QuotPoint conjugate(const QuotPoint& qp, const Mat& h);

QuotPoint direct_sum(const QuotPoint& a, const QuotPoint& b);

// Operator restricted to an invariant subspace, in the coordinates given
// by the canonical basis rows (coefficients read off pivot columns).
Mat restrict_operator(const Mat& op, const Mat& basis_rows, const std::vector<int>& pivots);

}  // namespace qts
