#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qts/errors.hpp"
#include "qts/rational.hpp"

namespace qts {

// Dense rational matrix, row-major. Zero-row and zero-column shapes are
// legal; they show up as bases of trivial subspaces.
class Mat {
 public:
  Mat() = default;
  Mat(int rows, int cols) : rows_(rows), cols_(cols), e_(std::size_t(rows) * cols) {}

  static Mat identity(int n);
  static Mat from_strings(const std::vector<std::vector<std::string>>& rows);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Rational& operator()(int i, int j) { return e_[std::size_t(i) * cols_ + j]; }
  const Rational& operator()(int i, int j) const { return e_[std::size_t(i) * cols_ + j]; }

  Rational& at(int i, int j);
  const Rational& at(int i, int j) const;

  bool operator==(const Mat&) const = default;
  bool is_zero() const;

  Mat transpose() const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Rational> e_;
};

Mat operator+(const Mat& a, const Mat& b);
Mat operator-(const Mat& a, const Mat& b);
Mat operator-(const Mat& a);
Mat operator*(const Mat& a, const Mat& b);
Mat operator*(const Rational& c, const Mat& a);

Mat hstack(const Mat& a, const Mat& b);
Mat vstack(const Mat& a, const Mat& b);
Mat kron(const Mat& a, const Mat& b);

Mat select_rows(const Mat& a, const std::vector<int>& idx);
Mat select_cols(const Mat& a, const std::vector<int>& idx);

// Row-major flattening as a column vector; with this convention
// vec(P*G*Q) = kron(P, Q^T) * vec(G).
Mat vec_row(const Mat& a);

struct RRef {
  Mat m;
  std::vector<int> pivots;  // pivot column of each nonzero row, increasing
};

// Reduced row echelon form: unit pivots, pivot columns cleared above and
// below, zero rows last.
RRef rref(const Mat& a);

// Fraction-free integer elimination; never materializes big rationals.
long long rank(const Mat& a);

// Kernel basis in free-variable order: one vector per non-pivot column,
// ordered by that column index. Each entry is a cols x 1 column.
std::vector<Mat> nullspace(const Mat& a);
Mat nullspace_mat(const Mat& a);  // same basis packed as columns
long long nullity(const Mat& a);

// One solution of A x = b (b may carry several right-hand columns), with
// free variables pinned to zero; nullopt when inconsistent.
std::optional<Mat> solve(const Mat& a, const Mat& b);

Mat inverse(const Mat& a);  // precondition_error on singular input

// A subspace of Q^n is always handled through its canonical basis: the
// RREF rows of any spanning set, zero rows dropped. Two subspaces are
// equal iff their canonical bases are equal matrices.
Mat row_basis(const Mat& spanning_rows);
Mat row_span_sum(const Mat& a, const Mat& b);
Mat row_span_intersect(const Mat& a, const Mat& b);
bool row_span_contains(const Mat& basis, const Mat& v);

Mat col_basis(const Mat& spanning_cols);
Mat col_span_sum(const Mat& a, const Mat& b);
Mat col_span_intersect(const Mat& a, const Mat& b);

}  // namespace qts
