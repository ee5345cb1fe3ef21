#include "qts/matrix.hpp"

#include <algorithm>

namespace qts {

namespace {

void check_same_shape(const Mat& a, const Mat& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw dim_error(std::string(op) + ": shapes " + std::to_string(a.rows()) + "x" +
                    std::to_string(a.cols()) + " and " + std::to_string(b.rows()) + "x" +
                    std::to_string(b.cols()) + " disagree");
}

}  // namespace

Mat Mat::identity(int n) {
  Mat m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Mat Mat::from_strings(const std::vector<std::vector<std::string>>& rows) {
  const int r = int(rows.size());
  const int c = r ? int(rows[0].size()) : 0;
  Mat m(r, c);
  for (int i = 0; i < r; ++i) {
    if (int(rows[i].size()) != c) throw dim_error("from_strings: ragged rows");
    for (int j = 0; j < c; ++j) m(i, j) = parse_rational(rows[i][j]);
  }
  return m;
}

Rational& Mat::at(int i, int j) {
  if (i < 0 || i >= rows_ || j < 0 || j >= cols_)
    throw dim_error("at(" + std::to_string(i) + "," + std::to_string(j) + ") outside " +
                    std::to_string(rows_) + "x" + std::to_string(cols_));
  return (*this)(i, j);
}

const Rational& Mat::at(int i, int j) const { return const_cast<Mat*>(this)->at(i, j); }

bool Mat::is_zero() const {
  return std::all_of(e_.begin(), e_.end(), [](const Rational& x) { return x == 0; });
}

Mat Mat::transpose() const {
  Mat t(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Mat operator+(const Mat& a, const Mat& b) {
  check_same_shape(a, b, "add");
  Mat r(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r(i, j) = a(i, j) + b(i, j);
  return r;
}

Mat operator-(const Mat& a, const Mat& b) {
  check_same_shape(a, b, "sub");
  Mat r(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r(i, j) = a(i, j) - b(i, j);
  return r;
}

Mat operator-(const Mat& a) {
  Mat r(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r(i, j) = -a(i, j);
  return r;
}

Mat operator*(const Mat& a, const Mat& b) {
  if (a.cols() != b.rows())
    throw dim_error("mul: " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                    " times " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  Mat r(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      const Rational& aik = a(i, k);
      if (aik == 0) continue;
      for (int j = 0; j < b.cols(); ++j) {
        if (b(k, j) == 0) continue;
        r(i, j) += aik * b(k, j);
      }
    }
  return r;
}

Mat operator*(const Rational& c, const Mat& a) {
  Mat r(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r(i, j) = c * a(i, j);
  return r;
}

Mat hstack(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows()) throw dim_error("hstack: row counts disagree");
  Mat r(a.rows(), a.cols() + b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) r(i, j) = a(i, j);
    for (int j = 0; j < b.cols(); ++j) r(i, a.cols() + j) = b(i, j);
  }
  return r;
}

Mat vstack(const Mat& a, const Mat& b) {
  if (a.cols() != b.cols() && a.rows() != 0 && b.rows() != 0)
    throw dim_error("vstack: column counts disagree");
  const int cols = a.rows() ? a.cols() : b.cols();
  Mat r(a.rows() + b.rows(), cols);
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < cols; ++j) r(i, j) = a(i, j);
  for (int i = 0; i < b.rows(); ++i)
    for (int j = 0; j < cols; ++j) r(a.rows() + i, j) = b(i, j);
  return r;
}

Mat kron(const Mat& a, const Mat& b) {
  Mat r(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) {
      if (a(i, j) == 0) continue;
      for (int k = 0; k < b.rows(); ++k)
        for (int l = 0; l < b.cols(); ++l) {
          if (b(k, l) == 0) continue;
          r(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
        }
    }
  return r;
}

Mat select_rows(const Mat& a, const std::vector<int>& idx) {
  Mat r(int(idx.size()), a.cols());
  for (int i = 0; i < int(idx.size()); ++i) {
    if (idx[i] < 0 || idx[i] >= a.rows()) throw dim_error("select_rows: index out of range");
    for (int j = 0; j < a.cols(); ++j) r(i, j) = a(idx[i], j);
  }
  return r;
}

Mat select_cols(const Mat& a, const std::vector<int>& idx) {
  Mat r(a.rows(), int(idx.size()));
  for (int j = 0; j < int(idx.size()); ++j) {
    if (idx[j] < 0 || idx[j] >= a.cols()) throw dim_error("select_cols: index out of range");
    for (int i = 0; i < a.rows(); ++i) r(i, j) = a(i, idx[j]);
  }
  return r;
}

Mat vec_row(const Mat& a) {
  Mat v(a.rows() * a.cols(), 1);
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) v(i * a.cols() + j, 0) = a(i, j);
  return v;
}

RRef rref(const Mat& a) {
  RRef out{a, {}};
  Mat& m = out.m;
  int row = 0;
  for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
    int piv = -1;
    for (int i = row; i < m.rows(); ++i)
      if (m(i, col) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != row)
      for (int j = 0; j < m.cols(); ++j) std::swap(m(piv, j), m(row, j));
    const Rational inv = Rational(1) / m(row, col);
    for (int j = col; j < m.cols(); ++j) m(row, j) *= inv;
    for (int i = 0; i < m.rows(); ++i) {
      if (i == row || m(i, col) == 0) continue;
      const Rational f = m(i, col);
      for (int j = col; j < m.cols(); ++j) m(i, j) -= f * m(row, j);
    }
    out.pivots.push_back(col);
    ++row;
  }
  return out;
}

long long rank(const Mat& a) {
  const int rows = a.rows(), cols = a.cols();
  if (rows == 0 || cols == 0) return 0;
  // Row-scale to integers, then Bareiss: intermediate entries are minors
  // of the scaled matrix, so their size stays polynomially bounded.
  std::vector<std::vector<Int>> w(rows, std::vector<Int>(cols));
  for (int i = 0; i < rows; ++i) {
    Int l = 1;
    for (int j = 0; j < cols; ++j) l = lcm(l, Int(denominator(a(i, j))));
    for (int j = 0; j < cols; ++j) {
      const Rational s = Rational(l) * a(i, j);
      w[i][j] = numerator(s);
    }
  }
  Int prev = 1;
  int rk = 0;
  for (int col = 0; col < cols && rk < rows; ++col) {
    int piv = -1;
    for (int i = rk; i < rows; ++i)
      if (w[i][col] != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != rk) std::swap(w[piv], w[rk]);
    // The update runs over every lower row, zero pivot-column entry or not;
    // skipping rows would break exactness of the division by prev.
    for (int i = rk + 1; i < rows; ++i) {
      for (int j = col + 1; j < cols; ++j)
        w[i][j] = (w[rk][col] * w[i][j] - w[i][col] * w[rk][j]) / prev;
      w[i][col] = 0;
    }
    prev = w[rk][col];
    ++rk;
  }
  return rk;
}

std::vector<Mat> nullspace(const Mat& a) {
  const RRef r = rref(a);
  std::vector<bool> is_pivot(a.cols(), false);
  for (int p : r.pivots) is_pivot[p] = true;
  std::vector<Mat> basis;
  for (int f = 0; f < a.cols(); ++f) {
    if (is_pivot[f]) continue;
    Mat v(a.cols(), 1);
    v(f, 0) = 1;
    for (int k = 0; k < int(r.pivots.size()); ++k) v(r.pivots[k], 0) = -r.m(k, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

Mat nullspace_mat(const Mat& a) {
  const std::vector<Mat> basis = nullspace(a);
  Mat m(a.cols(), int(basis.size()));
  for (int j = 0; j < int(basis.size()); ++j)
    for (int i = 0; i < a.cols(); ++i) m(i, j) = basis[j](i, 0);
  return m;
}

long long nullity(const Mat& a) { return a.cols() - rank(a); }

std::optional<Mat> solve(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows()) throw dim_error("solve: row counts disagree");
  const RRef r = rref(hstack(a, b));
  for (int p : r.pivots)
    if (p >= a.cols()) return std::nullopt;
  Mat x(a.cols(), b.cols());
  for (int k = 0; k < int(r.pivots.size()); ++k)
    for (int j = 0; j < b.cols(); ++j) x(r.pivots[k], j) = r.m(k, a.cols() + j);
  return x;
}

Mat inverse(const Mat& a) {
  if (a.rows() != a.cols()) throw dim_error("inverse: matrix not square");
  const int n = a.rows();
  const RRef r = rref(hstack(a, Mat::identity(n)));
  if (int(r.pivots.size()) != n || (n > 0 && r.pivots[n - 1] != n - 1))
    throw precondition_error("inverse: singular matrix");
  std::vector<int> right(n);
  for (int j = 0; j < n; ++j) right[j] = n + j;
  return select_cols(r.m, right);
}

Mat row_basis(const Mat& spanning_rows) {
  const RRef r = rref(spanning_rows);
  std::vector<int> keep(r.pivots.size());
  for (int i = 0; i < int(r.pivots.size()); ++i) keep[i] = i;
  return select_rows(r.m, keep);
}

Mat row_span_sum(const Mat& a, const Mat& b) { return row_basis(vstack(a, b)); }

Mat row_span_intersect(const Mat& a, const Mat& b) {
  if (a.cols() != b.cols()) throw dim_error("row_span_intersect: ambient dims disagree");
  if (a.rows() == 0 || b.rows() == 0) return Mat(0, a.cols());
  // Kernel vectors (x; y) of [a^T | -b^T] satisfy x^T a = y^T b.
  const Mat sys = hstack(a.transpose(), -b.transpose());
  const std::vector<Mat> ker = nullspace(sys);
  Mat gens(int(ker.size()), a.cols());
  for (int k = 0; k < int(ker.size()); ++k)
    for (int j = 0; j < a.cols(); ++j) {
      Rational s = 0;
      for (int i = 0; i < a.rows(); ++i) s += ker[k](i, 0) * a(i, j);
      gens(k, j) = s;
    }
  return row_basis(gens);
}

bool row_span_contains(const Mat& basis, const Mat& v) {
  if (v.rows() != 1 || v.cols() != basis.cols()) throw dim_error("row_span_contains: v not a row");
  return row_span_sum(basis, v).rows() == basis.rows();
}

Mat col_basis(const Mat& spanning_cols) { return row_basis(spanning_cols.transpose()).transpose(); }

Mat col_span_sum(const Mat& a, const Mat& b) {
  return row_span_sum(a.transpose(), b.transpose()).transpose();
}

Mat col_span_intersect(const Mat& a, const Mat& b) {
  return row_span_intersect(a.transpose(), b.transpose()).transpose();
}

}  // namespace qts
