#pragma once

// Dense linear algebra over BigReal: a column-major matrix and Householder QR
// with least-squares helpers. Sizes here are small (tens of columns), so the
// implementation favours clarity over blocking.

#include "polyeig/bigreal.hpp"

#include <span>
#include <vector>

namespace polyeig {

class SingularSystemError : public std::runtime_error {
 public:
  SingularSystemError(const std::string& what, int column)
      : std::runtime_error(what), column_(column) {}
  /// Zero-based index of the first column found dependent on its predecessors.
  int column() const { return column_; }

 private:
  int column_;
};

class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols, int digits);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  BigReal& operator()(int r, int c) { return data_[index(r, c)]; }
  const BigReal& operator()(int r, int c) const { return data_[index(r, c)]; }
  std::span<BigReal> column(int c) {
    return {data_.data() + static_cast<size_t>(c) * rows_, static_cast<size_t>(rows_)};
  }
  std::span<const BigReal> column(int c) const {
    return {data_.data() + static_cast<size_t>(c) * rows_, static_cast<size_t>(rows_)};
  }

 private:
  size_t index(int r, int c) const {
    return static_cast<size_t>(c) * static_cast<size_t>(rows_) + static_cast<size_t>(r);
  }
  int rows_ = 0;
  int cols_ = 0;
  std::vector<BigReal> data_;
};

/// A = Q R for a tall matrix (rows >= cols). Q is kept implicitly as
/// Householder reflectors.
class HouseholderQr {
 public:
  explicit HouseholderQr(Matrix a);

  int rows() const { return qr_.rows(); }
  int cols() const { return qr_.cols(); }
  const BigReal& r(int i, int j) const;

  /// First column whose |R_jj| <= rel_tol * max|R_ii|, or -1.
  int first_dependent_column(const BigReal& rel_tol) const;

  /// Q^T b, length rows().
  std::vector<BigReal> apply_qt(std::span<const BigReal> b) const;
  /// Solves R x = y using the leading cols() entries of y.
  std::vector<BigReal> solve_r(std::span<const BigReal> y) const;
  /// Solves R^T z = y.
  std::vector<BigReal> solve_rt(std::span<const BigReal> y) const;

 private:
  Matrix qr_;
  std::vector<BigReal> diag_;
  std::vector<BigReal> beta_;
};

struct LeastSquaresSolution {
  std::vector<BigReal> x;
  BigReal residual_norm;
};

/// min ||A x - b||_2 by Householder QR at `digits`. Throws SingularSystemError
/// naming the offending column when some |R_jj| falls below
/// 10^-rank_digits of the largest (after column equilibration);
/// rank_digits = 0 means 0.9 * digits.
LeastSquaresSolution least_squares(const Matrix& a, std::span<const BigReal> b, int digits,
                                   int rank_digits = 0);

BigReal norm2(std::span<const BigReal> v);

}  // namespace polyeig
