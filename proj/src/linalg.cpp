#include "polyeig/linalg.hpp"

#include <algorithm>
#include <string>

namespace polyeig {

Matrix::Matrix(int rows, int cols, int digits)
    : rows_(rows),
      cols_(cols),
      data_(static_cast<size_t>(rows) * static_cast<size_t>(cols),
            BigReal(0, static_cast<unsigned>(digits))) {
  if (rows < 0 || cols < 0) throw DomainError("negative matrix dimension");
}

BigReal norm2(std::span<const BigReal> v) {
  if (v.empty()) return BigReal(0);
  BigReal scale(0, v[0].precision());
  for (const auto& x : v) scale = std::max(scale, BigReal(abs(x)));
  if (scale == 0) return scale;
  BigReal acc(0, v[0].precision());
  for (const auto& x : v) {
    const BigReal y = x / scale;
    acc += y * y;
  }
  return scale * sqrt(acc);
}

HouseholderQr::HouseholderQr(Matrix a) : qr_(std::move(a)) {
  const int m = qr_.rows();
  const int n = qr_.cols();
  if (m < n) throw DomainError("HouseholderQr needs rows >= cols");
  diag_.reserve(static_cast<size_t>(n));
  beta_.reserve(static_cast<size_t>(n));
  const unsigned prec = n > 0 ? qr_(0, 0).precision() : 10u;
  for (int k = 0; k < n; ++k) {
    auto col = qr_.column(k).subspan(static_cast<size_t>(k));
    const BigReal norm = norm2(col);
    if (norm == 0) {
      diag_.emplace_back(0, prec);
      beta_.emplace_back(0, prec);
      continue;
    }
    const BigReal alpha = col[0] > 0 ? BigReal(-norm) : norm;
    // v = x - alpha e1 overwrites the column; beta = 1 / (v^T v / 2) = 1 / (alpha (alpha - x0)).
    const BigReal beta = 1 / (alpha * (alpha - col[0]));
    col[0] -= alpha;
    for (int j = k + 1; j < n; ++j) {
      auto target = qr_.column(j).subspan(static_cast<size_t>(k));
      BigReal dot(0, prec);
      for (size_t i = 0; i < col.size(); ++i) dot += col[i] * target[i];
      dot *= beta;
      for (size_t i = 0; i < col.size(); ++i) target[i] -= dot * col[i];
    }
    diag_.push_back(alpha);
    beta_.push_back(beta);
  }
}

const BigReal& HouseholderQr::r(int i, int j) const {
  if (i == j) return diag_[static_cast<size_t>(i)];
  return qr_(i, j);
}

int HouseholderQr::first_dependent_column(const BigReal& rel_tol) const {
  BigReal biggest = 0;
  for (const auto& d : diag_) biggest = std::max(biggest, BigReal(abs(d)));
  for (size_t j = 0; j < diag_.size(); ++j) {
    if (abs(diag_[j]) <= rel_tol * biggest) return static_cast<int>(j);
  }
  return -1;
}

std::vector<BigReal> HouseholderQr::apply_qt(std::span<const BigReal> b) const {
  std::vector<BigReal> y(b.begin(), b.end());
  for (int k = 0; k < cols(); ++k) {
    if (beta_[static_cast<size_t>(k)] == 0) continue;
    auto v = qr_.column(k).subspan(static_cast<size_t>(k));
    BigReal dot(0, y[0].precision());
    for (size_t i = 0; i < v.size(); ++i) dot += v[i] * y[static_cast<size_t>(k) + i];
    dot *= beta_[static_cast<size_t>(k)];
    for (size_t i = 0; i < v.size(); ++i) y[static_cast<size_t>(k) + i] -= dot * v[i];
  }
  return y;
}

std::vector<BigReal> HouseholderQr::solve_r(std::span<const BigReal> y) const {
  const int n = cols();
  std::vector<BigReal> x(y.begin(), y.begin() + n);
  for (int i = n - 1; i >= 0; --i) {
    for (int j = i + 1; j < n; ++j) x[static_cast<size_t>(i)] -= r(i, j) * x[static_cast<size_t>(j)];
    x[static_cast<size_t>(i)] /= r(i, i);
  }
  return x;
}

std::vector<BigReal> HouseholderQr::solve_rt(std::span<const BigReal> y) const {
  const int n = cols();
  std::vector<BigReal> z(y.begin(), y.begin() + n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < i; ++j) z[static_cast<size_t>(i)] -= r(j, i) * z[static_cast<size_t>(j)];
    z[static_cast<size_t>(i)] /= r(i, i);
  }
  return z;
}

LeastSquaresSolution least_squares(const Matrix& a, std::span<const BigReal> b, int digits,
                                   int rank_digits) {
  if (static_cast<int>(b.size()) != a.rows()) throw DomainError("least_squares: size mismatch");
  if (a.rows() < a.cols()) {
    throw SingularSystemError("least_squares: fewer equations than unknowns", a.rows());
  }
  PrecisionScope scope(digits);
  Matrix work(a.rows(), a.cols(), digits);
  for (int j = 0; j < a.cols(); ++j) {
    for (int i = 0; i < a.rows(); ++i) work(i, j) = lift(a(i, j), digits);
  }
  std::vector<BigReal> rhs;
  rhs.reserve(b.size());
  for (const auto& v : b) rhs.push_back(lift(v, digits));

  // Column equilibration: QR is scale-equivariant, but the rank test is not.
  std::vector<BigReal> scale(static_cast<size_t>(a.cols()));
  for (int j = 0; j < a.cols(); ++j) {
    scale[static_cast<size_t>(j)] = norm2(work.column(j));
    if (scale[static_cast<size_t>(j)] == 0) {
      throw SingularSystemError("least_squares: column " + std::to_string(j) + " is zero", j);
    }
    for (auto& v : work.column(j)) v /= scale[static_cast<size_t>(j)];
  }

  HouseholderQr qr(std::move(work));
  const int tol_digits = rank_digits > 0 ? rank_digits : digits * 9 / 10;
  const int bad = qr.first_dependent_column(pow(BigReal(10), -tol_digits));
  if (bad >= 0) {
    throw SingularSystemError(
        "least_squares: column " + std::to_string(bad) + " is linearly dependent on earlier columns",
        bad);
  }
  std::vector<BigReal> y = qr.apply_qt(rhs);
  LeastSquaresSolution out;
  out.x = qr.solve_r(y);
  for (size_t j = 0; j < out.x.size(); ++j) out.x[j] /= scale[j];
  out.residual_norm = norm2(std::span<const BigReal>(y).subspan(static_cast<size_t>(a.cols())));
  return out;
}

}  // namespace polyeig
