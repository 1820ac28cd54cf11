#include "fdstc/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "fdstc/errors.hpp"

namespace fdstc {

namespace {

void require_same_shape(std::size_t r1, std::size_t c1, std::size_t r2, std::size_t c2,
                        const char* what) {
  if (r1 != r2 || c1 != c2) {
    throw ValidationError(std::string(what) + ": shape mismatch " + std::to_string(r1) + "x" +
                          std::to_string(c1) + " vs " + std::to_string(r2) + "x" +
                          std::to_string(c2));
  }
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows * cols) {
    throw ValidationError("ComplexMatrix: expected " + std::to_string(rows * cols) +
                          " entries, got " + std::to_string(data_.size()));
  }
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw ValidationError("ComplexMatrix: ragged initializer");
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
  return out;
}

ComplexMatrix ComplexMatrix::conj() const {
  ComplexMatrix out = *this;
  for (auto& z : out.data_) z = std::conj(z);
  return out;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
  return out;
}

cplx ComplexMatrix::trace() const {
  if (!square()) throw ValidationError("trace: matrix is not square");
  cplx t = 0.0;
  for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const auto& z : data_) s += std::norm(z);
  return std::sqrt(s);
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  require_same_shape(rows_, cols_, other.rows_, other.cols_, "matrix sum");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  require_same_shape(rows_, cols_, other.rows_, other.cols_, "matrix difference");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx s) {
  for (auto& z : data_) z *= s;
  return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    throw ValidationError("matrix product: inner dimensions " + std::to_string(a.cols()) +
                          " and " + std::to_string(b.rows()) + " differ");
  }
  ComplexMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const cplx aik = a(i, k);
      if (aik == cplx{}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  return out;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a.rows(), a.cols(), b.rows(), b.cols(), "max_abs_diff");
  double m = 0.0;
  for (std::size_t i = 0; i < a.entries().size(); ++i)
    m = std::max(m, std::abs(a.entries()[i] - b.entries()[i]));
  return m;
}

RealMatrix::RealMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

RealMatrix::RealMatrix(std::size_t rows, std::size_t cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows * cols) {
    throw ValidationError("RealMatrix: expected " + std::to_string(rows * cols) +
                          " entries, got " + std::to_string(data_.size()));
  }
}

RealMatrix::RealMatrix(std::initializer_list<std::initializer_list<double>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw ValidationError("RealMatrix: ragged initializer");
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

RealMatrix RealMatrix::identity(std::size_t n) {
  RealMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

RealMatrix RealMatrix::from_columns(const std::vector<RealVector>& columns) {
  if (columns.empty()) return {};
  const std::size_t rows = columns.front().size();
  RealMatrix m(rows, columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c].size() != rows) throw ValidationError("from_columns: ragged columns");
    for (std::size_t r = 0; r < rows; ++r) m(r, c) = columns[c][r];
  }
  return m;
}

RealVector RealMatrix::column(std::size_t c) const {
  RealVector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

RealMatrix RealMatrix::transpose() const {
  RealMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
  return out;
}

RealMatrix operator*(const RealMatrix& a, const RealMatrix& b) {
  if (a.cols() != b.rows()) throw ValidationError("matrix product: inner dimensions differ");
  RealMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  return out;
}

RealVector operator*(const RealMatrix& a, std::span<const double> x) {
  if (a.cols() != x.size()) throw ValidationError("matrix-vector product: dimension mismatch");
  RealVector out(a.rows(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * x[j];
    out[i] = s;
  }
  return out;
}

RealVector realify(const ComplexMatrix& x) {
  RealVector v;
  v.reserve(2 * x.entries().size());
  for (const auto& z : x.entries()) {
    v.push_back(z.real());
    v.push_back(z.imag());
  }
  return v;
}

ComplexMatrix complexify(std::span<const double> v, std::size_t rows, std::size_t cols) {
  if (v.size() != 2 * rows * cols) throw ValidationError("complexify: length mismatch");
  ComplexMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows * cols; ++i) m.entries()[i] = cplx(v[2 * i], v[2 * i + 1]);
  return m;
}

double frob_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a.rows(), a.cols(), b.rows(), b.cols(), "frob_inner");
  double s = 0.0;
  for (std::size_t i = 0; i < a.entries().size(); ++i) {
    const cplx x = a.entries()[i];
    const cplx y = b.entries()[i];
    s += x.real() * y.real() + x.imag() * y.imag();
  }
  return s;
}

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw ValidationError("dot: length mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

double squared_distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw ValidationError("squared_distance: length mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

bool negligible(double value, double scale, double tol) {
  const double floor = std::numeric_limits<double>::min();
  return std::abs(value) <= tol * std::max(std::abs(scale), floor);
}

QrFactors qr_decompose(const RealMatrix& b, double rank_tolerance) {
  const std::size_t m = b.rows();
  const std::size_t k = b.cols();
  if (k > m) throw ValidationError("qr_decompose: more columns than rows");
  QrFactors out{RealMatrix(m, k), RealMatrix(k, k)};
  std::vector<RealVector> q(k);
  for (std::size_t j = 0; j < k; ++j) {
    RealVector v = b.column(j);
    const double original = norm(v);
    for (std::size_t i = 0; i < j; ++i) {
      const double rij = dot(q[i], v);
      out.r(i, j) = rij;
      for (std::size_t t = 0; t < m; ++t) v[t] -= rij * q[i][t];
    }
    const double rjj = norm(v);
    if (original == 0.0 || rjj <= rank_tolerance * original) {
      throw NumericalError("qr_decompose: column " + std::to_string(j + 1) +
                           " is linearly dependent on earlier columns");
    }
    out.r(j, j) = rjj;
    for (auto& t : v) t /= rjj;
    q[j] = std::move(v);
  }
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t t = 0; t < m; ++t) out.q(t, j) = q[j][t];
  return out;
}

namespace {

// In-place LU with partial pivoting; returns the determinant.
template <class T>
T lu_det(std::vector<T> a, std::size_t n) {
  T d = T(1.0);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    double best = std::abs(a[col * n + col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double v = std::abs(a[r * n + col]);
      if (v > best) {
        best = v;
        pivot = r;
      }
    }
    if (best == 0.0) return T(0.0);
    if (pivot != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a[col * n + c], a[pivot * n + c]);
      d = -d;
    }
    const T p = a[col * n + col];
    d *= p;
    for (std::size_t r = col + 1; r < n; ++r) {
      const T f = a[r * n + col] / p;
      if (f == T(0.0)) continue;
      for (std::size_t c = col + 1; c < n; ++c) a[r * n + c] -= f * a[col * n + c];
    }
  }
  return d;
}

}  // namespace

cplx det(const ComplexMatrix& x) {
  if (!x.square()) throw ValidationError("det: matrix is not square");
  return lu_det(std::vector<cplx>(x.entries().begin(), x.entries().end()), x.rows());
}

double det(const RealMatrix& x) {
  if (x.rows() != x.cols()) throw ValidationError("det: matrix is not square");
  return lu_det(std::vector<double>(x.entries().begin(), x.entries().end()), x.rows());
}

ComplexMatrix inverse(const ComplexMatrix& x) {
  if (!x.square()) throw ValidationError("inverse: matrix is not square");
  const std::size_t n = x.rows();
  ComplexMatrix a = x;
  ComplexMatrix inv = ComplexMatrix::identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a(r, col)) > std::abs(a(pivot, col))) pivot = r;
    if (std::abs(a(pivot, col)) == 0.0) throw NumericalError("inverse: matrix is singular");
    for (std::size_t c = 0; c < n; ++c) {
      std::swap(a(col, c), a(pivot, c));
      std::swap(inv(col, c), inv(pivot, c));
    }
    const cplx p = a(col, col);
    for (std::size_t c = 0; c < n; ++c) {
      a(col, c) /= p;
      inv(col, c) /= p;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const cplx f = a(r, col);
      if (f == cplx{}) continue;
      for (std::size_t c = 0; c < n; ++c) {
        a(r, c) -= f * a(col, c);
        inv(r, c) -= f * inv(col, c);
      }
    }
  }
  return inv;
}

}  // namespace fdstc
