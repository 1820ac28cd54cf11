#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace fdstc {

using cplx = std::complex<double>;
using RealVector = std::vector<double>;

// Relative threshold under which a quantity is treated as an exact zero.
inline constexpr double kZeroTolerance = 1e-9;

class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries);
  ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows);

  static ComplexMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  cplx& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const cplx& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  std::span<const cplx> entries() const noexcept { return data_; }
  std::span<cplx> entries() noexcept { return data_; }

  ComplexMatrix adjoint() const;
  ComplexMatrix conj() const;
  ComplexMatrix transpose() const;
  cplx trace() const;
  double frobenius_norm() const;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(cplx s);

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(cplx s, ComplexMatrix a);

// Largest entrywise modulus of a - b.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

class RealMatrix {
 public:
  RealMatrix() = default;
  RealMatrix(std::size_t rows, std::size_t cols);
  RealMatrix(std::size_t rows, std::size_t cols, std::vector<double> entries);
  RealMatrix(std::initializer_list<std::initializer_list<double>> rows);

  static RealMatrix identity(std::size_t n);
  static RealMatrix from_columns(const std::vector<RealVector>& columns);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  std::span<const double> entries() const noexcept { return data_; }

  RealVector column(std::size_t c) const;
  RealMatrix transpose() const;

  friend bool operator==(const RealMatrix&, const RealMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

RealMatrix operator*(const RealMatrix& a, const RealMatrix& b);
RealVector operator*(const RealMatrix& a, std::span<const double> x);

// Row-major (Re, Im) interleaving of the entries.
RealVector realify(const ComplexMatrix& x);
ComplexMatrix complexify(std::span<const double> v, std::size_t rows, std::size_t cols);

// Re Tr(A B^H), equal to the dot product of the realified matrices.
double frob_inner(const ComplexMatrix& a, const ComplexMatrix& b);

double dot(std::span<const double> a, std::span<const double> b);
double norm(std::span<const double> a);
double squared_distance(std::span<const double> a, std::span<const double> b);

// |value| <= tol * scale, with scale floored at the smallest normal double.
bool negligible(double value, double scale, double tol = kZeroTolerance);

struct QrFactors {
  RealMatrix q;  // rows x cols, orthonormal columns
  RealMatrix r;  // cols x cols, upper triangular with nonnegative diagonal
};

// Modified Gram-Schmidt in column order. Throws NumericalError when a column
// is dependent on its predecessors up to rank_tolerance.
QrFactors qr_decompose(const RealMatrix& b, double rank_tolerance = 1e-10);

cplx det(const ComplexMatrix& x);
double det(const RealMatrix& x);
ComplexMatrix inverse(const ComplexMatrix& x);

}  // namespace fdstc
