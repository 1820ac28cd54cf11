#pragma once

#include <memory>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "fdstc/linalg.hpp"

namespace fdstc {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

double to_double(const Rational& q);

// Q(zeta_m) with power basis 1, zeta, ..., zeta^(phi(m)-1).
class CyclotomicField {
 public:
  explicit CyclotomicField(int conductor);

  int conductor() const noexcept { return conductor_; }
  int degree() const noexcept { return degree_; }
  // Coefficients of Phi_m, lowest degree first; monic.
  const std::vector<BigInt>& minimal_polynomial() const noexcept { return phi_; }

  // Reduces a coefficient vector in powers of zeta modulo Phi_m.
  std::vector<Rational> reduce(std::vector<Rational> raw) const;

 private:
  int conductor_;
  int degree_;
  std::vector<BigInt> phi_;
};

using FieldPtr = std::shared_ptr<const CyclotomicField>;

FieldPtr cyclotomic_field(int conductor);
std::vector<BigInt> cyclotomic_polynomial(int m);

class FieldElement {
 public:
  FieldElement(FieldPtr field, std::vector<Rational> coords);

  static FieldElement zero(FieldPtr field);
  static FieldElement one(FieldPtr field);
  static FieldElement rational(FieldPtr field, const Rational& q);
  static FieldElement zeta_power(FieldPtr field, long k);
  static FieldElement from_raw(FieldPtr field, std::vector<Rational> raw);

  const FieldPtr& field() const noexcept { return field_; }
  const std::vector<Rational>& coords() const noexcept { return coords_; }

  bool is_zero() const;
  bool is_rational() const;

  FieldElement operator-() const;
  FieldElement& operator+=(const FieldElement& other);
  FieldElement& operator-=(const FieldElement& other);
  FieldElement& operator*=(const FieldElement& other);
  FieldElement& operator*=(const Rational& q);

  FieldElement inverse() const;

  // Complex value under zeta -> exp(2 pi i j / m).
  cplx embed(int root_index = 1) const;

  friend bool operator==(const FieldElement& a, const FieldElement& b);

 private:
  FieldPtr field_;
  std::vector<Rational> coords_;
};

FieldElement operator+(FieldElement a, const FieldElement& b);
FieldElement operator-(FieldElement a, const FieldElement& b);
FieldElement operator*(const FieldElement& a, const FieldElement& b);
FieldElement operator*(const Rational& q, FieldElement a);
FieldElement operator/(const FieldElement& a, const FieldElement& b);

FieldElement reduce(FieldPtr field, std::vector<Rational> raw);
cplx embed(const FieldElement& x, int root_index);

// The automorphism zeta -> zeta^k of Q(zeta_m), gcd(k, m) = 1.
class GaloisAuto {
 public:
  GaloisAuto(FieldPtr field, int exponent);

  const FieldPtr& field() const noexcept { return field_; }
  int exponent() const noexcept { return exponent_; }
  int order() const;

  GaloisAuto compose(const GaloisAuto& inner) const;
  GaloisAuto power(int p) const;
  FieldElement operator()(const FieldElement& x) const;

 private:
  FieldPtr field_;
  int exponent_;
};

FieldElement apply_galois(const GaloisAuto& sigma, const FieldElement& x);

// Coordinates of x in the given Q-basis of the field.
std::vector<Rational> change_basis(const FieldElement& x, std::span<const FieldElement> basis);
FieldElement from_basis(std::span<const Rational> coords, std::span<const FieldElement> basis);

// Exact determinant of a square matrix over the field (row-major).
FieldElement field_det(std::vector<FieldElement> entries, std::size_t n);

}  // namespace fdstc
