#include "fdstc/numberfield.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <string>
#include <utility>

#include "fdstc/errors.hpp"

namespace fdstc {

double to_double(const Rational& q) { return q.convert_to<double>(); }

namespace {

long positive_mod(long a, long m) {
  const long r = a % m;
  return r < 0 ? r + m : r;
}

// Exact division of integer polynomials by a monic divisor.
std::vector<BigInt> divide_monic(std::vector<BigInt> num, const std::vector<BigInt>& den) {
  const std::size_t dn = den.size() - 1;
  if (num.size() < den.size()) return {BigInt(0)};
  std::vector<BigInt> quot(num.size() - dn, BigInt(0));
  for (std::size_t i = num.size(); i-- > dn;) {
    const BigInt c = num[i];
    if (c == 0) continue;
    quot[i - dn] = c;
    for (std::size_t j = 0; j <= dn; ++j) num[i - dn + j] -= c * den[j];
  }
  for (std::size_t i = 0; i < dn; ++i)
    if (num[i] != 0) throw NumericalError("cyclotomic_polynomial: inexact division");
  return quot;
}

// Solves a x = b over Q; a is n x n row-major.
std::vector<Rational> solve_rational(std::vector<Rational> a, std::vector<Rational> b,
                                     std::size_t n) {
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot * n + col] == 0) ++pivot;
    if (pivot == n) throw NumericalError("solve_rational: singular system");
    if (pivot != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a[col * n + c], a[pivot * n + c]);
      std::swap(b[col], b[pivot]);
    }
    const Rational p = a[col * n + col];
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r * n + col] == 0) continue;
      const Rational f = a[r * n + col] / p;
      for (std::size_t c = col; c < n; ++c) a[r * n + c] -= f * a[col * n + c];
      b[r] -= f * b[col];
    }
  }
  std::vector<Rational> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a[i * n + i];
  return x;
}

void require_same_field(const FieldElement& a, const FieldElement& b) {
  if (a.field() != b.field() && a.field()->conductor() != b.field()->conductor()) {
    throw ValidationError("field elements belong to different fields");
  }
}

}  // namespace

std::vector<BigInt> cyclotomic_polynomial(int m) {
  if (m < 1) throw ValidationError("cyclotomic_polynomial: conductor must be positive");
  std::vector<BigInt> p(static_cast<std::size_t>(m) + 1, BigInt(0));
  p[0] = -1;
  p[static_cast<std::size_t>(m)] = 1;
  for (int d = 1; d < m; ++d)
    if (m % d == 0) p = divide_monic(std::move(p), cyclotomic_polynomial(d));
  return p;
}

CyclotomicField::CyclotomicField(int conductor) : conductor_(conductor) {
  if (conductor < 3) throw ValidationError("CyclotomicField: conductor must be at least 3");
  phi_ = cyclotomic_polynomial(conductor);
  degree_ = static_cast<int>(phi_.size()) - 1;
}

std::vector<Rational> CyclotomicField::reduce(std::vector<Rational> raw) const {
  const std::size_t n = static_cast<std::size_t>(degree_);
  for (std::size_t i = raw.size(); i-- > n;) {
    const Rational c = raw[i];
    if (c == 0) continue;
    for (std::size_t j = 0; j <= n; ++j) raw[i - n + j] -= c * Rational(phi_[j]);
  }
  raw.resize(n, Rational(0));
  return raw;
}

FieldPtr cyclotomic_field(int conductor) {
  return std::make_shared<const CyclotomicField>(conductor);
}

FieldElement::FieldElement(FieldPtr field, std::vector<Rational> coords)
    : field_(std::move(field)), coords_(std::move(coords)) {
  if (!field_) throw ValidationError("FieldElement: null field");
  if (coords_.size() != static_cast<std::size_t>(field_->degree())) {
    throw ValidationError("FieldElement: expected " + std::to_string(field_->degree()) +
                          " coordinates, got " + std::to_string(coords_.size()));
  }
}

FieldElement FieldElement::zero(FieldPtr field) {
  const auto n = static_cast<std::size_t>(field->degree());
  return FieldElement(std::move(field), std::vector<Rational>(n, Rational(0)));
}

FieldElement FieldElement::one(FieldPtr field) { return rational(std::move(field), Rational(1)); }

FieldElement FieldElement::rational(FieldPtr field, const Rational& q) {
  FieldElement x = zero(std::move(field));
  x.coords_[0] = q;
  return x;
}

FieldElement FieldElement::zeta_power(FieldPtr field, long k) {
  const long m = field->conductor();
  std::vector<Rational> raw(static_cast<std::size_t>(m), Rational(0));
  raw[static_cast<std::size_t>(positive_mod(k, m))] = 1;
  return from_raw(std::move(field), std::move(raw));
}

FieldElement FieldElement::from_raw(FieldPtr field, std::vector<Rational> raw) {
  auto coords = field->reduce(std::move(raw));
  return FieldElement(std::move(field), std::move(coords));
}

bool FieldElement::is_zero() const {
  for (const auto& c : coords_)
    if (c != 0) return false;
  return true;
}

bool FieldElement::is_rational() const {
  for (std::size_t i = 1; i < coords_.size(); ++i)
    if (coords_[i] != 0) return false;
  return true;
}

FieldElement FieldElement::operator-() const {
  FieldElement out = *this;
  for (auto& c : out.coords_) c = -c;
  return out;
}

FieldElement& FieldElement::operator+=(const FieldElement& other) {
  require_same_field(*this, other);
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += other.coords_[i];
  return *this;
}

FieldElement& FieldElement::operator-=(const FieldElement& other) {
  require_same_field(*this, other);
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= other.coords_[i];
  return *this;
}

FieldElement& FieldElement::operator*=(const FieldElement& other) {
  require_same_field(*this, other);
  const std::size_t n = coords_.size();
  std::vector<Rational> raw(2 * n - 1, Rational(0));
  for (std::size_t i = 0; i < n; ++i) {
    if (coords_[i] == 0) continue;
    for (std::size_t j = 0; j < n; ++j)
      if (other.coords_[j] != 0) raw[i + j] += coords_[i] * other.coords_[j];
  }
  coords_ = field_->reduce(std::move(raw));
  return *this;
}

FieldElement& FieldElement::operator*=(const Rational& q) {
  for (auto& c : coords_) c *= q;
  return *this;
}

FieldElement FieldElement::inverse() const {
  if (is_zero()) throw ValidationError("FieldElement::inverse: zero has no inverse");
  const std::size_t n = coords_.size();
  // Column j of the multiplication matrix holds the coordinates of x * zeta^j.
  std::vector<Rational> a(n * n);
  for (std::size_t j = 0; j < n; ++j) {
    const FieldElement col = *this * zeta_power(field_, static_cast<long>(j));
    for (std::size_t i = 0; i < n; ++i) a[i * n + j] = col.coords_[i];
  }
  std::vector<Rational> rhs(n, Rational(0));
  rhs[0] = 1;
  return FieldElement(field_, solve_rational(std::move(a), std::move(rhs), n));
}

cplx FieldElement::embed(int root_index) const {
  const int m = field_->conductor();
  if (std::gcd(positive_mod(root_index, m), static_cast<long>(m)) != 1) {
    throw ValidationError("embed: root index must be coprime to the conductor");
  }
  cplx s = 0.0;
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (coords_[i] == 0) continue;
    const long e = positive_mod(static_cast<long>(i) * root_index, m);
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(e) / m;
    s += to_double(coords_[i]) * cplx(std::cos(angle), std::sin(angle));
  }
  return s;
}

bool operator==(const FieldElement& a, const FieldElement& b) {
  return a.field_->conductor() == b.field_->conductor() && a.coords_ == b.coords_;
}

FieldElement operator+(FieldElement a, const FieldElement& b) { return a += b; }
FieldElement operator-(FieldElement a, const FieldElement& b) { return a -= b; }
FieldElement operator*(const FieldElement& a, const FieldElement& b) {
  FieldElement out = a;
  return out *= b;
}
FieldElement operator*(const Rational& q, FieldElement a) { return a *= q; }
FieldElement operator/(const FieldElement& a, const FieldElement& b) { return a * b.inverse(); }

FieldElement reduce(FieldPtr field, std::vector<Rational> raw) {
  return FieldElement::from_raw(std::move(field), std::move(raw));
}

cplx embed(const FieldElement& x, int root_index) { return x.embed(root_index); }

GaloisAuto::GaloisAuto(FieldPtr field, int exponent) : field_(std::move(field)) {
  const int m = field_->conductor();
  exponent_ = static_cast<int>(positive_mod(exponent, m));
  if (std::gcd(exponent_, m) != 1) {
    throw ValidationError("GaloisAuto: exponent " + std::to_string(exponent) +
                          " is not coprime to " + std::to_string(m));
  }
}

int GaloisAuto::order() const {
  const int m = field_->conductor();
  int p = 1;
  long k = exponent_;
  while (k % m != 1 % m) {
    k = (k * exponent_) % m;
    ++p;
  }
  return p;
}

GaloisAuto GaloisAuto::compose(const GaloisAuto& inner) const {
  const long m = field_->conductor();
  return GaloisAuto(field_, static_cast<int>((static_cast<long>(exponent_) * inner.exponent_) % m));
}

GaloisAuto GaloisAuto::power(int p) const {
  if (p < 0) throw ValidationError("GaloisAuto::power: negative power");
  GaloisAuto out(field_, 1);
  for (int i = 0; i < p; ++i) out = compose(out);
  return out;
}

FieldElement GaloisAuto::operator()(const FieldElement& x) const {
  if (x.field()->conductor() != field_->conductor()) {
    throw ValidationError("GaloisAuto: element from a different field");
  }
  const long m = field_->conductor();
  std::vector<Rational> raw(static_cast<std::size_t>(m), Rational(0));
  for (std::size_t i = 0; i < x.coords().size(); ++i)
    raw[static_cast<std::size_t>((static_cast<long>(i) * exponent_) % m)] += x.coords()[i];
  return FieldElement::from_raw(x.field(), std::move(raw));
}

FieldElement apply_galois(const GaloisAuto& sigma, const FieldElement& x) { return sigma(x); }

std::vector<Rational> change_basis(const FieldElement& x, std::span<const FieldElement> basis) {
  const std::size_t n = x.coords().size();
  if (basis.size() != n) throw ValidationError("change_basis: basis has the wrong length");
  std::vector<Rational> a(n * n);
  for (std::size_t j = 0; j < n; ++j) {
    require_same_field(x, basis[j]);
    for (std::size_t i = 0; i < n; ++i) a[i * n + j] = basis[j].coords()[i];
  }
  try {
    return solve_rational(std::move(a), x.coords(), n);
  } catch (const NumericalError&) {
    throw ValidationError("change_basis: basis elements are linearly dependent");
  }
}

FieldElement from_basis(std::span<const Rational> coords, std::span<const FieldElement> basis) {
  if (coords.size() != basis.size() || basis.empty()) {
    throw ValidationError("from_basis: coordinate count does not match basis");
  }
  FieldElement x = FieldElement::zero(basis[0].field());
  for (std::size_t i = 0; i < coords.size(); ++i) x += coords[i] * basis[i];
  return x;
}

FieldElement field_det(std::vector<FieldElement> a, std::size_t n) {
  if (a.size() != n * n || n == 0) throw ValidationError("field_det: not a square matrix");
  FieldElement d = FieldElement::one(a[0].field());
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot * n + col].is_zero()) ++pivot;
    if (pivot == n) return FieldElement::zero(a[0].field());
    if (pivot != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a[col * n + c], a[pivot * n + c]);
      d = -d;
    }
    const FieldElement p = a[col * n + col];
    d *= p;
    const FieldElement pinv = p.inverse();
    for (std::size_t r = col + 1; r < n; ++r) {
      if (a[r * n + col].is_zero()) continue;
      const FieldElement f = a[r * n + col] * pinv;
      for (std::size_t c = col + 1; c < n; ++c) a[r * n + c] -= f * a[col * n + c];
    }
  }
  return d;
}

}  // namespace fdstc
