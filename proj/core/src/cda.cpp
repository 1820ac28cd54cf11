#include "fdstc/cda.hpp"

#include <cmath>
#include <string>

#include "fdstc/errors.hpp"

namespace fdstc {

CyclicAlgebraSpec::CyclicAlgebraSpec(FieldPtr field, int sigma_exponent, int index,
                                     Rational gamma)
    : field_(std::move(field)), sigma_(field_, sigma_exponent), index_(index),
      gamma_(std::move(gamma)) {
  if (index_ < 1) throw ValidationError("CyclicAlgebraSpec: index must be positive");
  if (field_->degree() % index_ != 0) {
    throw ValidationError("CyclicAlgebraSpec: index does not divide the field degree");
  }
  if (sigma_.order() != index_) {
    throw ValidationError("CyclicAlgebraSpec: sigma has order " + std::to_string(sigma_.order()) +
                          ", expected " + std::to_string(index_));
  }
  if (gamma_ == 0) throw ValidationError("CyclicAlgebraSpec: gamma must be nonzero");
}

CyclicAlgebraSpec alamouti_algebra() {
  return CyclicAlgebraSpec(cyclotomic_field(4), 3, 2, Rational(-1));
}

CyclicAlgebraSpec mido_algebra() {
  return CyclicAlgebraSpec(cyclotomic_field(5), 3, 4, Rational(-8, 9));
}

CyclicAlgebraSpec six_antenna_algebra() {
  return CyclicAlgebraSpec(cyclotomic_field(7), 3, 6, Rational(-3, 4));
}

namespace {

void check_coefficients(const CyclicAlgebraSpec& alg, std::span<const FieldElement> x) {
  if (x.size() != static_cast<std::size_t>(alg.index())) {
    throw ValidationError("left_regular: expected " + std::to_string(alg.index()) +
                          " coefficients, got " + std::to_string(x.size()));
  }
  for (const auto& e : x)
    if (e.field()->conductor() != alg.field()->conductor())
      throw ValidationError("left_regular: coefficient outside the maximal subfield");
}

}  // namespace

std::vector<FieldElement> left_regular_exact(const CyclicAlgebraSpec& alg,
                                             std::span<const FieldElement> x) {
  check_coefficients(alg, x);
  const int n = alg.index();
  std::vector<FieldElement> out;
  out.reserve(static_cast<std::size_t>(n * n));
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      FieldElement e = alg.sigma().power(c)(x[static_cast<std::size_t>(((r - c) % n + n) % n)]);
      if (r < c) e *= alg.gamma();
      out.push_back(std::move(e));
    }
  return out;
}

ComplexMatrix left_regular(const CyclicAlgebraSpec& alg, std::span<const FieldElement> x) {
  const auto exact = left_regular_exact(alg, x);
  const auto n = static_cast<std::size_t>(alg.index());
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n * n; ++i) m.entries()[i] = exact[i].embed(1);
  return m;
}

FieldElement exact_reduced_norm(const CyclicAlgebraSpec& alg, std::span<const FieldElement> x) {
  return field_det(left_regular_exact(alg, x), static_cast<std::size_t>(alg.index()));
}

ComplexMatrix Quaternionizer::conjugator() const {
  const RealMatrix bp = balance * permutation;
  ComplexMatrix out(bp.rows(), bp.cols());
  for (std::size_t r = 0; r < bp.rows(); ++r)
    for (std::size_t c = 0; c < bp.cols(); ++c) out(r, c) = bp(r, c);
  return out;
}

Quaternionizer build_quaternionizer(int n_t, const Rational& gamma) {
  if (n_t < 2 || n_t % 2 != 0) throw ValidationError("build_quaternionizer: n_t must be even");
  if (gamma >= 0) throw ValidationError("build_quaternionizer: gamma must be negative");
  const auto n = static_cast<std::size_t>(n_t);
  Quaternionizer q{RealMatrix(n, n), RealMatrix(n, n)};
  const double g = std::abs(to_double(gamma));
  for (std::size_t i = 1; i <= n; ++i) {
    const std::size_t j = (i % 2 == 1) ? (i + 1) / 2 : (i + n) / 2;
    q.permutation(i - 1, j - 1) = 1.0;
    q.balance(i - 1, i - 1) = (i % 2 == 1) ? std::sqrt(g) : g;
  }
  return q;
}

ComplexMatrix quaternionize(const ComplexMatrix& x, const Quaternionizer& q) {
  if (!x.square() || x.rows() != q.permutation.rows()) {
    throw ValidationError("quaternionize: matrix size does not match the quaternionizer");
  }
  const ComplexMatrix c = q.conjugator();
  return c * x * inverse(c);
}

bool is_alamouti_blocks(const ComplexMatrix& x, double tol) {
  if (x.rows() % 2 != 0 || x.cols() % 2 != 0) {
    throw ValidationError("is_alamouti_blocks: dimensions must be even");
  }
  for (std::size_t r = 0; r < x.rows(); r += 2)
    for (std::size_t c = 0; c < x.cols(); c += 2) {
      const cplx a = x(r, c), b = x(r, c + 1), cc = x(r + 1, c), d = x(r + 1, c + 1);
      const double scale = std::sqrt(std::norm(a) + std::norm(b) + std::norm(cc) + std::norm(d));
      if (scale == 0.0) continue;
      if (std::abs(d - std::conj(a)) > tol * scale) return false;
      if (std::abs(cc + std::conj(b)) > tol * scale) return false;
    }
  return true;
}

ReducedNormCheck reduced_norm_check(const CyclicAlgebraSpec& alg,
                                    std::span<const FieldElement> x) {
  const cplx d = det(left_regular(alg, x));
  const double mag = std::abs(d);
  BigInt den_power = 1;
  for (int i = 1; i < alg.index(); ++i) den_power *= denominator(alg.gamma());
  const double scaled = d.real() * den_power.convert_to<double>();
  const bool real = std::abs(d.imag()) <= 1e-8 * std::max(mag, 1.0);
  const bool integral = std::abs(scaled - std::round(scaled)) <= 1e-8 * std::max(1.0, std::abs(scaled));
  return {d, real && integral};
}

}  // namespace fdstc
