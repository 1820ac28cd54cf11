#pragma once

#include <span>
#include <vector>

#include "fdstc/linalg.hpp"
#include "fdstc/numberfield.hpp"

namespace fdstc {

// (E/F, sigma, gamma) with E cyclotomic, sigma of order n on E and gamma in Q.
class CyclicAlgebraSpec {
 public:
  CyclicAlgebraSpec(FieldPtr field, int sigma_exponent, int index, Rational gamma);

  const FieldPtr& field() const noexcept { return field_; }
  const GaloisAuto& sigma() const noexcept { return sigma_; }
  int index() const noexcept { return index_; }
  const Rational& gamma() const noexcept { return gamma_; }
  int center_degree() const noexcept { return field_->degree() / index_; }

 private:
  FieldPtr field_;
  GaloisAuto sigma_;
  int index_;
  Rational gamma_;
};

// Q(i)/Q, conjugation, gamma = -1: the Alamouti algebra.
CyclicAlgebraSpec alamouti_algebra();
// Q(zeta_5)/Q, zeta -> zeta^3, gamma = -8/9.
CyclicAlgebraSpec mido_algebra();
// Q(zeta_7)/Q, zeta -> zeta^3, gamma = -3/4.
CyclicAlgebraSpec six_antenna_algebra();

// Entry (r, c) is gamma^[r < c] * sigma^c(x[(r - c) mod n]), canonically embedded.
ComplexMatrix left_regular(const CyclicAlgebraSpec& alg, std::span<const FieldElement> x);
std::vector<FieldElement> left_regular_exact(const CyclicAlgebraSpec& alg,
                                             std::span<const FieldElement> x);
// Exact reduced norm: determinant of the left-regular matrix over E.
FieldElement exact_reduced_norm(const CyclicAlgebraSpec& alg, std::span<const FieldElement> x);

struct Quaternionizer {
  RealMatrix permutation;
  RealMatrix balance;
  ComplexMatrix conjugator() const;  // balance * permutation
};

Quaternionizer build_quaternionizer(int n_t, const Rational& gamma);
ComplexMatrix quaternionize(const ComplexMatrix& x, const Quaternionizer& q);

// Every 2x2 block [[a, b], [c, d]] satisfies d = conj(a), c = -conj(b).
bool is_alamouti_blocks(const ComplexMatrix& x, double tol = kZeroTolerance);

struct ReducedNormCheck {
  cplx det;
  bool rational;
};

ReducedNormCheck reduced_norm_check(const CyclicAlgebraSpec& alg, std::span<const FieldElement> x);

}  // namespace fdstc
