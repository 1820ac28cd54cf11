#pragma once

#include <cstdint>
#include <vector>

#include "fdstc/linalg.hpp"
#include "fdstc/numberfield.hpp"
#include "fdstc/random.hpp"

namespace fdstc::testing {

inline int uniform_int(SplitMix& rng, int lo, int hi) {
  return lo + static_cast<int>(rng.below(static_cast<std::uint64_t>(hi - lo + 1)));
}

inline double uniform_real(SplitMix& rng, double lo, double hi) {
  return lo + (hi - lo) * static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline std::vector<int> random_ints(SplitMix& rng, std::size_t n, int lo, int hi) {
  std::vector<int> v(n);
  for (auto& x : v) x = uniform_int(rng, lo, hi);
  return v;
}

inline std::vector<int> random_nonzero_ints(SplitMix& rng, std::size_t n, int lo, int hi) {
  for (;;) {
    auto v = random_ints(rng, n, lo, hi);
    for (int x : v)
      if (x != 0) return v;
  }
}

inline ComplexMatrix random_matrix(SplitMix& rng, std::size_t rows, std::size_t cols) {
  ComplexMatrix m(rows, cols);
  for (auto& z : m.entries()) z = cplx(uniform_real(rng, -1, 1), uniform_real(rng, -1, 1));
  return m;
}

// Integral coordinates on the power basis.
inline FieldElement random_integral(SplitMix& rng, const FieldPtr& f, int bound = 3) {
  std::vector<Rational> c(static_cast<std::size_t>(f->degree()));
  for (auto& q : c) q = uniform_int(rng, -bound, bound);
  return FieldElement(f, c);
}

// Coordinates p/q with small numerators and denominators.
inline FieldElement random_rational(SplitMix& rng, const FieldPtr& f) {
  std::vector<Rational> c(static_cast<std::size_t>(f->degree()));
  for (auto& q : c) q = Rational(uniform_int(rng, -7, 7), uniform_int(rng, 1, 5));
  return FieldElement(f, c);
}

inline double rel_err(double got, double want) {
  return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

}  // namespace fdstc::testing
