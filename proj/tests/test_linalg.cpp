#include <doctest.h>

#include <Eigen/Dense>

#include <cmath>

#include "fdstc/codebook.hpp"
#include "fdstc/errors.hpp"
#include "fdstc/linalg.hpp"
#include "support.hpp"

using namespace fdstc;
using fdstc::testing::random_matrix;
using fdstc::testing::rel_err;
using fdstc::testing::uniform_real;

namespace {

Eigen::MatrixXcd to_eigen(const ComplexMatrix& x) {
  Eigen::MatrixXcd m(x.rows(), x.cols());
  for (std::size_t r = 0; r < x.rows(); ++r)
    for (std::size_t c = 0; c < x.cols(); ++c) m(r, c) = x(r, c);
  return m;
}

RealMatrix random_real(SplitMix& rng, std::size_t rows, std::size_t cols) {
  RealMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = uniform_real(rng, -1, 1);
  return m;
}

}  // namespace

TEST_SUITE("linalg") {

TEST_CASE("realify interleaves real and imaginary parts row by row") {
  CHECK(realify(ComplexMatrix{{cplx(1, 2)}}) == RealVector{1, 2});
  CHECK(realify(ComplexMatrix(2, 2)) == RealVector(8, 0.0));

  const ComplexMatrix x{{cplx(1, 2), cplx(3, 4)}, {cplx(5, 6), cplx(7, 8)}};
  CHECK(realify(x) == RealVector{1, 2, 3, 4, 5, 6, 7, 8});
  CHECK(complexify(realify(x), 2, 2) == x);
  CHECK_THROWS_AS(complexify(RealVector(3), 1, 2), ValidationError);
}

TEST_CASE("H times the identity basis matrix realifies to the channel row") {
  const ComplexMatrix h{{cplx(0.3, -1.2), cplx(2.0, 0.5)}};
  const ComplexMatrix hb = h * alamouti().basis[0];
  CHECK(realify(hb) == RealVector{0.3, -1.2, 2.0, 0.5});
}

TEST_CASE("realification is an isometry") {
  SplitMix rng(stream_seed(kDefaultSeed, {1}));
  for (int t = 0; t < 200; ++t) {
    const auto x = random_matrix(rng, 1 + rng.below(6), 1 + rng.below(6));
    CHECK(rel_err(norm(realify(x)), x.frobenius_norm()) < 1e-12);
  }
}

TEST_CASE("frob_inner equals the Euclidean product of realified matrices") {
  SplitMix rng(stream_seed(kDefaultSeed, {2}));
  for (int t = 0; t < 1000; ++t) {
    const std::size_t r = 1 + rng.below(5), c = 1 + rng.below(5);
    const auto a = random_matrix(rng, r, c);
    const auto b = random_matrix(rng, r, c);
    const double want = (a * b.adjoint()).trace().real();
    const double got = dot(realify(a), realify(b));
    CHECK(std::abs(frob_inner(a, b) - got) <= 1e-12 * std::max(1.0, std::abs(got)));
    CHECK(std::abs(want - got) <= 1e-12 * std::max(1.0, std::abs(got)));
  }
}

TEST_CASE("frob_inner basics") {
  SplitMix rng(stream_seed(kDefaultSeed, {3}));
  const auto a = random_matrix(rng, 3, 4);
  CHECK(rel_err(frob_inner(a, a), a.frobenius_norm() * a.frobenius_norm()) < 1e-12);
  CHECK_THROWS_AS(frob_inner(a, random_matrix(rng, 4, 3)), ValidationError);

  const CodeSpec al = alamouti();
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      if (i != j) CHECK(frob_inner(al.basis[i], al.basis[j]) == doctest::Approx(0.0));

  for (int t = 0; t < 50; ++t) {
    const auto h = random_matrix(rng, 1, 2);
    CHECK(std::abs(frob_inner(h * al.basis[0], h * al.basis[2])) < 1e-12);
  }
}

TEST_CASE("qr of an orthogonal basis is diagonal") {
  const double c = 2.5;
  RealMatrix b(3, 3);
  b(0, 0) = c;
  b(1, 2) = c;
  b(2, 1) = -c;
  const auto qr = qr_decompose(b);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) CHECK(qr.r(i, j) == doctest::Approx(i == j ? c : 0.0));

  const auto id = qr_decompose(RealMatrix::identity(4));
  CHECK(id.q == RealMatrix::identity(4));
  CHECK(id.r == RealMatrix::identity(4));
}

TEST_CASE("qr reconstructs random matrices") {
  SplitMix rng(stream_seed(kDefaultSeed, {4}));
  for (int t = 0; t < 20; ++t) {
    const auto b = random_real(rng, 16 + 4 * (t % 3), 16);
    const auto qr = qr_decompose(b);
    const auto back = qr.q * qr.r;
    double worst = 0.0;
    for (std::size_t i = 0; i < b.entries().size(); ++i)
      worst = std::max(worst, std::abs(back.entries()[i] - b.entries()[i]));
    CHECK(worst < 1e-10);
    const auto qtq = qr.q.transpose() * qr.q;
    for (std::size_t i = 0; i < 16; ++i) {
      CHECK(qr.r(i, i) >= 0.0);
      for (std::size_t j = 0; j < 16; ++j) {
        CHECK(std::abs(qtq(i, j) - (i == j ? 1.0 : 0.0)) < 1e-10);
        if (i > j) CHECK(qr.r(i, j) == 0.0);
      }
    }
  }
}

TEST_CASE("|det B| is the product of the R diagonal") {
  SplitMix rng(stream_seed(kDefaultSeed, {5}));
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 2 + rng.below(10);
    const auto b = random_real(rng, n, n);
    const auto qr = qr_decompose(b);
    double prod = 1.0;
    for (std::size_t i = 0; i < n; ++i) prod *= qr.r(i, i);
    CHECK(rel_err(prod, std::abs(det(b))) < 1e-9);
  }
}

TEST_CASE("qr rejects dependent columns") {
  RealMatrix b(3, 2);
  b(0, 0) = 1;
  b(1, 0) = 2;
  b(0, 1) = 2;
  b(1, 1) = 4;
  CHECK_THROWS_AS(qr_decompose(b), NumericalError);
}

TEST_CASE("complex determinant") {
  CHECK(det(ComplexMatrix::identity(4)) == cplx(1.0, 0.0));
  CHECK(det(ComplexMatrix(3, 3)) == cplx(0.0, 0.0));
  CHECK_THROWS_AS(det(ComplexMatrix(2, 3)), ValidationError);

  const cplx x1(1.5, -2.0), x2(0.25, 3.0);
  const ComplexMatrix al{{x1, -std::conj(x2)}, {x2, std::conj(x1)}};
  const cplx d = det(al);
  CHECK(d.real() == doctest::Approx(std::norm(x1) + std::norm(x2)));
  CHECK(d.imag() == doctest::Approx(0.0));

  SplitMix rng(stream_seed(kDefaultSeed, {6}));
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 1 + rng.below(8);
    const auto x = random_matrix(rng, n, n);
    const cplx want = to_eigen(x).determinant();
    CHECK(std::abs(det(x) - want) <= 1e-10 * std::max(1.0, std::abs(want)));
    const auto inv = inverse(x);
    CHECK(max_abs_diff(x * inv, ComplexMatrix::identity(n)) < 1e-8);
  }
}

}  // TEST_SUITE
