#include <doctest.h>

#include <cmath>
#include <numeric>

#include "fdstc/bounds.hpp"
#include "fdstc/errors.hpp"

using namespace fdstc;

namespace {

HasseInvariantSet set(std::vector<FiniteInvariant> f, int reals) { return {std::move(f), reals}; }

BigInt pow_big(int base, unsigned e) { return boost::multiprecision::pow(BigInt(base), e); }

// (row, k, m) triples respecting the parity condition of each row.
std::vector<std::tuple<TableRow, int, int>> table_cases() {
  std::vector<std::tuple<TableRow, int, int>> out;
  for (int k = 1; k <= 3; ++k) {
    for (int m = 1; m <= 3; ++m) {
      if (m % 2 == 1) out.emplace_back(TableRow::FourKOddDegree, k, m);
      if (m % 2 == 0) out.emplace_back(TableRow::FourKEvenDegree, k, m);
      if (k % 2 == 1 && m % 2 == 0) out.emplace_back(TableRow::TwoKEvenDegree, k, m);
      if (k % 2 == 1 && m % 2 == 1) out.emplace_back(TableRow::TwoKOddDegree, k, m);
    }
  }
  return out;
}

}  // namespace

TEST_SUITE("bounds") {

TEST_CASE("admissibility") {
  CHECK(admissible(set({{"P1", 2, 1, 4}, {"P2", 3, 1, 4}}, 1)));
  CHECK(admissible({}));
  CHECK_FALSE(admissible(set({{"P", 2, 1, 3}}, 0)));
  CHECK(admissible(set({{"P1", 2, 1, 2}, {"P2", 3, 1, 2}}, 0)));
  CHECK_THROWS_AS(validate(set({{"P", 2, 2, 4}}, 0)), ValidationError);
  CHECK_THROWS_AS(validate(set({{"P", 2, 4, 4}}, 0)), ValidationError);
  CHECK_THROWS_AS(validate(set({{"P", 1, 1, 2}}, 0)), ValidationError);
}

TEST_CASE("algebra index") {
  CHECK(algebra_index(set({{"P1", 2, 1, 4}, {"P2", 3, 1, 4}}, 1)) == 4);
  CHECK(algebra_index({}) == 1);
  CHECK(algebra_index(set({{"P1", 2, 1, 3}, {"P2", 3, 1, 6}}, 1)) == 6);
  CHECK_THROWS_AS(algebra_index(set({{"P", 2, 1, 3}}, 0)), ValidationError);
}

TEST_CASE("maximal order discriminants") {
  const auto q4 = maximal_order_discriminant(set({{"P1", 2, 1, 4}, {"P2", 3, 3, 4}}, 0), 4);
  CHECK(q4.norm() == BigInt(2176782336));
  CHECK(q4.factored() == "2^12*3^12");
  CHECK(q4.compact() == "6^12");
  CHECK(maximal_order_discriminant({}, 1).norm() == 1);

  const auto n6 = maximal_order_discriminant(set({{"P1", 2, 1, 6}, {"P2", 3, 1, 3}}, 1), 6);
  CHECK(n6.norm() == pow_big(2, 30) * pow_big(3, 24));
  CHECK(n6.factored() == "2^30*3^24");
  CHECK_THROWS_AS(maximal_order_discriminant(set({{"P1", 2, 1, 4}, {"P2", 3, 3, 4}}, 0), 2),
                  ValidationError);
}

TEST_CASE("minimum discriminant bound") {
  const auto q = parse_center("Q");
  const auto d4 = min_discriminant_bound(q, 4);
  CHECK(d4.norm() == BigInt(2176782336));
  CHECK(d4.compact() == "6^12");
  CHECK(min_discriminant_bound(q, 6).norm() == pow_big(2, 30) * pow_big(3, 6));
  CHECK(min_discriminant_bound(parse_center("Q(sqrt5)"), 2).norm() == 1);
  CHECK_THROWS_AS(min_discriminant_bound(q, 3), ValidationError);
  CHECK_THROWS_AS(min_discriminant_bound(parse_center("Q(i)"), 2, true), ValidationError);
  CHECK(min_discriminant_bound(parse_center("Q(i)"), 2, false).norm() == 100);
  CHECK(min_discriminant_bound(q, 4, false).norm() == BigInt(2176782336));
}

TEST_CASE("bound agrees with the maximal order of the 4k odd-degree family") {
  const auto inst = table_instance(TableRow::FourKOddDegree, 1, 1);
  CHECK(maximal_order_discriminant(inst.invariants, 4).norm() ==
        min_discriminant_bound(parse_center("Q"), 4).norm());
}

TEST_CASE("centers") {
  const auto c = parse_center("Q(sqrt2)");
  CHECK(c.degree == 2);
  CHECK(c.real_places == 2);
  CHECK(c.field_discriminant == 8);
  CHECK(parse_center("custom:deg=3,r1=3,r2=0,disc=49,p1=7,p2=8").field_discriminant == 49);
  CHECK_THROWS_AS(parse_center("custom:deg=3,r1=1,r2=0,disc=49,p1=7,p2=8"), ValidationError);
  CHECK_THROWS_AS(parse_center("Q(sqrt7)"), ValidationError);
}

TEST_CASE("Z-discriminant and delta bound") {
  CHECK(z_discriminant(12345, 1, 4) == 12345);
  CHECK(z_discriminant(7, 8, 2) == 7 * 4096);
  CHECK(z_discriminant(7, 5, 2) >= 7);

  const BigInt six12 = pow_big(6, 12);
  CHECK(delta_bound(six12, 4) == doctest::Approx(0.0680414).epsilon(1e-6));
  CHECK(std::round(delta_bound(six12, 4) * 1e4) / 1e4 == 0.0680);
  CHECK(delta_bound(1, 4) == 1.0);
  CHECK(boost::multiprecision::sqrt(six12) == pow_big(6, 6));
  CHECK(kOrthogonalShapingDelta4x4 == 0.0625);
  CHECK(delta_bound(six12, 4) > kOrthogonalShapingDelta4x4);

  // Huge arguments go through the logarithm.
  const BigInt big = pow_big(10, 400);
  CHECK(log_big(big) == doctest::Approx(400 * std::log(10.0)));
  CHECK(delta_bound(big, 4) == doctest::Approx(std::exp(-400 * std::log(10.0) / 8)));
}

TEST_CASE("delta bound is monotone") {
  for (int n = 2; n <= 8; n += 2) {
    double prev = 2.0;
    for (int z = 1; z < 200; z += 7) {
      const double d = delta_bound(z, n);
      CHECK(d < prev);
      prev = d;
    }
  }
  for (int z : {2, 1000, 2176782}) {
    double prev = 0.0;
    for (int n = 2; n <= 12; n += 2) {
      const double d = delta_bound(z, n);
      CHECK(d > prev);
      prev = d;
    }
  }
}

TEST_CASE("invariant families are admissible with the stated index") {
  for (const auto& [row, k, m] : table_cases()) {
    CAPTURE(table_row_name(row));
    CAPTURE(k);
    CAPTURE(m);
    const auto inst = table_instance(row, k, m);
    CHECK(admissible(inst.invariants));
    CHECK(algebra_index(inst.invariants) == inst.stated_index);
  }
  CHECK_THROWS_AS(table_instance(TableRow::FourKOddDegree, 1, 2), ValidationError);
  CHECK_THROWS_AS(table_instance(TableRow::TwoKOddDegree, 2, 1), ValidationError);
}

TEST_CASE("the printed 4k even-degree row is inadmissible") {
  // h_P1 = 1/(4k), h_P2 = (k-1)/(4k) with two ramified real places.
  for (int k = 2; k <= 3; ++k) {
    const int m = 4 * k;
    const int a2 = k - 1;
    const int g2 = std::gcd(a2, m);
    CHECK_FALSE(admissible(set({{"P1", 2, 1, m}, {"P2", 3, a2 / g2, m / g2}}, 2)));
  }
  const auto fixed = table_instance(TableRow::FourKEvenDegree, 2, 2);
  CHECK(maximal_order_discriminant(fixed.invariants, 8).factored() == "2^56*3^56");
}

TEST_CASE("invariant files") {
  const auto inv = parse_invariants("# D\nprime=P1 norm=2 a=1 m=4\nprime=P2 norm=3 a=1 m=4\nreal=1\n");
  CHECK(inv.finite.size() == 2);
  CHECK(inv.ramified_reals == 1);
  const std::string rep = format_hasse_report(inv);
  CHECK(rep.find("admissible\tyes\n") != std::string::npos);
  CHECK(rep.find("index\t4\n") != std::string::npos);
  CHECK(rep.find("2^12*3^12") != std::string::npos);
  CHECK_THROWS_AS(parse_invariants("prime=P1 a=1 m=4\n"), ValidationError);
  CHECK_THROWS_AS(parse_invariants("colour=red\n"), ValidationError);
}

TEST_CASE("bounds report") {
  const std::string rep = format_bounds_report(parse_center("Q"), 4, true);
  CHECK(rep.find("min_discriminant\t2^12*3^12\n") != std::string::npos);
  CHECK(rep.find("min_discriminant_norm\t2176782336\n") != std::string::npos);
  CHECK(rep.find("delta_bound\t0.0680") != std::string::npos);
}

}  // TEST_SUITE
