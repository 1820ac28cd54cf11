#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "fdstc/numberfield.hpp"

namespace fdstc {

// Local invariant a/m at a finite prime of norm `norm`.
struct FiniteInvariant {
  std::string prime;
  BigInt norm;
  int a = 0;
  int m = 1;
};

struct HasseInvariantSet {
  std::vector<FiniteInvariant> finite;
  int ramified_reals = 0;  // real places with invariant 1/2
};

// Throws ValidationError on malformed entries (m < 1, a outside [0, m), non-positive norm).
void validate(const HasseInvariantSet& inv);
bool admissible(const HasseInvariantSet& inv);
// LCM of the local indices; throws ValidationError when inadmissible.
int algebra_index(const HasseInvariantSet& inv);

struct DiscriminantFactor {
  std::string prime;
  BigInt norm;
  BigInt exponent;
};

struct Discriminant {
  std::vector<DiscriminantFactor> factors;
  BigInt norm() const;
  std::string factored() const;  // "2^12*3^12"
  std::string compact() const;   // "6^12" when all exponents agree
};

// Discriminant of a maximal order: prod P^{(m_P - 1) n^2 / m_P}.
Discriminant maximal_order_discriminant(const HasseInvariantSet& inv, int n);

struct CenterDescriptor {
  std::string name;
  int degree = 1;
  int real_places = 1;
  int complex_places = 0;
  BigInt field_discriminant = 1;  // |d_K|
  std::string p1_label = "P1";
  BigInt p1_norm = 2;
  std::string p2_label = "P2";
  BigInt p2_norm = 3;
};

// "Q", "Q(i)", "Q(sqrt2)", "Q(sqrt5)", or "custom:deg=..,r1=..,r2=..,disc=..,p1=..,p2=..".
CenterDescriptor parse_center(std::string_view text);

// Smallest discriminant of a Z-order in a division algebra of index n over the center.
Discriminant min_discriminant_bound(const CenterDescriptor& center, int n,
                                    bool all_real_ramified = true);

// N_{K/Q}(d(Lambda/O_K)) * d_K^{n^2}.
BigInt z_discriminant(const BigInt& center_disc_norm, const BigInt& field_disc, int n);
double delta_bound(const BigInt& z_disc, int n);
double log_big(const BigInt& v);

// Orthogonal-shaping reference for 4x4 codes with 16 real dimensions.
inline constexpr double kOrthogonalShapingDelta4x4 = 0.0625;

enum class TableRow { FourKOddDegree, FourKEvenDegree, TwoKEvenDegree, TwoKOddDegree };

struct TableInstance {
  HasseInvariantSet invariants;
  int stated_index = 0;
};

// Hasse invariants listed for a center of degree `center_degree` with `center_degree` real
// places, all ramified; invariants are reduced mod 1 and trivial ones dropped.
TableInstance table_instance(TableRow row, int k, int center_degree, const BigInt& p1_norm = 2,
                             const BigInt& p2_norm = 3);
std::string table_row_name(TableRow row);

HasseInvariantSet parse_invariants(std::string_view text);
std::string format_bounds_report(const CenterDescriptor& center, int n, bool all_real_ramified);
std::string format_hasse_report(const HasseInvariantSet& inv);

}  // namespace fdstc
