#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fdstc/linalg.hpp"

namespace fdstc {

// Per-coordinate integer alphabet, sorted ascending.
class Constellation {
 public:
  explicit Constellation(std::vector<int> levels);
  static Constellation pam(int q);
  // Accepts "pamQ", "Q-PAM" or a bare Q.
  static Constellation parse(std::string_view text);

  const std::vector<int>& levels() const noexcept { return levels_; }
  std::size_t size() const noexcept { return levels_.size(); }
  bool contains(int v) const;
  double mean_square() const;
  std::string name() const;

  friend bool operator==(const Constellation&, const Constellation&) = default;

 private:
  std::vector<int> levels_;
};

struct CodeSpec {
  std::string name;
  int n_t = 0;
  int T = 0;
  std::vector<ComplexMatrix> basis;  // unscaled B_1..B_K
  double scale = 1.0;                // codeword = scale * sum g_i B_i
  int default_receivers = 1;
  std::string nvd;                   // short determinant-behaviour label
  std::string notes;

  std::size_t K() const noexcept { return basis.size(); }
  double rate() const noexcept { return static_cast<double>(basis.size()) / n_t; }
  ComplexMatrix scaled_basis(std::size_t i) const;
};

// Throws ValidationError on inconsistent shapes or an empty basis.
void validate(const CodeSpec& code);

ComplexMatrix encode(const CodeSpec& code, std::span<const int> g);
ComplexMatrix encode(const CodeSpec& code, std::span<const double> g);

enum class BasisVariant { Integral, HalfImaginary };

CodeSpec alamouti();
CodeSpec quasi_orth_dort();
CodeSpec a2_code();
CodeSpec mido_a4(BasisVariant variant = BasisVariant::Integral);
CodeSpec mido_c1();
CodeSpec mido_c2();
CodeSpec mido_c3();
// MIDO1 layout with gamma = -i instead of i; reference point for mido_c3.
CodeSpec mido_c1_untwisted();
CodeSpec code_6x3(BasisVariant variant = BasisVariant::Integral);
CodeSpec code_6x2();
CodeSpec sr_unrotated();

// Keeps the listed 1-based basis indices, in order.
CodeSpec puncture(const CodeSpec& code, std::span<const int> keep, std::string name);
// Conjugates every basis matrix by c: B -> c B c^-1.
CodeSpec conjugate(const CodeSpec& code, const ComplexMatrix& c, std::string name);

std::vector<std::string> shipped_code_names();
CodeSpec make_code(std::string_view name);

struct SphericalCodebook {
  std::vector<std::vector<int>> words;  // sorted by (energy, lexicographic)
  std::vector<double> energies;         // ||scale * sum g_i B_i||_F^2
  double mean_energy() const;
};

// The `size` lowest-energy coefficient vectors from alphabet^K.
SphericalCodebook spherical_codebook(const CodeSpec& code, const Constellation& alphabet,
                                     std::size_t size);

// Tab-separated datasheet: header fields then one line per basis entry.
std::string datasheet(const CodeSpec& code);
CodeSpec parse_datasheet(std::string_view text);

}  // namespace fdstc
