#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fdstc/codebook.hpp"
#include "fdstc/linalg.hpp"
#include "fdstc/random.hpp"

namespace fdstc {

// Columns alpha(H s B_i); shape (2 n_r T) x K.
RealMatrix effective_generator(const CodeSpec& code, const ComplexMatrix& h);

// Symmetric K x K mask; true where Re Tr(H B_i (H B_j)^H) vanished for every sampled H.
class OrthogonalityMask {
 public:
  OrthogonalityMask() = default;
  explicit OrthogonalityMask(std::size_t k);

  std::size_t size() const noexcept { return k_; }
  bool operator()(std::size_t i, std::size_t j) const { return bits_[i * k_ + j]; }
  void set(std::size_t i, std::size_t j, bool v);
  std::size_t count_zeros() const;  // off-diagonal unordered pairs
  std::string grid() const;         // rows of 0/1, 1 = persistent zero

  friend bool operator==(const OrthogonalityMask&, const OrthogonalityMask&) = default;

 private:
  std::size_t k_ = 0;
  std::vector<bool> bits_;
};

struct PatternOptions {
  int receivers = 0;  // 0 selects the code's default
  int samples = 200;
  std::uint64_t seed = kDefaultSeed;
  double tolerance = kZeroTolerance;
};

// A pair counts as orthogonal when |<HB_i, HB_j>| <= tol * ||HB_i|| ||HB_j|| for all samples.
OrthogonalityMask discover_pattern(const CodeSpec& code, const PatternOptions& options = {});

enum class SplitPolicy { BestPrefix, HalfTail };

struct ComplexityReport {
  std::size_t k = 0;
  std::size_t prefix = 0;                     // indices [0, prefix) are split into groups
  std::vector<std::vector<int>> head_groups;  // 0-based, ascending within each group
  std::vector<int> tail;                      // 0-based, enumerated jointly
  std::size_t kappa = 0;                      // |tail| + largest group
  std::string worst_case() const;             // e.g. "2|S|^4"
  double reduction_percent() const;           // (K - kappa) / K * 100
};

ComplexityReport complexity_estimate(const OrthogonalityMask& mask,
                                     SplitPolicy policy = SplitPolicy::BestPrefix);
// The trivial structure: one joint search over all K coordinates.
ComplexityReport joint_structure(std::size_t k);

// Pairs (i, j), i < j, for which the mask guarantees R_ij = 0 in the QR of any effective
// generator: j lies in the grouped prefix and i, j are in different groups.
std::vector<std::pair<int, int>> predicted_r_zeros(const ComplexityReport& structure);

struct DecodeResult {
  std::vector<int> g;
  double metric = 0.0;  // ||y - B g||^2
  std::uint64_t nodes = 0;
};

// Optional restriction of the search to a codebook (spherical shaping).
using Membership = std::function<bool(std::span<const int>)>;

// Exact ML over alphabet^K by depth-first Schnorr-Euchner enumeration. With a grouped
// structure the tail is enumerated jointly and each head group is solved on its own for
// every tail candidate. Ties resolve to the lexicographically smallest g.
DecodeResult sphere_decode(const RealMatrix& generator, std::span<const double> y,
                           const Constellation& alphabet, const ComplexityReport& structure,
                           const Membership& member = nullptr);

DecodeResult sphere_decode(const CodeSpec& code, const ComplexMatrix& y, const ComplexMatrix& h,
                           const Constellation& alphabet, bool use_groups);

// Brute-force ML oracle with incremental residual updates.
DecodeResult exhaustive_ml(const RealMatrix& generator, std::span<const double> y,
                           const Constellation& alphabet,
                           std::uint64_t budget = std::uint64_t{1} << 26);
DecodeResult exhaustive_ml(const CodeSpec& code, const ComplexMatrix& y, const ComplexMatrix& h,
                           const Constellation& alphabet,
                           std::uint64_t budget = std::uint64_t{1} << 26);

double decoding_metric(const RealMatrix& generator, std::span<const double> y,
                       std::span<const int> g);

std::string format_pattern_report(const CodeSpec& code, const OrthogonalityMask& mask,
                                  const ComplexityReport& report, const PatternOptions& options);

}  // namespace fdstc
