#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fdstc/codebook.hpp"
#include "fdstc/linalg.hpp"
#include "fdstc/random.hpp"

namespace fdstc {

// G_ij = <alpha(s B_i), alpha(s B_j)> with s the code scale.
RealMatrix gram(const CodeSpec& code);
// sqrt(det G); throws NumericalError for a dependent basis.
double volume(const CodeSpec& code);

enum class SearchMode { Auto, Exhaustive, Structured };

struct MinDetOptions {
  int range = 1;                                 // coefficients in [-range, range]
  std::uint64_t exhaustive_budget = 10'000'000;  // Auto: exhaustive up to this many candidates
  std::uint64_t random_samples = 1'000'000;
  std::uint64_t seed = kDefaultSeed;
  int workers = 1;
  SearchMode mode = SearchMode::Auto;
};

struct MinDetResult {
  double min_det = 0.0;       // smallest |det X| seen over nonzero g
  std::vector<int> argmin;    // lexicographically smallest g attaining it
  bool exhaustive = false;
  std::uint64_t evaluated = 0;
  bool zero_found = false;    // some nonzero g gave a numerically singular codeword
};

MinDetResult min_det_search(const CodeSpec& code, const MinDetOptions& options = {});

// delta = min_det / vol^(n/K).
double normalized_min_det(double min_det, double vol, int n, std::size_t k);

struct NvdReport {
  bool holds = false;
  double lower_bound = 0.0;
  MinDetResult search;
};

NvdReport check_nvd(const CodeSpec& code, double lower_bound, const MinDetOptions& options = {});

struct LatticeReport {
  std::string code;
  int n_t = 0;
  std::size_t k = 0;
  double rate = 0.0;
  double scale = 1.0;
  double gram_det = 0.0;
  double volume = 0.0;
  MinDetResult search;
  int range = 0;
  std::uint64_t seed = 0;
  double delta = 0.0;
  std::string nvd;
};

LatticeReport analyze(const CodeSpec& code, const MinDetOptions& options = {});
std::string format_report(const LatticeReport& report);

}  // namespace fdstc
