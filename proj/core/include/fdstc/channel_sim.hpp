#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "fdstc/codebook.hpp"
#include "fdstc/linalg.hpp"
#include "fdstc/random.hpp"

namespace fdstc {

// Standard normal draw (Box-Muller), identical on every platform with IEEE doubles.
double standard_normal(SplitMix& rng);
// Circularly symmetric CN(0, variance) entries.
ComplexMatrix complex_gaussian(std::size_t rows, std::size_t cols, double variance, SplitMix& rng);
// Quasi-static Rayleigh channel, i.i.d. CN(0, 1) entries.
ComplexMatrix sample_channel(int n_r, int n_t, SplitMix& rng);

enum class Shaping { Linear, Spherical };

struct SimConfig {
  std::string code = "mido_a4";
  int receivers = 0;  // 0 selects the code's default
  int pam = 2;
  std::vector<double> snr_db{8.0, 12.0, 16.0, 20.0};
  std::uint64_t frames = 1000;
  std::uint64_t seed = kDefaultSeed;
  int workers = 1;
  Shaping shaping = Shaping::Linear;
  std::size_t codebook_size = 65536;  // spherical shaping only
  bool use_groups = true;
};

SimConfig parse_sim_config(std::string_view text);
std::string format_sim_config(const SimConfig& config);

struct BlerPoint {
  double snr_db = 0.0;
  std::uint64_t frames = 0;
  std::uint64_t errors = 0;
  double bler = 0.0;
  double ci95 = 0.0;  // Wilson half-width
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

Interval wilson_interval(std::uint64_t errors, std::uint64_t frames, double z = 1.959963984540054);

// Scale factor giving E||s X||_F^2 / T = 1 for uniform PAM coefficients.
double energy_normalization(const CodeSpec& code, const Constellation& alphabet);

std::vector<BlerPoint> run_bler(const SimConfig& config);

std::string bler_csv(const std::vector<BlerPoint>& points);
std::vector<BlerPoint> parse_bler_csv(std::string_view text);
std::string metadata_sidecar(const SimConfig& config, const CodeSpec& code);

}  // namespace fdstc
