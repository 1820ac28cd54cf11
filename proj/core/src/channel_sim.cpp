#include "fdstc/channel_sim.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fdstc/errors.hpp"
#include "fdstc/fastdecode.hpp"
#include "fdstc/lattice.hpp"
#include "fdstc/report.hpp"
#include "fdstc/version.hpp"
#include "parallel.hpp"

namespace fdstc {

double standard_normal(SplitMix& rng) {
  // 53-bit uniforms; u1 in (0, 1] keeps the logarithm finite.
  const double u1 = (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53;
  const double u2 = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

ComplexMatrix complex_gaussian(std::size_t rows, std::size_t cols, double variance, SplitMix& rng) {
  ComplexMatrix m(rows, cols);
  const double sd = std::sqrt(variance / 2.0);
  for (auto& z : m.entries()) {
    const double re = standard_normal(rng);
    const double im = standard_normal(rng);
    z = cplx(sd * re, sd * im);
  }
  return m;
}

ComplexMatrix sample_channel(int n_r, int n_t, SplitMix& rng) {
  if (n_r < 1 || n_t < 1) throw ValidationError("sample_channel: dimensions must be positive");
  return complex_gaussian(static_cast<std::size_t>(n_r), static_cast<std::size_t>(n_t), 1.0, rng);
}

namespace {

bool parse_bool(std::string_view v) {
  if (v == "yes" || v == "true" || v == "1" || v == "on") return true;
  if (v == "no" || v == "false" || v == "0" || v == "off") return false;
  throw ValidationError("expected yes/no, got '" + std::string(v) + "'");
}

std::string join_doubles(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + format_double(v[i]);
  return s;
}

void check_config(const SimConfig& c) {
  if (c.frames == 0) throw ValidationError("simulate: frames must be positive");
  if (c.snr_db.empty()) throw ValidationError("simulate: empty SNR grid");
  for (double s : c.snr_db)
    if (std::isnan(s) || s == -INFINITY) throw ValidationError("simulate: invalid SNR value");
  if (c.workers < 1) throw ValidationError("simulate: workers must be positive");
  if (c.receivers < 0) throw ValidationError("simulate: receivers must be nonnegative");
  if (c.pam < 2) throw ValidationError("simulate: PAM size must be at least 2");
}

}  // namespace

SimConfig parse_sim_config(std::string_view text) {
  SimConfig c;
  for (const auto& [key, value] : parse_key_values(text)) {
    if (key == "code") {
      c.code = value;
    } else if (key == "receivers" || key == "n_r") {
      c.receivers = static_cast<int>(parse_integer(value));
    } else if (key == "alphabet") {
      c.pam = static_cast<int>(Constellation::parse(value).size());
    } else if (key == "pam") {
      c.pam = static_cast<int>(Constellation::pam(static_cast<int>(parse_integer(value))).size());
    } else if (key == "snr_db" || key == "snr") {
      c.snr_db.clear();
      for (auto s : split(value, ',')) c.snr_db.push_back(parse_double(s));
    } else if (key == "frames") {
      c.frames = static_cast<std::uint64_t>(parse_integer(value));
    } else if (key == "seed") {
      c.seed = static_cast<std::uint64_t>(parse_integer(value));
    } else if (key == "workers") {
      c.workers = static_cast<int>(parse_integer(value));
    } else if (key == "shaping") {
      if (value == "linear") c.shaping = Shaping::Linear;
      else if (value == "spherical") c.shaping = Shaping::Spherical;
      else throw ValidationError("shaping must be linear or spherical");
    } else if (key == "codebook_size") {
      c.codebook_size = static_cast<std::size_t>(parse_integer(value));
    } else if (key == "groups") {
      c.use_groups = parse_bool(value);
    } else {
      throw ValidationError("unknown simulation key '" + key + "'");
    }
  }
  check_config(c);
  return c;
}

std::string format_sim_config(const SimConfig& c) {
  std::string s;
  s += "code=" + c.code + "\n";
  s += "receivers=" + std::to_string(c.receivers) + "\n";
  s += "pam=" + std::to_string(c.pam) + "\n";
  s += "snr_db=" + join_doubles(c.snr_db) + "\n";
  s += "frames=" + std::to_string(c.frames) + "\n";
  s += "seed=" + std::to_string(c.seed) + "\n";
  s += "workers=" + std::to_string(c.workers) + "\n";
  s += std::string("shaping=") + (c.shaping == Shaping::Linear ? "linear" : "spherical") + "\n";
  if (c.shaping == Shaping::Spherical) s += "codebook_size=" + std::to_string(c.codebook_size) + "\n";
  s += std::string("groups=") + (c.use_groups ? "yes" : "no") + "\n";
  return s;
}

Interval wilson_interval(std::uint64_t errors, std::uint64_t frames, double z) {
  if (frames == 0) return {0.0, 1.0};
  const double n = static_cast<double>(frames);
  const double p = static_cast<double>(errors) / n;
  const double z2 = z * z;
  const double centre = (p + z2 / (2 * n)) / (1 + z2 / n);
  const double half = z / (1 + z2 / n) * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n));
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

double energy_normalization(const CodeSpec& code, const Constellation& alphabet) {
  const RealMatrix g = gram(code);
  double tr = 0.0;
  for (std::size_t i = 0; i < g.rows(); ++i) tr += g(i, i);
  const double mean = tr * alphabet.mean_square();
  if (!(mean > 0.0)) throw ValidationError("energy_normalization: zero-energy code");
  return std::sqrt(static_cast<double>(code.T) / mean);
}

std::vector<BlerPoint> run_bler(const SimConfig& config) {
  check_config(config);
  CodeSpec code = make_code(config.code);
  const int nr = config.receivers > 0 ? config.receivers : code.default_receivers;
  const Constellation alphabet = Constellation::pam(config.pam);

  SphericalCodebook book;
  std::vector<std::vector<int>> sorted_words;
  if (config.shaping == Shaping::Spherical) {
    book = spherical_codebook(code, alphabet, config.codebook_size);
    code.scale *= std::sqrt(static_cast<double>(code.T) / book.mean_energy());
    sorted_words = book.words;
    std::sort(sorted_words.begin(), sorted_words.end());
  } else {
    code.scale *= energy_normalization(code, alphabet);
  }

  ComplexityReport structure = joint_structure(code.K());
  if (config.use_groups && config.shaping == Shaping::Linear) {
    PatternOptions popt;
    popt.receivers = nr;
    structure = complexity_estimate(discover_pattern(code, popt));
  }
  Membership member;
  if (config.shaping == Shaping::Spherical) {
    member = [&sorted_words](std::span<const int> g) {
      return std::binary_search(sorted_words.begin(), sorted_words.end(), g,
                                [](const auto& a, const auto& b) {
                                  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
                                });
    };
  }

  std::vector<BlerPoint> out;
  for (std::size_t p = 0; p < config.snr_db.size(); ++p) {
    const double snr = config.snr_db[p];
    const double n0 = std::isinf(snr) ? 0.0 : std::pow(10.0, -snr / 10.0);
    std::vector<std::uint64_t> errors(static_cast<std::size_t>(config.workers), 0);
    detail::parallel_chunks(config.frames, config.workers,
                            [&](std::uint64_t begin, std::uint64_t end, int w) {
                              std::vector<int> g(code.K());
                              for (std::uint64_t f = begin; f < end; ++f) {
                                SplitMix rng(stream_seed(config.seed, {p, f}));
                                if (config.shaping == Shaping::Spherical) {
                                  g = book.words[rng.below(book.words.size())];
                                } else {
                                  for (auto& v : g) v = alphabet.levels()[rng.below(alphabet.size())];
                                }
                                const ComplexMatrix h = sample_channel(nr, code.n_t, rng);
                                const ComplexMatrix noise =
                                    complex_gaussian(static_cast<std::size_t>(nr),
                                                     static_cast<std::size_t>(code.T), n0, rng);
                                const ComplexMatrix y = h * encode(code, std::span<const int>(g)) + noise;
                                const DecodeResult d = sphere_decode(effective_generator(code, h),
                                                                     realify(y), alphabet, structure, member);
                                if (d.g != g) ++errors[static_cast<std::size_t>(w)];
                              }
                            });
    BlerPoint pt;
    pt.snr_db = snr;
    pt.frames = config.frames;
    for (auto e : errors) pt.errors += e;
    pt.bler = static_cast<double>(pt.errors) / static_cast<double>(pt.frames);
    const Interval ci = wilson_interval(pt.errors, pt.frames);
    pt.ci95 = 0.5 * (ci.hi - ci.lo);
    out.push_back(pt);
  }
  return out;
}

std::string bler_csv(const std::vector<BlerPoint>& points) {
  std::string s = "snr_db,frames,errors,bler,ci95\n";
  for (const auto& p : points) {
    s += format_double(p.snr_db) + "," + std::to_string(p.frames) + "," + std::to_string(p.errors) +
         "," + format_double(p.bler) + "," + format_double(p.ci95) + "\n";
  }
  return s;
}

std::vector<BlerPoint> parse_bler_csv(std::string_view text) {
  std::vector<BlerPoint> out;
  bool header = true;
  for (auto line : split(text, '\n')) {
    line = trim(line);
    if (line.empty()) continue;
    if (header) {
      if (line != "snr_db,frames,errors,bler,ci95") throw ValidationError("BLER CSV: unexpected header");
      header = false;
      continue;
    }
    const auto f = split(line, ',');
    if (f.size() != 5) throw ValidationError("BLER CSV: expected 5 fields");
    BlerPoint p;
    p.snr_db = parse_double(f[0]);
    p.frames = static_cast<std::uint64_t>(parse_integer(f[1]));
    p.errors = static_cast<std::uint64_t>(parse_integer(f[2]));
    p.bler = parse_double(f[3]);
    p.ci95 = parse_double(f[4]);
    out.push_back(p);
  }
  return out;
}

std::string metadata_sidecar(const SimConfig& config, const CodeSpec& code) {
  std::string s = "version=" + std::string(kVersion) + "\n";
  s += format_sim_config(config);
  s += "n_t=" + std::to_string(code.n_t) + "\n";
  s += "K=" + std::to_string(code.K()) + "\n";
  s += "effective_receivers=" +
       std::to_string(config.receivers > 0 ? config.receivers : code.default_receivers) + "\n";
  s += "channel=iid CN(0,1), one draw per frame\n";
  s += "noise=CN(0,N0) per entry, N0=10^(-snr_db/10), unit average energy per channel use\n";
  s += "decoder=exact ML sphere decoder\n";
  return s;
}

}  // namespace fdstc
