#include <doctest.h>

#include <cmath>

#include "fdstc/channel_sim.hpp"
#include "fdstc/errors.hpp"
#include "fdstc/lattice.hpp"
#include "support.hpp"

using namespace fdstc;

namespace {

SimConfig small_config(const std::string& code) {
  SimConfig c;
  c.code = code;
  c.snr_db = {0.0, 6.0, 12.0};
  c.frames = 300;
  return c;
}

}  // namespace

TEST_SUITE("channel_sim") {

TEST_CASE("Rayleigh channel statistics") {
  SplitMix rng(stream_seed(kDefaultSeed, {60}));
  double sum_re = 0, sum_im = 0, power = 0;
  const int n = 100000;
  for (int t = 0; t < n; ++t) {
    const cplx h = sample_channel(1, 1, rng)(0, 0);
    sum_re += h.real();
    sum_im += h.imag();
    power += std::norm(h);
  }
  CHECK(std::abs(power / n - 1.0) < 0.02);
  // 3 sigma of the sample mean of a variance-1/2 component.
  const double bound = 3.0 * std::sqrt(0.5 / n);
  CHECK(std::abs(sum_re / n) < bound);
  CHECK(std::abs(sum_im / n) < bound);

  SplitMix a(42), b(42);
  CHECK(sample_channel(2, 4, a) == sample_channel(2, 4, b));
  CHECK_THROWS_AS(sample_channel(0, 4, a), ValidationError);
}

TEST_CASE("counter-based streams") {
  CHECK(stream_seed(1, {2, 3}) == stream_seed(1, {2, 3}));
  CHECK(stream_seed(1, {2, 3}) != stream_seed(1, {3, 2}));
  CHECK(stream_seed(1, {2}) != stream_seed(2, {2}));
  SplitMix rng(7);
  for (int i = 0; i < 1000; ++i) CHECK(rng.below(6) < 6u);
}

TEST_CASE("energy normalization over the full finite codebook") {
  for (const auto& [name, q] : {std::pair{"alamouti", 4}, std::pair{"a2_code", 4}, std::pair{"quasi_orth_dort", 2}}) {
    CodeSpec c = make_code(name);
    const auto alphabet = Constellation::pam(q);
    c.scale *= energy_normalization(c, alphabet);
    const std::size_t k = c.K();
    std::vector<int> idx(k, 0), g(k);
    double total = 0;
    std::size_t count = 0;
    for (;;) {
      for (std::size_t i = 0; i < k; ++i) g[i] = alphabet.levels()[static_cast<std::size_t>(idx[i])];
      const double e = encode(c, std::span<const int>(g)).frobenius_norm();
      total += e * e / c.T;
      ++count;
      std::size_t i = 0;
      while (i < k && idx[i] == q - 1) idx[i++] = 0;
      if (i == k) break;
      ++idx[i];
    }
    CHECK(std::abs(total / static_cast<double>(count) - 1.0) < 1e-9);
  }
}

TEST_CASE("spherical codebook energy normalization") {
  CodeSpec c = alamouti();
  const auto book = spherical_codebook(c, Constellation::pam(4), 100);
  c.scale *= std::sqrt(c.T / book.mean_energy());
  double total = 0;
  for (const auto& w : book.words) {
    const double e = encode(c, std::span<const int>(w)).frobenius_norm();
    total += e * e / c.T;
  }
  CHECK(std::abs(total / 100.0 - 1.0) < 1e-9);
}

TEST_CASE("Wilson interval") {
  const auto ci = wilson_interval(413, 20000);
  CHECK(ci.lo < 413.0 / 20000);
  CHECK(ci.hi > 413.0 / 20000);
  CHECK(ci.lo == doctest::Approx(0.018759).epsilon(1e-4));
  CHECK(ci.hi == doctest::Approx(0.022727).epsilon(1e-4));
  const auto zero = wilson_interval(0, 100);
  CHECK(zero.lo < 1e-15);
  CHECK(zero.hi > 0.0);
  const auto all = wilson_interval(100, 100);
  CHECK(all.hi == 1.0);
}

TEST_CASE("configuration parsing") {
  const auto c = parse_sim_config(
      "# A4 run\ncode = mido_a4\nn_r=2\nalphabet=pam4\nsnr_db=8, 12,16\nframes=20000\nseed=9\nworkers=2\n"
      "shaping=linear\ngroups=no\n");
  CHECK(c.code == "mido_a4");
  CHECK(c.receivers == 2);
  CHECK(c.pam == 4);
  CHECK(c.snr_db == std::vector<double>{8, 12, 16});
  CHECK(c.frames == 20000u);
  CHECK(c.seed == 9u);
  CHECK(c.workers == 2);
  CHECK_FALSE(c.use_groups);
  CHECK(parse_sim_config(format_sim_config(c)).snr_db == c.snr_db);
  CHECK(format_sim_config(parse_sim_config(format_sim_config(c))) == format_sim_config(c));
  CHECK(parse_sim_config("snr=inf\n").snr_db == std::vector<double>{INFINITY});

  CHECK_THROWS_AS(parse_sim_config("colour=red\n"), ValidationError);
  CHECK_THROWS_AS(parse_sim_config("frames=0\n"), ValidationError);
  CHECK_THROWS_AS(parse_sim_config("snr_db=\n"), ValidationError);
  CHECK_THROWS_AS(parse_sim_config("shaping=cubic\n"), ValidationError);
  CHECK_THROWS_AS(parse_sim_config("pam=3\n"), ValidationError);
}

TEST_CASE("noiseless simulation has no errors") {
  SimConfig c = small_config("mido_a4");
  c.snr_db = {INFINITY};
  c.frames = 200;
  const auto pts = run_bler(c);
  REQUIRE(pts.size() == 1);
  CHECK(pts[0].errors == 0u);
  CHECK(pts[0].bler == 0.0);
}

TEST_CASE("simulation is deterministic and independent of worker count") {
  SimConfig c = small_config("alamouti");
  c.pam = 4;
  const std::string one = bler_csv(run_bler(c));
  CHECK(bler_csv(run_bler(c)) == one);
  c.workers = 3;
  CHECK(bler_csv(run_bler(c)) == one);
  c.seed = 123;
  CHECK(bler_csv(run_bler(c)) != one);
}

TEST_CASE("grouped and joint decoding give identical simulations") {
  SimConfig c = small_config("mido_a4_half_imag");
  c.frames = 100;
  const std::string grouped = bler_csv(run_bler(c));
  c.use_groups = false;
  CHECK(bler_csv(run_bler(c)) == grouped);
}

TEST_CASE("spherical shaping runs through the membership-restricted decoder") {
  SimConfig c = small_config("alamouti");
  c.shaping = Shaping::Spherical;
  c.pam = 4;
  c.codebook_size = 64;
  c.snr_db = {INFINITY, 4.0};
  c.frames = 200;
  const auto pts = run_bler(c);
  CHECK(pts[0].errors == 0u);
  CHECK(pts[1].errors > 0u);
}

TEST_CASE("BLER decreases with SNR") {
  SimConfig c = small_config("alamouti");
  c.pam = 4;
  c.frames = 2000;
  const auto pts = run_bler(c);
  for (std::size_t i = 1; i < pts.size(); ++i) CHECK(pts[i].bler < pts[i - 1].bler);
  for (const auto& p : pts) {
    CHECK(p.bler >= 0.0);
    CHECK(p.bler <= 1.0);
  }
}

TEST_CASE("CSV export") {
  CHECK(bler_csv({}) == "snr_db,frames,errors,bler,ci95\n");
  BlerPoint p;
  p.snr_db = 12.0;
  p.frames = 20000;
  p.errors = 413;
  p.bler = 0.02065;
  p.ci95 = 0.5 * (wilson_interval(413, 20000).hi - wilson_interval(413, 20000).lo);
  const std::string csv = bler_csv({p});
  CHECK(csv.rfind("snr_db,frames,errors,bler,ci95\n12,20000,413,0.02065,", 0) == 0);
  const auto back = parse_bler_csv(csv);
  REQUIRE(back.size() == 1);
  CHECK(back[0].snr_db == p.snr_db);
  CHECK(back[0].frames == p.frames);
  CHECK(back[0].errors == p.errors);
  CHECK(back[0].bler == p.bler);
  CHECK(back[0].ci95 == p.ci95);
  CHECK(parse_bler_csv(bler_csv({})).empty());
  CHECK_THROWS_AS(parse_bler_csv("a,b\n"), ValidationError);
}

TEST_CASE("metadata sidecar") {
  const SimConfig c = small_config("mido_a4");
  const std::string meta = metadata_sidecar(c, make_code(c.code));
  CHECK(meta.rfind("version=", 0) == 0);
  CHECK(meta.find("seed=" + std::to_string(kDefaultSeed) + "\n") != std::string::npos);
  CHECK(meta.find("effective_receivers=2\n") != std::string::npos);
}

}  // TEST_SUITE
