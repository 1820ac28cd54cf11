#include "cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <optional>
#include <sstream>
#include <string>

#include "fdstc/bounds.hpp"
#include "fdstc/channel_sim.hpp"
#include "fdstc/codebook.hpp"
#include "fdstc/errors.hpp"
#include "fdstc/fastdecode.hpp"
#include "fdstc/lattice.hpp"
#include "fdstc/report.hpp"
#include "fdstc/version.hpp"

namespace fdstc {

namespace {

struct Options {
  std::string code;
  int range = 1;
  int samples = -1;
  std::uint64_t seed = kDefaultSeed;
  std::string alphabet = "pam2";
  int trials = 100;
  double snr = 10.0;
  std::string snr_list;
  long long frames = -1;
  std::string out;
  std::string center = "Q";
  int index = 0;
  int workers = 1;
  int receivers = 0;
  std::string policy = "best";
  bool unconstrained = false;
  std::string file;
};

void emit(const Options& o, std::ostream& out, const std::string& text) {
  if (o.out.empty()) {
    out << text;
  } else {
    write_text_file(o.out, text);
  }
}

std::string list_codes() {
  std::string s;
  for (const auto& name : shipped_code_names()) {
    const CodeSpec c = make_code(name);
    const ComplexityReport rep = complexity_estimate(discover_pattern(c));
    s += name + "\tn_t=" + std::to_string(c.n_t) + "\tT=" + std::to_string(c.T) +
         "\tK=" + std::to_string(c.K()) + "\trate=" + format_double(c.rate()) +
         "\tn_r=" + std::to_string(c.default_receivers) + "\tkappa=" + std::to_string(rep.kappa) +
         "\tworst=" + rep.worst_case() + "\tnvd=" + c.nvd + "\n";
  }
  return s;
}

std::string analyze_cmd(const Options& o) {
  const CodeSpec c = make_code(o.code);
  MinDetOptions m;
  m.range = o.range;
  m.seed = o.seed;
  m.workers = o.workers;
  if (o.samples >= 0) m.random_samples = static_cast<std::uint64_t>(o.samples);
  return format_report(analyze(c, m));
}

std::string pattern_cmd(const Options& o) {
  const CodeSpec c = make_code(o.code);
  PatternOptions p;
  p.receivers = o.receivers;
  p.seed = o.seed;
  if (o.samples >= 0) p.samples = o.samples;
  SplitPolicy policy;
  if (o.policy == "best") policy = SplitPolicy::BestPrefix;
  else if (o.policy == "half") policy = SplitPolicy::HalfTail;
  else throw ValidationError("policy must be 'best' or 'half'");
  const OrthogonalityMask mask = discover_pattern(c, p);
  return format_pattern_report(c, mask, complexity_estimate(mask, policy), p);
}

std::string decode_test_cmd(const Options& o) {
  CodeSpec c = make_code(o.code);
  const Constellation alphabet = Constellation::parse(o.alphabet);
  if (o.trials < 1) throw ValidationError("trials must be positive");
  const int nr = o.receivers > 0 ? o.receivers : c.default_receivers;
  c.scale *= energy_normalization(c, alphabet);
  PatternOptions p;
  p.receivers = nr;
  const ComplexityReport grouped = complexity_estimate(discover_pattern(c, p));
  const ComplexityReport joint = joint_structure(c.K());
  const double total = std::pow(static_cast<double>(alphabet.size()), static_cast<double>(c.K()));
  const bool oracle = total <= static_cast<double>(std::uint64_t{1} << 20);
  const double n0 = std::pow(10.0, -o.snr / 10.0);

  std::uint64_t nodes_grouped = 0, nodes_joint = 0;
  int disagree_joint = 0, disagree_oracle = 0, symbol_errors = 0;
  for (int t = 0; t < o.trials; ++t) {
    SplitMix rng(stream_seed(o.seed, {0xdec0de, static_cast<std::uint64_t>(t)}));
    std::vector<int> g(c.K());
    for (auto& v : g) v = alphabet.levels()[rng.below(alphabet.size())];
    const ComplexMatrix h = sample_channel(nr, c.n_t, rng);
    const ComplexMatrix y =
        h * encode(c, std::span<const int>(g)) +
        complex_gaussian(static_cast<std::size_t>(nr), static_cast<std::size_t>(c.T), n0, rng);
    const RealMatrix b = effective_generator(c, h);
    const RealVector yv = realify(y);
    const DecodeResult dg = sphere_decode(b, yv, alphabet, grouped);
    const DecodeResult dj = sphere_decode(b, yv, alphabet, joint);
    nodes_grouped += dg.nodes;
    nodes_joint += dj.nodes;
    if (dg.g != dj.g) ++disagree_joint;
    if (dg.g != g) ++symbol_errors;
    if (oracle) {
      const DecodeResult de = exhaustive_ml(b, yv, alphabet);
      if (std::abs(de.metric - dg.metric) > 1e-9 * std::max(1.0, de.metric)) ++disagree_oracle;
    }
  }
  TabularReport r;
  r.add("code", c.name);
  r.add("alphabet", alphabet.name());
  r.add("receivers", std::to_string(nr));
  r.add("snr_db", o.snr);
  r.add("trials", std::to_string(o.trials));
  r.add("seed", std::to_string(o.seed));
  r.add("kappa", std::to_string(grouped.kappa));
  r.add("worst_case", grouped.worst_case());
  r.add("grouped_vs_joint_mismatches", std::to_string(disagree_joint));
  r.add("oracle", oracle ? "exhaustive" : "skipped (alphabet^K too large)");
  if (oracle) r.add("grouped_vs_oracle_metric_mismatches", std::to_string(disagree_oracle));
  r.add("block_errors", std::to_string(symbol_errors));
  r.add("mean_nodes_grouped", static_cast<double>(nodes_grouped) / o.trials);
  r.add("mean_nodes_joint", static_cast<double>(nodes_joint) / o.trials);
  return r.str();
}

void simulate_cmd(const Options& o, std::ostream& out) {
  SimConfig cfg = parse_sim_config(read_text_file(o.file));
  if (o.workers > 1) cfg.workers = o.workers;
  if (o.seed != kDefaultSeed) cfg.seed = o.seed;
  if (o.frames > 0) cfg.frames = static_cast<std::uint64_t>(o.frames);
  if (!o.snr_list.empty()) {
    cfg.snr_db.clear();
    for (auto s : split(o.snr_list, ',')) cfg.snr_db.push_back(parse_double(s));
  }
  const CodeSpec code = make_code(cfg.code);
  const std::string csv = bler_csv(run_bler(cfg));
  if (o.out.empty()) {
    out << csv;
  } else {
    write_text_file(o.out, csv);
    write_text_file(o.out + ".meta", metadata_sidecar(cfg, code));
  }
}

std::string bounds_cmd(const Options& o) {
  if (o.index < 1) throw ValidationError("--index is required and must be positive");
  return format_bounds_report(parse_center(o.center), o.index, !o.unconstrained);
}

std::string hasse_cmd(const Options& o) {
  return format_hasse_report(parse_invariants(read_text_file(o.file)));
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fast-decodable MIDO space-time code toolkit"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  Options o;

  auto* list = app.add_subcommand("list-codes", "List shipped codes with rate and kappa");
  list->add_option("--out", o.out, "Write the report to a file");

  auto code_opt = [&](CLI::App* sc) {
    sc->add_option("name", o.code, "Code name (same as --code)");
    sc->add_option("--code", o.code, "Code name");
    sc->add_option("--out", o.out, "Write the report to a file");
    sc->add_option("--seed", o.seed, "Random seed");
  };

  auto* analyze = app.add_subcommand("analyze", "Gram, volume, minimum determinant, delta");
  code_opt(analyze);
  analyze->add_option("--range", o.range, "Coefficient range [-r, r]")->check(CLI::PositiveNumber);
  analyze->add_option("--samples", o.samples, "Random samples for structured search");
  analyze->add_option("--workers", o.workers, "Worker threads")->check(CLI::PositiveNumber);

  auto* pattern = app.add_subcommand("pattern", "Persistent orthogonality mask and kappa");
  code_opt(pattern);
  pattern->add_option("--samples", o.samples, "Channel samples");
  pattern->add_option("--receivers", o.receivers, "Receive antennas");
  pattern->add_option("--policy", o.policy, "Split policy: best or half");

  auto* decode = app.add_subcommand("decode-test", "Grouped vs joint vs exhaustive decoding");
  code_opt(decode);
  decode->add_option("--alphabet", o.alphabet, "PAM alphabet, e.g. pam2");
  decode->add_option("--trials", o.trials, "Number of trials");
  decode->add_option("--snr", o.snr, "SNR in dB");
  decode->add_option("--receivers", o.receivers, "Receive antennas");

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo BLER from a key=value config");
  simulate->add_option("config", o.file, "Configuration file")->required()->check(CLI::ExistingFile);
  simulate->add_option("--out", o.out, "CSV path; metadata goes to <path>.meta");
  simulate->add_option("--workers", o.workers, "Worker threads")->check(CLI::PositiveNumber);
  simulate->add_option("--seed", o.seed, "Override the configured seed");
  simulate->add_option("--frames", o.frames, "Override frames per point");
  simulate->add_option("--snr", o.snr_list, "Override the SNR grid, comma separated dB");

  auto* bounds = app.add_subcommand("bounds", "Discriminant and normalized-determinant bounds");
  bounds->add_option("--center", o.center, "Q, Q(i), Q(sqrt2), Q(sqrt3), Q(sqrt5) or custom:...");
  bounds->add_option("--index", o.index, "Algebra index n")->required();
  bounds->add_flag("--unconstrained", o.unconstrained, "Do not require ramified real places");
  bounds->add_option("--out", o.out, "Write the report to a file");

  auto* hasse = app.add_subcommand("hasse", "Admissibility, index and discriminant of invariants");
  hasse->add_option("file", o.file, "Invariant file")->required()->check(CLI::ExistingFile);
  hasse->add_option("--out", o.out, "Write the report to a file");

  auto* sheet = app.add_subcommand("datasheet", "Export a code's basis matrices");
  sheet->add_option("name", o.code, "Code name (same as --code)");
  sheet->add_option("--code", o.code, "Code name");
  sheet->add_option("--out", o.out, "Write the datasheet to a file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? 0 : 2;
  }

  try {
    auto need_code = [&] {
      if (o.code.empty()) throw ValidationError("a code name is required");
    };
    if (list->parsed()) {
      emit(o, out, list_codes());
    } else if (analyze->parsed()) {
      need_code();
      emit(o, out, analyze_cmd(o));
    } else if (pattern->parsed()) {
      need_code();
      emit(o, out, pattern_cmd(o));
    } else if (decode->parsed()) {
      need_code();
      emit(o, out, decode_test_cmd(o));
    } else if (simulate->parsed()) {
      simulate_cmd(o, out);
    } else if (bounds->parsed()) {
      emit(o, out, bounds_cmd(o));
    } else if (hasse->parsed()) {
      emit(o, out, hasse_cmd(o));
    } else if (sheet->parsed()) {
      need_code();
      emit(o, out, datasheet(make_code(o.code)));
    }
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}

}  // namespace fdstc
