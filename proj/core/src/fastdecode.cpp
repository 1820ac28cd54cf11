#include "fdstc/fastdecode.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "fdstc/channel_sim.hpp"
#include "fdstc/errors.hpp"
#include "fdstc/report.hpp"

namespace fdstc {

RealMatrix effective_generator(const CodeSpec& code, const ComplexMatrix& h) {
  validate(code);
  if (h.cols() != static_cast<std::size_t>(code.n_t)) {
    throw ValidationError("effective_generator: channel has " + std::to_string(h.cols()) +
                          " columns, code has " + std::to_string(code.n_t) + " antennas");
  }
  std::vector<RealVector> cols;
  cols.reserve(code.K());
  for (std::size_t i = 0; i < code.K(); ++i) cols.push_back(realify(h * code.scaled_basis(i)));
  return RealMatrix::from_columns(cols);
}

OrthogonalityMask::OrthogonalityMask(std::size_t k) : k_(k), bits_(k * k, false) {}

void OrthogonalityMask::set(std::size_t i, std::size_t j, bool v) {
  bits_[i * k_ + j] = v;
  bits_[j * k_ + i] = v;
}

std::size_t OrthogonalityMask::count_zeros() const {
  std::size_t n = 0;
  for (std::size_t i = 0; i < k_; ++i)
    for (std::size_t j = i + 1; j < k_; ++j) n += (*this)(i, j) ? 1 : 0;
  return n;
}

std::string OrthogonalityMask::grid() const {
  std::string out;
  for (std::size_t i = 0; i < k_; ++i) {
    for (std::size_t j = 0; j < k_; ++j) {
      if (j) out += ' ';
      out += (*this)(i, j) ? '1' : '0';
    }
    out += '\n';
  }
  return out;
}

OrthogonalityMask discover_pattern(const CodeSpec& code, const PatternOptions& opt) {
  validate(code);
  if (opt.samples < 1) throw ValidationError("discover_pattern: need at least one sample");
  const int nr = opt.receivers > 0 ? opt.receivers : code.default_receivers;
  const std::size_t k = code.K();
  OrthogonalityMask mask(k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) mask.set(i, j, true);
  for (int s = 0; s < opt.samples; ++s) {
    SplitMix rng(stream_seed(opt.seed, {0x9a77e42ULL, static_cast<std::uint64_t>(s)}));
    const ComplexMatrix h = sample_channel(nr, code.n_t, rng);
    std::vector<ComplexMatrix> hb;
    std::vector<double> norms;
    for (std::size_t i = 0; i < k; ++i) {
      hb.push_back(h * code.scaled_basis(i));
      norms.push_back(hb.back().frobenius_norm());
    }
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = i + 1; j < k; ++j) {
        if (!mask(i, j)) continue;
        if (!negligible(frob_inner(hb[i], hb[j]), norms[i] * norms[j], opt.tolerance)) {
          mask.set(i, j, false);
        }
      }
  }
  return mask;
}

namespace {

// Connected components of the non-orthogonality graph on {0, ..., prefix - 1}.
std::vector<std::vector<int>> components(const OrthogonalityMask& mask, std::size_t prefix) {
  std::vector<int> parent(prefix);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  };
  for (std::size_t i = 0; i < prefix; ++i)
    for (std::size_t j = i + 1; j < prefix; ++j)
      if (!mask(i, j)) {
        const int a = find(static_cast<int>(i)), b = find(static_cast<int>(j));
        if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
      }
  std::vector<std::vector<int>> groups;
  std::vector<int> slot(prefix, -1);
  for (std::size_t i = 0; i < prefix; ++i) {
    const int r = find(static_cast<int>(i));
    if (slot[static_cast<std::size_t>(r)] < 0) {
      slot[static_cast<std::size_t>(r)] = static_cast<int>(groups.size());
      groups.emplace_back();
    }
    groups[static_cast<std::size_t>(slot[static_cast<std::size_t>(r)])].push_back(static_cast<int>(i));
  }
  return groups;
}

ComplexityReport structure_for_prefix(const OrthogonalityMask& mask, std::size_t prefix) {
  ComplexityReport rep;
  rep.k = mask.size();
  rep.prefix = prefix;
  rep.head_groups = components(mask, prefix);
  for (std::size_t i = prefix; i < rep.k; ++i) rep.tail.push_back(static_cast<int>(i));
  std::size_t largest = 0;
  for (const auto& g : rep.head_groups) largest = std::max(largest, g.size());
  rep.kappa = rep.tail.size() + largest;
  return rep;
}

}  // namespace

std::string ComplexityReport::worst_case() const {
  const std::size_t groups = std::max<std::size_t>(1, head_groups.size());
  std::string s = groups > 1 ? std::to_string(groups) : "";
  s += "|S|";
  if (kappa != 1) s += "^" + std::to_string(kappa);
  return s;
}

double ComplexityReport::reduction_percent() const {
  if (k == 0) return 0.0;
  return 100.0 * static_cast<double>(k - kappa) / static_cast<double>(k);
}

ComplexityReport joint_structure(std::size_t k) {
  ComplexityReport rep;
  rep.k = k;
  rep.prefix = 0;
  for (std::size_t i = 0; i < k; ++i) rep.tail.push_back(static_cast<int>(i));
  rep.kappa = k;
  return rep;
}

ComplexityReport complexity_estimate(const OrthogonalityMask& mask, SplitPolicy policy) {
  const std::size_t k = mask.size();
  if (k == 0) throw ValidationError("complexity_estimate: empty mask");
  if (policy == SplitPolicy::HalfTail) return structure_for_prefix(mask, k / 2);
  ComplexityReport best = joint_structure(k);
  for (std::size_t prefix = 1; prefix <= k; ++prefix) {
    ComplexityReport rep = structure_for_prefix(mask, prefix);
    if (rep.kappa < best.kappa) best = std::move(rep);
  }
  return best;
}

std::vector<std::pair<int, int>> predicted_r_zeros(const ComplexityReport& s) {
  std::vector<int> group_of(s.prefix, -1);
  for (std::size_t g = 0; g < s.head_groups.size(); ++g)
    for (int i : s.head_groups[g]) group_of[static_cast<std::size_t>(i)] = static_cast<int>(g);
  std::vector<std::pair<int, int>> out;
  for (std::size_t j = 0; j < s.prefix; ++j)
    for (std::size_t i = 0; i < j; ++i)
      if (group_of[i] != group_of[j]) out.emplace_back(static_cast<int>(i), static_cast<int>(j));
  return out;
}

double decoding_metric(const RealMatrix& generator, std::span<const double> y,
                       std::span<const int> g) {
  if (g.size() != generator.cols() || y.size() != generator.rows()) {
    throw ValidationError("decoding_metric: dimension mismatch");
  }
  double s = 0.0;
  for (std::size_t r = 0; r < generator.rows(); ++r) {
    double v = y[r];
    for (std::size_t c = 0; c < generator.cols(); ++c) v -= generator(r, c) * g[c];
    s += v * v;
  }
  return s;
}

namespace {

// Levels of the alphabet ordered by distance to `center`; equal distances list the smaller first.
class ZigZag {
 public:
  ZigZag(const std::vector<int>& levels, double center) : levels_(levels), center_(center) {
    const auto it = std::lower_bound(levels_.begin(), levels_.end(), center);
    hi_ = static_cast<long>(it - levels_.begin());
    lo_ = hi_ - 1;
  }

  bool next(int& v) {
    const long n = static_cast<long>(levels_.size());
    const bool lo_ok = lo_ >= 0, hi_ok = hi_ < n;
    if (!lo_ok && !hi_ok) return false;
    bool take_lo;
    if (!hi_ok) {
      take_lo = true;
    } else if (!lo_ok) {
      take_lo = false;
    } else {
      const double dl = center_ - levels_[static_cast<std::size_t>(lo_)];
      const double dh = levels_[static_cast<std::size_t>(hi_)] - center_;
      take_lo = dl <= dh;
    }
    v = take_lo ? levels_[static_cast<std::size_t>(lo_--)] : levels_[static_cast<std::size_t>(hi_++)];
    return true;
  }

 private:
  const std::vector<int>& levels_;
  double center_;
  long lo_ = 0;
  long hi_ = 0;
};

constexpr double kTieEps = 1e-10;

bool tie_or_better(double v, double bound) { return v <= bound + kTieEps * std::max(1.0, bound); }

class Searcher {
 public:
  Searcher(const RealMatrix& r, std::vector<double> z, const std::vector<int>& levels,
           const ComplexityReport& s, const Membership& member)
      : r_(r), z_(std::move(z)), levels_(levels), s_(s), member_(member), k_(r.cols()),
        g_(k_, 0), best_g_() {}

  void seed(const std::vector<int>& g) {
    if (member_ && !member_(g)) return;
    const double m = partial_metric(g);
    if (best_g_.empty() || m < best_ - kTieEps * std::max(1.0, best_) ||
        (tie_or_better(m, best_) && g < best_g_)) {
      best_ = m;
      best_g_ = g;
    }
  }

  void run() { tail(static_cast<long>(k_) - 1, 0.0); }

  const std::vector<int>& best_g() const { return best_g_; }
  std::uint64_t nodes() const { return nodes_; }

 private:
  double partial_metric(const std::vector<int>& g) const {
    double s = 0.0;
    for (std::size_t i = 0; i < k_; ++i) {
      double v = z_[i];
      for (std::size_t j = i; j < k_; ++j) v -= r_(i, j) * g[j];
      s += v * v;
    }
    return s;
  }

  double center(std::size_t i, const std::vector<int>& g, std::span<const int> cols) const {
    double v = z_[i];
    for (int j : cols) v -= r_(i, static_cast<std::size_t>(j)) * g[static_cast<std::size_t>(j)];
    return v;
  }

  void tail(long t, double partial) {
    if (t < static_cast<long>(s_.prefix)) {
      leaf(partial);
      return;
    }
    const auto ti = static_cast<std::size_t>(t);
    double v = z_[ti];
    for (std::size_t j = ti + 1; j < k_; ++j) v -= r_(ti, j) * g_[j];
    const double rii = r_(ti, ti);
    ZigZag zz(levels_, v / rii);
    int a;
    while (zz.next(a)) {
      ++nodes_;
      const double e = v - rii * a;
      const double next = partial + e * e;
      if (!best_g_.empty() && !tie_or_better(next, best_)) break;
      g_[ti] = a;
      tail(t - 1, next);
    }
    g_[ti] = 0;
  }

  void leaf(double partial) {
    double total = partial;
    for (const auto& group : s_.head_groups) {
      const double budget = best_g_.empty() ? std::numeric_limits<double>::infinity() : best_ - total;
      double m;
      if (!solve_group(group, budget, m)) return;
      total += m;
    }
    if (member_ && !member_(g_)) return;
    if (best_g_.empty() || total < best_ - kTieEps * std::max(1.0, best_) ||
        (tie_or_better(total, best_) && g_ < best_g_)) {
      best_ = total;
      best_g_ = g_;
    }
  }

  // Exact minimum of the group's rows given the tail; leaves the argmin in g_.
  bool solve_group(const std::vector<int>& group, double budget, double& out) {
    group_best_ = std::numeric_limits<double>::infinity();
    group_budget_ = budget;
    group_arg_.clear();
    group_descend(group, static_cast<long>(group.size()) - 1, 0.0);
    if (group_arg_.empty()) {
      for (int i : group) g_[static_cast<std::size_t>(i)] = 0;
      return false;
    }
    for (std::size_t p = 0; p < group.size(); ++p) g_[static_cast<std::size_t>(group[p])] = group_arg_[p];
    out = group_best_;
    return true;
  }

  void group_descend(const std::vector<int>& group, long p, double partial) {
    if (p < 0) {
      std::vector<int> cand(group.size());
      for (std::size_t q = 0; q < group.size(); ++q) cand[q] = g_[static_cast<std::size_t>(group[q])];
      if (group_arg_.empty() || partial < group_best_ - kTieEps * std::max(1.0, group_best_) ||
          (tie_or_better(partial, group_best_) && cand < group_arg_)) {
        group_best_ = partial;
        group_arg_ = std::move(cand);
      }
      return;
    }
    const auto i = static_cast<std::size_t>(group[static_cast<std::size_t>(p)]);
    double v = z_[i];
    for (std::size_t q = static_cast<std::size_t>(p) + 1; q < group.size(); ++q) {
      const auto j = static_cast<std::size_t>(group[q]);
      v -= r_(i, j) * g_[j];
    }
    for (int j : s_.tail) v -= r_(i, static_cast<std::size_t>(j)) * g_[static_cast<std::size_t>(j)];
    const double rii = r_(i, i);
    ZigZag zz(levels_, v / rii);
    int a;
    while (zz.next(a)) {
      ++nodes_;
      const double e = v - rii * a;
      const double next = partial + e * e;
      const double bound = std::min(group_budget_, group_best_);
      if (std::isfinite(bound) && !tie_or_better(next, bound)) break;
      g_[i] = a;
      group_descend(group, p - 1, next);
    }
    g_[i] = 0;
  }

  const RealMatrix& r_;
  std::vector<double> z_;
  const std::vector<int>& levels_;
  const ComplexityReport& s_;
  const Membership& member_;
  std::size_t k_;
  std::vector<int> g_;
  std::vector<int> best_g_;
  double best_ = std::numeric_limits<double>::infinity();
  std::uint64_t nodes_ = 0;
  double group_best_ = 0.0;
  double group_budget_ = 0.0;
  std::vector<int> group_arg_;
};

int nearest_level(const std::vector<int>& levels, double x) {
  int v = levels.front();
  ZigZag zz(levels, x);
  zz.next(v);
  return v;
}

void check_structure(const ComplexityReport& s, std::size_t k) {
  if (s.k != k) throw ValidationError("sphere_decode: structure built for a different K");
  std::vector<int> seen(k, 0);
  for (const auto& g : s.head_groups)
    for (int i : g) {
      if (i < 0 || static_cast<std::size_t>(i) >= s.prefix) throw ValidationError("sphere_decode: bad group index");
      ++seen[static_cast<std::size_t>(i)];
    }
  for (int i : s.tail) {
    if (static_cast<std::size_t>(i) < s.prefix || static_cast<std::size_t>(i) >= k) {
      throw ValidationError("sphere_decode: bad tail index");
    }
    ++seen[static_cast<std::size_t>(i)];
  }
  for (int c : seen)
    if (c != 1) throw ValidationError("sphere_decode: structure is not a partition of the indices");
}

}  // namespace

DecodeResult sphere_decode(const RealMatrix& generator, std::span<const double> y,
                           const Constellation& alphabet, const ComplexityReport& structure,
                           const Membership& member) {
  const std::size_t k = generator.cols();
  if (y.size() != generator.rows()) throw ValidationError("sphere_decode: y has the wrong length");
  const ComplexityReport joint = joint_structure(k);
  const ComplexityReport& s = member ? joint : structure;
  check_structure(s, k);

  const QrFactors qr = qr_decompose(generator);
  const RealMatrix qt = qr.q.transpose();
  const RealVector z = qt * y;
  const auto& levels = alphabet.levels();

  Searcher search(qr.r, z, levels, s, member);
  // Babai point and the clipped least-squares point both bound the optimum from above.
  std::vector<int> babai(k), ls(k);
  std::vector<double> real_ls(k);
  for (std::size_t t = k; t-- > 0;) {
    double vb = z[t], vl = z[t];
    for (std::size_t j = t + 1; j < k; ++j) {
      vb -= qr.r(t, j) * babai[j];
      vl -= qr.r(t, j) * real_ls[j];
    }
    babai[t] = nearest_level(levels, vb / qr.r(t, t));
    real_ls[t] = vl / qr.r(t, t);
    ls[t] = nearest_level(levels, real_ls[t]);
  }
  search.seed(babai);
  search.seed(ls);
  search.run();
  if (search.best_g().empty()) throw NumericalError("sphere_decode: no admissible point found");

  DecodeResult out;
  out.g = search.best_g();
  out.metric = decoding_metric(generator, y, out.g);
  out.nodes = search.nodes();
  return out;
}

DecodeResult sphere_decode(const CodeSpec& code, const ComplexMatrix& y, const ComplexMatrix& h,
                           const Constellation& alphabet, bool use_groups) {
  const RealMatrix b = effective_generator(code, h);
  const RealVector yv = realify(y);
  if (!use_groups) return sphere_decode(b, yv, alphabet, joint_structure(code.K()));
  PatternOptions opt;
  opt.receivers = static_cast<int>(h.rows());
  opt.samples = 32;
  const ComplexityReport s = complexity_estimate(discover_pattern(code, opt));
  return sphere_decode(b, yv, alphabet, s);
}

DecodeResult exhaustive_ml(const RealMatrix& generator, std::span<const double> y,
                           const Constellation& alphabet, std::uint64_t budget) {
  const std::size_t k = generator.cols();
  const std::size_t m = generator.rows();
  if (y.size() != m) throw ValidationError("exhaustive_ml: y has the wrong length");
  const auto& levels = alphabet.levels();
  const std::uint64_t q = levels.size();
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < k; ++i) {
    if (total > budget / q) {
      throw ValidationError("exhaustive_ml: |alphabet|^K exceeds the budget of " + std::to_string(budget));
    }
    total *= q;
  }
  std::vector<std::size_t> idx(k, 0);
  std::vector<int> g(k, levels.front());
  RealVector res(y.begin(), y.end());
  for (std::size_t c = 0; c < k; ++c)
    for (std::size_t r = 0; r < m; ++r) res[r] -= generator(r, c) * g[c];
  // Column-major copy for the incremental updates.
  std::vector<double> cols(m * k);
  for (std::size_t c = 0; c < k; ++c)
    for (std::size_t r = 0; r < m; ++r) cols[c * m + r] = generator(r, c);

  DecodeResult out;
  double best = std::numeric_limits<double>::infinity();
  for (std::uint64_t n = 0; n < total; ++n) {
    double s = 0.0;
    for (double v : res) s += v * v;
    if (out.g.empty() || s < best - kTieEps * std::max(1.0, best) ||
        (tie_or_better(s, best) && g < out.g)) {
      best = s;
      out.g = g;
    }
    for (std::size_t c = 0; c < k; ++c) {
      const int old = g[c];
      if (++idx[c] == levels.size()) idx[c] = 0;
      g[c] = levels[idx[c]];
      const double d = static_cast<double>(g[c] - old);
      const double* col = cols.data() + c * m;
      for (std::size_t r = 0; r < m; ++r) res[r] -= d * col[r];
      if (idx[c] != 0) break;
    }
  }
  out.metric = decoding_metric(generator, y, out.g);
  out.nodes = total;
  return out;
}

DecodeResult exhaustive_ml(const CodeSpec& code, const ComplexMatrix& y, const ComplexMatrix& h,
                           const Constellation& alphabet, std::uint64_t budget) {
  return exhaustive_ml(effective_generator(code, h), realify(y), alphabet, budget);
}

std::string format_pattern_report(const CodeSpec& code, const OrthogonalityMask& mask,
                                  const ComplexityReport& rep, const PatternOptions& opt) {
  TabularReport t;
  t.add("code", code.name);
  t.add("K", std::to_string(code.K()));
  t.add("receivers", std::to_string(opt.receivers > 0 ? opt.receivers : code.default_receivers));
  t.add("samples", std::to_string(opt.samples));
  t.add("seed", std::to_string(opt.seed));
  t.add("orthogonal_pairs", std::to_string(mask.count_zeros()));
  t.add("prefix", std::to_string(rep.prefix));
  std::string groups;
  for (const auto& g : rep.head_groups) {
    if (!groups.empty()) groups += " ";
    groups += "{";
    for (std::size_t i = 0; i < g.size(); ++i) groups += (i ? "," : "") + std::to_string(g[i] + 1);
    groups += "}";
  }
  t.add("head_groups", groups.empty() ? "-" : groups);
  t.add("tail_size", std::to_string(rep.tail.size()));
  t.add("kappa", std::to_string(rep.kappa));
  t.add("worst_case", rep.worst_case());
  t.add("reduction_percent", rep.reduction_percent());
  t.add_section("mask");
  return t.str() + mask.grid();
}

}  // namespace fdstc
