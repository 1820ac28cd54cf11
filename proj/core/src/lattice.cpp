#include "fdstc/lattice.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "fdstc/errors.hpp"
#include "fdstc/report.hpp"
#include "parallel.hpp"

namespace fdstc {

RealMatrix gram(const CodeSpec& code) {
  validate(code);
  const std::size_t k = code.K();
  std::vector<RealVector> v;
  v.reserve(k);
  for (std::size_t i = 0; i < k; ++i) v.push_back(realify(code.scaled_basis(i)));
  RealMatrix g(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i; j < k; ++j) g(i, j) = g(j, i) = dot(v[i], v[j]);
  return g;
}

double volume(const CodeSpec& code) {
  std::vector<RealVector> cols;
  for (std::size_t i = 0; i < code.K(); ++i) cols.push_back(realify(code.scaled_basis(i)));
  // Raises NumericalError when the basis is dependent.
  const QrFactors qr = qr_decompose(RealMatrix::from_columns(cols));
  double log_vol = 0.0;
  for (std::size_t i = 0; i < code.K(); ++i) log_vol += std::log(qr.r(i, i));
  return std::exp(log_vol);
}

double normalized_min_det(double min_det, double vol, int n, std::size_t k) {
  if (!(vol > 0.0)) throw ValidationError("normalized_min_det: volume must be positive");
  if (!(min_det > 0.0)) throw ValidationError("normalized_min_det: minimum determinant is zero");
  return min_det / std::pow(vol, static_cast<double>(n) / static_cast<double>(k));
}

namespace {

constexpr std::size_t kMaxN = 8;

double abs_det_small(std::array<cplx, kMaxN * kMaxN> a, std::size_t n) {
  double d = 1.0;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    double best = std::abs(a[col * n + col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double v = std::abs(a[r * n + col]);
      if (v > best) {
        best = v;
        pivot = r;
      }
    }
    if (best == 0.0) return 0.0;
    if (pivot != col)
      for (std::size_t c = 0; c < n; ++c) std::swap(a[col * n + c], a[pivot * n + c]);
    const cplx p = a[col * n + col];
    d *= best;
    for (std::size_t r = col + 1; r < n; ++r) {
      const cplx f = a[r * n + col] / p;
      for (std::size_t c = col + 1; c < n; ++c) a[r * n + c] -= f * a[col * n + c];
    }
  }
  return d;
}

struct Best {
  double value = std::numeric_limits<double>::infinity();
  std::vector<int> g;
  bool zero_found = false;
  std::uint64_t evaluated = 0;

  void offer(double v, const std::vector<int>& cand) {
    ++evaluated;
    if (v < value || (v == value && (g.empty() || cand < g))) {
      value = v;
      g = cand;
    }
  }

  void merge(const Best& o) {
    evaluated += o.evaluated;
    zero_found = zero_found || o.zero_found;
    if (o.g.empty()) return;
    if (o.value < value || (o.value == value && (g.empty() || o.g < g))) {
      value = o.value;
      g = o.g;
    }
  }
};

// Keeps a running codeword and evaluates |det| of it.
class Evaluator {
 public:
  explicit Evaluator(const CodeSpec& code)
      : n_(static_cast<std::size_t>(code.n_t)), k_(code.K()) {
    if (code.n_t != code.T) throw ValidationError("min_det_search: code must be square");
    if (n_ > kMaxN) throw ValidationError("min_det_search: at most 8 antennas supported");
    basis_.resize(k_ * n_ * n_);
    for (std::size_t i = 0; i < k_; ++i) {
      const auto b = code.scaled_basis(i);
      std::copy(b.entries().begin(), b.entries().end(), basis_.begin() + static_cast<long>(i * n_ * n_));
    }
    x_.fill(cplx{});
  }

  void reset(const std::vector<int>& g) {
    x_.fill(cplx{});
    for (std::size_t i = 0; i < k_; ++i) add(i, g[i]);
  }

  void add(std::size_t i, int delta) {
    if (delta == 0) return;
    const cplx* b = basis_.data() + i * n_ * n_;
    const double d = delta;
    for (std::size_t e = 0; e < n_ * n_; ++e) x_[e] += d * b[e];
  }

  // |det X|, reported as 0 when singular relative to ||X||_F^n.
  double abs_det(bool& singular) const {
    double f2 = 0.0;
    for (std::size_t e = 0; e < n_ * n_; ++e) f2 += std::norm(x_[e]);
    const double d = abs_det_small(x_, n_);
    const double scale = std::pow(std::sqrt(f2), static_cast<double>(n_));
    singular = d <= kZeroTolerance * scale;
    return singular ? 0.0 : d;
  }

 private:
  std::size_t n_;
  std::size_t k_;
  std::vector<cplx> basis_;
  std::array<cplx, kMaxN * kMaxN> x_{};
};

void evaluate(Evaluator& ev, const std::vector<int>& g, Best& best) {
  bool singular = false;
  const double d = ev.abs_det(singular);
  if (singular) best.zero_found = true;
  best.offer(d, g);
}

std::uint64_t checked_pow(std::uint64_t base, std::size_t exp) {
  std::uint64_t v = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (v > std::numeric_limits<std::uint64_t>::max() / base) return std::numeric_limits<std::uint64_t>::max();
    v *= base;
  }
  return v;
}

Best exhaustive_search(const CodeSpec& code, const MinDetOptions& opt) {
  const std::size_t k = code.K();
  const int r = opt.range;
  const std::uint64_t base = static_cast<std::uint64_t>(2 * r + 1);
  const std::uint64_t total = checked_pow(base, k);
  std::vector<Best> partial(static_cast<std::size_t>(std::max(1, opt.workers)));
  // The running codeword is rebuilt every `period` indices so rounding depends only on the index.
  const std::uint64_t period = checked_pow(base, std::min<std::size_t>(k, 3));
  detail::parallel_chunks(total, opt.workers, [&](std::uint64_t begin, std::uint64_t end, int w) {
    if (begin >= end) return;
    Evaluator ev(code);
    std::vector<int> g(k);
    auto set_index = [&](std::uint64_t idx) {
      for (std::size_t i = 0; i < k; ++i) {
        g[i] = static_cast<int>(idx % base) - r;
        idx /= base;
      }
      ev.reset(g);
    };
    auto step = [&] {
      for (std::size_t i = 0; i < k; ++i) {
        if (g[i] < r) {
          ++g[i];
          ev.add(i, 1);
          return;
        }
        ev.add(i, -2 * r);
        g[i] = -r;
      }
    };
    set_index(begin - begin % period);
    for (std::uint64_t c = begin - begin % period; c < begin; ++c) step();
    Best& best = partial[static_cast<std::size_t>(w)];
    for (std::uint64_t c = begin; c < end; ++c) {
      if (c % period == 0) set_index(c);
      if (std::any_of(g.begin(), g.end(), [](int v) { return v != 0; })) evaluate(ev, g, best);
      step();
    }
  });
  Best out;
  for (const auto& p : partial) out.merge(p);
  return out;
}

Best structured_search(const CodeSpec& code, const MinDetOptions& opt) {
  const std::size_t k = code.K();
  const int r = opt.range;
  std::vector<int> values;
  for (int v = -r; v <= r; ++v)
    if (v != 0) values.push_back(v);

  Best out;
  {
    Evaluator ev(code);
    std::vector<int> g(k, 0);
    for (std::size_t i = 0; i < k; ++i)
      for (int a : values) {
        g[i] = a;
        ev.reset(g);
        evaluate(ev, g, out);
        g[i] = 0;
      }
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = i + 1; j < k; ++j)
        for (int a : values)
          for (int b : values) {
            g[i] = a;
            g[j] = b;
            ev.reset(g);
            evaluate(ev, g, out);
            g[i] = g[j] = 0;
          }
  }

  std::vector<Best> partial(static_cast<std::size_t>(std::max(1, opt.workers)));
  const std::uint64_t span = static_cast<std::uint64_t>(2 * r + 1);
  detail::parallel_chunks(opt.random_samples, opt.workers,
                          [&](std::uint64_t begin, std::uint64_t end, int w) {
                            Evaluator ev(code);
                            std::vector<int> g(k);
                            Best& best = partial[static_cast<std::size_t>(w)];
                            for (std::uint64_t s = begin; s < end; ++s) {
                              SplitMix rng(stream_seed(opt.seed, {s}));
                              do {
                                for (auto& v : g) v = static_cast<int>(rng.below(span)) - r;
                              } while (std::all_of(g.begin(), g.end(), [](int v) { return v == 0; }));
                              ev.reset(g);
                              evaluate(ev, g, best);
                            }
                          });
  for (const auto& p : partial) out.merge(p);
  return out;
}

}  // namespace

MinDetResult min_det_search(const CodeSpec& code, const MinDetOptions& options) {
  validate(code);
  if (options.range < 1) throw ValidationError("min_det_search: range must be at least 1");
  if (options.workers < 1) throw ValidationError("min_det_search: workers must be positive");
  const std::uint64_t total =
      checked_pow(static_cast<std::uint64_t>(2 * options.range + 1), code.K());
  bool exhaustive = false;
  switch (options.mode) {
    case SearchMode::Exhaustive:
      if (total == std::numeric_limits<std::uint64_t>::max())
        throw ValidationError("min_det_search: exhaustive search space too large");
      exhaustive = true;
      break;
    case SearchMode::Structured:
      exhaustive = false;
      break;
    case SearchMode::Auto:
      exhaustive = total - 1 <= options.exhaustive_budget;
      break;
  }
  const Best best = exhaustive ? exhaustive_search(code, options) : structured_search(code, options);
  MinDetResult out;
  out.min_det = best.value;
  out.argmin = best.g;
  out.exhaustive = exhaustive;
  out.evaluated = best.evaluated;
  out.zero_found = best.zero_found;
  return out;
}

NvdReport check_nvd(const CodeSpec& code, double lower_bound, const MinDetOptions& options) {
  NvdReport rep;
  rep.lower_bound = lower_bound;
  rep.search = min_det_search(code, options);
  rep.holds = !rep.search.zero_found && rep.search.min_det >= lower_bound * (1.0 - 1e-9);
  return rep;
}

LatticeReport analyze(const CodeSpec& code, const MinDetOptions& options) {
  LatticeReport rep;
  rep.code = code.name;
  rep.n_t = code.n_t;
  rep.k = code.K();
  rep.rate = code.rate();
  rep.scale = code.scale;
  rep.gram_det = det(gram(code));
  rep.volume = volume(code);
  rep.search = min_det_search(code, options);
  rep.range = options.range;
  rep.seed = options.seed;
  rep.delta = rep.search.min_det > 0.0
                  ? normalized_min_det(rep.search.min_det, rep.volume, code.n_t, code.K())
                  : 0.0;
  rep.nvd = code.nvd;
  return rep;
}

std::string format_report(const LatticeReport& r) {
  TabularReport t;
  t.add("code", r.code);
  t.add("n_t", std::to_string(r.n_t));
  t.add("K", std::to_string(r.k));
  t.add("rate", r.rate);
  t.add("scale", r.scale);
  t.add("gram_det", r.gram_det);
  t.add("volume", r.volume);
  t.add("search", r.search.exhaustive ? "exhaustive" : "structured");
  t.add("range", std::to_string(r.range));
  t.add("seed", std::to_string(r.seed));
  t.add("evaluated", std::to_string(r.search.evaluated));
  t.add("min_det", r.search.min_det);
  std::string g;
  for (std::size_t i = 0; i < r.search.argmin.size(); ++i) {
    if (i) g += ",";
    g += std::to_string(r.search.argmin[i]);
  }
  t.add("argmin", g);
  t.add("zero_det_found", r.search.zero_found ? "yes" : "no");
  t.add("delta", r.delta);
  t.add("nvd", r.nvd);
  return t.str();
}

}  // namespace fdstc
