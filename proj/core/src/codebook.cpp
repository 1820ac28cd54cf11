#include "fdstc/codebook.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <string>

#include "fdstc/errors.hpp"
#include "fdstc/numberfield.hpp"
#include "fdstc/report.hpp"

namespace fdstc {

Constellation::Constellation(std::vector<int> levels) : levels_(std::move(levels)) {
  if (levels_.empty()) throw ValidationError("Constellation: empty alphabet");
  std::sort(levels_.begin(), levels_.end());
  if (std::adjacent_find(levels_.begin(), levels_.end()) != levels_.end()) {
    throw ValidationError("Constellation: repeated level");
  }
}

Constellation Constellation::pam(int q) {
  if (q < 2 || q % 2 != 0) throw ValidationError("Constellation::pam: Q must be even and at least 2");
  std::vector<int> levels;
  for (int k = 0; k < q; ++k) levels.push_back(2 * k - (q - 1));
  return Constellation(std::move(levels));
}

Constellation Constellation::parse(std::string_view text) {
  text = trim(text);
  std::string s(text);
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  std::string_view v = s;
  if (v.starts_with("pam")) v.remove_prefix(3);
  if (v.ends_with("-pam")) v.remove_suffix(4);
  if (v.empty()) throw ValidationError("unrecognised alphabet '" + std::string(text) + "'");
  return pam(static_cast<int>(parse_integer(v)));
}

bool Constellation::contains(int v) const {
  return std::binary_search(levels_.begin(), levels_.end(), v);
}

double Constellation::mean_square() const {
  double s = 0.0;
  for (int v : levels_) s += static_cast<double>(v) * v;
  return s / static_cast<double>(levels_.size());
}

std::string Constellation::name() const {
  const auto q = static_cast<int>(levels_.size());
  if (*this == pam(q)) return "pam" + std::to_string(q);
  std::string out = "levels:";
  for (std::size_t i = 0; i < levels_.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(levels_[i]);
  }
  return out;
}

ComplexMatrix CodeSpec::scaled_basis(std::size_t i) const { return cplx(scale) * basis.at(i); }

void validate(const CodeSpec& code) {
  if (code.basis.empty()) throw ValidationError("code '" + code.name + "' has an empty basis");
  if (code.n_t < 1 || code.T < 1) throw ValidationError("code '" + code.name + "': bad shape");
  for (const auto& b : code.basis)
    if (b.rows() != static_cast<std::size_t>(code.n_t) ||
        b.cols() != static_cast<std::size_t>(code.T))
      throw ValidationError("code '" + code.name + "': basis matrix has the wrong shape");
  if (!(code.scale > 0.0)) throw ValidationError("code '" + code.name + "': scale must be positive");
}

namespace {

template <class Number>
ComplexMatrix encode_impl(const CodeSpec& code, std::span<const Number> g) {
  if (g.size() != code.K()) {
    throw ValidationError("encode: expected " + std::to_string(code.K()) +
                          " coefficients, got " + std::to_string(g.size()));
  }
  ComplexMatrix x(static_cast<std::size_t>(code.n_t), static_cast<std::size_t>(code.T));
  auto out = x.entries();
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (g[i] == 0) continue;
    const double gi = static_cast<double>(g[i]) * code.scale;
    const auto b = code.basis[i].entries();
    for (std::size_t e = 0; e < out.size(); ++e) out[e] += gi * b[e];
  }
  return x;
}

}  // namespace

ComplexMatrix encode(const CodeSpec& code, std::span<const int> g) { return encode_impl(code, g); }
ComplexMatrix encode(const CodeSpec& code, std::span<const double> g) {
  return encode_impl(code, g);
}

namespace {

// One matrix cell: coeff * (zeta -> zeta^exponent)(x_slot).
struct Cell {
  int slot = -1;
  int exponent = 1;
  cplx coeff{1.0, 0.0};
};

class Layout {
 public:
  Layout(int rows, int cols) : rows_(rows), cols_(cols), cells_(rows * cols) {}

  void set(int r, int c, int slot, int exponent, cplx coeff = 1.0) {
    cells_[r * cols_ + c] = Cell{slot, exponent, coeff};
  }

  ComplexMatrix place(int slot, const FieldElement& w) const {
    ComplexMatrix m(static_cast<std::size_t>(rows_), static_cast<std::size_t>(cols_));
    for (int r = 0; r < rows_; ++r)
      for (int c = 0; c < cols_; ++c) {
        const Cell& cell = cells_[r * cols_ + c];
        if (cell.slot == slot) m(r, c) = cell.coeff * w.embed(cell.exponent);
      }
    return m;
  }

 private:
  int rows_;
  int cols_;
  std::vector<Cell> cells_;
};

using SlotBasis = std::vector<FieldElement>;

std::vector<ComplexMatrix> expand(const Layout& layout, const std::vector<SlotBasis>& bases,
                                  const std::vector<int>& slot_order) {
  std::vector<ComplexMatrix> out;
  for (int slot : slot_order)
    for (const auto& w : bases.at(static_cast<std::size_t>(slot))) out.push_back(layout.place(slot, w));
  return out;
}

std::vector<int> iota_slots(int n) {
  std::vector<int> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = i;
  return v;
}

FieldElement zeta(const FieldPtr& f, long k) { return FieldElement::zeta_power(f, k); }
FieldElement rat(const FieldPtr& f, long num, long den = 1) {
  return FieldElement::rational(f, Rational(num, den));
}

const cplx kI{0.0, 1.0};

CodeSpec finish(std::string name, int n, std::vector<ComplexMatrix> basis, double scale,
                int receivers, std::string nvd, std::string notes) {
  CodeSpec c;
  c.name = std::move(name);
  c.n_t = n;
  c.T = n;
  c.basis = std::move(basis);
  c.scale = scale;
  c.default_receivers = receivers;
  c.nvd = std::move(nvd);
  c.notes = std::move(notes);
  validate(c);
  return c;
}

// Alamouti block [[x, -y*], [y, x*]] over Q(i) placed at (r0, c0).
void alamouti_block(Layout& l, int r0, int c0, int x, int y, cplx coeff = 1.0) {
  l.set(r0, c0, x, 1, coeff);
  l.set(r0, c0 + 1, y, 3, -coeff);
  l.set(r0 + 1, c0, y, 1, coeff);
  l.set(r0 + 1, c0 + 1, x, 3, coeff);
}

}  // namespace

CodeSpec alamouti() {
  const FieldPtr f = cyclotomic_field(4);
  Layout l(2, 2);
  alamouti_block(l, 0, 0, 0, 1);
  const SlotBasis zi{rat(f, 1), zeta(f, 1)};
  return finish("alamouti", 2, expand(l, {zi, zi}, {0, 1}), 1.0, 1, "nvd",
                "Alamouti code over Z[i]; det = |x1|^2 + |x2|^2");
}

CodeSpec quasi_orth_dort() {
  // Q(zeta_8); tau: zeta_8 -> -zeta_8 is exponent 5, conj is 7, conj o tau is 3.
  const FieldPtr f = cyclotomic_field(8);
  Layout l(4, 4);
  l.set(0, 0, 0, 1);
  l.set(0, 1, 1, 7, -1.0);
  l.set(1, 0, 1, 1);
  l.set(1, 1, 0, 7);
  l.set(2, 2, 0, 5);
  l.set(2, 3, 1, 3, -1.0);
  l.set(3, 2, 1, 5);
  l.set(3, 3, 0, 3);
  const SlotBasis b{rat(f, 1), zeta(f, 2), zeta(f, 1), zeta(f, 3)};
  return finish("quasi_orth_dort", 4, expand(l, {b, b}, {0, 1}), 1.0, 1, "nvd",
                "Quasi-orthogonal 4x4 code from the Z[zeta_8]-order of D_ort; diag(psi_1, psi_2)");
}

CodeSpec a2_code() {
  // sqrt3 = zeta_12 + zeta_12^11; exponent 5 sends sqrt3 to -sqrt3.
  const FieldPtr f = cyclotomic_field(12);
  const FieldElement sqrt3 = zeta(f, 1) + zeta(f, 11);
  Layout l(2, 2);
  l.set(0, 0, 0, 1);
  l.set(0, 1, 1, 5, -1.0);
  l.set(1, 0, 1, 1);
  l.set(1, 1, 0, 5);
  const SlotBasis b{rat(f, 1), sqrt3};
  return finish("a2_code", 2, expand(l, {b, b}, {0, 1}), 1.0, 1, "nvd",
                "Real 2x2 code from (-1, 3)_Q; no decoding reduction");
}

CodeSpec mido_a4(BasisVariant variant) {
  // Q(zeta_5): id 1, conj 4, sigma 3, conj o sigma 2.
  const FieldPtr f = cyclotomic_field(5);
  const double r = std::pow(8.0 / 9.0, 0.25);
  const double r2 = r * r, r3 = r2 * r;
  Layout l(4, 4);
  l.set(0, 0, 0, 1);
  l.set(0, 1, 1, 4, -r2);
  l.set(0, 2, 3, 3, -r3);
  l.set(0, 3, 2, 2, -r);
  l.set(1, 0, 1, 1, r2);
  l.set(1, 1, 0, 4);
  l.set(1, 2, 2, 3, r);
  l.set(1, 3, 3, 2, -r3);
  l.set(2, 0, 2, 1, r);
  l.set(2, 1, 3, 4, -r3);
  l.set(2, 2, 0, 3);
  l.set(2, 3, 1, 2, -r2);
  l.set(3, 0, 3, 1, r3);
  l.set(3, 1, 2, 4, r);
  l.set(3, 2, 1, 3, r2);
  l.set(3, 3, 0, 2);
  SlotBasis b;
  std::string name = "mido_a4";
  if (variant == BasisVariant::Integral) {
    for (int k = 0; k < 4; ++k) b.push_back(zeta(f, k) - zeta(f, k + 1));
  } else {
    name += "_half_imag";
    b = {rat(f, 1), Rational(1, 2) * (zeta(f, 1) + zeta(f, 4)),
         Rational(1, 2) * (zeta(f, 1) - zeta(f, 4)), Rational(1, 4) * (zeta(f, 2) - zeta(f, 3))};
  }
  return finish(std::move(name), 4, expand(l, {b, b, b, b}, iota_slots(4)), 1.0, 2, "nvd",
                variant == BasisVariant::Integral
                    ? "4x4 code from the A4 algebra (zeta_5, gamma=-8/9), integral basis"
                    : "4x4 code from the A4 algebra, real/imaginary-separated basis");
}

namespace {

// x0 + u x1 + u^2 x2 + u^3 x3 over Q(i, zeta_5) with sigma^2 acting trivially on the slots.
Layout mido1_layout(cplx gamma) {
  Layout l(4, 4);
  const int s = 17;  // zeta_20 -> zeta_20^17 fixes i and maps zeta_5 to zeta_5^2
  l.set(0, 0, 0, 1);
  l.set(0, 1, 3, s, gamma);
  l.set(0, 2, 2, 1, gamma);
  l.set(0, 3, 1, s, gamma);
  l.set(1, 0, 1, 1);
  l.set(1, 1, 0, s);
  l.set(1, 2, 3, 1, gamma);
  l.set(1, 3, 2, s, gamma);
  l.set(2, 0, 2, 1);
  l.set(2, 1, 1, s);
  l.set(2, 2, 0, 1);
  l.set(2, 3, 3, s, gamma);
  l.set(3, 0, 3, 1);
  l.set(3, 1, 2, s);
  l.set(3, 2, 1, 1);
  l.set(3, 3, 0, s);
  return l;
}

// alpha * {1, i, theta, i theta}, theta = (1 + sqrt5) / 2, alpha = 1 + i - i theta.
SlotBasis golden_slot_basis(const FieldPtr& f) {
  const FieldElement i = zeta(f, 5);
  const FieldElement theta = rat(f, 1) + zeta(f, 4) + zeta(f, 16);
  const FieldElement alpha = rat(f, 1) + i - i * theta;
  return {alpha, alpha * i, alpha * theta, alpha * i * theta};
}

const double kGoldenScale = std::pow(5.0, -0.25);

}  // namespace

CodeSpec mido_c1() {
  const FieldPtr f = cyclotomic_field(20);
  const SlotBasis b = golden_slot_basis(f);
  return finish("mido_c1", 4, expand(mido1_layout(kI), {b, b, b, b}, iota_slots(4)), kGoldenScale,
                2, "nvd", "Nested Golden-code construction over Q(i, sqrt5), gamma = i");
}

CodeSpec mido_c1_untwisted() {
  const FieldPtr f = cyclotomic_field(20);
  const SlotBasis b = golden_slot_basis(f);
  return finish("mido_c1_untwisted", 4, expand(mido1_layout(-kI), {b, b, b, b}, iota_slots(4)),
                kGoldenScale, 2, "unknown", "MIDO1 layout with gamma = -i");
}

CodeSpec mido_c3() {
  const FieldPtr f = cyclotomic_field(20);
  const SlotBasis b = golden_slot_basis(f);
  const cplx z8 = std::polar(1.0, M_PI / 4.0);
  Layout l(4, 4);
  const int s = 17;
  l.set(0, 0, 0, 1);
  l.set(0, 1, 3, s, -kI);
  l.set(0, 2, 2, 1, -z8);
  l.set(0, 3, 1, s, -z8);
  l.set(1, 0, 1, 1);
  l.set(1, 1, 0, s);
  l.set(1, 2, 3, 1, -z8);
  l.set(1, 3, 2, s, -z8);
  l.set(2, 0, 2, 1, z8);
  l.set(2, 1, 1, s, z8);
  l.set(2, 2, 0, 1);
  l.set(2, 3, 3, s, -kI);
  l.set(3, 0, 3, 1, z8);
  l.set(3, 1, 2, s, z8);
  l.set(3, 2, 1, 1);
  l.set(3, 3, 0, s);
  return finish("mido_c3", 4, expand(l, {b, b, b, b}, iota_slots(4)), kGoldenScale, 2, "nvd",
                "MIDO1 variant with gamma = -i and zeta_8 twist");
}

CodeSpec mido_c2() {
  // Q(zeta_20): id 1, conj 19, sigma 17, conj o sigma 3.
  const FieldPtr f = cyclotomic_field(20);
  const FieldElement i = zeta(f, 5);
  const FieldElement one = rat(f, 1);
  Layout l(4, 4);
  l.set(0, 0, 0, 1);
  l.set(0, 1, 2, 19, -1.0);
  l.set(0, 2, 3, 17, kI);
  l.set(0, 3, 1, 3, kI);
  l.set(1, 0, 2, 1);
  l.set(1, 1, 0, 19);
  l.set(1, 2, 1, 17);
  l.set(1, 3, 3, 3, -1.0);
  l.set(2, 0, 1, 1);
  l.set(2, 1, 3, 19, -1.0);
  l.set(2, 2, 0, 17);
  l.set(2, 3, 2, 3, -1.0);
  l.set(3, 0, 3, 1);
  l.set(3, 1, 1, 19);
  l.set(3, 2, 2, 17);
  l.set(3, 3, 0, 3);
  const SlotBasis even{one, i * zeta(f, 1), zeta(f, 2), i * zeta(f, 3)};
  const SlotBasis odd{one + i, (one - i) * zeta(f, 1), (one + i) * zeta(f, 2),
                      (one - i) * zeta(f, 3)};
  return finish("mido_c2", 4, expand(l, {even, even, odd, odd}, {0, 2, 1, 3}), 1.0, 2, "nvd",
                "Punctured MIDO2 code, Alamouti-first layout; basis ordered x0, x2, x1, x3");
}

CodeSpec code_6x3(BasisVariant variant) {
  // Q(zeta_7): id 1, sigma 3, sigma^2 2, conj 6, conj o sigma 4, conj o sigma^2 5.
  const FieldPtr f = cyclotomic_field(7);
  const double r = std::sqrt(0.75);
  const double r2 = 0.75;
  Layout l(6, 6);
  for (int blk = 0; blk < 3; ++blk) {
    // First column block: [[x_{2b}, -r x_{2b+1}^*], [r x_{2b+1}, x_{2b}^*]].
    const int a = 2 * blk, b = 2 * blk + 1;
    l.set(2 * blk, 0, a, 1);
    l.set(2 * blk, 1, b, 6, -r);
    l.set(2 * blk + 1, 0, b, 1, r);
    l.set(2 * blk + 1, 1, a, 6);
  }
  // Second column block (sigma).
  l.set(0, 2, 5, 3, -r2);
  l.set(0, 3, 4, 4, -r);
  l.set(1, 2, 4, 3, r);
  l.set(1, 3, 5, 4, -r2);
  l.set(2, 2, 0, 3);
  l.set(2, 3, 1, 4, -r);
  l.set(3, 2, 1, 3, r);
  l.set(3, 3, 0, 4);
  l.set(4, 2, 2, 3);
  l.set(4, 3, 3, 4, -r);
  l.set(5, 2, 3, 3, r);
  l.set(5, 3, 2, 4);
  // Third column block (sigma^2).
  l.set(0, 4, 3, 2, -r2);
  l.set(0, 5, 2, 5, -r);
  l.set(1, 4, 2, 2, r);
  l.set(1, 5, 3, 5, -r2);
  l.set(2, 4, 5, 2, -r2);
  l.set(2, 5, 4, 5, -r);
  l.set(3, 4, 4, 2, r);
  l.set(3, 5, 5, 5, -r2);
  l.set(4, 4, 0, 2);
  l.set(4, 5, 1, 5, -r);
  l.set(5, 4, 1, 2, r);
  l.set(5, 5, 0, 5);
  SlotBasis b;
  std::string name = "code_6x3";
  if (variant == BasisVariant::Integral) {
    for (int k = 0; k < 6; ++k) b.push_back(zeta(f, k));
  } else {
    name += "_half_imag";
    b = {rat(f, 1),
         zeta(f, 1) + zeta(f, 6),
         zeta(f, 2) + zeta(f, 5),
         zeta(f, 1) - zeta(f, 6),
         zeta(f, 2) - zeta(f, 5),
         zeta(f, 3) - zeta(f, 4)};
  }
  std::vector<SlotBasis> bases(6, b);
  return finish(std::move(name), 6, expand(l, bases, iota_slots(6)), 1.0, 3, "nvd",
                variant == BasisVariant::Integral
                    ? "6x6 code from (Q(zeta_7)/Q, sigma, -3/4), integral basis"
                    : "6x6 code from (Q(zeta_7)/Q, sigma, -3/4), real/imaginary-separated basis");
}

CodeSpec code_6x2() {
  const CodeSpec full = code_6x3(BasisVariant::HalfImaginary);
  std::vector<int> keep;
  const int dropped[] = {13, 14, 15, 19, 20, 21, 25, 26, 27, 31, 32, 33};
  for (int i = 1; i <= 36; ++i)
    if (std::find(std::begin(dropped), std::end(dropped), i) == std::end(dropped)) keep.push_back(i);
  CodeSpec c = puncture(full, keep, "code_6x2");
  c.default_receivers = 2;
  c.notes = "code_6x3_half_imag with the real parts of x2..x5 punctured";
  return c;
}

CodeSpec sr_unrotated() {
  const FieldPtr f = cyclotomic_field(4);
  const cplx z8 = std::polar(1.0, M_PI / 4.0);
  Layout l(4, 4);
  alamouti_block(l, 0, 0, 0, 1);
  alamouti_block(l, 0, 2, 2, 3, z8);
  alamouti_block(l, 2, 0, 4, 5, z8);
  alamouti_block(l, 2, 2, 6, 7);
  const SlotBasis zi{rat(f, 1), zeta(f, 1)};
  return finish("sr_unrotated", 4, expand(l, std::vector<SlotBasis>(8, zi), iota_slots(8)), 1.0, 2,
                "not-full-diversity", "Stacked Alamouti blocks [[A, z8 B], [z8 C, D]] before rotation");
}

CodeSpec puncture(const CodeSpec& code, std::span<const int> keep, std::string name) {
  CodeSpec out = code;
  out.name = std::move(name);
  out.basis.clear();
  for (int idx : keep) {
    if (idx < 1 || static_cast<std::size_t>(idx) > code.K()) {
      throw ValidationError("puncture: index " + std::to_string(idx) + " out of range");
    }
    out.basis.push_back(code.basis[static_cast<std::size_t>(idx - 1)]);
  }
  validate(out);
  return out;
}

CodeSpec conjugate(const CodeSpec& code, const ComplexMatrix& c, std::string name) {
  CodeSpec out = code;
  out.name = std::move(name);
  const ComplexMatrix ci = inverse(c);
  for (auto& b : out.basis) b = c * b * ci;
  return out;
}

std::vector<std::string> shipped_code_names() {
  return {"alamouti", "quasi_orth_dort", "a2_code",         "mido_a4",
          "mido_a4_half_imag", "mido_c1", "mido_c2",         "mido_c3",
          "code_6x3",          "code_6x3_half_imag", "code_6x2", "sr_unrotated"};
}

CodeSpec make_code(std::string_view name) {
  static const std::map<std::string, std::function<CodeSpec()>, std::less<>> registry = {
      {"alamouti", [] { return alamouti(); }},
      {"quasi_orth_dort", [] { return quasi_orth_dort(); }},
      {"a2_code", [] { return a2_code(); }},
      {"mido_a4", [] { return mido_a4(BasisVariant::Integral); }},
      {"mido_a4_half_imag", [] { return mido_a4(BasisVariant::HalfImaginary); }},
      {"mido_c1", [] { return mido_c1(); }},
      {"mido_c2", [] { return mido_c2(); }},
      {"mido_c3", [] { return mido_c3(); }},
      {"code_6x3", [] { return code_6x3(BasisVariant::Integral); }},
      {"code_6x3_half_imag", [] { return code_6x3(BasisVariant::HalfImaginary); }},
      {"code_6x2", [] { return code_6x2(); }},
      {"sr_unrotated", [] { return sr_unrotated(); }},
  };
  const auto it = registry.find(name);
  if (it == registry.end()) throw ValidationError("unknown code '" + std::string(name) + "'");
  return it->second();
}

double SphericalCodebook::mean_energy() const {
  if (energies.empty()) return 0.0;
  double s = 0.0;
  for (double e : energies) s += e;
  return s / static_cast<double>(energies.size());
}

namespace {

struct EnergyEnumerator {
  RealMatrix r;
  const std::vector<int>& levels;
  std::size_t k;
  double radius;
  std::size_t limit;
  std::vector<int> g;
  std::vector<std::pair<double, std::vector<int>>> found;
  bool overflow = false;

  void run() {
    found.clear();
    overflow = false;
    g.assign(k, 0);
    descend(static_cast<long>(k) - 1, 0.0);
  }

  void descend(long t, double partial) {
    if (overflow) return;
    if (t < 0) {
      found.emplace_back(partial, g);
      if (found.size() > limit) overflow = true;
      return;
    }
    const auto ti = static_cast<std::size_t>(t);
    double s = 0.0;
    for (std::size_t j = ti + 1; j < k; ++j) s += r(ti, j) * g[j];
    for (int v : levels) {
      const double e = s + r(ti, ti) * v;
      const double next = partial + e * e;
      if (next > radius) continue;
      g[ti] = v;
      descend(t - 1, next);
      if (overflow) return;
    }
  }
};

}  // namespace

SphericalCodebook spherical_codebook(const CodeSpec& code, const Constellation& alphabet,
                                     std::size_t size) {
  validate(code);
  const std::size_t k = code.K();
  if (size == 0) throw ValidationError("spherical_codebook: size must be positive");
  const double total = std::pow(static_cast<double>(alphabet.size()), static_cast<double>(k));
  if (static_cast<double>(size) > total) {
    throw ValidationError("spherical_codebook: size exceeds |alphabet|^K");
  }
  std::vector<RealVector> cols;
  for (std::size_t i = 0; i < k; ++i) cols.push_back(realify(code.scaled_basis(i)));
  const QrFactors qr = qr_decompose(RealMatrix::from_columns(cols));

  const std::size_t limit = std::max<std::size_t>(4 * size, size + 100000);
  EnergyEnumerator en{qr.r, alphabet.levels(), k, 0.0, limit, {}, {}, false};

  // Start from the energy of the smallest-magnitude constant vector and adjust the radius.
  int small = alphabet.levels().front();
  for (int v : alphabet.levels())
    if (std::abs(v) < std::abs(small) && v != 0) small = v;
  std::vector<int> probe(k, small);
  double radius = std::pow(encode(code, std::span<const int>(probe)).frobenius_norm(), 2);
  double lo = 0.0, hi = std::numeric_limits<double>::infinity();
  for (int iter = 0;; ++iter) {
    en.radius = radius * (1.0 + 1e-12);
    en.run();
    if (!en.overflow && en.found.size() >= size) break;
    if (iter > 200) {
      if (en.found.size() >= size) break;
      throw NumericalError("spherical_codebook: radius search did not converge");
    }
    if (en.overflow) {
      hi = radius;
      if (hi - lo <= 1e-9 * hi) {
        en.limit = std::numeric_limits<std::size_t>::max();
        en.run();
        break;
      }
      radius = 0.5 * (lo + hi);
    } else {
      lo = radius;
      radius = std::isinf(hi) ? radius * 1.5 : 0.5 * (lo + hi);
    }
  }
  auto& found = en.found;
  const double unit = 1e-9 * std::max(en.radius, 1e-300);
  std::sort(found.begin(), found.end(), [unit](const auto& a, const auto& b) {
    const auto qa = std::llround(a.first / unit), qb = std::llround(b.first / unit);
    if (qa != qb) return qa < qb;
    return a.second < b.second;
  });
  SphericalCodebook out;
  out.words.reserve(size);
  out.energies.reserve(size);
  for (std::size_t i = 0; i < size; ++i) {
    out.words.push_back(std::move(found[i].second));
    out.energies.push_back(found[i].first);
  }
  return out;
}

std::string datasheet(const CodeSpec& code) {
  validate(code);
  TabularReport rep;
  rep.add("code", code.name);
  rep.add("n_t", std::to_string(code.n_t));
  rep.add("T", std::to_string(code.T));
  rep.add("K", std::to_string(code.K()));
  rep.add("scale", code.scale);
  rep.add("default_receivers", std::to_string(code.default_receivers));
  rep.add("nvd", code.nvd);
  std::string out = rep.str();
  for (std::size_t i = 0; i < code.K(); ++i) {
    const auto& b = code.basis[i];
    for (std::size_t r = 0; r < b.rows(); ++r)
      for (std::size_t c = 0; c < b.cols(); ++c) {
        const cplx z = b(r, c);
        if (z == cplx{}) continue;
        out += "entry\t" + std::to_string(i + 1) + "\t" + std::to_string(r + 1) + "\t" +
               std::to_string(c + 1) + "\t" + format_double(z.real()) + "\t" +
               format_double(z.imag()) + "\n";
      }
  }
  return out;
}

CodeSpec parse_datasheet(std::string_view text) {
  CodeSpec c;
  std::size_t k = 0;
  for (auto line : split(text, '\n')) {
    if (trim(line).empty()) continue;
    const auto f = split(line, '\t');
    if (f[0] == "entry") {
      if (f.size() != 6) throw ValidationError("datasheet: malformed entry line");
      if (c.basis.size() != k) {
        c.basis.assign(k, ComplexMatrix(static_cast<std::size_t>(c.n_t), static_cast<std::size_t>(c.T)));
      }
      const auto i = static_cast<std::size_t>(parse_integer(f[1]));
      const auto r = static_cast<std::size_t>(parse_integer(f[2]));
      const auto col = static_cast<std::size_t>(parse_integer(f[3]));
      if (i < 1 || i > k || r < 1 || r > static_cast<std::size_t>(c.n_t) || col < 1 ||
          col > static_cast<std::size_t>(c.T))
        throw ValidationError("datasheet: entry index out of range");
      c.basis[i - 1](r - 1, col - 1) = cplx(parse_double(f[4]), parse_double(f[5]));
      continue;
    }
    if (f.size() != 2) throw ValidationError("datasheet: malformed header line");
    if (f[0] == "code") c.name = std::string(f[1]);
    else if (f[0] == "n_t") c.n_t = static_cast<int>(parse_integer(f[1]));
    else if (f[0] == "T") c.T = static_cast<int>(parse_integer(f[1]));
    else if (f[0] == "K") k = static_cast<std::size_t>(parse_integer(f[1]));
    else if (f[0] == "scale") c.scale = parse_double(f[1]);
    else if (f[0] == "default_receivers") c.default_receivers = static_cast<int>(parse_integer(f[1]));
    else if (f[0] == "nvd") c.nvd = std::string(f[1]);
    else throw ValidationError("datasheet: unknown field '" + std::string(f[0]) + "'");
  }
  if (c.basis.size() != k) {
    c.basis.assign(k, ComplexMatrix(static_cast<std::size_t>(c.n_t), static_cast<std::size_t>(c.T)));
  }
  validate(c);
  return c;
}

}  // namespace fdstc
