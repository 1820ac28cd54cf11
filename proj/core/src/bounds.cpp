#include "fdstc/bounds.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include <boost/multiprecision/integer.hpp>

#include "fdstc/errors.hpp"
#include "fdstc/report.hpp"

namespace fdstc {

namespace {

BigInt ipow(const BigInt& base, const BigInt& exp) {
  BigInt out = 1;
  for (BigInt e = 0; e < exp; ++e) out *= base;
  return out;
}

Rational invariant_sum(const HasseInvariantSet& inv) {
  Rational s = Rational(inv.ramified_reals, 2);
  for (const auto& f : inv.finite) s += Rational(f.a, f.m);
  return s;
}

}  // namespace

void validate(const HasseInvariantSet& inv) {
  if (inv.ramified_reals < 0) throw ValidationError("Hasse invariants: negative real count");
  for (const auto& f : inv.finite) {
    if (f.m < 1) throw ValidationError("Hasse invariant at " + f.prime + ": m must be positive");
    if (f.a < 0 || f.a >= f.m) {
      throw ValidationError("Hasse invariant at " + f.prime + ": need 0 <= a < m");
    }
    if (std::gcd(f.a, f.m) != 1) {
      throw ValidationError("Hasse invariant at " + f.prime + ": a/m must be in lowest terms");
    }
    if (f.norm < 2) throw ValidationError("Hasse invariant at " + f.prime + ": bad prime norm");
  }
}

bool admissible(const HasseInvariantSet& inv) {
  validate(inv);
  const Rational s = invariant_sum(inv);
  return denominator(s) == 1;
}

int algebra_index(const HasseInvariantSet& inv) {
  if (!admissible(inv)) throw ValidationError("algebra_index: invariants are not admissible");
  int l = inv.ramified_reals > 0 ? 2 : 1;
  for (const auto& f : inv.finite) l = std::lcm(l, f.m);
  return l;
}

BigInt Discriminant::norm() const {
  BigInt v = 1;
  for (const auto& f : factors) v *= ipow(f.norm, f.exponent);
  return v;
}

std::string Discriminant::factored() const {
  if (factors.empty()) return "1";
  std::string s;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (i) s += "*";
    s += factors[i].norm.str() + "^" + factors[i].exponent.str();
  }
  return s;
}

std::string Discriminant::compact() const {
  if (factors.empty()) return "1";
  BigInt base = 1;
  for (const auto& f : factors) {
    if (f.exponent != factors.front().exponent) return factored();
    base *= f.norm;
  }
  return base.str() + "^" + factors.front().exponent.str();
}

Discriminant maximal_order_discriminant(const HasseInvariantSet& inv, int n) {
  const int index = algebra_index(inv);
  if (n != index) {
    throw ValidationError("maximal_order_discriminant: n = " + std::to_string(n) +
                          " but the invariants give index " + std::to_string(index));
  }
  Discriminant d;
  for (const auto& f : inv.finite) {
    if (f.m == 1) continue;
    const BigInt e = BigInt(f.m - 1) * n * n / f.m;
    d.factors.push_back({f.prime, f.norm, e});
  }
  return d;
}

CenterDescriptor parse_center(std::string_view text) {
  const std::string t(trim(text));
  CenterDescriptor c;
  c.name = t;
  if (t == "Q") return c;
  if (t == "Q(i)") {
    c.degree = 2;
    c.real_places = 0;
    c.complex_places = 1;
    c.field_discriminant = 4;
    c.p1_label = "(1+i)";
    c.p1_norm = 2;
    c.p2_label = "(2+i)";
    c.p2_norm = 5;
    return c;
  }
  if (t == "Q(sqrt2)") {
    c.degree = 2;
    c.real_places = 2;
    c.field_discriminant = 8;
    c.p1_label = "(sqrt2)";
    c.p1_norm = 2;
    c.p2_label = "(3+sqrt2)";
    c.p2_norm = 7;
    return c;
  }
  if (t == "Q(sqrt3)") {
    c.degree = 2;
    c.real_places = 2;
    c.field_discriminant = 12;
    c.p1_label = "(1+sqrt3)";
    c.p1_norm = 2;
    c.p2_label = "(sqrt3)";
    c.p2_norm = 3;
    return c;
  }
  if (t == "Q(sqrt5)") {
    c.degree = 2;
    c.real_places = 2;
    c.field_discriminant = 5;
    c.p1_label = "(2)";
    c.p1_norm = 4;
    c.p2_label = "(sqrt5)";
    c.p2_norm = 5;
    return c;
  }
  if (t.starts_with("custom:")) {
    for (auto kv : split(std::string_view(t).substr(7), ',')) {
      const auto eq = kv.find('=');
      if (eq == std::string_view::npos) throw ValidationError("center: expected key=value in '" + t + "'");
      const auto key = trim(kv.substr(0, eq));
      const auto val = trim(kv.substr(eq + 1));
      if (key == "deg") c.degree = static_cast<int>(parse_integer(val));
      else if (key == "r1") c.real_places = static_cast<int>(parse_integer(val));
      else if (key == "r2") c.complex_places = static_cast<int>(parse_integer(val));
      else if (key == "disc") c.field_discriminant = BigInt(std::string(val));
      else if (key == "p1") c.p1_norm = BigInt(std::string(val));
      else if (key == "p2") c.p2_norm = BigInt(std::string(val));
      else throw ValidationError("center: unknown key '" + std::string(key) + "'");
    }
    if (c.degree != c.real_places + 2 * c.complex_places) {
      throw ValidationError("center: degree must equal r1 + 2 r2");
    }
    if (c.p1_norm < 2 || c.p2_norm < c.p1_norm) {
      throw ValidationError("center: need 2 <= N(P1) <= N(P2)");
    }
    if (c.field_discriminant < 1) throw ValidationError("center: discriminant must be positive");
    return c;
  }
  throw ValidationError("unknown center '" + t + "'");
}

Discriminant min_discriminant_bound(const CenterDescriptor& c, int n, bool all_real_ramified) {
  if (n < 2) throw ValidationError("min_discriminant_bound: index must be at least 2");
  const BigInt full = BigInt(n) * (n - 1);
  auto both = [&](const BigInt& e1, const BigInt& e2) {
    Discriminant d;
    if (e1 > 0) d.factors.push_back({c.p1_label, c.p1_norm, e1});
    if (e2 > 0) d.factors.push_back({c.p2_label, c.p2_norm, e2});
    return d;
  };
  if (all_real_ramified) {
    if (n % 2 != 0) throw ValidationError("min_discriminant_bound: ramified variant needs even n");
    if (c.complex_places > 0) {
      throw ValidationError("min_discriminant_bound: ramified variant needs a totally real center");
    }
  }
  if (n % 4 == 0 || n % 2 == 1) return both(full, full);
  const int k = n / 2;
  const BigInt half = BigInt(k) * (k - 1);
  if (all_real_ramified) {
    if (c.degree % 2 == 0) return both(half, half);
    return both(full, half);
  }
  if (c.real_places >= 2) return both(half, half);
  if (c.real_places == 1) return both(full, half);
  return both(full, full);
}

BigInt z_discriminant(const BigInt& center_disc_norm, const BigInt& field_disc, int n) {
  if (center_disc_norm < 1 || field_disc < 1 || n < 1) {
    throw ValidationError("z_discriminant: inputs must be positive");
  }
  return center_disc_norm * ipow(field_disc, BigInt(n) * n);
}

double log_big(const BigInt& v) {
  if (v <= 0) throw ValidationError("log_big: argument must be positive");
  const auto bits = boost::multiprecision::msb(v);
  if (bits < 1000) return std::log(v.convert_to<double>());
  const unsigned shift = static_cast<unsigned>(bits - 60);
  const BigInt top = v >> shift;
  return std::log(top.convert_to<double>()) + static_cast<double>(shift) * std::log(2.0);
}

double delta_bound(const BigInt& z_disc, int n) {
  if (z_disc < 1 || n < 1) throw ValidationError("delta_bound: need z_disc >= 1 and n >= 1");
  return std::exp(-log_big(z_disc) / (2.0 * n));
}

std::string table_row_name(TableRow row) {
  switch (row) {
    case TableRow::FourKOddDegree: return "4k,odd";
    case TableRow::FourKEvenDegree: return "4k,even";
    case TableRow::TwoKEvenDegree: return "2k(k odd),even";
    case TableRow::TwoKOddDegree: return "2k(k odd),odd";
  }
  return "?";
}

TableInstance table_instance(TableRow row, int k, int m, const BigInt& p1, const BigInt& p2) {
  if (k < 1 || m < 1) throw ValidationError("table_instance: k and degree must be positive");
  Rational h1, h2;
  int index = 0;
  switch (row) {
    case TableRow::FourKOddDegree:
      if (m % 2 == 0) throw ValidationError("table_instance: row needs odd center degree");
      h1 = Rational(1, 4 * k);
      h2 = Rational(2 * k - 1, 4 * k);
      index = 4 * k;
      break;
    case TableRow::FourKEvenDegree:
      if (m % 2 != 0) throw ValidationError("table_instance: row needs even center degree");
      h1 = Rational(1, 4 * k);
      h2 = Rational(4 * k - 1, 4 * k);
      index = 4 * k;
      break;
    case TableRow::TwoKEvenDegree:
      if (k % 2 == 0 || m % 2 != 0) throw ValidationError("table_instance: row needs odd k, even degree");
      h1 = Rational(1, k);
      h2 = Rational(k - 1, k);
      index = 2 * k;
      break;
    case TableRow::TwoKOddDegree:
      if (k % 2 == 0 || m % 2 == 0) throw ValidationError("table_instance: row needs odd k, odd degree");
      h1 = Rational(k - 2, 2 * k);
      h2 = Rational(1, k);
      index = 2 * k;
      break;
  }
  TableInstance out;
  out.stated_index = index;
  out.invariants.ramified_reals = m;
  auto push = [&](const char* label, const BigInt& norm, Rational h) {
    // Reduce into [0, 1).
    const BigInt num = numerator(h), den = denominator(h);
    BigInt a = num % den;
    if (a < 0) a += den;
    if (a == 0) return;
    out.invariants.finite.push_back({label, norm, a.convert_to<int>(), den.convert_to<int>()});
  };
  push("P1", p1, h1);
  push("P2", p2, h2);
  return out;
}

HasseInvariantSet parse_invariants(std::string_view text) {
  HasseInvariantSet inv;
  int line_no = 0;
  for (auto line : split(text, '\n')) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    FiniteInvariant f;
    bool finite = false, have_a = false, have_m = false, have_norm = false;
    for (auto tok : split(line, ' ')) {
      tok = trim(tok);
      if (tok.empty()) continue;
      const auto eq = tok.find('=');
      if (eq == std::string_view::npos) {
        throw ValidationError("invariants line " + std::to_string(line_no) + ": expected key=value");
      }
      const auto key = tok.substr(0, eq);
      const auto val = tok.substr(eq + 1);
      if (key == "real") {
        inv.ramified_reals = static_cast<int>(parse_integer(val));
      } else if (key == "prime") {
        finite = true;
        f.prime = std::string(val);
      } else if (key == "norm") {
        have_norm = true;
        f.norm = BigInt(std::string(val));
      } else if (key == "a") {
        have_a = true;
        f.a = static_cast<int>(parse_integer(val));
      } else if (key == "m") {
        have_m = true;
        f.m = static_cast<int>(parse_integer(val));
      } else {
        throw ValidationError("invariants line " + std::to_string(line_no) + ": unknown key '" +
                              std::string(key) + "'");
      }
    }
    if (finite) {
      if (!have_a || !have_m || !have_norm) {
        throw ValidationError("invariants line " + std::to_string(line_no) + ": need norm, a and m");
      }
      inv.finite.push_back(std::move(f));
    }
  }
  validate(inv);
  return inv;
}

namespace {

void add_discriminant(TabularReport& t, const std::string& prefix, const Discriminant& d) {
  t.add(prefix, d.factored());
  t.add(prefix + "_compact", d.compact());
  t.add(prefix + "_norm", d.norm().str());
}

}  // namespace

std::string format_bounds_report(const CenterDescriptor& c, int n, bool all_real_ramified) {
  const Discriminant d = min_discriminant_bound(c, n, all_real_ramified);
  const BigInt z = z_discriminant(d.norm(), c.field_discriminant, n);
  TabularReport t;
  t.add("center", c.name);
  t.add("degree", std::to_string(c.degree));
  t.add("real_places", std::to_string(c.real_places));
  t.add("complex_places", std::to_string(c.complex_places));
  t.add("field_discriminant", c.field_discriminant.str());
  t.add("index", std::to_string(n));
  t.add("all_real_ramified", all_real_ramified ? "yes" : "no");
  add_discriminant(t, "min_discriminant", d);
  t.add("z_discriminant", z.str());
  const BigInt root = boost::multiprecision::sqrt(z);
  t.add("min_det_scale", root * root == z ? root.str() : format_double(std::exp(0.5 * log_big(z))));
  t.add("delta_bound", delta_bound(z, n));
  return t.str();
}

std::string format_hasse_report(const HasseInvariantSet& inv) {
  TabularReport t;
  t.add("finite_invariants", std::to_string(inv.finite.size()));
  t.add("ramified_reals", std::to_string(inv.ramified_reals));
  const Rational s = invariant_sum(inv);
  t.add("invariant_sum", s.str());
  const bool ok = admissible(inv);
  t.add("admissible", ok ? "yes" : "no");
  if (ok) {
    const int n = algebra_index(inv);
    t.add("index", std::to_string(n));
    add_discriminant(t, "max_order_discriminant", maximal_order_discriminant(inv, n));
  }
  return t.str();
}

}  // namespace fdstc
