#include "kumdeg/kummer_lattice.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "kumdeg/errors.hpp"
#include "kumdeg/hermite.hpp"

namespace kumdeg {

KummerClass KummerClass::polarization(std::int64_t d) {
  KummerClass c;
  c.d = d;
  c.h2 = 2;
  return c;
}

KummerClass KummerClass::node(std::int64_t d, int index) {
  if (index < 1 || index > static_cast<int>(kNodes)) throw ParameterError("node index must be in 1..16");
  KummerClass c;
  c.d = d;
  c.e2[static_cast<std::size_t>(index - 1)] = -2;
  return c;
}

KummerClass KummerClass::uniform(std::int64_t d, std::int64_t h2, std::int64_t e2_all) {
  KummerClass c;
  c.d = d;
  c.h2 = h2;
  c.e2.fill(e2_all);
  return c;
}

KummerClass& KummerClass::operator+=(const KummerClass& other) {
  if (d != other.d) throw ParameterError("cannot add Kummer classes with different d");
  h2 += other.h2;
  for (std::size_t i = 0; i < kNodes; ++i) e2[i] += other.e2[i];
  return *this;
}

KummerClass operator*(std::int64_t k, KummerClass c) {
  c.h2 *= k;
  for (auto& x : c.e2) x *= k;
  return c;
}

void validate(const KummerClass& c) {
  if (c.d < 1) throw ParameterError("Kummer class needs d >= 1");
}

std::int64_t pair_doubled(const KummerClass& lhs, const KummerClass& rhs) {
  if (lhs.d != rhs.d) throw ParameterError("pairing Kummer classes with different d");
  std::int64_t nodes = 0;
  for (std::size_t i = 0; i < kNodes; ++i) nodes += lhs.e2[i] * rhs.e2[i];
  return 2 * lhs.d * lhs.h2 * rhs.h2 - nodes;
}

Rational pair(const KummerClass& lhs, const KummerClass& rhs) {
  return Rational(pair_doubled(lhs, rhs), 2);
}

IntegralityGenerators IntegralityGenerators::defaults(std::int64_t d) {
  IntegralityGenerators g;
  g.half_all16 = true;
  g.half_eight.push_back({1, 2, 3, 4, 5, 6, 7, 8});
  if (d % 2 != 0) g.tropes.push_back({1, 2, 3, 4, 5, 6});
  return g;
}

IntegralityGenerators IntegralityGenerators::base() { return {}; }

namespace {

void check_index_set(const std::vector<int>& set, std::size_t size, const char* what) {
  if (set.size() != size)
    throw ParameterError(std::string(what) + " index set must have " + std::to_string(size) + " entries");
  std::set<int> seen;
  for (int i : set) {
    if (i < 1 || i > static_cast<int>(kNodes)) throw ParameterError(std::string(what) + " index out of 1..16");
    if (!seen.insert(i).second) throw ParameterError(std::string(what) + " index set has duplicates");
  }
}

std::string join(const std::vector<int>& set) {
  std::string out;
  for (int i : set) {
    if (!out.empty()) out += ",";
    out += std::to_string(i);
  }
  return out;
}

}  // namespace

void validate(const IntegralityGenerators& gens, std::int64_t d) {
  for (const auto& w : gens.half_eight) check_index_set(w, 8, "half_eight");
  for (const auto& w : gens.tropes) check_index_set(w, 6, "trope");
  if (!gens.tropes.empty() && d % 2 == 0) throw ParameterError("trope half-classes exist only for odd d");
}

std::vector<std::vector<std::int64_t>> generator_rows(const IntegralityGenerators& gens) {
  constexpr std::size_t width = kNodes + 1;
  std::vector<std::vector<std::int64_t>> rows;
  std::vector<std::int64_t> row(width, 0);
  row[0] = 2;
  rows.push_back(row);
  for (std::size_t i = 0; i < kNodes; ++i) {
    row.assign(width, 0);
    row[i + 1] = -2;
    rows.push_back(row);
  }
  if (gens.half_all16) {
    row.assign(width, -1);
    row[0] = 0;
    rows.push_back(row);
  }
  for (const auto& w : gens.half_eight) {
    row.assign(width, 0);
    for (int i : w) row[static_cast<std::size_t>(i)] = -1;
    rows.push_back(row);
  }
  for (const auto& w : gens.tropes) {
    row.assign(width, 0);
    row[0] = 1;
    for (int i : w) row[static_cast<std::size_t>(i)] = -1;
    rows.push_back(row);
  }
  return rows;
}

std::vector<std::string> generator_labels(const IntegralityGenerators& gens) {
  std::vector<std::string> labels{"H"};
  for (std::size_t i = 1; i <= kNodes; ++i) labels.push_back("E" + std::to_string(i));
  if (gens.half_all16) labels.emplace_back("half(E1..E16)");
  for (const auto& w : gens.half_eight) labels.push_back("half(E{" + join(w) + "})");
  for (const auto& w : gens.tropes) labels.push_back("half(H+E{" + join(w) + "})");
  return labels;
}

std::array<std::int64_t, kNodes + 1> doubled_coordinates(const KummerClass& c) {
  std::array<std::int64_t, kNodes + 1> out{};
  out[0] = c.h2;
  std::copy(c.e2.begin(), c.e2.end(), out.begin() + 1);
  return out;
}

Membership is_integral(const KummerClass& c, const IntegralityGenerators& gens) {
  validate(c);
  validate(gens, c.d);
  const auto form = hermite_normal_form(generator_rows(gens));
  const auto coords = doubled_coordinates(c);
  auto combination = solve_in_span(form, coords);
  if (!combination) return {};
  return {true, std::move(*combination)};
}

namespace {

bool scaled_is_integral(const std::array<std::int64_t, kNodes + 1>& coords, std::int64_t p,
                        const HermiteForm& form) {
  std::array<std::int64_t, kNodes + 1> scaled{};
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (coords[i] % p != 0) return false;
    scaled[i] = coords[i] / p;
  }
  return solve_in_span(form, scaled).has_value();
}

}  // namespace

bool is_primitive(const KummerClass& c, const IntegralityGenerators& gens) {
  if (!is_integral(c, gens).integral) throw PreconditionError("is_primitive needs an integral class");
  const auto coords = doubled_coordinates(c);
  std::int64_t g = 0;
  for (auto x : coords) g = std::gcd(g, x);
  if (g == 0) return false;  // the zero class is divisible by everything

  const auto form = hermite_normal_form(generator_rows(gens));
  // p = 2 always; odd primes only when they divide every doubled coordinate
  if (scaled_is_integral(coords, 2, form)) return false;
  std::int64_t rest = g;
  while (rest % 2 == 0) rest /= 2;
  for (std::int64_t p = 3; p * p <= rest; p += 2) {
    if (rest % p != 0) continue;
    while (rest % p == 0) rest /= p;
    if (scaled_is_integral(coords, p, form)) return false;
  }
  if (rest > 1 && scaled_is_integral(coords, rest, form)) return false;
  return true;
}

}  // namespace kumdeg
