#include "kumdeg/degree_enumeration.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <numeric>

#include "kumdeg/ampleness.hpp"
#include "kumdeg/errors.hpp"
#include "kumdeg/mukai.hpp"
#include "kumdeg/parallel.hpp"
#include "kumdeg/part_sums.hpp"
#include "kumdeg/representations.hpp"

namespace kumdeg {

namespace {

constexpr std::array<std::pair<Method, std::string_view>, 6> kMethodNames{{
    {Method::EQ1, "EQ1"},
    {Method::EQ7, "EQ7"},
    {Method::HALF8, "HALF8"},
    {Method::TROPE, "TROPE"},
    {Method::RATIONAL_FAMILY, "RATIONAL_FAMILY"},
    {Method::TWISTED_MODULI, "TWISTED_MODULI"},
}};

std::string normalize(std::string_view s) {
  std::string out;
  for (char ch : s) out.push_back(ch == '-' ? '_' : static_cast<char>(std::toupper(static_cast<unsigned char>(ch))));
  return out;
}

DegreeRecord finish(DegreeRecord r) {
  r.primitive = is_primitive(*r.witness, r.generators);
  std::string why;
  if (!audit_record(r, &why)) throw std::logic_error("enumerator produced a bad record: " + why);
  return r;
}

void sort_records(std::vector<DegreeRecord>& records) {
  std::stable_sort(records.begin(), records.end(), [](const DegreeRecord& x, const DegreeRecord& y) {
    if (x.e != y.e) return x.e < y.e;
    return x.witness && y.witness && x.witness->h2 < y.witness->h2;
  });
}

// The HALF8 and TROPE classes share one shape: doubled coefficients
// x_1 >= .. >= x_15 >= 1 with a prescribed number of odd entries, x_16 = 1,
// and h2 either even (HALF8) or odd (TROPE).
struct HalfIntegralShape {
  Method method;
  std::int64_t h2_offset;  // h2 = 2a + offset
  int odd_among_15;
};

struct Hit {
  std::int64_t e;
  std::array<std::int64_t, 4> top;
  std::int64_t rest_sum;
  int rest_odd;
};

MethodResult enumerate_half_integral(const HalfIntegralShape& shape, std::int64_t max_e,
                                     const EnumerationOptions& opts) {
  if (opts.d < 1) throw ParameterError("d must be positive");
  if (shape.method == Method::TROPE && opts.d % 2 == 0) throw ParameterError("trope classes need odd d");
  MethodResult result;
  if (max_e < 1) return result;
  const std::int64_t d = opts.d;
  const std::int64_t a_limit = isqrt_ceil(max_e) + 20;
  result.a_limit = a_limit;
  const std::int64_t h2_max = 2 * a_limit + shape.h2_offset;
  const std::int64_t cap = std::max<std::int64_t>(1, (h2_max - 1) / 4);
  const PartSumTable table(PartValue::Square, 11, static_cast<int>(cap), 11 * cap * cap, 11);

  std::vector<std::vector<Hit>> per_a(static_cast<std::size_t>(a_limit + 1));
  parallel_for(static_cast<std::size_t>(a_limit + 1), opts.jobs, [&](std::size_t task) {
    const auto a = static_cast<std::int64_t>(task);
    const std::int64_t h2 = 2 * a + shape.h2_offset;
    if (h2 < 5) return;
    // 2e = d h2^2 - (Q + 1)/2 in [2, 2 max_e]
    const std::int64_t q_lo = 2 * (d * h2 * h2 - 2 * max_e) - 1;
    const std::int64_t q_hi = 2 * (d * h2 * h2 - 2) - 1;
    std::vector<Hit> hits;
    std::set<std::int64_t> seen;
    const std::int64_t budget = h2 - 1;
    for (std::int64_t x1 = 1; x1 + 3 <= budget; ++x1) {
      for (std::int64_t x2 = 1; x2 <= x1 && x1 + x2 + 2 <= budget; ++x2) {
        for (std::int64_t x3 = 1; x3 <= x2 && x1 + x2 + x3 + 1 <= budget; ++x3) {
          for (std::int64_t x4 = 1; x4 <= x3 && x1 + x2 + x3 + x4 <= budget; ++x4) {
            const std::int64_t top_sq = x1 * x1 + x2 * x2 + x3 * x3 + x4 * x4;
            if (top_sq + 11 > q_hi) break;
            if (top_sq + 11 * x4 * x4 < q_lo) continue;
            const int top_odd = static_cast<int>((x1 & 1) + (x2 & 1) + (x3 & 1) + (x4 & 1));
            const int rest_odd = shape.odd_among_15 - top_odd;
            if (rest_odd < 0 || rest_odd > 11) continue;
            table.for_each_reachable(11, static_cast<int>(x4), rest_odd, q_lo - top_sq, q_hi - top_sq,
                                     [&](std::int64_t s) {
                                       const std::int64_t q = top_sq + s;
                                       const std::int64_t l2 = d * h2 * h2 - (q + 1) / 2;
                                       if (l2 % 2 != 0) return;
                                       const std::int64_t e = l2 / 2;
                                       if (e < 1 || e > max_e || !seen.insert(e).second) return;
                                       hits.push_back({e, {x1, x2, x3, x4}, s, rest_odd});
                                     });
          }
        }
      }
    }
    per_a[task] = std::move(hits);
  });

  std::set<std::int64_t> covered;
  for (std::int64_t a = 0; a <= a_limit; ++a) {
    auto& hits = per_a[static_cast<std::size_t>(a)];
    if (hits.empty()) continue;
    result.last_productive_a = a;
    std::sort(hits.begin(), hits.end(), [](const Hit& x, const Hit& y) { return x.e < y.e; });
    for (const auto& hit : hits) {
      if (!opts.verbose && covered.count(hit.e)) continue;
      covered.insert(hit.e);
      const auto rest = table.smallest_descending(11, static_cast<int>(hit.top[3]), hit.rest_sum, hit.rest_odd);
      if (!rest) throw std::logic_error("reachable sum without a reconstruction");
      DegreeRecord r;
      r.e = hit.e;
      r.method = shape.method;
      KummerClass l;
      l.d = d;
      l.h2 = 2 * a + shape.h2_offset;
      std::size_t pos = 0;
      for (auto x : hit.top) l.e2[pos++] = x;
      for (auto x : *rest) l.e2[pos++] = x;
      l.e2[kNodes - 1] = 1;
      std::vector<int> odd_positions;
      for (std::size_t i = 0; i < kNodes; ++i)
        if (l.e2[i] % 2 != 0) odd_positions.push_back(static_cast<int>(i + 1));
      r.generators.half_all16 = true;
      if (shape.method == Method::HALF8)
        r.generators.half_eight.push_back(odd_positions);
      else
        r.generators.tropes.push_back(odd_positions);
      r.witness = l;
      r.params = {{"a", a}, {"d", d}};
      result.records.push_back(finish(std::move(r)));
    }
  }
  sort_records(result.records);
  return result;
}

}  // namespace

std::string_view to_string(Method m) {
  for (const auto& [k, name] : kMethodNames)
    if (k == m) return name;
  return "UNKNOWN";
}

std::optional<Method> parse_method(std::string_view name) {
  const std::string key = normalize(name);
  for (const auto& [k, n] : kMethodNames)
    if (n == key) return k;
  return std::nullopt;
}

const std::vector<Method>& all_methods() {
  static const std::vector<Method> methods{Method::EQ1,   Method::EQ7,           Method::HALF8,
                                           Method::TROPE, Method::RATIONAL_FAMILY, Method::TWISTED_MODULI};
  return methods;
}

std::string witness_id(const DegreeRecord& r) { return std::string(to_string(r.method)) + "-" + std::to_string(r.e); }

bool audit_record(const DegreeRecord& r, std::string* why) {
  auto fail = [why](const char* reason) {
    if (why) *why = reason;
    return false;
  };
  if (r.e < 1) return fail("e must be positive");
  if (r.method == Method::TWISTED_MODULI) {
    if (r.witness) return fail("twisted records carry parameters, not a Kummer class");
    const auto d = r.params.find("d");
    const auto rank = r.params.find("r");
    if (d == r.params.end() || rank == r.params.end()) return fail("twisted record lacks (d, r)");
    const auto inst = twisted_k3_degree(d->second, rank->second);
    if (inst.e != r.e) return fail("twisted degree does not match 2 d r^2");
    return true;
  }
  if (!r.witness) return fail("missing witness class");
  const KummerClass& l = *r.witness;
  if (pair(l, l) != Rational(2 * r.e)) return fail("L^2 != 2e");
  if (!sufficient_ample(l)) return fail("witness fails the ampleness criterion");
  if (!is_integral(l, r.generators).integral) return fail("witness is not integral");
  if (is_primitive(l, r.generators) != r.primitive) return fail("primitive flag is wrong");
  return true;
}

std::set<std::int64_t> MethodResult::degrees() const {
  std::set<std::int64_t> out;
  for (const auto& r : records) out.insert(r.e);
  return out;
}

std::optional<DegreeRecord> degrees_eq1(std::int64_t e) {
  if (e < 1) throw ParameterError("e must be positive");
  const auto w = represent_eq1(e + 1);
  if (!w) return std::nullopt;
  DegreeRecord r;
  r.e = e;
  r.method = Method::EQ1;
  KummerClass l;
  l.h2 = 2 * *w->lead;
  for (std::size_t i = 0; i < 15; ++i) l.e2[i] = 2 * w->parts[i];
  l.e2[15] = 2;
  r.witness = l;
  r.generators = IntegralityGenerators::defaults(1);
  r.params = {{"a", *w->lead}, {"n", e + 1}};
  r.primitive = is_primitive(l, r.generators);
  if (!r.primitive) return std::nullopt;
  return finish(std::move(r));
}

std::optional<DegreeRecord> degrees_eq7(std::int64_t e) {
  if (e < 1) throw ParameterError("e must be positive");
  if (e % 2 != 0) throw DomainError("the Eq7 construction only yields even e");
  const auto w = represent_eq7(e / 2 + 2);
  if (!w) return std::nullopt;
  DegreeRecord r;
  r.e = e;
  r.method = Method::EQ7;
  KummerClass l;
  l.h2 = 2 * *w->lead;
  for (std::size_t i = 0; i < 15; ++i) l.e2[i] = 2 * w->parts[i] - 1;
  l.e2[15] = 1;
  r.witness = l;
  r.generators = IntegralityGenerators::defaults(1);
  r.params = {{"a", *w->lead}, {"n", e / 2 + 2}};
  return finish(std::move(r));
}

namespace {

MethodResult collect(std::int64_t max_e, std::int64_t step, int jobs,
                     std::optional<DegreeRecord> (*build)(std::int64_t)) {
  MethodResult result;
  if (max_e < step) return result;
  const auto count = static_cast<std::size_t>(max_e / step);
  std::vector<std::optional<DegreeRecord>> slots(count);
  parallel_for(count, jobs, [&](std::size_t i) { slots[i] = build(static_cast<std::int64_t>(i + 1) * step); });
  for (auto& s : slots)
    if (s) result.records.push_back(std::move(*s));
  return result;
}

}  // namespace

MethodResult degrees_eq1_upto(std::int64_t max_e, int jobs) { return collect(max_e, 1, jobs, &degrees_eq1); }

MethodResult degrees_eq7_upto(std::int64_t max_e, int jobs) { return collect(max_e, 2, jobs, &degrees_eq7); }

MethodResult degrees_half8(std::int64_t max_e, const EnumerationOptions& opts) {
  return enumerate_half_integral({Method::HALF8, 0, 7}, max_e, opts);
}

MethodResult degrees_trope(std::int64_t max_e, const EnumerationOptions& opts) {
  return enumerate_half_integral({Method::TROPE, 1, 5}, max_e, opts);
}

MethodResult rational_family_degrees(std::int64_t max_e, bool verbose) {
  MethodResult result;
  std::set<std::int64_t> covered;
  // e = 2a^2 - 4c^2 >= 2a^2 - (a - 1)^2 > a^2, so a^2 < max_e
  for (std::int64_t a = 3; a * a < max_e; ++a) {
    for (std::int64_t c = 1; 2 * c < a; ++c) {
      if (std::gcd(a, c) != 1) continue;
      const std::int64_t e = 2 * a * a - 4 * c * c;
      if (e > max_e) continue;
      if (!verbose && !covered.insert(e).second) continue;
      DegreeRecord r;
      r.e = e;
      r.method = Method::RATIONAL_FAMILY;
      r.witness = KummerClass::uniform(1, 2 * a, c);
      r.generators = IntegralityGenerators::defaults(1);
      r.params = {{"a", a}, {"c", c}};
      result.records.push_back(finish(std::move(r)));
    }
  }
  sort_records(result.records);
  return result;
}

MethodResult twisted_moduli_degrees(std::int64_t max_e) {
  MethodResult result;
  for (const auto& inst : twisted_k3_batch()) {
    if (inst.e > max_e) continue;
    DegreeRecord r;
    r.e = inst.e;
    r.method = Method::TWISTED_MODULI;
    r.generators = IntegralityGenerators::base();
    r.params = {{"d", inst.d}, {"r", inst.r}};
    r.primitive = true;
    result.records.push_back(std::move(r));
  }
  sort_records(result.records);
  return result;
}

std::set<std::int64_t> DegreeTable::degrees() const {
  std::set<std::int64_t> out;
  for (const auto& [e, records] : by_e) out.insert(e);
  return out;
}

std::vector<Method> DegreeTable::methods(std::int64_t e) const {
  std::vector<Method> out;
  const auto it = by_e.find(e);
  if (it == by_e.end()) return out;
  for (const auto& r : it->second)
    if (std::find(out.begin(), out.end(), r.method) == out.end()) out.push_back(r.method);
  std::sort(out.begin(), out.end());
  return out;
}

bool DegreeTable::guard_ok() const {
  return std::all_of(per_method.begin(), per_method.end(), [](const auto& kv) { return kv.second.guard_ok(); });
}

DegreeTable enumerate_degrees(std::int64_t max_e, const TableOptions& opts) {
  DegreeTable table;
  const std::vector<Method>& wanted = opts.methods.empty() ? all_methods() : opts.methods;
  const EnumerationOptions eo{opts.d, opts.verbose, opts.jobs};
  for (Method m : all_methods()) {
    if (std::find(wanted.begin(), wanted.end(), m) == wanted.end()) continue;
    MethodResult res;
    switch (m) {
      case Method::EQ1:
        res = degrees_eq1_upto(max_e, opts.jobs);
        break;
      case Method::EQ7:
        res = degrees_eq7_upto(max_e, opts.jobs);
        break;
      case Method::HALF8:
        res = degrees_half8(max_e, eo);
        break;
      case Method::TROPE:
        res = degrees_trope(max_e, eo);
        break;
      case Method::RATIONAL_FAMILY:
        res = rational_family_degrees(max_e, opts.verbose);
        break;
      case Method::TWISTED_MODULI:
        if (!opts.include_twisted) continue;
        res = twisted_moduli_degrees(max_e);
        break;
    }
    for (const auto& r : res.records) table.by_e[r.e].push_back(r);
    table.per_method.emplace(m, std::move(res));
  }
  return table;
}

DegreeTable theorem_main_set(std::int64_t max_e, bool include_twisted, int jobs) {
  if (max_e < 62) throw ParameterError("theorem_main_set needs max_e >= 62");
  TableOptions opts;
  opts.include_twisted = include_twisted;
  opts.jobs = jobs;
  return enumerate_degrees(max_e, opts);
}

}  // namespace kumdeg
