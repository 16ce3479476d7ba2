// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "kumdeg/ampleness.hpp"
#include "kumdeg/degree_enumeration.hpp"
#include "kumdeg/mukai.hpp"
#include "kumdeg/representations.hpp"

using namespace kumdeg;

namespace {

struct Verdict {
  bool ok = true;
  std::ostringstream why;

  void fail(const std::string& msg) {
    if (!ok) why << "; ";
    ok = false;
    why << msg;
  }
};

std::string list(const std::vector<std::int64_t>& xs, std::size_t limit = 12) {
  std::string s;
  for (std::size_t i = 0; i < xs.size() && i < limit; ++i) s += (i ? "," : "") + std::to_string(xs[i]);
  if (xs.size() > limit) s += ",...";
  return "{" + s + "}";
}

std::vector<std::int64_t> missing_from(const std::set<std::int64_t>& have, const std::vector<std::int64_t>& want) {
  std::vector<std::int64_t> out;
  for (auto e : want)
    if (!have.count(e)) out.push_back(e);
  return out;
}

std::vector<std::int64_t> closed_range(std::int64_t lo, std::int64_t hi) {
  std::vector<std::int64_t> out;
  for (std::int64_t e = lo; e <= hi; ++e) out.push_back(e);
  return out;
}

std::int64_t sum_values(const std::vector<std::int64_t>& parts, bool triangular) {
  std::int64_t s = 0;
  for (auto p : parts) s += triangular ? p * (p - 1) / 2 : p * p;
  return s;
}

// Witness re-check written out here rather than delegated to check_witness.
void recheck_range(Verdict& v, Problem p, std::int64_t lo, std::int64_t hi, std::size_t parts,
                   const std::function<bool(std::int64_t, const RepresentationWitness&)>& extra) {
  const auto results = solve_range(p, lo, hi);
  std::vector<std::int64_t> bad;
  std::vector<std::int64_t> none;
  for (std::int64_t n = lo; n <= hi; ++n) {
    const auto& w = results[static_cast<std::size_t>(n - lo)];
    if (!w) {
      none.push_back(n);
      continue;
    }
    const bool shape = w->target == n && w->parts.size() == parts && w->parts.back() >= 1 &&
                       std::is_sorted(w->parts.rbegin(), w->parts.rend());
    if (!shape || !extra(n, *w)) bad.push_back(n);
  }
  if (!none.empty()) v.fail(std::string(to_string(p)) + " unsolved for n = " + list(none));
  if (!bad.empty()) v.fail(std::string(to_string(p)) + " invalid witness for n = " + list(bad));
}

std::int64_t top4(const std::vector<std::int64_t>& p) { return p[0] + p[1] + p[2] + p[3]; }

const std::vector<std::int64_t> kSporadic{14, 26, 28, 29, 34, 38, 40, 42, 44, 45,
                                          46, 47, 48, 49, 53, 56, 57, 58, 59, 60};
const std::vector<std::int64_t> kTwisted{18, 32, 36, 50, 54};

Verdict five_squares() {
  Verdict v;
  recheck_range(v, Problem::FiveSquares, 34, 5000, 5,
                [](std::int64_t n, const RepresentationWitness& w) { return sum_values(w.parts, false) == n; });
  if (!verify_range(Problem::FiveSquares, 34, 5000).empty()) v.fail("verify_range(34, 5000) not empty");
  if (five_positive_squares(33)) v.fail("33 has a witness");
  return v;
}

Verdict fifteen_squares() {
  Verdict v;
  recheck_range(v, Problem::FifteenBoundedSquares, 36, 2000, 15, [](std::int64_t m, const RepresentationWitness& w) {
    return sum_values(w.parts, false) == m &&
           std::all_of(w.parts.begin(), w.parts.end(), [m](auto p) { return 3 * (p * p + 3) <= m; });
  });
  if (!verify_range(Problem::FifteenBoundedSquares, 36, 2000).empty()) v.fail("verify_range(36, 2000) not empty");
  return v;
}

Verdict eq1() {
  Verdict v;
  recheck_range(v, Problem::Eq1, 164, 3000, 15, [](std::int64_t n, const RepresentationWitness& w) {
    if (!w.lead) return false;
    const auto a = *w.lead;
    const bool base = 2 * a * a - sum_values(w.parts, false) == n && a > top4(w.parts);
    return base && (n < 1218 || a > 4 * w.parts[0]);
  });
  if (!verify_range(Problem::Eq1, 164, 3000).empty()) v.fail("verify_range(164, 3000) not empty");
  return v;
}

Verdict eq7() {
  Verdict v;
  recheck_range(v, Problem::Eq7, 30, 3000, 15, [](std::int64_t n, const RepresentationWitness& w) {
    if (!w.lead) return false;
    const auto a = *w.lead;
    return a * a - sum_values(w.parts, true) == n && a > top4(w.parts) - 2;
  });
  recheck_range(v, Problem::FifteenBoundedTriangular, 24, 2000, 15,
                [](std::int64_t m, const RepresentationWitness& w) {
                  return sum_values(w.parts, true) == m &&
                         std::all_of(w.parts.begin(), w.parts.end(),
                                     [m](auto p) { return 5 * (2 * p - 1) * (2 * p - 1) <= 8 * m + 165; });
                });
  return v;
}

void check_witnessed(Verdict& v, const DegreeRecord& r) {
  std::string why;
  if (!audit_record(r, &why)) v.fail(witness_id(r) + ": " + why);
  if (r.witness && pair(*r.witness, *r.witness) != Rational(2 * r.e)) v.fail(witness_id(r) + ": L^2 != 2e");
}

Verdict sporadic_lists() {
  Verdict v;
  std::vector<std::int64_t> eq1_missing;
  for (std::int64_t e : {34, 53, 79, 97, 101, 103, 107, 109, 113, 119, 125, 131, 135, 137, 139, 143, 145, 149, 151,
                         155, 157, 161}) {
    const auto r = degrees_eq1(e);
    if (!r)
      eq1_missing.push_back(e);
    else
      check_witnessed(v, *r);
  }
  if (!eq1_missing.empty()) v.fail("eq1 route fails for e = " + list(eq1_missing));

  std::vector<std::int64_t> eq7_missing;
  for (std::int64_t e : {14, 26, 28, 40, 42, 44, 46, 48}) {
    const auto r = degrees_eq7(e);
    if (!r)
      eq7_missing.push_back(e);
    else
      check_witnessed(v, *r);
  }
  if (!eq7_missing.empty()) v.fail("eq7 route fails for e = " + list(eq7_missing));

  const auto half8 = degrees_half8(159);
  for (const auto& r : half8.records) check_witnessed(v, r);
  auto want1 = closed_range(95, 159);
  want1.insert(want1.begin(), {38, 57, 59, 71, 73, 75, 77, 79, 81, 83, 85});
  if (const auto m = missing_from(half8.degrees(), want1); !m.empty()) v.fail("method (1) misses " + list(m));

  const auto trope = degrees_trope(159);
  for (const auto& r : trope.records) check_witnessed(v, r);
  auto want2 = closed_range(85, 159);
  want2.insert(want2.begin(), {29, 45, 46, 47, 49, 63, 65, 67, 69, 71, 73});
  if (const auto m = missing_from(trope.degrees(), want2); !m.empty()) v.fail("method (2) misses " + list(m));

  const auto table = theorem_main_set(200, false);
  std::vector<std::int64_t> small;
  for (const auto& [e, recs] : table.by_e)
    if (e <= 61) small.push_back(e);
  if (small != kSporadic) v.fail("e <= 61 set is " + list(small, 40) + ", expected " + list(kSporadic, 40));
  return v;
}

Verdict coverage() {
  Verdict v;
  const auto table = theorem_main_set(1000, true);
  if (!table.guard_ok()) v.fail("enumeration guard tripped");
  const auto missing = missing_from(table.degrees(), closed_range(62, 1000));
  if (!missing.empty()) v.fail("missing e = " + list(missing));
  std::vector<std::int64_t> small;
  for (const auto& [e, recs] : table.by_e)
    if (e <= 61) small.push_back(e);
  std::vector<std::int64_t> want = kSporadic;
  want.insert(want.end(), kTwisted.begin(), kTwisted.end());
  std::sort(want.begin(), want.end());
  if (small != want) v.fail("sporadic part is " + list(small, 40) + ", expected " + list(want, 40));
  return v;
}

Verdict ampleness_oracle() {
  Verdict v;
  std::mt19937_64 rng(20240229);
  std::uniform_int_distribution<std::int64_t> node(1, 8);
  std::uniform_int_distribution<std::int64_t> margin(1, 8);
  const AbelianNs grams[] = {AbelianNs::rank_one(1), AbelianNs::product(1)};
  const SearchBounds bounds{8, 8, false};
  int flagged = 0;
  for (int t = 0; t < 1000; ++t) {
    KummerClass l;
    l.d = 1;
    for (auto& x : l.e2) x = node(rng);
    auto e = l.e2;
    std::sort(e.begin(), e.end(), std::greater<>());
    l.h2 = e[0] + e[1] + e[2] + e[3] + margin(rng);
    if (!sufficient_ample(l)) {
      v.fail("generated class fails the criterion");
      break;
    }
    for (const auto& ns : grams)
      if (find_orthogonal_violator(l, ns, bounds)) ++flagged;
  }
  if (flagged > 0) v.fail(std::to_string(flagged) + " criterion-passing classes have a violator");

  const auto l4 = KummerClass::uniform(1, 8, 2);
  const auto c = find_orthogonal_violator(l4, AbelianNs::product(1), bounds);
  if (!c)
    v.fail("no candidate for 4H - sum E_i");
  else if (intersect(l4, *c) != Rational(0) || self_intersection(*c) != Rational(-2))
    v.fail("4H - sum E_i candidate has L.C = " + to_string(intersect(l4, *c)));
  return v;
}

Verdict mukai_bounds() {
  Verdict v;
  const auto product = NumericalSurfaceData::custom(SurfaceKind::Abelian, {{0, 1}, {1, 0}}, {1, 1});
  for (std::int64_t n = 1; n <= 6; ++n) {
    const MukaiVector vec{1, {0, 0}, -n - 1};
    const auto res = wall_search(vec, product);
    const auto bound = kummer_ample_bound(vec, product);
    if (res.max_ratio != Rational(n + 1)) v.fail("n = " + std::to_string(n) + ": ratio " + to_string(res.max_ratio));
    if (res.max_ratio > bound) v.fail("n = " + std::to_string(n) + ": bound exceeded");
    if (!res.identity_holds) v.fail("n = " + std::to_string(n) + ": identity fails");
    if (res.candidates == 0) v.fail("n = " + std::to_string(n) + ": no candidates");
  }
  return v;
}

Verdict cross_module() {
  Verdict v;
  const auto rank_one = NumericalSurfaceData::standard(SurfaceKind::Abelian, 1);
  const auto bound = kummer_ample_bound(MukaiVector{1, {0}, -2}, rank_one);
  if (bound != Rational(2)) v.fail("n = 1 bound is " + to_string(bound));
  // aH - t sum E_i against u l - delta with u = a / (2t)
  for (std::int64_t t = 1; t <= 6; ++t)
    for (std::int64_t h2 = 1; h2 <= 80; ++h2) {
      const bool lattice = sufficient_ample(KummerClass::uniform(1, h2, 2 * t));
      const bool mukai = Rational(h2, 4 * t) > bound;
      if (lattice != mukai) v.fail("t = " + std::to_string(t) + ", 2a = " + std::to_string(h2));
    }
  return v;
}

Verdict twisted() {
  Verdict v;
  std::set<std::int64_t> es;
  for (const auto& t : twisted_k3_batch()) {
    if (t.v_square != 4) v.fail("v^2 = " + std::to_string(t.v_square));
    if (t.gcd != 1) v.fail("gcd = " + std::to_string(t.gcd));
    es.insert(t.e);
  }
  if (es != std::set<std::int64_t>(kTwisted.begin(), kTwisted.end()))
    v.fail("e-set " + list({es.begin(), es.end()}));
  return v;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_s;  // 0: no time limit
    Verdict (*run)();
  };
  const Criterion criteria[] = {
      {1, "five positive squares", 1, five_squares},
      {2, "fifteen bounded squares", 5, fifteen_squares},
      {3, "Eq1 representations", 30, eq1},
      {4, "Eq7 and bounded triangular representations", 30, eq7},
      {5, "sporadic degree lists", 120, sporadic_lists},
      {6, "coverage and sporadic part", 120, coverage},
      {7, "ampleness criterion against the violator search", 60, ampleness_oracle},
      {8, "Mukai wall bounds", 60, mukai_bounds},
      {9, "cross-module consistency", 0, cross_module},
      {10, "twisted moduli example", 0, twisted},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& ex) {
      v.fail(std::string("exception: ") + ex.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.limit_s > 0 && secs > c.limit_s)
      v.fail("took " + std::to_string(secs) + " s, limit " + std::to_string(c.limit_s) + " s");
    std::cout << (v.ok ? "PASS" : "FAIL") << "  criterion " << c.id << ": " << c.name << " ("
              << static_cast<long>(secs * 1000) << " ms)";
    if (!v.ok) std::cout << "  " << v.why.str();
    std::cout << std::endl;
    if (!v.ok) ++failures;
  }
  std::cout << (10 - failures) << "/10 criteria passed" << std::endl;
  return failures == 0 ? 0 : 1;
}
