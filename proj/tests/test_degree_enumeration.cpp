#include <algorithm>
#include <numeric>
#include <set>

#include <doctest.h>

#include "kumdeg/ampleness.hpp"
#include "kumdeg/degree_enumeration.hpp"
#include "kumdeg/errors.hpp"
#include "kumdeg/representations.hpp"
#include "oracles.hpp"

using namespace kumdeg;

namespace {

std::int64_t top4(const KummerClass& l) {
  auto e = l.e2;
  std::sort(e.begin(), e.end(), std::greater<>());
  return e[0] + e[1] + e[2] + e[3];
}

int odd_nodes(const KummerClass& l, std::size_t upto) {
  return static_cast<int>(std::count_if(l.e2.begin(), l.e2.begin() + static_cast<long>(upto),
                                        [](auto x) { return x % 2 != 0; }));
}

// Checks that do not go through the library's own audit.
void check_record(const DegreeRecord& r) {
  CAPTURE(witness_id(r));
  std::string why;
  CHECK_MESSAGE(audit_record(r, &why), why);
  if (!r.witness) return;
  const auto& l = *r.witness;
  CHECK(pair(l, l) == Rational(2 * r.e));
  CHECK(l.h2 > top4(l));
  CHECK(std::all_of(l.e2.begin(), l.e2.end(), [](auto x) { return x > 0; }));
  CHECK(is_integral(l, r.generators).integral);
  CHECK(r.primitive);
}

std::set<std::int64_t> restrict(const std::set<std::int64_t>& s, std::int64_t hi) {
  return {s.begin(), s.upper_bound(hi)};
}

}  // namespace

TEST_CASE("method names and witness ids") {
  for (auto m : all_methods()) CHECK(parse_method(to_string(m)) == m);
  CHECK(parse_method("rational-family") == Method::RATIONAL_FAMILY);
  CHECK(parse_method("half8") == Method::HALF8);
  CHECK_FALSE(parse_method("eq3").has_value());
  DegreeRecord r;
  r.e = 14;
  r.method = Method::EQ7;
  CHECK(witness_id(r) == "EQ7-14");
}

TEST_CASE("EQ1 records") {
  const auto r163 = degrees_eq1(163);
  REQUIRE(r163);
  REQUIRE(r163->witness);
  CHECK(r163->witness->h2 == 20);
  CHECK(r163->witness->e2[15] == 2);
  CHECK(pair(*r163->witness, *r163->witness) == Rational(326));
  check_record(*r163);
  CHECK(degrees_eq1(34).has_value());
  CHECK(pair(*degrees_eq1(34)->witness, KummerClass::node(1, 16)) == Rational(2));
}

TEST_CASE("EQ1 degrees follow Eq1 at n = e + 1 up to primitivity") {
  const auto solvable = oracle::eq1(301);
  for (std::int64_t e = 1; e <= 300; ++e) {
    const auto r = degrees_eq1(e);
    if (r) {
      check_record(*r);
      CHECK(solvable.count(e + 1) == 1);
    } else if (solvable.count(e + 1) != 0) {
      // the smallest-a witness is divisible by 2, which forces 8 | 2e
      CHECK(e % 4 == 0);
    }
  }
}

TEST_CASE("EQ7 records") {
  const auto r14 = degrees_eq7(14);
  REQUIRE(r14);
  REQUIRE(r14->witness);
  CHECK(*r14->witness == KummerClass::uniform(1, 6, 1));
  CHECK(pair(*r14->witness, *r14->witness) == Rational(28));
  check_record(*r14);
  CHECK(degrees_eq7(56).has_value());
  CHECK_THROWS_AS(degrees_eq7(15), DomainError);
}

TEST_CASE("EQ7 degrees are exactly the even e with Eq7 solvable at e/2 + 2") {
  const auto solvable = oracle::eq7(202);
  for (std::int64_t e = 2; e <= 400; e += 2) {
    const auto r = degrees_eq7(e);
    CHECK_MESSAGE(r.has_value() == solvable.count(e / 2 + 2) > 0, "e = " << e);
    if (r) check_record(*r);
  }
}

TEST_CASE("half-eight construction against brute force") {
  const std::int64_t hi = 120;
  const auto res = degrees_half8(hi);
  CHECK(res.guard_ok());
  CHECK(res.degrees() == restrict(oracle::half_integral_degrees(hi, true, 7), hi));
  CHECK(*res.degrees().begin() == 38);
  for (const auto& r : res.records) {
    check_record(r);
    REQUIRE(r.witness);
    CHECK(r.witness->h2 % 2 == 0);
    CHECK(r.witness->e2[15] == 1);
    CHECK(odd_nodes(*r.witness, 15) == 7);
  }
}

TEST_CASE("trope construction against brute force") {
  const std::int64_t hi = 120;
  const auto res = degrees_trope(hi);
  CHECK(res.guard_ok());
  CHECK(res.degrees() == restrict(oracle::half_integral_degrees(hi, false, 5), hi));
  for (const auto& r : res.records) {
    check_record(r);
    REQUIRE(r.witness);
    CHECK(r.witness->h2 % 2 == 1);
    CHECK(r.witness->e2[15] == 1);
    CHECK(odd_nodes(*r.witness, 15) == 5);
  }
  EnumerationOptions even;
  even.d = 2;
  CHECK_THROWS(degrees_trope(hi, even));
}

TEST_CASE("verbose mode keeps one record per (e, a)") {
  EnumerationOptions opts;
  opts.verbose = true;
  const auto verbose = degrees_half8(90, opts);
  const auto plain = degrees_half8(90);
  CHECK(verbose.degrees() == plain.degrees());
  CHECK(verbose.records.size() >= plain.records.size());
  std::set<std::pair<std::int64_t, std::int64_t>> seen;
  for (const auto& r : verbose.records) {
    CHECK(seen.insert({r.e, r.witness->h2}).second);
    check_record(r);
  }
}

TEST_CASE("rational family") {
  const std::int64_t hi = 400;
  std::set<std::int64_t> expected;
  for (std::int64_t a = 1; a < 40; ++a)
    for (std::int64_t c = 1; 2 * c < a; ++c)
      if (std::gcd(a, c) == 1 && 2 * a * a - 4 * c * c <= hi) expected.insert(2 * a * a - 4 * c * c);
  const auto res = rational_family_degrees(hi);
  CHECK(res.degrees() == expected);
  CHECK(res.degrees().count(14) == 1);
  for (const auto& r : res.records) {
    check_record(r);
    CHECK(r.params.at("a") > 2 * r.params.at("c"));
    CHECK(std::gcd(r.params.at("a"), r.params.at("c")) == 1);
  }
  // (a, c) = (2, 1) fails ampleness and (4, 2) primitivity; neither 4 nor 16
  // has another representation
  CHECK(res.degrees().count(4) == 0);
  CHECK(res.degrees().count(16) == 0);
}

TEST_CASE("twisted moduli degrees") {
  const auto res = twisted_moduli_degrees(100);
  CHECK(res.degrees() == std::set<std::int64_t>{18, 32, 36, 50, 54});
  for (const auto& r : res.records) {
    CHECK_FALSE(r.witness.has_value());
    check_record(r);
  }
  CHECK(twisted_moduli_degrees(40).degrees() == std::set<std::int64_t>{18, 32, 36});
}

TEST_CASE("degree table") {
  const auto table = theorem_main_set(300, true, 2);
  CHECK(table.guard_ok());
  for (std::int64_t e = 62; e <= 300; ++e) CHECK_MESSAGE(table.by_e.count(e) == 1, "e = " << e);
  for (const auto& [e, recs] : table.by_e) {
    CHECK_FALSE(recs.empty());
    for (const auto& r : recs) CHECK(r.e == e);
    CHECK(table.methods(e).size() >= 1);
  }
  CHECK(table.degrees().size() == table.by_e.size());
  CHECK_THROWS_AS(theorem_main_set(61), ParameterError);

  TableOptions only;
  only.methods = {Method::RATIONAL_FAMILY};
  const auto small = enumerate_degrees(100, only);
  CHECK(small.per_method.size() == 1);
  CHECK(small.degrees() == rational_family_degrees(100).degrees());
}

TEST_CASE("enumeration does not depend on the worker count") {
  TableOptions one;
  one.jobs = 1;
  TableOptions three;
  three.jobs = 3;
  const auto a = enumerate_degrees(250, one);
  const auto b = enumerate_degrees(250, three);
  CHECK(a.by_e == b.by_e);
}
