#include <algorithm>
#include <map>

#include <doctest.h>

#include "kumdeg/errors.hpp"
#include "kumdeg/representations.hpp"
#include "oracles.hpp"

using namespace kumdeg;

namespace {

// Independent restatement of each problem's constraints.
bool valid(const RepresentationWitness& w) {
  const auto& p = w.parts;
  const std::map<Problem, std::size_t> counts{{Problem::FiveSquares, 5},
                                              {Problem::FifteenBoundedSquares, 15},
                                              {Problem::ThreeTriangular, 3},
                                              {Problem::FifteenBoundedTriangular, 15},
                                              {Problem::Eq1, 15},
                                              {Problem::Eq7, 15}};
  if (p.size() != counts.at(w.problem)) return false;
  if (!std::is_sorted(p.rbegin(), p.rend()) || p.back() < 1) return false;
  std::int64_t squares = 0;
  std::int64_t tris = 0;
  for (auto x : p) {
    squares += x * x;
    tris += x * (x - 1) / 2;
  }
  switch (w.problem) {
    case Problem::FiveSquares:
      return squares == w.target;
    case Problem::FifteenBoundedSquares:
      return squares == w.target && std::all_of(p.begin(), p.end(), [&](auto x) { return 3 * (x * x + 3) <= w.target; });
    case Problem::ThreeTriangular:
      return tris == w.target;
    case Problem::FifteenBoundedTriangular:
      return tris == w.target &&
             std::all_of(p.begin(), p.end(), [&](auto x) { return 5 * (2 * x - 1) * (2 * x - 1) <= 8 * w.target + 165; });
    case Problem::Eq1: {
      const auto a = w.lead.value();
      return 2 * a * a - squares == w.target && a > p[0] + p[1] + p[2] + p[3];
    }
    case Problem::Eq7: {
      const auto a = w.lead.value();
      return a * a - tris == w.target && a > p[0] + p[1] + p[2] + p[3] - 2;
    }
  }
  return false;
}

std::vector<std::int64_t> sorted_multiset(std::vector<std::int64_t> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

TEST_CASE("problem names") {
  CHECK(parse_problem("five-squares") == Problem::FiveSquares);
  CHECK(parse_problem("FifteenBoundedTriangular") == Problem::FifteenBoundedTriangular);
  CHECK(parse_problem("eq7") == Problem::Eq7);
  CHECK_FALSE(parse_problem("eq9").has_value());
  for (auto p : {Problem::FiveSquares, Problem::FifteenBoundedSquares, Problem::ThreeTriangular,
                 Problem::FifteenBoundedTriangular, Problem::Eq1, Problem::Eq7})
    CHECK(parse_problem(to_string(p)) == p);
}

TEST_CASE("five positive squares against brute force") {
  const auto truth = oracle::five_squares(700);
  for (std::int64_t m = 1; m <= 700; ++m) {
    for (auto s : {Strategy::Auto, Strategy::Exhaustive}) {
      const auto w = five_positive_squares(m, s);
      CHECK_MESSAGE(w.has_value() == truth.count(m) > 0, "m = " << m);
      if (w) CHECK(valid(*w));
    }
  }
  CHECK_FALSE(five_positive_squares(33).has_value());
  const auto w34 = five_positive_squares(34);
  REQUIRE(w34);
  CHECK(valid(*w34));
  // above 169 the witness is a five-part form of 169 plus the squares of m - 169
  CHECK(five_positive_squares(170)->parts == std::vector<std::int64_t>{11, 4, 4, 4, 1});
  CHECK(five_positive_squares(173)->parts == std::vector<std::int64_t>{13, 1, 1, 1, 1});
  CHECK_THROWS_AS(five_positive_squares(0), ParameterError);
}

TEST_CASE("five-squares descent covers every residue branch") {
  // m - 169 with one, two, three and four nonzero squares
  for (std::int64_t m : {170, 173, 172, 176, 169 + 7, 169 + 15, 169 + 28, 10000, 123457}) {
    const auto w = five_positive_squares(m);
    REQUIRE(w);
    CHECK(valid(*w));
  }
  CHECK(five_positive_squares(169 + 2)->parts == std::vector<std::int64_t>{12, 4, 3, 1, 1});
  CHECK(five_positive_squares(169 + 3)->parts == std::vector<std::int64_t>{12, 5, 1, 1, 1});
}

TEST_CASE("fifteen bounded squares against brute force") {
  for (std::int64_t m = 36; m <= 260; ++m) {
    const bool truth = oracle::fifteen_bounded_squares(m);
    for (auto s : {Strategy::Auto, Strategy::Exhaustive}) {
      const auto w = fifteen_bounded_squares(m, s);
      CHECK_MESSAGE(w.has_value() == truth, "m = " << m);
      if (w) CHECK(valid(*w));
    }
  }
  CHECK_THROWS_AS(fifteen_bounded_squares(35), DomainError);
}

TEST_CASE("fifteen bounded squares above 101 come from m = 3n + r") {
  for (std::int64_t m = 102; m <= 400; ++m) {
    const auto w = fifteen_bounded_squares(m);
    REQUIRE(w);
    const std::int64_t n = m / 3;
    const std::int64_t r = m % 3;
    std::vector<std::int64_t> expected;
    for (std::int64_t i = 0; i < 3; ++i) {
      const auto part = five_positive_squares(i < 3 - r ? n : n + 1);
      REQUIRE(part);
      expected.insert(expected.end(), part->parts.begin(), part->parts.end());
    }
    CHECK(sorted_multiset(w->parts) == sorted_multiset(expected));
  }
}

TEST_CASE("three triangular numbers") {
  CHECK(three_triangular(0).parts == std::vector<std::int64_t>{1, 1, 1});
  CHECK(three_triangular(5).parts == std::vector<std::int64_t>{3, 2, 2});
  for (std::int64_t n = 0; n <= 3000; ++n) CHECK(valid(three_triangular(n)));
  CHECK(valid(three_triangular(1000000)));
  CHECK_THROWS_AS(three_triangular(-1), ParameterError);
}

TEST_CASE("fifteen bounded triangular against brute force") {
  for (std::int64_t m = 24; m <= 260; ++m) {
    const bool truth = oracle::fifteen_bounded_triangular(m);
    const auto exhaustive = fifteen_bounded_triangular(m, Strategy::Exhaustive);
    CHECK_MESSAGE(exhaustive.has_value() == truth, "m = " << m);
    if (exhaustive) CHECK(valid(*exhaustive));
    const auto assembled = fifteen_bounded_triangular(m);
    REQUIRE(assembled);
    CHECK(valid(*assembled));
  }
  CHECK_THROWS_AS(fifteen_bounded_triangular(23), DomainError);
}

TEST_CASE("Eq1 against brute force") {
  const std::int64_t hi = 400;
  const auto truth = oracle::eq1(hi);
  for (std::int64_t n = 1; n <= hi; ++n) {
    const auto w = represent_eq1(n);
    CHECK_MESSAGE(w.has_value() == truth.count(n) > 0, "n = " << n);
    if (w) CHECK(valid(*w));
  }
  const auto w164 = represent_eq1(164);
  REQUIRE(w164);
  CHECK(*w164->lead == 10);
  CHECK(valid(*w164));
}

TEST_CASE("Eq1 witnesses for large n dominate four times the largest part") {
  for (std::int64_t n = 1218; n <= 1600; ++n) {
    const auto w = represent_eq1(n);
    REQUIRE(w);
    CHECK(valid(*w));
    CHECK(*w->lead > 4 * w->parts[0]);
  }
}

TEST_CASE("Eq7 against brute force") {
  const std::int64_t hi = 250;
  const auto truth = oracle::eq7(hi);
  for (std::int64_t n = 1; n <= hi; ++n) {
    const auto w = represent_eq7(n);
    CHECK_MESSAGE(w.has_value() == truth.count(n) > 0, "n = " << n);
    if (w) CHECK(valid(*w));
  }
  const auto w9 = represent_eq7(9);
  REQUIRE(w9);
  CHECK(*w9->lead == 3);
  CHECK(w9->parts == std::vector<std::int64_t>(15, 1));
  CHECK(represent_eq7(30).has_value());
}

TEST_CASE("Eq7 is solvable for every n in [30, 186]") {
  CHECK(verify_range(Problem::Eq7, 30, 186) == std::vector<std::int64_t>{});
}

TEST_CASE("check_witness rejects tampered witnesses") {
  auto w = *represent_eq1(200);
  CHECK(check_witness(w));
  auto bad = w;
  bad.target += 1;
  CHECK_FALSE(check_witness(bad));
  bad = w;
  bad.lead = w.parts[0] + w.parts[1] + w.parts[2] + w.parts[3];
  CHECK_FALSE(check_witness(bad));
  bad = w;
  std::swap(bad.parts.front(), bad.parts.back());
  CHECK_FALSE(check_witness(bad));
  bad = w;
  bad.lead.reset();
  CHECK_FALSE(check_witness(bad));
}

TEST_CASE("verify_range") {
  CHECK(verify_range(Problem::FiveSquares, 34, 169).empty());
  CHECK(verify_range(Problem::FiveSquares, 30, 33) == std::vector<std::int64_t>{33});
  CHECK(verify_range(Problem::FifteenBoundedSquares, 34, 40) == std::vector<std::int64_t>{34, 35});
  CHECK(verify_range(Problem::ThreeTriangular, 0, 500).empty());
}

TEST_CASE("range results do not depend on the worker count") {
  const auto one = solve_range(Problem::Eq1, 164, 700, 1);
  const auto four = solve_range(Problem::Eq1, 164, 700, 4);
  CHECK(one == four);
  CHECK(verify_range(Problem::Eq7, 1, 400, 1) == verify_range(Problem::Eq7, 1, 400, 3));
}
