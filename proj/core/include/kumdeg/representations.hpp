#pragma once

// Solvers for the constrained sums of squares and triangular numbers behind
// the degree constructions:
//
//   FiveSquares               m = a_1^2 + .. + a_5^2,  a_i >= 1
//   FifteenBoundedSquares     m = a_1^2 + .. + a_15^2, 1 <= a_i, 3(a_i^2 + 3) <= m
//   ThreeTriangular           n = T(a_1) + T(a_2) + T(a_3), a_i >= 1
//   FifteenBoundedTriangular  m = T(a_1) + .. + T(a_15), 1 <= a_i, 5(2a_i - 1)^2 <= 8m + 165
//   Eq1                       n = 2a^2 - sum_{15} a_i^2,   a > a_1 + a_2 + a_3 + a_4
//   Eq7                       n = a^2 - sum_{15} T(a_i),   a > a_1 + a_2 + a_3 + a_4 - 2
//
// with T(x) = x(x-1)/2 and parts listed in non-increasing order.

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace kumdeg {

enum class Problem { FiveSquares, FifteenBoundedSquares, ThreeTriangular, FifteenBoundedTriangular, Eq1, Eq7 };

std::string_view to_string(Problem p);
/// Accepts the enumerator names and kebab-case forms ("five-squares", "eq1").
std::optional<Problem> parse_problem(std::string_view name);

struct RepresentationWitness {
  Problem problem = Problem::FiveSquares;
  std::int64_t target = 0;
  std::vector<std::int64_t> parts;  // non-increasing
  std::optional<std::int64_t> lead;  // a, for Eq1 and Eq7

  friend bool operator==(const RepresentationWitness&, const RepresentationWitness&) = default;
};

/// Substitution plus every constraint of the problem (part count, order,
/// positivity, per-part bounds, dominance).
bool check_witness(const RepresentationWitness& w);

/// Auto follows the constructive arguments where they apply (descent from
/// 13^2 above 169, the m = 3n + r and m = 5n + r assemblies); Exhaustive
/// always returns the lexicographically smallest (lead, parts).
enum class Strategy { Auto, Exhaustive };

std::optional<RepresentationWitness> five_positive_squares(std::int64_t m, Strategy s = Strategy::Auto);
/// m < 36 throws DomainError.
std::optional<RepresentationWitness> fifteen_bounded_squares(std::int64_t m, Strategy s = Strategy::Auto);
RepresentationWitness three_triangular(std::int64_t n);
/// m < 24 throws DomainError.
std::optional<RepresentationWitness> fifteen_bounded_triangular(std::int64_t m, Strategy s = Strategy::Auto);
/// Smallest a first, then the lexicographically smallest parts.
std::optional<RepresentationWitness> represent_eq1(std::int64_t n);
std::optional<RepresentationWitness> represent_eq7(std::int64_t n);

std::optional<RepresentationWitness> solve(Problem p, std::int64_t n, Strategy s = Strategy::Auto);

/// Every n in [lo, hi] without a witness (including n outside the problem's
/// domain), ascending.
std::vector<std::int64_t> verify_range(Problem p, std::int64_t lo, std::int64_t hi, int jobs = 0,
                                       Strategy s = Strategy::Auto);

/// solve() over [lo, hi]; slot i holds the result for lo + i.
std::vector<std::optional<RepresentationWitness>> solve_range(Problem p, std::int64_t lo, std::int64_t hi,
                                                              int jobs = 0, Strategy s = Strategy::Auto);

}  // namespace kumdeg
