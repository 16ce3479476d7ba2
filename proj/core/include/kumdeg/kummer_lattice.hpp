#pragma once

// Divisor classes on the Neron-Severi lattice of a Kummer surface.
//
// A class is aH - sum_i a_i E_i with a, a_i in (1/2)Z. Everything is stored
// doubled so that all arithmetic stays in the integers:
//
//     L = (h2/2) H - sum_i (e2[i]/2) E_i,   H^2 = 4d,  E_i^2 = -2,  H.E_i = 0.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kumdeg/rational.hpp"

namespace kumdeg {

inline constexpr std::size_t kNodes = 16;

struct KummerClass {
  std::int64_t d = 1;
  std::int64_t h2 = 0;
  std::array<std::int64_t, kNodes> e2{};

  /// H itself (h2 = 2, e2 = 0).
  static KummerClass polarization(std::int64_t d);
  /// +E_i for a 1-based node index i (so e2[i-1] = -2).
  static KummerClass node(std::int64_t d, int index);
  /// aH - sum_i a_i E_i from doubled coefficients shared by every node.
  static KummerClass uniform(std::int64_t d, std::int64_t h2, std::int64_t e2_all);

  KummerClass& operator+=(const KummerClass& other);
  friend KummerClass operator+(KummerClass lhs, const KummerClass& rhs) { return lhs += rhs; }
  friend KummerClass operator*(std::int64_t k, KummerClass c);
  friend bool operator==(const KummerClass&, const KummerClass&) = default;
};

/// Throws ParameterError unless d >= 1.
void validate(const KummerClass& c);

/// Intersection number L1.L2, an integer or half-integer.
Rational pair(const KummerClass& lhs, const KummerClass& rhs);

/// 2 * (L1.L2); always an integer.
std::int64_t pair_doubled(const KummerClass& lhs, const KummerClass& rhs);

/// The sublattice in which integrality is decided: H, E_1..E_16 plus the
/// enabled half-classes. Index sets are 1-based.
struct IntegralityGenerators {
  bool half_all16 = false;                   // (1/2) sum E_i
  std::vector<std::vector<int>> half_eight;  // (1/2) sum_{i in W} E_i, |W| = 8
  std::vector<std::vector<int>> tropes;      // (1/2)(H + sum_{i in W} E_i), |W| = 6, d odd

  /// H, E_i, (1/2)sum E_i, (1/2)(E_1+..+E_8), and for odd d the trope
  /// (1/2)(H+E_1+..+E_6).
  static IntegralityGenerators defaults(std::int64_t d);
  /// Only H and the E_i.
  static IntegralityGenerators base();

  friend bool operator==(const IntegralityGenerators&, const IntegralityGenerators&) = default;
};

/// Throws ParameterError on bad index sets, or when tropes are enabled for
/// even d.
void validate(const IntegralityGenerators& gens, std::int64_t d);

/// Generators in doubled coordinates (h2, e2[0..15]), in the order:
/// H, E_1..E_16, half_all16, half_eight..., tropes...
std::vector<std::vector<std::int64_t>> generator_rows(const IntegralityGenerators& gens);
std::vector<std::string> generator_labels(const IntegralityGenerators& gens);

struct Membership {
  bool integral = false;
  /// Coefficients over generator_rows(gens) reproducing the class.
  std::vector<std::int64_t> combination;
};

Membership is_integral(const KummerClass& c, const IntegralityGenerators& gens);

/// Requires an integral class (PreconditionError otherwise).
bool is_primitive(const KummerClass& c, const IntegralityGenerators& gens);

/// Doubled coordinates (h2, e2...) as one flat vector of 17 entries.
std::array<std::int64_t, kNodes + 1> doubled_coordinates(const KummerClass& c);

}  // namespace kumdeg
