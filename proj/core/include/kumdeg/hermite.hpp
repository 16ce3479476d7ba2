#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace kumdeg {

using IntRow = std::vector<std::int64_t>;
using IntMatrix = std::vector<IntRow>;

/// Row-style Hermite normal form of the lattice spanned by a list of
/// generator rows. `basis = transform * generators`, rows of `basis` are in
/// echelon form with positive pivots and reduced entries above each pivot.
struct HermiteForm {
  IntMatrix basis;
  IntMatrix transform;
  std::vector<std::size_t> pivots;  // pivot column of each basis row
};

HermiteForm hermite_normal_form(const IntMatrix& generators);

/// Integer coefficients x with sum_j x[j] * generators[j] == target, or
/// nullopt when the target is outside the integer span.
std::optional<IntRow> solve_in_span(const HermiteForm& form, std::span<const std::int64_t> target);

}  // namespace kumdeg
