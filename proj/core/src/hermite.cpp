#include "kumdeg/hermite.hpp"

#include <cstdlib>
#include <stdexcept>
#include <utility>

namespace kumdeg {

namespace {

void axpy(IntRow& dst, std::int64_t factor, const IntRow& src) {
  for (std::size_t k = 0; k < dst.size(); ++k) dst[k] += factor * src[k];
}

void negate(IntRow& row) {
  for (auto& x : row) x = -x;
}

// floor division for the above-pivot reduction
std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

HermiteForm hermite_normal_form(const IntMatrix& generators) {
  const std::size_t rows = generators.size();
  const std::size_t cols = rows == 0 ? 0 : generators.front().size();
  IntMatrix a = generators;
  IntMatrix u(rows, IntRow(rows, 0));
  for (std::size_t i = 0; i < rows; ++i) {
    if (a[i].size() != cols) throw std::invalid_argument("hermite_normal_form: ragged generator matrix");
    u[i][i] = 1;
  }

  std::vector<std::size_t> pivots;
  std::size_t top = 0;
  for (std::size_t col = 0; col < cols && top < rows; ++col) {
    // Euclid on column `col` over rows [top, rows).
    for (;;) {
      std::size_t best = rows;
      for (std::size_t r = top; r < rows; ++r) {
        if (a[r][col] == 0) continue;
        if (best == rows || std::llabs(a[r][col]) < std::llabs(a[best][col])) best = r;
      }
      if (best == rows) break;
      std::swap(a[top], a[best]);
      std::swap(u[top], u[best]);
      bool clean = true;
      for (std::size_t r = top + 1; r < rows; ++r) {
        if (a[r][col] == 0) continue;
        const std::int64_t q = a[r][col] / a[top][col];
        axpy(a[r], -q, a[top]);
        axpy(u[r], -q, u[top]);
        if (a[r][col] != 0) clean = false;
      }
      if (clean) break;
    }
    if (a[top][col] == 0) continue;
    if (a[top][col] < 0) {
      negate(a[top]);
      negate(u[top]);
    }
    for (std::size_t r = 0; r < top; ++r) {
      const std::int64_t q = floor_div(a[r][col], a[top][col]);
      if (q == 0) continue;
      axpy(a[r], -q, a[top]);
      axpy(u[r], -q, u[top]);
    }
    pivots.push_back(col);
    ++top;
  }

  a.resize(top);
  u.resize(top);
  return {std::move(a), std::move(u), std::move(pivots)};
}

std::optional<IntRow> solve_in_span(const HermiteForm& form, std::span<const std::int64_t> target) {
  IntRow residual(target.begin(), target.end());
  IntRow y(form.basis.size(), 0);
  for (std::size_t i = 0; i < form.basis.size(); ++i) {
    const std::size_t col = form.pivots[i];
    const std::int64_t pivot = form.basis[i][col];
    if (residual[col] % pivot != 0) return std::nullopt;
    y[i] = residual[col] / pivot;
    axpy(residual, -y[i], form.basis[i]);
  }
  for (auto x : residual)
    if (x != 0) return std::nullopt;

  const std::size_t gens = form.transform.empty() ? 0 : form.transform.front().size();
  IntRow combination(gens, 0);
  for (std::size_t i = 0; i < y.size(); ++i) axpy(combination, y[i], form.transform[i]);
  return combination;
}

}  // namespace kumdeg
