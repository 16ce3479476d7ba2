#include "kumdeg/representations.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <unordered_map>

#include "kumdeg/errors.hpp"
#include "kumdeg/parallel.hpp"
#include "kumdeg/part_sums.hpp"
#include "kumdeg/rational.hpp"

namespace kumdeg {

namespace {

constexpr std::array<std::pair<Problem, std::string_view>, 6> kNames{{
    {Problem::FiveSquares, "FiveSquares"},
    {Problem::FifteenBoundedSquares, "FifteenBoundedSquares"},
    {Problem::ThreeTriangular, "ThreeTriangular"},
    {Problem::FifteenBoundedTriangular, "FifteenBoundedTriangular"},
    {Problem::Eq1, "Eq1"},
    {Problem::Eq7, "Eq7"},
}};

constexpr std::array<std::pair<Problem, std::string_view>, 6> kKebab{{
    {Problem::FiveSquares, "five-squares"},
    {Problem::FifteenBoundedSquares, "fifteen-bounded-squares"},
    {Problem::ThreeTriangular, "three-triangular"},
    {Problem::FifteenBoundedTriangular, "fifteen-bounded-triangular"},
    {Problem::Eq1, "eq1"},
    {Problem::Eq7, "eq7"},
}};

// Read-mostly memo shared between workers.
template <typename Value>
class Memo {
 public:
  template <typename Compute>
  Value get(std::int64_t key, Compute&& compute) {
    {
      std::shared_lock lock(mutex_);
      if (auto it = map_.find(key); it != map_.end()) return it->second;
    }
    Value v = compute();
    std::unique_lock lock(mutex_);
    return map_.try_emplace(key, std::move(v)).first->second;
  }

 private:
  std::shared_mutex mutex_;
  std::unordered_map<std::int64_t, Value> map_;
};

std::int64_t value_of(Problem p, std::int64_t x) {
  switch (p) {
    case Problem::ThreeTriangular:
    case Problem::FifteenBoundedTriangular:
    case Problem::Eq7:
      return triangular(x);
    default:
      return x * x;
  }
}

std::size_t part_count(Problem p) {
  switch (p) {
    case Problem::FiveSquares:
      return 5;
    case Problem::ThreeTriangular:
      return 3;
    default:
      return 15;
  }
}

RepresentationWitness checked(RepresentationWitness w) {
  if (!check_witness(w)) throw std::logic_error("solver produced an invalid witness");
  return w;
}

std::shared_ptr<const PartSumTable> table_for(PartValue kind, std::int64_t cap, std::int64_t sum) {
  return shared_part_table(kind, 15, static_cast<int>(cap), sum);
}

// Lexicographically smallest a_1 >= a_2 >= a_3 >= a_4 >= 0 with sum of squares k.
std::array<std::int64_t, 4> four_squares(std::int64_t k) {
  for (std::int64_t a1 = isqrt_ceil((k + 3) / 4); a1 * a1 <= k; ++a1) {
    const std::int64_t r1 = k - a1 * a1;
    for (std::int64_t a2 = isqrt_ceil((r1 + 2) / 3); a2 <= a1 && a2 * a2 <= r1; ++a2) {
      const std::int64_t r2 = r1 - a2 * a2;
      for (std::int64_t a3 = isqrt_ceil((r2 + 1) / 2); a3 <= a2 && a3 * a3 <= r2; ++a3) {
        const std::int64_t r3 = r2 - a3 * a3;
        if (is_square(r3) && isqrt(r3) <= a3) return {a1, a2, a3, isqrt(r3)};
      }
    }
  }
  throw std::logic_error("four-square decomposition not found");
}

std::vector<std::int64_t> sorted_desc(std::vector<std::int64_t> v) {
  std::sort(v.begin(), v.end(), std::greater<>());
  return v;
}

std::optional<RepresentationWitness> five_squares_exhaustive(std::int64_t m) {
  const std::int64_t cap = isqrt(m);
  auto table = table_for(PartValue::Square, cap, m);
  auto parts = table->smallest_descending(5, static_cast<int>(cap), m);
  if (!parts) return std::nullopt;
  return checked({Problem::FiveSquares, m, *parts, std::nullopt});
}

RepresentationWitness five_squares_descent(std::int64_t m) {
  const auto q = four_squares(m - 169);
  std::vector<std::int64_t> parts;
  if (q[3] > 0) {
    parts = {13, q[0], q[1], q[2], q[3]};
  } else if (q[2] > 0) {
    parts = {12, 5, q[0], q[1], q[2]};
  } else if (q[1] > 0) {
    parts = {12, 4, 3, q[0], q[1]};
  } else {
    parts = {11, 4, 4, 4, q[0]};
  }
  return checked({Problem::FiveSquares, m, sorted_desc(std::move(parts)), std::nullopt});
}

Memo<std::optional<RepresentationWitness>>& five_squares_memo() {
  static Memo<std::optional<RepresentationWitness>> memo;
  return memo;
}

Memo<RepresentationWitness>& three_triangular_memo() {
  static Memo<RepresentationWitness> memo;
  return memo;
}

std::int64_t squares_root_cap(std::int64_t m) {
  // largest r with 3(r^2 + 3) <= m
  return m < 12 ? 0 : isqrt(m / 3 - 3);
}

std::int64_t triangular_index_cap(std::int64_t m) {
  // largest a with 5(2a - 1)^2 <= 8m + 165
  const std::int64_t odd = isqrt((8 * m + 165) / 5);
  return (odd + 1) / 2;
}

// Lexicographically smallest 15 parts for 2a^2 - n (Eq1) or a^2 - n (Eq7)
// subject to the dominance bound on the top four.
struct LeadSearch {
  PartValue kind;
  std::shared_ptr<const PartSumTable> table;
  std::int64_t budget;  // a_1 + .. + a_4 <= budget
  std::array<std::int64_t, 4> top{};
  std::vector<std::int64_t> rest;

  bool dfs(int level, std::int64_t cap, std::int64_t rem, std::int64_t used) {
    if (level == 4) {
      auto r = table->smallest_descending(11, static_cast<int>(cap), rem);
      if (!r) return false;
      rest = std::move(*r);
      return true;
    }
    const std::int64_t left = 3 - level;  // top parts after this one, each >= 1
    const std::int64_t hi = std::min(cap, budget - used - left);
    for (std::int64_t v = 1; v <= hi; ++v) {
      const std::int64_t val = part_value(kind, v);
      if (val > rem) break;
      if (!table->reachable(14 - level, static_cast<int>(v), rem - val)) continue;
      top[static_cast<std::size_t>(level)] = v;
      if (dfs(level + 1, v, rem - val, used + v)) return true;
    }
    return false;
  }
};

}  // namespace

std::string_view to_string(Problem p) {
  for (const auto& [k, name] : kNames)
    if (k == p) return name;
  return "unknown";
}

std::optional<Problem> parse_problem(std::string_view name) {
  for (const auto& [k, n] : kNames)
    if (n == name) return k;
  for (const auto& [k, n] : kKebab)
    if (n == name) return k;
  return std::nullopt;
}

bool check_witness(const RepresentationWitness& w) {
  const auto& parts = w.parts;
  if (parts.size() != part_count(w.problem)) return false;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (parts[i] < 1) return false;
    if (i > 0 && parts[i] > parts[i - 1]) return false;
  }
  const bool has_lead = w.problem == Problem::Eq1 || w.problem == Problem::Eq7;
  if (has_lead != w.lead.has_value()) return false;

  std::int64_t sum = 0;
  for (auto x : parts) sum += value_of(w.problem, x);
  const std::int64_t top4 = has_lead ? parts[0] + parts[1] + parts[2] + parts[3] : 0;

  switch (w.problem) {
    case Problem::FiveSquares:
    case Problem::ThreeTriangular:
      return sum == w.target;
    case Problem::FifteenBoundedSquares:
      return sum == w.target && 3 * (parts[0] * parts[0] + 3) <= w.target;
    case Problem::FifteenBoundedTriangular:
      return sum == w.target && 5 * (2 * parts[0] - 1) * (2 * parts[0] - 1) <= 8 * w.target + 165;
    case Problem::Eq1:
      return 2 * *w.lead * *w.lead - sum == w.target && *w.lead > top4;
    case Problem::Eq7:
      return *w.lead * *w.lead - sum == w.target && *w.lead > top4 - 2;
  }
  return false;
}

std::optional<RepresentationWitness> five_positive_squares(std::int64_t m, Strategy s) {
  if (m < 1) throw ParameterError("five_positive_squares needs m >= 1");
  if (s == Strategy::Exhaustive) return five_squares_exhaustive(m);
  return five_squares_memo().get(m, [m]() -> std::optional<RepresentationWitness> {
    if (m > 169) return five_squares_descent(m);
    return five_squares_exhaustive(m);
  });
}

std::optional<RepresentationWitness> fifteen_bounded_squares(std::int64_t m, Strategy s) {
  if (m < 36) throw DomainError("fifteen bounded squares are only considered for m >= 36");
  if (s == Strategy::Auto && m >= 102) {
    // m = 3n + r: (3 - r) five-square witnesses of n and r of n + 1
    const std::int64_t n = m / 3;
    const std::int64_t r = m % 3;
    std::vector<std::int64_t> parts;
    for (std::int64_t i = 0; i < 3; ++i) {
      auto w = five_positive_squares(i < 3 - r ? n : n + 1);
      if (!w) throw std::logic_error("five-square witness missing above 33");
      parts.insert(parts.end(), w->parts.begin(), w->parts.end());
    }
    return checked({Problem::FifteenBoundedSquares, m, sorted_desc(std::move(parts)), std::nullopt});
  }
  const std::int64_t cap = squares_root_cap(m);
  auto table = table_for(PartValue::Square, cap, m);
  auto parts = table->smallest_descending(15, static_cast<int>(cap), m);
  if (!parts) return std::nullopt;
  return checked({Problem::FifteenBoundedSquares, m, *parts, std::nullopt});
}

RepresentationWitness three_triangular(std::int64_t n) {
  if (n < 0) throw ParameterError("three_triangular needs n >= 0");
  return three_triangular_memo().get(n, [n] {
    // smallest a_1 with 3 T(a_1) >= n, then smallest a_2, a_3 forced
    std::int64_t a1 = 1;
    while (3 * triangular(a1) < n) ++a1;
    for (;; ++a1) {
      const std::int64_t r1 = n - triangular(a1);
      if (r1 < 0) break;
      for (std::int64_t a2 = 1; a2 <= a1; ++a2) {
        const std::int64_t r2 = r1 - triangular(a2);
        if (r2 < 0) break;
        if (2 * triangular(a2) < r1) continue;
        if (!is_square(8 * r2 + 1)) continue;
        const std::int64_t a3 = (1 + isqrt(8 * r2 + 1)) / 2;
        if (a3 <= a2) return checked({Problem::ThreeTriangular, n, {a1, a2, a3}, std::nullopt});
      }
    }
    throw std::logic_error("three-triangular decomposition not found");
  });
}

std::optional<RepresentationWitness> fifteen_bounded_triangular(std::int64_t m, Strategy s) {
  if (m < 24) throw DomainError("fifteen bounded triangular numbers are only considered for m >= 24");
  if (s == Strategy::Auto) {
    // m = 5n + r: (5 - r) three-triangular witnesses of n and r of n + 1
    const std::int64_t n = m / 5;
    const std::int64_t r = m % 5;
    std::vector<std::int64_t> parts;
    for (std::int64_t i = 0; i < 5; ++i) {
      const auto w = three_triangular(i < 5 - r ? n : n + 1);
      parts.insert(parts.end(), w.parts.begin(), w.parts.end());
    }
    return checked({Problem::FifteenBoundedTriangular, m, sorted_desc(std::move(parts)), std::nullopt});
  }
  const std::int64_t cap = triangular_index_cap(m);
  auto table = table_for(PartValue::Triangular, cap, m);
  auto parts = table->smallest_descending(15, static_cast<int>(cap), m);
  if (!parts) return std::nullopt;
  return checked({Problem::FifteenBoundedTriangular, m, *parts, std::nullopt});
}

std::optional<RepresentationWitness> represent_eq1(std::int64_t n) {
  if (n < 1) throw ParameterError("represent_eq1 needs n >= 1");
  // sum a_i^2 <= (a_1+..+a_4)^2 + 11 a_4^2 <= 27 (a - 1)^2 / 16 bounds the useful a
  for (std::int64_t a = isqrt_ceil((n + 16) / 2); ; ++a) {
    const std::int64_t rem = 2 * a * a - n;
    // 5a^2 + 54a - 27 - 16n grows with a, so the first failure is final
    if (16 * rem > 27 * (a - 1) * (a - 1)) return std::nullopt;
    LeadSearch search{PartValue::Square, table_for(PartValue::Square, a, rem), a - 1, {}, {}};
    if (search.dfs(0, a, rem, 0)) {
      std::vector<std::int64_t> parts(search.top.begin(), search.top.end());
      parts.insert(parts.end(), search.rest.begin(), search.rest.end());
      return checked({Problem::Eq1, n, std::move(parts), a});
    }
  }
}

std::optional<RepresentationWitness> represent_eq7(std::int64_t n) {
  if (n < 1) throw ParameterError("represent_eq7 needs n >= 1");
  // sum T(a_i) <= ((a_1+..+a_4)^2 + 11 a_4^2) / 2 <= 27 (a + 1)^2 / 32
  for (std::int64_t a = isqrt_ceil(n); ; ++a) {
    const std::int64_t rem = a * a - n;
    // 5a^2 - 54a - 27 - 32n is negative up to a = 10 and grows afterwards
    if (32 * rem > 27 * (a + 1) * (a + 1)) return std::nullopt;
    LeadSearch search{PartValue::Triangular, table_for(PartValue::Triangular, a + 1, rem), a + 1, {}, {}};
    if (search.dfs(0, a + 1, rem, 0)) {
      std::vector<std::int64_t> parts(search.top.begin(), search.top.end());
      parts.insert(parts.end(), search.rest.begin(), search.rest.end());
      return checked({Problem::Eq7, n, std::move(parts), a});
    }
  }
}

std::optional<RepresentationWitness> solve(Problem p, std::int64_t n, Strategy s) {
  switch (p) {
    case Problem::FiveSquares:
      return five_positive_squares(n, s);
    case Problem::FifteenBoundedSquares:
      return fifteen_bounded_squares(n, s);
    case Problem::ThreeTriangular:
      return three_triangular(n);
    case Problem::FifteenBoundedTriangular:
      return fifteen_bounded_triangular(n, s);
    case Problem::Eq1:
      return represent_eq1(n);
    case Problem::Eq7:
      return represent_eq7(n);
  }
  return std::nullopt;
}

std::vector<std::optional<RepresentationWitness>> solve_range(Problem p, std::int64_t lo, std::int64_t hi, int jobs,
                                                              Strategy s) {
  if (lo > hi) throw ParameterError("empty range: lo > hi");
  const auto count = static_cast<std::size_t>(hi - lo + 1);
  std::vector<std::optional<RepresentationWitness>> out(count);
  constexpr std::size_t kChunk = 64;
  parallel_for((count + kChunk - 1) / kChunk, jobs, [&](std::size_t chunk) {
    const std::size_t end = std::min(count, (chunk + 1) * kChunk);
    for (std::size_t i = chunk * kChunk; i < end; ++i) {
      try {
        out[i] = solve(p, lo + static_cast<std::int64_t>(i), s);
      } catch (const DomainError&) {
        out[i] = std::nullopt;
      } catch (const ParameterError&) {
        out[i] = std::nullopt;
      }
    }
  });
  return out;
}

std::vector<std::int64_t> verify_range(Problem p, std::int64_t lo, std::int64_t hi, int jobs, Strategy s) {
  const auto results = solve_range(p, lo, hi, jobs, s);
  std::vector<std::int64_t> failures;
  for (std::size_t i = 0; i < results.size(); ++i)
    if (!results[i]) failures.push_back(lo + static_cast<std::int64_t>(i));
  return failures;
}

}  // namespace kumdeg
