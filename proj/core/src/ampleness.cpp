#include "kumdeg/ampleness.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <numeric>

#include "kumdeg/errors.hpp"
#include "kumdeg/parallel.hpp"

namespace kumdeg {

namespace {

__extension__ using Wide = __int128;

std::array<std::int64_t, kNodes> sorted_desc(const std::array<std::int64_t, kNodes>& v) {
  auto out = v;
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

std::int64_t top4(const std::array<std::int64_t, kNodes>& sorted) {
  return sorted[0] + sorted[1] + sorted[2] + sorted[3];
}

std::int64_t sum_squares(const std::array<std::int64_t, kNodes>& v) {
  std::int64_t s = 0;
  for (auto x : v) s += x * x;
  return s;
}

}  // namespace

bool sufficient_ample(const KummerClass& l) {
  const auto e = sorted_desc(l.e2);
  if (e.back() <= 0) return false;
  return l.h2 > top4(e);
}

bool sufficient_ample_generic_picard(const KummerClass& l) {
  if (l.d != 1) throw ParameterError("generic Picard bound is stated for d = 1");
  for (auto x : l.e2)
    if (x != 2) throw ParameterError("generic Picard bound needs a class of the shape aH - sum E_i");
  return l.h2 > 6;
}

AbelianNs AbelianNs::rank_one(std::int64_t d) { return {{{2 * d}}, {1}}; }

AbelianNs AbelianNs::product(std::int64_t d) { return {{{0, 1}, {1, 0}}, {1, d}}; }

std::int64_t AbelianNs::dot(const std::vector<std::int64_t>& x, const std::vector<std::int64_t>& y) const {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < gram.size(); ++i)
    for (std::size_t j = 0; j < gram.size(); ++j) s += x[i] * gram[i][j] * y[j];
  return s;
}

void validate(const AbelianNs& ns, std::int64_t d) {
  const std::size_t n = ns.gram.size();
  if (n == 0) throw ParameterError("empty Gram matrix");
  for (std::size_t i = 0; i < n; ++i) {
    if (ns.gram[i].size() != n) throw ParameterError("Gram matrix must be square");
    if (ns.gram[i][i] % 2 != 0) throw ParameterError("Gram matrix must have even diagonal");
    for (std::size_t j = 0; j < i; ++j)
      if (ns.gram[i][j] != ns.gram[j][i]) throw ParameterError("Gram matrix must be symmetric");
  }
  if (ns.h_coords.size() != n) throw ParameterError("H_A coordinates do not match the Gram rank");
  if (ns.dot(ns.h_coords, ns.h_coords) != 2 * d) throw ParameterError("H_A^2 must equal 2d");
}

CurveClassCandidate make_candidate(std::int64_t b2, std::vector<std::int64_t> ns_coords,
                                   const std::array<std::int64_t, kNodes>& bi2, const AbelianNs& ns) {
  if (ns_coords.size() != ns.rank()) throw ParameterError("M_A coordinates do not match the Gram rank");
  CurveClassCandidate c;
  c.b2 = b2;
  c.h_dot_m = ns.dot(ns.h_coords, ns_coords);
  c.m_square = ns.dot(ns_coords, ns_coords);
  c.ns_coords = std::move(ns_coords);
  c.bi2 = bi2;
  return c;
}

Rational self_intersection(const CurveClassCandidate& c) {
  // b^2 M^2 - 2 sum b_i^2 = (b2^2 M_A^2 - sum bi2^2) / 2
  return Rational(c.b2 * c.b2 * c.m_square - sum_squares(c.bi2), 2);
}

Rational intersect(const KummerClass& l, const CurveClassCandidate& c) {
  // a b H.M - 2 sum a_i b_i = (h2 b2 hm - sum e2 bi2) / 2
  std::int64_t nodes = 0;
  for (std::size_t i = 0; i < kNodes; ++i) nodes += l.e2[i] * c.bi2[i];
  return Rational(l.h2 * c.b2 * c.h_dot_m - nodes, 2);
}

std::int64_t h_degree(const CurveClassCandidate& c) { return c.b2 * c.h_dot_m; }

namespace {

struct ViolatorScan {
  const KummerClass& l;
  std::int64_t b2;
  std::int64_t hm;
  std::int64_t target;  // need sum e2_i bi2_i >= target (or > when strict)
  bool strict;
  std::int64_t max_part;  // (H - E_i).C >= 0  <=>  bi2_i <= b2 * hm
  std::array<std::int64_t, kNodes + 1> tail_weight{};  // sum of e2^2 over positions >= i
  std::array<std::int64_t, kNodes> current{};

  bool hits(std::int64_t value) const { return strict ? value > target : value >= target; }

  // Descending lexicographic DFS over bi2 with sum of squares `rest`.
  bool dfs(std::size_t pos, std::int64_t rest, std::int64_t acc) {
    if (pos == kNodes) return rest == 0 && hits(acc);
    // Cauchy-Schwarz cap on what the remaining positions can add.
    const std::int64_t need = target - acc + (strict ? 1 : 0);
    if (need > 0) {
      const Wide lhs = static_cast<Wide>(need) * need;
      const Wide rhs = static_cast<Wide>(rest) * tail_weight[pos];
      if (lhs > rhs) return false;
    }
    if (pos == kNodes - 1) {
      if (!is_square(rest)) return false;
      const std::int64_t x = isqrt(rest);
      if (x > max_part) return false;
      current[pos] = x;
      return hits(acc + l.e2[pos] * x);
    }
    for (std::int64_t x = std::min(isqrt(rest), max_part); x >= 0; --x) {
      current[pos] = x;
      if (dfs(pos + 1, rest - x * x, acc + l.e2[pos] * x)) return true;
    }
    current[pos] = 0;
    return false;
  }
};

// Lexicographic successor of coordinates in [-m, m]^rank; false at the end.
bool next_coords(std::vector<std::int64_t>& x, std::int64_t m, std::size_t from) {
  for (std::size_t i = x.size(); i-- > from;) {
    if (x[i] < m) {
      ++x[i];
      return true;
    }
    x[i] = -m;
  }
  return false;
}

}  // namespace

std::optional<CurveClassCandidate> find_orthogonal_violator(const KummerClass& l, const AbelianNs& ns,
                                                            const SearchBounds& bounds, int jobs) {
  validate(l);
  validate(ns, l.d);
  if (bounds.b2 < 1 || bounds.m < 0) throw ParameterError("search bounds must be positive");
  if (l.h2 <= 0 || pair_doubled(l, l) <= 0) throw PreconditionError("L must lie in the positive cone");

  const std::size_t rank = ns.rank();
  const auto span = static_cast<std::size_t>(2 * bounds.m + 1);
  // Task = (b2, first coordinate of M_A); scanned in enumeration order.
  const std::size_t tasks = static_cast<std::size_t>(bounds.b2) * span;
  std::vector<std::optional<CurveClassCandidate>> found(tasks);
  std::atomic<std::size_t> first_hit{tasks};

  std::array<std::int64_t, kNodes + 1> tail{};
  for (std::size_t i = kNodes; i-- > 0;) tail[i] = tail[i + 1] + l.e2[i] * l.e2[i];

  parallel_for(tasks, jobs, [&](std::size_t task) {
    if (task > first_hit.load()) return;
    const std::int64_t b2 = static_cast<std::int64_t>(task / span) + 1;
    std::vector<std::int64_t> m(rank, -bounds.m);
    m[0] = static_cast<std::int64_t>(task % span) - bounds.m;
    do {
      const std::int64_t hm = ns.dot(ns.h_coords, m);
      if (hm <= 0) continue;
      const std::int64_t msq = ns.dot(m, m);
      if (msq < 0) continue;
      // C^2 = -2  <=>  sum bi2^2 = b2^2 M_A^2 + 4
      const std::int64_t squares = b2 * b2 * msq + 4;
      ViolatorScan scan{l, b2, hm, l.h2 * b2 * hm, bounds.strict, b2 * hm, tail, {}};
      if (scan.dfs(0, squares, 0)) {
        CurveClassCandidate c;
        c.b2 = b2;
        c.ns_coords = m;
        c.bi2 = scan.current;
        c.h_dot_m = hm;
        c.m_square = msq;
        found[task] = std::move(c);
        std::size_t seen = first_hit.load();
        while (task < seen && !first_hit.compare_exchange_weak(seen, task)) {
        }
        return;
      }
    } while (next_coords(m, bounds.m, 1));
  });

  for (auto& c : found)
    if (c) return c;
  return std::nullopt;
}

ProofChainReport check_proof_chain(const KummerClass& l, const CurveClassCandidate& c) {
  if (!sufficient_ample(l)) throw PreconditionError("proof chain is only defined for criterion-passing classes");
  ProofChainReport r;
  const auto e = sorted_desc(l.e2);
  const std::int64_t t4 = top4(e);
  const std::int64_t ai2 = sum_squares(l.e2);  // 4 sum a_i^2
  const std::int64_t bi2 = sum_squares(c.bi2);  // 4 sum b_i^2
  std::int64_t ab = 0;                          // 4 sum a_i b_i
  for (std::size_t i = 0; i < kNodes; ++i) ab += l.e2[i] * c.bi2[i];

  r.dominance = l.h2 > t4;
  r.top4_square_bound = t4 * t4 >= ai2;
  r.ha = l.h2 * l.h2 > ai2;
  // L^2 = d h2^2 - ai2/2 and (4d-2) a^2 = (4d-2) h2^2 / 4; compare times 4
  const std::int64_t l2_times4 = 4 * l.d * l.h2 * l.h2 - 2 * ai2;
  r.positive_cone = l2_times4 > (4 * l.d - 2) * l.h2 * l.h2 && (4 * l.d - 2) * l.h2 * l.h2 > 0;
  r.self_intersection = self_intersection(c) == Rational(-2);
  r.l_dot_c = intersect(l, c);
  r.hm = r.l_dot_c <= Rational(0);
  r.cauchy_schwarz = ab * ab <= ai2 * bi2;
  // (H.M)^2 = 4 hm^2,  H^2 M^2 = 4d * 2 M_A^2
  r.hodge = c.h_dot_m * c.h_dot_m >= 2 * l.d * c.m_square;
  // b^2 M^2 = b2^2 M_A^2 / 2
  r.large_case = c.b2 * c.b2 * c.m_square >= 4;
  // 2 >= b^2 M^2 (2 a^2 d / sum a_i^2 - 1), cleared of denominators (times 8 sum a_i^2)
  r.chain_bound = 4 * ai2 >= c.b2 * c.b2 * c.m_square * (2 * l.d * l.h2 * l.h2 - ai2);
  return r;
}

}  // namespace kumdeg
