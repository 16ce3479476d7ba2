#include "kumdeg/mukai.hpp"

#include <numeric>
#include <stdexcept>

#include "kumdeg/errors.hpp"
#include "kumdeg/parallel.hpp"

namespace kumdeg {

NumericalSurfaceData NumericalSurfaceData::standard(SurfaceKind kind, std::int64_t half_degree, std::int64_t r,
                                                    std::int64_t a_num, std::int64_t b_num) {
  NumericalSurfaceData data;
  data.kind = kind;
  data.half_degree = half_degree;
  data.r = r;
  data.a_num = a_num;
  data.b_num = b_num;
  if (r == 1) {
    if (a_num != 0 || b_num != 0) throw ParameterError("an untwisted surface has a = b = 0");
    data.ns_gram = {{2 * half_degree}};
    data.h_coords = {1};
    data.b0_coords = {0};
  } else {
    data.ns_gram = {{2 * half_degree, a_num}, {a_num, 2 * b_num}};
    data.h_coords = {1, 0};
    data.b0_coords = {0, 1};
  }
  validate(data);
  return data;
}

NumericalSurfaceData NumericalSurfaceData::custom(SurfaceKind kind, IntMatrix2 gram, std::vector<std::int64_t> h_coords,
                                                  std::int64_t r, std::vector<std::int64_t> b0_coords) {
  NumericalSurfaceData data;
  data.kind = kind;
  data.r = r;
  data.ns_gram = std::move(gram);
  if (b0_coords.empty()) b0_coords.assign(data.ns_gram.size(), 0);
  data.h_coords = std::move(h_coords);
  data.b0_coords = std::move(b0_coords);
  if (data.h_coords.size() != data.ns_gram.size() || data.b0_coords.size() != data.ns_gram.size())
    throw ParameterError("H and B0 coordinates must match the Gram rank");
  data.half_degree = data.dot(data.h_coords, data.h_coords) / 2;
  data.a_num = data.dot(data.h_coords, data.b0_coords);
  data.b_num = data.dot(data.b0_coords, data.b0_coords) / 2;
  validate(data);
  return data;
}

std::int64_t NumericalSurfaceData::dot(const std::vector<std::int64_t>& x, const std::vector<std::int64_t>& y) const {
  if (x.size() != ns_gram.size() || y.size() != ns_gram.size())
    throw ParameterError("NS coordinates do not match the Gram rank");
  std::int64_t s = 0;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j) s += x[i] * ns_gram[i][j] * y[j];
  return s;
}

void validate(const NumericalSurfaceData& data) {
  const std::size_t n = data.ns_gram.size();
  if (n == 0) throw ParameterError("empty Gram matrix");
  for (std::size_t i = 0; i < n; ++i) {
    if (data.ns_gram[i].size() != n) throw ParameterError("Gram matrix must be square");
    if (data.ns_gram[i][i] % 2 != 0) throw ParameterError("Gram matrix must have even diagonal");
    for (std::size_t j = 0; j < i; ++j)
      if (data.ns_gram[i][j] != data.ns_gram[j][i]) throw ParameterError("Gram matrix must be symmetric");
  }
  if (data.r < 1) throw ParameterError("Brauer order r must be positive");
  if (data.half_degree < 1) throw ParameterError("H^2 must be positive");
  if (data.h_coords.size() != n || data.b0_coords.size() != n)
    throw ParameterError("H and B0 coordinates must match the Gram rank");
  if (data.dot(data.h_coords, data.h_coords) != 2 * data.half_degree)
    throw ParameterError("H^2 does not match the half degree");
  if (data.dot(data.h_coords, data.b0_coords) != data.a_num) throw ParameterError("H.B0 does not match a");
  if (data.dot(data.b0_coords, data.b0_coords) != 2 * data.b_num) throw ParameterError("B0^2 does not match 2b");
}

MukaiVector operator+(const MukaiVector& x, const MukaiVector& y) {
  if (x.ns.size() != y.ns.size()) throw ParameterError("Mukai vectors of different NS rank");
  MukaiVector out{x.rank + y.rank, x.ns, x.euler + y.euler};
  for (std::size_t i = 0; i < out.ns.size(); ++i) out.ns[i] += y.ns[i];
  return out;
}

MukaiVector operator*(std::int64_t k, const MukaiVector& x) {
  MukaiVector out{k * x.rank, x.ns, k * x.euler};
  for (auto& c : out.ns) c *= k;
  return out;
}

MukaiVector operator-(const MukaiVector& x) { return -1 * x; }

MukaiVector point_class(const NumericalSurfaceData& data) { return {0, std::vector<std::int64_t>(data.rank(), 0), 1}; }

std::int64_t mukai_pair(const MukaiVector& u, const MukaiVector& w, const NumericalSurfaceData& data) {
  if (u.ns.size() != data.rank() || w.ns.size() != data.rank())
    throw ParameterError("Mukai vector does not match the NS rank");
  return data.dot(u.ns, w.ns) - u.rank * w.euler - w.rank * u.euler;
}

bool is_primitive(const MukaiVector& v) {
  std::int64_t g = std::gcd(v.rank, v.euler);
  for (auto c : v.ns) g = std::gcd(g, c);
  return g == 1;
}

namespace {

std::int64_t shape_c(const MukaiVector& v, const NumericalSurfaceData& data) {
  if (v.ns.size() != data.rank()) throw ParameterError("Mukai vector does not match the NS rank");
  if (v.rank != data.r) throw ParameterError("v must have rank equal to the Brauer order r");
  std::optional<std::int64_t> c;
  for (std::size_t i = 0; i < v.ns.size(); ++i) {
    const std::int64_t diff = v.ns[i] - data.b0_coords[i];
    const std::int64_t h = data.h_coords[i];
    if (h == 0) {
      if (diff != 0) throw ParameterError("NS part of v is not of the form cH + B0");
      continue;
    }
    if (diff % h != 0) throw ParameterError("NS part of v is not of the form cH + B0");
    if (c && *c != diff / h) throw ParameterError("NS part of v is not of the form cH + B0");
    c = diff / h;
  }
  return c.value_or(0);
}

void require_gcd_one(const MukaiVector& v, const NumericalSurfaceData& data) {
  if (twist_gcd(v, data) != 1) throw PreconditionError("gcd(r, 2cd + a) must be 1");
}

}  // namespace

EllDelta ell_delta(const MukaiVector& v, const NumericalSurfaceData& data) {
  validate(data);
  EllDelta out;
  out.c = shape_c(v, data);
  const std::int64_t r = data.r;
  out.ell = -MukaiVector{0, (r * MukaiVector{0, data.h_coords, 0}).ns, 2 * out.c * data.half_degree + data.a_num};
  const std::int64_t v2 = mukai_pair(v, v, data);
  out.delta = -(r * v + v2 * point_class(data));
  if (mukai_pair(v, out.ell, data) != 0 || mukai_pair(v, out.delta, data) != 0)
    throw std::logic_error("l or delta failed to be orthogonal to v");
  return out;
}

std::int64_t twist_gcd(const MukaiVector& v, const NumericalSurfaceData& data) {
  const std::int64_t c = shape_c(v, data);
  return std::gcd(data.r, 2 * c * data.half_degree + data.a_num);
}

Rational kummer_ample_bound(const MukaiVector& v, const NumericalSurfaceData& data) {
  validate(data);
  if (data.kind != SurfaceKind::Abelian) throw PreconditionError("the Kummer bound needs an abelian surface");
  if (!is_primitive(v)) throw PreconditionError("v must be primitive");
  const std::int64_t v2 = mukai_pair(v, v, data);
  if (v2 < 4) throw PreconditionError("the Kummer bound needs v^2 >= 4");
  require_gcd_one(v, data);
  return Rational(data.r * v2, 2);
}

bool k3_ample_bound_check(const Rational& u, const MukaiVector& v, const NumericalSurfaceData& data) {
  validate(data);
  if (data.kind != SurfaceKind::K3) throw PreconditionError("the K3 bound needs a K3 surface");
  const std::int64_t v2 = mukai_pair(v, v, data);
  if (v2 < 0 || v2 % 2 != 0) throw ParameterError("v^2 must be even and nonnegative");
  require_gcd_one(v, data);
  if (u <= Rational(0)) return false;
  // (v^2)^2 / 4 is an integer because v^2 is even
  const std::int64_t bound_sq = data.r * data.r * ((v2 / 2) * (v2 / 2) + 2 * v2);
  return u * u > Rational(bound_sq);
}

bool dinfty_ample(const MukaiVector& v, const NumericalSurfaceData& data) {
  validate(data);
  require_gcd_one(v, data);
  const std::int64_t v2 = mukai_pair(v, v, data);
  return data.kind == SurfaceKind::Abelian ? v2 <= 2 * data.r - 2 : v2 <= 2 * data.r - 4;
}

PolarizationInfo hilb_polarization(std::int64_t n, std::int64_t e, std::int64_t a, std::int64_t b) {
  if (n < 2) throw ParameterError("Hilbert schemes need n >= 2");
  if (a < 1 || b < 1) throw ParameterError("a and b must be positive");
  const std::int64_t m = n - 1;
  return {a * a > b * b * (m * m + 4 * m), 2 * e * a * a - 2 * b * b * m, std::gcd(a, 2 * m)};
}

PolarizationInfo kummer_polarization(std::int64_t n, std::int64_t d, std::int64_t a, std::int64_t b) {
  if (n < 2) throw ParameterError("generalized Kummer varieties need n >= 2");
  if (a < 1 || b < 1) throw ParameterError("a and b must be positive");
  return {a > b * (n + 1), 2 * d * a * a - 2 * b * b * (n + 1), std::gcd(a, 2 * (n + 1))};
}

TwistedInstance twisted_k3_degree(std::int64_t d, std::int64_t r) {
  if (d < 1 || r < 2) throw ParameterError("twisted example needs d >= 1 and r >= 2");
  const auto data = NumericalSurfaceData::standard(SurfaceKind::Abelian, d, r, 1, 2);
  const MukaiVector v{r, data.b0_coords, 0};
  TwistedInstance out;
  out.d = d;
  out.r = r;
  out.v_square = mukai_pair(v, v, data);
  if (out.v_square != 4) throw ParameterError("twisted example needs v^2 = 4");
  out.gcd = twist_gcd(v, data);
  if (out.gcd != 1) throw ParameterError("twisted example needs gcd(r, 2cd + a) = 1");
  out.dinfty_ample = dinfty_ample(v, data);
  if (!out.dinfty_ample) throw ParameterError("D_infinity is not ample for these parameters");
  // v^2 = 4 on an abelian surface: the morphism scales pairings by 2, so
  // D_infinity^2 = 2 (l, l)
  const auto ed = ell_delta(v, data);
  out.e = mukai_pair(ed.ell, ed.ell, data);
  return out;
}

std::vector<TwistedInstance> twisted_k3_batch() {
  std::vector<TwistedInstance> out;
  for (auto [d, r] : {std::pair{1, 3}, {1, 4}, {2, 3}, {1, 5}, {3, 3}}) out.push_back(twisted_k3_degree(d, r));
  return out;
}

std::vector<std::int64_t> twisted_k3_degrees() {
  std::vector<std::int64_t> out;
  for (const auto& t : twisted_k3_batch()) out.push_back(t.e);
  return out;
}

std::int64_t mukai_generalized_degree(std::int64_t e, std::int64_t r) {
  if (e < 1 || r < 1) throw ParameterError("e and r must be positive");
  return r * r * e;
}

namespace {

struct WallBest {
  Rational ratio{0};
  std::optional<MukaiVector> witness;
  std::size_t candidates = 0;
  bool identity_holds = true;

  void offer(const Rational& q, MukaiVector a) {
    if (!witness || q > ratio || (q == ratio && a < *witness)) {
      ratio = q;
      witness = std::move(a);
    }
  }
};

bool next_box(std::vector<std::int64_t>& x, std::int64_t m) {
  for (std::size_t i = x.size(); i-- > 0;) {
    if (x[i] < m) {
      ++x[i];
      return true;
    }
    x[i] = -m;
  }
  return false;
}

}  // namespace

WallSearchResult wall_search(const MukaiVector& v, const NumericalSurfaceData& data, const WallBounds& bounds,
                             int jobs) {
  validate(data);
  if (bounds.rank < 0 || bounds.ns < 0 || bounds.euler < 0) throw ParameterError("wall bounds must be nonnegative");
  const auto ed = ell_delta(v, data);
  const std::int64_t v2 = mukai_pair(v, v, data);
  const std::int64_t r = data.r;
  const std::int64_t min_square = data.kind == SurfaceKind::Abelian ? 0 : -2;
  std::vector<std::int64_t> b_prime(data.rank());  // cH + B0
  for (std::size_t i = 0; i < b_prime.size(); ++i) b_prime[i] = ed.c * data.h_coords[i] + data.b0_coords[i];

  const auto span = static_cast<std::size_t>(2 * bounds.rank + 1);
  std::vector<WallBest> parts(span);
  parallel_for(span, jobs, [&](std::size_t task) {
    WallBest& best = parts[task];
    const std::int64_t alpha = static_cast<std::int64_t>(task) - bounds.rank;
    std::vector<std::int64_t> d(data.rank(), -bounds.ns);
    do {
      const std::int64_t d2 = data.dot(d, d);
      std::vector<std::int64_t> dt(d.size());
      for (std::size_t i = 0; i < d.size(); ++i) dt[i] = r * d[i] - alpha * b_prime[i];
      const std::int64_t dt2 = data.dot(dt, dt);
      for (std::int64_t beta = -bounds.euler; beta <= bounds.euler; ++beta) {
        MukaiVector a{alpha, d, beta};
        if (d2 - 2 * alpha * beta < min_square) continue;
        const std::int64_t av = mukai_pair(a, v, data);
        if (av < 1 || 2 * av > v2) continue;
        std::int64_t al = mukai_pair(a, ed.ell, data);
        if (al == 0) continue;
        std::int64_t ad = mukai_pair(a, ed.delta, data);
        ++best.candidates;
        const std::int64_t a2 = d2 - 2 * alpha * beta;
        if (ad * ad != v2 * dt2 + r * r * (av * av - v2 * a2)) best.identity_holds = false;
        if (al < 0) {
          a = -a;
          al = -al;
          ad = -ad;
        }
        best.offer(Rational(ad < 0 ? -ad : ad, al), std::move(a));
      }
    } while (next_box(d, bounds.ns));
  });

  WallBest total;
  for (auto& p : parts) {
    total.candidates += p.candidates;
    total.identity_holds = total.identity_holds && p.identity_holds;
    if (p.witness) total.offer(p.ratio, *p.witness);
  }
  WallSearchResult out;
  out.candidates = total.candidates;
  out.identity_holds = total.identity_holds;
  if (total.witness) {
    out.max_ratio = total.ratio;
    out.witness = total.witness;
  }
  return out;
}

}  // namespace kumdeg
