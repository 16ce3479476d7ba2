#pragma once

// Mukai lattice arithmetic over a numerical model of NS(S) for a K3 or
// abelian surface S, and the ampleness bounds for D_u = theta(u l - delta)
// on the associated moduli spaces.
//
// A Mukai vector (r, D, s) pairs as (r1, D1, s1).(r2, D2, s2) = D1.D2 - r1 s2 - r2 s1.

#include <cstdint>
#include <optional>
#include <vector>

#include "kumdeg/rational.hpp"

namespace kumdeg {

using IntMatrix2 = std::vector<std::vector<std::int64_t>>;

enum class SurfaceKind { K3, Abelian };

struct NumericalSurfaceData {
  SurfaceKind kind = SurfaceKind::K3;
  std::int64_t half_degree = 1;  // H^2 = 2 * half_degree
  std::int64_t r = 1;            // order of the Brauer class
  std::int64_t a_num = 0;        // H.B0
  std::int64_t b_num = 0;        // B0^2 / 2
  IntMatrix2 ns_gram;
  std::vector<std::int64_t> h_coords;
  std::vector<std::int64_t> b0_coords;

  /// Basis <H, B0> with Gram [[2 half_degree, a], [a, 2b]]; for r = 1 the
  /// rank-one lattice Z.H.
  static NumericalSurfaceData standard(SurfaceKind kind, std::int64_t half_degree, std::int64_t r = 1,
                                       std::int64_t a_num = 0, std::int64_t b_num = 0);
  /// Caller-supplied Gram matrix; half_degree, a_num and b_num are read off it.
  static NumericalSurfaceData custom(SurfaceKind kind, IntMatrix2 gram, std::vector<std::int64_t> h_coords,
                                     std::int64_t r = 1, std::vector<std::int64_t> b0_coords = {});

  std::size_t rank() const { return ns_gram.size(); }
  std::int64_t dot(const std::vector<std::int64_t>& x, const std::vector<std::int64_t>& y) const;
};

/// Throws ParameterError on a malformed Gram matrix or inconsistent data.
void validate(const NumericalSurfaceData& data);

struct MukaiVector {
  std::int64_t rank = 0;
  std::vector<std::int64_t> ns;
  std::int64_t euler = 0;

  friend bool operator==(const MukaiVector&, const MukaiVector&) = default;
  friend auto operator<=>(const MukaiVector&, const MukaiVector&) = default;
};

MukaiVector operator+(const MukaiVector& x, const MukaiVector& y);
MukaiVector operator*(std::int64_t k, const MukaiVector& x);
MukaiVector operator-(const MukaiVector& x);

/// (0, 0, 1)
MukaiVector point_class(const NumericalSurfaceData& data);

std::int64_t mukai_pair(const MukaiVector& u, const MukaiVector& w, const NumericalSurfaceData& data);

/// gcd of every coordinate is 1.
bool is_primitive(const MukaiVector& v);

struct EllDelta {
  MukaiVector ell;
  MukaiVector delta;
  std::int64_t c = 0;  // v = (r, cH + B0, s)
};

/// l = -(0, rH, 2cd + a), delta = -(r v + v^2 w). Requires v of the shape
/// (r, cH + B0, s) with r the Brauer order (ParameterError otherwise).
EllDelta ell_delta(const MukaiVector& v, const NumericalSurfaceData& data);

/// gcd(r, 2cd + a)
std::int64_t twist_gcd(const MukaiVector& v, const NumericalSurfaceData& data);

/// r v^2 / 2; D_u is ample for u above it. Requires an abelian surface,
/// primitive v with v^2 >= 4 and twist_gcd == 1 (PreconditionError).
Rational kummer_ample_bound(const MukaiVector& v, const NumericalSurfaceData& data);

/// u > 0 and u^2 > r^2 ((v^2)^2 / 4 + 2 v^2). Requires a K3 surface and
/// twist_gcd == 1 (PreconditionError); odd or negative v^2 is a ParameterError.
bool k3_ample_bound_check(const Rational& u, const MukaiVector& v, const NumericalSurfaceData& data);

/// Whether D_infinity = theta(l) is itself ample: v^2 <= 2r - 2 (abelian)
/// or v^2 <= 2r - 4 (K3). Requires twist_gcd == 1.
bool dinfty_ample(const MukaiVector& v, const NumericalSurfaceData& data);

struct PolarizationInfo {
  bool ample = false;
  std::int64_t degree = 0;
  std::int64_t divisibility = 0;

  friend bool operator==(const PolarizationInfo&, const PolarizationInfo&) = default;
};

/// a theta - b delta on Hilb^n of a K3 of degree 2e.
PolarizationInfo hilb_polarization(std::int64_t n, std::int64_t e, std::int64_t a, std::int64_t b);
/// a theta - b delta on Kum_n of an abelian surface of type (1, d).
PolarizationInfo kummer_polarization(std::int64_t n, std::int64_t d, std::int64_t a, std::int64_t b);

struct TwistedInstance {
  std::int64_t d = 0;
  std::int64_t r = 0;
  std::int64_t v_square = 0;
  std::int64_t gcd = 0;
  bool dinfty_ample = false;
  std::int64_t e = 0;  // D_infinity^2 = 2e
};

/// Abelian surface of type (1, d) with a twist of order r and (c, s, a, b) =
/// (0, 0, 1, 2): v = (r, B0, 0). Requires v^2 == 4 (ParameterError).
TwistedInstance twisted_k3_degree(std::int64_t d, std::int64_t r);

/// (d, r) in {(1,3), (1,4), (2,3), (1,5), (3,3)}.
std::vector<TwistedInstance> twisted_k3_batch();
std::vector<std::int64_t> twisted_k3_degrees();

/// Degree r^2 e of the pulled-back polarization on the moduli space.
std::int64_t mukai_generalized_degree(std::int64_t e, std::int64_t r);

struct WallBounds {
  std::int64_t rank = 4;
  std::int64_t ns = 6;
  std::int64_t euler = 12;
};

struct WallSearchResult {
  Rational max_ratio{0};
  std::optional<MukaiVector> witness;  // normalized so that (a, l) > 0
  std::size_t candidates = 0;
  /// (a, delta)^2 = v^2 Dt^2 + r^2 ((a, v)^2 - v^2 a^2) on every candidate,
  /// Dt = rD - alpha (cH + B0).
  bool identity_holds = true;
};

/// Maximum of |(a, delta)| / |(a, l)| over a = (alpha, D, beta) in the box,
/// with a^2 >= 0 (abelian) or >= -2 (K3), 1 <= (a, v) <= v^2 / 2 and
/// (a, l) != 0. Ties go to the lexicographically smallest normalized witness.
WallSearchResult wall_search(const MukaiVector& v, const NumericalSurfaceData& data, const WallBounds& bounds = {},
                             int jobs = 1);

}  // namespace kumdeg
