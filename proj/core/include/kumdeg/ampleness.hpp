#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "kumdeg/kummer_lattice.hpp"
#include "kumdeg/rational.hpp"

namespace kumdeg {

/// aH - sum a_i E_i with every a_i > 0 and a strictly above the sum of the
/// four largest a_i. Sufficient, not necessary.
bool sufficient_ample(const KummerClass& l);

/// The relaxed bound a > 3 for aH - sum E_i with d = 1, valid only when the
/// abelian surface has Picard group Z.H_A. The hypothesis is not checked;
/// callers take it on trust.
bool sufficient_ample_generic_picard(const KummerClass& l);

/// Neron-Severi data of the abelian surface: a Gram matrix and the
/// coordinates of H_A in that basis (H_A^2 must equal 2d).
struct AbelianNs {
  std::vector<std::vector<std::int64_t>> gram;
  std::vector<std::int64_t> h_coords;

  /// Gram [[2d]], H_A = (1).
  static AbelianNs rank_one(std::int64_t d);
  /// Product of elliptic curves: Gram [[0,1],[1,0]], H_A = (1, d).
  static AbelianNs product(std::int64_t d);

  std::size_t rank() const { return gram.size(); }
  std::int64_t dot(const std::vector<std::int64_t>& x, const std::vector<std::int64_t>& y) const;
};

/// Throws ParameterError unless the Gram matrix is square, symmetric with
/// even diagonal, and H_A^2 == 2d.
void validate(const AbelianNs& ns, std::int64_t d);

/// C = bM - sum b_i E_i with M the image of an abelian class M_A.
/// Intersection numbers on the Kummer side: M^2 = 2 M_A^2, H.M = 2 H_A.M_A.
struct CurveClassCandidate {
  std::int64_t b2 = 1;                   // 2b
  std::vector<std::int64_t> ns_coords;   // M_A over the Gram basis
  std::array<std::int64_t, kNodes> bi2{};  // 2b_i
  std::int64_t h_dot_m = 0;              // H_A . M_A
  std::int64_t m_square = 0;             // M_A^2

  friend bool operator==(const CurveClassCandidate&, const CurveClassCandidate&) = default;
};

CurveClassCandidate make_candidate(std::int64_t b2, std::vector<std::int64_t> ns_coords,
                                   const std::array<std::int64_t, kNodes>& bi2, const AbelianNs& ns);

/// C^2 on the Kummer surface (always an integer for candidates).
Rational self_intersection(const CurveClassCandidate& c);
/// L.C
Rational intersect(const KummerClass& l, const CurveClassCandidate& c);
/// H.C = b H.M
std::int64_t h_degree(const CurveClassCandidate& c);

struct SearchBounds {
  std::int64_t b2 = 8;  // 2b ranges over 1..b2
  std::int64_t m = 8;   // |coordinate of M_A| <= m
  /// false: first candidate with L.C <= 0; true: first with L.C < 0.
  bool strict = false;
};

/// Exhaustive scan of numerical (-2)-classes C with b2 <= bounds.b2 and
/// |M_A coordinates| <= bounds.m, satisfying
///   b_i >= 0,  M_A^2 >= 0,  C^2 = -2,  H.C > 0,  (H - E_i).C >= 0,
/// in the order b2 ascending, M_A lexicographic, (b_i) lexicographically
/// descending. Returns the first with L.C <= 0 (or < 0 when strict).
/// Requires L in the positive cone.
std::optional<CurveClassCandidate> find_orthogonal_violator(const KummerClass& l, const AbelianNs& ns,
                                                            const SearchBounds& bounds = {}, int jobs = 1);

/// Each step of the ampleness argument evaluated on a concrete (L, C).
struct ProofChainReport {
  bool dominance = false;           // a > a_1 + a_2 + a_3 + a_4
  bool top4_square_bound = false;   // (a_1+..+a_4)^2 >= sum a_i^2
  bool ha = false;                  // a^2 > sum a_i^2
  bool positive_cone = false;       // L^2 > (4d-2) a^2 > 0
  bool self_intersection = false;   // C^2 == -2
  bool hm = false;                  // L.C <= 0 (the hypothesis refuted by the argument)
  bool cauchy_schwarz = false;      // (sum a_i b_i)^2 <= sum a_i^2 * sum b_i^2
  bool hodge = false;               // (H.M)^2 >= H^2 M^2
  bool large_case = false;          // b^2 M^2 >= 2
  bool chain_bound = false;         // 2 >= b^2 M^2 (2a^2 d / sum a_i^2 - 1)
  Rational l_dot_c{0};

  /// Every unconditional inequality holds and L.C > 0.
  bool consistent() const { return ha && cauchy_schwarz && hodge && self_intersection && !hm; }
};

/// Requires sufficient_ample(l) (PreconditionError otherwise).
ProofChainReport check_proof_chain(const KummerClass& l, const CurveClassCandidate& c);

}  // namespace kumdeg
