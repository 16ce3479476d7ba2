#pragma once

// Polarization degrees 2e = L^2 realized by ample primitive classes L on a
// Kummer surface, organized by construction:
//
//   EQ1              aH - sum_1^15 a_i E_i - E_16            (from Eq1 at n = e + 1)
//   EQ7              aH - sum_1^15 (a_i - 1/2) E_i - E_16/2  (from Eq7 at n = e/2 + 2)
//   HALF8            aH - sum_1^15 a_i E_i - E_16/2, seven a_i half-integral
//   TROPE            (a + 1/2)H - sum_1^15 a_i E_i - E_16/2, five a_i half-integral
//   RATIONAL_FAMILY  aH - (c/2) sum E_i, e = 2a^2 - 4c^2
//   TWISTED_MODULI   degrees coming from moduli of sheaves on twisted abelian surfaces

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "kumdeg/kummer_lattice.hpp"

namespace kumdeg {

enum class Method { EQ1, EQ7, HALF8, TROPE, RATIONAL_FAMILY, TWISTED_MODULI };

std::string_view to_string(Method m);
/// Accepts "EQ1", "eq1", "half8", "rational-family", ...
std::optional<Method> parse_method(std::string_view name);
const std::vector<Method>& all_methods();

struct DegreeRecord {
  std::int64_t e = 0;
  Method method = Method::EQ1;
  std::optional<KummerClass> witness;  // absent for TWISTED_MODULI
  IntegralityGenerators generators;
  std::map<std::string, std::int64_t> params;
  bool primitive = false;

  friend bool operator==(const DegreeRecord&, const DegreeRecord&) = default;
};

/// "<METHOD>-<e>", e.g. "EQ7-14".
std::string witness_id(const DegreeRecord& r);

/// Re-derives every record invariant from scratch: L^2 = 2e, the ampleness
/// criterion, integrality and the primitive flag (TWISTED_MODULI: the
/// degree formula). On failure the reason goes to *why.
bool audit_record(const DegreeRecord& r, std::string* why = nullptr);

struct MethodResult {
  std::vector<DegreeRecord> records;  // sorted by e (then by a in verbose mode)
  std::int64_t a_limit = 0;           // 0 when the method has no search over a
  std::int64_t last_productive_a = 0;
  /// No records among the last ten values of a.
  bool guard_ok() const { return a_limit == 0 || last_productive_a + 10 <= a_limit; }

  std::set<std::int64_t> degrees() const;
};

struct EnumerationOptions {
  std::int64_t d = 1;
  bool verbose = false;  // every (e, a) pair instead of the smallest a per e
  int jobs = 0;
};

std::optional<DegreeRecord> degrees_eq1(std::int64_t e);
/// Odd e throws DomainError.
std::optional<DegreeRecord> degrees_eq7(std::int64_t e);

MethodResult degrees_eq1_upto(std::int64_t max_e, int jobs = 0);
MethodResult degrees_eq7_upto(std::int64_t max_e, int jobs = 0);
MethodResult degrees_half8(std::int64_t max_e, const EnumerationOptions& opts = {});
/// Requires odd d.
MethodResult degrees_trope(std::int64_t max_e, const EnumerationOptions& opts = {});
MethodResult rational_family_degrees(std::int64_t max_e, bool verbose = false);
MethodResult twisted_moduli_degrees(std::int64_t max_e);

struct DegreeTable {
  std::map<std::int64_t, std::vector<DegreeRecord>> by_e;
  std::map<Method, MethodResult> per_method;

  std::set<std::int64_t> degrees() const;
  std::vector<Method> methods(std::int64_t e) const;
  bool guard_ok() const;
};

struct TableOptions {
  std::vector<Method> methods;  // empty means all
  bool include_twisted = true;
  bool verbose = false;
  std::int64_t d = 1;
  int jobs = 0;
};

DegreeTable enumerate_degrees(std::int64_t max_e, const TableOptions& opts = {});

/// enumerate_degrees over every method; requires max_e >= 62.
DegreeTable theorem_main_set(std::int64_t max_e, bool include_twisted = true, int jobs = 0);

}  // namespace kumdeg
