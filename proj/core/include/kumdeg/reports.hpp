#pragma once

// Conformance suites over the whole library, plus the flat-file exports used
// by the command line tool.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "kumdeg/degree_enumeration.hpp"

namespace kumdeg {

enum class CheckStatus { Pass, Fail, Skipped };
std::string_view to_string(CheckStatus s);

struct ConformanceReport {
  std::string check_id;
  std::string anchor;  // the mathematical statement being checked
  CheckStatus status = CheckStatus::Skipped;
  std::vector<std::string> details;  // counterexamples on failure, witness ids otherwise
  std::int64_t runtime_ms = 0;
};

enum class Suite { Lemmas, Degrees, Ampleness, Mukai, All };
std::string_view to_string(Suite s);
std::optional<Suite> parse_suite(std::string_view name);

struct SuiteConfig {
  std::int64_t max_e = 200;
  int jobs = 0;
  std::optional<std::filesystem::path> witness_store;  // audited by the degrees suite
  std::uint64_t seed = 20240229;
  int random_classes = 200;  // per Gram matrix in the ampleness suite
};

std::vector<ConformanceReport> run_suite(Suite suite, const SuiteConfig& config = {});
bool all_passed(const std::vector<ConformanceReport>& reports);

/// {"schema": 1, "suite": ..., "reports": [...]}; include_runtime = false
/// gives output that is byte-identical across runs.
nlohmann::json reports_to_json(const std::vector<ConformanceReport>& reports, Suite suite,
                               bool include_runtime = true);

/// The expected degrees e <= 61 from the Kummer-lattice constructions, and the
/// full sporadic list once the twisted-moduli degrees are added.
const std::vector<std::int64_t>& sporadic_degrees(bool include_twisted);

/// Header "e,methods,witness_id,primitive"; one row per e, methods joined by ';'.
std::string degree_table_csv(const DegreeTable& table);
/// One JSON object per line, ordered by (e, method).
std::string witness_store_jsonl(const DegreeTable& table);
/// Records from a JSON lines store; malformed lines throw ParameterError.
std::vector<DegreeRecord> read_witness_store(const std::filesystem::path& path);

/// Throws IoError when the file cannot be written.
void write_file(const std::filesystem::path& path, std::string_view content);

}  // namespace kumdeg
