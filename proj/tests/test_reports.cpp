#include <filesystem>
#include <fstream>
#include <sstream>

#include <doctest.h>

#include "kumdeg/errors.hpp"
#include "kumdeg/reports.hpp"
#include "kumdeg/serialization.hpp"

using namespace kumdeg;
using nlohmann::json;

namespace {

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "kumdeg-tests";
  std::filesystem::create_directories(dir);
  return dir / name;
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

const ConformanceReport& find(const std::vector<ConformanceReport>& reports, const std::string& id) {
  for (const auto& r : reports)
    if (r.check_id == id) return r;
  throw std::runtime_error("no report " + id);
}

}  // namespace

TEST_CASE("JSON round trips") {
  KummerClass l = KummerClass::uniform(1, 7, 1);
  l.e2[3] = 5;
  CHECK(json(l).get<KummerClass>() == l);
  const auto gens = IntegralityGenerators::defaults(3);
  CHECK(json(gens).get<IntegralityGenerators>() == gens);
  const MukaiVector v{2, {1, -3}, 5};
  CHECK(json(v).get<MukaiVector>() == v);
  const auto w = *represent_eq1(300);
  CHECK(json(w).get<RepresentationWitness>() == w);
  for (const Rational& q : {Rational(0), Rational(-7, 3), Rational(12)})
    CHECK(rational_from_json(rational_to_json(q)) == q);
  CHECK(rational_to_json(Rational(6, 4)) == json{{"num", 3}, {"den", 2}});

  const auto table = theorem_main_set(80);
  for (const auto& [e, recs] : table.by_e)
    for (const auto& r : recs) {
      const json j = r;
      CHECK(j.at("schema") == kSchemaVersion);
      CHECK(j.at("id") == witness_id(r));
      CHECK(j.get<DegreeRecord>() == r);
    }
}

TEST_CASE("CSV export") {
  const DegreeTable empty;
  CHECK(degree_table_csv(empty) == "e,methods,witness_id,primitive\n");

  const auto table = theorem_main_set(100, false);
  const auto rows = lines(degree_table_csv(table));
  REQUIRE(rows.size() > 1);
  CHECK(rows.front() == "e,methods,witness_id,primitive");
  std::vector<std::int64_t> es;
  for (std::size_t i = 1; i < rows.size(); ++i) es.push_back(std::stoll(rows[i].substr(0, rows[i].find(','))));
  CHECK(std::is_sorted(es.begin(), es.end()));
  std::vector<std::int64_t> below(es.begin(), std::lower_bound(es.begin(), es.end(), 62));
  std::vector<std::int64_t> above(std::lower_bound(es.begin(), es.end(), 62), es.end());
  CHECK(above.size() == 39);
  CHECK(below.size() == 20);
  CHECK(below == sporadic_degrees(false));
  CHECK(rows[1].rfind("14,", 0) == 0);
  CHECK(rows[1].find("EQ7-14") != std::string::npos);
}

TEST_CASE("witness store round trip and audit") {
  const auto table = theorem_main_set(120);
  const auto path = scratch("store.jsonl");
  write_file(path, witness_store_jsonl(table));
  const auto records = read_witness_store(path);
  std::size_t total = 0;
  for (const auto& [e, recs] : table.by_e) total += recs.size();
  CHECK(records.size() == total);
  for (const auto& r : records) CHECK(audit_record(r));

  SuiteConfig cfg;
  cfg.max_e = 120;
  cfg.witness_store = path;
  CHECK(find(run_suite(Suite::Degrees, cfg), "degrees.witness-store").status == CheckStatus::Pass);
}

TEST_CASE("a corrupted witness store fails with a counterexample") {
  const auto table = theorem_main_set(120);
  auto store = lines(witness_store_jsonl(table));
  json first = json::parse(store.front());
  first["e"] = first["e"].get<std::int64_t>() + 1;
  store.front() = first.dump();
  std::string text;
  for (const auto& l : store) text += l + '\n';
  const auto path = scratch("corrupt.jsonl");
  write_file(path, text);

  SuiteConfig cfg;
  cfg.max_e = 120;
  cfg.witness_store = path;
  const auto reports = run_suite(Suite::All, cfg);
  CHECK_FALSE(all_passed(reports));
  const auto& r = find(reports, "degrees.witness-store");
  CHECK(r.status == CheckStatus::Fail);
  REQUIRE_FALSE(r.details.empty());
  CHECK(r.details.front().find(first.at("method").get<std::string>()) != std::string::npos);

  write_file(path, "{not json}\n");
  CHECK_THROWS_AS(read_witness_store(path), ParameterError);
  CHECK(find(run_suite(Suite::Degrees, cfg), "degrees.witness-store").status == CheckStatus::Fail);
  CHECK_THROWS_AS(read_witness_store(scratch("missing.jsonl")), IoError);
}

TEST_CASE("unwritable paths raise I/O errors") {
  CHECK_THROWS_AS(write_file("/nonexistent-dir/sub/file.csv", "x"), IoError);
}

TEST_CASE("suite names") {
  CHECK(parse_suite("lemmas") == Suite::Lemmas);
  CHECK(parse_suite("all") == Suite::All);
  CHECK_FALSE(parse_suite("everything").has_value());
}

TEST_CASE("lemma suite passes") {
  const auto reports = run_suite(Suite::Lemmas);
  for (const auto& r : reports) CHECK_MESSAGE(r.status == CheckStatus::Pass, r.check_id);
}

TEST_CASE("degree suite reproduces the sporadic list at max_e = 200") {
  SuiteConfig cfg;
  cfg.max_e = 200;
  const auto reports = run_suite(Suite::Degrees, cfg);
  CHECK(find(reports, "degrees.sporadic-list").status == CheckStatus::Pass);
  CHECK(find(reports, "degrees.coverage").status == CheckStatus::Pass);
  CHECK(find(reports, "degrees.witness-audit").status == CheckStatus::Pass);
  CHECK(find(reports, "degrees.enumeration-guard").status == CheckStatus::Pass);
}

TEST_CASE("ampleness and Mukai suites pass") {
  for (auto s : {Suite::Ampleness, Suite::Mukai})
    for (const auto& r : run_suite(s)) CHECK_MESSAGE(r.status == CheckStatus::Pass, r.check_id);
}

TEST_CASE("every failing report carries a counterexample") {
  for (const auto& r : run_suite(Suite::All))
    if (r.status == CheckStatus::Fail) CHECK_FALSE(r.details.empty());
}

TEST_CASE("reports are reproducible across runs and worker counts") {
  SuiteConfig one;
  one.jobs = 1;
  SuiteConfig three;
  three.jobs = 3;
  const auto a = reports_to_json(run_suite(Suite::All, one), Suite::All, false).dump();
  const auto b = reports_to_json(run_suite(Suite::All, three), Suite::All, false).dump();
  const auto c = reports_to_json(run_suite(Suite::All, one), Suite::All, false).dump();
  CHECK(a == b);
  CHECK(a == c);
  const auto doc = json::parse(a);
  CHECK(doc.at("schema") == 1);
  CHECK(doc.at("suite") == "all");
  CHECK(doc.at("reports").size() == run_suite(Suite::All).size());
}
