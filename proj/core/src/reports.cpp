#include "kumdeg/reports.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <functional>
#include <iterator>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "kumdeg/ampleness.hpp"
#include "kumdeg/errors.hpp"
#include "kumdeg/mukai.hpp"
#include "kumdeg/representations.hpp"
#include "kumdeg/serialization.hpp"

namespace kumdeg {

using nlohmann::json;

namespace {

constexpr std::size_t kMaxListed = 20;

struct Outcome {
  bool pass = true;
  std::vector<std::string> details;

  void fail(std::string why) {
    pass = false;
    if (details.size() < kMaxListed) details.push_back(std::move(why));
  }
};

ConformanceReport run_check(std::string id, std::string anchor, const std::function<void(Outcome&)>& body) {
  ConformanceReport report;
  report.check_id = std::move(id);
  report.anchor = std::move(anchor);
  Outcome out;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(out);
  } catch (const std::exception& ex) {
    out.fail(std::string("exception: ") + ex.what());
  }
  report.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start)
                          .count();
  report.status = out.pass ? CheckStatus::Pass : CheckStatus::Fail;
  report.details = std::move(out.details);
  return report;
}

std::string join(const std::vector<std::int64_t>& xs, std::size_t limit = kMaxListed) {
  std::string s;
  for (std::size_t i = 0; i < xs.size() && i < limit; ++i) s += (i ? "," : "") + std::to_string(xs[i]);
  if (xs.size() > limit) s += ",...";
  return s;
}

void range_check(Outcome& out, Problem p, std::int64_t lo, std::int64_t hi, int jobs) {
  const auto failures = verify_range(p, lo, hi, jobs);
  if (!failures.empty())
    out.fail(std::string(to_string(p)) + " has no witness for n = " + join(failures));
  else
    out.details.push_back(std::string(to_string(p)) + " [" + std::to_string(lo) + "," + std::to_string(hi) + "]");
}

std::vector<ConformanceReport> lemma_suite(const SuiteConfig& cfg) {
  std::vector<ConformanceReport> out;
  out.push_back(run_check("lemmas.five-squares", "every m >= 34 is a sum of five positive squares; 33 is not",
                          [&](Outcome& o) {
                            range_check(o, Problem::FiveSquares, 34, 5000, cfg.jobs);
                            if (five_positive_squares(33)) o.fail("33 unexpectedly has a witness");
                          }));
  out.push_back(run_check("lemmas.fifteen-bounded-squares",
                          "every m >= 36 is a sum of fifteen positive squares with 3(root^2 + 3) <= m",
                          [&](Outcome& o) { range_check(o, Problem::FifteenBoundedSquares, 36, 5000, cfg.jobs); }));
  out.push_back(run_check("lemmas.three-triangular", "every n >= 0 is a sum of three triangular numbers",
                          [&](Outcome& o) { range_check(o, Problem::ThreeTriangular, 0, 5000, cfg.jobs); }));
  out.push_back(run_check("lemmas.fifteen-bounded-triangular",
                          "every m >= 24 is a sum of fifteen triangular numbers with indices 5(2a - 1)^2 <= 8m + 165",
                          [&](Outcome& o) { range_check(o, Problem::FifteenBoundedTriangular, 24, 5000, cfg.jobs); }));
  out.push_back(run_check("lemmas.eq1", "n = 2a^2 - sum a_i^2 with a > a_1 + a_2 + a_3 + a_4 for every n >= 164",
                          [&](Outcome& o) {
                            const auto sols = solve_range(Problem::Eq1, 164, 3000, cfg.jobs);
                            std::vector<std::int64_t> missing;
                            std::vector<std::int64_t> weak;
                            for (std::size_t i = 0; i < sols.size(); ++i) {
                              const std::int64_t n = 164 + static_cast<std::int64_t>(i);
                              if (!sols[i])
                                missing.push_back(n);
                              else if (n >= 1218 && !(*sols[i]->lead > 4 * sols[i]->parts[0]))
                                weak.push_back(n);
                            }
                            if (!missing.empty()) o.fail("no witness for n = " + join(missing));
                            if (!weak.empty()) o.fail("witness without a > 4 a_1 for n = " + join(weak));
                            if (o.pass) o.details.push_back("Eq1 [164,3000]");
                          }));
  out.push_back(run_check("lemmas.eq7", "n = a^2 - sum T(a_i) with a > a_1 + a_2 + a_3 + a_4 - 2 for every n >= 30",
                          [&](Outcome& o) { range_check(o, Problem::Eq7, 30, 3000, cfg.jobs); }));
  return out;
}

void compare_sporadic(Outcome& o, const std::vector<std::int64_t>& got, const std::vector<std::int64_t>& expected) {
  std::vector<std::int64_t> missing;
  std::vector<std::int64_t> extra;
  std::set_difference(expected.begin(), expected.end(), got.begin(), got.end(), std::back_inserter(missing));
  std::set_difference(got.begin(), got.end(), expected.begin(), expected.end(), std::back_inserter(extra));
  if (!missing.empty()) o.fail("not realized: e = " + join(missing));
  if (!extra.empty()) o.fail("unexpected: e = " + join(extra));
  o.details.push_back("e <= 61 set is {" + join(got, 64) + "}");
}

std::vector<ConformanceReport> degree_suite(const SuiteConfig& cfg) {
  std::vector<ConformanceReport> out;
  const std::int64_t max_e = std::max<std::int64_t>(cfg.max_e, 62);
  DegreeTable table;
  out.push_back(run_check("degrees.enumeration-guard", "no records near the enumeration bound on a",
                          [&](Outcome& o) {
                            table = theorem_main_set(max_e, true, cfg.jobs);
                            for (const auto& [m, res] : table.per_method)
                              if (!res.guard_ok())
                                o.fail(std::string(to_string(m)) + " produced records at a = " +
                                       std::to_string(res.last_productive_a) + " near the limit " +
                                       std::to_string(res.a_limit));
                          }));
  out.push_back(run_check("degrees.sporadic-list",
                          "the Kummer constructions give exactly the listed degrees e <= 61", [&](Outcome& o) {
                            std::vector<std::int64_t> got;
                            for (const auto& [e, recs] : table.by_e) {
                              if (e > 61) break;
                              if (std::any_of(recs.begin(), recs.end(), [](const DegreeRecord& r) {
                                    return r.method != Method::TWISTED_MODULI;
                                  }))
                                got.push_back(e);
                            }
                            compare_sporadic(o, got, sporadic_degrees(false));
                          }));
  out.push_back(run_check("degrees.sporadic-with-twisted",
                          "adding the twisted moduli degrees gives the full sporadic list", [&](Outcome& o) {
                            std::vector<std::int64_t> got;
                            for (const auto& [e, recs] : table.by_e)
                              if (e <= 61) got.push_back(e);
                            compare_sporadic(o, got, sporadic_degrees(true));
                          }));
  out.push_back(run_check("degrees.coverage", "every e >= 62 is realized", [&](Outcome& o) {
    std::vector<std::int64_t> missing;
    for (std::int64_t e = 62; e <= max_e; ++e)
      if (!table.by_e.count(e)) missing.push_back(e);
    if (!missing.empty()) o.fail("missing e = " + join(missing));
    o.details.push_back("[62," + std::to_string(max_e) + "]");
  }));
  out.push_back(run_check("degrees.witness-audit",
                          "every witness has L^2 = 2e, passes the ampleness criterion, is integral and primitive",
                          [&](Outcome& o) {
                            for (const auto& [e, recs] : table.by_e)
                              for (const auto& r : recs) {
                                std::string why;
                                if (!audit_record(r, &why)) o.fail(witness_id(r) + ": " + why);
                                if (!r.primitive) o.fail(witness_id(r) + ": not primitive");
                              }
                          }));
  if (cfg.witness_store) {
    out.push_back(run_check("degrees.witness-store", "stored witnesses pass the same audit", [&](Outcome& o) {
      const auto records = read_witness_store(*cfg.witness_store);
      if (records.empty()) o.fail("witness store is empty");
      for (const auto& r : records) {
        std::string why;
        if (!audit_record(r, &why)) o.fail(witness_id(r) + ": " + why);
      }
    }));
  }
  return out;
}

std::vector<ConformanceReport> ampleness_suite(const SuiteConfig& cfg) {
  std::vector<ConformanceReport> out;
  const auto a5 = KummerClass::uniform(1, 10, 2);
  const auto a4 = KummerClass::uniform(1, 8, 2);
  out.push_back(run_check("ampleness.criterion", "aH - sum a_i E_i is ample when a exceeds the four largest a_i",
                          [&](Outcome& o) {
                            if (!sufficient_ample(a5)) o.fail("5H - sum E_i rejected");
                            if (sufficient_ample(a4)) o.fail("4H - sum E_i accepted");
                            if (!sufficient_ample(KummerClass::uniform(1, 6, 1))) o.fail("3H - (1/2)sum E_i rejected");
                          }));
  out.push_back(run_check("ampleness.nef-boundary",
                          "4H - sum E_i meets a (-2)-class with intersection 0 on a product surface",
                          [&](Outcome& o) {
                            const auto ns = AbelianNs::product(1);
                            const auto c = find_orthogonal_violator(a4, ns, {}, cfg.jobs);
                            if (!c)
                              o.fail("no candidate with L.C <= 0");
                            else if (intersect(a4, *c) != Rational(0))
                              o.fail("first candidate has L.C = " + to_string(intersect(a4, *c)));
                            else
                              o.details.push_back(violator_to_json(*c, a4).dump());
                            SearchBounds strict;
                            strict.strict = true;
                            if (auto neg = find_orthogonal_violator(a4, ns, strict, cfg.jobs))
                              o.fail("candidate with L.C < 0: " + violator_to_json(*neg, a4).dump());
                          }));
  out.push_back(run_check("ampleness.oracle-soundness",
                          "criterion-passing classes admit no (-2)-candidate with L.C <= 0", [&](Outcome& o) {
                            std::mt19937_64 rng(cfg.seed);
                            std::uniform_int_distribution<std::int64_t> coeff(1, 8);
                            std::uniform_int_distribution<std::int64_t> slack(1, 6);
                            for (const auto& ns : {AbelianNs::rank_one(1), AbelianNs::product(1)}) {
                              for (int i = 0; i < cfg.random_classes; ++i) {
                                KummerClass l;
                                for (auto& x : l.e2) x = coeff(rng);
                                auto sorted = l.e2;
                                std::sort(sorted.begin(), sorted.end(), std::greater<>());
                                l.h2 = sorted[0] + sorted[1] + sorted[2] + sorted[3] + slack(rng);
                                if (auto c = find_orthogonal_violator(l, ns, {}, cfg.jobs))
                                  o.fail(json(l).dump() + " meets " + violator_to_json(*c, l).dump());
                              }
                            }
                          }));
  out.push_back(run_check("ampleness.proof-chain", "each inequality of the ampleness argument holds on 5H - sum E_i",
                          [&](Outcome& o) {
                            std::array<std::int64_t, kNodes> bi2{1, 1, 1, 1};
                            const auto cand = make_candidate(1, {0, 1}, bi2, AbelianNs::product(1));
                            const auto report = check_proof_chain(a5, cand);
                            if (!report.consistent()) o.fail("chain inconsistent: " + to_json(report).dump());
                            if (report.l_dot_c != Rational(1)) o.fail("L.C = " + to_string(report.l_dot_c));
                          }));
  return out;
}

std::vector<ConformanceReport> mukai_suite(const SuiteConfig& cfg) {
  std::vector<ConformanceReport> out;
  const auto product = NumericalSurfaceData::custom(SurfaceKind::Abelian, {{0, 1}, {1, 0}}, {1, 1});
  out.push_back(run_check("mukai.wall-tightness",
                          "walls for v = (1, 0, -n-1) reach n + 1 and never exceed r v^2 / 2", [&](Outcome& o) {
                            for (std::int64_t n = 1; n <= 6; ++n) {
                              const MukaiVector v{1, {0, 0}, -n - 1};
                              const auto res = wall_search(v, product, {}, cfg.jobs);
                              const auto bound = kummer_ample_bound(v, product);
                              if (res.max_ratio != Rational(n + 1))
                                o.fail("n = " + std::to_string(n) + ": max ratio " + to_string(res.max_ratio));
                              if (res.max_ratio > bound) o.fail("n = " + std::to_string(n) + ": bound exceeded");
                              if (!res.identity_holds) o.fail("n = " + std::to_string(n) + ": identity fails");
                            }
                          }));
  out.push_back(run_check("mukai.twisted-example", "(d, r) in {(1,3),(1,4),(2,3),(1,5),(3,3)} give e = 2dr^2",
                          [&](Outcome& o) {
                            for (const auto& t : twisted_k3_batch()) {
                              if (t.v_square != 4 || t.gcd != 1 || !t.dinfty_ample)
                                o.fail(to_json(t).dump());
                              o.details.push_back(to_json(t).dump());
                            }
                            auto degrees = twisted_k3_degrees();
                            std::sort(degrees.begin(), degrees.end());
                            if (degrees != std::vector<std::int64_t>{18, 32, 36, 50, 54})
                              o.fail("degrees " + join(degrees));
                          }));
  out.push_back(run_check("mukai.cross-module",
                          "u l - delta with u > 2 and aH - sum E_i with a > 4 agree after rescaling", [&](Outcome& o) {
                            const auto rank_one = NumericalSurfaceData::standard(SurfaceKind::Abelian, 1);
                            const auto bound = kummer_ample_bound(MukaiVector{1, {0}, -2}, rank_one);
                            for (std::int64_t t = 1; t <= 4; ++t)
                              for (std::int64_t h2 = 1; h2 <= 40; ++h2) {
                                const bool lattice = sufficient_ample(KummerClass::uniform(1, h2, 2 * t));
                                const bool mukai = Rational(h2, 4 * t) > bound;
                                if (lattice != mukai)
                                  o.fail("t = " + std::to_string(t) + ", h2 = " + std::to_string(h2));
                              }
                          }));
  out.push_back(run_check("mukai.polarizations", "degree and divisibility of a theta - b delta", [&](Outcome& o) {
    if (hilb_polarization(2, 14, 3, 1) != PolarizationInfo{true, 250, 1}) o.fail("Hilb^2, e = 14, (3, 1)");
    if (kummer_polarization(2, 1, 4, 1) != PolarizationInfo{true, 26, 2}) o.fail("Kum_2, d = 1, (4, 1)");
    if (kummer_polarization(2, 1, 3, 1).ample) o.fail("Kum_2 boundary a = n + 1 accepted");
  }));
  return out;
}

}  // namespace

std::string_view to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass:
      return "Pass";
    case CheckStatus::Fail:
      return "Fail";
    case CheckStatus::Skipped:
      return "Skipped";
  }
  return "Skipped";
}

std::string_view to_string(Suite s) {
  switch (s) {
    case Suite::Lemmas:
      return "lemmas";
    case Suite::Degrees:
      return "degrees";
    case Suite::Ampleness:
      return "ampleness";
    case Suite::Mukai:
      return "mukai";
    case Suite::All:
      return "all";
  }
  return "all";
}

std::optional<Suite> parse_suite(std::string_view name) {
  for (Suite s : {Suite::Lemmas, Suite::Degrees, Suite::Ampleness, Suite::Mukai, Suite::All})
    if (to_string(s) == name) return s;
  return std::nullopt;
}

std::vector<ConformanceReport> run_suite(Suite suite, const SuiteConfig& config) {
  std::vector<ConformanceReport> out;
  auto append = [&out](std::vector<ConformanceReport> more) {
    for (auto& r : more) out.push_back(std::move(r));
  };
  if (suite == Suite::Lemmas || suite == Suite::All) append(lemma_suite(config));
  if (suite == Suite::Degrees || suite == Suite::All) append(degree_suite(config));
  if (suite == Suite::Ampleness || suite == Suite::All) append(ampleness_suite(config));
  if (suite == Suite::Mukai || suite == Suite::All) append(mukai_suite(config));
  return out;
}

bool all_passed(const std::vector<ConformanceReport>& reports) {
  return std::all_of(reports.begin(), reports.end(),
                     [](const ConformanceReport& r) { return r.status != CheckStatus::Fail; });
}

json reports_to_json(const std::vector<ConformanceReport>& reports, Suite suite, bool include_runtime) {
  json list = json::array();
  for (const auto& r : reports) {
    json j = {{"check_id", r.check_id},
              {"anchor", r.anchor},
              {"status", std::string(to_string(r.status))},
              {"details", r.details}};
    if (include_runtime) j["runtime_ms"] = r.runtime_ms;
    list.push_back(std::move(j));
  }
  return {{"schema", kSchemaVersion},
          {"suite", std::string(to_string(suite))},
          {"passed", all_passed(reports)},
          {"reports", std::move(list)}};
}

const std::vector<std::int64_t>& sporadic_degrees(bool include_twisted) {
  static const std::vector<std::int64_t> lattice{14, 26, 28, 29, 34, 38, 40, 42, 44, 45,
                                                 46, 47, 48, 49, 53, 56, 57, 58, 59, 60};
  static const std::vector<std::int64_t> full = [] {
    std::vector<std::int64_t> v = lattice;
    v.insert(v.end(), {18, 32, 36, 50, 54});
    std::sort(v.begin(), v.end());
    return v;
  }();
  return include_twisted ? full : lattice;
}

std::string degree_table_csv(const DegreeTable& table) {
  std::ostringstream os;
  os << "e,methods,witness_id,primitive\n";
  for (const auto& [e, recs] : table.by_e) {
    const auto methods = table.methods(e);
    std::string joined;
    for (std::size_t i = 0; i < methods.size(); ++i) joined += (i ? ";" : "") + std::string(to_string(methods[i]));
    // the canonical witness is the first record of the first method
    const DegreeRecord* first = &recs.front();
    for (const auto& r : recs)
      if (r.method == methods.front()) {
        first = &r;
        break;
      }
    os << e << ',' << joined << ',' << witness_id(*first) << ',' << (first->primitive ? "true" : "false") << '\n';
  }
  return os.str();
}

std::string witness_store_jsonl(const DegreeTable& table) {
  std::vector<const DegreeRecord*> ordered;
  for (const auto& [e, recs] : table.by_e)
    for (const auto& r : recs) ordered.push_back(&r);
  std::stable_sort(ordered.begin(), ordered.end(), [](const DegreeRecord* x, const DegreeRecord* y) {
    return std::pair(x->e, x->method) < std::pair(y->e, y->method);
  });
  std::ostringstream os;
  std::map<std::string, int> seen;
  for (const auto* r : ordered) {
    json j = *r;
    const std::string id = witness_id(*r);
    const int k = ++seen[id];
    if (k > 1) j["id"] = id + "." + std::to_string(k);
    os << j.dump() << '\n';
  }
  return os.str();
}

std::vector<DegreeRecord> read_witness_store(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path.string());
  std::vector<DegreeRecord> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const json j = json::parse(line);
      if (j.value("schema", 0) != kSchemaVersion) throw ParameterError("unsupported schema");
      out.push_back(j.get<DegreeRecord>());
    } catch (const json::exception& ex) {
      throw ParameterError(path.string() + ":" + std::to_string(lineno) + ": " + ex.what());
    } catch (const ParameterError& ex) {
      throw ParameterError(path.string() + ":" + std::to_string(lineno) + ": " + ex.what());
    }
  }
  return out;
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << content;
  out.flush();
  if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace kumdeg
