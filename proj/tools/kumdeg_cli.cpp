// kumdeg: command-line front end.
//
// Exit codes: 0 success, 1 a conformance check failed, 2 usage error,
// 3 I/O error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "cli_parse.hpp"
#include "kumdeg/ampleness.hpp"
#include "kumdeg/degree_enumeration.hpp"
#include "kumdeg/errors.hpp"
#include "kumdeg/mukai.hpp"
#include "kumdeg/parallel.hpp"
#include "kumdeg/reports.hpp"
#include "kumdeg/representations.hpp"
#include "kumdeg/serialization.hpp"

namespace {

using nlohmann::json;
using namespace kumdeg;

constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

void print(const json& j) { std::cout << j.dump(2) << '\n'; }

struct ClassArgs {
  std::string json_text;
  std::int64_t d = 1;
  std::int64_t h2 = 0;
  std::string e2 = "0";

  void add(CLI::App* cmd) {
    cmd->add_option("--class", json_text, "class as JSON {\"d\":..,\"h2\":..,\"e2\":[16 ints]}");
    cmd->add_option("--d", d, "half-degree of the abelian polarization (H^2 = 4d)");
    cmd->add_option("--h2", h2, "doubled coefficient of H");
    cmd->add_option("--e2", e2, "doubled E_i coefficients: one value for all, or 16 comma-separated");
  }
  KummerClass get() const { return cli::parse_class(json_text, d, h2, e2); }
};

struct SurfaceArgs {
  std::string kind = "abelian";
  std::int64_t half_degree = 1;
  std::int64_t r = 1;
  std::int64_t a = 0;
  std::int64_t b = 0;
  std::string gram;
  std::string h;
  std::string b0;

  void add(CLI::App* cmd) {
    cmd->add_option("--kind", kind, "k3 or abelian")->check(CLI::IsMember({"k3", "abelian"}));
    cmd->add_option("--half-degree", half_degree, "H^2 / 2 for the default basis");
    cmd->add_option("--r", r, "Brauer order");
    cmd->add_option("--a", a, "H.B0 for the default basis");
    cmd->add_option("--b", b, "B0^2 / 2 for the default basis");
    cmd->add_option("--gram", gram, "custom NS Gram matrix, rows separated by ';'");
    cmd->add_option("--h-coords", h, "coordinates of H in the custom basis");
    cmd->add_option("--b0", b0, "coordinates of B0 in the custom basis (default 0)");
  }
  NumericalSurfaceData get() const {
    const auto k = kind == "k3" ? SurfaceKind::K3 : SurfaceKind::Abelian;
    if (gram.empty()) return NumericalSurfaceData::standard(k, half_degree, r, a, b);
    if (h.empty()) throw ParameterError("--gram needs --h-coords");
    return NumericalSurfaceData::custom(k, cli::parse_matrix(gram), cli::parse_list(h), r,
                                        b0.empty() ? std::vector<std::int64_t>{} : cli::parse_list(b0));
  }
};

int run_verify_lemmas(const std::string& problem_name, std::int64_t lo, std::int64_t hi, const std::string& strategy,
                      const std::string& witnesses, int jobs) {
  const auto problem = parse_problem(problem_name);
  if (!problem) throw ParameterError("unknown problem: " + problem_name);
  const auto s = strategy == "exhaustive" ? Strategy::Exhaustive : Strategy::Auto;
  const auto results = solve_range(*problem, lo, hi, jobs, s);
  std::vector<std::int64_t> failures;
  std::string lines;
  for (std::size_t i = 0; i < results.size(); ++i) {
    if (!results[i]) {
      failures.push_back(lo + static_cast<std::int64_t>(i));
      continue;
    }
    json j = *results[i];
    j["schema"] = kSchemaVersion;
    lines += j.dump() + '\n';
  }
  if (!witnesses.empty()) write_file(witnesses, lines);
  print({{"schema", kSchemaVersion},
         {"problem", std::string(to_string(*problem))},
         {"lo", lo},
         {"hi", hi},
         {"failures", failures}});
  return failures.empty() ? 0 : kExitCheckFailed;
}

bool check_sporadic(const DegreeTable& table, std::int64_t max_e, json& summary) {
  std::vector<std::int64_t> lattice;
  std::vector<std::int64_t> full;
  for (const auto& [e, recs] : table.by_e) {
    if (e > 61) break;
    full.push_back(e);
    for (const auto& r : recs)
      if (r.method != Method::TWISTED_MODULI) {
        lattice.push_back(e);
        break;
      }
  }
  std::vector<std::int64_t> missing;
  for (std::int64_t e = 62; e <= max_e; ++e)
    if (!table.by_e.count(e)) missing.push_back(e);
  const bool lattice_ok = lattice == sporadic_degrees(false);
  const bool full_ok = full == sporadic_degrees(true);
  summary["check"] = {{"sporadic_lattice", lattice},
                            {"sporadic_lattice_ok", lattice_ok},
                            {"sporadic_full", full},
                            {"sporadic_full_ok", full_ok},
                            {"coverage_missing", missing},
                            {"guard_ok", table.guard_ok()}};
  return lattice_ok && full_ok && missing.empty() && table.guard_ok();
}

int run_enumerate(std::int64_t max_e, const std::vector<std::string>& methods, bool verbose, bool no_twisted,
                  std::int64_t d, const std::string& csv, const std::string& json_out, bool check, int jobs) {
  TableOptions opts;
  for (const auto& m : methods) {
    const auto parsed = parse_method(m);
    if (!parsed) throw ParameterError("unknown method: " + m);
    opts.methods.push_back(*parsed);
  }
  if (check && (!opts.methods.empty() || d != 1 || no_twisted))
    throw ParameterError("--check-sporadic needs every method with d = 1");
  if (check && max_e < 62) throw ParameterError("--check-sporadic needs --max-e >= 62");
  opts.include_twisted = !no_twisted;
  opts.verbose = verbose;
  opts.d = d;
  opts.jobs = jobs;
  const auto table = enumerate_degrees(max_e, opts);
  const std::string table_csv = degree_table_csv(table);
  if (!csv.empty()) write_file(csv, table_csv);
  if (!json_out.empty()) write_file(json_out, witness_store_jsonl(table));
  if (csv.empty() && json_out.empty() && !check) std::cout << table_csv;
  if (!check) return 0;
  json summary = {{"schema", kSchemaVersion}, {"max_e", max_e}};
  const bool ok = check_sporadic(table, max_e, summary);
  summary["passed"] = ok;
  print(summary);
  return ok ? 0 : kExitCheckFailed;
}

int run_check_ample(const KummerClass& l, bool generic) {
  json out = {{"schema", kSchemaVersion},
              {"class", l},
              {"self_intersection", rational_to_json(pair(l, l))},
              {"sufficient_ample", sufficient_ample(l)}};
  if (generic) out["generic_picard_ample"] = sufficient_ample_generic_picard(l);
  print(out);
  return 0;
}

int run_search_violator(const KummerClass& l, const std::string& gram, const std::string& h, std::int64_t bound_b,
                        std::int64_t bound_m, bool strict, int jobs) {
  AbelianNs ns;
  if (gram.empty()) {
    ns = AbelianNs::rank_one(l.d);
  } else {
    ns.gram = cli::parse_matrix(gram);
    if (!h.empty())
      ns.h_coords = cli::parse_list(h);
    else if (ns.gram.size() == 1)
      ns.h_coords = {1};
    else
      throw ParameterError("--gram of rank > 1 needs --h-coords");
  }
  SearchBounds bounds{bound_b, bound_m, strict};
  const auto c = find_orthogonal_violator(l, ns, bounds, jobs);
  json out = {{"schema", kSchemaVersion}, {"class", l}, {"found", c.has_value()}};
  out["certificate"] = c ? violator_to_json(*c, l) : json(nullptr);
  print(out);
  return 0;
}

int run_report(const std::string& suite_name, const std::string& out_dir, std::int64_t max_e,
               const std::string& store, std::uint64_t seed, int jobs) {
  const auto suite = parse_suite(suite_name);
  if (!suite) throw ParameterError("unknown suite: " + suite_name);
  SuiteConfig cfg;
  cfg.max_e = max_e;
  cfg.jobs = jobs;
  cfg.seed = seed;
  if (!store.empty()) {
    if (!std::ifstream(store)) throw IoError("cannot read " + store);
    cfg.witness_store = store;
  }
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create " + out_dir + ": " + ec.message());
  const auto reports = run_suite(*suite, cfg);
  const json doc = reports_to_json(reports, *suite);
  write_file(std::filesystem::path(out_dir) / ("report-" + suite_name + ".json"), doc.dump(2) + '\n');
  for (const auto& r : reports) {
    std::cout << to_string(r.status) << "  " << r.check_id;
    if (r.status == CheckStatus::Fail && !r.details.empty()) std::cout << "  (" << r.details.front() << ')';
    std::cout << '\n';
  }
  return all_passed(reports) ? 0 : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ampleness certificates and polarization degrees on Kummer surfaces"};
  app.require_subcommand(1);
  int jobs = 0;
  app.add_option("--jobs", jobs, "worker threads (default: KUMDEG_JOBS or all cores)");

  auto* lemmas = app.add_subcommand("verify-lemmas", "check a representation problem over a range");
  std::string problem = "five-squares";
  std::int64_t lo = 0;
  std::int64_t hi = 0;
  std::string strategy = "auto";
  std::string witnesses;
  lemmas->add_option("--problem", problem, "five-squares, fifteen-bounded-squares, three-triangular, "
                                           "fifteen-bounded-triangular, eq1, eq7")
      ->required();
  lemmas->add_option("--lo", lo)->required();
  lemmas->add_option("--hi", hi)->required();
  lemmas->add_option("--strategy", strategy)->check(CLI::IsMember({"auto", "exhaustive"}));
  lemmas->add_option("--witnesses", witnesses, "write witnesses as JSON lines");

  auto* degrees = app.add_subcommand("enumerate-degrees", "enumerate achievable degrees 2e");
  std::int64_t max_e = 200;
  std::vector<std::string> methods;
  bool verbose = false;
  bool no_twisted = false;
  bool check_list = false;
  std::int64_t enum_d = 1;
  std::string csv;
  std::string json_out;
  degrees->add_option("--max-e", max_e)->required();
  degrees->add_option("--method", methods, "restrict to EQ1, EQ7, HALF8, TROPE, RATIONAL_FAMILY, TWISTED_MODULI");
  degrees->add_flag("--verbose", verbose, "keep one witness per (e, a)");
  degrees->add_flag("--no-twisted", no_twisted, "omit the twisted-moduli degrees");
  degrees->add_option("--d", enum_d, "abelian polarization type for HALF8/TROPE");
  degrees->add_option("--csv", csv, "write the degree table as CSV");
  degrees->add_option("--json", json_out, "write the witness store as JSON lines");
  degrees->add_flag("--check-sporadic,--check-paper", check_list, "check the sporadic list and coverage from 62 on");

  ClassArgs ample_class;
  bool generic = false;
  auto* ample = app.add_subcommand("check-ample", "apply the sufficient ampleness criterion");
  ample_class.add(ample);
  ample->add_flag("--generic-picard", generic, "also apply the a > 3 bound (assumes Pic(A) = Z H_A)");

  ClassArgs viol_class;
  std::string viol_gram;
  std::string viol_h;
  std::int64_t bound_b = 8;
  std::int64_t bound_m = 8;
  bool strict = false;
  auto* viol = app.add_subcommand("search-violator", "search numerical (-2)-classes C with L.C <= 0");
  viol_class.add(viol);
  viol->add_option("--gram", viol_gram, "NS(A) Gram matrix, e.g. \"0,1;1,0\" (default [[2d]])");
  viol->add_option("--h-coords", viol_h, "coordinates of H_A");
  viol->add_option("--bound-b", bound_b, "largest doubled b");
  viol->add_option("--bound-m", bound_m, "largest |coordinate| of M_A");
  viol->add_flag("--strict", strict, "only report L.C < 0");

  auto* mukai = app.add_subcommand("mukai", "Mukai lattice bounds");
  mukai->require_subcommand(1);
  SurfaceArgs surface;
  std::string v_text;
  std::string u_text;
  auto* bound = mukai->add_subcommand("bound", "ampleness bound for D_u (abelian) or check u (K3)");
  surface.add(bound);
  bound->add_option("--v", v_text, "Mukai vector r,ns...,s")->required();
  bound->add_option("--u", u_text, "u as p or p/q (K3 check)");
  auto* dinfty = mukai->add_subcommand("dinfty", "is D_infinity ample");
  surface.add(dinfty);
  dinfty->add_option("--v", v_text)->required();
  std::int64_t pn = 2, pe = 1, pa = 1, pb = 1;
  auto* hilb = mukai->add_subcommand("hilb", "a theta - b delta on Hilb^n");
  hilb->add_option("--n", pn)->required();
  hilb->add_option("--e", pe)->required();
  hilb->add_option("--a", pa)->required();
  hilb->add_option("--b", pb)->required();
  auto* kum = mukai->add_subcommand("kum", "a theta - b delta on Kum_n");
  kum->add_option("--n", pn)->required();
  kum->add_option("--d", pe)->required();
  kum->add_option("--a", pa)->required();
  kum->add_option("--b", pb)->required();
  auto* twisted = mukai->add_subcommand("twisted", "degrees from twisted abelian surfaces");
  std::int64_t tw_d = 0, tw_r = 0, gen_e = 0;
  twisted->add_option("--d", tw_d, "single instance (with --r); default is the standard batch");
  twisted->add_option("--r", tw_r);
  twisted->add_option("--generalized-e", gen_e, "print r^2 e for this e (with --r)");
  auto* walls = mukai->add_subcommand("walls", "largest wall ratio |(a,delta)| / |(a,l)|");
  surface.add(walls);
  std::string wall_bounds = "4,6,12";
  walls->add_option("--v", v_text)->required();
  walls->add_option("--bounds", wall_bounds, "rank,ns,euler magnitudes");

  auto* report = app.add_subcommand("report", "run a conformance suite and write a JSON report");
  std::string suite = "all";
  std::string out_dir = ".";
  std::string store;
  std::uint64_t seed = SuiteConfig{}.seed;
  std::int64_t report_max_e = 200;
  report->add_option("--suite", suite, "lemmas, degrees, ampleness, mukai, all");
  report->add_option("--out", out_dir, "output directory");
  report->add_option("--max-e", report_max_e);
  report->add_option("--witness-store", store, "JSON lines store to audit");
  report->add_option("--seed", seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*lemmas) return run_verify_lemmas(problem, lo, hi, strategy, witnesses, jobs);
    if (*degrees) return run_enumerate(max_e, methods, verbose, no_twisted, enum_d, csv, json_out, check_list, jobs);
    if (*ample) return run_check_ample(ample_class.get(), generic);
    if (*viol) return run_search_violator(viol_class.get(), viol_gram, viol_h, bound_b, bound_m, strict, jobs);
    if (*report) return run_report(suite, out_dir, report_max_e, store, seed, jobs);
    if (*mukai) {
      if (*hilb) {
        json out = to_json(hilb_polarization(pn, pe, pa, pb));
        out["schema"] = kSchemaVersion;
        print(out);
        return 0;
      }
      if (*kum) {
        json out = to_json(kummer_polarization(pn, pe, pa, pb));
        out["schema"] = kSchemaVersion;
        print(out);
        return 0;
      }
      if (*twisted) {
        if (gen_e != 0) {
          print({{"schema", kSchemaVersion}, {"e", gen_e}, {"r", tw_r}, {"degree", mukai_generalized_degree(gen_e, tw_r)}});
          return 0;
        }
        json list = json::array();
        if (tw_d != 0)
          list.push_back(to_json(twisted_k3_degree(tw_d, tw_r)));
        else
          for (const auto& t : twisted_k3_batch()) list.push_back(to_json(t));
        print({{"schema", kSchemaVersion}, {"instances", list}});
        return 0;
      }
      const auto data = surface.get();
      const auto v = cli::parse_mukai(v_text, data.rank());
      json out = {{"schema", kSchemaVersion}, {"v", v}, {"v_square", mukai_pair(v, v, data)}};
      if (*bound) {
        if (data.kind == SurfaceKind::Abelian) {
          out["bound"] = rational_to_json(kummer_ample_bound(v, data));
        } else {
          if (u_text.empty()) throw ParameterError("K3 check needs --u");
          const auto slash = u_text.find('/');
          const Rational u = slash == std::string::npos
                                 ? Rational(cli::parse_list(u_text).front())
                                 : Rational(cli::parse_list(u_text.substr(0, slash)).front(),
                                            cli::parse_list(u_text.substr(slash + 1)).front());
          out["u"] = rational_to_json(u);
          out["ample"] = k3_ample_bound_check(u, v, data);
        }
      } else if (*dinfty) {
        out["dinfty_ample"] = dinfty_ample(v, data);
      } else if (*walls) {
        const auto b = cli::parse_list(wall_bounds);
        if (b.size() != 3) throw ParameterError("--bounds needs rank,ns,euler");
        const auto res = wall_search(v, data, {b[0], b[1], b[2]}, jobs);
        out["walls"] = to_json(res);
        const auto ed = ell_delta(v, data);
        out["ell"] = ed.ell;
        out["delta"] = ed.delta;
      }
      print(out);
      return 0;
    }
  } catch (const IoError& e) {
    std::cerr << "kumdeg: " << e.what() << '\n';
    return kExitIo;
  } catch (const ParameterError& e) {
    std::cerr << "kumdeg: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    std::cerr << "kumdeg: " << e.what() << '\n';
    return kExitUsage;
  } catch (const PreconditionError& e) {
    std::cerr << "kumdeg: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
