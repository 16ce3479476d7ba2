#include "kumdeg/serialization.hpp"

#include "kumdeg/errors.hpp"

namespace kumdeg {

using nlohmann::json;

json rational_to_json(const Rational& q) { return {{"num", q.numerator()}, {"den", q.denominator()}}; }

Rational rational_from_json(const json& j) {
  const auto den = j.at("den").get<std::int64_t>();
  if (den == 0) throw ParameterError("rational with zero denominator");
  return {j.at("num").get<std::int64_t>(), den};
}

void to_json(json& j, const KummerClass& c) { j = {{"d", c.d}, {"h2", c.h2}, {"e2", c.e2}}; }

void from_json(const json& j, KummerClass& c) {
  c.d = j.at("d").get<std::int64_t>();
  c.h2 = j.at("h2").get<std::int64_t>();
  const auto e2 = j.at("e2").get<std::vector<std::int64_t>>();
  if (e2.size() != kNodes) throw ParameterError("e2 must have 16 entries");
  std::copy(e2.begin(), e2.end(), c.e2.begin());
}

void to_json(json& j, const IntegralityGenerators& g) {
  j = {{"half_all16", g.half_all16}, {"half_eight", g.half_eight}, {"tropes", g.tropes}};
}

void from_json(const json& j, IntegralityGenerators& g) {
  g.half_all16 = j.value("half_all16", false);
  g.half_eight = j.value("half_eight", std::vector<std::vector<int>>{});
  g.tropes = j.value("tropes", std::vector<std::vector<int>>{});
}

void to_json(json& j, const RepresentationWitness& w) {
  j = {{"problem", std::string(to_string(w.problem))}, {"target", w.target}, {"parts", w.parts}};
  if (w.lead) j["lead"] = *w.lead;
}

void from_json(const json& j, RepresentationWitness& w) {
  const auto p = parse_problem(j.at("problem").get<std::string>());
  if (!p) throw ParameterError("unknown problem name");
  w.problem = *p;
  w.target = j.at("target").get<std::int64_t>();
  w.parts = j.at("parts").get<std::vector<std::int64_t>>();
  w.lead = j.contains("lead") ? std::optional<std::int64_t>(j.at("lead").get<std::int64_t>()) : std::nullopt;
}

void to_json(json& j, const MukaiVector& v) { j = {{"rank", v.rank}, {"ns", v.ns}, {"euler", v.euler}}; }

void from_json(const json& j, MukaiVector& v) {
  v.rank = j.at("rank").get<std::int64_t>();
  v.ns = j.at("ns").get<std::vector<std::int64_t>>();
  v.euler = j.at("euler").get<std::int64_t>();
}

void to_json(json& j, const DegreeRecord& r) {
  j = {{"schema", kSchemaVersion},
       {"id", witness_id(r)},
       {"e", r.e},
       {"method", std::string(to_string(r.method))},
       {"generators", r.generators},
       {"params", r.params},
       {"primitive", r.primitive}};
  j["witness"] = r.witness ? json(*r.witness) : json(nullptr);
}

void from_json(const json& j, DegreeRecord& r) {
  r.e = j.at("e").get<std::int64_t>();
  const auto m = parse_method(j.at("method").get<std::string>());
  if (!m) throw ParameterError("unknown method name");
  r.method = *m;
  r.witness = j.contains("witness") && !j.at("witness").is_null()
                  ? std::optional<KummerClass>(j.at("witness").get<KummerClass>())
                  : std::nullopt;
  r.generators = j.value("generators", json::object()).get<IntegralityGenerators>();
  r.params = j.value("params", std::map<std::string, std::int64_t>{});
  r.primitive = j.at("primitive").get<bool>();
}

json violator_to_json(const CurveClassCandidate& c, const KummerClass& l) {
  return {{"b2", c.b2},
          {"ns_coords", c.ns_coords},
          {"bi2", c.bi2},
          {"h_dot_m", c.h_dot_m},
          {"m_square", c.m_square},
          {"LdotC", rational_to_json(intersect(l, c))}};
}

json to_json(const ProofChainReport& r) {
  return {{"dominance", r.dominance},
          {"top4_square_bound", r.top4_square_bound},
          {"ha", r.ha},
          {"positive_cone", r.positive_cone},
          {"self_intersection", r.self_intersection},
          {"hm", r.hm},
          {"cauchy_schwarz", r.cauchy_schwarz},
          {"hodge", r.hodge},
          {"large_case", r.large_case},
          {"chain_bound", r.chain_bound},
          {"LdotC", rational_to_json(r.l_dot_c)},
          {"consistent", r.consistent()}};
}

json to_json(const WallSearchResult& r) {
  json j = {{"max_ratio", rational_to_json(r.max_ratio)},
            {"candidates", r.candidates},
            {"identity_holds", r.identity_holds}};
  j["witness"] = r.witness ? json(*r.witness) : json(nullptr);
  return j;
}

json to_json(const PolarizationInfo& p) {
  return {{"ample", p.ample}, {"degree", p.degree}, {"divisibility", p.divisibility}};
}

json to_json(const TwistedInstance& t) {
  return {{"d", t.d}, {"r", t.r}, {"v_square", t.v_square}, {"gcd", t.gcd}, {"dinfty_ample", t.dinfty_ample},
          {"e", t.e}};
}

}  // namespace kumdeg
