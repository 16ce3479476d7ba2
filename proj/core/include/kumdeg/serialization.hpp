#pragma once

// JSON forms of the library types. Exact rationals are {"num": n, "den": d}.

#include <nlohmann/json.hpp>

#include "kumdeg/ampleness.hpp"
#include "kumdeg/degree_enumeration.hpp"
#include "kumdeg/kummer_lattice.hpp"
#include "kumdeg/mukai.hpp"
#include "kumdeg/rational.hpp"
#include "kumdeg/representations.hpp"

namespace kumdeg {

inline constexpr int kSchemaVersion = 1;

nlohmann::json rational_to_json(const Rational& q);
Rational rational_from_json(const nlohmann::json& j);

void to_json(nlohmann::json& j, const KummerClass& c);
void from_json(const nlohmann::json& j, KummerClass& c);

void to_json(nlohmann::json& j, const IntegralityGenerators& g);
void from_json(const nlohmann::json& j, IntegralityGenerators& g);

void to_json(nlohmann::json& j, const RepresentationWitness& w);
void from_json(const nlohmann::json& j, RepresentationWitness& w);

void to_json(nlohmann::json& j, const MukaiVector& v);
void from_json(const nlohmann::json& j, MukaiVector& v);

void to_json(nlohmann::json& j, const DegreeRecord& r);
void from_json(const nlohmann::json& j, DegreeRecord& r);

/// {b2, ns_coords, bi2, LdotC}
nlohmann::json violator_to_json(const CurveClassCandidate& c, const KummerClass& l);

nlohmann::json to_json(const ProofChainReport& r);
nlohmann::json to_json(const WallSearchResult& r);
nlohmann::json to_json(const PolarizationInfo& p);
nlohmann::json to_json(const TwistedInstance& t);

}  // namespace kumdeg
