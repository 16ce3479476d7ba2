#pragma once

// Parsers for the compact command-line notations: "1,2,3" lists and
// "0,1;1,0" matrices. Malformed text throws kumdeg::ParameterError.

#include <cstdint>
#include <string>
#include <vector>

#include "kumdeg/kummer_lattice.hpp"
#include "kumdeg/mukai.hpp"

namespace kumdeg::cli {

std::vector<std::int64_t> parse_list(const std::string& text);
std::vector<std::vector<std::int64_t>> parse_matrix(const std::string& text);

/// "r,ns...,s" against an NS lattice of the given rank.
MukaiVector parse_mukai(const std::string& text, std::size_t ns_rank);

/// Either a JSON object {d, h2, e2} or (d, h2, e2 list of 1 or 16 entries).
KummerClass parse_class(const std::string& json_text, std::int64_t d, std::int64_t h2, const std::string& e2);

}  // namespace kumdeg::cli
