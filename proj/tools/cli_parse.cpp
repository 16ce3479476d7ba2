#include "cli_parse.hpp"

#include <charconv>
#include <sstream>

#include "kumdeg/errors.hpp"
#include "kumdeg/serialization.hpp"

namespace kumdeg::cli {

namespace {

std::int64_t parse_int(std::string token) {
  const auto first = token.find_first_not_of(" \t");
  const auto last = token.find_last_not_of(" \t");
  if (first == std::string::npos) throw ParameterError("empty number");
  token = token.substr(first, last - first + 1);
  std::int64_t value = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) throw ParameterError("not an integer: " + token);
  return value;
}

}  // namespace

std::vector<std::int64_t> parse_list(const std::string& text) {
  std::vector<std::int64_t> out;
  std::stringstream ss(text);
  std::string token;
  while (std::getline(ss, token, ',')) out.push_back(parse_int(token));
  if (out.empty()) throw ParameterError("empty list");
  return out;
}

std::vector<std::vector<std::int64_t>> parse_matrix(const std::string& text) {
  std::vector<std::vector<std::int64_t>> out;
  std::stringstream ss(text);
  std::string row;
  while (std::getline(ss, row, ';')) out.push_back(parse_list(row));
  if (out.empty()) throw ParameterError("empty matrix");
  return out;
}

MukaiVector parse_mukai(const std::string& text, std::size_t ns_rank) {
  const auto xs = parse_list(text);
  if (xs.size() != ns_rank + 2)
    throw ParameterError("Mukai vector needs " + std::to_string(ns_rank + 2) + " entries (r, ns..., s)");
  return {xs.front(), std::vector<std::int64_t>(xs.begin() + 1, xs.end() - 1), xs.back()};
}

KummerClass parse_class(const std::string& json_text, std::int64_t d, std::int64_t h2, const std::string& e2) {
  KummerClass c;
  if (!json_text.empty()) {
    try {
      c = nlohmann::json::parse(json_text).get<KummerClass>();
    } catch (const nlohmann::json::exception& ex) {
      throw ParameterError(std::string("bad class JSON: ") + ex.what());
    }
  } else {
    c.d = d;
    c.h2 = h2;
    const auto xs = parse_list(e2);
    if (xs.size() == 1)
      c.e2.fill(xs.front());
    else if (xs.size() == kNodes)
      std::copy(xs.begin(), xs.end(), c.e2.begin());
    else
      throw ParameterError("--e2 needs 1 or 16 entries");
  }
  validate(c);
  return c;
}

}  // namespace kumdeg::cli
