#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sseala/lattice.hpp"
#include "sseala/report.hpp"

namespace sseala {

struct RunConfig {
  std::string command = "verify";  // verify | dims | solve
  std::string target = "all";
  std::string algebra;             // empty: every applicable algebra
  std::string matrix = "J";        // J, J1, random, or a JSON file path
  std::size_t m = 1;
  std::int64_t box = 2;
  std::size_t samples = 500;
  std::uint64_t seed = 0;
  std::string beta;                // "p/q,..."; empty runs beta = 0 and a fixed generic beta
  std::optional<unsigned> mu, sp_power, q;
  std::string lemma, items;
  std::vector<std::string> reflect;
  std::string format = "json";
  std::string out;
};

// Throws ArgumentError on inconsistent settings.
void validate(const RunConfig& cfg);
Json config_json(const RunConfig& cfg);
// Overrides fields from a JSON object whose keys are the long flag names.
void apply_config_json(RunConfig& cfg, const Json& j);

RationalMatrix resolve_matrix(const RunConfig& cfg);
std::vector<RationalVector> resolve_betas(const RunConfig& cfg, std::size_t n);
// "1-8", "1,3,5" or "2".
std::vector<int> parse_items(const std::string& text);

const std::vector<std::string>& verify_targets();
VerificationReport run(const RunConfig& cfg);

}  // namespace sseala
