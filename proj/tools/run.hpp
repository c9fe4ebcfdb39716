// Subcommands of the boolpow tool. Each returns a JSON report whose
// "verified" field decides the exit code.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "boolpow/io.hpp"

namespace boolpow::cli {

struct RunConfig {
  std::string command;
  std::string alg;      // path to an algebra JSON file
  std::string builtin;  // builtin algebra name
  int rank = 2;
  int depth = 3;
  std::size_t budget = 1u << 16;
  std::uint64_t seed = 1;
  std::string out;  // report path; stdout when empty
  int points = 1;
  std::vector<int> filters;  // defaults to the least idempotent at every point
  std::string phi, psi, sigma, partition, gens;  // input files
  int steps = 32;
  int limit = 16;  // elements listed by build-power
};

const std::vector<std::string>& command_names();

// Throws Error for bad input; the report carries "verified".
io::Json run(const RunConfig& cfg);

}  // namespace boolpow::cli
