#ifndef POLCAL_RUNNER_HPP
#define POLCAL_RUNNER_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "polcal/json_io.hpp"

namespace polcal {

// Exit codes: 0 success, 1 usage/parse error, 2 evaluation error,
// 3 identity violation in a verify suite.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitEvaluation = 2;
inline constexpr int kExitIdentityViolation = 3;

struct RunConfig {
  std::string command;
  std::string fn;
  std::vector<std::string> var_names;  // defines the dimension when present
  std::string point_text;              // comma-separated coordinates
  std::string dirs_text;               // semicolon-separated coordinate tuples
  int order = -1;                      // -1: inferred from the direction count
  std::string mode = "exact";
  std::uint64_t seed = kDefaultSeed;
  TolerancePolicy tolerance;
  bool pretty = false;
  bool with_terms = false;
  std::string s0_text = "1/8";
  int levels = 5;
  std::string t0_text = "1/8";
  int shrinks = 6;
  int samples = 40;
  std::string suite;
  long long trials = 100;
};

struct RunResult {
  Json doc;
  int exit_code = kExitOk;
};

// Dispatches one command and maps thrown errors onto exit codes; never
// throws for user-facing failures.
RunResult run_command(const RunConfig& cfg);

// One randomized identity suite; deterministic for a fixed (suite, trials,
// seed) triple.  Suites: iterate, leibniz, chain, euler, reconstruct,
// euler-theorem.
Json run_verify_suite(const std::string& suite, long long trials, std::uint64_t seed, bool& any_failure);

}  // namespace polcal

#endif
