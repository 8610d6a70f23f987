#pragma once

// Exhaustive verification suites behind `tensorlsd verify`. Each suite
// checks a family of combinatorial claims for every length up to p_max and
// records per-claim counts plus the first counterexample found.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace tensorlsd {

struct ClaimResult {
  std::string claim;
  int p = 0;
  bool pass = true;
  std::string detail;  // e.g. "enumerated=132 formula=132"
  std::uint64_t checked = 0;
  std::optional<std::string> counterexample;
};

struct VerifyReport {
  std::string suite;
  int p_max = 0;
  std::vector<ClaimResult> claims;

  bool pass() const;
  nlohmann::ordered_json to_json() const;
};

// Known suites: sequences, graphs, stirling, moments.
const std::vector<std::string>& verify_suites();

// Largest p_max a suite accepts (graphs enumerates pairs of sequences and
// has the lowest cap).
int verify_cap(const std::string& suite);

// Throws UsageError for an unknown suite, p_max < 1, or p_max above the cap.
VerifyReport run_verify(const std::string& suite, int p_max);

}  // namespace tensorlsd
