#pragma once

#include "conefix/instance.hpp"

#include <json.hpp>

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace conefix {

/// A named invariant checked over generated instances. `generate` builds the
/// instance for one trial from its sub-seed; `check` returns a message when
/// the invariant fails. Checks read any randomness they need from
/// instance.meta.seed, so a saved failing instance re-fails on its own.
struct PropertySuite {
  std::string name;
  std::string description;
  std::function<Instance(std::uint64_t seed)> generate;
  std::function<std::optional<std::string>(const Instance&)> check;
};

struct SuiteFailure {
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  std::string message;
  /// Shrunk by greedy point removal while the failure persists.
  Instance instance;
};

struct SuiteReport {
  std::string suite;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  std::vector<SuiteFailure> failures;  // sorted by sub-seed
  double elapsed_seconds = 0.0;

  [[nodiscard]] bool passed() const { return failures.empty(); }
};

const std::vector<PropertySuite>& builtin_suites();
/// Throws std::invalid_argument listing the available suites.
const PropertySuite& find_suite(const std::string& name);

/// Runs `trials` trials, trial i seeded by derive_seed(seed, i). Trials are
/// sharded over `workers` threads; results do not depend on the sharding.
SuiteReport run_property_suite(const PropertySuite& suite, std::size_t trials, std::uint64_t seed,
                               unsigned workers = 1);
SuiteReport run_property_suite(const std::string& name, std::size_t trials, std::uint64_t seed,
                               unsigned workers = 1);

/// Runs the check, turning exceptions into failure messages.
std::optional<std::string> run_check(const PropertySuite& suite, const Instance& instance);

/// Removes points one at a time as long as the check keeps failing.
Instance shrink_failure(const PropertySuite& suite, Instance instance);

/// Omits elapsed_seconds so that reports are reproducible byte for byte.
nlohmann::ordered_json to_json(const SuiteReport& report);

}  // namespace conefix
