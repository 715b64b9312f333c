#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vecmeasure/io.hpp"

namespace vecmeasure {

struct VerifyConfig {
  std::uint64_t seed = 42;
  std::size_t trials = 500;
  std::optional<double> tol;  // replaces the default tolerance of exact checks
  std::size_t threads = 0;    // 0: hardware concurrency, capped by VECMEASURE_THREADS
};

struct CheckStat {
  std::string name;
  std::size_t evaluated = 0;
  std::size_t failures = 0;
  double max_error = 0.0;
  double tolerance = 0.0;
};

struct Counterexample {
  std::size_t trial;
  std::string check;
  double error;
  double tolerance;
  io::json instance;
};

struct SuiteReport {
  std::string suite;
  std::uint64_t seed;
  std::size_t trials;
  std::vector<CheckStat> checks;
  std::vector<Counterexample> counterexamples;  // first failure of each failing trial, by trial index

  bool passed() const noexcept;
  const CheckStat* find(std::string_view check) const noexcept;
  io::json to_json(std::size_t max_counterexamples = 20) const;
};

std::span<const std::string_view> suite_names();

/// Runs one named suite; "all" is not accepted here. Throws InvalidArgument
/// for unknown names.
SuiteReport run_suite(std::string_view name, const VerifyConfig& cfg);

/// Expands "all" into every suite, in suite_names() order.
std::vector<SuiteReport> run_suites(std::string_view name, const VerifyConfig& cfg);

/// Worker count after applying cfg.threads and VECMEASURE_THREADS.
std::size_t worker_count(const VerifyConfig& cfg, std::size_t jobs);

}  // namespace vecmeasure
