#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fdqubo/oracle.hpp"
#include "fdqubo/pipeline.hpp"

namespace fdqubo {

struct RoundtripReport {
  bool oracle_feasible = false;
  std::optional<Rational> oracle_objective;

  /// Set when compilation itself proved the model inconsistent.
  std::optional<std::string> inconsistent;

  std::size_t bits = 0;
  std::optional<Rational> min_energy;
  std::uint64_t argmin_count = 0;
  bool decoded_feasible = false;
  std::optional<Rational> decoded_objective;
  std::string decoded_violation;
  /// Decoded objective equals the oracle optimum and min energy * scale.
  bool objective_match = false;

  std::vector<StageStats> stages;
  bool pass = false;
};

/// Compiles `raw`, minimises the QUBO exhaustively, decodes the argmin and
/// compares it with brute_force_qip on `raw`. Throws GuardExceeded when
/// either search is too large.
RoundtripReport roundtrip_check(const QipModel& raw, const CompileOptions& options = {},
                                std::size_t bit_limit = kExhaustiveLimit,
                                std::uint64_t oracle_limit = kOracleLimit);

/// Objective in source units for an energy: energy * scale.
Rational energy_to_objective(const Qubo& q, const Rational& energy);

}  // namespace fdqubo
