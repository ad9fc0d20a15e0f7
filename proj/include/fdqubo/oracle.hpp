#pragma once

#include <cstdint>
#include <optional>

#include "fdqubo/model.hpp"
#include "fdqubo/solve.hpp"

namespace fdqubo {

constexpr std::uint64_t kOracleLimit = 10'000'000;

struct OracleResult {
  bool feasible = false;
  /// Minimising point over the live variables (lowest in enumeration order).
  Assignment assignment;
  Rational objective;
};

/// Enumerates the Cartesian product of the live variable domains of an
/// untransformed model and checks every constraint directly. Throws
/// GuardExceeded when the product of domain sizes exceeds `limit`.
OracleResult brute_force_qip(const QipModel& model, std::uint64_t limit = kOracleLimit);

struct PointCheck {
  bool feasible = false;
  Rational objective;
  /// First violated domain or constraint, for reports.
  std::string violation;
};

/// Evaluates `point` (which must assign every live variable) against the
/// model's domains, constraints and objective.
PointCheck check_point(const QipModel& model, const Assignment& point);

}  // namespace fdqubo
