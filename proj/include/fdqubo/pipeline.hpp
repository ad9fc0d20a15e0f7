#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fdqubo/binarize.hpp"
#include "fdqubo/propagate.hpp"
#include "fdqubo/qubofy.hpp"

namespace fdqubo {

struct CompileOptions {
  EncodingConfig encoding;
  std::optional<Rational> penalty;
  /// Round limit for propagation; 0 uses the default.
  std::size_t fixpoint_cap = 0;
};

struct StageStats {
  std::string stage;
  std::size_t variables = 0;
  std::size_t linear = 0;
  std::size_t products = 0;
  std::size_t substitutions = 0;
};

struct Compiled {
  QipModel model;  // binary stage
  Qubo qubo;
  Sidecar sidecar;
  std::vector<StageStats> stats;
  FixpointStats propagation;
};

StageStats stage_stats(const std::string& stage, const QipModel& model);

/// Slack variables, bounds propagation with singleton removal, canonical
/// domains, encoding, QUBO assembly. Expects a raw model.
Outcome<Compiled> compile(const QipModel& raw, const CompileOptions& options = {});

/// Stored entries over the n(n+1)/2 possible ones (0 for n = 0).
double matrix_density(const Qubo& q);

}  // namespace fdqubo
