#pragma once

#include <optional>

#include "fdqubo/deinequalify.hpp"
#include "fdqubo/qubo.hpp"

namespace fdqubo {

struct ScaledModel {
  QipModel model;
  /// Source objective units per unit of the scaled objective.
  Rational scale{1};
};

/// Multiplies each linear constraint by the lcm of its denominators and the
/// objective by one factor L, recorded as scale = 1/L.
ScaledModel integer_scale(const QipModel& model);

/// Bounds of the objective over the domains (same formula as line_bounds).
LineBounds objective_span(const AffineExpr& objective, const DomainTable& domains);

/// (hi - lo) / epsilon + 1.
Rational penalty_factor(const LineBounds& span, const Rational& epsilon = 1);

/// Penalty for `e = 0` over bits. A line that cannot go negative (or cannot
/// go positive) is used as is (or negated) instead of squared.
Outcome<QuadExpr> equation_penalty(const LinearConstraint& eq, const DomainTable& domains);

/// Rosenberg term x*y - 2*x*z - 2*y*z + 3*z for z = x * y.
QuadExpr quadratize_product(const ProductConstraint& product);

struct AssembleOptions {
  /// Replaces the computed penalty factor.
  std::optional<Rational> penalty;
};

struct Assembled {
  Qubo qubo;
  Sidecar sidecar;
};

/// Objective plus C times every penalty, indexed by live variable id order.
/// Throws std::invalid_argument unless the model is at stage binary.
Outcome<Assembled> assemble(const QipModel& model, const AssembleOptions& options = {});

}  // namespace fdqubo
