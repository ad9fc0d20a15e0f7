#include "fdqubo/qubofy.hpp"

#include <stdexcept>

namespace fdqubo {

ScaledModel integer_scale(const QipModel& model) {
  ScaledModel out{model, Rational(1)};
  for (auto& c : out.model.linear) {
    c.expr.scale(Rational(c.expr.denominator_lcm()));
  }
  Integer l = out.model.objective.expr.denominator_lcm();
  if (l != 1) {
    out.model.objective.expr.scale(Rational(l));
    out.scale = Rational(Integer(1), l);
  }
  return out;
}

LineBounds objective_span(const AffineExpr& objective, const DomainTable& domains) {
  return line_bounds(objective, domains);
}

Rational penalty_factor(const LineBounds& span, const Rational& epsilon) {
  if (epsilon <= 0) {
    throw std::invalid_argument("epsilon must be positive");
  }
  return (span.hi - span.lo) / epsilon + 1;
}

Outcome<QuadExpr> equation_penalty(const LinearConstraint& eq, const DomainTable& domains) {
  if (eq.relation != Relation::eq_zero) {
    throw std::invalid_argument("equation_penalty expects an equation");
  }
  for (const auto& [v, c] : eq.expr.terms()) {
    if (!domains.at(v).is_binary()) {
      throw std::invalid_argument("equation_penalty expects binary variables");
    }
  }
  auto [l, u] = line_bounds(eq.expr, domains);
  if (l > 0 || u < 0) {
    return Inconsistent{"equation can never hold (range " + l.str() + ".." + u.str() + ")"};
  }
  if (l.is_zero()) {
    return QuadExpr::from_affine(eq.expr);
  }
  if (u.is_zero()) {
    AffineExpr negated = eq.expr;
    negated.scale(-1);
    return QuadExpr::from_affine(negated);
  }
  return QuadExpr::square(eq.expr);
}

QuadExpr quadratize_product(const ProductConstraint& p) {
  QuadExpr q;
  q.add_quadratic(p.lhs, p.rhs, 1);
  q.add_quadratic(p.lhs, p.result, -2);
  q.add_quadratic(p.rhs, p.result, -2);
  q.add_linear(p.result, 3);
  return q;
}

Outcome<Assembled> assemble(const QipModel& model, const AssembleOptions& options) {
  if (model.stage != Stage::binary) {
    throw std::invalid_argument("assemble expects a binary model, got stage " +
                                to_string(model.stage));
  }
  ScaledModel scaled = integer_scale(model);
  const QipModel& m = scaled.model;
  const DomainTable domains = domains_of(m);

  const Rational c = options.penalty ? *options.penalty
                                     : penalty_factor(objective_span(m.objective.expr, domains));
  if (c <= 0) {
    throw std::invalid_argument("penalty factor must be positive");
  }

  QuadExpr total = QuadExpr::from_affine(m.objective.expr);
  for (const auto& eq : m.linear) {
    auto pen = equation_penalty(eq, domains);
    if (!pen) {
      return Inconsistent{m.describe(eq) + ": " + pen.inconsistent().reason};
    }
    total.add(pen.value(), c);
  }
  for (const auto& p : m.products) {
    total.add(quadratize_product(p), c);
  }

  Assembled out;
  std::map<VarId, std::size_t> index;
  for (VarId v : m.live_variables()) {
    index[v] = out.sidecar.qubo_index.size();
    out.sidecar.qubo_index.push_back(v);
  }
  std::vector<QuboEntry> raw;
  for (const auto& [v, w] : total.linear()) {
    raw.push_back({index.at(v), index.at(v), w});
  }
  for (const auto& [p, w] : total.quadratic()) {
    raw.push_back({index.at(p.first), index.at(p.second), w});
  }
  out.qubo = normalize(index.size(), raw, total.constant(), scaled.scale);

  out.sidecar.variables = m.variables;
  out.sidecar.forest = m.forest;
  out.sidecar.outputs = m.outputs;
  out.sidecar.objective_sense = m.objective.sense;
  out.sidecar.penalty = c;
  return out;
}

}  // namespace fdqubo
