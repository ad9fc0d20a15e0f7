#include "fdqubo/deinequalify.hpp"

#include <stdexcept>

namespace fdqubo {

LineBounds line_bounds(const AffineExpr& expr, const DomainTable& domains) {
  LineBounds b{expr.constant(), expr.constant()};
  for (const auto& [var, a] : expr.terms()) {
    const Domain& d = domains.at(var);
    Rational at_min = a * Rational(d.min());
    Rational at_max = a * Rational(d.max());
    if (a.sign() > 0) {
      b.lo += at_min;
      b.hi += at_max;
    } else {
      b.lo += at_max;
      b.hi += at_min;
    }
  }
  return b;
}

LineBounds line_bounds(const AffineExpr& expr, const QipModel& model) {
  return line_bounds(expr, domains_of(model));
}

Outcome<QipModel> eliminate_inequalities(const QipModel& model) {
  if (model.stage != Stage::raw) {
    throw std::invalid_argument("eliminate_inequalities expects a raw model, got stage " +
                                to_string(model.stage));
  }
  QipModel m = model;
  std::vector<LinearConstraint> pending = std::move(m.linear);
  m.linear.clear();
  const DomainTable domains = domains_of(model);
  std::size_t slack_count = 0;

  for (auto& c : pending) {
    if (c.relation == Relation::eq_zero) {
      m.linear.push_back(std::move(c));
      continue;
    }
    AffineExpr e = c.expr;
    e.scale(Rational(e.denominator_lcm()));
    auto [l, u] = line_bounds(e, domains);
    if (l > 0) {
      return Inconsistent{model.describe(c) + " cannot be satisfied (lower bound " + l.str() + ")"};
    }
    if (u <= 0) {
      continue;
    }
    if (l.is_zero()) {
      m.linear.push_back({std::move(e), Relation::eq_zero});
      continue;
    }
    std::int64_t top = to_int64(-l.ceil());
    VarId s = m.add_variable("s#" + std::to_string(slack_count++), Domain::interval(0, top),
                             VarKind::slack);
    e.add_term(s, 1);
    m.linear.push_back({std::move(e), Relation::eq_zero});
  }
  m.stage = Stage::no_inequalities;
  return m;
}

}  // namespace fdqubo
