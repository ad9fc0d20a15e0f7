#pragma once

#include "fdqubo/model.hpp"
#include "fdqubo/propagate.hpp"

namespace fdqubo {

struct LineBounds {
  Rational lo;
  Rational hi;
};

/// Range of `expr` (constant included) over the interval hulls of the domains.
LineBounds line_bounds(const AffineExpr& expr, const DomainTable& domains);
LineBounds line_bounds(const AffineExpr& expr, const QipModel& model);

/// Turns every `e <= 0` into an equation. With (l, u) the bounds of `e`:
/// l > 0 is inconsistent, u <= 0 is dropped, l = 0 becomes `e = 0`, and
/// otherwise a slack s in [0, -l] gives `e + s = 0`. Each inequality is first
/// multiplied by its denominator lcm so the slack stays integral.
Outcome<QipModel> eliminate_inequalities(const QipModel& model);

}  // namespace fdqubo
