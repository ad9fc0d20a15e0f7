#include "fdqubo/oracle.hpp"

namespace fdqubo {

namespace {

bool linear_holds(const LinearConstraint& c, const Assignment& point) {
  Rational v = eval_affine(c.expr, point);
  return c.relation == Relation::eq_zero ? v.is_zero() : v <= 0;
}

bool product_holds(const ProductConstraint& p, const Assignment& point) {
  return static_cast<__int128>(point.at(p.result)) ==
         static_cast<__int128>(point.at(p.lhs)) * point.at(p.rhs);
}

}  // namespace

PointCheck check_point(const QipModel& model, const Assignment& point) {
  PointCheck r;
  for (VarId v : model.live_variables()) {
    auto it = point.find(v);
    if (it == point.end()) {
      throw std::out_of_range("point does not assign '" + model.var(v).name + "'");
    }
    if (!model.domain(v).contains(it->second)) {
      r.violation = model.var(v).name + " = " + std::to_string(it->second) + " outside " +
                    model.domain(v).str();
      return r;
    }
  }
  for (const auto& c : model.linear) {
    if (!linear_holds(c, point)) {
      r.violation = model.describe(c);
      return r;
    }
  }
  for (const auto& p : model.products) {
    if (!product_holds(p, point)) {
      r.violation = model.describe(p);
      return r;
    }
  }
  r.feasible = true;
  r.objective = eval_affine(model.objective.expr, point);
  return r;
}

OracleResult brute_force_qip(const QipModel& model, std::uint64_t limit) {
  const std::vector<VarId> vars = model.live_variables();
  std::vector<std::vector<std::int64_t>> values;
  std::uint64_t space = 1;
  for (VarId v : vars) {
    const Domain& d = model.domain(v);
    if (d.size() > limit || space > limit / d.size()) {
      throw GuardExceeded("search space of the source model exceeds " + std::to_string(limit) +
                          " points");
    }
    space *= d.size();
    values.push_back(d.values());
  }

  OracleResult best;
  std::vector<std::size_t> digit(vars.size(), 0);
  Assignment point;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    point[vars[i]] = values[i][0];
  }
  while (true) {
    bool ok = true;
    for (const auto& c : model.linear) {
      if (!linear_holds(c, point)) {
        ok = false;
        break;
      }
    }
    if (ok) {
      for (const auto& p : model.products) {
        if (!product_holds(p, point)) {
          ok = false;
          break;
        }
      }
    }
    if (ok) {
      Rational obj = eval_affine(model.objective.expr, point);
      if (!best.feasible || obj < best.objective) {
        best.feasible = true;
        best.objective = obj;
        best.assignment = point;
      }
    }
    std::size_t i = 0;
    for (; i < vars.size(); ++i) {
      if (++digit[i] < values[i].size()) {
        point[vars[i]] = values[i][digit[i]];
        break;
      }
      digit[i] = 0;
      point[vars[i]] = values[i][0];
    }
    if (i == vars.size()) {
      break;
    }
  }
  return best;
}

}  // namespace fdqubo
