#include "fdqubo/canonicalize.hpp"

#include <stdexcept>

namespace fdqubo {

QipModel shift_variable(const QipModel& model, VarId x) {
  if (model.stage != Stage::no_inequalities) {
    throw std::invalid_argument("shift_variable expects stage no-inequalities, got " +
                                to_string(model.stage));
  }
  if (!model.var(x).live) {
    throw std::invalid_argument("shift_variable: '" + model.var(x).name + "' is not live");
  }
  if (model.defining_product(x)) {
    throw std::invalid_argument("shift_variable: '" + model.var(x).name +
                                "' is a product result; shift its factors instead");
  }
  const Domain dx = model.domain(x);
  const std::int64_t m = dx.min();
  if (m == 0) {
    throw std::invalid_argument("shift_variable: '" + model.var(x).name + "' already starts at 0");
  }

  QipModel out = model;
  const Domain shifted = dx.shifted(-m);
  const VarId xs = out.add_variable(out.var(x).name + "'", shifted, VarKind::shifted);

  for (std::size_t k = 0; k < out.products.size(); ++k) {
    const ProductConstraint p = out.products[k];
    if (!p.has_factor(x)) {
      continue;
    }
    AffineExpr link = AffineExpr::term(p.result);
    ProductConstraint next;
    std::pair<std::int64_t, std::int64_t> hull;
    if (p.is_square()) {
      hull = square_hull(shifted.min(), shifted.max());
      next = {0, xs, xs};
      link.add_term(xs, Rational(-2 * m));
      link.add_constant(-Rational(m) * Rational(m));
    } else {
      const VarId w = p.lhs == x ? p.rhs : p.lhs;
      const Domain& dw = out.domain(w);
      hull = product_hull(shifted.min(), shifted.max(), dw.min(), dw.max());
      next = {0, xs, w};
      link.add_term(w, Rational(-m));
    }
    next.result = out.add_variable(out.var(p.result).name + "'",
                                   Domain::interval(hull.first, hull.second),
                                   VarKind::product_result);
    link.add_term(next.result, -1);
    out.products[k] = next;
    out.linear.push_back({std::move(link), Relation::eq_zero});
  }

  AffineExpr def = AffineExpr::term(xs);
  def.add_constant(Rational(m));
  if (auto bad = out.substitute(x, def)) {
    // A shift is a bijection, so constraints cannot become false here.
    throw std::logic_error("shift of '" + out.var(x).name + "' produced " + bad->reason);
  }
  return out;
}

namespace {

bool off_zero(const QipModel& m, VarId v) { return m.var(v).live && m.domain(v).min() != 0; }

}  // namespace

QipModel canonicalize_all(const QipModel& model) {
  if (model.stage != Stage::no_inequalities) {
    throw std::invalid_argument("canonicalize_all expects stage no-inequalities, got " +
                                to_string(model.stage));
  }
  QipModel m = model;
  while (true) {
    std::optional<VarId> pick;
    for (const auto& v : m.variables) {
      if (off_zero(m, v.id) && m.is_product_factor(v.id) && !m.defining_product(v.id)) {
        pick = v.id;
        break;
      }
    }
    if (!pick) {
      for (std::size_t k = 0; k < m.products.size() && !pick; ++k) {
        const auto& p = m.products[k];
        if (off_zero(m, p.result) && !off_zero(m, p.lhs) && !off_zero(m, p.rhs)) {
          pick = p.result;
          m.detach_result(k);
        }
      }
    }
    if (!pick) {
      for (const auto& v : m.variables) {
        if (off_zero(m, v.id)) {
          pick = v.id;
          break;
        }
      }
    }
    if (!pick) {
      break;
    }
    if (m.defining_product(*pick)) {
      throw std::logic_error("canonicalize_all: no shiftable variable left for '" +
                             m.var(*pick).name + "'");
    }
    m = shift_variable(m, *pick);
  }
  m.stage = Stage::canonical;
  return m;
}

}  // namespace fdqubo
