#include "fdqubo/model.hpp"

#include <set>
#include <sstream>
#include <stdexcept>

namespace fdqubo {

VarId QipModel::add_variable(std::string name, Domain domain, VarKind kind) {
  VarId id = static_cast<VarId>(variables.size());
  variables.push_back({id, std::move(name), std::move(domain), kind, true});
  return id;
}

std::vector<VarId> QipModel::live_variables() const {
  std::vector<VarId> out;
  for (const auto& v : variables) {
    if (v.live) {
      out.push_back(v.id);
    }
  }
  return out;
}

std::optional<Inconsistent> QipModel::add_linear(AffineExpr expr, Relation relation) {
  if (!expr.is_constant()) {
    linear.push_back({std::move(expr), relation});
    return std::nullopt;
  }
  const Rational& c = expr.constant();
  bool holds = relation == Relation::eq_zero ? c.is_zero() : c <= 0;
  if (holds) {
    return std::nullopt;
  }
  return Inconsistent{"constant constraint " + describe(LinearConstraint{expr, relation}) + " is false"};
}

std::optional<Inconsistent> QipModel::substitute(VarId target, const AffineExpr& expr) {
  if (in_any_product(target)) {
    throw std::logic_error("cannot substitute " + var(target).name + ": it occurs in a product");
  }
  std::optional<Inconsistent> verdict;
  std::vector<LinearConstraint> kept;
  kept.reserve(linear.size());
  for (auto& c : linear) {
    if (!c.expr.substitute(target, expr) || !c.expr.is_constant()) {
      kept.push_back(std::move(c));
      continue;
    }
    bool holds = c.relation == Relation::eq_zero ? c.expr.constant().is_zero()
                                                 : c.expr.constant() <= 0;
    if (!holds && !verdict) {
      verdict = Inconsistent{"constraint reduces to " + describe(c) + " after fixing " +
                             var(target).name};
    }
  }
  linear = std::move(kept);
  objective.expr.substitute(target, expr);
  forest.add(target, expr);
  var(target).live = false;
  return verdict;
}

std::optional<std::size_t> QipModel::defining_product(VarId v) const {
  for (std::size_t k = 0; k < products.size(); ++k) {
    if (products[k].result == v) {
      return k;
    }
  }
  return std::nullopt;
}

bool QipModel::is_product_factor(VarId v) const {
  for (const auto& p : products) {
    if (p.has_factor(v)) {
      return true;
    }
  }
  return false;
}

bool QipModel::in_any_product(VarId v) const {
  return defining_product(v).has_value() || is_product_factor(v);
}

VarId QipModel::detach_result(std::size_t index) {
  const ProductConstraint p = products.at(index);
  const Domain& a = domain(p.lhs);
  const Domain& b = domain(p.rhs);
  auto [lo, hi] = p.is_square() ? square_hull(a.min(), a.max())
                                : product_hull(a.min(), a.max(), b.min(), b.max());
  VarId fresh = add_variable(var(p.result).name + "'", Domain::interval(lo, hi),
                             VarKind::product_result);
  products[index].result = fresh;
  AffineExpr link = AffineExpr::term(p.result);
  link.add_term(fresh, -1);
  linear.push_back({std::move(link), Relation::eq_zero});
  return fresh;
}

std::string QipModel::describe(const AffineExpr& expr) const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [id, c] : expr.terms()) {
    Rational mag = c.abs();
    if (first) {
      os << (c.sign() < 0 ? "-" : "");
    } else {
      os << (c.sign() < 0 ? " - " : " + ");
    }
    if (mag != 1) {
      os << mag << '*';
    }
    os << (id < variables.size() ? variables[id].name : "#" + std::to_string(id));
    first = false;
  }
  const Rational& k = expr.constant();
  if (first) {
    os << k;
  } else if (!k.is_zero()) {
    os << (k.sign() < 0 ? " - " : " + ") << k.abs();
  }
  return os.str();
}

std::string QipModel::describe(const LinearConstraint& c) const {
  return describe(c.expr) + (c.relation == Relation::eq_zero ? " = 0" : " <= 0");
}

std::string QipModel::describe(const ProductConstraint& p) const {
  return var(p.result).name + " = " + var(p.lhs).name + " * " + var(p.rhs).name;
}

std::vector<std::string> check_model(const QipModel& model) {
  std::vector<std::string> diags;
  const auto n = model.variables.size();
  auto known = [&](VarId id) { return id < n; };
  auto live = [&](VarId id) { return known(id) && model.variables[id].live; };

  for (std::size_t i = 0; i < n; ++i) {
    const auto& v = model.variables[i];
    if (v.id != i) {
      diags.push_back("variable '" + v.name + "' has id " + std::to_string(v.id) +
                      " at position " + std::to_string(i));
    }
    if (v.kind == VarKind::encoding_bit && !v.domain.is_binary()) {
      diags.push_back("encoding bit '" + v.name + "' has non-binary domain " + v.domain.str());
    }
    if (!v.live && !model.forest.defines(v.id)) {
      diags.push_back("retired variable '" + v.name + "' has no substitution");
    }
    if (v.live && model.forest.defines(v.id)) {
      diags.push_back("live variable '" + v.name + "' is also substituted");
    }
  }

  for (std::size_t j = 0; j < model.linear.size(); ++j) {
    const auto& c = model.linear[j];
    if (c.expr.is_constant()) {
      diags.push_back("linear constraint #" + std::to_string(j) + " has no variables");
    }
    for (const auto& [id, coeff] : c.expr.terms()) {
      if (!live(id)) {
        diags.push_back("linear constraint #" + std::to_string(j) + " uses dead variable " +
                        std::to_string(id));
      }
    }
    if (model.stage >= Stage::no_inequalities && c.relation == Relation::le_zero) {
      diags.push_back("stage violation: inequality " + model.describe(c) + " at stage " +
                      to_string(model.stage));
    }
  }

  std::set<VarId> results;
  for (std::size_t k = 0; k < model.products.size(); ++k) {
    const auto& p = model.products[k];
    if (!live(p.result) || !live(p.lhs) || !live(p.rhs)) {
      diags.push_back("product #" + std::to_string(k) + " uses a dead or unknown variable");
      continue;
    }
    if (!results.insert(p.result).second) {
      diags.push_back("variable '" + model.var(p.result).name + "' is the result of two products");
    }
    if (p.has_factor(p.result)) {
      diags.push_back("product " + model.describe(p) + " is self-referential");
    }
    for (std::size_t later = k; later < model.products.size(); ++later) {
      VarId r = model.products[later].result;
      if (later != k && p.has_factor(r)) {
        diags.push_back("ordering violation: product " + model.describe(p) + " uses '" +
                        model.var(r).name + "' defined by later product #" +
                        std::to_string(later));
      }
    }
  }

  for (const auto& [id, coeff] : model.objective.expr.terms()) {
    if (!live(id)) {
      diags.push_back("objective uses dead variable " + std::to_string(id));
    }
  }
  for (VarId id : model.outputs) {
    if (!known(id)) {
      diags.push_back("output refers to unknown variable " + std::to_string(id));
    }
  }
  for (const auto& s : model.forest.entries()) {
    for (const auto& [id, coeff] : s.expr.terms()) {
      if (!known(id)) {
        diags.push_back("substitution uses unknown variable " + std::to_string(id));
      }
    }
  }

  for (const auto& v : model.variables) {
    if (!v.live) {
      continue;
    }
    if (model.stage >= Stage::canonical && v.domain.min() != 0) {
      diags.push_back("stage violation: '" + v.name + "' has domain " + v.domain.str() +
                      " at stage " + to_string(model.stage));
    }
    if (model.stage == Stage::binary && !v.domain.is_binary()) {
      diags.push_back("stage violation: '" + v.name + "' has non-binary domain " +
                      v.domain.str());
    }
  }
  return diags;
}

std::string to_string(VarKind kind) {
  switch (kind) {
    case VarKind::original: return "original";
    case VarKind::product_result: return "product-result";
    case VarKind::slack: return "slack";
    case VarKind::shifted: return "shifted";
    case VarKind::encoding_bit: return "encoding-bit";
    case VarKind::intermediate: return "intermediate";
  }
  return "?";
}

std::optional<VarKind> var_kind_from_string(const std::string& text) {
  for (auto k : {VarKind::original, VarKind::product_result, VarKind::slack, VarKind::shifted,
                 VarKind::encoding_bit, VarKind::intermediate}) {
    if (to_string(k) == text) {
      return k;
    }
  }
  return std::nullopt;
}

std::string to_string(Sense sense) {
  switch (sense) {
    case Sense::minimize: return "minimize";
    case Sense::maximize: return "maximize";
    case Sense::satisfy: return "satisfy";
  }
  return "?";
}

std::optional<Sense> sense_from_string(const std::string& text) {
  for (auto s : {Sense::minimize, Sense::maximize, Sense::satisfy}) {
    if (to_string(s) == text) {
      return s;
    }
  }
  return std::nullopt;
}

std::string to_string(Stage stage) {
  switch (stage) {
    case Stage::raw: return "raw";
    case Stage::no_inequalities: return "no-inequalities";
    case Stage::canonical: return "canonical";
    case Stage::binary: return "binary";
  }
  return "?";
}

}  // namespace fdqubo
