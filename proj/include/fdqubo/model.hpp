#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fdqubo/domain.hpp"
#include "fdqubo/expr.hpp"
#include "fdqubo/outcome.hpp"
#include "fdqubo/substitution.hpp"

namespace fdqubo {

enum class VarKind { original, product_result, slack, shifted, encoding_bit, intermediate };

struct Variable {
  VarId id = 0;
  std::string name;
  Domain domain = Domain::binary();
  VarKind kind = VarKind::original;
  /// False once the variable has been substituted away.
  bool live = true;
};

enum class Relation { eq_zero, le_zero };

/// `expr = 0` or `expr <= 0`.
struct LinearConstraint {
  AffineExpr expr;
  Relation relation = Relation::eq_zero;
};

/// `result = lhs * rhs`.
struct ProductConstraint {
  VarId result = 0;
  VarId lhs = 0;
  VarId rhs = 0;

  bool is_square() const { return lhs == rhs; }
  bool has_factor(VarId v) const { return lhs == v || rhs == v; }
};

enum class Sense { minimize, maximize, satisfy };

/// Always minimised; `sense` only records what the source asked for, so a
/// maximisation is stored negated.
struct Objective {
  AffineExpr expr;
  Sense sense = Sense::satisfy;
};

/// Pipeline position. Each stage implies the invariants of the earlier ones.
enum class Stage { raw = 0, no_inequalities = 1, canonical = 2, binary = 3 };

/// Finite-domain quadratic integer program plus the substitutions that
/// recover eliminated variables. Variables are never removed from the
/// table, only retired, so ids stay dense.
struct QipModel {
  std::vector<Variable> variables;
  std::vector<LinearConstraint> linear;
  std::vector<ProductConstraint> products;
  Objective objective;
  std::vector<VarId> outputs;
  SubstitutionForest forest;
  Stage stage = Stage::raw;

  VarId add_variable(std::string name, Domain domain, VarKind kind);
  const Variable& var(VarId id) const { return variables.at(id); }
  Variable& var(VarId id) { return variables.at(id); }
  const Domain& domain(VarId id) const { return var(id).domain; }
  std::vector<VarId> live_variables() const;

  /// Adds a constraint; an expression without variables is decided on the
  /// spot and either dropped or reported as inconsistent.
  std::optional<Inconsistent> add_linear(AffineExpr expr, Relation relation);

  /// Replaces `var` everywhere (linear constraints and objective), retires
  /// it and records `var := expr`. `var` must not occur in a product.
  std::optional<Inconsistent> substitute(VarId var, const AffineExpr& expr);

  /// Index of the product whose result is `var`.
  std::optional<std::size_t> defining_product(VarId var) const;
  bool is_product_factor(VarId var) const;
  bool in_any_product(VarId var) const;

  /// Gives product `index` a fresh result variable with the interval hull
  /// of its factors and links the old result by `old - fresh = 0`, so the
  /// old result only occurs linearly afterwards. Returns the fresh id.
  VarId detach_result(std::size_t index);

  std::string describe(const AffineExpr& expr) const;
  std::string describe(const LinearConstraint& c) const;
  std::string describe(const ProductConstraint& p) const;
};

/// Checks type and stage invariants. Empty iff well formed.
std::vector<std::string> check_model(const QipModel& model);

std::string to_string(VarKind kind);
std::optional<VarKind> var_kind_from_string(const std::string& text);
std::string to_string(Sense sense);
std::optional<Sense> sense_from_string(const std::string& text);
std::string to_string(Stage stage);

}  // namespace fdqubo
