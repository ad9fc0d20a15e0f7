#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "fdqubo/model.hpp"

namespace fdqubo {

/// Quadratic pseudo-boolean expression. Squares fold into linear terms since
/// b*b = b, so quadratic keys always hold two distinct variables (lo < hi).
class QuadExpr {
 public:
  using Pair = std::pair<VarId, VarId>;

  static QuadExpr from_affine(const AffineExpr& expr);
  /// (expr)^2 over binary variables.
  static QuadExpr square(const AffineExpr& expr);

  QuadExpr& add_linear(VarId var, const Rational& coeff);
  QuadExpr& add_quadratic(VarId a, VarId b, const Rational& coeff);
  QuadExpr& add_constant(const Rational& value);
  QuadExpr& add(const QuadExpr& other, const Rational& factor = 1);

  const std::map<VarId, Rational>& linear() const { return linear_; }
  const std::map<Pair, Rational>& quadratic() const { return quadratic_; }
  const Rational& constant() const { return constant_; }

  Rational evaluate(const Assignment& bits) const;

 private:
  std::map<VarId, Rational> linear_;
  std::map<Pair, Rational> quadratic_;
  Rational constant_;
};

using Bits = std::vector<std::uint8_t>;

/// Normalized QUBO: entries (i, j) with i <= j, the diagonal holding linear
/// weights, no stored zeros. Energy is `sum Q_ij b_i b_j + offset`; one unit
/// of energy is `scale` units of the (minimised) source objective.
struct Qubo {
  std::size_t n = 0;
  std::map<std::pair<std::size_t, std::size_t>, Rational> entries;
  Rational offset;
  Rational scale{1};

  friend bool operator==(const Qubo&, const Qubo&) = default;
};

struct QuboEntry {
  std::size_t i = 0;
  std::size_t j = 0;
  Rational weight;
};

/// Folds (i, j) with i > j onto (j, i), sums duplicates and drops zeros.
/// Throws std::out_of_range for an index >= n.
Qubo normalize(std::size_t n, const std::vector<QuboEntry>& raw, Rational offset = 0,
               Rational scale = 1);

/// Everything needed to turn QUBO bits back into source values.
struct Sidecar {
  std::vector<Variable> variables;
  /// QUBO index -> variable id.
  std::vector<VarId> qubo_index;
  SubstitutionForest forest;
  std::vector<VarId> outputs;
  Sense objective_sense = Sense::satisfy;
  Rational penalty{1};
};

/// Values of every variable reachable from the bits. Throws
/// std::invalid_argument if the bit count does not match the index map.
Assignment decode(const Sidecar& sidecar, const Bits& bits);

}  // namespace fdqubo
