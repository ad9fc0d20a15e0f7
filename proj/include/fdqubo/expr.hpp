#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "fdqubo/rational.hpp"

namespace fdqubo {

using VarId = std::uint32_t;
using Assignment = std::map<VarId, std::int64_t>;

/// `sum coeff_i * x_i + constant` with exact coefficients. Zero
/// coefficients are never stored.
class AffineExpr {
 public:
  using Terms = std::map<VarId, Rational>;

  AffineExpr() = default;
  explicit AffineExpr(Rational constant) : constant_(std::move(constant)) {}

  static AffineExpr term(VarId var, const Rational& coeff = 1);

  const Terms& terms() const { return terms_; }
  const Rational& constant() const { return constant_; }
  bool is_constant() const { return terms_.empty(); }
  bool contains(VarId var) const { return terms_.count(var) != 0; }
  Rational coeff(VarId var) const;
  std::vector<VarId> variables() const;

  AffineExpr& add_term(VarId var, const Rational& coeff);
  AffineExpr& add_constant(const Rational& value);
  AffineExpr& add(const AffineExpr& other, const Rational& factor = 1);
  AffineExpr& scale(const Rational& factor);

  /// Replaces `var` by `replacement`. Returns false if `var` did not occur.
  bool substitute(VarId var, const AffineExpr& replacement);

  /// Least common multiple of all coefficient and constant denominators.
  Integer denominator_lcm() const;

  friend bool operator==(const AffineExpr& a, const AffineExpr& b) {
    return a.constant_ == b.constant_ && a.terms_ == b.terms_;
  }

 private:
  Terms terms_;
  Rational constant_;
};

/// Exact value of `expr` under `assignment`. Throws std::out_of_range if a
/// variable of `expr` is unassigned.
Rational eval_affine(const AffineExpr& expr, const Assignment& assignment);

}  // namespace fdqubo
