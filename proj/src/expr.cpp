#include "fdqubo/expr.hpp"

#include <stdexcept>
#include <string>

namespace fdqubo {

AffineExpr AffineExpr::term(VarId var, const Rational& coeff) {
  AffineExpr e;
  e.add_term(var, coeff);
  return e;
}

Rational AffineExpr::coeff(VarId var) const {
  auto it = terms_.find(var);
  return it == terms_.end() ? Rational() : it->second;
}

std::vector<VarId> AffineExpr::variables() const {
  std::vector<VarId> out;
  out.reserve(terms_.size());
  for (const auto& [var, c] : terms_) {
    out.push_back(var);
  }
  return out;
}

AffineExpr& AffineExpr::add_term(VarId var, const Rational& coeff) {
  if (coeff.is_zero()) {
    return *this;
  }
  auto [it, inserted] = terms_.try_emplace(var, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second.is_zero()) {
      terms_.erase(it);
    }
  }
  return *this;
}

AffineExpr& AffineExpr::add_constant(const Rational& value) {
  constant_ += value;
  return *this;
}

AffineExpr& AffineExpr::add(const AffineExpr& other, const Rational& factor) {
  if (factor.is_zero()) {
    return *this;
  }
  for (const auto& [var, c] : other.terms_) {
    add_term(var, c * factor);
  }
  constant_ += other.constant_ * factor;
  return *this;
}

AffineExpr& AffineExpr::scale(const Rational& factor) {
  if (factor.is_zero()) {
    terms_.clear();
    constant_ = 0;
    return *this;
  }
  for (auto& [var, c] : terms_) {
    c *= factor;
  }
  constant_ *= factor;
  return *this;
}

bool AffineExpr::substitute(VarId var, const AffineExpr& replacement) {
  auto it = terms_.find(var);
  if (it == terms_.end()) {
    return false;
  }
  Rational c = it->second;
  terms_.erase(it);
  add(replacement, c);
  return true;
}

Integer AffineExpr::denominator_lcm() const {
  Integer l = constant_.denominator();
  for (const auto& [var, c] : terms_) {
    l = lcm(l, c.denominator());
  }
  return l;
}

Rational eval_affine(const AffineExpr& expr, const Assignment& assignment) {
  Rational sum = expr.constant();
  for (const auto& [var, c] : expr.terms()) {
    auto it = assignment.find(var);
    if (it == assignment.end()) {
      throw std::out_of_range("variable " + std::to_string(var) + " is unassigned");
    }
    sum += c * Rational(it->second);
  }
  return sum;
}

}  // namespace fdqubo
