#include "fdqubo/qubo.hpp"

#include <stdexcept>

namespace fdqubo {

namespace {

template <class Map, class Key>
void accumulate(Map& map, const Key& key, const Rational& value) {
  if (value.is_zero()) {
    return;
  }
  auto [it, fresh] = map.try_emplace(key, value);
  if (!fresh) {
    it->second += value;
    if (it->second.is_zero()) {
      map.erase(it);
    }
  }
}

}  // namespace

QuadExpr QuadExpr::from_affine(const AffineExpr& expr) {
  QuadExpr q;
  for (const auto& [v, c] : expr.terms()) {
    q.add_linear(v, c);
  }
  q.add_constant(expr.constant());
  return q;
}

QuadExpr QuadExpr::square(const AffineExpr& expr) {
  QuadExpr q;
  const auto& terms = expr.terms();
  const Rational& k = expr.constant();
  for (auto it = terms.begin(); it != terms.end(); ++it) {
    const auto& [v, a] = *it;
    q.add_linear(v, a * a + Rational(2) * a * k);
    for (auto jt = std::next(it); jt != terms.end(); ++jt) {
      q.add_quadratic(v, jt->first, Rational(2) * a * jt->second);
    }
  }
  q.add_constant(k * k);
  return q;
}

QuadExpr& QuadExpr::add_linear(VarId var, const Rational& coeff) {
  accumulate(linear_, var, coeff);
  return *this;
}

QuadExpr& QuadExpr::add_quadratic(VarId a, VarId b, const Rational& coeff) {
  if (a == b) {
    return add_linear(a, coeff);
  }
  accumulate(quadratic_, a < b ? Pair{a, b} : Pair{b, a}, coeff);
  return *this;
}

QuadExpr& QuadExpr::add_constant(const Rational& value) {
  constant_ += value;
  return *this;
}

QuadExpr& QuadExpr::add(const QuadExpr& other, const Rational& factor) {
  for (const auto& [v, c] : other.linear_) {
    add_linear(v, c * factor);
  }
  for (const auto& [p, c] : other.quadratic_) {
    add_quadratic(p.first, p.second, c * factor);
  }
  constant_ += other.constant_ * factor;
  return *this;
}

Rational QuadExpr::evaluate(const Assignment& bits) const {
  Rational sum = constant_;
  for (const auto& [v, c] : linear_) {
    if (bits.at(v) != 0) {
      sum += c * Rational(bits.at(v));
    }
  }
  for (const auto& [p, c] : quadratic_) {
    sum += c * Rational(bits.at(p.first) * bits.at(p.second));
  }
  return sum;
}

Qubo normalize(std::size_t n, const std::vector<QuboEntry>& raw, Rational offset, Rational scale) {
  Qubo q;
  q.n = n;
  q.offset = std::move(offset);
  q.scale = std::move(scale);
  for (const auto& e : raw) {
    if (e.i >= n || e.j >= n) {
      throw std::out_of_range("QUBO entry (" + std::to_string(e.i) + ", " + std::to_string(e.j) +
                              ") outside " + std::to_string(n) + " variables");
    }
    accumulate(q.entries, std::pair{std::min(e.i, e.j), std::max(e.i, e.j)}, e.weight);
  }
  return q;
}

Assignment decode(const Sidecar& sidecar, const Bits& bits) {
  if (bits.size() != sidecar.qubo_index.size()) {
    throw std::invalid_argument("expected " + std::to_string(sidecar.qubo_index.size()) +
                                " bits, got " + std::to_string(bits.size()));
  }
  Assignment leaves;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    leaves[sidecar.qubo_index[i]] = bits[i];
  }
  return sidecar.forest.resolve(leaves);
}

}  // namespace fdqubo
