#pragma once

// Random small integer programs for property and acceptance tests.

#include <algorithm>
#include <cstdint>
#include <random>

#include "fdqubo/model.hpp"

namespace fdqubo::testing {

struct GeneratorConfig {
  int max_vars = 3;
  std::int64_t max_domain = 7;
  int max_linear = 3;
  int max_products = 1;
  std::int64_t max_denominator = 3;
  std::int64_t max_numerator = 3;
  /// Chance of planting a point so that the instance is usually feasible.
  double plant = 0.8;
  bool allow_sets = true;
};

class Generator {
 public:
  explicit Generator(std::uint64_t seed, GeneratorConfig config = {})
      : rng_(seed), cfg_(config) {}

  QipModel next() {
    QipModel m;
    const int nvars = uniform(1, cfg_.max_vars);
    const bool product = cfg_.max_products > 0 && nvars >= 2 && coin(0.5);
    const int declared = product ? nvars - 1 : nvars;

    for (int i = 0; i < declared; ++i) {
      m.add_variable("x" + std::to_string(i), random_domain(), VarKind::original);
    }
    if (product) {
      VarId a = static_cast<VarId>(uniform(0, declared - 1));
      VarId b = coin(0.3) ? a : static_cast<VarId>(uniform(0, declared - 1));
      const Domain& da = m.domain(a);
      const Domain& db = m.domain(b);
      auto [lo, hi] = a == b ? square_hull(da.min(), da.max())
                             : product_hull(da.min(), da.max(), db.min(), db.max());
      // A window of at most max_domain values inside the hull.
      std::int64_t width = std::min<std::int64_t>(hi - lo + 1, cfg_.max_domain);
      std::int64_t start = lo + uniform64(0, (hi - lo + 1) - width);
      VarId y = m.add_variable("y", Domain::interval(start, start + width - 1),
                               VarKind::product_result);
      m.products.push_back({y, a, b});
    }

    Assignment planted;
    for (const auto& v : m.variables) {
      auto vals = v.domain.values();
      planted[v.id] = vals[static_cast<std::size_t>(uniform64(0, vals.size() - 1))];
    }
    for (const auto& p : m.products) {
      planted[p.result] = planted[p.lhs] * planted[p.rhs];
    }
    const bool plant = coin(cfg_.plant);

    const int nlin = uniform(0, cfg_.max_linear);
    for (int j = 0; j < nlin; ++j) {
      AffineExpr e;
      for (const auto& v : m.variables) {
        if (coin(0.7)) {
          e.add_term(v.id, random_coeff());
        }
      }
      if (e.is_constant()) {
        e.add_term(static_cast<VarId>(uniform(0, nvars - 1)), random_coeff());
      }
      const bool eq = coin(0.4);
      Rational at_point;
      for (const auto& [v, c] : e.terms()) {
        at_point += c * Rational(planted.count(v) ? planted[v] : 0);
      }
      Rational constant = -at_point;
      if (!eq) {
        constant -= Rational(uniform(0, 4), uniform(1, static_cast<int>(cfg_.max_denominator)));
      }
      if (!plant) {
        constant += random_coeff();
      }
      e.add_constant(constant);
      // Every expression has a term, so this never decides a constant.
      (void)m.add_linear(std::move(e), eq ? Relation::eq_zero : Relation::le_zero);
    }

    const int kind = uniform(0, 2);
    m.objective.sense = kind == 0 ? Sense::satisfy : kind == 1 ? Sense::minimize : Sense::maximize;
    if (m.objective.sense != Sense::satisfy) {
      for (const auto& v : m.variables) {
        if (coin(0.7)) {
          m.objective.expr.add_term(v.id, random_coeff());
        }
      }
      if (m.objective.sense == Sense::maximize) {
        m.objective.expr.scale(-1);
      }
    }
    for (const auto& v : m.variables) {
      m.outputs.push_back(v.id);
    }
    return m;
  }

 private:
  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  std::int64_t uniform64(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng_);
  }
  bool coin(double p) { return std::bernoulli_distribution(p)(rng_); }

  Rational random_coeff() {
    std::int64_t num = 0;
    while (num == 0) {
      num = uniform64(-cfg_.max_numerator, cfg_.max_numerator);
    }
    return Rational(num, uniform64(1, cfg_.max_denominator));
  }

  Domain random_domain() {
    const std::int64_t size = uniform64(2, cfg_.max_domain);
    const std::int64_t lo = uniform64(-3, 3);
    if (cfg_.allow_sets && size >= 3 && coin(0.2)) {
      std::vector<std::int64_t> pool;
      for (std::int64_t v = lo; v < lo + 2 * size; ++v) {
        pool.push_back(v);
      }
      std::shuffle(pool.begin(), pool.end(), rng_);
      pool.resize(static_cast<std::size_t>(size));
      return Domain::set(pool);
    }
    return Domain::interval(lo, lo + size - 1);
  }

  std::mt19937_64 rng_;
  GeneratorConfig cfg_;
};

}  // namespace fdqubo::testing
