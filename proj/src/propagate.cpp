#include "fdqubo/propagate.hpp"

#include <algorithm>
#include <limits>

namespace fdqubo {

namespace {

constexpr std::int64_t kMin = std::numeric_limits<std::int64_t>::min();
constexpr std::int64_t kMax = std::numeric_limits<std::int64_t>::max();

std::int64_t clamp_to_int64(const Integer& v) {
  if (v < Integer(static_cast<long>(kMin))) {
    return kMin;
  }
  if (v > Integer(static_cast<long>(kMax))) {
    return kMax;
  }
  return v.get_si();
}

/// Narrows `d` to [lo, hi]; updates `result`.
bool narrow(Domain& d, const Integer& lo, const Integer& hi, PruneResult& result) {
  std::int64_t l = clamp_to_int64(lo);
  std::int64_t h = clamp_to_int64(hi);
  if (lo > hi || l > d.max() || h < d.min()) {
    result = PruneResult::inconsistent;
    return false;
  }
  if (l <= d.min() && h >= d.max()) {
    return true;
  }
  auto next = d.restrict_to(l, h);
  if (!next) {
    result = PruneResult::inconsistent;
    return false;
  }
  if (!(*next == d)) {
    d = std::move(*next);
    result = PruneResult::changed;
  }
  return true;
}

struct Contribution {
  Rational lo;
  Rational hi;
};

Contribution contribution(const Rational& a, const Domain& d) {
  Rational at_min = a * Rational(d.min());
  Rational at_max = a * Rational(d.max());
  return a.sign() > 0 ? Contribution{at_min, at_max} : Contribution{at_max, at_min};
}

Rational floor_div_bound(const Rational& num, const Rational& den) { return num / den; }

}  // namespace

DomainTable domains_of(const QipModel& model) {
  DomainTable out;
  out.reserve(model.variables.size());
  for (const auto& v : model.variables) {
    out.push_back(v.domain);
  }
  return out;
}

PruneResult prune_linear(const LinearConstraint& constraint, DomainTable& domains) {
  PruneResult result = PruneResult::unchanged;
  const auto& terms = constraint.expr.terms();
  const Rational& c = constraint.expr.constant();
  const bool eq = constraint.relation == Relation::eq_zero;

  for (const auto& [var, a] : terms) {
    // Sums are recomputed per variable so earlier narrowing is used at once.
    Rational rest_lo;
    Rational rest_hi;
    for (const auto& [other, b] : terms) {
      if (other == var) {
        continue;
      }
      auto k = contribution(b, domains[other]);
      rest_lo += k.lo;
      rest_hi += k.hi;
    }
    // a*x lies in [-c - rest_hi, -c - rest_lo] (equality) or below -c - rest_lo.
    Rational upper = -c - rest_lo;
    Rational lower = -c - rest_hi;
    Domain& d = domains[var];
    Integer lo(static_cast<long>(d.min()));
    Integer hi(static_cast<long>(d.max()));
    if (a.sign() > 0) {
      hi = std::min(hi, floor_div_bound(upper, a).floor());
      if (eq) {
        lo = std::max(lo, floor_div_bound(lower, a).ceil());
      }
    } else {
      lo = std::max(lo, floor_div_bound(upper, a).ceil());
      if (eq) {
        hi = std::min(hi, floor_div_bound(lower, a).floor());
      }
    }
    if (!narrow(d, lo, hi, result)) {
      return PruneResult::inconsistent;
    }
  }
  if (terms.empty()) {
    bool holds = eq ? c.is_zero() : c <= 0;
    return holds ? PruneResult::unchanged : PruneResult::inconsistent;
  }
  return result;
}

namespace {

/// Hull of x = y / w for y in [ylo,yhi], w in [wlo,whi] with 0 outside [wlo,whi].
std::pair<Integer, Integer> quotient_hull(std::int64_t ylo, std::int64_t yhi, std::int64_t wlo,
                                          std::int64_t whi) {
  const Rational qs[] = {Rational(ylo) / Rational(wlo), Rational(ylo) / Rational(whi),
                         Rational(yhi) / Rational(wlo), Rational(yhi) / Rational(whi)};
  auto [mn, mx] = std::minmax_element(std::begin(qs), std::end(qs));
  return {mn->ceil(), mx->floor()};
}

Integer isqrt_floor(std::int64_t v) {
  Integer r;
  Integer x(static_cast<long>(v));
  mpz_sqrt(r.get_mpz_t(), x.get_mpz_t());
  return r;
}

}  // namespace

PruneResult prune_product(const ProductConstraint& p, DomainTable& domains) {
  PruneResult result = PruneResult::unchanged;
  auto as_int = [](std::int64_t v) { return Integer(static_cast<long>(v)); };

  {
    const Domain& x = domains[p.lhs];
    const Domain& w = domains[p.rhs];
    auto [lo, hi] = p.is_square() ? square_hull(x.min(), x.max())
                                  : product_hull(x.min(), x.max(), w.min(), w.max());
    if (!narrow(domains[p.result], as_int(lo), as_int(hi), result)) {
      return PruneResult::inconsistent;
    }
  }

  const Domain& y = domains[p.result];
  if (p.is_square()) {
    if (y.max() < 0) {
      return PruneResult::inconsistent;
    }
    Integer r = isqrt_floor(y.max());
    if (!narrow(domains[p.lhs], -r, r, result)) {
      return PruneResult::inconsistent;
    }
    if (y.min() > 0) {
      // |x| >= ceil(sqrt(min y)); only usable when x cannot change sign.
      Integer s = isqrt_floor(y.min());
      if (s * s < Integer(static_cast<long>(y.min()))) {
        ++s;
      }
      const Domain& x = domains[p.lhs];
      if (x.min() > -s && !narrow(domains[p.lhs], s, as_int(x.max()), result)) {
        return PruneResult::inconsistent;
      }
      if (x.max() < s && !narrow(domains[p.lhs], as_int(x.min()), -s, result)) {
        return PruneResult::inconsistent;
      }
    }
    return result;
  }

  auto divide_into = [&](VarId target, VarId other) {
    const Domain& w = domains[other];
    if (w.min() <= 0 && w.max() >= 0) {
      return true;
    }
    auto [lo, hi] = quotient_hull(y.min(), y.max(), w.min(), w.max());
    return narrow(domains[target], lo, hi, result);
  };
  if (!divide_into(p.lhs, p.rhs) || !divide_into(p.rhs, p.lhs)) {
    return PruneResult::inconsistent;
  }
  return result;
}

Outcome<QipModel> fixpoint(const QipModel& model, FixpointStats* stats, std::size_t cap) {
  DomainTable domains = domains_of(model);
  const std::size_t ncons = model.linear.size() + model.products.size();
  if (cap == 0) {
    cap = std::max<std::size_t>(1, 10 * ncons * model.live_variables().size());
  }
  FixpointStats local;
  bool changed = true;
  while (changed) {
    if (local.rounds >= cap) {
      local.cap_hit = true;
      break;
    }
    ++local.rounds;
    changed = false;
    for (const auto& c : model.linear) {
      auto r = prune_linear(c, domains);
      if (r == PruneResult::inconsistent) {
        return Inconsistent{"bounds propagation empties a domain in " + model.describe(c)};
      }
      changed |= r == PruneResult::changed;
    }
    for (const auto& p : model.products) {
      auto r = prune_product(p, domains);
      if (r == PruneResult::inconsistent) {
        return Inconsistent{"bounds propagation empties a domain in " + model.describe(p)};
      }
      changed |= r == PruneResult::changed;
    }
  }
  if (stats != nullptr) {
    *stats = local;
  }
  QipModel out = model;
  for (auto& v : out.variables) {
    if (v.live) {
      v.domain = domains[v.id];
    }
  }
  return out;
}

Outcome<QipModel> eliminate_singletons(const QipModel& model) {
  QipModel m = model;
  auto is_fixed = [&](VarId v) { return m.var(v).live && m.var(v).domain.is_singleton(); };

  while (true) {
    std::optional<VarId> pick;
    // Fixed factors first: they turn products into linear constraints.
    for (const auto& p : m.products) {
      if (is_fixed(p.lhs) || is_fixed(p.rhs)) {
        pick = is_fixed(p.lhs) ? p.lhs : p.rhs;
        break;
      }
    }
    if (!pick) {
      for (const auto& v : m.variables) {
        if (is_fixed(v.id) && !m.defining_product(v.id)) {
          pick = v.id;
          break;
        }
      }
    }
    if (!pick) {
      break;
    }
    const VarId v = *pick;
    const std::int64_t value = m.var(v).domain.min();

    std::vector<ProductConstraint> kept;
    std::vector<AffineExpr> lowered;
    for (const auto& p : m.products) {
      if (!p.has_factor(v)) {
        kept.push_back(p);
        continue;
      }
      AffineExpr e = AffineExpr::term(p.result);
      if (p.is_square()) {
        e.add_constant(-Rational(value) * Rational(value));
      } else {
        e.add_term(p.lhs == v ? p.rhs : p.lhs, -Rational(value));
      }
      lowered.push_back(std::move(e));
    }
    m.products = std::move(kept);
    for (auto& e : lowered) {
      if (auto bad = m.add_linear(std::move(e), Relation::eq_zero)) {
        return *bad;
      }
    }

    if (auto bad = m.substitute(v, AffineExpr(Rational(value)))) {
      return *bad;
    }
  }
  return m;
}

}  // namespace fdqubo
