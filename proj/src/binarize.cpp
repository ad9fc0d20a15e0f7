#include "fdqubo/binarize.hpp"

#include <stdexcept>

#include "fdqubo/deinequalify.hpp"
#include "fdqubo/propagate.hpp"

namespace fdqubo {

std::vector<std::int64_t> binary_encode_coeffs(std::int64_t max, BinaryRule rule) {
  if (max < 2) {
    throw std::invalid_argument("binary encoding needs a maximum of at least 2, got " +
                                std::to_string(max));
  }
  std::vector<std::int64_t> out;
  std::int64_t rest = max;
  while (rest > 0) {
    // k = floor(log2 rest): powers 1..2^(k-1) cover [0, 2^k - 1].
    int k = 0;
    while ((std::int64_t{1} << (k + 1)) <= rest) {
      ++k;
    }
    for (int s = 0; s < k; ++s) {
      out.push_back(std::int64_t{1} << s);
    }
    std::int64_t remainder = rest - ((std::int64_t{1} << k) - 1);
    if (rule == BinaryRule::coefficient || remainder == 1 ||
        remainder == (std::int64_t{1} << k)) {
      // Either the remainder is taken as one weight, or it is the next power
      // (rest = 2^(k+1) - 1) and the list is plain binary.
      out.push_back(remainder);
      break;
    }
    rest = remainder;
  }
  return out;
}

Encoding choose_strategy(const Domain& domain, const EncodingConfig& config) {
  if (config.onehot_threshold < 2) {
    throw std::invalid_argument("one-hot threshold must be at least 2");
  }
  if (!domain.is_interval()) {
    if (config.strategy == EncodingStrategy::binary) {
      throw std::invalid_argument("binary encoding needs an interval domain, got " +
                                  domain.str());
    }
    return Encoding::onehot;
  }
  switch (config.strategy) {
    case EncodingStrategy::onehot: return Encoding::onehot;
    case EncodingStrategy::binary: return Encoding::binary;
    case EncodingStrategy::automatic:
      return domain.size() <= config.onehot_threshold ? Encoding::onehot : Encoding::binary;
  }
  return Encoding::binary;
}

namespace {

/// x = constant + sum weight_i * bit_i
struct BitEncoding {
  Rational constant;
  std::vector<std::pair<Rational, VarId>> bits;
};

/// Every value of lhs * rhs over the factor domains lies in `result`.
bool product_domain_implied(const Domain& result, const Domain& a, const Domain& b, bool square) {
  auto [lo, hi] = square ? square_hull(a.min(), a.max())
                         : product_hull(a.min(), a.max(), b.min(), b.max());
  if (result.is_interval()) {
    return result.min() <= lo && hi <= result.max();
  }
  if (a.size() * (square ? 1 : b.size()) > 100000) {
    return false;
  }
  for (auto u : a.values()) {
    if (square) {
      if (!result.contains(u * u)) {
        return false;
      }
      continue;
    }
    for (auto v : b.values()) {
      if (!result.contains(u * v)) {
        return false;
      }
    }
  }
  return true;
}

VarId bit_product(QipModel& m, VarId bit, VarId other, std::vector<ProductConstraint>& sink) {
  const Domain& d = m.domain(other);
  auto [lo, hi] = product_hull(0, 1, d.min(), d.max());
  std::string name = m.var(bit).name + "*" + m.var(other).name;
  VarId y = m.add_variable(std::move(name), Domain::interval(lo, hi), VarKind::intermediate);
  sink.push_back({y, bit, other});
  return y;
}

/// Rewrites every product with `x` as a factor, then substitutes `x`.
void apply_encoding(QipModel& m, VarId x, const BitEncoding& enc, bool onehot,
                    const EncodingConfig& config) {
  struct Defined {
    VarId result;
    AffineExpr expr;
    bool implied;
  };
  std::vector<Defined> defined;
  std::vector<ProductConstraint> rebuilt;

  const std::vector<ProductConstraint> old = m.products;
  for (const auto& p : old) {
    if (!p.has_factor(x)) {
      rebuilt.push_back(p);
      continue;
    }
    AffineExpr e;
    bool implied = false;
    if (p.is_square()) {
      implied = product_domain_implied(m.domain(p.result), m.domain(x), m.domain(x), true);
      const Rational& c0 = enc.constant;
      e.add_constant(c0 * c0);
      for (std::size_t i = 0; i < enc.bits.size(); ++i) {
        const auto& [ci, bi] = enc.bits[i];
        e.add_term(bi, Rational(2) * c0 * ci + ci * ci);
        if (onehot && !config.onehot_cross_products) {
          continue;
        }
        for (std::size_t j = i + 1; j < enc.bits.size(); ++j) {
          const auto& [cj, bj] = enc.bits[j];
          if (ci.is_zero() || cj.is_zero()) {
            continue;
          }
          VarId q = bit_product(m, bi, bj, rebuilt);
          e.add_term(q, Rational(2) * ci * cj);
        }
      }
    } else {
      const VarId w = p.lhs == x ? p.rhs : p.lhs;
      implied = product_domain_implied(m.domain(p.result), m.domain(x), m.domain(w), false);
      e.add_term(w, enc.constant);
      for (const auto& [ci, bi] : enc.bits) {
        if (ci.is_zero()) {
          continue;
        }
        VarId q = bit_product(m, bi, w, rebuilt);
        e.add_term(q, ci);
      }
    }
    defined.push_back({p.result, std::move(e), implied});
  }
  m.products = std::move(rebuilt);

  AffineExpr def(enc.constant);
  for (const auto& [c, b] : enc.bits) {
    def.add_term(b, c);
  }
  if (auto bad = m.substitute(x, def)) {
    throw std::logic_error("encoding '" + m.var(x).name + "' produced " + bad->reason);
  }
  if (onehot) {
    AffineExpr one(Rational(-1));
    for (const auto& [c, b] : enc.bits) {
      one.add_term(b, 1);
    }
    m.linear.push_back({std::move(one), Relation::eq_zero});
  }

  for (auto& d : defined) {
    if (config.eliminate_defined && d.implied && !m.in_any_product(d.result)) {
      if (auto bad = m.substitute(d.result, d.expr)) {
        throw std::logic_error("eliminating '" + m.var(d.result).name + "' produced " +
                               bad->reason);
      }
      continue;
    }
    AffineExpr link = AffineExpr::term(d.result);
    link.add(d.expr, -1);
    if (auto bad = m.add_linear(std::move(link), Relation::eq_zero)) {
      throw std::logic_error(bad->reason);
    }
  }
}

void check_encodable(const QipModel& m, VarId x) {
  if (m.stage != Stage::canonical) {
    throw std::invalid_argument("encoding expects a canonical model, got stage " +
                                to_string(m.stage));
  }
  if (!m.var(x).live) {
    throw std::invalid_argument("encoding: '" + m.var(x).name + "' is not live");
  }
  if (m.defining_product(x)) {
    throw std::invalid_argument("encoding: '" + m.var(x).name + "' is a product result");
  }
}

}  // namespace

QipModel onehot_encode(const QipModel& model, VarId x, const EncodingConfig& config) {
  check_encodable(model, x);
  const Domain d = model.domain(x);
  if (d.size() < 3) {
    throw std::invalid_argument("one-hot encoding needs at least 3 values, '" +
                                model.var(x).name + "' has " + d.str());
  }
  QipModel m = model;
  BitEncoding enc;
  for (auto v : d.values()) {
    VarId b = m.add_variable(m.var(x).name + "=" + std::to_string(v), Domain::binary(),
                             VarKind::encoding_bit);
    enc.bits.emplace_back(Rational(v), b);
  }
  apply_encoding(m, x, enc, true, config);
  return m;
}

QipModel binary_encode(const QipModel& model, VarId x, BinaryRule rule,
                       const EncodingConfig& config) {
  check_encodable(model, x);
  const Domain d = model.domain(x);
  if (!d.is_interval() || d.min() != 0) {
    throw std::invalid_argument("binary encoding needs a domain 0..M, '" + model.var(x).name +
                                "' has " + d.str());
  }
  QipModel m = model;
  BitEncoding enc;
  const auto coeffs = binary_encode_coeffs(d.max(), rule);
  for (std::size_t s = 0; s < coeffs.size(); ++s) {
    VarId b = m.add_variable(m.var(x).name + "#" + std::to_string(s), Domain::binary(),
                             VarKind::encoding_bit);
    enc.bits.emplace_back(Rational(coeffs[s]), b);
  }
  apply_encoding(m, x, enc, false, config);
  return m;
}

namespace {

/// x := d1 + (d2 - d1) * b for a two-valued domain.
QipModel affine_encode(const QipModel& model, VarId x, const EncodingConfig& config) {
  QipModel m = model;
  const auto values = m.domain(x).values();
  VarId b = m.add_variable(m.var(x).name + "#0", Domain::binary(), VarKind::encoding_bit);
  BitEncoding enc{Rational(values[0]), {{Rational(values[1] - values[0]), b}}};
  apply_encoding(m, x, enc, false, config);
  return m;
}

/// `y = b * b` with b a bit: y := b.
void fold_bit_squares(QipModel& m) {
  bool again = true;
  while (again) {
    again = false;
    for (std::size_t k = 0; k < m.products.size(); ++k) {
      const ProductConstraint p = m.products[k];
      if (!p.is_square() || !m.domain(p.lhs).is_binary()) {
        continue;
      }
      m.products.erase(m.products.begin() + static_cast<std::ptrdiff_t>(k));
      for (auto& q : m.products) {
        if (q.lhs == p.result) {
          q.lhs = p.lhs;
        }
        if (q.rhs == p.result) {
          q.rhs = p.lhs;
        }
      }
      if (auto bad = m.substitute(p.result, AffineExpr::term(p.lhs))) {
        throw std::logic_error(bad->reason);
      }
      again = true;
      break;
    }
  }
}

}  // namespace

QipModel eliminate_defined(const QipModel& model) {
  QipModel m = model;
  bool again = true;
  while (again) {
    again = false;
    for (const auto& c : m.linear) {
      if (c.relation != Relation::eq_zero) {
        continue;
      }
      for (const auto& [y, a] : c.expr.terms()) {
        if (a.abs() != 1 || m.in_any_product(y) || !m.domain(y).is_interval()) {
          continue;
        }
        // y = rest
        AffineExpr rest = c.expr;
        rest.add_term(y, -a);
        rest.scale(-a);
        if (rest.denominator_lcm() != 1) {
          continue;
        }
        auto [lo, hi] = line_bounds(rest, m);
        const Domain& d = m.domain(y);
        if (lo < Rational(d.min()) || hi > Rational(d.max())) {
          continue;
        }
        const VarId target = y;
        if (auto bad = m.substitute(target, rest)) {
          throw std::logic_error(bad->reason);
        }
        again = true;
        break;
      }
      if (again) {
        break;
      }
    }
  }
  return m;
}

Outcome<QipModel> binarize_all(const QipModel& model, const EncodingConfig& config) {
  if (model.stage != Stage::canonical) {
    throw std::invalid_argument("binarize_all expects a canonical model, got stage " +
                                to_string(model.stage));
  }
  QipModel fixed_results = model;
  for (std::size_t k = 0; k < fixed_results.products.size(); ++k) {
    const auto& p = fixed_results.products[k];
    if (fixed_results.domain(p.result).is_singleton() &&
        !fixed_results.domain(p.lhs).is_singleton() &&
        !fixed_results.domain(p.rhs).is_singleton()) {
      fixed_results.detach_result(k);
    }
  }
  auto start = eliminate_singletons(fixed_results);
  if (!start) {
    return start.inconsistent();
  }
  QipModel m = std::move(start).value();
  if (config.eliminate_defined) {
    m = eliminate_defined(m);
  }

  while (true) {
    std::optional<VarId> pick;
    for (const auto& v : m.variables) {
      if (v.live && !v.domain.is_binary() && !m.defining_product(v.id)) {
        pick = v.id;
        break;
      }
    }
    if (!pick) {
      break;
    }
    const Domain& d = m.domain(*pick);
    if (d.size() == 2) {
      m = affine_encode(m, *pick, config);
    } else if (choose_strategy(d, config) == Encoding::onehot) {
      m = onehot_encode(m, *pick, config);
    } else {
      m = binary_encode(m, *pick, config.binary_rule, config);
    }
    if (config.eliminate_defined) {
      m = eliminate_defined(m);
    }
  }
  fold_bit_squares(m);

  for (const auto& v : m.variables) {
    if (v.live && !v.domain.is_binary()) {
      throw std::logic_error("binarize_all left '" + v.name + "' with domain " + v.domain.str());
    }
  }
  m.stage = Stage::binary;
  return m;
}

std::string to_string(EncodingStrategy strategy) {
  switch (strategy) {
    case EncodingStrategy::automatic: return "auto";
    case EncodingStrategy::onehot: return "onehot";
    case EncodingStrategy::binary: return "binary";
  }
  return "?";
}

std::string to_string(BinaryRule rule) {
  return rule == BinaryRule::recursive ? "recursive" : "coefficient";
}

}  // namespace fdqubo
