#pragma once

#include <cstddef>
#include <vector>

#include "fdqubo/model.hpp"

namespace fdqubo {

/// Domains indexed by variable id.
using DomainTable = std::vector<Domain>;

enum class PruneResult { unchanged, changed, inconsistent };

DomainTable domains_of(const QipModel& model);

/// Interval reasoning on `sum a_i x_i + c (= | <=) 0`. For equalities every
/// variable is bounded on both sides; for inequalities only the side that the
/// constraint caps. Domains never grow.
PruneResult prune_linear(const LinearConstraint& constraint, DomainTable& domains);

/// `result = lhs * rhs`: the result is cut to the product hull, and a factor
/// is cut to the quotient hull when the other factor's interval excludes 0.
/// For a square the factor is cut to [-sqrt(max), sqrt(max)] and, when it
/// cannot change sign, kept at least sqrt(min) away from 0.
PruneResult prune_product(const ProductConstraint& product, DomainTable& domains);

struct FixpointStats {
  std::size_t rounds = 0;
  bool cap_hit = false;
};

/// Applies both pruning rules until nothing changes or `cap` rounds have run
/// (0 selects 10 * |constraints| * |variables|). Hitting the cap is not an
/// error; the domains reached so far are kept.
Outcome<QipModel> fixpoint(const QipModel& model, FixpointStats* stats = nullptr,
                           std::size_t cap = 0);

/// Removes every variable whose domain is a single value, folding it into
/// constants and recording `x := v`. Products with a fixed factor become
/// linear. A fixed product result whose factors are free stays in place.
Outcome<QipModel> eliminate_singletons(const QipModel& model);

}  // namespace fdqubo
