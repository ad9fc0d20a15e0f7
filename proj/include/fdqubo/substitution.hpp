#pragma once

#include <cstddef>
#include <vector>

#include "fdqubo/expr.hpp"

namespace fdqubo {

/// `target := expr` where expr is affine over other variables.
struct Substitution {
  VarId target = 0;
  AffineExpr expr;
};

/// Ordered set of substitutions whose dependency graph is acyclic. Leaves
/// are the variables that survive into the final model.
class SubstitutionForest {
 public:
  /// Throws std::invalid_argument on a duplicate target or a cycle.
  void add(VarId target, AffineExpr expr);

  const std::vector<Substitution>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  bool defines(VarId var) const;

  /// Evaluates every substitution reachable from `leaves`; the result holds
  /// the leaves plus all targets. Throws std::out_of_range for an unassigned
  /// leaf and std::logic_error if a target evaluates to a non-integer.
  Assignment resolve(const Assignment& leaves) const;

 private:
  const Substitution* find(VarId var) const;
  bool reaches(VarId from, VarId goal) const;

  std::vector<Substitution> entries_;
  std::map<VarId, std::size_t> index_;
};

SubstitutionForest add_substitution(SubstitutionForest forest, VarId target, AffineExpr expr);

Assignment resolve_assignment(const SubstitutionForest& forest, const Assignment& leaves);

}  // namespace fdqubo
