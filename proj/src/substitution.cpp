#include "fdqubo/substitution.hpp"

#include <functional>
#include <stdexcept>
#include <string>

namespace fdqubo {

const Substitution* SubstitutionForest::find(VarId var) const {
  auto it = index_.find(var);
  return it == index_.end() ? nullptr : &entries_[it->second];
}

bool SubstitutionForest::defines(VarId var) const { return index_.count(var) != 0; }

bool SubstitutionForest::reaches(VarId from, VarId goal) const {
  std::vector<VarId> stack{from};
  std::map<VarId, bool> seen;
  while (!stack.empty()) {
    VarId v = stack.back();
    stack.pop_back();
    if (v == goal) {
      return true;
    }
    if (seen[v]) {
      continue;
    }
    seen[v] = true;
    if (const auto* s = find(v)) {
      for (const auto& [dep, c] : s->expr.terms()) {
        stack.push_back(dep);
      }
    }
  }
  return false;
}

void SubstitutionForest::add(VarId target, AffineExpr expr) {
  if (defines(target)) {
    throw std::invalid_argument("variable " + std::to_string(target) + " is already substituted");
  }
  for (const auto& [dep, c] : expr.terms()) {
    if (reaches(dep, target)) {
      throw std::invalid_argument("substitution for variable " + std::to_string(target) +
                                  " would create a cycle");
    }
  }
  index_[target] = entries_.size();
  entries_.push_back({target, std::move(expr)});
}

Assignment SubstitutionForest::resolve(const Assignment& leaves) const {
  Assignment out = leaves;
  // Depth-first evaluation; acyclicity is guaranteed by add().
  std::function<std::int64_t(VarId)> value = [&](VarId var) -> std::int64_t {
    if (auto it = out.find(var); it != out.end()) {
      return it->second;
    }
    const auto* s = find(var);
    if (s == nullptr) {
      throw std::out_of_range("leaf variable " + std::to_string(var) + " is unassigned");
    }
    Rational sum = s->expr.constant();
    for (const auto& [dep, c] : s->expr.terms()) {
      sum += c * Rational(value(dep));
    }
    if (!sum.is_integer()) {
      throw std::logic_error("substitution for variable " + std::to_string(var) +
                             " evaluates to non-integer " + sum.str());
    }
    std::int64_t v = sum.to_int64();
    out[var] = v;
    return v;
  };
  for (const auto& s : entries_) {
    value(s.target);
  }
  return out;
}

SubstitutionForest add_substitution(SubstitutionForest forest, VarId target, AffineExpr expr) {
  forest.add(target, std::move(expr));
  return forest;
}

Assignment resolve_assignment(const SubstitutionForest& forest, const Assignment& leaves) {
  return forest.resolve(leaves);
}

}  // namespace fdqubo
