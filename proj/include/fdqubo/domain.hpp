#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace fdqubo {

/// Finite, non-empty integer domain: either an interval `lo..hi` or an
/// explicit sorted set. Contiguous sets are stored as intervals, so a set
/// domain always has at least one hole.
class Domain {
 public:
  using value_type = std::int64_t;

  static Domain interval(value_type lo, value_type hi);
  static Domain set(std::vector<value_type> values);
  static Domain singleton(value_type v) { return interval(v, v); }
  static Domain binary() { return interval(0, 1); }

  bool is_interval() const { return values_.empty(); }
  value_type min() const { return lo_; }
  value_type max() const { return hi_; }
  std::uint64_t size() const;
  bool contains(value_type v) const;
  bool is_singleton() const { return lo_ == hi_; }
  /// Domain is a subset of {0, 1}.
  bool is_binary() const { return lo_ >= 0 && hi_ <= 1; }

  /// Enumerates every value; callers bound the size first.
  std::vector<value_type> values() const;

  /// Values within [lo, hi]; nullopt if none survive.
  std::optional<Domain> restrict_to(value_type lo, value_type hi) const;
  Domain shifted(value_type offset) const;

  std::string str() const;

  friend bool operator==(const Domain& a, const Domain& b) {
    return a.lo_ == b.lo_ && a.hi_ == b.hi_ && a.values_ == b.values_;
  }

 private:
  Domain(value_type lo, value_type hi, std::vector<value_type> values)
      : lo_(lo), hi_(hi), values_(std::move(values)) {}

  value_type lo_ = 0;
  value_type hi_ = 0;
  std::vector<value_type> values_;  // empty for intervals
};

/// Interval hull of `{a*b : a in [alo,ahi], b in [blo,bhi]}`.
/// Throws std::overflow_error when a bound leaves int64.
std::pair<std::int64_t, std::int64_t> product_hull(std::int64_t alo, std::int64_t ahi,
                                                   std::int64_t blo, std::int64_t bhi);

/// Tight hull of `{a*a : a in [lo,hi]}`.
std::pair<std::int64_t, std::int64_t> square_hull(std::int64_t lo, std::int64_t hi);

}  // namespace fdqubo
