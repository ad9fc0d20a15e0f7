#include "fdqubo/domain.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace fdqubo {

namespace {

std::int64_t checked(__int128 v) {
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min()) {
    throw std::overflow_error("domain bound exceeds 64 bits");
  }
  return static_cast<std::int64_t>(v);
}

}  // namespace

Domain Domain::interval(value_type lo, value_type hi) {
  if (lo > hi) {
    throw std::invalid_argument("empty interval domain");
  }
  return Domain(lo, hi, {});
}

Domain Domain::set(std::vector<value_type> values) {
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  if (values.empty()) {
    throw std::invalid_argument("empty set domain");
  }
  value_type lo = values.front();
  value_type hi = values.back();
  if (static_cast<__int128>(hi) - lo + 1 == static_cast<__int128>(values.size())) {
    return Domain(lo, hi, {});
  }
  return Domain(lo, hi, std::move(values));
}

std::uint64_t Domain::size() const {
  if (is_interval()) {
    return static_cast<std::uint64_t>(static_cast<__int128>(hi_) - lo_ + 1);
  }
  return values_.size();
}

bool Domain::contains(value_type v) const {
  if (v < lo_ || v > hi_) {
    return false;
  }
  return is_interval() || std::binary_search(values_.begin(), values_.end(), v);
}

std::vector<Domain::value_type> Domain::values() const {
  if (!is_interval()) {
    return values_;
  }
  std::vector<value_type> out;
  out.reserve(size());
  for (value_type v = lo_;; ++v) {
    out.push_back(v);
    if (v == hi_) {
      break;
    }
  }
  return out;
}

std::optional<Domain> Domain::restrict_to(value_type lo, value_type hi) const {
  lo = std::max(lo, lo_);
  hi = std::min(hi, hi_);
  if (lo > hi) {
    return std::nullopt;
  }
  if (is_interval()) {
    return Domain(lo, hi, {});
  }
  std::vector<value_type> kept;
  for (value_type v : values_) {
    if (v >= lo && v <= hi) {
      kept.push_back(v);
    }
  }
  if (kept.empty()) {
    return std::nullopt;
  }
  return set(std::move(kept));
}

Domain Domain::shifted(value_type offset) const {
  std::vector<value_type> moved;
  moved.reserve(values_.size());
  for (value_type v : values_) {
    moved.push_back(checked(static_cast<__int128>(v) + offset));
  }
  return Domain(checked(static_cast<__int128>(lo_) + offset),
                checked(static_cast<__int128>(hi_) + offset), std::move(moved));
}

std::string Domain::str() const {
  std::ostringstream os;
  if (is_interval()) {
    os << lo_ << ".." << hi_;
  } else {
    os << '{';
    for (std::size_t i = 0; i < values_.size(); ++i) {
      os << (i ? "," : "") << values_[i];
    }
    os << '}';
  }
  return os.str();
}

std::pair<std::int64_t, std::int64_t> product_hull(std::int64_t alo, std::int64_t ahi,
                                                   std::int64_t blo, std::int64_t bhi) {
  const __int128 corners[] = {static_cast<__int128>(alo) * blo, static_cast<__int128>(alo) * bhi,
                              static_cast<__int128>(ahi) * blo, static_cast<__int128>(ahi) * bhi};
  auto [mn, mx] = std::minmax_element(std::begin(corners), std::end(corners));
  return {checked(*mn), checked(*mx)};
}

std::pair<std::int64_t, std::int64_t> square_hull(std::int64_t lo, std::int64_t hi) {
  const __int128 a = static_cast<__int128>(lo) * lo;
  const __int128 b = static_cast<__int128>(hi) * hi;
  if (lo <= 0 && hi >= 0) {
    return {0, checked(std::max(a, b))};
  }
  return {checked(std::min(a, b)), checked(std::max(a, b))};
}

}  // namespace fdqubo
