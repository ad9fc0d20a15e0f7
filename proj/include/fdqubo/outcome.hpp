#pragma once

#include <string>
#include <utility>
#include <variant>

namespace fdqubo {

/// A model has no solution. This is a result, not an error.
struct Inconsistent {
  std::string reason;
};

/// Either a value or an Inconsistent verdict.
template <class T>
class Outcome {
 public:
  Outcome(T value) : state_(std::move(value)) {}            // NOLINT(google-explicit-constructor)
  Outcome(Inconsistent verdict) : state_(std::move(verdict)) {}  // NOLINT(google-explicit-constructor)

  bool ok() const { return state_.index() == 0; }
  explicit operator bool() const { return ok(); }

  T& value() & { return std::get<0>(state_); }
  const T& value() const& { return std::get<0>(state_); }
  T&& value() && { return std::get<0>(std::move(state_)); }

  T* operator->() { return &value(); }
  const T* operator->() const { return &value(); }

  const Inconsistent& inconsistent() const { return std::get<1>(state_); }

 private:
  std::variant<T, Inconsistent> state_;
};

}  // namespace fdqubo
