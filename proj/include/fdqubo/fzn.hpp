#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "fdqubo/domain.hpp"
#include "fdqubo/model.hpp"
#include "fdqubo/outcome.hpp"

namespace fdqubo::fzn {

struct Position {
  int line = 1;
  int column = 1;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(Position pos, const std::string& message);
  Position position() const { return pos_; }

 private:
  Position pos_;
};

struct Expr;
using ExprList = std::vector<Expr>;

/// Argument expression: integer, boolean, identifier, `name[i]` or array literal.
struct Expr {
  struct Access {
    std::string array;
    std::int64_t index = 1;
    friend bool operator==(const Access&, const Access&) = default;
  };
  std::variant<std::int64_t, bool, std::string, Access, ExprList> value;

  bool is_int() const { return std::holds_alternative<std::int64_t>(value); }
  bool is_bool() const { return std::holds_alternative<bool>(value); }
  bool is_ident() const { return std::holds_alternative<std::string>(value); }
  bool is_access() const { return std::holds_alternative<Access>(value); }
  bool is_array() const { return std::holds_alternative<ExprList>(value); }

  friend bool operator==(const Expr& a, const Expr& b) { return a.value == b.value; }
};

enum class BaseType { integer, boolean };

struct ParamDecl {
  std::string name;
  BaseType type = BaseType::integer;
  bool is_array = false;
  std::vector<std::int64_t> values;
  Position pos;
  friend bool operator==(const ParamDecl& a, const ParamDecl& b) {
    return a.name == b.name && a.type == b.type && a.is_array == b.is_array && a.values == b.values;
  }
};

struct VarDecl {
  std::string name;
  BaseType type = BaseType::integer;
  Domain domain = Domain::binary();
  bool output = false;
  /// `= 3` fixes the variable, `= x` aliases it.
  std::optional<Expr> value;
  Position pos;
  friend bool operator==(const VarDecl& a, const VarDecl& b) {
    return a.name == b.name && a.type == b.type && a.domain == b.domain && a.output == b.output &&
           a.value == b.value;
  }
};

struct VarArrayDecl {
  std::string name;
  BaseType type = BaseType::integer;
  ExprList elements;
  bool output = false;
  Position pos;
  friend bool operator==(const VarArrayDecl& a, const VarArrayDecl& b) {
    return a.name == b.name && a.type == b.type && a.elements == b.elements && a.output == b.output;
  }
};

struct ConstraintItem {
  std::string predicate;
  ExprList args;
  Position pos;
  friend bool operator==(const ConstraintItem& a, const ConstraintItem& b) {
    return a.predicate == b.predicate && a.args == b.args;
  }
};

struct SolveItem {
  Sense sense = Sense::satisfy;
  std::optional<Expr> objective;
  friend bool operator==(const SolveItem&, const SolveItem&) = default;
};

/// Declaration order is kept per item kind; identifiers are always declared
/// before use.
struct FznModel {
  std::vector<ParamDecl> params;
  std::vector<VarDecl> vars;
  std::vector<VarArrayDecl> var_arrays;
  std::vector<ConstraintItem> constraints;
  SolveItem solve;
  friend bool operator==(const FznModel&, const FznModel&) = default;
};

struct ParseOptions {
  /// Reject models that validate_subset would flag.
  bool check_subset = true;
};

/// Throws ParseError on syntax errors, duplicate declarations, undeclared
/// identifiers and (by default) unsupported predicates.
FznModel parse_model(std::string_view text, const ParseOptions& options = {});

/// Diagnostics for everything outside the supported plain-integer subset.
std::vector<std::string> validate_subset(const FznModel& model);

/// Prints a model that parses back to an equal FznModel.
std::string print_model(const FznModel& model);

/// Translates to the integer program. Returns Inconsistent when a fixed
/// value or a product result domain is empty from the start.
Outcome<QipModel> lower_to_qip(const FznModel& model);

/// Predicates accepted by validate_subset.
const std::vector<std::string>& supported_predicates();

}  // namespace fdqubo::fzn
