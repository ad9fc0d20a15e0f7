#include <gtest/gtest.h>

#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "../support/enumerate.hpp"
#include "fdqubo/fzn.hpp"

using namespace fdqubo;
using namespace fdqubo::fzn;

namespace {

bool has(const std::vector<std::string>& diags, const std::string& text) {
  for (const auto& d : diags) {
    if (d.find(text) != std::string::npos) {
      return true;
    }
  }
  return false;
}

}  // namespace

TEST(Parse, SlackExample) {
  FznModel m = parse_model(
      "var 0..1: x;\nvar 0..2: y;\nconstraint int_lin_le([3,-2],[x,y],0);\nsolve satisfy;\n");
  ASSERT_EQ(m.vars.size(), 2U);
  EXPECT_EQ(m.vars[1].domain, Domain::interval(0, 2));
  ASSERT_EQ(m.constraints.size(), 1U);
  EXPECT_EQ(m.constraints[0].predicate, "int_lin_le");
  EXPECT_EQ(m.solve.sense, Sense::satisfy);
}

TEST(Parse, SetDomainAndMinimize) {
  FznModel m = parse_model("var {1,3,5}: x; solve minimize x;");
  ASSERT_EQ(m.vars.size(), 1U);
  EXPECT_EQ(m.vars[0].domain, Domain::set({1, 3, 5}));
  EXPECT_EQ(m.solve.sense, Sense::minimize);
}

TEST(Parse, UnsupportedPredicate) {
  try {
    parse_model("var 0..2: y; constraint bogus_pred(y); solve satisfy;");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("unsupported predicate bogus_pred"), std::string::npos);
  }
}

TEST(Parse, CommentsAndPositions) {
  FznModel m = parse_model("% header\nvar 0..1: x; % trailing\nsolve satisfy;\n");
  EXPECT_EQ(m.vars.size(), 1U);
  try {
    parse_model("var 0..1: x;\nconstraint int_eq(x, z);\nsolve satisfy;");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position().line, 2);
    EXPECT_NE(std::string(e.what()).find("undeclared identifier 'z'"), std::string::npos);
  }
}

TEST(Parse, Errors) {
  EXPECT_THROW(parse_model("var 0..1: x; var 0..1: x; solve satisfy;"), ParseError);
  EXPECT_THROW(parse_model("var 0..1: x solve satisfy;"), ParseError);
  EXPECT_THROW(parse_model("var 3..1: x; solve satisfy;"), ParseError);
  EXPECT_THROW(parse_model("var 0..1: x;"), ParseError);
}

TEST(Parse, ParametersArraysAndOutput) {
  FznModel m = parse_model(
      "array [1..2] of int: c = [3, -2];\n"
      "var 0..1: x :: output_var;\n"
      "var 0..2: y;\n"
      "array [1..2] of var int: xs :: output_array([1..2]) = [x, y];\n"
      "constraint int_lin_le(c, xs, 0);\n"
      "solve maximize y;\n");
  ASSERT_EQ(m.params.size(), 1U);
  EXPECT_EQ(m.params[0].values, (std::vector<std::int64_t>{3, -2}));
  EXPECT_TRUE(m.vars[0].output);
  ASSERT_EQ(m.var_arrays.size(), 1U);
  EXPECT_TRUE(m.var_arrays[0].output);
}

TEST(Validate, Whitelist) {
  ParseOptions lax{false};
  EXPECT_TRUE(validate_subset(parse_model(
                  "var 0..3: x; var 0..3: y; constraint int_lin_eq([1,1],[x,y],3); solve satisfy;",
                  lax))
                  .empty());
  EXPECT_TRUE(validate_subset(parse_model(
                  "var 0..3: x; var 0..9: y; constraint int_times(x,x,y); solve satisfy;", lax))
                  .empty());
  auto diags = validate_subset(
      parse_model("var 0..3: x; constraint float_lin_eq([1],[x],0); solve satisfy;", lax));
  ASSERT_EQ(diags.size(), 1U);
  EXPECT_TRUE(has(diags, "float_lin_eq"));
  EXPECT_TRUE(has(validate_subset(parse_model(
                      "var 0..3: x; var 0..3: y; constraint int_lin_ne([1,1],[x,y],3); solve satisfy;",
                      lax)),
                  "int_lin_ne"));
  EXPECT_TRUE(has(validate_subset(parse_model(
                      "var 0..3: x; var 0..3: y; var bool: b; "
                      "constraint int_le_reif(x,y,b); solve satisfy;",
                      lax)),
                  "int_le_reif"));
}

TEST(Lower, LinearInequality) {
  auto q = lower_to_qip(
      parse_model("var 0..1: x; var 0..2: y; constraint int_lin_le([3,-2],[x,y],0); solve satisfy;"));
  ASSERT_TRUE(q.ok());
  ASSERT_EQ(q->linear.size(), 1U);
  AffineExpr want = AffineExpr::term(0, 3);
  want.add_term(1, -2);
  EXPECT_EQ(q->linear[0].expr, want);
  EXPECT_EQ(q->linear[0].relation, Relation::le_zero);
  EXPECT_TRUE(q->objective.expr.is_constant());
  EXPECT_EQ(q->objective.sense, Sense::satisfy);
}

TEST(Lower, MaximizeVariable) {
  auto q = lower_to_qip(parse_model(
      "var 0..3: x; var 0..6: o; constraint int_lin_eq([2,-1],[x,o],0); solve maximize o;"));
  ASSERT_TRUE(q.ok());
  EXPECT_EQ(q->objective.sense, Sense::maximize);
  EXPECT_EQ(q->objective.expr.coeff(1), Rational(-1));
}

TEST(Lower, Product) {
  auto q = lower_to_qip(parse_model("var 0..3: x; var 0..9: q; constraint int_times(x,x,q); solve satisfy;"));
  ASSERT_TRUE(q.ok());
  ASSERT_EQ(q->products.size(), 1U);
  EXPECT_EQ(q->products[0].result, 1U);
  EXPECT_EQ(q->products[0].lhs, 0U);
  EXPECT_EQ(q->products[0].rhs, 0U);
}

TEST(Lower, OutputsAndFixedValues) {
  auto q = lower_to_qip(parse_model(
      "var 0..3: x :: output_var; var 0..3: y = 2; solve satisfy;"));
  ASSERT_TRUE(q.ok());
  EXPECT_EQ(q->outputs, (std::vector<VarId>{0}));
  EXPECT_EQ(q->domain(1), Domain::singleton(2));
  auto bad = lower_to_qip(parse_model("var 0..3: x = 5; solve satisfy;"));
  EXPECT_FALSE(bad.ok());
}

TEST(Lower, EmptyProductResult) {
  auto q = lower_to_qip(
      parse_model("var 0..1: x; var 0..2: w; var 5..6: y; constraint int_times(x,w,y); solve satisfy;"));
  EXPECT_FALSE(q.ok());
}

TEST(Print, ReprintIsAFixpoint) {
  const char* texts[] = {
      "var 0..1: x;\nvar 0..2: y;\nconstraint int_lin_le([3,-2],[x,y],0);\nsolve satisfy;\n",
      "var {1,3,5}: x :: output_var; solve minimize x;",
      "array [1..2] of int: c = [3, -2]; var bool: b; var 0..1: x :: output_var; var 0..2: y; "
      "array [1..2] of var int: xs :: output_array([1..2]) = [x, y]; "
      "constraint int_lin_le(c, xs, 0); constraint bool2int(b, x); "
      "constraint int_times(x, y, y); solve maximize y;",
  };
  for (const char* t : texts) {
    FznModel first = parse_model(t);
    std::string printed = print_model(first);
    FznModel second = parse_model(printed);
    EXPECT_EQ(first, second) << printed;
    EXPECT_EQ(print_model(second), printed);
  }
}

TEST(Print, SendMoreMoneyReprints) {
  std::ifstream in(std::string(FDQUBO_DATA_DIR) + "/send_more_money.fzn");
  std::stringstream text;
  text << in.rdbuf();
  FznModel m = parse_model(text.str());
  EXPECT_EQ(parse_model(print_model(m)), m);
}

namespace {

// Direct FlatZinc semantics for the supported predicates, independent of lowering.
struct Reference {
  const FznModel& m;
  std::map<std::string, std::int64_t> values;

  std::int64_t scalar(const Expr& e) const {
    if (e.is_int()) {
      return std::get<std::int64_t>(e.value);
    }
    if (e.is_bool()) {
      return std::get<bool>(e.value) ? 1 : 0;
    }
    return values.at(std::get<std::string>(e.value));
  }
  std::vector<std::int64_t> array(const Expr& e) const {
    std::vector<std::int64_t> out;
    if (e.is_array()) {
      for (const auto& x : std::get<ExprList>(e.value)) {
        out.push_back(scalar(x));
      }
      return out;
    }
    const auto& name = std::get<std::string>(e.value);
    for (const auto& p : m.params) {
      if (p.name == name) {
        return p.values;
      }
    }
    for (const auto& a : m.var_arrays) {
      if (a.name == name) {
        for (const auto& x : a.elements) {
          out.push_back(scalar(x));
        }
      }
    }
    return out;
  }
  bool holds(const ConstraintItem& c) const {
    const auto& a = c.args;
    if (c.predicate == "int_lin_eq" || c.predicate == "int_lin_le") {
      auto k = array(a[0]);
      auto x = array(a[1]);
      std::int64_t s = 0;
      for (std::size_t i = 0; i < k.size(); ++i) {
        s += k[i] * x[i];
      }
      return c.predicate == "int_lin_eq" ? s == scalar(a[2]) : s <= scalar(a[2]);
    }
    if (c.predicate == "int_eq" || c.predicate == "bool2int") {
      return scalar(a[0]) == scalar(a[1]);
    }
    if (c.predicate == "int_le") {
      return scalar(a[0]) <= scalar(a[1]);
    }
    if (c.predicate == "int_times") {
      return scalar(a[0]) * scalar(a[1]) == scalar(a[2]);
    }
    throw std::logic_error("unknown predicate " + c.predicate);
  }
};

std::set<fdqubo::testing::Point> reference_solutions(const FznModel& m) {
  std::set<fdqubo::testing::Point> out;
  std::vector<std::vector<std::int64_t>> doms;
  for (const auto& v : m.vars) {
    doms.push_back(v.domain.values());
  }
  std::vector<std::size_t> idx(doms.size(), 0);
  while (true) {
    Reference r{m, {}};
    fdqubo::testing::Point p;
    for (std::size_t i = 0; i < doms.size(); ++i) {
      r.values[m.vars[i].name] = doms[i][idx[i]];
      p.push_back(doms[i][idx[i]]);
    }
    bool ok = true;
    for (const auto& c : m.constraints) {
      ok = ok && r.holds(c);
    }
    if (ok) {
      out.insert(p);
    }
    std::size_t i = 0;
    while (i < doms.size() && ++idx[i] == doms[i].size()) {
      idx[i++] = 0;
    }
    if (i == doms.size()) {
      break;
    }
  }
  return out;
}

std::string random_model(std::mt19937_64& rng) {
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  std::ostringstream os;
  const int nvars = pick(1, 3);
  std::vector<std::string> names;
  for (int i = 0; i < nvars; ++i) {
    const int lo = pick(-2, 2);
    names.push_back("v" + std::to_string(i));
    if (pick(0, 4) == 0) {
      os << "var {" << lo << "," << lo + 2 << "," << lo + 3 << "}: " << names.back() << ";\n";
    } else {
      os << "var " << lo << ".." << lo + pick(0, 4) << ": " << names.back() << ";\n";
    }
  }
  auto var = [&] { return names[pick(0, nvars - 1)]; };
  auto term = [&] { return pick(0, 3) == 0 ? std::to_string(pick(-3, 3)) : var(); };
  const int ncons = pick(0, 3);
  for (int c = 0; c < ncons; ++c) {
    switch (pick(0, 4)) {
      case 0:
      case 1: {
        const int k = pick(1, nvars);
        os << "constraint " << (pick(0, 1) == 0 ? "int_lin_eq" : "int_lin_le") << "([";
        for (int i = 0; i < k; ++i) {
          os << (i != 0 ? "," : "") << pick(-3, 3);
        }
        os << "],[";
        for (int i = 0; i < k; ++i) {
          os << (i != 0 ? "," : "") << var();
        }
        os << "]," << pick(-4, 4) << ");\n";
        break;
      }
      case 2:
        os << "constraint int_eq(" << term() << "," << var() << ");\n";
        break;
      case 3:
        os << "constraint int_le(" << var() << "," << term() << ");\n";
        break;
      default:
        os << "constraint int_times(" << var() << "," << term() << "," << term() << ");\n";
        break;
    }
  }
  os << "solve satisfy;\n";
  return os.str();
}

}  // namespace

TEST(Lower, PreservesSolutionsOnRandomModels) {
  std::mt19937_64 rng(42);
  int compared = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const std::string text = random_model(rng);
    FznModel fm = parse_model(text);
    const auto want = reference_solutions(fm);
    auto q = lower_to_qip(fm);
    if (!q.ok()) {
      EXPECT_TRUE(want.empty()) << text;
      continue;
    }
    std::vector<VarId> declared;
    for (VarId i = 0; i < fm.vars.size(); ++i) {
      declared.push_back(i);
    }
    std::set<fdqubo::testing::Point> got;
    for (const auto& [p, obj] : fdqubo::testing::projected(q.value(), declared)) {
      got.insert(p);
    }
    EXPECT_EQ(got, want) << text;
    EXPECT_TRUE(check_model(q.value()).empty()) << text;
    ++compared;
  }
  EXPECT_GT(compared, 300);
}
