#include <gtest/gtest.h>

#include <random>

#include "fdqubo/domain.hpp"
#include "fdqubo/model.hpp"
#include "fdqubo/rational.hpp"
#include "fdqubo/substitution.hpp"

using namespace fdqubo;

TEST(Rational, KeepsLowestTerms) {
  Rational r(6, -4);
  EXPECT_EQ(r.numerator(), -3);
  EXPECT_EQ(r.denominator(), 2);
  EXPECT_EQ(r.str(), "-3/2");
  EXPECT_EQ(Rational(4, 2).str(), "2");
}

TEST(Rational, ParsesAndPrints) {
  EXPECT_EQ(Rational::parse("-7/3"), Rational(-7, 3));
  EXPECT_EQ(Rational::parse("12"), Rational(12));
  EXPECT_EQ(Rational::parse("+5/10"), Rational(1, 2));
  EXPECT_THROW(Rational::parse("1/0"), std::invalid_argument);
  EXPECT_THROW(Rational::parse("1.5"), std::invalid_argument);
  EXPECT_THROW(Rational::parse(""), std::invalid_argument);
}

TEST(Rational, FloorAndCeil) {
  EXPECT_EQ(Rational(-7, 2).floor(), -4);
  EXPECT_EQ(Rational(-7, 2).ceil(), -3);
  EXPECT_EQ(Rational(7, 2).floor(), 3);
  EXPECT_EQ(Rational(4).ceil(), 4);
}

TEST(Rational, AdditionIsExactOnRandomValues) {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<std::int64_t> num(-1'000'000'000, 1'000'000'000);
  std::uniform_int_distribution<std::int64_t> den(1, 1'000'000'000);
  for (int i = 0; i < 1000; ++i) {
    Rational a(num(rng), den(rng));
    Rational b(num(rng), den(rng));
    EXPECT_EQ((a + b) - b, a);
    EXPECT_EQ((a * b) / b == a || b.is_zero(), true);
  }
}

TEST(Rational, ToInt64RejectsFractions) {
  EXPECT_EQ(Rational(-9).to_int64(), -9);
  EXPECT_THROW(Rational(1, 3).to_int64(), std::domain_error);
}

TEST(Domain, IntervalAndSet) {
  Domain d = Domain::interval(2, 5);
  EXPECT_TRUE(d.is_interval());
  EXPECT_EQ(d.size(), 4U);
  EXPECT_EQ(d.str(), "2..5");
  Domain s = Domain::set({5, 1, 3});
  EXPECT_FALSE(s.is_interval());
  EXPECT_EQ(s.min(), 1);
  EXPECT_EQ(s.max(), 5);
  EXPECT_EQ(s.values(), (std::vector<std::int64_t>{1, 3, 5}));
  EXPECT_FALSE(s.contains(2));
  EXPECT_EQ(s.str(), "{1,3,5}");
}

TEST(Domain, ContiguousSetBecomesInterval) {
  EXPECT_EQ(Domain::set({3, 1, 2}), Domain::interval(1, 3));
}

TEST(Domain, EmptyIsRejected) {
  EXPECT_THROW(Domain::interval(3, 2), std::invalid_argument);
  EXPECT_THROW(Domain::set({}), std::invalid_argument);
}

TEST(Domain, RestrictAndShift) {
  Domain s = Domain::set({0, 2, 7});
  EXPECT_EQ(*s.restrict_to(1, 7), Domain::set({2, 7}));
  EXPECT_EQ(*s.restrict_to(2, 6), Domain::singleton(2));
  EXPECT_FALSE(s.restrict_to(3, 6).has_value());
  EXPECT_EQ(s.shifted(-2), Domain::set({-2, 0, 5}));
}

TEST(Domain, Hulls) {
  EXPECT_EQ(product_hull(0, 1, 0, 2), (std::make_pair<std::int64_t, std::int64_t>(0, 2)));
  EXPECT_EQ(product_hull(-2, 1, -2, 1), (std::make_pair<std::int64_t, std::int64_t>(-2, 4)));
  EXPECT_EQ(square_hull(-2, 1), (std::make_pair<std::int64_t, std::int64_t>(0, 4)));
  EXPECT_EQ(square_hull(-3, -2), (std::make_pair<std::int64_t, std::int64_t>(4, 9)));
}

TEST(AffineExpr, EvaluatesExactly) {
  AffineExpr e = AffineExpr::term(0, 3);
  e.add_term(1, -2);
  EXPECT_EQ(eval_affine(e, {{0, 1}, {1, 2}}), Rational(-1));
  EXPECT_EQ(eval_affine(AffineExpr(Rational(5, 2)), {}), Rational(5, 2));
  AffineExpr shift = AffineExpr::term(7);
  shift.add_constant(2);
  EXPECT_EQ(eval_affine(shift, {{7, 3}}), Rational(5));
  EXPECT_THROW(eval_affine(e, {{0, 1}}), std::out_of_range);
}

TEST(AffineExpr, DropsZeroCoefficients) {
  AffineExpr e = AffineExpr::term(0, 2);
  e.add_term(0, -2);
  EXPECT_TRUE(e.is_constant());
  EXPECT_TRUE(e.terms().empty());
}

TEST(AffineExpr, SubstituteAndDenominators) {
  AffineExpr e = AffineExpr::term(0, Rational(1, 2));
  e.add_term(1, Rational(1, 3));
  EXPECT_EQ(e.denominator_lcm(), 6);
  AffineExpr repl = AffineExpr::term(2, 2);
  repl.add_constant(4);
  EXPECT_TRUE(e.substitute(0, repl));
  EXPECT_EQ(e.coeff(2), Rational(1));
  EXPECT_EQ(e.constant(), Rational(2));
  EXPECT_FALSE(e.substitute(0, repl));
}

TEST(SubstitutionForest, AddsAndRejectsCycles) {
  SubstitutionForest f;
  AffineExpr shift = AffineExpr::term(1);
  shift.add_constant(2);
  f = add_substitution(f, 0, shift);
  EXPECT_EQ(f.size(), 1U);
  EXPECT_THROW(f.add(0, AffineExpr::term(3)), std::invalid_argument);
  EXPECT_THROW(f.add(5, AffineExpr::term(5)), std::invalid_argument);
  AffineExpr onehot = AffineExpr::term(10);
  onehot.add_term(11, 3).add_term(12, 5);
  f = add_substitution(f, 4, onehot);
  EXPECT_EQ(f.size(), 2U);
  // 1 := 0 would close the loop 0 -> 1 -> 0.
  EXPECT_THROW(f.add(1, AffineExpr::term(0)), std::invalid_argument);
}

TEST(SubstitutionForest, Resolves) {
  SubstitutionForest shift;
  AffineExpr e = AffineExpr::term(1);
  e.add_constant(2);
  shift.add(0, e);
  EXPECT_EQ(resolve_assignment(shift, {{1, 0}}).at(0), 2);

  SubstitutionForest onehot;
  AffineExpr sum = AffineExpr::term(1);
  sum.add_term(2, 3).add_term(3, 5);
  onehot.add(0, sum);
  EXPECT_EQ(onehot.resolve({{1, 0}, {2, 1}, {3, 0}}).at(0), 3);

  SubstitutionForest chain;
  chain.add(0, e);
  AffineExpr z = AffineExpr::term(0, 2);
  z.add_constant(1);
  chain.add(2, z);
  Assignment full = chain.resolve({{1, 1}});
  EXPECT_EQ(full.at(0), 3);
  EXPECT_EQ(full.at(2), 7);
}

TEST(SubstitutionForest, UnassignedLeafAndFraction) {
  SubstitutionForest f;
  f.add(0, AffineExpr::term(1, Rational(1, 2)));
  EXPECT_THROW(f.resolve({}), std::out_of_range);
  EXPECT_THROW(f.resolve({{1, 1}}), std::logic_error);
}

namespace {

QipModel raw_example() {
  QipModel m;
  VarId x = m.add_variable("x", Domain::interval(0, 1), VarKind::original);
  VarId y = m.add_variable("y", Domain::interval(0, 2), VarKind::original);
  AffineExpr e = AffineExpr::term(x, 3);
  e.add_term(y, -2);
  m.add_linear(e, Relation::le_zero);
  return m;
}

bool mentions(const std::vector<std::string>& diags, const std::string& word) {
  for (const auto& d : diags) {
    if (d.find(word) != std::string::npos) {
      return true;
    }
  }
  return false;
}

}  // namespace

TEST(CheckModel, WellFormedRawModel) { EXPECT_TRUE(check_model(raw_example()).empty()); }

TEST(CheckModel, BinaryStageWithWideDomain) {
  QipModel m;
  m.add_variable("x", Domain::interval(0, 2), VarKind::original);
  m.stage = Stage::binary;
  EXPECT_TRUE(mentions(check_model(m), "stage violation"));
}

TEST(CheckModel, InequalityAfterSlackStage) {
  QipModel m = raw_example();
  m.stage = Stage::no_inequalities;
  EXPECT_TRUE(mentions(check_model(m), "stage violation"));
}

TEST(CheckModel, ProductOrdering) {
  QipModel m;
  VarId x = m.add_variable("x", Domain::interval(0, 1), VarKind::original);
  VarId y1 = m.add_variable("y1", Domain::interval(0, 1), VarKind::product_result);
  VarId y2 = m.add_variable("y2", Domain::interval(0, 1), VarKind::product_result);
  m.products.push_back({y1, y2, x});
  m.products.push_back({y2, x, x});
  EXPECT_TRUE(mentions(check_model(m), "ordering violation"));
  std::swap(m.products[0], m.products[1]);
  EXPECT_TRUE(check_model(m).empty());
}

TEST(CheckModel, EncodingBitMustBeBinary) {
  QipModel m;
  m.add_variable("b", Domain::interval(0, 3), VarKind::encoding_bit);
  EXPECT_FALSE(check_model(m).empty());
}

TEST(QipModel, ConstantConstraintsAreDecided) {
  QipModel m;
  EXPECT_FALSE(m.add_linear(AffineExpr(Rational(0)), Relation::eq_zero).has_value());
  EXPECT_FALSE(m.add_linear(AffineExpr(Rational(-1)), Relation::le_zero).has_value());
  EXPECT_TRUE(m.add_linear(AffineExpr(Rational(1)), Relation::le_zero).has_value());
  EXPECT_TRUE(m.add_linear(AffineExpr(Rational(2)), Relation::eq_zero).has_value());
  EXPECT_TRUE(m.linear.empty());
}

TEST(QipModel, SubstituteRetiresAndRecords) {
  QipModel m = raw_example();
  AffineExpr two(Rational(2));
  EXPECT_FALSE(m.substitute(1, two).has_value());
  EXPECT_FALSE(m.var(1).live);
  EXPECT_TRUE(m.forest.defines(1));
  ASSERT_EQ(m.linear.size(), 1U);
  EXPECT_EQ(m.linear[0].expr.constant(), Rational(-4));
  EXPECT_TRUE(check_model(m).empty());
}

TEST(QipModel, DetachResult) {
  QipModel m;
  VarId x = m.add_variable("x", Domain::interval(0, 2), VarKind::original);
  VarId w = m.add_variable("w", Domain::interval(0, 3), VarKind::original);
  VarId y = m.add_variable("y", Domain::interval(1, 4), VarKind::product_result);
  m.products.push_back({y, x, w});
  VarId fresh = m.detach_result(0);
  EXPECT_EQ(m.products[0].result, fresh);
  EXPECT_EQ(m.domain(fresh), Domain::interval(0, 6));
  ASSERT_EQ(m.linear.size(), 1U);
  EXPECT_EQ(m.linear[0].expr.coeff(y), Rational(1));
  EXPECT_EQ(m.linear[0].expr.coeff(fresh), Rational(-1));
  EXPECT_FALSE(m.in_any_product(y));
}
