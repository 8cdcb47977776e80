// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <random>

#include "../support/domain_fixtures.hpp"
#include "rtune/domains/poset.hpp"

using namespace rtune;
using rtune::testing::kX;
using rtune::testing::kY;
using rtune::testing::small_function;

namespace {

const std::vector<Int> kNoThresholds;

LinExpr v(VarId x) { return LinExpr::var(x); }
LinExpr c(Int k) { return LinExpr::constant_of(k); }

template <class D>
D with_range(const Function& f, VarId x, Int lo, Int hi) {
  D s = D::top(layout_of(f));
  s.assign_interval(x, Interval(lo, hi));
  return s;
}

}  // namespace

TEST(Interval, LeqJoinWidenNarrow) {
  EXPECT_TRUE(Interval(1, 2).leq(Interval(0, 5)));
  EXPECT_TRUE(Interval::bottom().leq(Interval(3, 3)));
  EXPECT_EQ(Interval(0, 1).join(Interval(3, 4)), Interval(0, 4));
  EXPECT_EQ(Interval(0, 1).widen(Interval(0, 2), kNoThresholds), Interval(Bound(0), kPlusInf));
  const std::vector<Int> t{10, 100};
  EXPECT_EQ(Interval(0, 1).widen(Interval(0, 2), t), Interval(0, 10));
  EXPECT_EQ(Interval(0, 5).widen(Interval(0, 5), kNoThresholds), Interval(0, 5));
  EXPECT_EQ(Interval(Bound(0), kPlusInf).narrow(Interval(0, 10)), Interval(0, 10));
  EXPECT_EQ(Interval(0, 20).narrow(Interval(0, 10)), Interval(0, 20));
  EXPECT_TRUE(Interval(0, 20).narrow(Interval::bottom()).is_bottom());
}

TEST(DisInt, JoinKeepsSeparatedDisjuncts) {
  const auto j = DisjunctiveInterval::of(Interval(0, 1)).join(DisjunctiveInterval::of(Interval(3, 4)));
  ASSERT_EQ(j.parts().size(), 2u);
  EXPECT_EQ(j.parts()[0], Interval(0, 1));
  EXPECT_EQ(j.parts()[1], Interval(3, 4));
  const auto adjacent = DisjunctiveInterval::of(Interval(0, 1)).join(DisjunctiveInterval::of(Interval(2, 4)));
  EXPECT_EQ(adjacent.parts().size(), 1u);
}

TEST(DisInt, MergesSmallestGapWhenFull) {
  const auto d = DisjunctiveInterval::from_parts(
      {Interval(0, 0), Interval(10, 10), Interval(13, 13), Interval(20, 20), Interval(30, 30)});
  ASSERT_EQ(d.parts().size(), 4u);
  EXPECT_EQ(d.parts()[1], Interval(10, 13));
}

TEST(DisInt, AssumeFiltersDisjuncts) {
  const Function f = small_function();
  auto s = DisIntDomain::top(layout_of(f));
  s.set_value(kX, DisjunctiveInterval::from_parts({Interval(0, 1), Interval(5, 6)}));
  assume(s, BoolExpr::compare(v(kX), RelOp::Ge, c(4)));
  ASSERT_EQ(s.value(kX).parts().size(), 1u);
  EXPECT_EQ(s.value(kX).parts()[0], Interval(5, 6));
}

TEST(Ric, CongruenceJoinAndReduce) {
  const Congruence j = Congruence(4, 1).join(Congruence(6, 1));
  EXPECT_EQ(j, Congruence(2, 1));
  for (Int n = -50; n <= 50; ++n) {
    if (Congruence(4, 1).contains(n) || Congruence(6, 1).contains(n)) EXPECT_TRUE(j.contains(n)) << n;
  }
  const auto r = reduce(Interval(0, 10), Congruence(4, 1));
  EXPECT_EQ(r.interval(), Interval(1, 9));
  EXPECT_TRUE(reduce(Interval(2, 3), Congruence(4, 1)).is_bottom());
  EXPECT_TRUE(reduce(Interval::bottom(), Congruence(4, 1)).is_bottom());
}

TEST(Intervals, TransferExamples) {
  const Function f = small_function();
  auto s = with_range<IntervalDomain>(f, kX, 0, 3);
  transfer(s, f, stmt::Assign{kY, v(kX) + c(1)}, {});
  EXPECT_EQ(s.value(kY), Interval(1, 4));

  auto post = IntervalDomain::top(layout_of(f));
  post.assign_interval(kY, Interval(10, 10));
  backward_transfer(post, f, stmt::Assign{kY, v(kX) + c(1)}, {});
  EXPECT_EQ(post.value(kX), Interval(9, 9));

  auto h = with_range<IntervalDomain>(f, kX, 0, 5);
  backward_transfer(h, f, stmt::Havoc{kX, Bound(0), Bound(100)}, {});
  EXPECT_TRUE(h.value(kX).is_top());

  auto b = IntervalDomain::bottom(layout_of(f));
  backward_transfer(b, f, stmt::Havoc{kX, Bound(0), Bound(100)}, {});
  EXPECT_TRUE(b.is_bottom());
}

TEST(Zones, ClosureAndMeet) {
  const Function f = small_function();
  auto s = ZoneDomain::top(layout_of(f));
  assume(s, BoolExpr::compare(v(kX) - v(kY), RelOp::Le, c(2)));
  assume(s, BoolExpr::compare(v(kY), RelOp::Le, c(3)));
  EXPECT_EQ(s.bounds(kX).hi(), Bound(5));

  auto a = ZoneDomain::top(layout_of(f));
  assume(a, BoolExpr::compare(v(kX) - v(kY), RelOp::Le, c(3)));
  auto b = ZoneDomain::top(layout_of(f));
  assume(b, BoolExpr::compare(v(kY) - v(kX), RelOp::Le, c(-5)));
  EXPECT_TRUE(a.meet(b).is_bottom());

  auto tight = ZoneDomain::top(layout_of(f));
  assume(tight, BoolExpr::compare(v(kX) - v(kY), RelOp::Le, c(0)));
  EXPECT_FALSE(a.leq(tight));
  EXPECT_TRUE(tight.leq(a));
}

TEST(Octagons, SumConstraint) {
  const Function f = small_function();
  auto s = OctagonDomain::top(layout_of(f));
  assume(s, BoolExpr::compare(v(kX) + v(kY), RelOp::Le, c(4)));
  assume(s, BoolExpr::compare(v(kY), RelOp::Ge, c(1)));
  EXPECT_EQ(s.bounds(kX).hi(), Bound(3));
  s.assign(kX, v(kX) + c(2));
  EXPECT_EQ(s.bounds(kX).hi(), Bound(5));
}

TEST(Product, BooleanGuardRefinesZone) {
  const Function f = small_function();
  auto s = BoolZoneProduct::top(layout_of(f));
  transfer(s, f, stmt::BoolAssign{0, BoolExpr::compare(v(kX), RelOp::Gt, c(5))}, {});
  auto t = s;
  assume(t, BoolExpr::variable(0));
  EXPECT_EQ(t.zones().bounds(kX).lo(), Bound(6));
  auto e = s;
  assume(e, BoolExpr::compare(v(kX), RelOp::Le, c(0)));
  EXPECT_EQ(e.bool_value(0), Tri::False);
  transfer(t, f, stmt::Assign{kX, c(0)}, {});
  EXPECT_TRUE(t.links().empty());
  EXPECT_TRUE(BoolZoneProduct::bottom(layout_of(f)).is_bottom());
}

TEST(Poset, DefaultComparability) {
  const DomainPoset p = DomainPoset::default_poset();
  EXPECT_TRUE(p.comparable(DomainId::Intervals, DomainId::Octagons));
  EXPECT_FALSE(p.comparable(DomainId::Bool, DomainId::Zones));
  EXPECT_TRUE(p.comparable(DomainId::Zones, DomainId::Zones));
  EXPECT_FALSE(p.is_implemented(DomainId::Polyhedra));
  EXPECT_EQ(p.implemented().size(), 7u);
  EXPECT_EQ(p.successors(DomainId::Intervals),
            (std::vector<DomainId>{DomainId::Ric, DomainId::DisInt, DomainId::Zones}));
  EXPECT_EQ(p.maximal(p.implemented()),
            (std::vector<DomainId>{DomainId::Ric, DomainId::DisInt, DomainId::Octagons, DomainId::BoolZones}));
}

TEST(Poset, IncomparablePairsFixture) {
  const DomainPoset p = DomainPoset::default_poset();
  using D = DomainId;
  std::set<std::pair<D, D>> expected = {
      {D::Bool, D::Intervals},  {D::Bool, D::Ric},       {D::Bool, D::DisInt},     {D::Bool, D::Zones},
      {D::Bool, D::Octagons},   {D::Ric, D::DisInt},     {D::Ric, D::Zones},       {D::Ric, D::Octagons},
      {D::DisInt, D::Zones},    {D::DisInt, D::Octagons}, {D::Ric, D::BoolZones}, {D::DisInt, D::BoolZones},
      {D::Octagons, D::BoolZones}};
  std::set<std::pair<D, D>> actual;
  const auto ids = p.implemented();
  for (std::size_t i = 0; i < ids.size(); ++i) {
    for (std::size_t j = i + 1; j < ids.size(); ++j) {
      EXPECT_EQ(p.comparable(ids[i], ids[j]), p.comparable(ids[j], ids[i]));
      if (!p.comparable(ids[i], ids[j])) actual.emplace(ids[i], ids[j]);
    }
  }
  EXPECT_EQ(actual, expected);
}

TEST(Poset, ParseErrors) {
  EXPECT_THROW(DomainPoset::parse("zones < intervals\nintervals < zones\n"), PosetError);
  EXPECT_THROW(DomainPoset::parse("zones < nonsense\n"), PosetError);
  const auto single = DomainPoset::parse("domain zones\n");
  EXPECT_EQ(single.implemented(), std::vector<DomainId>{DomainId::Zones});
}

TEST(State, VariantDispatch) {
  const Function f = small_function();
  const auto a = AbstractState::top(DomainId::Intervals, layout_of(f));
  const auto b = AbstractState::bottom(DomainId::Intervals, layout_of(f));
  EXPECT_TRUE(leq(b, a));
  EXPECT_EQ(a.domain(), DomainId::Intervals);
  EXPECT_THROW(leq(a, AbstractState::top(DomainId::Zones, layout_of(f))), DomainMismatch);
  EXPECT_THROW(AbstractState::top(DomainId::Polyhedra, layout_of(f)), UnimplementedDomain);
  EXPECT_THROW(narrow(b, a), std::invalid_argument);
  const auto z1 = AbstractState::top(DomainId::Zones, VarLayout{2, 0});
  EXPECT_THROW(join(z1, AbstractState::top(DomainId::Zones, VarLayout{3, 0})), LayoutMismatch);
}

// Randomized lattice laws, per domain.

template <class D>
class LatticeLaws : public ::testing::Test {};

using AllDomains =
    ::testing::Types<BoolDomain, IntervalDomain, RicDomain, DisIntDomain, ZoneDomain, OctagonDomain, BoolZoneProduct>;
TYPED_TEST_SUITE(LatticeLaws, AllDomains);

TYPED_TEST(LatticeLaws, JoinMeetBounds) {
  const Function f = small_function();
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    const auto a = rtune::testing::random_state<TypeParam>(rng, f);
    const auto b = rtune::testing::random_state<TypeParam>(rng, f);
    const auto j = a.join(b);
    const auto m = a.meet(b);
    ASSERT_TRUE(a.leq(j) && b.leq(j)) << a.to_string(&f) << " | " << b.to_string(&f);
    ASSERT_TRUE(m.leq(a) && m.leq(b)) << a.to_string(&f) << " | " << b.to_string(&f);
    ASSERT_TRUE(a.leq(a));
  }
}

TYPED_TEST(LatticeLaws, WidenNarrowSandwich) {
  const Function f = small_function();
  std::mt19937_64 rng(11);
  const std::vector<Int> t{-5, 0, 3, 10};
  for (int i = 0; i < 200; ++i) {
    const auto a = rtune::testing::random_state<TypeParam>(rng, f);
    const auto b = rtune::testing::random_state<TypeParam>(rng, f);
    const auto w = a.widen(b, t);
    ASSERT_TRUE(a.leq(w) && b.leq(w));
    const auto lo = a.meet(b);
    const auto n = a.narrow(lo);
    ASSERT_TRUE(lo.leq(n) && n.leq(a)) << a.to_string(&f) << " | " << lo.to_string(&f);
  }
}

TYPED_TEST(LatticeLaws, MembershipPreserved) {
  const Function f = small_function();
  std::mt19937_64 rng(13);
  for (int i = 0; i < 20; ++i) {
    const auto a = rtune::testing::random_state<TypeParam>(rng, f);
    const auto b = rtune::testing::random_state<TypeParam>(rng, f);
    const Stmt st = rtune::testing::random_stmt(rng);
    auto post = a;
    transfer(post, f, st, {});
    const auto j = a.join(b);
    rtune::testing::for_each_point([&](const Point& p) {
      const bool in_a = a.contains(p);
      if (in_a || b.contains(p)) ASSERT_TRUE(j.contains(p));
      if (!in_a) return;
      for (const Point& q : rtune::testing::concrete_post(st, p)) {
        ASSERT_TRUE(post.contains(q)) << a.to_string(&f) << " --" << st.index() << "--> " << post.to_string(&f);
      }
    });
  }
}
