#include <gtest/gtest.h>

#include <algorithm>

#include "lnposet/errors.hpp"
#include "lnposet/ln.hpp"
#include "lnposet/random_poset.hpp"
#include "lnposet/surgery.hpp"
#include "oracles.hpp"

namespace lnposet {
namespace {

Element idx(unsigned n, std::initializer_list<int> members) {
  return ln::LnElement::from_members(n, std::vector<int>(members)).bits();
}

FinitePoset point() { return FinitePoset::chain(1); }

// P0 = P1 = 2-chain glued along the top of P0 and the bottom of P1.
EmbeddedSubposet top_to_bottom() { return EmbeddedSubposet{point(), {1}, {0}}; }

void expect_tables_equal(const MobiusTable& a, const MobiusTable& b) {
  const auto d = first_difference(a, b);
  EXPECT_FALSE(d) << "first difference at (" << d->first << ", " << d->second << ")";
}

TEST(ConnectSum, L2AlongItselfIsProductWithTwoChain) {
  const FinitePoset l2 = ln::build_ln(2);
  const EmbeddedSubposet e{l2, {0, 1, 2, 3}, {0, 1, 2, 3}};
  const ConnectSum glued = connect_sum(l2, l2, e);
  // {-1, 1} x L_2 with the product order; (eps, x) has index 4 * [eps = 1] + x.
  std::vector<Row> up(8, Row(8));
  for (Element a = 0; a < 8; ++a)
    for (Element b = 0; b < 8; ++b)
      if (a / 4 <= b / 4 && l2.leq(a % 4, b % 4)) up[a].set(b);
  const FinitePoset product(std::vector<std::string>(8, ""), up);
  const auto f = find_isomorphism(glued.poset, product);
  ASSERT_TRUE(f);
  EXPECT_TRUE(verify_isomorphism(glued.poset, product, *f));
}

TEST(ConnectSum, TwoChainsThroughOnePointMakeAFourChain) {
  const FinitePoset c2 = FinitePoset::chain(2);
  const ConnectSum glued = connect_sum(c2, c2, top_to_bottom());
  EXPECT_TRUE(glued.poset.same_relation(FinitePoset::chain(4)));
}

TEST(ConnectSum, EmptyQGivesDisjointUnion) {
  const FinitePoset c2 = FinitePoset::chain(2);
  const EmbeddedSubposet e{FinitePoset::antichain(0), {}, {}};
  const ConnectSum glued = connect_sum(c2, c2, e);
  for (const Row& row : glued.bridge.rows) EXPECT_TRUE(row.none());
  EXPECT_FALSE(glued.poset.comparable(0, 2));
  EXPECT_FALSE(glued.poset.comparable(1, 3));
}

TEST(ConnectSum, RejectsNonEmbedding) {
  const FinitePoset c2 = FinitePoset::chain(2);
  // Q is a 2-antichain but its images in a chain are comparable.
  const EmbeddedSubposet e{FinitePoset::antichain(2), {0, 1}, {0, 1}};
  EXPECT_THROW(connect_sum(c2, c2, e), NotAnEmbedding);
  const EmbeddedSubposet repeated{FinitePoset::antichain(2), {0, 0}, {0, 1}};
  EXPECT_THROW(connect_sum(FinitePoset::antichain(2), FinitePoset::antichain(2), repeated), NotAnEmbedding);
}

TEST(MobiusConnSum, SinglePointGlue) {
  const FinitePoset c2 = FinitePoset::chain(2);
  const MobiusTable mu = mobius_conn_sum(c2, c2, top_to_bottom());
  EXPECT_EQ(mu(1, 2), -1);  // top of P0, bottom of P1
  EXPECT_EQ(mu(0, 2), 0);   // -(mu0(a,a) + mu0(a,b)) = -(1 - 1)
  expect_tables_equal(mu, mobius_by_inversion(connect_sum(c2, c2, top_to_bottom()).poset));
}

TEST(MobiusConnSum, DisjointUnionHasNoCrossValues) {
  const FinitePoset c2 = FinitePoset::chain(2);
  const MobiusTable mu = mobius_conn_sum(c2, c2, EmbeddedSubposet{FinitePoset::antichain(0), {}, {}});
  for (Element x = 0; x < 2; ++x)
    for (Element y = 2; y < 4; ++y) EXPECT_EQ(mu(x, y), 0);
}

TEST(CheckMConditions, DownClosedSublatticeSucceeds) {
  const FinitePoset l3 = ln::build_ln(3);
  const ElementSet q = down_set(l3, std::vector<Element>{idx(3, {2})});
  EXPECT_TRUE(is_lattice(induced_subposet(l3, q).poset));
  EXPECT_TRUE(std::holds_alternative<MMap>(check_M_conditions(l3, q, MDirection::kPlus)));
  EXPECT_TRUE(std::holds_alternative<MMap>(check_M_conditions(l3, q, MDirection::kMinus)));
}

TEST(CheckMConditions, TwoMinimalCandidatesFail) {
  // b below both u and v.
  const auto p = FinitePoset::from_cover_relations({"u", "v", "b"}, {{2, 0}, {2, 1}});
  const auto r = check_M_conditions(p, std::vector<Element>{0, 1}, MDirection::kPlus);
  ASSERT_TRUE(std::holds_alternative<MFailure>(r));
  EXPECT_EQ(std::get<MFailure>(r).x, 2U);
  EXPECT_EQ(std::get<MFailure>(r).extremal, (ElementSet{0, 1}));
}

TEST(CheckMConditions, UpperLayerOfL3) {
  const FinitePoset l3 = ln::build_ln(3);
  ElementSet upper;
  for (const auto& s : ln::all_elements(3))
    if (s.contains(3)) upper.push_back(s.bits());
  const auto r = check_M_conditions(l3, upper, MDirection::kPlus);
  ASSERT_TRUE(std::holds_alternative<MMap>(r));
  const MMap& map = std::get<MMap>(r);
  for (const auto& v : map.value) EXPECT_TRUE(v);
  EXPECT_EQ(*map.value[idx(3, {1})], idx(3, {3}));
}

TEST(ClosedForm, DoublingL2AlongItsLayers) {
  const FinitePoset l2 = ln::build_ln(2);
  // Q = upper layer {2}, {1,2}; i0 includes it in P0, i1 drops it to {}, {1} in P1.
  const ElementSet upper{idx(2, {2}), idx(2, {1, 2})};
  const Subposet q = induced_subposet(l2, upper);
  const EmbeddedSubposet e{q.poset, upper, {idx(2, {}), idx(2, {1})}};
  const ConnectSum glued = connect_sum(l2, l2, e);
  const MobiusTable closed = mobius_cross_closed_form(l2, l2, e);
  expect_tables_equal(closed, mobius_by_inversion(glued.poset));
  // P0 keeps its indices and P1 is offset by 4, which is Psi_2 on bit patterns.
  EXPECT_TRUE(glued.poset.same_relation(ln::build_ln(3)));
  const auto want = oracle::mobius(oracle::ln_relation(3));
  for (Element x = 0; x < 8; ++x)
    for (Element y = 0; y < 8; ++y) EXPECT_EQ(closed(x, y), want[x][y]);
  EXPECT_EQ(closed(idx(2, {2}), 4 + idx(2, {})), -1);
}

TEST(ClosedForm, SinglePointReducesToMinusDelta) {
  Rng rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    const FinitePoset p0 = random_poset(6, 0.4, rng);
    const FinitePoset p1 = random_poset(6, 0.4, rng);
    const Element q0 = std::uniform_int_distribution<Element>(0, 5)(rng);
    const Element q1 = std::uniform_int_distribution<Element>(0, 5)(rng);
    const EmbeddedSubposet e{point(), {q0}, {q1}};
    const MobiusTable closed = mobius_cross_closed_form(p0, p1, e);
    for (Element x = 0; x < 6; ++x)
      for (Element y = 0; y < 6; ++y) EXPECT_EQ(closed(x, 6 + y), (x == q0 && y == q1) ? -1 : 0);
    expect_tables_equal(closed, mobius_by_inversion(connect_sum(p0, p1, e).poset));
  }
}

TEST(ClosedForm, CrossPairsOutsideQVanish) {
  const FinitePoset c2 = FinitePoset::chain(2);
  const MobiusTable closed = mobius_cross_closed_form(c2, c2, top_to_bottom());
  const ConnectSum glued = connect_sum(c2, c2, top_to_bottom());
  ASSERT_TRUE(glued.poset.less(0, 2));  // bottom of P0 below the glued bottom of P1
  EXPECT_EQ(closed(0, 2), 0);
}

TEST(ClosedForm, ThrowsWithWitnessWhenConditionFails) {
  // P0 = b below u, v; Q = 2-antichain on u, v.
  const auto p0 = FinitePoset::from_cover_relations({"u", "v", "b"}, {{2, 0}, {2, 1}});
  const EmbeddedSubposet e{FinitePoset::antichain(2), {0, 1}, {0, 1}};
  try {
    mobius_cross_closed_form(p0, FinitePoset::antichain(2), e);
    FAIL() << "expected MConditionFailed";
  } catch (const MConditionFailed& err) {
    EXPECT_EQ(err.witness, 2U);
  }
}

TEST(RangeContainment, LiteralStatementFailsOnAPoint) {
  // Gluing two points gives a 2-chain with mu = -1 although every component range is {1}.
  const EmbeddedSubposet e{point(), {0}, {0}};
  const ConnectSum glued = connect_sum(point(), point(), e);
  const MobiusTable mu = mobius_cross_closed_form(point(), point(), e);
  EXPECT_EQ(mu.range(glued.poset), (std::set<std::int64_t>{-1, 1}));
  EXPECT_EQ(mobius_by_recursion(point()).range(point()), (std::set<std::int64_t>{1}));
}

class RandomSurgery : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(RandomSurgery, BlockFormulaClosedFormAndBridgeIdentities) {
  Rng rng(GetParam());
  int closed_form_cases = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const SurgeryInstance inst = random_surgery_instance(12, rng);
    const auto& [p0, p1, e] = inst;
    const std::size_t m0 = p0.size();
    const ConnectSum glued = connect_sum(p0, p1, e);
    const MobiusTable brute = mobius_by_inversion(glued.poset);
    expect_tables_equal(mobius_conn_sum(p0, p1, e), brute);
    for (Element y = 0; y < p1.size(); ++y)
      for (Element x = 0; x < m0; ++x) EXPECT_FALSE(glued.poset.leq(m0 + y, x));

    // Bridge entries straight from the definition.
    for (Element x = 0; x < m0; ++x) {
      for (Element y = 0; y < p1.size(); ++y) {
        bool witnessed = false;
        for (Element q = 0; q < e.q.size(); ++q) witnessed = witnessed || (p0.leq(x, e.i0[q]) && p1.leq(e.i1[q], y));
        EXPECT_EQ(glued.bridge(x, y), witnessed);
      }
    }

    const auto plus = check_M_conditions(p0, e.i0, MDirection::kPlus);
    const auto minus = check_M_conditions(p1, e.i1, MDirection::kMinus);
    if (!std::holds_alternative<MMap>(plus) || !std::holds_alternative<MMap>(minus)) continue;
    ++closed_form_cases;
    const MMap& qx = std::get<MMap>(plus);
    const MMap& qy = std::get<MMap>(minus);
    const MobiusTable closed = mobius_cross_closed_form(p0, p1, e);
    expect_tables_equal(closed, brute);

    auto q_of_p0 = [&](Element p) { return static_cast<Element>(std::find(e.i0.begin(), e.i0.end(), p) - e.i0.begin()); };
    auto q_of_p1 = [&](Element p) { return static_cast<Element>(std::find(e.i1.begin(), e.i1.end(), p) - e.i1.begin()); };
    for (Element x = 0; x < m0; ++x)
      for (Element q = 0; q < e.q.size(); ++q)
        if (qx.value[x]) EXPECT_EQ(p0.leq(x, e.i0[q]), p0.leq(*qx.value[x], e.i0[q]));
    for (Element y = 0; y < p1.size(); ++y)
      for (Element q = 0; q < e.q.size(); ++q)
        if (qy.value[y]) EXPECT_EQ(p1.leq(e.i1[q], y), p1.leq(e.i1[q], *qy.value[y]));
    for (Element x = 0; x < m0; ++x) {
      for (Element y = 0; y < p1.size(); ++y) {
        if (!qx.value[x] || !qy.value[y]) continue;
        const Element j1 = e.i1[q_of_p0(*qx.value[x])];
        const Element j0 = e.i0[q_of_p1(*qy.value[y])];
        EXPECT_EQ(glued.bridge(x, y), p1.leq(j1, y));
        EXPECT_EQ(glued.bridge(x, y), p0.leq(x, j0));
      }
    }

    std::set<std::int64_t> allowed{0};
    for (const auto& part : {mobius_by_recursion(p0).range(p0), mobius_by_recursion(p1).range(p1)})
      allowed.insert(part.begin(), part.end());
    for (std::int64_t v : mobius_by_recursion(e.q).range(e.q)) allowed.insert(-v);
    for (std::int64_t v : brute.range(glued.poset)) EXPECT_TRUE(allowed.contains(v)) << v;
  }
  EXPECT_GT(closed_form_cases, 5);
}

INSTANTIATE_TEST_SUITE_P(Seeds, RandomSurgery, ::testing::Values(0, 1, 2, 3));

}  // namespace
}  // namespace lnposet
