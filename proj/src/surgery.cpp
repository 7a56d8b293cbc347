#include "lnposet/surgery.hpp"

#include <stdexcept>
#include <string>

#include "lnposet/errors.hpp"

namespace lnposet {

void validate_order_embedding(const FinitePoset& q, const FinitePoset& target, std::span<const Element> map) {
  if (map.size() != q.size()) throw NotAnEmbedding("embedding must be defined on every element of Q");
  std::vector<bool> hit(target.size(), false);
  for (Element y : map) {
    if (y >= target.size()) throw NotAnEmbedding("embedding image out of range");
    if (hit[y]) throw NotAnEmbedding("embedding is not injective at " + std::to_string(y));
    hit[y] = true;
  }
  for (Element a = 0; a < q.size(); ++a)
    for (Element b = 0; b < q.size(); ++b)
      if (q.leq(a, b) != target.leq(map[a], map[b]))
        throw NotAnEmbedding("order not reflected between Q elements " + std::to_string(a) + " and " +
                             std::to_string(b));
}

void validate_embedded_subposet(const FinitePoset& p0, const FinitePoset& p1, const EmbeddedSubposet& e) {
  validate_order_embedding(e.q, p0, e.i0);
  validate_order_embedding(e.q, p1, e.i1);
}

BridgeMatrix bridge_matrix(const FinitePoset& p0, const FinitePoset& p1, const EmbeddedSubposet& e) {
  BridgeMatrix b{std::vector<Row>(p0.size(), Row(p1.size()))};
  for (Element q = 0; q < e.q.size(); ++q) {
    const Row& below = p0.down_row(e.i0[q]);
    const Row& above = p1.up_row(e.i1[q]);
    for (auto x = below.find_first(); x != Row::npos; x = below.find_next(x)) b.rows[x] |= above;
  }
  return b;
}

ConnectSum connect_sum(const FinitePoset& p0, const FinitePoset& p1, const EmbeddedSubposet& e) {
  validate_embedded_subposet(p0, p1, e);
  const std::size_t m0 = p0.size();
  const std::size_t m = m0 + p1.size();
  BridgeMatrix bridge = bridge_matrix(p0, p1, e);

  std::vector<std::string> labels;
  std::vector<Row> up(m, Row(m));
  for (Element x = 0; x < m0; ++x) {
    labels.push_back("(" + p0.label(x) + ",0)");
    for (Element y = 0; y < m0; ++y)
      if (p0.leq(x, y)) up[x].set(y);
    for (Element y = 0; y < p1.size(); ++y)
      if (bridge(x, y)) up[x].set(m0 + y);
  }
  for (Element x = 0; x < p1.size(); ++x) {
    labels.push_back("(" + p1.label(x) + ",1)");
    for (Element y = 0; y < p1.size(); ++y)
      if (p1.leq(x, y)) up[m0 + x].set(m0 + y);
  }
  // The constructor re-checks transitivity across the bridge.
  return ConnectSum{FinitePoset(std::move(labels), std::move(up)), std::move(bridge), m0};
}

MobiusTable mobius_conn_sum(const FinitePoset& p0, const FinitePoset& p1, const EmbeddedSubposet& e) {
  return mobius_conn_sum(p0, p1, e, mobius_by_recursion(p0), mobius_by_recursion(p1));
}

MobiusTable mobius_conn_sum(const FinitePoset& p0, const FinitePoset& p1, const EmbeddedSubposet& e,
                            const MobiusTable& mu0, const MobiusTable& mu1) {
  validate_embedded_subposet(p0, p1, e);
  const std::size_t m0 = p0.size();
  const std::size_t m1 = p1.size();
  const BridgeMatrix bridge = bridge_matrix(p0, p1, e);
  MobiusTable mu(m0 + m1);
  for (Element x = 0; x < m0; ++x)
    for (Element y = 0; y < m0; ++y) mu.set(x, y, mu0(x, y));
  for (Element x = 0; x < m1; ++x)
    for (Element y = 0; y < m1; ++y) mu.set(m0 + x, m0 + y, mu1(x, y));

  for (Element x = 0; x < m0; ++x) {
    // left[p1] = sum_{p0} mu0(x, p0) B(p0, p1)
    std::vector<std::int64_t> left(m1, 0);
    const Row& above = p0.up_row(x);
    for (auto p = above.find_first(); p != Row::npos; p = above.find_next(p)) {
      const std::int64_t a = mu0(x, p);
      if (a == 0) continue;
      const Row& reach = bridge.rows[p];
      for (auto r = reach.find_first(); r != Row::npos; r = reach.find_next(r))
        if (__builtin_add_overflow(left[r], a, &left[r])) throw Overflow(x, m0 + r);
    }
    for (Element y = 0; y < m1; ++y) {
      if (!bridge(x, y)) continue;
      std::int64_t sum = 0;
      const Row& below = p1.down_row(y);
      for (auto r = below.find_first(); r != Row::npos; r = below.find_next(r)) {
        std::int64_t term;
        if (__builtin_mul_overflow(left[r], mu1(r, y), &term) || __builtin_add_overflow(sum, term, &sum))
          throw Overflow(x, m0 + y);
      }
      mu.set(x, m0 + y, -sum);
    }
  }
  return mu;
}

std::variant<MMap, MFailure> check_M_conditions(const FinitePoset& p, std::span<const Element> q_side,
                                                MDirection direction) {
  const std::size_t m = p.size();
  Row members(m);
  for (Element q : q_side) {
    if (q >= m) throw InvalidArgument("Q element out of range");
    members.set(q);
  }
  const bool plus = direction == MDirection::kPlus;
  MMap out{std::vector<std::optional<Element>>(m)};
  for (Element x = 0; x < m; ++x) {
    const Row candidates = members & (plus ? p.up_row(x) : p.down_row(x));
    ElementSet extremal;
    for (auto c = candidates.find_first(); c != Row::npos; c = candidates.find_next(c)) {
      // c is minimal (maximal) when no other candidate lies strictly below (above) it.
      const Row& beyond = plus ? p.down_row(c) : p.up_row(c);
      if ((candidates & beyond).count() == 1) extremal.push_back(c);
    }
    if (extremal.size() > 1) return MFailure{x, std::move(extremal)};
    if (extremal.size() == 1) out.value[x] = extremal.front();
  }
  return out;
}

MobiusTable mobius_cross_closed_form(const FinitePoset& p0, const FinitePoset& p1, const EmbeddedSubposet& e) {
  validate_embedded_subposet(p0, p1, e);
  const auto plus = check_M_conditions(p0, e.i0, MDirection::kPlus);
  if (const auto* fail = std::get_if<MFailure>(&plus))
    throw MConditionFailed("Q0 violates the plus condition at P0 element " + std::to_string(fail->x), fail->x);
  const auto minus = check_M_conditions(p1, e.i1, MDirection::kMinus);
  if (const auto* fail = std::get_if<MFailure>(&minus))
    throw MConditionFailed("Q1 violates the minus condition at P1 element " + std::to_string(fail->x), fail->x);

  const std::size_t m0 = p0.size();
  const std::size_t m1 = p1.size();
  const MobiusTable mu0 = mobius_by_recursion(p0);
  const MobiusTable mu1 = mobius_by_recursion(p1);
  const MobiusTable mu_q = mobius_by_recursion(e.q);
  MobiusTable mu(m0 + m1);
  for (Element x = 0; x < m0; ++x)
    for (Element y = 0; y < m0; ++y) mu.set(x, y, mu0(x, y));
  for (Element x = 0; x < m1; ++x)
    for (Element y = 0; y < m1; ++y) mu.set(m0 + x, m0 + y, mu1(x, y));
  for (Element q = 0; q < e.q.size(); ++q)
    for (Element r = 0; r < e.q.size(); ++r) mu.set(e.i0[q], m0 + e.i1[r], -mu_q(q, r));
  return mu;
}

}  // namespace lnposet
