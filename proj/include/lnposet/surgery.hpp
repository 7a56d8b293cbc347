#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "lnposet/incidence.hpp"
#include "lnposet/poset.hpp"

namespace lnposet {

/// A poset q sitting inside p0 and p1 as an induced subposet through i0 and i1.
struct EmbeddedSubposet {
  FinitePoset q;
  std::vector<Element> i0;  // q -> p0
  std::vector<Element> i1;  // q -> p1
};

/// Throws NotAnEmbedding unless `map` is injective with x <=_q y <=> map(x) <=_target map(y).
void validate_order_embedding(const FinitePoset& q, const FinitePoset& target, std::span<const Element> map);
void validate_embedded_subposet(const FinitePoset& p0, const FinitePoset& p1, const EmbeddedSubposet& e);

/// B(x, y) = 1 iff x <=_0 i0(q) and i1(q) <=_1 y for some q.
struct BridgeMatrix {
  std::vector<Row> rows;  // rows[x] is a |P1|-wide bitset

  bool operator()(Element x, Element y) const { return rows[x].test(y); }
};

BridgeMatrix bridge_matrix(const FinitePoset& p0, const FinitePoset& p1, const EmbeddedSubposet& e);

/// Connect sum on P0 ⊔ P1: P0 keeps its indices, P1 element y becomes offset + y.
/// Labels are "(label,0)" and "(label,1)".
struct ConnectSum {
  FinitePoset poset;
  BridgeMatrix bridge;
  std::size_t offset;
};

ConnectSum connect_sum(const FinitePoset& p0, const FinitePoset& p1, const EmbeddedSubposet& e);

/// Möbius function of the connect sum from the block inverse: same-side blocks copy
/// mu0 and mu1, the cross block is -mu0 * B * mu1, P1 -> P0 is zero.
MobiusTable mobius_conn_sum(const FinitePoset& p0, const FinitePoset& p1, const EmbeddedSubposet& e);
MobiusTable mobius_conn_sum(const FinitePoset& p0, const FinitePoset& p1, const EmbeddedSubposet& e,
                            const MobiusTable& mu0, const MobiusTable& mu1);

enum class MDirection { kPlus, kMinus };

/// Partial map x -> min(Q ∩ P^{>=x}) (plus) or y -> max(Q ∩ P^{<=y}) (minus).
struct MMap {
  std::vector<std::optional<Element>> value;
};

/// The candidate set of `x` has several minimal (plus) or maximal (minus) elements.
struct MFailure {
  Element x;
  ElementSet extremal;
};

std::variant<MMap, MFailure> check_M_conditions(const FinitePoset& p, std::span<const Element> q_side,
                                                MDirection direction);

/// Closed form valid when (P0, Q0) satisfies the plus condition and (P1, Q1) the
/// minus one: the cross entry at (i0(q), i1(q')) is -mu_Q(q, q'), every other
/// cross entry is 0. Throws MConditionFailed carrying the witness otherwise.
MobiusTable mobius_cross_closed_form(const FinitePoset& p0, const FinitePoset& p1, const EmbeddedSubposet& e);

}  // namespace lnposet
