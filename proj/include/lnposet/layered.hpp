#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "lnposet/incidence.hpp"
#include "lnposet/poset.hpp"

namespace lnposet {

/*
  Two-level layer structure: an increasing sign map onto {-1, +1} and a lift
  from the lower layer P- onto the upper layer P+ that is an order isomorphism
  with x < lift(x). The drop map is the inverse of the lift.
*/
struct LayerStructure {
  std::vector<int> sign;
  std::map<Element, Element> lift;

  ElementSet lower() const;
  ElementSet upper() const;
  std::map<Element, Element> drop() const;
};

struct LayerViolation {
  std::string what;
  Element x;
  std::optional<Element> y;
};

/// Exhaustive check of the layer axioms. With `require_lattice_compatibility`, p must
/// be a lattice, both layers sublattices and the lift a lattice isomorphism.
std::optional<LayerViolation> validate_layer(const FinitePoset& p, const LayerStructure& layer,
                                             bool require_lattice_compatibility = false);

/// Double of p on p x {-1, +1}: (x, -1) has index x, (x, +1) has index x + |p|.
struct LayeredDouble {
  FinitePoset poset;
  LayerStructure layer;  // sign = second coordinate, lift (x, -1) -> (x, +1)
};

/// Throws LayerInvalid when `layer` fails validate_layer.
LayeredDouble double_poset(const FinitePoset& p, const LayerStructure& layer);

struct PropertyMMaps {
  std::vector<Element> m_plus;   // min of P+ above x
  std::vector<Element> m_minus;  // max of P- below x
};

/// x has no candidate, or several extremal ones, on the indicated side.
struct PropertyMFailure {
  Element x;
  bool upper_side;
  ElementSet extremal;
};

std::variant<PropertyMMaps, PropertyMFailure> property_M_maps(const FinitePoset& p, const LayerStructure& layer);

/// Associated maps of the double, written in terms of those of p.
PropertyMMaps double_property_M(const FinitePoset& p, const LayerStructure& layer, const PropertyMMaps& maps);

/// Möbius function of the induced upper layer, re-indexed by elements of p
/// (pairs outside P+ are 0).
MobiusTable upper_layer_mobius(const FinitePoset& p, const LayerStructure& layer);

/// Möbius function of the double assembled from mu and the upper-layer table:
/// same layer copies mu; (x0, -1), (x1, +1) with x0 in P+ and x1 in P- gives
/// -mu_upper(x0, lift(x1)); anything else 0. Throws MConditionFailed without property (M).
MobiusTable mobius_double(const FinitePoset& p, const LayerStructure& layer, const MobiusTable& mu,
                          const MobiusTable& mu_upper);
MobiusTable mobius_double(const FinitePoset& p, const LayerStructure& layer);

}  // namespace lnposet
