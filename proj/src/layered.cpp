#include "lnposet/layered.hpp"

#include "lnposet/errors.hpp"

namespace lnposet {

ElementSet LayerStructure::lower() const {
  ElementSet out;
  for (Element x = 0; x < sign.size(); ++x)
    if (sign[x] < 0) out.push_back(x);
  return out;
}

ElementSet LayerStructure::upper() const {
  ElementSet out;
  for (Element x = 0; x < sign.size(); ++x)
    if (sign[x] > 0) out.push_back(x);
  return out;
}

std::map<Element, Element> LayerStructure::drop() const {
  std::map<Element, Element> out;
  for (const auto& [from, to] : lift) out.emplace(to, from);
  return out;
}

std::optional<LayerViolation> validate_layer(const FinitePoset& p, const LayerStructure& layer,
                                             bool require_lattice_compatibility) {
  const std::size_t m = p.size();
  if (layer.sign.size() != m) return LayerViolation{"sign map has the wrong size", 0, std::nullopt};
  for (Element x = 0; x < m; ++x)
    if (layer.sign[x] != 1 && layer.sign[x] != -1) return LayerViolation{"sign must be -1 or +1", x, std::nullopt};
  for (Element x = 0; x < m; ++x)
    for (Element y = 0; y < m; ++y)
      if (p.leq(x, y) && layer.sign[x] > layer.sign[y]) return LayerViolation{"sign map is not increasing", x, y};

  const ElementSet lower = layer.lower();
  const ElementSet upper = layer.upper();
  if (layer.lift.size() != lower.size())
    return LayerViolation{"lift must be defined exactly on the lower layer", lower.empty() ? 0 : lower.front(),
                          std::nullopt};
  std::vector<bool> hit(m, false);
  for (const auto& [x, y] : layer.lift) {
    if (x >= m || layer.sign[x] != -1) return LayerViolation{"lift defined outside the lower layer", x, std::nullopt};
    if (y >= m || layer.sign[y] != 1) return LayerViolation{"lift leaves the upper layer", x, y};
    if (hit[y]) return LayerViolation{"lift is not injective", x, y};
    hit[y] = true;
    if (!p.less(x, y)) return LayerViolation{"x < lift(x) fails", x, y};
  }
  if (lower.size() != upper.size()) return LayerViolation{"lift is not onto the upper layer", 0, std::nullopt};
  for (const auto& [x, lx] : layer.lift)
    for (const auto& [y, ly] : layer.lift)
      if (p.leq(x, y) != p.leq(lx, ly)) return LayerViolation{"lift is not an order isomorphism", x, y};

  if (!require_lattice_compatibility) return std::nullopt;
  if (!is_lattice(p)) return LayerViolation{"poset is not a lattice", 0, std::nullopt};
  for (const ElementSet* part : {&lower, &upper}) {
    for (Element x : *part) {
      for (Element y : *part) {
        const Element j = *least_upper_bound(p, x, y);
        const Element w = *greatest_lower_bound(p, x, y);
        if (layer.sign[j] != layer.sign[x] || layer.sign[w] != layer.sign[x])
          return LayerViolation{"layer is not a sublattice", x, y};
      }
    }
  }
  for (const auto& [x, lx] : layer.lift) {
    for (const auto& [y, ly] : layer.lift) {
      if (layer.lift.at(*least_upper_bound(p, x, y)) != *least_upper_bound(p, lx, ly) ||
          layer.lift.at(*greatest_lower_bound(p, x, y)) != *greatest_lower_bound(p, lx, ly))
        return LayerViolation{"lift does not preserve joins and meets", x, y};
    }
  }
  return std::nullopt;
}

LayeredDouble double_poset(const FinitePoset& p, const LayerStructure& layer) {
  if (auto bad = validate_layer(p, layer)) throw LayerInvalid(bad->what + " at element " + std::to_string(bad->x));
  const std::size_t m = p.size();
  const auto drop = layer.drop();

  std::vector<std::string> labels(2 * m);
  std::vector<Row> up(2 * m, Row(2 * m));
  for (Element x = 0; x < m; ++x) {
    labels[x] = "(" + p.label(x) + ",-1)";
    labels[x + m] = "(" + p.label(x) + ",+1)";
    // (x0, -1) <= (x1, +1) iff some z in P+ has x0 <= z and drop(z) <= x1.
    Row cross(m);
    for (const auto& [z, dz] : drop)
      if (p.leq(x, z)) cross |= p.up_row(dz);
    for (Element y = 0; y < m; ++y) {
      if (p.leq(x, y)) {
        up[x].set(y);
        up[x + m].set(y + m);
      }
      if (cross.test(y)) up[x].set(y + m);
    }
  }

  LayeredDouble out{FinitePoset(std::move(labels), std::move(up)), {}};
  out.layer.sign.assign(2 * m, -1);
  for (Element x = 0; x < m; ++x) {
    out.layer.sign[x + m] = 1;
    out.layer.lift.emplace(x, x + m);
  }
  return out;
}

std::variant<PropertyMMaps, PropertyMFailure> property_M_maps(const FinitePoset& p, const LayerStructure& layer) {
  const std::size_t m = p.size();
  if (auto bad = validate_layer(p, layer)) throw LayerInvalid(bad->what + " at element " + std::to_string(bad->x));
  Row upper(m), lower(m);
  for (Element x = 0; x < m; ++x) (layer.sign[x] > 0 ? upper : lower).set(x);

  PropertyMMaps maps{std::vector<Element>(m), std::vector<Element>(m)};
  for (Element x = 0; x < m; ++x) {
    const Row above = upper & p.up_row(x);
    ElementSet minimal;
    for (auto c = above.find_first(); c != Row::npos; c = above.find_next(c))
      if ((above & p.down_row(c)).count() == 1) minimal.push_back(c);
    if (minimal.size() != 1) return PropertyMFailure{x, true, std::move(minimal)};
    maps.m_plus[x] = minimal.front();

    const Row below = lower & p.down_row(x);
    ElementSet maximal;
    for (auto c = below.find_first(); c != Row::npos; c = below.find_next(c))
      if ((below & p.up_row(c)).count() == 1) maximal.push_back(c);
    if (maximal.size() != 1) return PropertyMFailure{x, false, std::move(maximal)};
    maps.m_minus[x] = maximal.front();
  }
  return maps;
}

PropertyMMaps double_property_M(const FinitePoset& p, const LayerStructure& layer, const PropertyMMaps& maps) {
  const std::size_t m = p.size();
  const auto drop = layer.drop();
  PropertyMMaps out{std::vector<Element>(2 * m), std::vector<Element>(2 * m)};
  for (Element x = 0; x < m; ++x) {
    out.m_plus[x + m] = x + m;
    out.m_plus[x] = drop.at(maps.m_plus[x]) + m;
    out.m_minus[x] = x;
    out.m_minus[x + m] = layer.lift.at(maps.m_minus[x]);
  }
  return out;
}

MobiusTable upper_layer_mobius(const FinitePoset& p, const LayerStructure& layer) {
  const ElementSet upper = layer.upper();
  const Subposet sub = induced_subposet(p, upper);
  const MobiusTable local = mobius_by_recursion(sub.poset);
  MobiusTable out(p.size());
  for (Element i = 0; i < upper.size(); ++i)
    for (Element j = 0; j < upper.size(); ++j) out.set(upper[i], upper[j], local(i, j));
  return out;
}

MobiusTable mobius_double(const FinitePoset& p, const LayerStructure& layer, const MobiusTable& mu,
                          const MobiusTable& mu_upper) {
  const auto maps = property_M_maps(p, layer);
  if (const auto* fail = std::get_if<PropertyMFailure>(&maps))
    throw MConditionFailed("layer lacks property (M) at element " + std::to_string(fail->x), fail->x);
  const std::size_t m = p.size();
  MobiusTable out(2 * m);
  for (Element x0 = 0; x0 < m; ++x0) {
    for (Element x1 = 0; x1 < m; ++x1) {
      out.set(x0, x1, mu(x0, x1));
      out.set(x0 + m, x1 + m, mu(x0, x1));
      if (layer.sign[x0] > 0 && layer.sign[x1] < 0) out.set(x0, x1 + m, -mu_upper(x0, layer.lift.at(x1)));
    }
  }
  return out;
}

MobiusTable mobius_double(const FinitePoset& p, const LayerStructure& layer) {
  return mobius_double(p, layer, mobius_by_recursion(p), upper_layer_mobius(p, layer));
}

}  // namespace lnposet
