#include "lnposet/poset.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <limits>
#include <map>
#include <queue>

#include "lnposet/errors.hpp"

namespace lnposet {

namespace {

template <typename Fn>
void for_each_bit(const Row& row, Fn&& fn) {
  for (auto i = row.find_first(); i != Row::npos; i = row.find_next(i)) fn(static_cast<Element>(i));
}

ElementSet bits_to_set(const Row& row) {
  ElementSet out;
  out.reserve(row.count());
  for_each_bit(row, [&](Element e) { out.push_back(e); });
  return out;
}

struct CoverAdjacency {
  std::vector<std::vector<Element>> upper;  // upper[x] = elements covering x
  std::vector<std::vector<Element>> lower;  // lower[y] = elements covered by y
};

CoverAdjacency cover_adjacency(const FinitePoset& p) {
  CoverAdjacency adj{std::vector<std::vector<Element>>(p.size()),
                     std::vector<std::vector<Element>>(p.size())};
  for (const auto& [x, y] : cover_pairs(p)) {
    adj.upper[x].push_back(y);
    adj.lower[y].push_back(x);
  }
  return adj;
}

}  // namespace

std::optional<std::string> find_order_violation(std::span<const Row> up) {
  const std::size_t m = up.size();
  for (Element x = 0; x < m; ++x) {
    if (up[x].size() != m) return "row " + std::to_string(x) + " has the wrong width";
    if (!up[x].test(x)) return "not reflexive at " + std::to_string(x);
  }
  for (Element x = 0; x < m; ++x) {
    for (auto y = up[x].find_first(); y != Row::npos; y = up[x].find_next(y)) {
      if (y != x && up[y].test(x)) {
        return "not antisymmetric: " + std::to_string(x) + " and " + std::to_string(y);
      }
      if (!up[y].is_subset_of(up[x])) {
        return "not transitive through " + std::to_string(x) + " <= " + std::to_string(y);
      }
    }
  }
  return std::nullopt;
}

FinitePoset::FinitePoset(std::vector<std::string> labels, std::vector<Row> up)
    : labels_(std::move(labels)), up_(std::move(up)) {
  if (labels_.size() != up_.size()) throw InvalidArgument("label count does not match relation size");
  if (auto violation = find_order_violation(up_)) throw InvalidArgument(*violation);
  build_columns();
}

FinitePoset::FinitePoset(Trusted, std::vector<std::string> labels, std::vector<Row> up)
    : labels_(std::move(labels)), up_(std::move(up)) {
  build_columns();
}

void FinitePoset::build_columns() {
  const std::size_t m = up_.size();
  down_.assign(m, Row(m));
  for (Element x = 0; x < m; ++x) for_each_bit(up_[x], [&](Element y) { down_[y].set(x); });
}

FinitePoset FinitePoset::from_cover_relations(std::vector<std::string> labels, const CoverList& covers) {
  const std::size_t m = labels.size();
  std::vector<std::vector<Element>> succ(m);
  std::vector<std::size_t> indegree(m, 0);
  for (const auto& [x, y] : covers) {
    if (x >= m || y >= m) throw InvalidArgument("cover pair references an unknown element");
    if (x == y) throw CycleDetected("cover pair (" + std::to_string(x) + ", " + std::to_string(x) + ") is a loop");
    succ[x].push_back(y);
    ++indegree[y];
  }

  std::vector<Element> order;
  order.reserve(m);
  std::vector<Element> ready;
  for (Element x = 0; x < m; ++x)
    if (indegree[x] == 0) ready.push_back(x);
  while (!ready.empty()) {
    Element x = ready.back();
    ready.pop_back();
    order.push_back(x);
    for (Element y : succ[x])
      if (--indegree[y] == 0) ready.push_back(y);
  }
  if (order.size() != m) throw CycleDetected("cover relation has a directed cycle");

  // Row-OR closure in reverse topological order: each successor row is final
  // before it is merged.
  std::vector<Row> up(m, Row(m));
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    Element x = *it;
    up[x].set(x);
    for (Element y : succ[x]) up[x] |= up[y];
  }
  return FinitePoset(Trusted{}, std::move(labels), std::move(up));
}

FinitePoset FinitePoset::chain(std::size_t m) {
  std::vector<std::string> labels;
  CoverList covers;
  for (std::size_t i = 0; i < m; ++i) {
    labels.push_back(std::to_string(i));
    if (i + 1 < m) covers.emplace_back(i, i + 1);
  }
  return from_cover_relations(std::move(labels), covers);
}

FinitePoset FinitePoset::antichain(std::size_t m) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < m; ++i) labels.push_back(std::to_string(i));
  return from_cover_relations(std::move(labels), {});
}

CoverList cover_pairs(const FinitePoset& p) {
  CoverList out;
  for (Element x = 0; x < p.size(); ++x) {
    const Row& above = p.up_row(x);
    for_each_bit(above, [&](Element y) {
      if (y == x) return;
      // [x, y] = {x, y} exactly when y covers x.
      if ((above & p.down_row(y)).count() == 2) out.emplace_back(x, y);
    });
  }
  return out;
}

FinitePoset dual(const FinitePoset& p) {
  return FinitePoset(FinitePoset::Trusted{}, p.labels_, p.down_);
}

Subposet induced_subposet(const FinitePoset& p, std::span<const Element> elements) {
  const std::size_t k = elements.size();
  std::vector<std::string> labels;
  labels.reserve(k);
  std::vector<Row> up(k, Row(k));
  for (std::size_t i = 0; i < k; ++i) {
    if (elements[i] >= p.size()) throw InvalidArgument("element out of range");
    labels.push_back(p.label(elements[i]));
    for (std::size_t j = 0; j < k; ++j)
      if (p.leq(elements[i], elements[j])) up[i].set(j);
  }
  return Subposet{FinitePoset(std::move(labels), std::move(up)), {elements.begin(), elements.end()}};
}

Subposet interval(const FinitePoset& p, Element x, Element y, bool open) {
  if (x >= p.size() || y >= p.size()) throw InvalidArgument("element out of range");
  if (!p.leq(x, y)) throw NotComparable(x, y);
  Row members = p.up_row(x) & p.down_row(y);
  if (open) {
    members.reset(x);
    members.reset(y);
  }
  ElementSet elems = bits_to_set(members);
  return induced_subposet(p, elems);
}

ElementSet up_set(const FinitePoset& p, std::span<const Element> generators) {
  Row acc(p.size());
  for (Element g : generators) {
    if (g >= p.size()) throw InvalidArgument("element out of range");
    acc |= p.up_row(g);
  }
  return bits_to_set(acc);
}

ElementSet down_set(const FinitePoset& p, std::span<const Element> generators) {
  Row acc(p.size());
  for (Element g : generators) {
    if (g >= p.size()) throw InvalidArgument("element out of range");
    acc |= p.down_row(g);
  }
  return bits_to_set(acc);
}

ElementSet minimal_elements(const FinitePoset& p) {
  ElementSet out;
  for (Element x = 0; x < p.size(); ++x)
    if (p.down_row(x).count() == 1) out.push_back(x);
  return out;
}

ElementSet maximal_elements(const FinitePoset& p) {
  ElementSet out;
  for (Element x = 0; x < p.size(); ++x)
    if (p.up_row(x).count() == 1) out.push_back(x);
  return out;
}

std::optional<Element> least_upper_bound(const FinitePoset& p, Element x, Element y) {
  const Row common = p.up_row(x) & p.up_row(y);
  for (auto u = common.find_first(); u != Row::npos; u = common.find_next(u))
    if (common.is_subset_of(p.up_row(u))) return static_cast<Element>(u);
  return std::nullopt;
}

std::optional<Element> greatest_lower_bound(const FinitePoset& p, Element x, Element y) {
  const Row common = p.down_row(x) & p.down_row(y);
  for (auto u = common.find_first(); u != Row::npos; u = common.find_next(u))
    if (common.is_subset_of(p.down_row(u))) return static_cast<Element>(u);
  return std::nullopt;
}

bool is_lattice(const FinitePoset& p) {
  if (p.empty()) return false;
  for (Element x = 0; x < p.size(); ++x)
    for (Element y = x + 1; y < p.size(); ++y)
      if (!least_upper_bound(p, x, y) || !greatest_lower_bound(p, x, y)) return false;
  return true;
}

std::vector<Element> linear_extension(const FinitePoset& p) {
  const std::size_t m = p.size();
  std::vector<std::size_t> pending(m);
  std::priority_queue<Element, std::vector<Element>, std::greater<>> ready;
  for (Element y = 0; y < m; ++y) {
    pending[y] = p.down_row(y).count() - 1;
    if (pending[y] == 0) ready.push(y);
  }
  std::vector<Element> order;
  order.reserve(m);
  while (!ready.empty()) {
    Element x = ready.top();
    ready.pop();
    order.push_back(x);
    for_each_bit(p.up_row(x), [&](Element y) {
      if (y != x && --pending[y] == 0) ready.push(y);
    });
  }
  return order;
}

std::variant<RankFunction, NotGraded> grading(const FinitePoset& p) {
  const std::size_t m = p.size();
  const CoverAdjacency adj = cover_adjacency(p);
  const std::vector<Element> order = linear_extension(p);
  std::vector<std::size_t> position(m);
  for (std::size_t i = 0; i < m; ++i) position[order[i]] = i;

  // Longest and shortest saturated chains from every x; a difference is a witness.
  constexpr std::size_t kUnreached = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> longest(m), shortest(m);
  for (Element x = 0; x < m; ++x) {
    std::fill(longest.begin(), longest.end(), kUnreached);
    std::fill(shortest.begin(), shortest.end(), kUnreached);
    longest[x] = shortest[x] = 0;
    for (std::size_t i = position[x]; i < m; ++i) {
      Element z = order[i];
      if (longest[z] == kUnreached) continue;
      for (Element w : adj.upper[z]) {
        if (longest[w] == kUnreached || longest[w] < longest[z] + 1) longest[w] = longest[z] + 1;
        if (shortest[w] == kUnreached || shortest[w] > shortest[z] + 1) shortest[w] = shortest[z] + 1;
      }
    }
    for (Element y = 0; y < m; ++y) {
      if (longest[y] != kUnreached && longest[y] != shortest[y]) {
        return NotGraded{NotGraded::Reason::kIntervalChains, x, y, longest[y],
                         static_cast<std::int64_t>(shortest[y])};
      }
    }
  }

  // Propagate ranks over the undirected cover graph, one component at a time.
  constexpr std::int64_t kUnset = std::numeric_limits<std::int64_t>::min();
  std::vector<std::int64_t> rank(m, kUnset);
  for (Element root : order) {
    if (rank[root] != kUnset) continue;
    std::vector<Element> component{root};
    rank[root] = 0;
    for (std::size_t head = 0; head < component.size(); ++head) {
      Element z = component[head];
      for (Element w : adj.upper[z]) {
        if (rank[w] == kUnset) {
          rank[w] = rank[z] + 1;
          component.push_back(w);
        } else if (rank[w] != rank[z] + 1) {
          return NotGraded{NotGraded::Reason::kCoverCycle, z, w, 1, rank[w] - rank[z]};
        }
      }
      for (Element w : adj.lower[z]) {
        if (rank[w] == kUnset) {
          rank[w] = rank[z] - 1;
          component.push_back(w);
        } else if (rank[w] != rank[z] - 1) {
          return NotGraded{NotGraded::Reason::kCoverCycle, w, z, 1, rank[z] - rank[w]};
        }
      }
    }
    std::int64_t lowest = rank[root];
    for (Element z : component) lowest = std::min(lowest, rank[z]);
    for (Element z : component) rank[z] -= lowest;
  }
  return RankFunction{std::move(rank)};
}

namespace {

// Colour refinement run on both posets at once so colours are comparable.
std::pair<std::vector<int>, std::vector<int>> refine_colours(const FinitePoset& p, const FinitePoset& q) {
  struct Side {
    const FinitePoset* poset;
    CoverAdjacency adj;
    std::vector<std::int64_t> rank;
    std::vector<int> colour;
  };
  auto make_side = [](const FinitePoset& poset) {
    Side s{&poset, cover_adjacency(poset), {}, {}};
    auto graded = grading(poset);
    if (auto* r = std::get_if<RankFunction>(&graded))
      s.rank = r->values;
    else
      s.rank.assign(poset.size(), -1);
    return s;
  };
  std::array<Side, 2> sides{make_side(p), make_side(q)};

  std::map<std::vector<std::int64_t>, int> palette;
  auto paint = [&](const std::vector<std::int64_t>& signature) {
    auto [it, inserted] = palette.emplace(signature, static_cast<int>(palette.size()));
    return it->second;
  };
  for (Side& s : sides) {
    for (Element x = 0; x < s.poset->size(); ++x) {
      s.colour.push_back(paint({static_cast<std::int64_t>(s.poset->down_row(x).count()),
                                static_cast<std::int64_t>(s.poset->up_row(x).count()),
                                static_cast<std::int64_t>(s.adj.lower[x].size()),
                                static_cast<std::int64_t>(s.adj.upper[x].size()), s.rank[x]}));
    }
  }

  std::size_t classes = palette.size();
  while (true) {
    palette.clear();
    std::array<std::vector<int>, 2> next;
    for (std::size_t k = 0; k < 2; ++k) {
      Side& s = sides[k];
      for (Element x = 0; x < s.poset->size(); ++x) {
        std::vector<std::int64_t> signature{s.colour[x], -1};
        std::vector<std::int64_t> ups, downs;
        for (Element w : s.adj.upper[x]) ups.push_back(s.colour[w]);
        for (Element w : s.adj.lower[x]) downs.push_back(s.colour[w]);
        std::sort(ups.begin(), ups.end());
        std::sort(downs.begin(), downs.end());
        signature.insert(signature.end(), ups.begin(), ups.end());
        signature.push_back(-2);
        signature.insert(signature.end(), downs.begin(), downs.end());
        next[k].push_back(paint(signature));
      }
    }
    sides[0].colour = std::move(next[0]);
    sides[1].colour = std::move(next[1]);
    if (palette.size() == classes) break;
    classes = palette.size();
  }
  return {std::move(sides[0].colour), std::move(sides[1].colour)};
}

}  // namespace

std::optional<std::vector<Element>> find_isomorphism(const FinitePoset& p, const FinitePoset& q) {
  const std::size_t m = p.size();
  if (q.size() != m) return std::nullopt;
  if (m == 0) return std::vector<Element>{};

  auto [pc, qc] = refine_colours(p, q);
  {
    auto a = pc, b = qc;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) return std::nullopt;
  }

  std::map<int, std::vector<Element>> by_colour;
  for (Element y = 0; y < m; ++y) by_colour[qc[y]].push_back(y);

  const std::vector<Element> order = linear_extension(p);
  std::vector<Element> image(m, m);
  std::vector<bool> used(m, false);

  auto consistent = [&](std::size_t depth, Element x, Element y) {
    for (std::size_t i = 0; i < depth; ++i) {
      Element a = order[i];
      Element b = image[a];
      if (p.leq(a, x) != q.leq(b, y) || p.leq(x, a) != q.leq(y, b)) return false;
    }
    return true;
  };

  std::function<bool(std::size_t)> extend = [&](std::size_t depth) {
    if (depth == m) return true;
    Element x = order[depth];
    for (Element y : by_colour[pc[x]]) {
      if (used[y] || !consistent(depth, x, y)) continue;
      image[x] = y;
      used[y] = true;
      if (extend(depth + 1)) return true;
      used[y] = false;
    }
    image[x] = m;
    return false;
  };
  if (!extend(0)) return std::nullopt;
  return image;
}

bool verify_isomorphism(const FinitePoset& p, const FinitePoset& q, std::span<const Element> f) {
  const std::size_t m = p.size();
  if (q.size() != m || f.size() != m) return false;
  std::vector<bool> hit(m, false);
  for (Element y : f) {
    if (y >= m || hit[y]) return false;
    hit[y] = true;
  }
  for (Element x = 0; x < m; ++x)
    for (Element y = 0; y < m; ++y)
      if (p.leq(x, y) != q.leq(f[x], f[y])) return false;
  return true;
}

}  // namespace lnposet
