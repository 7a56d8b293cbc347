#include "lnposet/random_poset.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <string>

namespace lnposet {

FinitePoset random_poset(std::size_t m, double edge_probability, Rng& rng) {
  std::bernoulli_distribution keep(edge_probability);
  std::vector<std::string> labels;
  CoverList edges;
  for (std::size_t i = 0; i < m; ++i) {
    labels.push_back("v" + std::to_string(i));
    for (std::size_t j = i + 1; j < m; ++j)
      if (keep(rng)) edges.emplace_back(i, j);
  }
  // Edges of a DAG need not be covers; the closure is the same either way.
  return FinitePoset::from_cover_relations(std::move(labels), edges);
}

std::optional<std::vector<Element>> random_order_embedding(const FinitePoset& q, const FinitePoset& p, Rng& rng) {
  const std::size_t k = q.size();
  const std::size_t m = p.size();
  if (k > m) return std::nullopt;
  std::vector<Element> image(k, m);
  std::vector<bool> used(m, false);
  std::vector<Element> candidates(m);
  std::iota(candidates.begin(), candidates.end(), Element{0});

  std::function<bool(std::size_t)> extend = [&](std::size_t depth) {
    if (depth == k) return true;
    std::vector<Element> order = candidates;
    std::shuffle(order.begin(), order.end(), rng);
    for (Element y : order) {
      if (used[y]) continue;
      bool ok = true;
      for (std::size_t i = 0; i < depth && ok; ++i)
        ok = q.leq(i, depth) == p.leq(image[i], y) && q.leq(depth, i) == p.leq(y, image[i]);
      if (!ok) continue;
      image[depth] = y;
      used[y] = true;
      if (extend(depth + 1)) return true;
      used[y] = false;
    }
    return false;
  };
  if (!extend(0)) return std::nullopt;
  return image;
}

}  // namespace lnposet

namespace lnposet {

SurgeryInstance random_surgery_instance(std::size_t max_size, Rng& rng) {
  std::uniform_int_distribution<std::size_t> size(1, max_size);
  std::uniform_real_distribution<double> density(0.15, 0.6);
  while (true) {
    // Draws are sequenced explicitly so a seed means the same instance everywhere.
    const std::size_t m0 = size(rng);
    const double d0 = density(rng);
    FinitePoset p0 = random_poset(m0, d0, rng);
    const std::size_t m1 = size(rng);
    const double d1 = density(rng);
    FinitePoset p1 = random_poset(m1, d1, rng);
    const std::size_t k_max = std::min<std::size_t>({p0.size(), p1.size(), 4});
    const std::size_t k = std::uniform_int_distribution<std::size_t>(0, k_max)(rng);
    // Chains and points as Q make the (M±) conditions hold often enough to exercise
    // the closed form; general Q exercises the block formula alone.
    const bool as_chain = std::bernoulli_distribution(0.5)(rng);
    const double dq = density(rng);
    FinitePoset q = as_chain ? FinitePoset::chain(k) : random_poset(k, dq, rng);
    auto i0 = random_order_embedding(q, p0, rng);
    if (!i0) continue;
    auto i1 = random_order_embedding(q, p1, rng);
    if (!i1) continue;
    return SurgeryInstance{std::move(p0), std::move(p1), EmbeddedSubposet{std::move(q), std::move(*i0), std::move(*i1)}};
  }
}

}  // namespace lnposet
