#pragma once

#include <cstddef>
#include <optional>
#include <random>
#include <vector>

#include "lnposet/poset.hpp"
#include "lnposet/surgery.hpp"

namespace lnposet {

using Rng = std::mt19937_64;

/// Each edge i -> j (i < j) is kept with probability `edge_probability`, then closed.
FinitePoset random_poset(std::size_t m, double edge_probability, Rng& rng);

/// Random order embedding q -> p (x <=_q y <=> f(x) <=_p f(y), f injective),
/// found by backtracking over shuffled candidates. nullopt when none exists.
std::optional<std::vector<Element>> random_order_embedding(const FinitePoset& q, const FinitePoset& p, Rng& rng);

}  // namespace lnposet

namespace lnposet {

/// Two random posets with a random common subposet embedded in both; used by
/// the surgery fuzzers. Sizes are at most `max_size` each.
struct SurgeryInstance {
  FinitePoset p0;
  FinitePoset p1;
  EmbeddedSubposet embedding;
};

SurgeryInstance random_surgery_instance(std::size_t max_size, Rng& rng);

}  // namespace lnposet
