#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "lnposet/poset.hpp"

namespace lnposet {

inline constexpr std::size_t kDefaultFaceCap = 1'000'000;

/// Family of nonempty vertex subsets closed under taking nonempty subsets.
/// Faces are stored as ascending index vectors, the family sorted lexicographically.
struct SimplicialScheme {
  std::vector<Element> vertices;
  std::vector<std::vector<Element>> faces;
};

/// Faces are exactly the chains of p. Throws FaceLimitExceeded past `face_cap` faces.
SimplicialScheme nerve(const FinitePoset& p, std::size_t face_cap = kDefaultFaceCap);

bool is_downward_closed(const SimplicialScheme& k);

/// f[i] = number of faces with i + 1 vertices. Empty scheme gives an empty vector.
std::vector<std::int64_t> f_vector(const SimplicialScheme& k);

/// f-vector of the nerve obtained by counting chains by length, without listing them.
/// Throws Overflow if a count leaves 64-bit range.
std::vector<std::int64_t> nerve_f_vector(const FinitePoset& p);

/// Alternating sum of an f-vector; 0 for the empty scheme.
std::int64_t euler_characteristic(const std::vector<std::int64_t>& f);
std::int64_t euler_characteristic(const SimplicialScheme& k);

}  // namespace lnposet
