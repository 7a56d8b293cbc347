#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <utility>
#include <vector>

#include "lnposet/poset.hpp"

namespace lnposet {

/// Kernels come in a serial reference form and an OpenMP form sharded by row.
enum class Exec { kSerial, kParallel };

/// Zeta matrix S_P = 1 + N_P written in a fixed linear extension, so it is
/// unit upper triangular.
struct IncidenceMatrix {
  std::vector<Element> order;          // order[i] = element at position i
  std::vector<std::int64_t> entries;   // row-major, positions not element indices

  std::size_t size() const { return order.size(); }
  std::int64_t at(std::size_t i, std::size_t j) const { return entries[i * order.size() + j]; }
};

IncidenceMatrix zeta_matrix(const FinitePoset& p);

/*
  Möbius function of a poset, indexed by element. Only comparable pairs x <= y
  carry values; every other lookup is 0.
*/
class MobiusTable {
 public:
  MobiusTable() = default;
  explicit MobiusTable(std::size_t m) : m_(m), values_(m * m, 0) {}

  std::size_t size() const { return m_; }
  std::int64_t operator()(Element x, Element y) const { return values_[x * m_ + y]; }
  void set(Element x, Element y, std::int64_t v) { values_[x * m_ + y] = v; }

  /// Values taken on comparable pairs.
  std::set<std::int64_t> range(const FinitePoset& p) const;

  friend bool operator==(const MobiusTable&, const MobiusTable&) = default;

 private:
  std::size_t m_ = 0;
  std::vector<std::int64_t> values_;
};

/// First pair (x, y) where two tables disagree.
std::optional<std::pair<Element, Element>> first_difference(const MobiusTable& a, const MobiusTable& b);

/// Inverse of the zeta matrix as the terminating series sum_k (-N)^k.
/// Checks both sides of the defining recursion before returning. Throws Overflow.
MobiusTable mobius_by_inversion(const FinitePoset& p, Exec exec = Exec::kParallel);

/// mu(x, x) = 1, mu(x, y) = -sum_{x <= z < y} mu(x, z). Throws Overflow.
MobiusTable mobius_by_recursion(const FinitePoset& p, Exec exec = Exec::kParallel);

/// One row mu(x, .) of the recursion above.
std::vector<std::int64_t> mobius_row(const FinitePoset& p, Element x);

/// First comparable pair at which sum_{x<=z<=y} mu(x,z) = delta or
/// sum_{x<=z<=y} mu(z,y) = delta fails, or a nonzero value on an incomparable pair.
std::optional<std::pair<Element, Element>> find_recursion_violation(const FinitePoset& p, const MobiusTable& mu);

/// Integration operator: s(x) = sum_{y >= x} f(y).
std::vector<std::int64_t> integrate(const FinitePoset& p, std::span<const std::int64_t> f);

/// f(x) = sum_{y >= x} mu(x, y) s(y), the inverse of integrate.
std::vector<std::int64_t> mobius_invert(const FinitePoset& p, const MobiusTable& mu, std::span<const std::int64_t> s);
std::vector<std::int64_t> mobius_invert(const FinitePoset& p, std::span<const std::int64_t> s);

struct HallCheck {
  std::int64_t mu;
  std::int64_t chi;
  bool ok;
};

/// Compares 1 + mu(x, y) with the Euler characteristic of the nerve of (x, y).
/// Requires x < y; throws NotComparable otherwise.
HallCheck hall_check(const FinitePoset& p, Element x, Element y);

}  // namespace lnposet
