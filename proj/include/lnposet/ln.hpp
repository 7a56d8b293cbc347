#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lnposet/layered.hpp"
#include "lnposet/poset.hpp"

namespace lnposet::ln {

/// Largest ambient size for which subsets fit the machine word.
inline constexpr unsigned kMaxN = 63;
/// Default cap for materialising L_n as an explicit poset.
inline constexpr unsigned kDefaultExplicitCap = 11;

/*
  An element of L_n: a subset S of {1, ..., n}, bit i-1 set iff i is in S.
  The same data read as a sign vector has s_i = +1 iff i is in S.
*/
class LnElement {
 public:
  LnElement() = default;
  /// Throws InvalidArgument if n > kMaxN or bits has members above n.
  LnElement(unsigned n, std::uint64_t bits);

  static LnElement from_members(unsigned n, std::span<const int> members);
  static LnElement from_sign_vector(std::span<const int> signs);
  /// "1,4,6" or "{}" for the empty set; whitespace and surrounding braces are tolerated.
  static LnElement parse(unsigned n, const std::string& text);

  unsigned n() const { return n_; }
  std::uint64_t bits() const { return bits_; }
  bool contains(int i) const { return i >= 1 && i <= static_cast<int>(n_) && ((bits_ >> (i - 1)) & 1U) != 0; }
  int sign(int i) const { return contains(i) ? 1 : -1; }
  int cardinality() const { return __builtin_popcountll(bits_); }
  bool empty() const { return bits_ == 0; }
  /// Largest member; 0 for the empty set.
  int max() const { return bits_ == 0 ? 0 : 64 - __builtin_clzll(bits_); }

  std::vector<int> members() const;
  std::vector<int> sign_vector() const;
  std::string to_string() const;

  LnElement with(int i) const;
  LnElement without(int i) const;
  /// Same bits viewed in L_m (m >= max()).
  LnElement in(unsigned m) const { return LnElement(m, bits_); }

  friend bool operator==(const LnElement&, const LnElement&) = default;
  friend auto operator<=>(const LnElement&, const LnElement&) = default;

 private:
  unsigned n_ = 0;
  std::uint64_t bits_ = 0;
};

/// Throws SizeMismatch when the ambient sizes differ.
void require_same_n(const LnElement& s, const LnElement& t);

/// #(S ∩ [k, n]) <= #(T ∩ [k, n]) for every k, in one right-to-left pass.
bool leq(const LnElement& s, const LnElement& t);

/// Configurations one bead move below T: each mobile bead t (t = 1 or t - 1 not in T)
/// moves to t - 1, or leaves the rod when t = 1. Ordered by bead position.
std::vector<LnElement> elementary_left_slides(const LnElement& t);

/// Breadth-first search from T along elementary left slides.
bool leq_by_reachability(const LnElement& s, const LnElement& t);

/// Sum of the members.
std::int64_t rho(const LnElement& s);

/// values[k - 1] = #(T ∩ [k, n]) - #(S ∩ [k, n]).
struct DeltaProfile {
  std::vector<int> values;
};

DeltaProfile delta_profile(const LnElement& s, const LnElement& t);
std::int64_t weight(const LnElement& s, const LnElement& t);

/// Profile of zeros and ones with no two adjacent ones.
bool is_elementary(const LnElement& s, const LnElement& t);

/*
  Bead picture of an elementary pair: S comes from T by sliding the beads at
  nus[j] + 1 one step left (to nus[j]); when `b1 \ a1` = {1} the bead at 1 is also
  removed. `a1` and `b1` are subsets of {1} (bit 0), and gaps[j] holds the beads
  common to S and T lying strictly between consecutive slide sites, with gaps[0]
  below the first site and gaps.back() above the last one.
*/
struct ElementaryDecomposition {
  std::vector<int> nus;
  std::uint64_t a1 = 0;
  std::uint64_t b1 = 0;
  std::vector<std::uint64_t> gaps;
};

std::optional<ElementaryDecomposition> decompose_elementary(const LnElement& s, const LnElement& t);
/// Rebuilds (S, T) from a decomposition.
std::pair<LnElement, LnElement> reassemble(unsigned n, const ElementaryDecomposition& d);

/// (-1)^(rho(T) - rho(S)) on elementary pairs, 0 otherwise.
std::int64_t mobius_closed(const LnElement& s, const LnElement& t);

/// Recursion on the last coordinate, peeling one or two coordinates per step;
/// L_0 = {∅} and L_1 (a 2-chain) are the base tables.
std::int64_t mobius_recursive(const LnElement& s, const LnElement& t);

/// Lattice operations via the sign-vector recursion through m_plus / m_minus.
LnElement join(const LnElement& s, const LnElement& t);
LnElement meet(const LnElement& s, const LnElement& t);

/// Second route: peel the largest members, S ∨ T = (S' ∨ T') ∪ {max(s_k, t_l)} and
/// S ∧ T = (S' ∧ T') ∪ {min(s_k, t_l)}.
LnElement join_by_max_elements(const LnElement& s, const LnElement& t);
LnElement meet_by_min_elements(const LnElement& s, const LnElement& t);

/// Smallest element of L_n^+ above S: trade the largest member for n.
LnElement m_plus(const LnElement& s);
/// Largest element of L_n^- below S, computed as sigma ∘ m_plus ∘ sigma.
LnElement m_minus(const LnElement& s);
/// The same map written directly: trade n for the greatest non-member.
LnElement m_minus_direct(const LnElement& s);

/// Complement in {1, ..., n}; an order-reversing involution.
LnElement sigma(const LnElement& s);

/// L_n x {-1, +1} -> L_{n+1}: (S, -1) -> S, (S, +1) -> S ∪ {n + 1}.
LnElement psi(const LnElement& s, int eps);
/// Inverse of psi on L_{n+1} (n >= 1 after the split).
std::pair<LnElement, int> phi(const LnElement& s);

/// image[mask] is the element of [I, J] assigned to the subset `mask` of {0, ..., d-1}.
struct BooleIsomorphism {
  unsigned dimension = 0;
  std::vector<LnElement> image;
};

/// Explicit isomorphism B_d -> [I, J] for an elementary pair, d = rho(J) - rho(I).
/// Throws NotComparable unless I <= J and NotElementary for non-elementary pairs.
BooleIsomorphism boole_interval_iso(const LnElement& i, const LnElement& j);
/// Bijective onto [I, J] and order preserving in both directions.
bool verify_boole_iso(const LnElement& i, const LnElement& j, const BooleIsomorphism& iso);

/// Some 1 < k < n with k not in S and S meeting both [1, k) and (k, n].
bool has_gap(const LnElement& s);

struct JoinReducibility {
  bool reducible = false;
  /// Two elements strictly below S joining to S, when reducible.
  std::optional<std::pair<LnElement, LnElement>> parts;
  /// The unique element covered by S, when irreducible and S is not empty.
  std::optional<LnElement> covered;
};

JoinReducibility is_join_reducible(const LnElement& s);

/// Explicit L_n with element index = bit pattern. Throws CapExceeded above `cap`.
FinitePoset build_ln(unsigned n, unsigned cap = kDefaultExplicitCap);
/// Subsets of a k-set by inclusion, element index = bit pattern.
FinitePoset boolean_poset(unsigned k, unsigned cap = kDefaultExplicitCap);
/// Transitive closure of single elementary left slides, same indexing as build_ln.
FinitePoset build_ln_from_slides(unsigned n, unsigned cap = kDefaultExplicitCap);

/// sign(S) = +1 iff n in S, lift(S) = S ∪ {n}, on build_ln(n). Requires n >= 1.
LayerStructure natural_layer(unsigned n);

/// All 2^n elements in bit order.
std::vector<LnElement> all_elements(unsigned n);

}  // namespace lnposet::ln
