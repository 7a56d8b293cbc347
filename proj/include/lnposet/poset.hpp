#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <boost/dynamic_bitset.hpp>

namespace lnposet {

/// Elements are identified by their index; labels are for display only.
using Element = std::size_t;
using Row = boost::dynamic_bitset<std::uint64_t>;
using ElementSet = std::vector<Element>;  // sorted ascending
using CoverList = std::vector<std::pair<Element, Element>>;

/*
  A finite poset stored as a dense bit-packed relation. Both the row
  {y : x <= y} and the column {x : x <= y} are kept so that up- and
  down-directed scans are word parallel. Immutable after construction.
*/
class FinitePoset {
 public:
  FinitePoset() = default;

  /// Checks reflexivity, antisymmetry and transitivity of `up` (up[x][y] <=> x <= y);
  /// throws InvalidArgument on the first violated axiom.
  FinitePoset(std::vector<std::string> labels, std::vector<Row> up);

  /// Reflexive-transitive closure of a Hasse diagram. Throws CycleDetected when
  /// the cover digraph has a directed cycle.
  static FinitePoset from_cover_relations(std::vector<std::string> labels, const CoverList& covers);

  static FinitePoset chain(std::size_t m);
  static FinitePoset antichain(std::size_t m);

  std::size_t size() const { return up_.size(); }
  bool empty() const { return up_.empty(); }

  bool leq(Element x, Element y) const { return up_[x].test(y); }
  bool less(Element x, Element y) const { return x != y && up_[x].test(y); }
  bool comparable(Element x, Element y) const { return leq(x, y) || leq(y, x); }

  /// {y : x <= y}
  const Row& up_row(Element x) const { return up_[x]; }
  /// {x : x <= y}
  const Row& down_row(Element y) const { return down_[y]; }

  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(Element x) const { return labels_[x]; }

  bool same_relation(const FinitePoset& other) const { return up_ == other.up_; }
  friend bool operator==(const FinitePoset& a, const FinitePoset& b) {
    return a.labels_ == b.labels_ && a.up_ == b.up_;
  }

 private:
  struct Trusted {};
  FinitePoset(Trusted, std::vector<std::string> labels, std::vector<Row> up);
  void build_columns();

  friend FinitePoset dual(const FinitePoset& p);

  std::vector<std::string> labels_;
  std::vector<Row> up_;
  std::vector<Row> down_;
};

/// Exhaustive check of the three partial-order axioms on a raw relation.
/// Returns a human readable description of the first violation, if any.
std::optional<std::string> find_order_violation(std::span<const Row> up);

/// Pairs (x, y) with x < y and nothing strictly between, sorted lexicographically.
CoverList cover_pairs(const FinitePoset& p);

/// Same element set, opposite order.
FinitePoset dual(const FinitePoset& p);

struct Subposet {
  FinitePoset poset;
  std::vector<Element> index_map;  // subposet index -> index in the parent
};

/// Induced subposet on a sorted element set.
Subposet induced_subposet(const FinitePoset& p, std::span<const Element> elements);

/// Closed [x, y] or open (x, y). Throws NotComparable unless x <= y.
Subposet interval(const FinitePoset& p, Element x, Element y, bool open);

ElementSet up_set(const FinitePoset& p, std::span<const Element> generators);
ElementSet down_set(const FinitePoset& p, std::span<const Element> generators);

ElementSet minimal_elements(const FinitePoset& p);
ElementSet maximal_elements(const FinitePoset& p);

/// Least upper bound / greatest lower bound by direct scan of common bounds.
std::optional<Element> least_upper_bound(const FinitePoset& p, Element x, Element y);
std::optional<Element> greatest_lower_bound(const FinitePoset& p, Element x, Element y);

/// Nonempty and every pair has both bounds.
bool is_lattice(const FinitePoset& p);

/// Linear extension: topological order with the smallest available index first.
std::vector<Element> linear_extension(const FinitePoset& p);

struct RankFunction {
  std::vector<std::int64_t> values;
};

struct NotGraded {
  enum class Reason {
    // Two maximal chains between `low` and `high` have lengths `length_a` != `length_b`.
    kIntervalChains,
    // Every interval is fine but the cover graph admits no consistent rank; the cover
    // low <. high would need rank difference `length_b` instead of `length_a` = 1.
    kCoverCycle,
  };
  Reason reason;
  Element low;
  Element high;
  std::size_t length_a;
  std::int64_t length_b;
};

/// Rank function (minimum 0 on every connected component) or a witness that none exists.
std::variant<RankFunction, NotGraded> grading(const FinitePoset& p);

/// Order isomorphism p -> q as an index map, found by colour refinement plus
/// backtracking. Exponential in the worst case.
std::optional<std::vector<Element>> find_isomorphism(const FinitePoset& p, const FinitePoset& q);

/// True iff f is a bijection with x <=_p y <=> f(x) <=_q f(y).
bool verify_isomorphism(const FinitePoset& p, const FinitePoset& q, std::span<const Element> f);

}  // namespace lnposet
