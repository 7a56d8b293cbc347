#include "lnposet/ln.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <unordered_set>

#include "lnposet/errors.hpp"

namespace lnposet::ln {

namespace {

using Bits = std::uint64_t;

constexpr Bits bit(int i) { return Bits{1} << (i - 1); }
constexpr Bits low_mask(unsigned n) { return n >= 64 ? ~Bits{0} : (Bits{1} << n) - 1; }
int top_member(Bits b) { return b == 0 ? 0 : 64 - __builtin_clzll(b); }

Bits m_plus_bits(unsigned n, Bits s) {
  if (s == 0) return bit(static_cast<int>(n));
  return (s & ~bit(top_member(s))) | bit(static_cast<int>(n));
}

Bits sigma_bits(unsigned n, Bits s) { return ~s & low_mask(n); }

Bits m_minus_bits(unsigned n, Bits s) { return sigma_bits(n, m_plus_bits(n, sigma_bits(n, s))); }

Bits join_bits(unsigned n, Bits s, Bits t) {
  if (n == 0) return 0;
  if (n == 1) return s | t;
  const Bits top = bit(static_cast<int>(n));
  if ((s & top) && !(t & top)) std::swap(s, t);
  const Bits rest = low_mask(n - 1);
  if ((s & top) == (t & top)) return join_bits(n - 1, s & rest, t & rest) | (s & top);
  // s lacks n, t has it: every common upper bound lies in the upper layer, so
  // s may be replaced by m_plus(s).
  return join_bits(n - 1, m_plus_bits(n, s) & rest, t & rest) | top;
}

Bits meet_bits(unsigned n, Bits s, Bits t) {
  if (n == 0) return 0;
  if (n == 1) return s & t;
  const Bits top = bit(static_cast<int>(n));
  if ((s & top) && !(t & top)) std::swap(s, t);
  const Bits rest = low_mask(n - 1);
  if ((s & top) == (t & top)) return meet_bits(n - 1, s & rest, t & rest) | (s & top);
  return meet_bits(n - 1, s & rest, m_minus_bits(n, t) & rest);
}

Bits join_max_bits(Bits s, Bits t) {
  if (s == 0) return t;
  if (t == 0) return s;
  const int sk = top_member(s);
  const int tl = top_member(t);
  return join_max_bits(s & ~bit(sk), t & ~bit(tl)) | bit(std::max(sk, tl));
}

Bits meet_min_bits(Bits s, Bits t) {
  if (s == 0 || t == 0) return 0;
  const int sk = top_member(s);
  const int tl = top_member(t);
  return meet_min_bits(s & ~bit(sk), t & ~bit(tl)) | bit(std::min(sk, tl));
}

// Images of B_d under the recursive isomorphism onto [I, J] of L_n.
std::vector<Bits> boole_images(unsigned n, Bits i, Bits j) {
  if (n == 0) return {0};
  const Bits top = bit(static_cast<int>(n));
  if (!(j & top)) return boole_images(n - 1, i, j);
  if (i & top) {
    auto sub = boole_images(n - 1, i & ~top, j & ~top);
    for (Bits& b : sub) b |= top;
    return sub;
  }
  // n in J \ I.
  if (n == 1) return {0, top};
  const Bits prev = bit(static_cast<int>(n) - 1);
  // For an elementary pair the bead at n in J slid to n - 1 in I.
  if (!(i & prev) || (j & prev)) throw NotElementary("pair is not elementary");
  const auto sub = boole_images(n - 2, i & ~prev, j & ~top);
  std::vector<Bits> out(2 * sub.size());
  for (std::size_t mask = 0; mask < sub.size(); ++mask) {
    out[mask] = sub[mask] | prev;
    out[mask + sub.size()] = sub[mask] | top;
  }
  return out;
}

}  // namespace

LnElement::LnElement(unsigned n, std::uint64_t bits) : n_(n), bits_(bits) {
  if (n > kMaxN) throw InvalidArgument("n = " + std::to_string(n) + " exceeds the word size cap");
  if ((bits & ~low_mask(n)) != 0) throw InvalidArgument("subset has members above n = " + std::to_string(n));
}

LnElement LnElement::from_members(unsigned n, std::span<const int> members) {
  Bits b = 0;
  for (int i : members) {
    if (i < 1 || i > static_cast<int>(n)) throw InvalidArgument("member " + std::to_string(i) + " outside [1, n]");
    if (b & bit(i)) throw InvalidArgument("member " + std::to_string(i) + " repeated");
    b |= bit(i);
  }
  return LnElement(n, b);
}

LnElement LnElement::from_sign_vector(std::span<const int> signs) {
  Bits b = 0;
  for (std::size_t i = 0; i < signs.size(); ++i) {
    if (signs[i] != 1 && signs[i] != -1) throw InvalidArgument("sign vector entries must be +1 or -1");
    if (signs[i] == 1) b |= bit(static_cast<int>(i) + 1);
  }
  return LnElement(static_cast<unsigned>(signs.size()), b);
}

LnElement LnElement::parse(unsigned n, const std::string& text) {
  std::string body;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c)) && c != '{' && c != '}') body += c;
  std::vector<int> members;
  std::size_t start = 0;
  while (start < body.size()) {
    std::size_t end = body.find(',', start);
    if (end == std::string::npos) end = body.size();
    const std::string token = body.substr(start, end - start);
    if (token.empty() || !std::all_of(token.begin(), token.end(), [](char c) { return std::isdigit(c); }))
      throw InvalidArgument("cannot parse subset \"" + text + "\"");
    members.push_back(std::stoi(token));
    start = end + 1;
  }
  return from_members(n, members);
}

std::vector<int> LnElement::members() const {
  std::vector<int> out;
  for (int i = 1; i <= static_cast<int>(n_); ++i)
    if (contains(i)) out.push_back(i);
  return out;
}

std::vector<int> LnElement::sign_vector() const {
  std::vector<int> out;
  for (int i = 1; i <= static_cast<int>(n_); ++i) out.push_back(sign(i));
  return out;
}

std::string LnElement::to_string() const {
  if (bits_ == 0) return "{}";
  std::string out;
  for (int i : members()) {
    if (!out.empty()) out += ',';
    out += std::to_string(i);
  }
  return out;
}

LnElement LnElement::with(int i) const { return LnElement(n_, bits_ | bit(i)); }
LnElement LnElement::without(int i) const { return LnElement(n_, contains(i) ? bits_ & ~bit(i) : bits_); }

void require_same_n(const LnElement& s, const LnElement& t) {
  if (s.n() != t.n())
    throw SizeMismatch("elements live in L_" + std::to_string(s.n()) + " and L_" + std::to_string(t.n()));
}

bool leq(const LnElement& s, const LnElement& t) {
  require_same_n(s, t);
  int in_s = 0;
  int in_t = 0;
  for (int k = static_cast<int>(s.n()); k >= 1; --k) {
    in_s += s.contains(k);
    in_t += t.contains(k);
    if (in_s > in_t) return false;
  }
  return true;
}

std::vector<LnElement> elementary_left_slides(const LnElement& t) {
  std::vector<LnElement> out;
  for (int b : t.members()) {
    if (b == 1)
      out.push_back(t.without(1));
    else if (!t.contains(b - 1))
      out.push_back(t.without(b).with(b - 1));
  }
  return out;
}

bool leq_by_reachability(const LnElement& s, const LnElement& t) {
  require_same_n(s, t);
  if (s.n() > 24) throw CapExceeded("reachability search is limited to n <= 24");
  // Every slide lowers rho by one, so states below rho(S) cannot lead to S.
  const std::int64_t floor = rho(s);
  std::unordered_set<std::uint64_t> seen{t.bits()};
  std::deque<LnElement> frontier{t};
  while (!frontier.empty()) {
    const LnElement cur = frontier.front();
    frontier.pop_front();
    if (cur == s) return true;
    for (const LnElement& next : elementary_left_slides(cur)) {
      if (rho(next) < floor || !seen.insert(next.bits()).second) continue;
      frontier.push_back(next);
    }
  }
  return false;
}

std::int64_t rho(const LnElement& s) {
  std::int64_t total = 0;
  for (int i : s.members()) total += i;
  return total;
}

DeltaProfile delta_profile(const LnElement& s, const LnElement& t) {
  require_same_n(s, t);
  DeltaProfile d{std::vector<int>(s.n(), 0)};
  int running = 0;
  for (int k = static_cast<int>(s.n()); k >= 1; --k) {
    running += static_cast<int>(t.contains(k)) - static_cast<int>(s.contains(k));
    d.values[k - 1] = running;
  }
  return d;
}

std::int64_t weight(const LnElement& s, const LnElement& t) {
  std::int64_t w = 0;
  for (int v : delta_profile(s, t).values) w += v;
  return w;
}

bool is_elementary(const LnElement& s, const LnElement& t) {
  const auto d = delta_profile(s, t).values;
  for (std::size_t k = 0; k < d.size(); ++k) {
    if (d[k] != 0 && d[k] != 1) return false;
    if (k + 1 < d.size() && d[k] == 1 && d[k + 1] == 1) return false;
  }
  return true;
}

std::optional<ElementaryDecomposition> decompose_elementary(const LnElement& s, const LnElement& t) {
  if (!is_elementary(s, t)) return std::nullopt;
  const auto d = delta_profile(s, t).values;
  ElementaryDecomposition out;
  for (int k = 2; k <= static_cast<int>(s.n()); ++k)
    if (d[k - 1] == 1) out.nus.push_back(k - 1);

  Bits common = s.bits() & t.bits();
  if (common & bit(1)) {
    out.a1 = out.b1 = bit(1);
    common &= ~bit(1);
  } else if (!s.empty() || !t.empty()) {
    out.b1 = (!s.n() || d[0] != 1) ? 0 : bit(1);
  }
  out.gaps.assign(out.nus.size() + 1, 0);
  for (int c = 1; c <= static_cast<int>(s.n()); ++c) {
    if (!(common & bit(c))) continue;
    std::size_t slot = 0;
    while (slot < out.nus.size() && out.nus[slot] + 1 < c) ++slot;
    out.gaps[slot] |= bit(c);
  }
  return out;
}

std::pair<LnElement, LnElement> reassemble(unsigned n, const ElementaryDecomposition& d) {
  Bits s = d.a1;
  Bits t = d.b1;
  for (Bits g : d.gaps) {
    s |= g;
    t |= g;
  }
  for (int nu : d.nus) {
    s |= bit(nu);
    t |= bit(nu + 1);
  }
  return {LnElement(n, s), LnElement(n, t)};
}

std::int64_t mobius_closed(const LnElement& s, const LnElement& t) {
  if (!is_elementary(s, t)) return 0;
  return ((rho(t) - rho(s)) % 2 == 0) ? 1 : -1;
}

std::int64_t mobius_recursive(const LnElement& s, const LnElement& t) {
  require_same_n(s, t);
  unsigned n = s.n();
  Bits a = s.bits();
  Bits b = t.bits();
  std::int64_t sign = 1;
  while (true) {
    if (n == 0) return sign;
    if (n == 1) {
      // L_1 is the chain ∅ < {1}.
      if (a == b) return sign;
      return (a == 0 && b == 1) ? -sign : 0;
    }
    const Bits top = bit(static_cast<int>(n));
    const Bits prev = bit(static_cast<int>(n) - 1);
    if ((a & top) == (b & top)) {
      n -= 1;
    } else if (!(a & top) && (b & top) && (a & prev) && !(b & prev)) {
      sign = -sign;
      n -= 2;
    } else {
      return 0;
    }
    a &= low_mask(n);
    b &= low_mask(n);
  }
}

LnElement join(const LnElement& s, const LnElement& t) {
  require_same_n(s, t);
  return LnElement(s.n(), join_bits(s.n(), s.bits(), t.bits()));
}

LnElement meet(const LnElement& s, const LnElement& t) {
  require_same_n(s, t);
  return LnElement(s.n(), meet_bits(s.n(), s.bits(), t.bits()));
}

LnElement join_by_max_elements(const LnElement& s, const LnElement& t) {
  require_same_n(s, t);
  return LnElement(s.n(), join_max_bits(s.bits(), t.bits()));
}

LnElement meet_by_min_elements(const LnElement& s, const LnElement& t) {
  require_same_n(s, t);
  return LnElement(s.n(), meet_min_bits(s.bits(), t.bits()));
}

LnElement m_plus(const LnElement& s) {
  if (s.n() == 0) throw InvalidArgument("L_0 has no upper layer");
  return LnElement(s.n(), m_plus_bits(s.n(), s.bits()));
}

LnElement m_minus(const LnElement& s) {
  if (s.n() == 0) throw InvalidArgument("L_0 has no lower layer");
  return LnElement(s.n(), m_minus_bits(s.n(), s.bits()));
}

LnElement m_minus_direct(const LnElement& s) {
  const int n = static_cast<int>(s.n());
  if (n == 0) throw InvalidArgument("L_0 has no lower layer");
  if (!s.contains(n)) return s;
  LnElement out = s.without(n);
  for (int k = n - 1; k >= 1; --k) {
    if (!s.contains(k)) return out.with(k);
  }
  return out;
}

LnElement sigma(const LnElement& s) { return LnElement(s.n(), sigma_bits(s.n(), s.bits())); }

LnElement psi(const LnElement& s, int eps) {
  if (eps != 1 && eps != -1) throw InvalidArgument("eps must be +1 or -1");
  const LnElement lifted = s.in(s.n() + 1);
  return eps == 1 ? lifted.with(static_cast<int>(s.n()) + 1) : lifted;
}

std::pair<LnElement, int> phi(const LnElement& s) {
  if (s.n() == 0) throw InvalidArgument("phi needs n >= 1");
  const int n = static_cast<int>(s.n());
  return {s.without(n).in(s.n() - 1), s.contains(n) ? 1 : -1};
}

BooleIsomorphism boole_interval_iso(const LnElement& i, const LnElement& j) {
  require_same_n(i, j);
  if (!leq(i, j)) throw NotComparable(i.bits(), j.bits());
  if (!is_elementary(i, j)) throw NotElementary(i.to_string() + " and " + j.to_string() + " are not elementary");
  BooleIsomorphism iso;
  iso.dimension = static_cast<unsigned>(rho(j) - rho(i));
  for (Bits b : boole_images(i.n(), i.bits(), j.bits())) iso.image.emplace_back(i.n(), b);
  return iso;
}

bool verify_boole_iso(const LnElement& i, const LnElement& j, const BooleIsomorphism& iso) {
  const std::size_t count = std::size_t{1} << iso.dimension;
  if (iso.image.size() != count) return false;
  // Enumerate [I, J] independently: everything reachable from J by slides that stays >= I.
  std::unordered_set<std::uint64_t> members{j.bits()};
  std::deque<LnElement> frontier{j};
  while (!frontier.empty()) {
    const LnElement cur = frontier.front();
    frontier.pop_front();
    for (const LnElement& next : elementary_left_slides(cur))
      if (leq(i, next) && members.insert(next.bits()).second) frontier.push_back(next);
  }
  if (members.size() != count) return false;
  std::unordered_set<std::uint64_t> hit;
  for (const LnElement& e : iso.image)
    if (!members.contains(e.bits()) || !hit.insert(e.bits()).second) return false;
  for (std::size_t a = 0; a < count; ++a)
    for (std::size_t b = 0; b < count; ++b)
      if (((a & b) == a) != leq(iso.image[a], iso.image[b])) return false;
  return true;
}

bool has_gap(const LnElement& s) {
  const int n = static_cast<int>(s.n());
  for (int k = 2; k < n; ++k) {
    if (s.contains(k)) continue;
    bool below = false;
    bool above = false;
    for (int i = 1; i < k; ++i) below = below || s.contains(i);
    for (int i = k + 1; i <= n; ++i) above = above || s.contains(i);
    if (below && above) return true;
  }
  return false;
}

JoinReducibility is_join_reducible(const LnElement& s) {
  const std::vector<int> m = s.members();
  JoinReducibility out;
  for (std::size_t j = 1; j < m.size(); ++j) {
    if (m[j] - m[j - 1] <= 1) continue;
    // Lower the bead after the gap by one, and separately keep only the block
    // of consecutive beads starting at it.
    std::vector<int> first = m;
    first[j] -= 1;
    std::vector<int> second;
    for (std::size_t k = 0; k < m.size() - j; ++k) second.push_back(m[j] + static_cast<int>(k));
    out.reducible = true;
    out.parts = std::pair{LnElement::from_members(s.n(), first), LnElement::from_members(s.n(), second)};
    return out;
  }
  if (!m.empty()) {
    std::vector<int> below(m.begin() + 1, m.end());
    if (m.front() > 1) below.insert(below.begin(), m.front() - 1);
    out.covered = LnElement::from_members(s.n(), below);
  }
  return out;
}

std::vector<LnElement> all_elements(unsigned n) {
  if (n > 30) throw CapExceeded("refusing to list 2^" + std::to_string(n) + " elements");
  std::vector<LnElement> out;
  out.reserve(std::size_t{1} << n);
  for (Bits b = 0; b < (Bits{1} << n); ++b) out.emplace_back(n, b);
  return out;
}

FinitePoset build_ln(unsigned n, unsigned cap) {
  if (n > cap) throw CapExceeded("L_" + std::to_string(n) + " exceeds the explicit cap " + std::to_string(cap));
  const auto elems = all_elements(n);
  const std::size_t m = elems.size();
  std::vector<std::string> labels;
  std::vector<Row> up(m, Row(m));
  for (std::size_t x = 0; x < m; ++x) {
    labels.push_back(elems[x].to_string());
    for (std::size_t y = 0; y < m; ++y)
      if (leq(elems[x], elems[y])) up[x].set(y);
  }
  return FinitePoset(std::move(labels), std::move(up));
}

FinitePoset boolean_poset(unsigned k, unsigned cap) {
  if (k > cap) throw CapExceeded("B_" + std::to_string(k) + " exceeds the explicit cap " + std::to_string(cap));
  const auto elems = all_elements(k);
  const std::size_t m = elems.size();
  std::vector<std::string> labels;
  std::vector<Row> up(m, Row(m));
  for (std::size_t x = 0; x < m; ++x) {
    labels.push_back(elems[x].to_string());
    for (std::size_t y = 0; y < m; ++y)
      if ((x & y) == x) up[x].set(y);
  }
  return FinitePoset(std::move(labels), std::move(up));
}

FinitePoset build_ln_from_slides(unsigned n, unsigned cap) {
  if (n > cap) throw CapExceeded("L_" + std::to_string(n) + " exceeds the explicit cap " + std::to_string(cap));
  std::vector<std::string> labels;
  CoverList moves;
  for (const LnElement& t : all_elements(n)) {
    labels.push_back(t.to_string());
    for (const LnElement& s : elementary_left_slides(t)) moves.emplace_back(s.bits(), t.bits());
  }
  return FinitePoset::from_cover_relations(std::move(labels), moves);
}

LayerStructure natural_layer(unsigned n) {
  if (n == 0) throw InvalidArgument("L_0 has no layer structure");
  LayerStructure layer;
  const Bits top = bit(static_cast<int>(n));
  for (Bits b = 0; b < (Bits{1} << n); ++b) {
    layer.sign.push_back((b & top) ? 1 : -1);
    if (!(b & top)) layer.lift.emplace(b, b | top);
  }
  return layer;
}

}  // namespace lnposet::ln
