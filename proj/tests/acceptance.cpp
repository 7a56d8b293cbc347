// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <bitset>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "lnposet/complex.hpp"
#include "lnposet/errors.hpp"
#include "lnposet/incidence.hpp"
#include "lnposet/layered.hpp"
#include "lnposet/ln.hpp"
#include "lnposet/random_poset.hpp"
#include "lnposet/surgery.hpp"
#include "oracles.hpp"

namespace {

using namespace lnposet;
using ln::LnElement;

struct Outcome {
  bool ok = true;
  std::string detail;

  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
};

int failures = 0;

void criterion(int id, const std::string& name, double limit_s, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out.fail(std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (out.ok && secs > limit_s) out.fail("time limit exceeded");
  if (!out.ok) ++failures;
  std::printf("%s %d %s (%.2fs, limit %.0fs)%s%s\n", out.ok ? "PASS" : "FAIL", id, name.c_str(), secs, limit_s,
              out.detail.empty() ? "" : ": ", out.detail.c_str());
  std::fflush(stdout);
}

std::string pair_text(const LnElement& s, const LnElement& t) {
  return "n=" + std::to_string(s.n()) + " S={" + s.to_string() + "} T={" + t.to_string() + "}";
}

Outcome mobius_triple() {
  Outcome out;
  std::size_t pairs = 0;
  for (unsigned n = 1; n <= 8 && out.ok; ++n) {
    const MobiusTable inv = mobius_by_inversion(ln::build_ln(n));
    for (const auto& s : ln::all_elements(n)) {
      for (const auto& t : ln::all_elements(n)) {
        const std::int64_t m = inv(s.bits(), t.bits());
        if (ln::mobius_closed(s, t) != m || ln::mobius_recursive(s, t) != m) out.fail(pair_text(s, t));
        ++pairs;
      }
    }
  }
  if (out.ok) out.detail = std::to_string(pairs) + " pairs";
  return out;
}

Outcome doubling() {
  Outcome out;
  for (unsigned n = 1; n <= 7 && out.ok; ++n) {
    const LayeredDouble d = double_poset(ln::build_ln(n), ln::natural_layer(n));
    const FinitePoset next = ln::build_ln(n + 1);
    const auto f = find_isomorphism(d.poset, next);
    if (!f || !verify_isomorphism(d.poset, next, *f)) out.fail("no isomorphism found at n=" + std::to_string(n));
    // Psi against the counting order, checked independently of the poset classes.
    const auto rel = oracle::ln_relation(static_cast<int>(n + 1));
    const std::size_t m = std::size_t{1} << n;
    for (Element a = 0; a < 2 * m; ++a) {
      const Element ia = ln::psi(LnElement(n, a % m), a < m ? -1 : 1).bits();
      for (Element b = 0; b < 2 * m; ++b) {
        const Element ib = ln::psi(LnElement(n, b % m), b < m ? -1 : 1).bits();
        if (d.poset.leq(a, b) != rel[ia][ib]) out.fail("Psi not an isomorphism at n=" + std::to_string(n));
      }
    }
  }
  return out;
}

Outcome surgery() {
  Outcome out;
  Rng rng(0);
  int instances = 0, with_m = 0, literal_misses = 0, signed_misses = 0;
  std::string witness;
  for (; instances < 200; ++instances) {
    const SurgeryInstance inst = random_surgery_instance(12, rng);
    const auto& [p0, p1, e] = inst;
    const ConnectSum glued = connect_sum(p0, p1, e);
    const auto want = oracle::mobius(oracle::relation_of(glued.poset));
    const MobiusTable inv = mobius_by_inversion(glued.poset);
    const MobiusTable block = mobius_conn_sum(p0, p1, e);
    for (Element x = 0; x < glued.poset.size(); ++x)
      for (Element y = 0; y < glued.poset.size(); ++y)
        if (block(x, y) != want[x][y] || inv(x, y) != want[x][y])
          out.fail("block formula differs on instance " + std::to_string(instances));

    const bool m_plus = std::holds_alternative<MMap>(check_M_conditions(p0, e.i0, MDirection::kPlus));
    const bool m_minus = std::holds_alternative<MMap>(check_M_conditions(p1, e.i1, MDirection::kMinus));
    if (!m_plus || !m_minus) continue;
    ++with_m;
    const MobiusTable closed = mobius_cross_closed_form(p0, p1, e);
    if (first_difference(closed, inv)) out.fail("closed form differs on instance " + std::to_string(instances));

    std::set<std::int64_t> literal{0}, signed_range{0};
    for (const FinitePoset* part : {&p0, &p1}) {
      for (std::int64_t v : mobius_by_recursion(*part).range(*part)) {
        literal.insert(v);
        signed_range.insert(v);
      }
    }
    for (std::int64_t v : mobius_by_recursion(e.q).range(e.q)) {
      literal.insert(v);
      signed_range.insert(-v);
    }
    bool literal_ok = true, signed_ok = true;
    for (std::int64_t v : inv.range(glued.poset)) {
      if (!literal.contains(v)) {
        literal_ok = false;
        if (witness.empty())
          witness = "instance " + std::to_string(instances) + " (|P0|=" + std::to_string(p0.size()) +
                    ", |P1|=" + std::to_string(p1.size()) + ", |Q|=" + std::to_string(e.q.size()) +
                    ") has mu = " + std::to_string(v);
      }
      signed_ok = signed_ok && signed_range.contains(v);
    }
    literal_misses += !literal_ok;
    signed_misses += !signed_ok;
  }
  std::ostringstream summary;
  summary << instances << " instances, " << with_m << " with (M+-); literal range containment fails on "
          << literal_misses << ", e.g. " << (witness.empty() ? "none" : witness)
          << "; with -Range mu_Q it fails on " << signed_misses;
  if (literal_misses > 0) out.fail("range containment: " + summary.str());
  if (signed_misses > 0) out.fail(summary.str());
  if (out.ok) out.detail = summary.str();
  return out;
}

Outcome lattice_laws() {
  Outcome out;
  std::string comple_witness;
  for (unsigned n = 1; n <= 7; ++n) {
    const auto rel = oracle::ln_relation(static_cast<int>(n));
    const std::uint64_t full = (std::uint64_t{1} << n) - 1;
    for (const auto& s : ln::all_elements(n)) {
      const LnElement c = ln::sigma(s);
      if (comple_witness.empty() && (ln::join(s, c).bits() != full || !ln::meet(s, c).empty()))
        comple_witness = "n=" + std::to_string(n) + " S={" + s.to_string() + "}: S v sigma(S) = {" +
                         ln::join(s, c).to_string() + "}, S ^ sigma(S) = {" + ln::meet(s, c).to_string() + "}";
      for (const auto& t : ln::all_elements(n)) {
        const LnElement j = ln::join(s, t);
        const LnElement m = ln::meet(s, t);
        if (j.bits() != *oracle::lub(rel, s.bits(), t.bits())) out.fail("join " + pair_text(s, t));
        if (m.bits() != *oracle::glb(rel, s.bits(), t.bits())) out.fail("meet " + pair_text(s, t));
        if (ln::rho(j) + ln::rho(m) != ln::rho(s) + ln::rho(t)) out.fail("modular " + pair_text(s, t));
        if (j.bits() == full && m.empty() && t != c) out.fail("complement uniqueness " + pair_text(s, t));
      }
    }
  }
  if (!comple_witness.empty()) {
    out.fail("complement identity fails, " + comple_witness +
             "; join/meet, modular identity and complement uniqueness hold");
  }
  return out;
}

Outcome topology() {
  Outcome out;
  std::size_t hall = 0, contractible = 0, spheres = 0;
  for (unsigned n = 1; n <= 6; ++n) {
    const FinitePoset p = ln::build_ln(n);
    const auto mu = oracle::mobius(oracle::ln_relation(static_cast<int>(n)));
    for (const auto& s : ln::all_elements(n)) {
      for (const auto& t : ln::all_elements(n)) {
        if (s == t || !ln::leq(s, t)) continue;
        const Subposet open = interval(p, s.bits(), t.bits(), true);
        const std::int64_t chi = euler_characteristic(nerve_f_vector(open.poset));
        if (open.poset.size() <= 20) {
          ++hall;
          if (chi != 1 + mu[s.bits()][t.bits()]) out.fail("Hall " + pair_text(s, t));
        }
        const std::int64_t d = ln::rho(t) - ln::rho(s);
        if (!ln::is_elementary(s, t)) {
          ++contractible;
          if (chi != 1) out.fail("non-elementary chi " + pair_text(s, t));
        } else {
          if (d >= 2) {
            ++spheres;
            if (chi != 1 + (d % 2 == 0 ? 1 : -1)) out.fail("sphere chi " + pair_text(s, t));
          }
          if (!ln::verify_boole_iso(s, t, ln::boole_interval_iso(s, t))) out.fail("Boole map " + pair_text(s, t));
        }
      }
    }
  }
  if (out.ok)
    out.detail = std::to_string(hall) + " Hall checks, " + std::to_string(contractible) + " contractible, " +
                 std::to_string(spheres) + " spheres";
  return out;
}

Outcome order_equivalence() {
  Outcome out;
  for (unsigned n = 1; n <= 7; ++n) {
    const auto rel = oracle::ln_relation(static_cast<int>(n));
    const FinitePoset slides = ln::build_ln_from_slides(n);
    for (const auto& s : ln::all_elements(n)) {
      for (const auto& t : ln::all_elements(n)) {
        const bool want = rel[s.bits()][t.bits()];
        if (ln::leq(s, t) != want || ln::leq_by_reachability(s, t) != want || slides.leq(s.bits(), t.bits()) != want)
          out.fail(pair_text(s, t));
      }
    }
    if (n > 6) continue;
    for (const auto& s : ln::all_elements(n)) {
      const auto lengths = oracle::maximal_chain_lengths(rel, 0, s.bits());
      if (lengths != std::set<std::size_t>{static_cast<std::size_t>(ln::rho(s))})
        out.fail("maximal chains below {" + s.to_string() + "}");
    }
    for (const auto& [a, b] : oracle::covers(rel))
      if (ln::rho(LnElement(n, b)) != ln::rho(LnElement(n, a)) + 1) out.fail("cover with rank gap");
  }
  return out;
}

Outcome join_irreducibility() {
  Outcome out;
  std::size_t reducible_count = 0;
  for (unsigned n = 1; n <= 7; ++n) {
    const auto rel = oracle::ln_relation(static_cast<int>(n));
    const std::size_t m = rel.size();
    std::vector<std::size_t> lub(m * m);
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = 0; b < m; ++b) lub[a * m + b] = *oracle::lub(rel, a, b);
    std::vector<bool> reducible(m, false);
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = 0; b < m; ++b) {
        const std::size_t j = lub[a * m + b];
        if (j != a && j != b) reducible[j] = true;
      }
    for (const auto& s : ln::all_elements(n)) {
      const bool want = reducible[s.bits()];
      reducible_count += want;
      const auto r = ln::is_join_reducible(s);
      if (r.reducible != want || ln::has_gap(s) != want) out.fail("n=" + std::to_string(n) + " S={" + s.to_string() + "}");
      if (want && (!r.parts || ln::join(r.parts->first, r.parts->second) != s)) out.fail("witness for {" + s.to_string() + "}");
    }
  }
  if (out.ok) out.detail = std::to_string(reducible_count) + " reducible elements";
  return out;
}

Outcome worked_examples() {
  Outcome out;
  const auto el = [](unsigned n, std::vector<int> m) { return LnElement::from_members(n, m); };
  const LnElement s = el(12, {1, 4, 6, 7, 11});
  const LnElement t = el(12, {2, 5, 9, 10});
  if (ln::join(s, t).to_string() != "1,4,6,9,11") out.fail("join = {" + ln::join(s, t).to_string() + "}");
  if (ln::meet(s, t).to_string() != "2,5,7,10") out.fail("meet = {" + ln::meet(s, t).to_string() + "}");
  const LnElement plus = ln::m_plus(el(17, {2, 5, 7, 8, 11}));
  const LnElement minus = ln::m_minus(el(17, {2, 5, 7, 8, 16, 17}));
  if (plus.to_string() != "2,5,7,8,17") out.fail("m+ = {" + plus.to_string() + "}");
  if (minus.to_string() != "2,5,7,8,15,16") out.fail("m- = {" + minus.to_string() + "}");
  return out;
}

}  // namespace

int main() {
  criterion(1, "Mobius closed form = recursion = inversion, n=1..8", 60, mobius_triple);
  criterion(2, "double(L_n) isomorphic to L_{n+1}, n=1..7", 10, doubling);
  criterion(3, "connect-sum block formula, closed form and range, 200 instances", 30, surgery);
  criterion(4, "lattice laws, n=1..7", 60, lattice_laws);
  criterion(5, "Hall formula and interval topology, n=1..6", 120, topology);
  criterion(6, "order definitions coincide, n=1..7; graded by rho, n<=6", 60, order_equivalence);
  criterion(7, "join irreducibility matches brute force and gaps, n=1..7", 30, join_irreducibility);
  criterion(8, "worked examples", 1, worked_examples);
  std::printf("%d of 8 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
