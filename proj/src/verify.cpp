#include "lnposet/verify.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>

#include "lnposet/complex.hpp"
#include "lnposet/errors.hpp"
#include "lnposet/incidence.hpp"
#include "lnposet/layered.hpp"
#include "lnposet/ln.hpp"
#include "lnposet/random_poset.hpp"
#include "lnposet/surgery.hpp"

namespace lnposet {

namespace {

using ln::LnElement;

std::string pair_text(unsigned n, const LnElement& s, const LnElement& t) {
  return "n=" + std::to_string(n) + " S=" + s.to_string() + " T=" + t.to_string();
}

void expect(VerificationReport& r, bool ok, const std::string& inputs, const std::string& expected,
            const std::string& got) {
  if (!ok) r.failures.push_back({inputs, expected, got});
}

void suite_mobius(const VerifyOptions& o, VerificationReport& r) {
  for (unsigned n = 1; n <= o.max_n; ++n) {
    const FinitePoset p = ln::build_ln(n);
    const MobiusTable inverse = mobius_by_inversion(p);
    for (const LnElement& s : ln::all_elements(n)) {
      for (const LnElement& t : ln::all_elements(n)) {
        ++r.cases;
        const std::int64_t want = inverse(s.bits(), t.bits());
        const std::int64_t closed = ln::mobius_closed(s, t);
        const std::int64_t rec = ln::mobius_recursive(s, t);
        expect(r, closed == want && rec == want, pair_text(n, s, t), std::to_string(want),
               "closed=" + std::to_string(closed) + " recursive=" + std::to_string(rec));
      }
    }
  }
}

void suite_lattice(const VerifyOptions& o, VerificationReport& r) {
  for (unsigned n = 1; n <= o.max_n; ++n) {
    const FinitePoset p = ln::build_ln(n);
    const LnElement full(n, (std::uint64_t{1} << n) - 1);
    const LnElement none(n, 0);
    bool complement_reported = false;
    for (const LnElement& s : ln::all_elements(n)) {
      const LnElement c = ln::sigma(s);
      // Lattice complement by sigma; only the first counterexample per n is reported.
      if (!complement_reported && (ln::join(s, c) != full || ln::meet(s, c) != none)) {
        complement_reported = true;
        expect(r, false, "n=" + std::to_string(n) + " S=" + s.to_string(),
               "join with sigma(S) = " + full.to_string() + ", meet = {}",
               "join=" + ln::join(s, c).to_string() + " meet=" + ln::meet(s, c).to_string());
      }
      for (const LnElement& t : ln::all_elements(n)) {
        ++r.cases;
        const LnElement lub(n, *least_upper_bound(p, s.bits(), t.bits()));
        const LnElement glb(n, *greatest_lower_bound(p, s.bits(), t.bits()));
        const LnElement j = ln::join(s, t);
        const LnElement m = ln::meet(s, t);
        const std::string in = pair_text(n, s, t);
        expect(r, j == lub && ln::join_by_max_elements(s, t) == lub, in, "join=" + lub.to_string(),
               "join=" + j.to_string() + " by_max=" + ln::join_by_max_elements(s, t).to_string());
        expect(r, m == glb && ln::meet_by_min_elements(s, t) == glb, in, "meet=" + glb.to_string(),
               "meet=" + m.to_string() + " by_min=" + ln::meet_by_min_elements(s, t).to_string());
        expect(r, ln::rho(j) + ln::rho(m) == ln::rho(s) + ln::rho(t), in, "modular rank identity",
               "rho(join)+rho(meet)=" + std::to_string(ln::rho(j) + ln::rho(m)));
        if (j == full && m == none)
          expect(r, t == c, in, "complement=" + c.to_string(), "complement=" + t.to_string());
      }
    }
  }
}

std::string table_entry(const char* name, Element x, Element y, std::int64_t v) {
  return std::string(name) + "(" + std::to_string(x) + "," + std::to_string(y) + ")=" + std::to_string(v);
}

void suite_surgery(const VerifyOptions& o, VerificationReport& r) {
  Rng rng(o.seed);
  for (unsigned trial = 0; trial < o.surgery_instances; ++trial) {
    ++r.cases;
    const SurgeryInstance inst = random_surgery_instance(12, rng);
    const std::string in = "seed=" + std::to_string(o.seed) + " instance=" + std::to_string(trial);
    const ConnectSum glued = connect_sum(inst.p0, inst.p1, inst.embedding);
    const MobiusTable brute = mobius_by_inversion(glued.poset);
    const MobiusTable block = mobius_conn_sum(inst.p0, inst.p1, inst.embedding);
    if (auto d = first_difference(brute, block))
      expect(r, false, in, table_entry("inversion", d->first, d->second, brute(d->first, d->second)),
             table_entry("block", d->first, d->second, block(d->first, d->second)));
    for (Element y = 0; y < inst.p1.size(); ++y)
      for (Element x = 0; x < inst.p0.size(); ++x)
        expect(r, !glued.poset.leq(glued.offset + y, x), in, "no P1 -> P0 comparability",
               std::to_string(glued.offset + y) + " <= " + std::to_string(x));

    ElementSet q0(inst.embedding.i0.begin(), inst.embedding.i0.end());
    ElementSet q1(inst.embedding.i1.begin(), inst.embedding.i1.end());
    std::sort(q0.begin(), q0.end());
    std::sort(q1.begin(), q1.end());
    const auto plus = check_M_conditions(inst.p0, q0, MDirection::kPlus);
    const auto minus = check_M_conditions(inst.p1, q1, MDirection::kMinus);
    if (!std::holds_alternative<MMap>(plus) || !std::holds_alternative<MMap>(minus)) continue;
    const MobiusTable closed = mobius_cross_closed_form(inst.p0, inst.p1, inst.embedding);
    if (auto d = first_difference(brute, closed))
      expect(r, false, in, table_entry("inversion", d->first, d->second, brute(d->first, d->second)),
             table_entry("closed", d->first, d->second, closed(d->first, d->second)));
    // Literal containment in {0} ∪ Range mu0 ∪ Range mu1 ∪ Range muQ, and the signed
    // form in which the last set is -Range muQ as the closed form dictates.
    const auto range_q = mobius_by_recursion(inst.embedding.q).range(inst.embedding.q);
    std::set<std::int64_t> literal{0};
    for (const auto& part : {mobius_by_recursion(inst.p0).range(inst.p0), mobius_by_recursion(inst.p1).range(inst.p1)})
      literal.insert(part.begin(), part.end());
    std::set<std::int64_t> signed_form = literal;
    literal.insert(range_q.begin(), range_q.end());
    for (std::int64_t v : range_q) signed_form.insert(-v);
    for (std::int64_t v : brute.range(glued.poset)) {
      expect(r, literal.contains(v), in, "value in {0} ∪ Range mu0 ∪ Range mu1 ∪ Range muQ", std::to_string(v));
      expect(r, signed_form.contains(v), in, "value in {0} ∪ Range mu0 ∪ Range mu1 ∪ -Range muQ", std::to_string(v));
    }
  }
}

void suite_double(const VerifyOptions& o, VerificationReport& r) {
  for (unsigned n = 1; n <= o.max_n; ++n) {
    const FinitePoset p = ln::build_ln(n);
    const LayerStructure layer = ln::natural_layer(n);
    const LayeredDouble d = double_poset(p, layer);
    const FinitePoset next = ln::build_ln(n + 1);
    const std::string in = "n=" + std::to_string(n);
    // Psi_n is the identity on indices, so the double must coincide with L_{n+1}.
    ++r.cases;
    expect(r, d.poset.same_relation(next), in, "double(L_n) = L_{n+1} under Psi_n", "relations differ");

    const auto maps = property_M_maps(p, layer);
    ++r.cases;
    if (!std::holds_alternative<PropertyMMaps>(maps)) {
      expect(r, false, in, "property (M)", "fails");
      continue;
    }
    const PropertyMMaps& pm = std::get<PropertyMMaps>(maps);
    for (const LnElement& s : ln::all_elements(n)) {
      ++r.cases;
      expect(r, pm.m_plus[s.bits()] == ln::m_plus(s).bits() && pm.m_minus[s.bits()] == ln::m_minus(s).bits(),
             in + " S=" + s.to_string(), "m+=" + ln::m_plus(s).to_string() + " m-=" + ln::m_minus(s).to_string(),
             "scan m+=" + LnElement(n, pm.m_plus[s.bits()]).to_string() +
                 " m-=" + LnElement(n, pm.m_minus[s.bits()]).to_string());
    }
    const auto doubled_maps = property_M_maps(d.poset, d.layer);
    const PropertyMMaps lemma = double_property_M(p, layer, pm);
    ++r.cases;
    expect(r,
           std::holds_alternative<PropertyMMaps>(doubled_maps) &&
               std::get<PropertyMMaps>(doubled_maps).m_plus == lemma.m_plus &&
               std::get<PropertyMMaps>(doubled_maps).m_minus == lemma.m_minus,
           in, "maps of the double from those of L_n", "disagree");

    const MobiusTable hat = mobius_double(p, layer);
    for (const LnElement& s : ln::all_elements(n + 1)) {
      for (const LnElement& t : ln::all_elements(n + 1)) {
        ++r.cases;
        const std::int64_t want = ln::mobius_closed(s, t);
        expect(r, hat(s.bits(), t.bits()) == want, pair_text(n + 1, s, t), std::to_string(want),
               std::to_string(hat(s.bits(), t.bits())));
      }
    }
  }
}

void suite_topology(const VerifyOptions& o, VerificationReport& r) {
  for (unsigned n = 1; n <= o.max_n; ++n) {
    const FinitePoset p = ln::build_ln(n);
    for (const LnElement& s : ln::all_elements(n)) {
      for (const LnElement& t : ln::all_elements(n)) {
        if (!p.less(s.bits(), t.bits())) continue;
        ++r.cases;
        const std::string in = pair_text(n, s, t);
        const Subposet open = interval(p, s.bits(), t.bits(), /*open=*/true);
        const std::int64_t chi = euler_characteristic(nerve_f_vector(open.poset));
        const std::int64_t mu = ln::mobius_closed(s, t);
        if (open.poset.size() <= 20) {
          const HallCheck h = hall_check(p, s.bits(), t.bits());
          expect(r, h.ok && h.mu == mu, in, "chi = 1 + mu = " + std::to_string(1 + mu),
                 "mu=" + std::to_string(h.mu) + " chi=" + std::to_string(h.chi));
        }
        if (!ln::is_elementary(s, t)) {
          expect(r, chi == 1, in, "chi=1", "chi=" + std::to_string(chi));
          continue;
        }
        const std::int64_t d = ln::rho(t) - ln::rho(s);
        if (d >= 2) {
          const std::int64_t sphere = 1 + (d % 2 == 0 ? 1 : -1);
          expect(r, chi == sphere, in, "chi=" + std::to_string(sphere), "chi=" + std::to_string(chi));
        }
        expect(r, ln::verify_boole_iso(s, t, ln::boole_interval_iso(s, t)), in, "[S,T] isomorphic to B_d",
               "map rejected");
      }
    }
  }
}

const std::map<std::string, std::function<void(const VerifyOptions&, VerificationReport&)>>& suites() {
  static const std::map<std::string, std::function<void(const VerifyOptions&, VerificationReport&)>> table{
      {"double", suite_double},   {"lattice", suite_lattice},   {"mobius", suite_mobius},
      {"surgery", suite_surgery}, {"topology", suite_topology},
  };
  return table;
}

}  // namespace

const std::vector<std::string>& verify_suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, fn] : suites()) out.push_back(name);
    return out;
  }();
  return names;
}

std::vector<VerificationReport> run_verification(const std::string& suite, const VerifyOptions& options) {
  std::vector<std::string> selected;
  if (suite == "all") {
    selected = verify_suite_names();
  } else if (suites().contains(suite)) {
    selected = {suite};
  } else {
    throw InvalidArgument("unknown suite \"" + suite + "\"");
  }
  std::vector<VerificationReport> reports;
  for (const std::string& name : selected) {
    VerificationReport report;
    report.suite = name;
    const auto start = std::chrono::steady_clock::now();
    suites().at(name)(options, report);
    report.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    reports.push_back(std::move(report));
  }
  return reports;
}

nlohmann::json to_json(const VerificationReport& report) {
  nlohmann::json failures = nlohmann::json::array();
  for (const auto& f : report.failures)
    failures.push_back({{"inputs", f.inputs}, {"expected", f.expected}, {"got", f.got}});
  return {{"suite", report.suite}, {"cases", report.cases}, {"failures", failures}, {"elapsed_ms", report.elapsed_ms}};
}

}  // namespace lnposet
