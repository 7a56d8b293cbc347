#include "lnposet/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <deque>
#include <optional>
#include <set>
#include <sstream>
#include <unordered_set>

#include "lnposet/complex.hpp"
#include "lnposet/errors.hpp"
#include "lnposet/incidence.hpp"
#include "lnposet/layered.hpp"
#include "lnposet/ln.hpp"
#include "lnposet/poset_io.hpp"
#include "lnposet/surgery.hpp"
#include "lnposet/verify.hpp"

namespace lnposet {

namespace {

using ln::LnElement;

constexpr std::size_t kIntervalCap = 1U << 16;

// Rank used to order Möbius output: the grading when there is one, the height otherwise.
std::vector<std::int64_t> sort_ranks(const FinitePoset& p) {
  auto graded = grading(p);
  if (auto* rank = std::get_if<RankFunction>(&graded)) return rank->values;
  std::vector<std::int64_t> height(p.size(), 0);
  for (Element y : linear_extension(p)) {
    const Row& below = p.down_row(y);
    for (auto x = below.find_first(); x != Row::npos; x = below.find_next(x))
      if (x != y) height[y] = std::max(height[y], height[x] + 1);
  }
  return height;
}

void write_mobius_tsv(std::ostream& out, const FinitePoset& p, const MobiusTable& mu) {
  const auto rank = sort_ranks(p);
  std::vector<Element> xs(p.size());
  for (Element x = 0; x < p.size(); ++x) xs[x] = x;
  std::stable_sort(xs.begin(), xs.end(), [&](Element a, Element b) { return rank[a] < rank[b]; });
  out << "x\ty\tmu\n";
  for (Element x : xs) {
    const Row& above = p.up_row(x);
    for (auto y = above.find_first(); y != Row::npos; y = above.find_next(y))
      out << p.label(x) << '\t' << p.label(y) << '\t' << mu(x, y) << '\n';
  }
}

nlohmann::json mobius_triples(const FinitePoset& p, const MobiusTable& mu) {
  nlohmann::json out = nlohmann::json::array();
  for (Element x = 0; x < p.size(); ++x) {
    const Row& above = p.up_row(x);
    for (auto y = above.find_first(); y != Row::npos; y = above.find_next(y)) out.push_back({x, y, mu(x, y)});
  }
  return out;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, sep))
    if (!item.empty()) out.push_back(item);
  return out;
}

std::size_t parse_index(const std::string& token) {
  if (token.empty() || !std::all_of(token.begin(), token.end(), [](char c) { return std::isdigit(c); }))
    throw InvalidArgument("expected a non-negative index, got \"" + token + "\"");
  return std::stoul(token);
}

std::vector<std::pair<std::size_t, std::size_t>> parse_pairs(const std::string& text) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (const std::string& item : split(text, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw InvalidArgument("expected a:b pairs, got \"" + item + "\"");
    out.emplace_back(parse_index(item.substr(0, colon)), parse_index(item.substr(colon + 1)));
  }
  return out;
}

std::vector<Element> parse_map(const std::string& text, std::size_t domain) {
  std::vector<std::optional<Element>> partial(domain);
  for (const auto& [from, to] : parse_pairs(text)) {
    if (from >= domain) throw InvalidArgument("map source " + std::to_string(from) + " is not an element of Q");
    if (partial[from]) throw InvalidArgument("map source " + std::to_string(from) + " given twice");
    partial[from] = to;
  }
  std::vector<Element> out;
  for (std::size_t q = 0; q < domain; ++q) {
    if (!partial[q]) throw InvalidArgument("map misses element " + std::to_string(q) + " of Q");
    out.push_back(*partial[q]);
  }
  return out;
}

// An element named by its label, or by its index when no label matches.
Element resolve_element(const FinitePoset& p, const std::string& token) {
  const auto& labels = p.labels();
  const auto it = std::find(labels.begin(), labels.end(), token);
  if (it != labels.end()) return static_cast<Element>(it - labels.begin());
  const std::size_t index = parse_index(token);
  if (index >= p.size()) throw InvalidArgument("no element \"" + token + "\"");
  return index;
}

// [S, T] in L_n, found by sliding down from T; works for any n <= 63 as long as the interval is small.
FinitePoset ln_interval(const LnElement& s, const LnElement& t, bool open) {
  if (!ln::leq(s, t)) throw NotComparable(s.bits(), t.bits());
  std::unordered_set<std::uint64_t> seen{t.bits()};
  std::deque<LnElement> frontier{t};
  std::vector<LnElement> members{t};
  while (!frontier.empty()) {
    const LnElement cur = frontier.front();
    frontier.pop_front();
    for (const LnElement& next : ln::elementary_left_slides(cur)) {
      if (!ln::leq(s, next) || !seen.insert(next.bits()).second) continue;
      if (members.size() >= kIntervalCap) throw CapExceeded("interval has more than 65536 elements");
      members.push_back(next);
      frontier.push_back(next);
    }
  }
  if (open) std::erase_if(members, [&](const LnElement& e) { return e == s || e == t; });
  std::sort(members.begin(), members.end(), [](const LnElement& a, const LnElement& b) {
    return std::pair{ln::rho(a), a.bits()} < std::pair{ln::rho(b), b.bits()};
  });
  std::vector<std::string> labels;
  std::vector<Row> up(members.size(), Row(members.size()));
  for (std::size_t i = 0; i < members.size(); ++i) {
    labels.push_back(members[i].to_string());
    for (std::size_t j = 0; j < members.size(); ++j)
      if (ln::leq(members[i], members[j])) up[i].set(j);
  }
  return FinitePoset(std::move(labels), std::move(up));
}

void write_report(std::ostream& out, std::ostream& err, const VerificationReport& r) {
  out << "suite\t" << r.suite << "\ncases\t" << r.cases << "\nfailures\t" << r.failures.size() << '\n';
  for (const auto& f : r.failures)
    out << "FAIL\t" << f.inputs << "\texpected " << f.expected << "\tgot " << f.got << '\n';
  err << r.suite << ": " << r.elapsed_ms << " ms\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite posets, Möbius functions and the lattices L_n", "lnposet"};
  app.require_subcommand(1);

  // ln ...
  auto* ln_cmd = app.add_subcommand("ln", "operations on L_n");
  ln_cmd->require_subcommand(1);
  unsigned n = 0;
  std::string from_text, to_text, set_text, s_text, t_text;
  bool as_dot = false, as_json = false, open = false;

  auto* hasse = ln_cmd->add_subcommand("hasse", "Hasse diagram of L_n");
  hasse->add_option("--n", n, "ambient size")->required();
  auto* hasse_fmt = hasse->add_option_group("format");
  hasse_fmt->add_flag("--dot", as_dot, "DOT output");
  hasse_fmt->add_flag("--json", as_json, "JSON output");
  hasse_fmt->require_option(0, 1);

  auto* ln_mobius = ln_cmd->add_subcommand("mobius", "closed-form Möbius function of L_n");
  ln_mobius->add_option("--n", n, "ambient size")->required();
  auto* from_opt = ln_mobius->add_option("--from", from_text, "lower element, e.g. 2 or {}");
  auto* to_opt = ln_mobius->add_option("--to", to_text, "upper element, e.g. 1,3");
  from_opt->needs(to_opt);
  to_opt->needs(from_opt);

  auto* ln_interval_cmd = ln_cmd->add_subcommand("interval", "an interval of L_n as a poset");
  ln_interval_cmd->add_option("--n", n, "ambient size")->required();
  ln_interval_cmd->add_option("--from", from_text, "lower end")->required();
  ln_interval_cmd->add_option("--to", to_text, "upper end")->required();
  ln_interval_cmd->add_flag("--open", open, "drop both ends");
  ln_interval_cmd->add_flag("--dot", as_dot, "DOT instead of JSON");

  auto* slides = ln_cmd->add_subcommand("slides", "configurations one bead move below T");
  slides->add_option("--n", n, "ambient size")->required();
  slides->add_option("--set", set_text, "the configuration T")->required();

  auto* joinmeet = ln_cmd->add_subcommand("joinmeet", "join and meet of two elements");
  joinmeet->add_option("--n", n, "ambient size")->required();
  joinmeet->add_option("S", s_text, "first element")->required();
  joinmeet->add_option("T", t_text, "second element")->required();

  // mobius
  std::string input;
  auto* mobius_cmd = app.add_subcommand("mobius", "Möbius function of a poset as TSV");
  mobius_cmd->add_option("--input", input, "poset JSON")->required()->check(CLI::ExistingFile);

  // connect-sum
  std::string p0_path, p1_path, q_path, i0_text, i1_text;
  bool closed_form = false;
  auto* conn = app.add_subcommand("connect-sum", "glue two posets along a common subposet");
  conn->add_option("p0", p0_path, "P0 JSON")->required()->check(CLI::ExistingFile);
  conn->add_option("p1", p1_path, "P1 JSON")->required()->check(CLI::ExistingFile);
  conn->add_option("q", q_path, "Q JSON")->required()->check(CLI::ExistingFile);
  conn->add_option("--i0", i0_text, "embedding Q -> P0 as q:p pairs")->required();
  conn->add_option("--i1", i1_text, "embedding Q -> P1 as q:p pairs")->required();
  conn->add_flag("--closed-form", closed_form, "also emit both Möbius tables and their difference");

  // double
  std::string sign_text, lift_text;
  auto* dbl = app.add_subcommand("double", "double of a layered poset");
  dbl->add_option("input", input, "poset JSON")->required()->check(CLI::ExistingFile);
  dbl->add_option("--sign", sign_text, "sign of each element, e.g. -1,-1,1,1")->required();
  dbl->add_option("--lift", lift_text, "lift on the lower layer as a:b pairs")->required();

  // complex
  std::vector<std::string> open_ends;
  auto* cplx = app.add_subcommand("complex", "f-vector and Euler characteristic of a nerve");
  cplx->add_option("--input", input, "poset JSON")->required()->check(CLI::ExistingFile);
  cplx->add_option("--open-interval", open_ends, "restrict to the open interval (x, y)")->expected(2);

  // verify
  std::string suite = "all";
  VerifyOptions vopts;
  bool verify_json = false;
  auto* verify = app.add_subcommand("verify", "run the invariant suites");
  verify->add_option("--suite", suite, "suite name")
      ->check(CLI::IsMember({"mobius", "lattice", "surgery", "double", "topology", "all"}));
  verify->add_option("--max-n", vopts.max_n, "largest n for the L_n suites")->check(CLI::Range(1U, 10U));
  verify->add_option("--seed", vopts.seed, "seed for the surgery suite");
  verify->add_option("--instances", vopts.surgery_instances, "random instances for the surgery suite");
  verify->add_flag("--json", verify_json, "emit the reports as JSON");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (*hasse) {
      const FinitePoset p = ln::build_ln(n);
      if (as_dot) {
        out << to_dot(p);
      } else if (as_json) {
        out << to_json(p).dump(2) << '\n';
      } else {
        for (const auto& [x, y] : cover_pairs(p)) out << p.label(x) << '\t' << p.label(y) << '\n';
      }
    } else if (*ln_mobius) {
      if (from_opt->count() > 0) {
        const LnElement s = LnElement::parse(n, from_text);
        const LnElement t = LnElement::parse(n, to_text);
        out << "x\ty\tmu\n" << s.to_string() << '\t' << t.to_string() << '\t' << ln::mobius_closed(s, t) << '\n';
      } else {
        if (n > ln::kDefaultExplicitCap)
          throw CapExceeded("listing every pair needs n <= " + std::to_string(ln::kDefaultExplicitCap));
        auto elems = ln::all_elements(n);
        std::stable_sort(elems.begin(), elems.end(),
                         [](const LnElement& a, const LnElement& b) { return ln::rho(a) < ln::rho(b); });
        out << "x\ty\tmu\n";
        for (const LnElement& s : elems)
          for (const LnElement& t : ln::all_elements(n))
            if (ln::leq(s, t)) out << s.to_string() << '\t' << t.to_string() << '\t' << ln::mobius_closed(s, t) << '\n';
      }
    } else if (*ln_interval_cmd) {
      const FinitePoset p = ln_interval(LnElement::parse(n, from_text), LnElement::parse(n, to_text), open);
      out << (as_dot ? to_dot(p) : to_json(p).dump(2) + "\n");
    } else if (*slides) {
      for (const LnElement& s : ln::elementary_left_slides(LnElement::parse(n, set_text))) out << s.to_string() << '\n';
    } else if (*joinmeet) {
      const LnElement s = LnElement::parse(n, s_text);
      const LnElement t = LnElement::parse(n, t_text);
      out << "join=" << ln::join(s, t).to_string() << " meet=" << ln::meet(s, t).to_string() << '\n';
    } else if (*mobius_cmd) {
      const FinitePoset p = read_poset_file(input);
      write_mobius_tsv(out, p, mobius_by_inversion(p));
    } else if (*conn) {
      const FinitePoset p0 = read_poset_file(p0_path);
      const FinitePoset p1 = read_poset_file(p1_path);
      EmbeddedSubposet e{read_poset_file(q_path), {}, {}};
      e.i0 = parse_map(i0_text, e.q.size());
      e.i1 = parse_map(i1_text, e.q.size());
      const ConnectSum glued = connect_sum(p0, p1, e);
      nlohmann::json doc{{"poset", to_json(glued.poset)}, {"offset", glued.offset}};
      if (closed_form) {
        const MobiusTable block = mobius_conn_sum(p0, p1, e);
        doc["mobius_block"] = mobius_triples(glued.poset, block);
        try {
          const MobiusTable closed = mobius_cross_closed_form(p0, p1, e);
          doc["mobius_closed_form"] = mobius_triples(glued.poset, closed);
          nlohmann::json diff = nlohmann::json::array();
          for (Element x = 0; x < glued.poset.size(); ++x)
            for (Element y = 0; y < glued.poset.size(); ++y)
              if (block(x, y) != closed(x, y)) diff.push_back({x, y, block(x, y), closed(x, y)});
          doc["diff"] = diff;
        } catch (const MConditionFailed& e) {
          doc["mobius_closed_form"] = nullptr;
          doc["closed_form_error"] = {{"message", e.what()}, {"witness", e.witness}};
        }
      }
      out << doc.dump(2) << '\n';
    } else if (*dbl) {
      const FinitePoset p = read_poset_file(input);
      LayerStructure layer;
      for (const std::string& token : split(sign_text, ',')) {
        if (token != "1" && token != "+1" && token != "-1") throw InvalidArgument("signs must be -1 or 1");
        layer.sign.push_back(token == "-1" ? -1 : 1);
      }
      for (const auto& [a, b] : parse_pairs(lift_text)) layer.lift.emplace(a, b);
      const LayeredDouble d = double_poset(p, layer);
      nlohmann::json lift = nlohmann::json::array();
      for (const auto& [a, b] : d.layer.lift) lift.push_back({a, b});
      out << nlohmann::json{{"poset", to_json(d.poset)}, {"layer", {{"sign", d.layer.sign}, {"lift", lift}}}}.dump(2)
          << '\n';
    } else if (*cplx) {
      FinitePoset p = read_poset_file(input);
      if (!open_ends.empty()) {
        const Element x = resolve_element(p, open_ends[0]);
        const Element y = resolve_element(p, open_ends[1]);
        p = interval(p, x, y, /*open=*/true).poset;
      }
      std::vector<std::int64_t> f;
      try {
        f = f_vector(nerve(p));
      } catch (const FaceLimitExceeded&) {
        f = nerve_f_vector(p);
      }
      out << "key\tvalue\n";
      for (std::size_t i = 0; i < f.size(); ++i) out << 'f' << i << '\t' << f[i] << '\n';
      out << "chi\t" << euler_characteristic(f) << '\n';
    } else if (*verify) {
      const auto reports = run_verification(suite, vopts);
      bool ok = true;
      if (verify_json) {
        nlohmann::json doc = nlohmann::json::array();
        for (const auto& r : reports) doc.push_back(to_json(r));
        out << (reports.size() == 1 ? doc[0] : doc).dump(2) << '\n';
      }
      for (const auto& r : reports) {
        if (!verify_json) write_report(out, err, r);
        ok = ok && r.ok();
      }
      return ok ? kExitOk : kExitVerifyFailed;
    }
  } catch (const Overflow& e) {
    err << "error: " << e.what() << '\n';
    return kExitOverflow;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitOk;
}

}  // namespace lnposet
