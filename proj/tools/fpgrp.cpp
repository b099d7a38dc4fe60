// fpgrp: command-line front end.
//
//   fpgrp [--json] [--time-limit S] [--max-cosets N] [--max-elements N]
//         [--seed N] VERB [args]
//
// Inputs are presentation files (text or JSON), "-" for standard input, or
// "catalog:NAME[:p1,p2,...]". Exit codes: 0 OK, 1 NEGATIVE, 2 EXHAUSTED,
// 3 ERROR.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <iomanip>
#include <iterator>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fpgrp.hpp"
#include "json.hpp"

using nlohmann::json;
using namespace fpgrp;

namespace {

  enum class Outcome { ok = 0, negative = 1, exhausted = 2, error = 3 };

  char const* outcome_name(Outcome o) {
    switch (o) {
      case Outcome::ok: return "OK";
      case Outcome::negative: return "NEGATIVE";
      case Outcome::exhausted: return "EXHAUSTED";
      default: return "ERROR";
    }
  }

  std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
      h ^= c;
      h *= 0x100000001b3ULL;
    }
    return h;
  }

  std::string hex64(std::uint64_t x) {
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << x;
    return os.str();
  }

  struct Run {
    std::string verb;
    json        inputs     = json::array();
    json        parameters = json::object();
    json        payload    = json::object();
    std::string text;  // human-readable output
    Outcome     outcome = Outcome::ok;
  };

  struct Globals {
    bool        json_out = false;
    double      time_limit   = 60.0;
    std::size_t max_cosets   = 100000;
    std::size_t max_elements = 100000;
    std::uint64_t seed       = 1;

    Budget budget() const {
      return Budget{max_cosets, max_elements, time_limit};
    }
  };

  std::string read_source(std::string const& path) {
    if (path == "-") {
      return std::string(std::istreambuf_iterator<char>(std::cin), {});
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      throw DomainError("cannot open '" + path + "'");
    }
    return std::string(std::istreambuf_iterator<char>(in), {});
  }

  std::vector<long long> parse_params(std::string const& s) {
    std::vector<long long> out;
    std::stringstream      ss(s);
    std::string            item;
    while (std::getline(ss, item, ',')) {
      try {
        out.push_back(std::stoll(item));
      } catch (std::exception const&) {
        throw DomainError("bad catalog parameter '" + item + "'");
      }
    }
    return out;
  }

  Presentation load_input(Run& run, std::string const& path) {
    std::vector<std::string> warnings;
    Presentation             p;
    std::string              digest_source;
    if (path.rfind("catalog:", 0) == 0) {
      auto const rest  = path.substr(8);
      auto const colon = rest.find(':');
      auto const name  = rest.substr(0, colon);
      auto const params
          = colon == std::string::npos ? std::vector<long long>{}
                                       : parse_params(rest.substr(colon + 1));
      p             = catalog(name, params).presentation;
      digest_source = to_string(p);
    } else {
      digest_source = read_source(path);
      p             = load_presentation(digest_source, &warnings);
    }
    for (auto const& w : warnings) {
      std::cerr << path << ": warning: " << w << '\n';
    }
    run.inputs.push_back({{"path", path}, {"fnv1a64", hex64(fnv1a64(digest_source))}});
    return p;
  }

  void write_file(std::string const& path, std::string const& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
      throw DomainError("cannot write '" + path + "'");
    }
    out << text;
  }

  std::vector<Word> parse_words(std::vector<std::string> const& texts,
                                Alphabet const&                 a) {
    std::vector<Word> out;
    for (auto const& t : texts) {
      out.push_back(parse_word(t, a));
    }
    return out;
  }

  json words_json(std::vector<Word> const& ws, Alphabet const& a) {
    json j = json::array();
    for (auto const& w : ws) {
      j.push_back(format_word(w, a));
    }
    return j;
  }

  json pair_words_json(std::vector<PairWord> const& ws, Alphabet const& a) {
    json j = json::array();
    for (auto const& w : ws) {
      j.push_back({format_word(w.left, a), format_word(w.right, a)});
    }
    return j;
  }

  std::string invariants_line(std::string const& label, AbelianInvariants const& inv) {
    return label + ": " + inv.to_string() + "\n";
  }

  PermGroup target_group(std::string const& name, std::vector<std::string> const& gens,
                         std::size_t degree) {
    if (!gens.empty()) {
      if (degree == 0) {
        throw DomainError("--gen needs --degree");
      }
      std::vector<Perm> ps;
      for (auto const& g : gens) {
        ps.push_back(Perm::from_cycles(g, degree));
      }
      return PermGroup(degree, std::move(ps), name.empty() ? "custom" : name);
    }
    if (name.empty()) {
      throw DomainError("a target group is required (--target or --gen)");
    }
    return named_perm_group(name);
  }

  json hom_json(GroupHom const& h) {
    json imgs = json::array();
    for (auto const& p : h.images) {
      imgs.push_back(p.to_cycles());
    }
    return imgs;
  }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finitely presented groups toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_flag("--json", g.json_out, "Emit a JSON run report on stdout");
  app.add_option("--time-limit", g.time_limit, "Seconds per budgeted operation");
  app.add_option("--max-cosets", g.max_cosets, "Live coset cap");
  app.add_option("--max-elements", g.max_elements, "Permutation group element cap");
  app.add_option("--seed", g.seed, "Seed for randomized drivers");

  Run                                      run;
  std::map<std::string, std::function<void()>> actions;

  auto verb = [&](std::string const& name, std::string const& desc) {
    return app.add_subcommand(name, desc);
  };

  // parse
  std::string input, input2, output;
  {
    auto* c = verb("parse", "Parse and normalize a presentation");
    c->add_option("input", input)->required();
    actions["parse"] = [&] {
      auto p              = load_input(run, input);
      run.payload         = to_json(p);
      run.payload["total_length"] = p.total_length();
      run.text            = to_string(p) + "\n";
    };
  }

  // abelianize
  {
    auto* c = verb("abelianize", "Abelian invariants of the group");
    c->add_option("input", input)->required();
    actions["abelianize"] = [&] {
      auto p      = load_input(run, input);
      auto inv    = abelianization(p);
      run.payload = {{"invariants", to_json(inv)}, {"perfect", inv.is_trivial()}};
      run.text    = invariants_line("H1", inv);
    };
  }

  // sc-check
  std::size_t m = 6;
  {
    auto* c = verb("sc-check", "Check the metric small cancellation condition C'(1/m)");
    c->add_option("--m", m, "Cancellation parameter")->default_val(6);
    c->add_option("input", input)->required();
    actions["sc-check"] = [&] {
      auto p = load_input(run, input);
      run.parameters["m"] = m;
      auto r              = check_metric(p, m);
      run.payload         = to_json(r, p);
      std::ostringstream os;
      os << "C'(1/" << m << "): " << (r.verdict ? "holds" : "fails") << '\n';
      if (r.first_failure) {
        auto const& rp = r.relators[*r.first_failure];
        os << "relator " << *r.first_failure + 1 << ": length " << rp.length
           << ", piece of length " << rp.max_piece;
        if (rp.witness) {
          os << " '" << format_word(rp.witness->piece, p.alphabet()) << "'";
        }
        os << '\n';
      }
      for (auto const& w : r.warnings) {
        std::cerr << "warning: " << w << '\n';
      }
      run.text    = os.str();
      run.outcome = r.verdict ? Outcome::ok : Outcome::negative;
    };
  }

  // dehn
  std::vector<std::string> words;
  std::size_t              samples = 0;
  {
    auto* c = verb("dehn", "Solve the word problem of a C'(1/6) presentation");
    c->add_option("--word", words, "Word to test (repeatable)");
    c->add_option("--random-conjugates", samples,
                  "Also test N random products of conjugates of relators");
    c->add_option("input", input)->required();
    actions["dehn"] = [&] {
      auto p = load_input(run, input);
      run.parameters["words"]             = words;
      run.parameters["random_conjugates"] = samples;
      DehnSolver const solver(p);
      json             results = json::array();
      std::ostringstream os;
      bool all_trivial = true;
      for (auto const& w : parse_words(words, p.alphabet())) {
        auto r = solver.solve(w);
        all_trivial = all_trivial && r.trivial;
        results.push_back({{"word", format_word(w, p.alphabet())},
                           {"trivial", r.trivial},
                           {"steps", r.trace.steps.size()},
                           {"final", format_word(r.trace.final_word, p.alphabet())}});
        os << format_word(w, p.alphabet()) << ": "
           << (r.trivial ? "trivial" : "nontrivial") << " (" << r.trace.steps.size()
           << " steps)\n";
      }
      run.payload["results"] = results;
      if (samples > 0) {
        if (p.num_relators() == 0) {
          throw DomainError("no relators to conjugate");
        }
        run.parameters["seed"] = g.seed;
        std::mt19937_64 rng(g.seed);
        std::size_t     ok = 0;
        for (std::size_t i = 0; i < samples; ++i) {
          Word w;
          auto const k = 1 + rng() % 5;
          for (std::size_t j = 0; j < k; ++j) {
            Word conj;
            for (auto len = rng() % 8; len > 0; --len) {
              conj.push_back(letter(rng() % p.num_generators(), rng() % 2 == 1));
            }
            Word r = p.relator(rng() % p.num_relators());
            if (rng() % 2 == 1) {
              r = inverse(r);
            }
            w = w * conj * r * inverse(conj);
          }
          ok += solver.solve(free_reduce(w)).trivial ? 1 : 0;
        }
        all_trivial = all_trivial && ok == samples;
        run.payload["random_conjugates"] = {{"tested", samples}, {"trivial", ok}};
        os << "random products of conjugates: " << ok << "/" << samples << " trivial\n";
      }
      run.text    = os.str();
      run.outcome = all_trivial ? Outcome::ok : Outcome::negative;
    };
  }

  // rips
  bool zero_exponent = false;
  std::size_t max_word_length = 4'000'000;
  {
    auto* c = verb("rips", "Rips construction satisfying C'(1/m)");
    c->add_option("--m", m, "Cancellation parameter (>= 6)")->default_val(6);
    c->add_flag("--zero-exponent", zero_exponent,
                "Make every relator have exponent sum 0 in a_1 and a_2");
    c->add_option("--max-word-length", max_word_length, "Cap on scheme word length");
    c->add_option("-o,--output", output, "Write the presentation here");
    c->add_option("input", input)->required();
    actions["rips"] = [&] {
      auto q = load_input(run, input);
      run.parameters["m"]             = m;
      run.parameters["zero_exponent"] = zero_exponent;
      auto r = rips(q, m, zero_exponent, RipsOptions{max_word_length});
      auto const text = to_string(r.gamma) + "\n";
      run.payload = {{"generators", r.gamma.num_generators()},
                     {"relators", r.gamma.num_relators()},
                     {"total_length", r.gamma.total_length()},
                     {"normal_generators",
                      {r.gamma.alphabet().name(r.a1), r.gamma.alphabet().name(r.a2)}},
                     {"run_bound", r.run_bound},
                     {"target_length", r.target_length},
                     {"best_m", r.best_m}};
      if (!output.empty()) {
        write_file(output, text);
        run.payload["output"] = output;
        std::ostringstream os;
        os << r.gamma.num_generators() << " generators, " << r.gamma.num_relators()
           << " relators, total length " << r.gamma.total_length() << " -> " << output
           << '\n';
        run.text = os.str();
      } else {
        run.text = text;
      }
    };
  }

  // uce
  {
    auto* c = verb("uce", "Presentation of the universal central extension");
    c->add_option("-o,--output", output, "Write the presentation here");
    c->add_option("input", input)->required();
    actions["uce"] = [&] {
      auto g = load_input(run, input);
      auto u = uce(g);
      json wit = json::array();
      for (auto const& c : u.witnesses) {
        json row = json::array();
        for (auto const& x : c) {
          row.push_back(integer_json(x));
        }
        wit.push_back(row);
      }
      run.payload = {{"presentation", to_json(u.tilde)},
                     {"witnesses", wit},
                     {"commutator_relators", u.commutator_count},
                     {"expression_relators", u.expression_count}};
      auto const text = to_string(u.tilde) + "\n";
      if (!output.empty()) {
        write_file(output, text);
        run.text = std::to_string(u.tilde.num_relators()) + " relators -> " + output + "\n";
      } else {
        run.text = text;
      }
    };
  }

  // fibre
  std::vector<std::string> qrels;
  {
    auto* c = verb("fibre", "Generators of the fibre product for G -> G/<<R>>");
    c->add_option("--relator", qrels, "Extra relator presenting the quotient");
    c->add_option("input", input)->required();
    actions["fibre"] = [&] {
      auto g = load_input(run, input);
      run.parameters["relators"] = qrels;
      auto gens   = fibre_generators(g, parse_words(qrels, g.alphabet()));
      run.payload = {{"generators", pair_words_json(gens, g.alphabet())}};
      std::ostringstream os;
      for (auto const& pw : gens) {
        os << "(" << format_word(pw.left, g.alphabet()) << ", "
           << format_word(pw.right, g.alphabet()) << ")\n";
      }
      run.text = os.str();
    };
  }

  // pipeline
  std::size_t bound = 5;
  std::string outdir;
  bool        no_evidence = false;
  {
    auto* c = verb("pipeline", "Rips, universal central extension and product");
    c->add_option("--m", m, "Cancellation parameter (>= 6)")->default_val(6);
    c->add_option("--bound", bound, "Index bound for the evidence search")->default_val(5);
    c->add_flag("--no-evidence", no_evidence, "Skip the evidence report");
    c->add_option("--output-dir", outdir, "Write gamma.pres, tilde.pres, E.pres here");
    c->add_option("input", input)->required();
    actions["pipeline"] = [&] {
      auto q = load_input(run, input);
      run.parameters["m"]     = m;
      run.parameters["bound"] = bound;
      PipelineOptions opts;
      opts.index_bound   = bound;
      opts.with_evidence = !no_evidence;
      auto r = pipeline(q, m, g.budget(), opts);
      run.payload = {{"counts", to_json(r.counts)},
                     {"E_perfect", r.e_perfect},
                     {"P_generators", pair_words_json(r.P_generators, r.uce.tilde.alphabet())}};
      if (r.evidence) {
        run.payload["evidence"] = to_json(*r.evidence);
      }
      if (!outdir.empty()) {
        write_file(outdir + "/gamma.pres", to_string(r.rips.gamma) + "\n");
        write_file(outdir + "/tilde.pres", to_string(r.uce.tilde) + "\n");
        write_file(outdir + "/E.pres", to_string(r.E) + "\n");
      }
      auto const& c = r.counts;
      std::ostringstream os;
      os << "E: " << c.e_generators << " generators (expected " << c.expected_generators
         << "), " << c.e_relators << " relators (expected " << c.expected_relators
         << "), perfect: " << (r.e_perfect ? "yes" : "no") << '\n';
      for (auto const& pw : r.P_generators) {
        os << "(" << format_word(pw.left, r.uce.tilde.alphabet()) << ", "
           << format_word(pw.right, r.uce.tilde.alphabet()) << ")\n";
      }
      if (r.evidence) {
        os << "evidence: " << r.evidence->verdict << '\n';
      }
      run.text    = os.str();
      run.outcome = c.e_generators == c.expected_generators
                            && c.e_relators == c.expected_relators && r.e_perfect
                        ? Outcome::ok
                        : Outcome::negative;
    };
  }

  // evidence
  {
    auto* c = verb("evidence", "H1, low-index search and H2 for a quotient candidate");
    c->add_option("--bound", bound, "Index bound")->default_val(5);
    c->add_option("input", input)->required();
    actions["evidence"] = [&] {
      auto q = load_input(run, input);
      run.parameters["bound"] = bound;
      auto e      = grothendieck_evidence(q, bound, g.budget());
      run.payload = to_json(e);
      std::ostringstream os;
      os << invariants_line("H1", e.h1) << "H2: "
         << (e.h2 ? e.h2->to_string() : std::string("-")) << " (" << e.h2_status
         << ")\nproper subgroups of index <= " << bound << ": "
         << e.low_index.proper_subgroups()
         << (e.low_index.exhausted ? " (search exhausted)" : "") << "\nverdict: "
         << e.verdict << '\n';
      run.text    = os.str();
      run.outcome = e.verdict == kCriterionSatisfied ? Outcome::ok
                    : e.verdict == kInconclusive     ? Outcome::exhausted
                                                     : Outcome::negative;
    };
  }

  // tc
  std::vector<std::string> subgroup;
  bool                     with_table = false;
  {
    auto* c = verb("tc", "Coset enumeration");
    c->add_option("--subgroup", subgroup, "Subgroup generator (repeatable)");
    c->add_flag("--table", with_table, "Include the coset table");
    c->add_option("input", input)->required();
    actions["tc"] = [&] {
      auto p = load_input(run, input);
      run.parameters["subgroup"]   = subgroup;
      run.parameters["max_cosets"] = g.max_cosets;
      auto res = todd_coxeter(p, parse_words(subgroup, p.alphabet()), g.budget());
      if (auto* ex = std::get_if<Exhausted>(&res)) {
        run.payload = {{"reason", ex->reason},
                       {"live_cosets", ex->live_cosets},
                       {"defined_cosets", ex->defined_cosets}};
        run.text    = "exhausted: " + ex->reason + "\n";
        run.outcome = Outcome::exhausted;
        return;
      }
      auto const& t = std::get<CosetTable>(res);
      run.payload   = {{"index", t.size()}};
      if (with_table) {
        run.payload["table"] = to_json(t, p.alphabet());
      }
      run.text = "index " + std::to_string(t.size()) + "\n";
    };
  }

  // rs
  {
    auto* c = verb("rs", "Reidemeister-Schreier presentation of a subgroup");
    c->add_option("--subgroup", subgroup, "Subgroup generator (repeatable)");
    c->add_option("input", input)->required();
    actions["rs"] = [&] {
      auto p = load_input(run, input);
      run.parameters["subgroup"] = subgroup;
      auto res = todd_coxeter(p, parse_words(subgroup, p.alphabet()), g.budget());
      if (auto* ex = std::get_if<Exhausted>(&res)) {
        run.payload = {{"reason", ex->reason}};
        run.text    = "exhausted: " + ex->reason + "\n";
        run.outcome = Outcome::exhausted;
        return;
      }
      SchreierRewriter const rw(std::get<CosetTable>(res));
      auto                   h = rw.presentation(p);
      json                   sw = json::array();
      for (std::size_t i = 0; i < rw.num_schreier_generators(); ++i) {
        sw.push_back(format_word(rw.schreier_word(i), p.alphabet()));
      }
      run.payload = {{"index", rw.table().size()},
                     {"presentation", to_json(h)},
                     {"schreier_words", sw}};
      run.text = to_string(h) + "\n";
    };
  }

  // low-index
  {
    auto* c = verb("low-index", "Count subgroups of small index");
    c->add_option("--bound", bound, "Largest index")->default_val(5);
    c->add_option("input", input)->required();
    actions["low-index"] = [&] {
      auto p = load_input(run, input);
      run.parameters["bound"] = bound;
      auto f      = low_index(p, bound, g.budget());
      run.payload = to_json(f);
      std::ostringstream os;
      for (auto const& c : f.counts) {
        os << "index " << c.index << ": " << c.subgroups << " subgroups, " << c.classes
           << " classes" << (c.partial ? " (partial)" : "") << '\n';
      }
      run.text    = os.str();
      run.outcome = f.exhausted ? Outcome::exhausted : Outcome::ok;
    };
  }

  // fingerprint
  {
    auto* c = verb("fingerprint", "Compare low-index fingerprints of two presentations");
    c->add_option("--bound", bound, "Largest index")->default_val(5);
    c->add_option("first", input)->required();
    c->add_option("second", input2)->required();
    actions["fingerprint"] = [&] {
      auto p1 = load_input(run, input);
      auto p2 = load_input(run, input2);
      run.parameters["bound"] = bound;
      auto r      = fingerprint_compare(p1, p2, bound, g.budget());
      run.payload = {{"first", to_json(r.first)},
                     {"second", to_json(r.second)},
                     {"equal", r.equal},
                     {"exhausted", r.exhausted}};
      if (r.first_discrepancy) {
        run.payload["first_discrepancy"] = *r.first_discrepancy;
      }
      std::ostringstream os;
      for (std::size_t i = 0; i < r.first.counts.size(); ++i) {
        os << "index " << r.first.counts[i].index << ": " << r.first.counts[i].classes;
        if (i < r.second.counts.size()) {
          os << " vs " << r.second.counts[i].classes;
        }
        os << '\n';
      }
      os << (r.equal ? "equal" : "different") << '\n';
      run.text    = os.str();
      run.outcome = r.exhausted ? Outcome::exhausted
                    : r.equal   ? Outcome::ok
                                : Outcome::negative;
    };
  }

  // hom-search
  std::string              target;
  std::vector<std::string> tgens;
  std::size_t              degree  = 0;
  unsigned                 threads = 1;
  bool                     list    = false;
  {
    auto* c = verb("hom-search", "Enumerate homomorphisms to a permutation group");
    c->add_option("--target", target, "S<n>, A<n>, C<n>, D<n> or a transitive group name");
    c->add_option("--gen", tgens, "Target generator in cycle notation (repeatable)");
    c->add_option("--degree", degree, "Degree for --gen");
    c->add_option("--threads", threads, "Worker threads");
    c->add_flag("--list", list, "List the homomorphisms");
    c->add_option("input", input)->required();
    actions["hom-search"] = [&] {
      auto p  = load_input(run, input);
      auto tg = target_group(target, tgens, degree);
      run.parameters["target"] = tg.name();
      auto r = hom_search(p, tg, g.budget(), threads);
      run.payload = {{"target_order", tg.order(g.max_elements)},
                     {"homomorphisms", r.homs.size()},
                     {"nontrivial", r.nontrivial_count()},
                     {"epimorphisms", r.epi_count()},
                     {"exhausted", r.exhausted}};
      if (list) {
        json hs = json::array();
        for (std::size_t i = 0; i < r.homs.size(); ++i) {
          hs.push_back({{"images", hom_json(r.homs[i])}, {"epi", bool(r.epi[i])}});
        }
        run.payload["list"] = hs;
      }
      std::ostringstream os;
      os << r.homs.size() << " homomorphisms to " << tg.name() << ", "
         << r.nontrivial_count() << " nontrivial, " << r.epi_count() << " onto"
         << (r.exhausted ? " (search exhausted)" : "") << '\n';
      run.text    = os.str();
      run.outcome = r.exhausted ? Outcome::exhausted : Outcome::ok;
    };
  }

  // fibre-check
  {
    auto* c = verb("fibre-check",
                   "Check that the standard pairs generate the fibre product of a "
                   "finite G over G/<<R>>");
    c->add_option("--relator", qrels, "Extra relator presenting the quotient");
    c->add_option("input", input)->required();
    actions["fibre-check"] = [&] {
      auto gp = load_input(run, input);
      run.parameters["relators"] = qrels;
      auto const extra = parse_words(qrels, gp.alphabet());
      Presentation qp = gp;
      for (auto const& r : extra) {
        qp.add_relator(r);
      }
      auto rho = regular_representation(gp, g.budget());
      auto eta = regular_representation(qp, g.budget());
      if (!rho || !eta) {
        throw BudgetError("coset enumeration exhausted");
      }
      auto f    = fibre_product_finite(*rho, *eta, g.budget());
      auto gens = fibre_generators(gp, extra);
      bool ok   = check_generation(f, gens, *rho);
      run.payload = {{"group_order", f.group.size()},
                     {"quotient_order", f.quotient_order},
                     {"kernel_size", f.kernel_size},
                     {"fibre_product_order", f.size()},
                     {"generators", pair_words_json(gens, gp.alphabet())},
                     {"generated", ok}};
      std::ostringstream os;
      os << "|G| = " << f.group.size() << ", |Q| = " << f.quotient_order
         << ", |P| = " << f.size() << ", generated: " << (ok ? "yes" : "no") << '\n';
      run.text    = os.str();
      run.outcome = ok ? Outcome::ok : Outcome::negative;
    };
  }

  // schur
  {
    auto* c = verb("schur", "Schur multiplier of a finite group");
    c->add_option("input", input)->required();
    actions["schur"] = [&] {
      auto p      = load_input(run, input);
      auto r      = schur_multiplier(p, g.budget());
      run.payload = to_json(r);
      run.text = "order " + std::to_string(r.group_order) + "\n" + invariants_line("H2", r.h2);
    };
  }

  // l0-check
  std::vector<std::string> normal;
  {
    auto* c = verb("l0-check", "Compare N/[N,G] with H2(G/N) for a finite G");
    c->add_option("--normal", normal, "Normal subgroup generator (repeatable)");
    c->add_option("input", input)->required();
    actions["l0-check"] = [&] {
      auto gp = load_input(run, input);
      run.parameters["normal"] = normal;
      L0Instance inst{gp, parse_words(normal, gp.alphabet()), gp};
      for (auto const& w : inst.normal_gens) {
        inst.quotient.add_relator(w);
      }
      auto r      = lemma_l0_check(inst, g.budget());
      run.payload = to_json(r);
      std::ostringstream os;
      if (!r.hypotheses_met) {
        os << r.note << '\n';
        run.outcome = Outcome::negative;
      } else {
        os << "|G| = " << r.ambient_order << ", |N| = " << r.normal_order
           << ", |Q| = " << r.quotient_order << '\n'
           << invariants_line("N/[N,G]", *r.coinvariants)
           << invariants_line("H2(Q)", *r.h2_quotient)
           << (r.equal ? "equal" : "different") << '\n';
        run.outcome = r.equal ? Outcome::ok : Outcome::negative;
      }
      run.text = os.str();
    };
  }

  // h2-rank
  bool aspherical = false;
  {
    auto* c = verb("h2-rank", "Rank of H2 for an aspherical presentation of a perfect group");
    c->add_flag("--aspherical", aspherical, "Assert that the presentation is aspherical");
    c->add_option("input", input)->required();
    actions["h2-rank"] = [&] {
      auto p = load_input(run, input);
      run.parameters["aspherical"] = aspherical;
      auto r      = aspherical_h2_rank(p, aspherical);
      run.payload = {{"rank", r}};
      run.text    = "H2 = Z^" + std::to_string(r) + "\n";
    };
  }

  // baumslag-iso
  long long n = 25, unit = 6, k = 2;
  {
    auto* c = verb("baumslag-iso",
                   "Compare Z/n x| Z acting by unit with the same acting by unit^k");
    c->add_option("--n", n, "Prime power modulus")->default_val(25);
    c->add_option("--unit", unit, "Unit mod n")->default_val(6);
    c->add_option("--k", k, "Exponent")->default_val(2);
    actions["baumslag-iso"] = [&] {
      run.parameters = {{"n", n}, {"unit", unit}, {"k", k}};
      auto v         = baumslag_iso_test(n, unit, k);
      run.payload    = {{"isomorphic", v.isomorphic}, {"power", v.power}, {"inverse", v.inverse}};
      std::ostringstream os;
      os << unit << "^" << k << " = " << v.power << ", " << unit << "^-1 = " << v.inverse
         << " (mod " << n << "): " << (v.isomorphic ? "isomorphic" : "not isomorphic")
         << '\n';
      run.text    = os.str();
      run.outcome = v.isomorphic ? Outcome::ok : Outcome::negative;
    };
  }

  // catalog
  std::string              cname;
  std::vector<long long>   cparams;
  {
    auto* c = verb("catalog", "List the catalog or print one entry");
    c->add_option("name", cname);
    c->add_option("--param", cparams, "Parameter (repeatable)");
    actions["catalog"] = [&] {
      if (cname.empty()) {
        run.payload = {{"names", catalog_names()}};
        for (auto const& nm : catalog_names()) {
          run.text += nm + "\n";
        }
        return;
      }
      run.parameters = {{"name", cname}, {"params", cparams}};
      auto e         = catalog(cname, cparams);
      run.payload    = {{"presentation", to_json(e.presentation)}, {"notes", e.notes}};
      run.text       = to_string(e.presentation) + "\n";
    };
  }

  try {
    app.parse(argc, argv);
  } catch (CLI::CallForHelp const& e) {
    return app.exit(e);
  } catch (CLI::ParseError const& e) {
    app.exit(e);
    std::cerr << app.help();
    return static_cast<int>(Outcome::error);
  }

  auto const start = std::chrono::steady_clock::now();
  std::string error_message;
  for (auto* sub : app.get_subcommands()) {
    run.verb = sub->get_name();
  }
  try {
    actions.at(run.verb)();
  } catch (BudgetError const& e) {
    run.outcome   = Outcome::exhausted;
    error_message = e.what();
  } catch (ParseError const& e) {
    run.outcome   = Outcome::error;
    error_message = e.what();
  } catch (std::exception const& e) {
    run.outcome   = Outcome::error;
    error_message = e.what();
  }
  double const wall
      = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  if (!error_message.empty()) {
    std::cerr << "fpgrp " << run.verb << ": " << error_message << '\n';
    run.payload = {{"error", error_message}};
  }
  if (g.json_out) {
    json report = {{"verb", run.verb},
                   {"inputs", run.inputs},
                   {"parameters", run.parameters},
                   {"outcome", outcome_name(run.outcome)},
                   {"payload", run.payload},
                   {"wall_time", wall}};
    std::cout << report.dump() << '\n';
  } else {
    std::cout << run.text;
  }
  return static_cast<int>(run.outcome);
}
