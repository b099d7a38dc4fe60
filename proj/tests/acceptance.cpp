// One line per criterion: PASS/FAIL, a short name, and what was measured.

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>

#include "oracles.hpp"
#include "support.hpp"

using namespace fpgrp;
using fpgrp::test::pres;
using fpgrp::test::Rng;
namespace oracle = fpgrp::test::oracle;

namespace {

  struct Outcome {
    bool        pass = true;
    std::string detail;
  };

  // Records the first failed expectation with a message.
  class Check {
   public:
    void operator()(bool ok, std::string const& what) {
      if (!ok && pass_) {
        pass_  = false;
        first_ = what;
      }
    }

    Outcome done(std::string const& detail) const {
      return {pass_, pass_ ? detail : first_};
    }

   private:
    bool        pass_ = true;
    std::string first_;
  };

  std::optional<std::size_t> order_of(Presentation const& p, Budget const& b = {}) {
    auto r = todd_coxeter(p, {}, b);
    if (auto const* t = std::get_if<CosetTable>(&r)) {
      return t->size();
    }
    return std::nullopt;
  }

  double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }

  std::string str(AbelianInvariants const& a) {
    return a.is_trivial() ? "trivial" : a.to_string();
  }

  // 1
  Outcome uce_order() {
    Check      c;
    auto const a5 = catalog("A5", {}).presentation;
    auto const u  = uce(a5);
    c(u.tilde.num_relators() == 8, "uce(A5) has " + std::to_string(u.tilde.num_relators())
                                       + " relators");
    auto const t0 = std::chrono::steady_clock::now();
    auto const n  = order_of(u.tilde, Budget{100'000, 100'000, 60});
    c(n == 120u, "coset enumeration of uce(A5) did not give 120");
    c(seconds_since(t0) <= 60, "coset enumeration took over 60 s");
    auto const s = schur_multiplier(a5);
    c(s.h2.torsion == std::vector<Integer>{2}, "H_2(A5) = " + str(s.h2));
    c(n && Integer(*n) == s.h2.torsion_order() * 60, "120 != |H_2| 60");
    return c.done("8 relators, 120 cosets, H_2(A5) = Z/2");
  }

  // 2
  Outcome rips_suite() {
    Check      c;
    auto const t0 = std::chrono::steady_clock::now();
    std::vector<std::pair<std::string, Presentation>> inputs{
        {"A5", catalog("A5", {}).presentation},
        {"B2", catalog("Bp", {2}).presentation},
        {"<x|x>", pres("< x | x >")},
        {"free2", catalog("free", {2}).presentation}};
    std::size_t runs = 0;
    for (auto const& [name, q] : inputs) {
      bool const perfect = is_perfect(q);
      auto const h1      = abelianization(q);
      for (std::size_t m : {6, 7, 12}) {
        for (bool zero : {false, true}) {
          auto const  r   = rips(q, m, zero);
          auto const  tag = name + " m=" + std::to_string(m) + (zero ? " zero" : "");
          c(r.gamma.num_relators() == q.num_relators() + 4 * q.num_generators(),
            tag + ": relator count");
          c(check_metric(r.gamma, m).verdict, tag + ": fails C'(1/m)");
          if (perfect) {
            c(is_perfect(r.gamma), tag + ": not perfect");
          }
          if (zero) {
            c(abelianization(r.gamma) == h1, tag + ": abelianization differs");
          }
          ++runs;
        }
      }
    }
    auto const secs = seconds_since(t0);
    c(secs <= 300, "took " + std::to_string(secs) + " s");
    std::ostringstream os;
    os << runs << " outputs checked in " << static_cast<int>(secs) << " s";
    return c.done(os.str());
  }

  // 3
  Outcome schur_suite() {
    Check c;
    struct Case {
      std::string          name, text;
      std::vector<Integer> h2;
    };
    std::vector<Case> cases{{"A5", "< a, b | a^2, b^3, (a b)^5 >", {2}},
                            {"Z/5", "< a | a^5 >", {}},
                            {"V4", "< a, b | a^2, b^2, [a, b] >", {2}}};
    for (auto const& k : cases) {
      auto const t0 = std::chrono::steady_clock::now();
      auto const s  = schur_multiplier(pres(k.text));
      c(s.h2.is_finite() && s.h2.torsion == k.h2, k.name + ": H_2 = " + str(s.h2));
      c(seconds_since(t0) <= 60, k.name + ": over 60 s");
    }
    auto const a5 = pres(cases[0].text);
    c(order_of(uce(a5).tilde) == 120u, "covering group order is not 2 * 60");
    return c.done("A5 Z/2, Z/5 trivial, V4 Z/2; A5 matches the covering group order");
  }

  // 4
  Outcome l0_instance() {
    Check        c;
    auto const   t = uce(catalog("A5", {}).presentation).tilde;
    Presentation q = t;
    q.add_relator(t.word("a^2"));
    auto const r = lemma_l0_check({t, {t.word("a^2")}, q});
    c(r.hypotheses_met, r.note);
    c(r.normal_order == 2, "|N| = " + std::to_string(r.normal_order));
    c(r.quotient_order == 60, "|Q| = " + std::to_string(r.quotient_order));
    c(r.coinvariants && r.coinvariants->torsion == std::vector<Integer>{2},
      "N/[N,G] is not Z/2");
    c(r.h2_quotient && r.h2_quotient->torsion == std::vector<Integer>{2},
      "H_2(Q) is not Z/2");
    c(r.equal, "N/[N,G] and H_2(Q) differ");
    return c.done("N/[N,G] = H_2(A5) = Z/2");
  }

  // 5
  Outcome fibre_generation() {
    Check c;
    {
      auto const g   = pres("< x | x^6 >");
      auto const rho = regular_representation(g);
      auto const eta = regular_representation(pres("< x | x^6, x^3 >"));
      auto const t0  = std::chrono::steady_clock::now();
      auto const f   = fibre_product_finite(*rho, *eta);
      c(f.size() == 12, "Z/6 -> Z/3: |P| = " + std::to_string(f.size()));
      c(check_generation(f, fibre_generators(g, {g.word("x^3")}), *rho),
        "Z/6 -> Z/3: generators do not generate P");
      c(seconds_since(t0) <= 60, "Z/6 -> Z/3: over 60 s");
    }
    {
      auto const a5  = catalog("A5", {}).presentation;
      auto const t   = uce(a5).tilde;
      auto const rho = regular_representation(t);
      auto const eta = regular_representation(a5);
      c(rho && rho->degree == 120, "SL(2,5) regular representation");
      auto const t0 = std::chrono::steady_clock::now();
      auto const f  = fibre_product_finite(*rho, *eta);
      c(f.size() == 240, "SL(2,5) -> A5: |P| = " + std::to_string(f.size()));
      c(f.kernel_size == 2, "SL(2,5) -> A5: kernel order");
      c(check_generation(f, fibre_generators(t, a5.relators()), *rho),
        "SL(2,5) -> A5: generators do not generate P");
      c(seconds_since(t0) <= 60, "SL(2,5) -> A5: over 60 s");
    }
    return c.done("|P| = 12 and |P| = 240, both generated");
  }

  // 6
  Outcome baumslag_pair() {
    Check      c;
    auto const t0 = std::chrono::steady_clock::now();
    auto const f  = fingerprint_compare(catalog("baumslag25", {1}).presentation,
                                        catalog("baumslag25", {2}).presentation, 10,
                                        Budget{100'000, 100'000, 600});
    c(!f.exhausted, "fingerprint search exhausted its budget");
    c(f.equal, "fingerprints differ at index "
                   + std::to_string(f.first_discrepancy.value_or(0)));
    c(seconds_since(t0) <= 600, "fingerprints took over 10 min");
    auto const v = baumslag_iso_test(25, 6, 2);
    c(!v.isomorphic && v.power == 11 && v.inverse == 21, "iso test");
    return c.done("fingerprints equal to index 10; 6^2 = 11, not in {6, 21} mod 25");
  }

  // 7
  Outcome b2_vacancy() {
    Check      c;
    auto const b2 = catalog("Bp", {2}).presentation;
    auto const t0 = std::chrono::steady_clock::now();
    auto const f  = low_index(b2, 5, Budget{100'000, 100'000, 600});
    c(!f.exhausted, "low-index search exhausted");
    c(f.proper_subgroups() == 0,
      std::to_string(f.proper_subgroups()) + " subgroups of index 2..5");
    c(seconds_since(t0) <= 600, "low-index search over 10 min");
    std::size_t targets = 0;
    for (auto const& g : transitive_groups(5)) {
      auto const h = hom_search(b2, g);
      c(!h.exhausted && h.nontrivial_count() == 0,
        "nontrivial map to a group of order " + std::to_string(g.order()));
      ++targets;
    }
    return c.done("no subgroups of index 2..5; only trivial maps to "
                  + std::to_string(targets) + " transitive groups");
  }

  // 8
  Outcome dehn_on_rips() {
    Check      c;
    auto const q = catalog("A5", {}).presentation;
    Rng        rng(2024);
    std::size_t trivial = 0, nontrivial = 0;
    for (bool zero : {false, true}) {
      auto const       r = rips(q, 12, zero);
      DehnSolver const solver(r.gamma);
      std::vector<Perm> images{Perm::from_cycles("(1 2)(3 4)", 5),
                               Perm::from_cycles("(1 3 5)", 5), Perm(5), Perm(5)};
      auto const ng = r.gamma.num_generators();
      for (int i = 0; i < 200; ++i) {
        auto const w = test::random_consequence(rng, r.gamma, test::uniform(rng, 1, 5), 6);
        bool const ok = solver.solve(w).trivial;
        c(ok, "a product of conjugates of relators was not reduced to 1");
        trivial += ok;
      }
      for (int found = 0; found < 200;) {
        auto const w = test::random_reduced_word(rng, ng, 24);
        if (evaluate(w, images, 5).is_identity()) {
          continue;
        }
        ++found;
        bool const ok = !solver.solve(w).trivial;
        c(ok, "a word with nontrivial image in A5 was reported trivial");
        nontrivial += ok;
      }
    }
    return c.done(std::to_string(trivial) + " consequences trivial, "
                  + std::to_string(nontrivial) + " words nontrivial (m = 12, both modes)");
  }

  // 9
  Outcome pipeline_counts() {
    Check                          c;
    std::optional<PipelineCounts>  first;
    PipelineOptions                opts;
    opts.with_evidence = false;
    for (int n : {5, 7, 11, 13, 17}) {
      auto const q = catalog("triangle", {2, 3, n}).presentation;
      auto const r = pipeline(q, 7, {}, opts);
      auto const tag = "triangle(2,3," + std::to_string(n) + ")";
      auto const& k  = r.counts;
      c(k.e_generators == k.expected_generators, tag + ": generator count");
      c(k.e_relators == k.expected_relators, tag + ": relator count");
      c(r.e_perfect, tag + ": E not perfect");
      if (!first) {
        first = k;
      } else {
        c(k.gamma_relators == first->gamma_relators && k.tilde_relators == first->tilde_relators
              && k.e_generators == first->e_generators && k.e_relators == first->e_relators,
          tag + ": counts vary across the family");
      }
    }
    return c.done("E has " + std::to_string(first->e_generators) + " generators and "
                  + std::to_string(first->e_relators)
                  + " relators for all five; all perfect");
  }

  // 10
  Outcome epi_counts() {
    Check c;
    struct Case {
      std::string text;
      PermGroup   target;
    };
    std::vector<Case> cases{
        {"< a | a^2 >", cyclic_group(2)},
        {"< a | >", cyclic_group(3)},
        {"< a, b | a^2, b^3, (a b)^5 >", alternating_group(5)},
        {"< a, b | a^2, b^3, (a b)^4 >", symmetric_group(3)},
        {"< a | a^6 >", cyclic_group(3)},
        {"< a, b | a^2, b^2, [a, b] >", cyclic_group(2)},
        {"< a, b | a^4, a^2 b^-2, b^-1 a b a >", named_perm_group("V4")},
        {"< a, b | >", symmetric_group(3)},
        {"< a, b | a^5, b^2, (a b)^2 >", cyclic_group(2)},
        {"< a, b | a^2, b^3, (a b)^3 >", cyclic_group(3)}};
    for (auto const& k : cases) {
      auto const p = pres(k.text);
      auto const r = epi_count_product_check(p, k.target);
      c(r.e1 > 0 && r.asserted, k.text + ": e1 = 0");
      c(r.holds, k.text + ": e2 < 2 e1");
      c(r.e1 == oracle::epi_count(p, k.target), k.text + ": e1 differs from brute force");
      c(r.e2 == oracle::epi_count_square(p, k.target), k.text + ": e2 differs from brute force");
    }
    return c.done(std::to_string(cases.size())
                  + " fixtures, e2 >= 2 e1, counts match brute force");
  }

  // 11
  Outcome exact_algebra() {
    Check c;
    Rng   rng(4242);
    for (int i = 0; i < 1000; ++i) {
      auto const a = test::random_matrix(rng, test::uniform(rng, 1, 8), test::uniform(rng, 1, 8), 20);
      auto const r = smith_normal_form(a);
      c(r.U * a * r.V == r.S && oracle::is_diagonal(r.S), "U A V != S");
      auto const d = r.diagonal();
      for (std::size_t k = 0; k + 1 < d.size(); ++k) {
        c(d[k] >= 0 && (d[k] == 0 ? d[k + 1] == 0 : d[k + 1] % d[k] == 0),
          "divisibility chain broken");
      }
      auto const du = oracle::bareiss_det(r.U), dv = oracle::bareiss_det(r.V);
      c((du == 1 || du == -1) && (dv == 1 || dv == -1), "U or V not unimodular");
    }
    std::size_t minors = 0;
    for (int i = 0; i < 500; ++i) {
      auto const a = test::random_matrix(rng, test::uniform(rng, 1, 4), test::uniform(rng, 1, 4), 6);
      c(smith_normal_form(a).diagonal() == oracle::oracle_factors(a),
        "invariant factors differ from the gcd-of-minors oracle");
      ++minors;
    }
    std::size_t certs = 0;
    for (int i = 0; i < 500; ++i) {
      auto const k = test::uniform(rng, 1, 5), n = test::uniform(rng, 1, 5);
      auto const b = test::random_matrix(rng, k, n, 8);
      std::vector<Integer> coeff(k), u(n);
      for (auto& x : coeff) {
        x = test::uniform_signed(rng, -5, 5);
      }
      for (auto& x : u) {
        x = test::uniform_signed(rng, -8, 8);
      }
      auto const t  = coeff * b;
      auto const ct = lattice_solve(t, b);
      c(ct && *ct * b == t, "lattice member without a valid certificate");
      if (auto const cu = lattice_solve(u, b)) {
        c(*cu * b == u, "certificate does not re-multiply");
      }
      ++certs;
    }
    return c.done("1000 SNF re-verifications, " + std::to_string(minors)
                  + " minor-oracle matches, " + std::to_string(certs)
                  + " lattice_solve rounds");
  }

}  // namespace

int main() {
  std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"uce-order-oracle", uce_order},
      {"rips-contract-suite", rips_suite},
      {"schur-suite", schur_suite},
      {"l0-instance", l0_instance},
      {"fibre-generation", fibre_generation},
      {"baumslag-pair", baumslag_pair},
      {"b2-finite-quotients", b2_vacancy},
      {"dehn-on-rips", dehn_on_rips},
      {"pipeline-counts", pipeline_counts},
      {"epi-count-inequality", epi_counts},
      {"exact-algebra", exact_algebra}};
  int failures = 0;
  int index    = 0;
  for (auto const& [name, run] : criteria) {
    ++index;
    auto const t0 = std::chrono::steady_clock::now();
    Outcome    o;
    try {
      o = run();
    } catch (std::exception const& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += o.pass ? 0 : 1;
    std::printf("%s %2d %-22s %6.1fs  %s\n", o.pass ? "PASS" : "FAIL", index, name.c_str(),
                seconds_since(t0), o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", index - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
