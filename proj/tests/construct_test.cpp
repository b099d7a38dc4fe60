#include <set>

#include <catch_amalgamated.hpp>

#include "support.hpp"

using namespace fpgrp;
using fpgrp::test::pres;
using fpgrp::test::Rng;

namespace {

  std::vector<Presentation> rips_inputs() {
    return {catalog("A5", {}).presentation, pres("< x | x >"), pres("< a, b | >")};
  }

  // Relator shapes: r u_r first, then x^e a_i x^-e v; u and v positive in a_i
  // (or sigma0 images of positive words when zero_exponent is set).
  void check_shape(Presentation const& q, RipsResult const& r) {
    auto const& g  = r.gamma;
    auto const  nr = q.num_relators();
    REQUIRE(g.num_generators() == q.num_generators() + 2);
    REQUIRE(g.num_relators() == nr + 4 * q.num_generators());
    for (std::size_t i = 0; i < g.num_relators(); ++i) {
      auto const image = substitute(g.relator(i), r.quotient_map);
      if (i < nr) {
        CHECK(image == free_reduce(q.relator(i)));
      } else {
        CHECK(image.empty());
      }
      auto const e1 = exponent_sum(g.relator(i), r.a1);
      auto const e2 = exponent_sum(g.relator(i), r.a2);
      if (r.zero_exponent) {
        auto const k = i < nr ? -1 : static_cast<long long>((i - nr) / 2 % 2);
        CHECK(e1 == (k == 0 ? 1 : 0));
        CHECK(e2 == (k == 1 ? 1 : 0));
      } else {
        CHECK(e1 > 0);
        CHECK(e2 > 0);
      }
    }
  }

}  // namespace

TEST_CASE("run circuit uses every run pair once") {
  for (std::size_t s : {2, 3, 5, 8}) {
    auto const c = detail::run_circuit(s);
    REQUIRE(c.size() == 2 * s * s);
    CHECK(c.front() == 0);
    std::set<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t i = 0; i < c.size(); ++i) {
      auto const u = c[i], v = c[(i + 1) % c.size()];
      CHECK((u < s) != (v < s));
      edges.insert({u, v});
    }
    CHECK(edges.size() == c.size());
  }
}

TEST_CASE("Rips base words") {
  auto const w = detail::rips_words(3, 20, 4, 0, 1);
  REQUIRE(w);
  CHECK(w->size() == 3);
  for (auto const& x : *w) {
    CHECK(x.size() >= 20);
    CHECK(x.front() == letter(0));
    CHECK(x.back() == letter(1));
    for (auto l : x) {
      CHECK(l > 0);
    }
  }
  CHECK_FALSE(detail::rips_words(100, 20, 4, 0, 1));
}

TEST_CASE("Rips construction examples") {
  for (auto const& q : rips_inputs()) {
    for (std::size_t m : {6, 7}) {
      for (bool zero : {false, true}) {
        auto const r = rips(q, m, zero);
        check_shape(q, r);
        CHECK(check_metric(r.gamma, m).verdict);
        CHECK(r.best_m >= m);
        if (zero) {
          CHECK(is_perfect(r.gamma) == is_perfect(q));
        }
      }
    }
  }
}

TEST_CASE("Rips generators avoid input names") {
  auto const q = pres("< a_1, a_2, x | x a_1 a_2 >");
  auto const r = rips(q, 6, false);
  CHECK(r.gamma.alphabet().name(r.a1) == "aa_1");
  CHECK(r.gamma.alphabet().name(r.a2) == "aa_2");
}

TEST_CASE("Rips construction is deterministic") {
  auto const q = catalog("A5", {}).presentation;
  CHECK(rips(q, 6, true).gamma.relators() == rips(q, 6, true).gamma.relators());
}

TEST_CASE("Rips construction errors") {
  auto const q = catalog("A5", {}).presentation;
  CHECK_THROWS_AS(rips(q, 5, false), DomainError);
  CHECK_THROWS_AS(rips(catalog("free", {0}).presentation, 6, false), DomainError);
  CHECK_THROWS_AS(rips(q, 6, false, RipsOptions{100}), BudgetError);
}

TEST_CASE("Dehn's algorithm on Rips output") {
  auto const       q = catalog("A5", {}).presentation;
  auto const       r = rips(q, 7, false);
  DehnSolver const solver(r.gamma);
  Rng              rng(81);
  for (int i = 0; i < 30; ++i) {
    auto const w = test::random_consequence(rng, r.gamma, test::uniform(rng, 1, 3), 5);
    CHECK(solver.solve(w).trivial);
  }
  CHECK_FALSE(solver.solve(Word{letter(r.a1)}).trivial);
  CHECK_FALSE(solver.solve(Word{letter(r.a1), letter(r.a2)}).trivial);
}

TEST_CASE("universal central extension examples") {
  auto const a5 = uce(catalog("A5", {}).presentation);
  CHECK(a5.tilde.num_relators() == 8);
  CHECK(a5.commutator_count == 6);
  CHECK(a5.expression_count == 2);
  CHECK(uce(pres("< x | x >")).tilde.num_relators() == 2);
  auto const b2 = catalog("Bp", {2}).presentation;
  CHECK(uce(b2).tilde.num_relators()
        == b2.num_generators() * b2.num_relators() + b2.num_generators());
  CHECK(uce(b2).tilde.num_relators() == 20);
  CHECK_THROWS_AS(uce(pres("< a | a^5 >")), PreconditionError);
}

TEST_CASE("uce witnesses express each generator in the relator lattice") {
  std::vector<Presentation> ps{catalog("A5", {}).presentation,
                               catalog("Bp", {2}).presentation,
                               catalog("Bp", {3}).presentation,
                               catalog("triangle", {2, 3, 7}).presentation,
                               pres("< x | x >")};
  for (auto const& p : ps) {
    auto const u = uce(p);
    REQUIRE(u.witnesses.size() == p.num_generators());
    for (std::size_t a = 0; a < p.num_generators(); ++a) {
      for (std::size_t g = 0; g < p.num_generators(); ++g) {
        Integer sum = 0;
        for (std::size_t i = 0; i < p.num_relators(); ++i) {
          sum += u.witnesses[a][i] * exponent_sum(p.relator(i), g);
        }
        CHECK(sum == (a == g ? 1 : 0));
      }
      CHECK(abelianization(u.tilde).is_trivial());
    }
  }
}

TEST_CASE("fibre generators reject foreign letters") {
  auto const g = pres("< a | a^2 >");
  CHECK_THROWS_AS(fibre_generators(g, {Word{letter(3)}}), DomainError);
}

TEST_CASE("pipeline counts") {
  auto const q = catalog("A5", {}).presentation;
  auto const r = pipeline(q, 7);
  CHECK(r.counts.e_generators == r.counts.expected_generators);
  CHECK(r.counts.e_relators == r.counts.expected_relators);
  CHECK(r.counts.e_generators == 8);
  CHECK(r.counts.e_relators == 112);
  CHECK(r.e_perfect);
  CHECK(r.P_generators.size() == 2 + 2 + 3);
  REQUIRE(r.evidence);
  CHECK(r.evidence->verdict == kCriterionFails);
  CHECK_THROWS_AS(pipeline(pres("< a | a^3 >"), 7), PreconditionError);

  auto const j = to_json(r.counts);
  CHECK(j["e_relators"] == 112);
}

TEST_CASE("evidence verdicts") {
  auto const c5 = grothendieck_evidence(pres("< a | a^5 >"), 3);
  CHECK(c5.verdict == kCriterionFails);

  auto const one = grothendieck_evidence(pres("< x | x >"), 4);
  CHECK(one.verdict == kCriterionSatisfied);
  CHECK(one.h2_status == "computed");
  CHECK(one.order == 1u);

  auto const b2 = grothendieck_evidence(catalog("Bp", {2}).presentation, 4,
                                        Budget{2000, 100000, 60});
  CHECK_FALSE(b2.h2);
  CHECK(b2.h2_status.rfind("assumed", 0) == 0);
  CHECK(b2.verdict == kCriterionSatisfied);

  auto const cut = grothendieck_evidence(catalog("Bp", {2}).presentation, 8,
                                         Budget{2000, 100000, 1e-6});
  CHECK(cut.low_index.exhausted);
  CHECK(cut.verdict == kInconclusive);

  auto const slow = grothendieck_evidence(pres("< a, b, c | >"), 9,
                                          Budget{2000, 100000, 0.2});
  CHECK(slow.verdict == kCriterionFails);

  auto const j = to_json(one);
  CHECK(j["verdict"] == kCriterionSatisfied);
  CHECK(j.contains("h2"));
}
