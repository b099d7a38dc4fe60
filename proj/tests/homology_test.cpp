#include <algorithm>
#include <numeric>

#include <catch_amalgamated.hpp>

#include "support.hpp"

using namespace fpgrp;
using fpgrp::test::pres;
using fpgrp::test::Rng;

namespace {

  std::vector<Integer> h2(Presentation const& p) {
    auto const r = schur_multiplier(p);
    REQUIRE(r.h2.is_finite());
    return r.h2.torsion;
  }

  std::vector<Integer> ints(std::initializer_list<int> xs) {
    return {xs.begin(), xs.end()};
  }

  std::size_t order_of(Presentation const& p) {
    auto r = todd_coxeter(p, {});
    REQUIRE(std::holds_alternative<CosetTable>(r));
    return std::get<CosetTable>(r).size();
  }

  // Same group, different presentation: relators rotated, inverted,
  // conjugated, shuffled, plus one redundant product of two relators.
  Presentation scramble(Rng& rng, Presentation const& p) {
    auto       rels = p.relators();
    auto const ng   = p.num_generators();
    for (auto& r : rels) {
      r = rotate(r, test::uniform(rng, 0, r.size() - 1));
      if (test::uniform(rng, 0, 1) == 1) {
        r = inverse(r);
      }
      auto const c = test::random_reduced_word(rng, ng, 3);
      r            = free_reduce(c * r * inverse(c));
    }
    auto const i = test::uniform(rng, 0, rels.size() - 1);
    auto const j = test::uniform(rng, 0, rels.size() - 1);
    rels.push_back(free_reduce(rels[i] * rels[j]));
    std::shuffle(rels.begin(), rels.end(), rng);
    return Presentation(p.alphabet(), rels);
  }

  long long naive_power(long long u, long long k, long long n) {
    long long r = 1;
    for (long long i = 0; i < k; ++i) {
      r = r * u % n;
    }
    return r;
  }

}  // namespace

TEST_CASE("Schur multiplier examples") {
  CHECK(h2(catalog("A5", {}).presentation) == ints({2}));
  CHECK(h2(pres("< a | a^5 >")).empty());
  CHECK(h2(pres("< a, b | a^2, b^2, [a, b] >")) == ints({2}));
  CHECK(h2(pres("< a, b | a^2, b^3, (a b)^4 >")) == ints({2}));
  CHECK(h2(pres("< a, b | a^4, b^2, (a b)^2 >")) == ints({2}));
  CHECK(h2(pres("< a, b, c | a^2, b^2, c^2, [a, b], [a, c], [b, c] >")) == ints({2, 2, 2}));
  CHECK(h2(pres("< a, b | a^4, a^2 b^-2, b^-1 a b a >")).empty());
  CHECK(h2(pres("< a, b | a^2, b^3, (a b)^3 >")) == ints({2}));
  CHECK(h2(pres("< a | a^6 >")).empty());
  CHECK(h2(pres("< x | x >")).empty());
}

TEST_CASE("Schur multiplier reports budget exhaustion") {
  CHECK_THROWS_AS(schur_multiplier(pres("< a, b | [a, b] >"), Budget{1000, 100000, 60}),
                  BudgetError);
}

TEST_CASE("Schur multiplier does not depend on the presentation") {
  Rng                       rng(71);
  std::vector<Presentation> ps{catalog("A5", {}).presentation,
                               pres("< a, b | a^2, b^2, [a, b] >"),
                               pres("< a, b | a^2, b^3, (a b)^4 >"),
                               pres("< a, b | a^4, a^2 b^-2, b^-1 a b a >"),
                               pres("< a | a^6 >")};
  for (auto const& p : ps) {
    auto const base = h2(p);
    for (int i = 0; i < 4; ++i) {
      auto const q = scramble(rng, p);
      REQUIRE(order_of(q) == order_of(p));
      CHECK(h2(q) == base);
    }
  }
}

TEST_CASE("Schur multiplier needs at most r - n generators") {
  std::vector<Presentation> ps{pres("< a, b | a^2, b^2, [a, b] >"),
                               pres("< a, b, c | a^2, b^2, c^2, [a, b], [a, c], [b, c] >"),
                               pres("< a, b | a^2, b^3, (a b)^5 >"),
                               pres("< a, b | a^5, b^2, (a b)^2 >")};
  for (auto const& p : ps) {
    auto const r = schur_multiplier(p);
    CHECK(r.h2.torsion.size() + r.h2.free_rank
          <= p.num_relators() - p.num_generators());
    CHECK(r.group_order == order_of(p));
  }
}

TEST_CASE("covering group order is |H_2| |G| for perfect groups") {
  std::vector<Presentation> ps{catalog("A5", {}).presentation,
                               pres("< a, b | a^2, b^3, (a b)^7, [a, b]^4 >")};
  for (auto const& p : ps) {
    auto const g = order_of(p);
    auto const m = schur_multiplier(p).h2.torsion_order();
    auto const t = uce(p).tilde;
    CHECK(Integer(order_of(t)) == m * g);
    CHECK(h2(t).empty());
  }
}

TEST_CASE("l0 check on the binary icosahedral group") {
  auto const t = uce(catalog("A5", {}).presentation).tilde;
  for (std::string const n : {"a^2", "b^3"}) {
    Presentation q = t;
    q.add_relator(t.word(n));
    auto const r = lemma_l0_check({t, {t.word(n)}, q});
    CHECK(r.hypotheses_met);
    CHECK(r.ambient_order == 120);
    CHECK(r.normal_order == 2);
    CHECK(r.quotient_order == 60);
    REQUIRE(r.coinvariants);
    CHECK(r.coinvariants->torsion == ints({2}));
    CHECK(r.h2_quotient->torsion == ints({2}));
    CHECK(r.equal);
  }
}

TEST_CASE("l0 check with N the whole group") {
  auto const   t = uce(catalog("A5", {}).presentation).tilde;
  Presentation q = t;
  std::vector<Word> gens;
  for (std::size_t g = 0; g < t.num_generators(); ++g) {
    gens.push_back(Word{letter(g)});
    q.add_relator(gens.back());
  }
  auto const r = lemma_l0_check({t, gens, q});
  CHECK(r.hypotheses_met);
  CHECK(r.normal_order == 120);
  CHECK(r.quotient_order == 1);
  CHECK(r.coinvariants->is_trivial());
  CHECK(r.equal);
}

TEST_CASE("l0 check refuses groups with nontrivial H_1 or H_2") {
  auto const a5 = catalog("A5", {}).presentation;
  auto       q  = a5;
  q.add_relator(a5.word("a"));
  auto const r = lemma_l0_check({a5, {a5.word("a")}, q});
  CHECK_FALSE(r.hypotheses_met);
  CHECK_FALSE(r.coinvariants);
  CHECK(r.note.find("H_2") != std::string::npos);

  auto const c5 = pres("< a | a^5 >");
  auto const s  = lemma_l0_check({c5, {}, c5});
  CHECK_FALSE(s.hypotheses_met);
  CHECK(s.note.find("H_1") != std::string::npos);
}

TEST_CASE("l0 check rejects a wrong quotient") {
  auto const t = uce(catalog("A5", {}).presentation).tilde;
  CHECK_THROWS_AS(lemma_l0_check({t, {t.word("a^2")}, t}), DomainError);
}

TEST_CASE("aspherical H_2 rank") {
  auto const b2 = catalog("Bp", {2}).presentation;
  CHECK(aspherical_h2_rank(b2, true)
        == static_cast<long long>(b2.num_relators() - b2.num_generators()));
  CHECK(aspherical_h2_rank(pres("< x | x >"), true) == 0);
  CHECK_THROWS_AS(aspherical_h2_rank(b2, false), PreconditionError);
  CHECK_THROWS_AS(aspherical_h2_rank(pres("< a | a^2 >"), true), DomainError);
}

TEST_CASE("Baumslag isomorphism test") {
  auto const v = baumslag_iso_test(25, 6, 2);
  CHECK(v.power == 11);
  CHECK(v.inverse == 21);
  CHECK_FALSE(v.isomorphic);
  CHECK(baumslag_iso_test(25, 6, 1).isomorphic);
  CHECK(baumslag_iso_test(25, 6, -1).isomorphic);
  CHECK_THROWS_AS(baumslag_iso_test(12, 5, 2), DomainError);
  CHECK_THROWS_AS(baumslag_iso_test(25, 5, 2), DomainError);
}

TEST_CASE("Baumslag test agrees with naive modular arithmetic") {
  Rng rng(72);
  for (long long n : {9, 25, 27, 49, 121, 125}) {
    for (int i = 0; i < 30; ++i) {
      long long u = test::uniform(rng, 2, n - 1);
      if (std::gcd(u, n) != 1) {
        continue;
      }
      long long const k = test::uniform(rng, 0, 40);
      auto const      v = baumslag_iso_test(n, u, k);
      auto const      p = naive_power(u, k, n);
      CHECK(v.power == p);
      CHECK(v.inverse * u % n == 1);
      CHECK(v.isomorphic == (p == u || p == v.inverse));
    }
  }
}

TEST_CASE("non-isomorphic Baumslag groups share finite quotients") {
  auto const c = fingerprint_compare(catalog("baumslag25", {1}).presentation,
                                     catalog("baumslag25", {2}).presentation, 5);
  CHECK(c.equal);
}
