#include <algorithm>

#include <catch_amalgamated.hpp>

#include "support.hpp"

using namespace fpgrp;
using fpgrp::test::pres;
using fpgrp::test::Rng;

namespace {

  std::size_t index_of(Presentation const& p, std::vector<Word> const& h = {},
                       Budget const& b = {}) {
    auto r = todd_coxeter(p, h, b);
    REQUIRE(std::holds_alternative<CosetTable>(r));
    return std::get<CosetTable>(r).size();
  }

  // Finite groups with faithful permutation images of their generators.
  struct Fixture {
    Presentation             p;
    std::vector<std::string> images;
    std::size_t              degree;
  };

  std::vector<Fixture> fixtures() {
    return {
        {pres("< a, b | a^2, b^3, (a b)^5 >"), {"(1 2)(3 4)", "(1 3 5)"}, 5},
        {pres("< a, b | a^2, b^3, (a b)^4 >"), {"(1 2)", "(2 3 4)"}, 4},
        {pres("< a, b | a^2, b^3, (a b)^3 >"), {"(1 2)(3 4)", "(1 2 3)"}, 4},
        {pres("< a, b | a^5, b^2, (a b)^2 >"), {"(1 2 3 4 5)", "(2 5)(3 4)"}, 5},
        {pres("< a, b | a^2, b^2, [a, b] >"), {"(1 2)", "(3 4)"}, 4},
        {pres("< a, b | a^4, a^2 b^-2, b^-1 a b a >"),
         {"(1 2 4 7)(3 6 8 5)", "(1 3 4 8)(2 5 7 6)"}, 8},
        {pres("< a | a^7 >"), {"(1 2 3 4 5 6 7)"}, 7},
    };
  }

  std::vector<Perm> perms(Fixture const& f) {
    std::vector<Perm> out;
    for (auto const& s : f.images) {
      out.push_back(Perm::from_cycles(s, f.degree));
    }
    return out;
  }

  std::size_t closure_size(std::vector<Perm> const& gens, std::size_t degree) {
    auto c = closure(gens, degree, 1'000'000);
    REQUIRE(c);
    return c->size();
  }

  // Subgroups of index k from transitive actions on {1..k} with 1 as the
  // base point: |transitive homs| / (k-1)!.
  std::size_t subgroups_via_actions(Presentation const& p, std::size_t k) {
    auto const  homs = hom_search(p, symmetric_group(k));
    std::size_t transitive = 0;
    for (auto const& h : homs.homs) {
      std::vector<bool>        seen(k, false);
      std::vector<std::size_t> stack{0};
      seen[0] = true;
      while (!stack.empty()) {
        auto const x = stack.back();
        stack.pop_back();
        for (auto const& g : h.images) {
          for (auto y : {g(x), g.inverse()(x)}) {
            if (!seen[y]) {
              seen[y] = true;
              stack.push_back(y);
            }
          }
        }
      }
      transitive += std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
    }
    std::size_t fact = 1;
    for (std::size_t i = 2; i < k; ++i) {
      fact *= i;
    }
    REQUIRE(transitive % fact == 0);
    return transitive / fact;
  }

}  // namespace

TEST_CASE("coset enumeration examples") {
  CHECK(index_of(pres("< a | a^5 >")) == 5);
  CHECK(index_of(catalog("A5", {}).presentation) == 60);
  CHECK(index_of(uce(catalog("A5", {}).presentation).tilde) == 120);
  CHECK(index_of(pres("< a, b | a^8, b^7, (a b)^2, (a^-1 b)^3 >")) == 10752);
  CHECK(index_of(pres("< x | x >")) == 1);
  CHECK(index_of(pres("< a, b | a^2, b^3, (a b)^5 >"), {pres("< a, b | >").word("a")}) == 30);
}

TEST_CASE("coset enumeration reports exhaustion") {
  auto r = todd_coxeter(catalog("A5", {}).presentation, {}, Budget{10, 100000, 60});
  REQUIRE(std::holds_alternative<Exhausted>(r));
  CHECK(std::get<Exhausted>(r).live_cosets > 0);
  auto z = todd_coxeter(pres("< a, b | [a, b] >"), {}, Budget{1000, 100000, 60});
  CHECK(std::holds_alternative<Exhausted>(z));
}

TEST_CASE("complete tables are certificates") {
  for (auto const& f : fixtures()) {
    auto r = todd_coxeter(f.p, {});
    REQUIRE(std::holds_alternative<CosetTable>(r));
    auto const& t = std::get<CosetTable>(r);
    CHECK_FALSE(t.check(f.p).has_value());
    CHECK(t.is_standard());
    for (std::uint32_t c = 0; c < t.size(); ++c) {
      for (auto const& rel : f.p.relators()) {
        REQUIRE(t.trace(c, rel) == c);
      }
    }
  }
}

TEST_CASE("group orders agree with faithful permutation images") {
  for (auto const& f : fixtures()) {
    auto const gens = perms(f);
    REQUIRE(std::holds_alternative<GroupHom>(verify_hom(f.p, gens)));
    CHECK(index_of(f.p) == closure_size(gens, f.degree));
  }
}

TEST_CASE("subgroup indices agree with permutation images") {
  Rng rng(51);
  for (auto const& f : fixtures()) {
    auto const gens  = perms(f);
    auto const order = closure_size(gens, f.degree);
    for (int i = 0; i < 15; ++i) {
      std::vector<Word> h;
      std::vector<Perm> himg;
      for (auto k = test::uniform(rng, 1, 2); k > 0; --k) {
        h.push_back(test::random_reduced_word(rng, f.p.num_generators(), 6));
        himg.push_back(evaluate(h.back(), gens, f.degree));
      }
      CHECK(index_of(f.p, h) == order / closure_size(himg, f.degree));
    }
  }
}

TEST_CASE("standardized tables do not depend on relator order or form") {
  Rng rng(52);
  for (auto const& f : fixtures()) {
    auto const base = std::get<CosetTable>(todd_coxeter(f.p, {}));
    for (int i = 0; i < 5; ++i) {
      auto rels = f.p.relators();
      for (auto& r : rels) {
        r = rotate(r, test::uniform(rng, 0, r.size() - 1));
        if (test::uniform(rng, 0, 1) == 1) {
          r = inverse(r);
        }
      }
      std::shuffle(rels.begin(), rels.end(), rng);
      auto const t = std::get<CosetTable>(todd_coxeter(Presentation(f.p.alphabet(), rels), {}));
      CHECK(t == base);
    }
  }
}

TEST_CASE("coset tables round-trip through JSON") {
  auto const p = catalog("A5", {}).presentation;
  auto const t = std::get<CosetTable>(todd_coxeter(p, {p.word("a")}));
  CHECK(coset_table_from_json(to_json(t, p.alphabet()), p.alphabet()) == t);
}

TEST_CASE("Reidemeister-Schreier examples") {
  auto const z  = pres("< a | >");
  auto const hz = reidemeister_schreier(z, std::get<CosetTable>(todd_coxeter(z, {z.word("a^2")})));
  CHECK(hz.num_generators() == 1);
  CHECK(hz.num_relators() == 0);

  auto const f2 = pres("< a, b | >");
  auto const t2 = std::get<CosetTable>(
      todd_coxeter(f2, {f2.word("a"), f2.word("b^2"), f2.word("b a b^-1")}));
  REQUIRE(t2.size() == 2);
  auto const h2 = reidemeister_schreier(f2, t2);
  CHECK(h2.num_generators() == 3);
  CHECK(h2.num_relators() == 0);

  auto const c6 = pres("< a | a^6 >");
  auto const h3 = reidemeister_schreier(c6, std::get<CosetTable>(todd_coxeter(c6, {c6.word("a^3")})));
  CHECK(abelianization(h3).torsion == std::vector<Integer>{2});
}

TEST_CASE("Schreier generator counts and subgroup orders") {
  Rng rng(53);
  for (auto const& f : fixtures()) {
    auto const order = index_of(f.p);
    for (int i = 0; i < 6; ++i) {
      std::vector<Word> h{test::random_reduced_word(rng, f.p.num_generators(), 5)};
      auto const        t = std::get<CosetTable>(todd_coxeter(f.p, h));
      SchreierRewriter const rw(t);
      CHECK(rw.num_schreier_generators()
            == t.size() * (f.p.num_generators() - 1) + 1);
      auto const sub = rw.presentation(f.p);
      CHECK(index_of(sub) * t.size() == order);
      // Schreier generators rewrite back to themselves
      for (std::size_t s = 0; s < rw.num_schreier_generators(); ++s) {
        auto const [w, end] = rw.rewrite(rw.schreier_word(s), 0);
        CHECK(end == 0);
        CHECK(w == Word{letter(s)});
      }
    }
  }
}

TEST_CASE("low-index examples") {
  auto const z = low_index(pres("< a | >"), 5);
  for (auto const& c : z.counts) {
    CHECK(c.subgroups == 1);
    CHECK(c.classes == 1);
  }
  auto const f2 = low_index(pres("< a, b | >"), 4);
  CHECK(f2.counts[1].subgroups == 3);
  CHECK(f2.counts[2].subgroups == 13);
  CHECK(f2.counts[3].subgroups == 71);
  CHECK(f2.consistent);

  auto const b2 = low_index(catalog("Bp", {2}).presentation, 5);
  CHECK_FALSE(b2.exhausted);
  CHECK(b2.proper_subgroups() == 0);

  auto const a5 = low_index(catalog("A5", {}).presentation, 6);
  CHECK(a5.counts[4].subgroups == 5);
  CHECK(a5.counts[5].subgroups == 6);
  CHECK(a5.counts[4].classes == 1);
}

TEST_CASE("index-2 subgroups match the mod-2 abelianization") {
  Rng rng(54);
  for (int i = 0; i < 60; ++i) {
    Presentation p(Alphabet{"a", "b", "c"});
    for (auto k = test::uniform(rng, 1, 3); k > 0; --k) {
      p.add_relator(test::random_reduced_word(rng, 3, 8));
    }
    auto const  inv = abelianization(p);
    std::size_t s   = inv.free_rank;
    for (auto const& t : inv.torsion) {
      s += t % 2 == 0 ? 1 : 0;
    }
    auto const f = low_index(p, 2);
    CHECK(f.counts[1].subgroups == (std::size_t{1} << s) - 1);
  }
}

TEST_CASE("low-index counts agree with transitive actions") {
  std::vector<Presentation> ps{catalog("A5", {}).presentation,
                               pres("< a, b | a^2, b^3, (a b)^4 >"),
                               pres("< a, b | a^3, b^3, (a b)^3 >"),
                               catalog("triangle", {2, 3, 7}).presentation,
                               pres("< a, b | a^4, a^2 b^-2, b^-1 a b a >")};
  for (auto const& p : ps) {
    auto const f = low_index(p, 4);
    CHECK(f.consistent);
    for (std::size_t k = 2; k <= 4; ++k) {
      CHECK(f.counts[k - 1].subgroups == subgroups_via_actions(p, k));
    }
  }
}

TEST_CASE("fingerprint comparison") {
  auto const c = fingerprint_compare(pres("< a | a^2 >"), pres("< a | a^3 >"), 3);
  CHECK_FALSE(c.equal);
  CHECK(c.first_discrepancy == 2u);
  auto const a5 = catalog("A5", {}).presentation;
  CHECK(fingerprint_compare(a5, a5, 5).equal);
}

TEST_CASE("low-index search respects its time budget") {
  auto const f = low_index(pres("< a, b, c | >"), 9, Budget{100000, 100000, 0.2});
  CHECK(f.exhausted);
}
