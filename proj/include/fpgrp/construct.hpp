#ifndef FPGRP_CONSTRUCT_HPP_
#define FPGRP_CONSTRUCT_HPP_

// Rips construction, universal central extension presentations, fibre
// product generators and the product pipeline.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "budget.hpp"
#include "cancel.hpp"
#include "coset.hpp"
#include "errors.hpp"
#include "homology.hpp"
#include "json.hpp"
#include "presentation.hpp"
#include "word.hpp"
#include "zlattice.hpp"

namespace fpgrp {

  ////////////////////////////////////////////////////////////////////////
  // Rips construction
  ////////////////////////////////////////////////////////////////////////

  struct RipsOptions {
    std::size_t max_word_length = 4'000'000;  // per relator
  };

  struct RipsResult {
    Presentation gamma;
    std::size_t  a1 = 0;  // generator indices of the normal pair
    std::size_t  a2 = 0;
    Substitution quotient_map;  // X -> X, a_i -> 1
    std::size_t  m             = 0;
    bool         zero_exponent = false;
    std::size_t  run_bound     = 0;  // s: run exponents lie in 1..s
    std::size_t  target_length = 0;  // minimum base word length
    std::size_t  attempts      = 0;
    std::size_t  best_m        = 0;  // largest m' the output satisfies
  };

  namespace detail {

    // Euler circuit of the complete bipartite digraph on run exponents
    // A_1..A_s (a_1 runs) and B_1..B_s (a_2 runs), starting at A_1. Every
    // run pair (A_i, B_j) and (B_j, A_i) occurs exactly once, cyclically.
    inline std::vector<std::size_t> run_circuit(std::size_t s) {
      std::vector<std::size_t>              next(2 * s, 0);
      std::vector<std::size_t>              stack{0};
      std::vector<std::size_t>              circuit;
      while (!stack.empty()) {
        auto const v = stack.back();
        if (next[v] < s) {
          auto const k = next[v]++;
          stack.push_back(v < s ? s + k : k);
        } else {
          circuit.push_back(v);
          stack.pop_back();
        }
      }
      std::reverse(circuit.begin(), circuit.end());
      circuit.pop_back();  // closing return to A_1
      return circuit;
    }

    // Positive words in a_1, a_2 cut from the run circuit, each at least
    // `length` long, starting with an a_1 run and ending with an a_2 run.
    inline std::optional<std::vector<Word>> rips_words(std::size_t count,
                                                       std::size_t length,
                                                       std::size_t s,
                                                       std::size_t a1,
                                                       std::size_t a2) {
      auto const        circuit = run_circuit(s);
      std::vector<Word> words;
      Word              cur;
      for (std::size_t i = 0; i < circuit.size() && words.size() < count; ++i) {
        auto const v   = circuit[i];
        bool const isa = v < s;
        if (cur.empty() && !isa) {
          continue;
        }
        auto const exp = (isa ? v : v - s) + 1;
        for (std::size_t k = 0; k < exp; ++k) {
          cur.push_back(letter(isa ? a1 : a2));
        }
        if (!isa && cur.size() >= length) {
          words.push_back(std::move(cur));
          cur = Word();
        }
      }
      if (words.size() < count) {
        return std::nullopt;
      }
      return words;
    }

    inline Presentation rips_assemble(Presentation const&      q,
                                      Alphabet const&          alphabet,
                                      std::size_t              a1,
                                      std::size_t              a2,
                                      std::vector<Word> const& words) {
      Presentation out(alphabet);
      std::size_t  w = 0;
      for (auto const& r : q.relators()) {
        out.add_relator(r * words[w++]);
      }
      for (std::size_t x = 0; x < q.num_generators(); ++x) {
        for (std::size_t ai : {a1, a2}) {
          for (bool inv : {false, true}) {
            Word const xe{letter(x, inv)};
            out.add_relator(xe * Word{letter(ai)} * inverse(xe) * words[w++]);
          }
        }
      }
      return out;
    }

    inline std::string fresh_prefix(Alphabet const& a) {
      std::string p = "a";
      while (a.contains(p + "_1") || a.contains(p + "_2")) {
        p += "a";
      }
      return p;
    }

  }  // namespace detail

  /// Gamma = <X, a_1, a_2 | r u_r, x^e a_i x^-e v_(x,i,e)> satisfying
  /// C'(1/m), with <a_1, a_2> normal and Gamma / <a_1, a_2> = Q. With
  /// zero_exponent the u and v words are images under
  /// a_1 -> a_1 a_2 a_1^-2 a_2^-1 a_1, a_2 -> a_2 a_1 a_2^-2 a_1^-1 a_2 of a
  /// C'(1/5m) scheme, so they have exponent sum 0 in both a_i.
  inline RipsResult rips(Presentation const& q,
                         std::size_t         m,
                         bool                zero_exponent,
                         RipsOptions const&  opts = {}) {
    if (m < 6) {
      throw DomainError("rips: m must be at least 6");
    }
    if (q.num_generators() == 0) {
      throw DomainError("rips: the presentation needs at least one generator");
    }
    auto const   prefix = detail::fresh_prefix(q.alphabet());
    Alphabet     alphabet = q.alphabet();
    auto const   a1       = alphabet.add(prefix + "_1");
    auto const   a2       = alphabet.add(prefix + "_2");
    auto const   count    = q.num_relators() + 4 * q.num_generators();
    auto const   mb       = zero_exponent ? 5 * m : m;
    std::size_t  maxr     = 0;
    for (auto const& r : q.relators()) {
      maxr = std::max(maxr, r.size());
    }

    Substitution sigma(alphabet, alphabet);
    sigma = Substitution::identity(alphabet);
    sigma.set(a1, Word{letter(a1), letter(a2), letter(a1, true), letter(a1, true),
                       letter(a2, true), letter(a1)});
    sigma.set(a2, Word{letter(a2), letter(a1), letter(a2, true), letter(a2, true),
                       letter(a1, true), letter(a2)});

    RipsResult res{Presentation(alphabet), a1, a2,
                   Substitution(alphabet, q.alphabet()), m, zero_exponent};
    for (std::size_t g = 0; g < q.num_generators(); ++g) {
      res.quotient_map.set(g, Word{letter(g)});
    }
    res.quotient_map.set(a1, Word{});
    res.quotient_map.set(a2, Word{});

    double scale = 1.0;
    for (std::size_t attempt = 1;; ++attempt) {
      // Pieces stay within about four runs plus one input relator, so words
      // longer than mb times that bound are expected to pass.
      std::size_t s = 2;
      std::size_t length = 0;
      std::vector<Word> words;
      while (true) {
        auto const piece = 4 * s + maxr + 2;
        length = static_cast<std::size_t>(std::ceil(scale * double(mb * piece))) + 1;
        if ((zero_exponent ? 6 : 1) * length > opts.max_word_length) {
          throw BudgetError("rips: words would exceed "
                            + std::to_string(opts.max_word_length)
                            + " letters");
        }
        auto const total = s * s * (s + 1);
        if (total >= count * (length + 2 * s)) {
          if (auto w = detail::rips_words(count, length, s, a1, a2)) {
            words = std::move(*w);
            break;
          }
        }
        ++s;
      }
      Presentation base = detail::rips_assemble(q, alphabet, a1, a2, words);
      bool         ok   = true;
      if (zero_exponent) {
        ok = check_metric(base, mb).verdict;
        for (auto& w : words) {
          w = substitute(w, sigma);
        }
      }
      Presentation gamma = detail::rips_assemble(q, alphabet, a1, a2, words);
      if (ok) {
        auto const rep = check_metric(gamma, m);
        if (rep.verdict) {
          res.gamma         = std::move(gamma);
          res.run_bound     = s;
          res.target_length = length;
          res.attempts      = attempt;
          res.best_m        = rep.best_m();
          return res;
        }
      }
      scale *= 1.25;
    }
  }

  ////////////////////////////////////////////////////////////////////////
  // Universal central extension
  ////////////////////////////////////////////////////////////////////////

  struct UceResult {
    Presentation                      tilde;
    std::vector<std::vector<Integer>> witnesses;  // c_a per generator a
    std::size_t                       commutator_count = 0;
    std::size_t                       expression_count = 0;
  };

  /// <A | [a, r] (a in A, r in R), w_a (a in A)> with
  /// w_a = prod_r r^(c_(a,r)) and sum_r c_(a,r) ab(r) = ab(a).
  inline UceResult uce(Presentation const& g) {
    auto const h1 = abelianization(g);
    if (!h1.is_trivial()) {
      throw PreconditionError("uce: input is not perfect (abelianization "
                              + h1.to_string() + ")");
    }
    auto const           n = g.num_generators();
    IntMatrix const      M = exponent_matrix(g);
    std::vector<Integer> weights;
    for (auto const& r : g.relators()) {
      weights.emplace_back(std::max<std::size_t>(r.size(), 1));
    }
    UceResult res{Presentation(g.alphabet()), {}, 0, 0};
    for (std::size_t a = 0; a < n; ++a) {
      for (auto const& r : g.relators()) {
        res.tilde.add_relator(commutator(Word{letter(a)}, r));
        ++res.commutator_count;
      }
    }
    for (std::size_t a = 0; a < n; ++a) {
      std::vector<Integer> e(n, 0);
      e[a]   = 1;
      auto c = lattice_solve(e, M, weights);
      if (!c) {
        throw Error("uce: generator " + g.alphabet().name(a)
                    + " is not in the relator lattice of a perfect group");
      }
      Word w;
      for (std::size_t i = 0; i < g.num_relators(); ++i) {
        if ((*c)[i] != 0) {
          w.append(power(g.relator(i), static_cast<long long>((*c)[i])));
        }
      }
      res.tilde.add_relator(free_reduce(w));
      res.witnesses.push_back(std::move(*c));
      ++res.expression_count;
    }
    return res;
  }

  ////////////////////////////////////////////////////////////////////////
  // Fibre products
  ////////////////////////////////////////////////////////////////////////

  /// {(a, a) : a in A} followed by {(r, 1) : r in q_relators}.
  inline std::vector<PairWord> fibre_generators(Presentation const&      g,
                                                std::vector<Word> const& q_relators) {
    std::vector<PairWord> out;
    for (std::size_t a = 0; a < g.num_generators(); ++a) {
      out.push_back({Word{letter(a)}, Word{letter(a)}});
    }
    for (auto const& r : q_relators) {
      if (r.generator_bound() > g.num_generators()) {
        throw DomainError("fibre_generators: relator uses foreign generators");
      }
      out.push_back({r, Word{}});
    }
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Evidence and pipeline
  ////////////////////////////////////////////////////////////////////////

  struct GrothendieckEvidence {
    AbelianInvariants                h1;
    Fingerprint                      low_index;
    std::optional<std::size_t>       order;  // when Q is certified finite
    std::optional<AbelianInvariants> h2;
    std::string                      h2_status;
    std::string                      verdict;
  };

  inline constexpr char const* kCriterionSatisfied
      = "criterion satisfied at tested scale";
  inline constexpr char const* kCriterionFails = "criterion fails";
  inline constexpr char const* kInconclusive   = "inconclusive at tested scale";

  inline GrothendieckEvidence grothendieck_evidence(Presentation const& q,
                                                    std::size_t index_bound,
                                                    Budget const& budget = {}) {
    GrothendieckEvidence e;
    e.h1        = abelianization(q);
    e.low_index = low_index(q, index_bound, budget);
    try {
      auto const s = schur_multiplier(q, budget);
      e.order      = s.group_order;
      e.h2         = s.h2;
      e.h2_status  = "computed";
    } catch (BudgetError const& err) {
      e.h2_status = std::string("assumed: not computed (") + err.what() + ")";
    }
    bool const found = e.low_index.proper_subgroups() > 0;
    if (!e.h1.is_trivial() || found || (e.h2 && !e.h2->is_trivial())) {
      e.verdict = kCriterionFails;
    } else if (e.low_index.exhausted) {
      e.verdict = kInconclusive;
    } else {
      e.verdict = kCriterionSatisfied;
    }
    return e;
  }

  struct PipelineCounts {
    std::size_t gamma_relators = 0;
    std::size_t tilde_relators = 0;
    std::size_t e_generators   = 0;
    std::size_t e_relators     = 0;
    std::size_t expected_generators = 0;  // 2(|X| + 2)
    std::size_t expected_relators   = 0;  // (|X|+2)^2 + 2(|X|+2)(1+|R|+4|X|)
  };

  struct PipelineResult {
    RipsResult            rips;
    UceResult             uce;
    Presentation          E;
    std::vector<PairWord> P_generators;  // over the alphabet of tilde
    PipelineCounts        counts;
    bool                  e_perfect = false;
    std::optional<GrothendieckEvidence> evidence;
  };

  struct PipelineOptions {
    std::size_t index_bound   = 5;
    bool        with_evidence = true;
    RipsOptions rips;
  };

  /// rips (zero exponent) -> uce -> direct product, with the generators
  /// (x, x), (a_1, 1), (a_2, 1), (r, 1) of the fibre product.
  inline PipelineResult pipeline(Presentation const&    q,
                                 std::size_t            m,
                                 Budget const&          budget = {},
                                 PipelineOptions const& opts   = {}) {
    if (!is_perfect(q)) {
      throw PreconditionError("pipeline: input is not perfect");
    }
    PipelineResult res{rips(q, m, true, opts.rips), {}, {}, {}, {}, false, {}};
    res.uce = uce(res.rips.gamma);
    res.E   = direct_product(res.uce.tilde, res.uce.tilde);
    for (std::size_t x = 0; x < q.num_generators(); ++x) {
      res.P_generators.push_back({Word{letter(x)}, Word{letter(x)}});
    }
    res.P_generators.push_back({Word{letter(res.rips.a1)}, Word{}});
    res.P_generators.push_back({Word{letter(res.rips.a2)}, Word{}});
    for (auto const& r : q.relators()) {
      res.P_generators.push_back({r, Word{}});
    }
    auto const nx = q.num_generators(), nr = q.num_relators();
    auto&      c  = res.counts;
    c.gamma_relators      = res.rips.gamma.num_relators();
    c.tilde_relators      = res.uce.tilde.num_relators();
    c.e_generators        = res.E.num_generators();
    c.e_relators          = res.E.num_relators();
    c.expected_generators = 2 * (nx + 2);
    c.expected_relators   = (nx + 2) * (nx + 2) + 2 * (nx + 2) * (1 + nr + 4 * nx);
    res.e_perfect         = is_perfect(res.E);
    if (opts.with_evidence) {
      res.evidence = grothendieck_evidence(q, opts.index_bound, budget);
    }
    return res;
  }

  ////////////////////////////////////////////////////////////////////////
  // JSON
  ////////////////////////////////////////////////////////////////////////

  inline nlohmann::json to_json(GrothendieckEvidence const& e) {
    nlohmann::json j{{"h1", to_json(e.h1)},
                     {"low_index", to_json(e.low_index)},
                     {"h2_status", e.h2_status},
                     {"verdict", e.verdict}};
    if (e.order) {
      j["order"] = *e.order;
    }
    if (e.h2) {
      j["h2"] = to_json(*e.h2);
    }
    return j;
  }

  inline nlohmann::json to_json(PipelineCounts const& c) {
    return {{"gamma_relators", c.gamma_relators},
            {"tilde_relators", c.tilde_relators},
            {"e_generators", c.e_generators},
            {"e_relators", c.e_relators},
            {"expected_generators", c.expected_generators},
            {"expected_relators", c.expected_relators}};
  }

}  // namespace fpgrp

#endif  // FPGRP_CONSTRUCT_HPP_
