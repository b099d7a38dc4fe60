#ifndef FPGRP_HOMOLOGY_HPP_
#define FPGRP_HOMOLOGY_HPP_

// Second homology of finite groups and related checks.
//
// For G = F/R finite, R is free on the Schreier generators of the regular
// coset table and H_2(G) is the kernel of R/[F,R] -> F/[F,F].

#include <cstddef>
#include <optional>
#include <string>
#include <unordered_set>
#include <variant>
#include <vector>

#include "budget.hpp"
#include "coset.hpp"
#include "errors.hpp"
#include "json.hpp"
#include "permrep.hpp"
#include "presentation.hpp"
#include "zlattice.hpp"

namespace fpgrp {

  struct SchurReport {
    std::size_t       group_order = 0;
    AbelianInvariants h2;
    std::size_t       schreier_generators = 0;
    std::size_t       relation_rows       = 0;
    std::size_t       relation_cols       = 0;
  };

  /// Throws BudgetError when coset enumeration of p does not complete.
  inline SchurReport schur_multiplier(Presentation const& p,
                                      Budget const&       budget = {}) {
    auto res = todd_coxeter(p, {}, budget);
    if (auto const* ex = std::get_if<Exhausted>(&res)) {
      throw BudgetError("schur_multiplier: coset enumeration exhausted ("
                        + ex->reason + ")");
    }
    SchreierRewriter const rw(std::get<CosetTable>(res));
    auto const             k  = rw.num_schreier_generators();
    auto const             ng = p.num_generators();

    // Conjugation x s x^-1 on R_ab, one block of (A_x - I) rows per x.
    IntMatrix relations(0, k);
    for (std::size_t x = 0; x < ng; ++x) {
      Word const xw{letter(x)};
      for (std::size_t i = 0; i < k; ++i) {
        auto [w, end] = rw.rewrite(xw * rw.schreier_word(i) * inverse(xw), 0);
        if (end != 0) {
          throw Error("schur_multiplier: conjugate left the subgroup");
        }
        auto                 v = exponent_vector(w, k);
        std::vector<Integer> row(k);
        for (std::size_t j = 0; j < k; ++j) {
          row[j] = v[j];
        }
        row[i] -= 1;
        relations.append_row(row);
      }
    }
    IntMatrix map(k, ng);
    for (std::size_t i = 0; i < k; ++i) {
      auto v = exponent_vector(rw.schreier_word(i), ng);
      for (std::size_t j = 0; j < ng; ++j) {
        map(i, j) = v[j];
      }
    }
    SchurReport r;
    r.group_order         = rw.table().size();
    r.schreier_generators = k;
    r.relation_rows       = relations.rows();
    r.relation_cols       = k;
    r.h2                  = kernel_invariants(FpAbelianGroup{k, relations}, map);
    return r;
  }

  ////////////////////////////////////////////////////////////////////////
  // N / [N, G] against H_2(G / N)
  ////////////////////////////////////////////////////////////////////////

  struct L0Instance {
    Presentation      ambient;
    std::vector<Word> normal_gens;  // words over the ambient alphabet
    Presentation      quotient;     // presentation of ambient / <<normal_gens>>
  };

  struct L0Report {
    bool                             hypotheses_met = false;
    std::string                      note;
    std::size_t                      ambient_order = 0;
    std::size_t                      normal_order  = 0;
    std::size_t                      quotient_order = 0;
    AbelianInvariants                ambient_h1;
    std::optional<AbelianInvariants> ambient_h2;
    std::optional<AbelianInvariants> coinvariants;  // N / [N, G]
    std::optional<AbelianInvariants> h2_quotient;
    bool                             equal = false;
  };

  namespace detail {

    // Normal closure of `gens` in the group generated by `ambient`.
    inline std::vector<Perm> normal_closure(std::vector<Perm> const& gens,
                                            std::vector<Perm> const& ambient,
                                            std::size_t              degree,
                                            std::size_t              cap) {
      std::unordered_set<Perm, PermHash> seen;
      std::vector<Perm>                  order{Perm(degree)};
      seen.insert(order.front());
      std::vector<Perm> ainv;
      for (auto const& x : ambient) {
        ainv.push_back(x.inverse());
      }
      auto add = [&](Perm p) {
        if (seen.insert(p).second) {
          if (seen.size() > cap) {
            throw BudgetError("normal closure exceeds the element cap");
          }
          order.push_back(std::move(p));
        }
      };
      for (auto const& g : gens) {
        add(g);
      }
      for (std::size_t i = 0; i < order.size(); ++i) {
        for (auto const& g : gens) {
          add(order[i] * g);
        }
        for (std::size_t a = 0; a < ambient.size(); ++a) {
          add(ainv[a] * order[i] * ambient[a]);
        }
      }
      return order;
    }

    inline std::vector<std::size_t> prime_factors(std::size_t n) {
      std::vector<std::size_t> ps;
      for (std::size_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
          ps.push_back(p);
          while (n % p == 0) {
            n /= p;
          }
        }
      }
      if (n > 1) {
        ps.push_back(n);
      }
      return ps;
    }

    inline Perm power(Perm const& p, std::size_t e) {
      Perm r(p.degree());
      Perm b = p;
      while (e > 0) {
        if (e & 1) {
          r = r * b;
        }
        b = b * b;
        e >>= 1;
      }
      return r;
    }

    // Invariants of the abelian group N / C from counts of elements killed
    // by prime powers.
    inline AbelianInvariants abelian_quotient_invariants(
        std::vector<Perm> const&                  n,
        std::unordered_set<Perm, PermHash> const& c) {
      std::size_t const order = n.size() / c.size();
      std::vector<Integer> primary;
      for (auto p : prime_factors(order)) {
        std::size_t prev_log = 0;
        std::vector<std::size_t> at_least;  // factors with exponent >= j
        for (std::size_t pj = p;; pj *= p) {
          std::size_t killed = 0;
          for (auto const& x : n) {
            if (c.count(power(x, pj))) {
              ++killed;
            }
          }
          killed /= c.size();
          std::size_t lg = 0;
          for (std::size_t t = killed; t > 1; t /= p) {
            ++lg;
          }
          if (lg == prev_log) {
            break;
          }
          at_least.push_back(lg - prev_log);
          prev_log = lg;
        }
        for (std::size_t j = 0; j < at_least.size(); ++j) {
          std::size_t const next = j + 1 < at_least.size() ? at_least[j + 1] : 0;
          Integer           q    = 1;
          for (std::size_t t = 0; t <= j; ++t) {
            q *= p;
          }
          for (std::size_t t = next; t < at_least[j]; ++t) {
            primary.push_back(q);
          }
        }
      }
      IntMatrix d(primary.size(), primary.size());
      for (std::size_t i = 0; i < primary.size(); ++i) {
        d(i, i) = primary[i];
      }
      return cokernel_invariants(d, primary.size());
    }

  }  // namespace detail

  /// Computes N / [N, G] in the regular permutation image of the ambient
  /// group and compares it with H_2 of the quotient. Requires the ambient
  /// group to be finite with H_1 = H_2 = 0; otherwise the report says the
  /// hypotheses are not met and carries no verdict.
  inline L0Report lemma_l0_check(L0Instance const& inst,
                                 Budget const&     budget = {}) {
    L0Report r;
    if (!(inst.quotient.alphabet() == inst.ambient.alphabet())) {
      throw DomainError("l0 check: quotient must use the ambient generators");
    }
    r.ambient_h1 = abelianization(inst.ambient);
    auto rho     = regular_representation(inst.ambient, budget);
    if (!rho) {
      throw BudgetError("l0 check: ambient coset enumeration exhausted");
    }
    r.ambient_order = rho->degree;
    if (!r.ambient_h1.is_trivial()) {
      r.note = "hypotheses not met: H_1 of the ambient group is "
               + r.ambient_h1.to_string();
      return r;
    }
    r.ambient_h2 = schur_multiplier(inst.ambient, budget).h2;
    if (!r.ambient_h2->is_trivial()) {
      r.note = "hypotheses not met: H_2 of the ambient group is "
               + r.ambient_h2->to_string();
      return r;
    }
    r.hypotheses_met = true;

    std::vector<Perm> ngens;
    for (auto const& w : inst.normal_gens) {
      ngens.push_back((*rho)(w));
    }
    auto const n = detail::normal_closure(
        ngens, rho->images, rho->degree, budget.max_elements);
    r.normal_order = n.size();
    std::vector<Perm> comms;
    for (auto const& x : n) {
      for (auto const& g : rho->images) {
        comms.push_back(x * g * x.inverse() * g.inverse());
      }
    }
    auto const c = detail::normal_closure(
        comms, rho->images, rho->degree, budget.max_elements);
    std::unordered_set<Perm, PermHash> cset(c.begin(), c.end());
    r.coinvariants = detail::abelian_quotient_invariants(n, cset);

    auto const q = schur_multiplier(inst.quotient, budget);
    r.quotient_order = q.group_order;
    if (q.group_order * r.normal_order != r.ambient_order) {
      throw DomainError("l0 check: quotient presentation has order "
                        + std::to_string(q.group_order) + ", expected "
                        + std::to_string(r.ambient_order / r.normal_order));
    }
    r.h2_quotient = q.h2;
    r.equal       = *r.coinvariants == *r.h2_quotient;
    r.note        = r.equal ? "N/[N,G] and H_2(Q) agree"
                            : "N/[N,G] and H_2(Q) differ";
    return r;
  }

  ////////////////////////////////////////////////////////////////////////
  // Arithmetic checks
  ////////////////////////////////////////////////////////////////////////

  /// Rank of the free abelian H_2 for an aspherical presentation of a
  /// perfect group: relators minus generators.
  inline long long aspherical_h2_rank(Presentation const& p, bool aspherical) {
    if (!aspherical) {
      throw PreconditionError(
          "h2 rank: asphericity must be asserted by the caller");
    }
    auto const h1 = abelianization(p);
    if (!h1.is_trivial()) {
      throw DomainError("h2 rank: abelianization is " + h1.to_string()
                        + ", not trivial");
    }
    auto const d = static_cast<long long>(p.num_relators())
                   - static_cast<long long>(p.num_generators());
    if (d < 0) {
      throw DomainError("h2 rank: fewer relators than generators");
    }
    return d;
  }

  struct BaumslagVerdict {
    bool      isomorphic = false;
    long long power      = 0;  // unit^k mod n
    long long inverse    = 0;  // unit^-1 mod n
  };

  namespace detail {
    inline long long mod(long long a, long long n) {
      a %= n;
      return a < 0 ? a + n : a;
    }

    inline long long mod_pow(long long b, long long e, long long n) {
      long long r = 1 % n;
      b           = mod(b, n);
      while (e > 0) {
        if (e & 1) {
          r = static_cast<long long>((__int128)r * b % n);
        }
        b = static_cast<long long>((__int128)b * b % n);
        e >>= 1;
      }
      return r;
    }

    inline std::optional<long long> mod_inverse(long long a, long long n) {
      long long t = 0, nt = 1, r = n, nr = mod(a, n);
      while (nr != 0) {
        long long q = r / nr;
        t           = std::exchange(nt, t - q * nt);
        r           = std::exchange(nr, r - q * nr);
      }
      if (r != 1) {
        return std::nullopt;
      }
      return mod(t, n);
    }
  }  // namespace detail

  /// Z/n semidirect Z with the generator acting by multiplication by `unit`,
  /// against the same with unit^k: isomorphic iff unit^k = unit^(+-1) mod n.
  inline BaumslagVerdict baumslag_iso_test(long long n, long long unit, long long k) {
    if (n < 2 || detail::prime_factors(static_cast<std::size_t>(n)).size() != 1) {
      throw DomainError("baumslag test: modulus must be a prime power");
    }
    auto const inv = detail::mod_inverse(unit, n);
    if (!inv) {
      throw DomainError("baumslag test: " + std::to_string(unit)
                        + " is not invertible mod " + std::to_string(n));
    }
    BaumslagVerdict v;
    v.inverse = *inv;
    v.power   = k >= 0 ? detail::mod_pow(unit, k, n) : detail::mod_pow(*inv, -k, n);
    v.isomorphic = v.power == detail::mod(unit, n) || v.power == v.inverse;
    return v;
  }

  ////////////////////////////////////////////////////////////////////////
  // JSON
  ////////////////////////////////////////////////////////////////////////

  inline nlohmann::json to_json(SchurReport const& r) {
    return {{"group_order", r.group_order},
            {"h2", to_json(r.h2)},
            {"schreier_generators", r.schreier_generators},
            {"relation_matrix", {r.relation_rows, r.relation_cols}}};
  }

  inline nlohmann::json to_json(L0Report const& r) {
    nlohmann::json j{{"hypotheses_met", r.hypotheses_met},
                     {"note", r.note},
                     {"ambient_order", r.ambient_order},
                     {"ambient_h1", to_json(r.ambient_h1)}};
    if (r.ambient_h2) {
      j["ambient_h2"] = to_json(*r.ambient_h2);
    }
    if (r.hypotheses_met) {
      j["normal_order"]   = r.normal_order;
      j["quotient_order"] = r.quotient_order;
      j["coinvariants"]   = to_json(*r.coinvariants);
      j["h2_quotient"]    = to_json(*r.h2_quotient);
      j["equal"]          = r.equal;
    }
    return j;
  }

}  // namespace fpgrp

#endif  // FPGRP_HOMOLOGY_HPP_
