#ifndef FPGRP_CATALOG_HPP_
#define FPGRP_CATALOG_HPP_

// Named presentations used throughout the toolkit and its tests.
//
//   Bp p          <a, b, alpha, beta | b a^-p b^-1 a^(p+1),
//                   beta alpha^-p beta^-1 alpha^(p+1),
//                   [b a b^-1, a] beta^-1, [beta alpha beta^-1, alpha] b^-1>
//                  p >= 2; no nontrivial finite quotients
//   baumslag25 v  <a, t | a^25, t^-1 a t a^-e>, e = 6 (v = 1) or 11 (v = 2)
//   A5            <a, b | a^2, b^3, (a b)^5>
//   free n        free group on n generators
//   cyclic n      <a | a^n>
//   klein4        <a, b | a^2, b^2, [a, b]>
//   triangle l m n <a, b | a^l, b^m, (a b)^n>

#include <string>
#include <vector>

#include "errors.hpp"
#include "presentation.hpp"

namespace fpgrp {

  struct CatalogEntry {
    std::string               name;
    std::vector<long long>    parameters;
    Presentation              presentation;
    std::string               notes;
  };

  namespace detail {
    inline void require_params(std::string const&            name,
                               std::vector<long long> const& params,
                               std::size_t                   n) {
      if (params.size() != n) {
        throw DomainError("catalog: '" + name + "' takes "
                          + std::to_string(n) + " parameter(s), got "
                          + std::to_string(params.size()));
      }
    }

    inline std::vector<std::string> free_names(long long n) {
      std::vector<std::string> names;
      for (long long i = 0; i < n; ++i) {
        names.push_back(n <= 26 ? std::string(1, static_cast<char>('a' + i))
                                : "x" + std::to_string(i + 1));
      }
      return names;
    }
  }  // namespace detail

  inline std::vector<std::string> catalog_names() {
    return {"Bp", "baumslag25", "A5", "free", "cyclic", "klein4", "triangle"};
  }

  inline CatalogEntry catalog(std::string const&            name,
                              std::vector<long long> const& params) {
    CatalogEntry e{name, params, {}, {}};
    if (name == "Bp") {
      detail::require_params(name, params, 1);
      auto const p = params[0];
      if (p < 2) {
        throw DomainError("catalog: Bp needs p >= 2");
      }
      Presentation P(Alphabet{"a", "b", "alpha", "beta"});
      Word const   a = P.generator("a"), b = P.generator("b"),
                 al = P.generator("alpha"), be = P.generator("beta");
      P.add_relator(b * power(a, -p) * inverse(b) * power(a, p + 1));
      P.add_relator(be * power(al, -p) * inverse(be) * power(al, p + 1));
      P.add_relator(commutator(b * a * inverse(b), a) * inverse(be));
      P.add_relator(commutator(be * al * inverse(be), al) * inverse(b));
      e.presentation = P;
      e.notes        = "aspherical presentation of a perfect group without "
                       "nontrivial finite quotients";
    } else if (name == "baumslag25") {
      detail::require_params(name, params, 1);
      if (params[0] != 1 && params[0] != 2) {
        throw DomainError("catalog: baumslag25 variant must be 1 or 2");
      }
      // Variant 2 uses the square of the multiplication-by-6 automorphism:
      // 6^2 = 36 = 11 (mod 25).
      long long const e_exp = params[0] == 1 ? 6 : 11;
      Presentation    P(Alphabet{"a", "t"});
      Word const      a = P.generator("a"), t = P.generator("t");
      P.add_relator(power(a, 25));
      P.add_relator(inverse(t) * a * t * power(a, -e_exp));
      e.presentation = P;
      e.notes        = "Z/25 semidirect Z, t acting by multiplication by "
                + std::to_string(e_exp);
    } else if (name == "A5") {
      detail::require_params(name, params, 0);
      e.presentation = parse_presentation("< a, b | a^2, b^3, (a b)^5 >");
      e.notes        = "alternating group of degree 5, order 60";
    } else if (name == "free") {
      detail::require_params(name, params, 1);
      if (params[0] < 0) {
        throw DomainError("catalog: free needs n >= 0");
      }
      e.presentation = Presentation(Alphabet(detail::free_names(params[0])));
      e.notes        = "free group of rank " + std::to_string(params[0]);
    } else if (name == "cyclic") {
      detail::require_params(name, params, 1);
      if (params[0] < 1) {
        throw DomainError("catalog: cyclic needs n >= 1");
      }
      Presentation P(Alphabet{"a"});
      P.add_relator(power(P.generator("a"), params[0]));
      e.presentation = P;
      e.notes        = "cyclic group of order " + std::to_string(params[0]);
    } else if (name == "klein4") {
      detail::require_params(name, params, 0);
      e.presentation = parse_presentation("< a, b | a^2, b^2, [a, b] >");
      e.notes        = "Klein four group";
    } else if (name == "triangle") {
      detail::require_params(name, params, 3);
      for (auto v : params) {
        if (v < 1) {
          throw DomainError("catalog: triangle exponents must be positive");
        }
      }
      Presentation P(Alphabet{"a", "b"});
      Word const   a = P.generator("a"), b = P.generator("b");
      P.add_relator(power(a, params[0]));
      P.add_relator(power(b, params[1]));
      P.add_relator(power(a * b, params[2]));
      e.presentation = P;
      e.notes        = "von Dyck group (" + std::to_string(params[0]) + ","
                + std::to_string(params[1]) + "," + std::to_string(params[2])
                + ")";
    } else {
      throw DomainError("catalog: unknown name '" + name + "'");
    }
    return e;
  }

}  // namespace fpgrp

#endif  // FPGRP_CATALOG_HPP_
