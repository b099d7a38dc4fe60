#ifndef FPGRP_TESTS_ORACLES_HPP_
#define FPGRP_TESTS_ORACLES_HPP_

#include <algorithm>
#include <numeric>
#include <vector>

#include "fpgrp.hpp"

namespace fpgrp::test::oracle {

  // Independent oracles: determinants by cofactor expansion and the
  // determinantal divisors d_k = gcd of all k x k minors.

  inline Integer det(std::vector<std::vector<Integer>> const& m) {
    auto const n = m.size();
    if (n == 0) {
      return 1;
    }
    if (n == 1) {
      return m[0][0];
    }
    Integer d = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (m[0][j] == 0) {
        continue;
      }
      std::vector<std::vector<Integer>> minor;
      for (std::size_t i = 1; i < n; ++i) {
        std::vector<Integer> row;
        for (std::size_t k = 0; k < n; ++k) {
          if (k != j) {
            row.push_back(m[i][k]);
          }
        }
        minor.push_back(row);
      }
      Integer const c = det(minor) * m[0][j];
      d += (j % 2 == 0) ? c : Integer(-c);
    }
    return d;
  }

  // Bareiss elimination; exact for any size.
  inline Integer bareiss_det(IntMatrix const& a) {
    auto const n = a.rows();
    std::vector<std::vector<Integer>> m(n, std::vector<Integer>(n));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        m[i][j] = a(i, j);
      }
    }
    Integer prev = 1;
    int     sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
      if (m[k][k] == 0) {
        std::size_t p = k + 1;
        while (p < n && m[p][k] == 0) {
          ++p;
        }
        if (p == n) {
          return 0;
        }
        std::swap(m[k], m[p]);
        sign = -sign;
      }
      for (std::size_t i = k + 1; i < n; ++i) {
        for (std::size_t j = k + 1; j < n; ++j) {
          m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
        }
      }
      prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
  }

  inline void combinations(std::size_t n, std::size_t k,
                    std::vector<std::vector<std::size_t>>& out) {
    std::vector<std::size_t> c(k);
    std::iota(c.begin(), c.end(), 0);
    while (true) {
      out.push_back(c);
      std::size_t i = k;
      while (i > 0 && c[i - 1] == n - k + i - 1) {
        --i;
      }
      if (i == 0) {
        return;
      }
      ++c[i - 1];
      for (std::size_t j = i; j < k; ++j) {
        c[j] = c[j - 1] + 1;
      }
    }
  }

  inline Integer gcd(Integer a, Integer b) {
    a = a < 0 ? Integer(-a) : a;
    b = b < 0 ? Integer(-b) : b;
    while (b != 0) {
      a = a % b;
      std::swap(a, b);
    }
    return a;
  }

  inline std::vector<Integer> determinantal_divisors(IntMatrix const& a) {
    std::vector<Integer> d;
    for (std::size_t k = 1; k <= std::min(a.rows(), a.cols()); ++k) {
      std::vector<std::vector<std::size_t>> rs, cs;
      combinations(a.rows(), k, rs);
      combinations(a.cols(), k, cs);
      Integer g = 0;
      for (auto const& r : rs) {
        for (auto const& c : cs) {
          std::vector<std::vector<Integer>> m(k, std::vector<Integer>(k));
          for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t j = 0; j < k; ++j) {
              m[i][j] = a(r[i], c[j]);
            }
          }
          g = gcd(g, det(m));
        }
      }
      d.push_back(g);
    }
    return d;
  }

  // Invariant factors from determinantal divisors.
  inline std::vector<Integer> oracle_factors(IntMatrix const& a) {
    auto const           d = determinantal_divisors(a);
    std::vector<Integer> s;
    Integer              prev = 1;
    for (auto const& x : d) {
      if (x == 0) {
        s.push_back(0);
        prev = 0;
      } else {
        s.push_back(x / prev);
        prev = x;
      }
    }
    return s;
  }

  inline std::size_t oracle_rank(IntMatrix const& a) {
    auto const  d = determinantal_divisors(a);
    std::size_t r = 0;
    while (r < d.size() && d[r] != 0) {
      ++r;
    }
    return r;
  }

  inline bool is_diagonal(IntMatrix const& s) {
    for (std::size_t i = 0; i < s.rows(); ++i) {
      for (std::size_t j = 0; j < s.cols(); ++j) {
        if (i != j && s(i, j) != 0) {
          return false;
        }
      }
    }
    return true;
  }

  // Every tuple of target elements, every relator evaluated.
  inline std::vector<std::vector<Perm>> all_homs(Presentation const& p,
                                                 PermGroup const&    target) {
    auto const&                    elems = target.elements();
    auto const                     n     = p.num_generators();
    std::vector<std::size_t>       idx(n, 0);
    std::vector<std::vector<Perm>> out;
    while (true) {
      std::vector<Perm> images;
      for (auto i : idx) {
        images.push_back(elems[i]);
      }
      bool ok = true;
      for (auto const& r : p.relators()) {
        ok = ok && evaluate(r, images, target.degree()).is_identity();
      }
      if (ok) {
        out.push_back(std::move(images));
      }
      std::size_t k = 0;
      while (k < n && ++idx[k] == elems.size()) {
        idx[k++] = 0;
      }
      if (k == n) {
        return out;
      }
    }
  }

  inline bool generates(std::vector<Perm> const& images, PermGroup const& target) {
    auto const c = closure(images, target.degree(), target.elements().size());
    return c && c->size() == target.elements().size();
  }

  inline std::size_t epi_count(Presentation const& p, PermGroup const& target) {
    std::size_t n = 0;
    for (auto const& h : all_homs(p, target)) {
      n += generates(h, target) ? 1 : 0;
    }
    return n;
  }

  // Epimorphisms from G x G: pairs of homs from G with elementwise
  // commuting images that jointly generate.
  inline std::size_t epi_count_square(Presentation const& p, PermGroup const& target) {
    auto const  homs = all_homs(p, target);
    std::size_t n    = 0;
    for (auto const& f : homs) {
      for (auto const& g : homs) {
        bool commute = true;
        for (auto const& x : f) {
          for (auto const& y : g) {
            commute = commute && x * y == y * x;
          }
        }
        if (!commute) {
          continue;
        }
        auto both = f;
        both.insert(both.end(), g.begin(), g.end());
        n += generates(both, target) ? 1 : 0;
      }
    }
    return n;
  }

}  // namespace fpgrp::test::oracle

#endif  // FPGRP_TESTS_ORACLES_HPP_
