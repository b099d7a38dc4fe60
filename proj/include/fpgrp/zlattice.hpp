#ifndef FPGRP_ZLATTICE_HPP_
#define FPGRP_ZLATTICE_HPP_

// Exact integer linear algebra: Smith normal form with transforms,
// abelian invariants, lattice membership certificates, coinvariants and
// kernels of maps between finitely presented abelian groups.

#include <algorithm>
#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "errors.hpp"
#include "json.hpp"
#include "presentation.hpp"

namespace fpgrp {

  using Integer = boost::multiprecision::cpp_int;

  class IntMatrix {
   public:
    IntMatrix() = default;

    IntMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}

    IntMatrix(std::initializer_list<std::initializer_list<long long>> rows) {
      rows_ = rows.size();
      cols_ = rows_ == 0 ? 0 : rows.begin()->size();
      for (auto const& r : rows) {
        if (r.size() != cols_) {
          throw DomainError("IntMatrix: ragged initializer");
        }
        for (auto v : r) {
          data_.emplace_back(v);
        }
      }
    }

    static IntMatrix identity(std::size_t n) {
      IntMatrix m(n, n);
      for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = 1;
      }
      return m;
    }

    std::size_t rows() const noexcept {
      return rows_;
    }
    std::size_t cols() const noexcept {
      return cols_;
    }

    Integer& operator()(std::size_t i, std::size_t j) {
      return data_[i * cols_ + j];
    }
    Integer const& operator()(std::size_t i, std::size_t j) const {
      return data_[i * cols_ + j];
    }

    std::vector<Integer> row(std::size_t i) const {
      return {data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_};
    }

    void append_row(std::vector<Integer> const& r) {
      if (rows_ == 0 && data_.empty()) {
        cols_ = r.size();
      }
      if (r.size() != cols_) {
        throw DomainError("IntMatrix: row length mismatch");
      }
      data_.insert(data_.end(), r.begin(), r.end());
      ++rows_;
    }

    void append_rows(IntMatrix const& m) {
      if (rows_ == 0 && data_.empty()) {
        cols_ = m.cols_;
      }
      if (m.cols_ != cols_) {
        throw DomainError("IntMatrix: column count mismatch");
      }
      data_.insert(data_.end(), m.data_.begin(), m.data_.end());
      rows_ += m.rows_;
    }

    bool is_zero() const {
      return std::all_of(data_.begin(), data_.end(), [](Integer const& x) {
        return x == 0;
      });
    }

    std::vector<Integer> const& entries() const noexcept {
      return data_;
    }

    void swap_rows(std::size_t a, std::size_t b) {
      if (a == b) {
        return;
      }
      for (std::size_t j = 0; j < cols_; ++j) {
        std::swap((*this)(a, j), (*this)(b, j));
      }
    }
    void swap_cols(std::size_t a, std::size_t b) {
      if (a == b) {
        return;
      }
      for (std::size_t i = 0; i < rows_; ++i) {
        std::swap((*this)(i, a), (*this)(i, b));
      }
    }
    // row[dst] += q * row[src]
    void add_row(std::size_t dst, std::size_t src, Integer const& q) {
      if (q == 0) {
        return;
      }
      for (std::size_t j = 0; j < cols_; ++j) {
        if ((*this)(src, j) != 0) {
          (*this)(dst, j) += q * (*this)(src, j);
        }
      }
    }
    // col[dst] += q * col[src]
    void add_col(std::size_t dst, std::size_t src, Integer const& q) {
      if (q == 0) {
        return;
      }
      for (std::size_t i = 0; i < rows_; ++i) {
        if ((*this)(i, src) != 0) {
          (*this)(i, dst) += q * (*this)(i, src);
        }
      }
    }
    void negate_row(std::size_t i) {
      for (std::size_t j = 0; j < cols_; ++j) {
        (*this)(i, j) = -(*this)(i, j);
      }
    }
    void negate_col(std::size_t j) {
      for (std::size_t i = 0; i < rows_; ++i) {
        (*this)(i, j) = -(*this)(i, j);
      }
    }

    friend IntMatrix operator*(IntMatrix const& a, IntMatrix const& b) {
      if (a.cols_ != b.rows_) {
        throw DomainError("IntMatrix: dimension mismatch in product");
      }
      IntMatrix c(a.rows_, b.cols_);
      for (std::size_t i = 0; i < a.rows_; ++i) {
        for (std::size_t k = 0; k < a.cols_; ++k) {
          Integer const& x = a(i, k);
          if (x == 0) {
            continue;
          }
          for (std::size_t j = 0; j < b.cols_; ++j) {
            if (b(k, j) != 0) {
              c(i, j) += x * b(k, j);
            }
          }
        }
      }
      return c;
    }

    friend bool operator==(IntMatrix const&, IntMatrix const&) = default;

   private:
    std::size_t          rows_ = 0;
    std::size_t          cols_ = 0;
    std::vector<Integer> data_;
  };

  /// Row vector times matrix.
  inline std::vector<Integer> operator*(std::vector<Integer> const& v,
                                        IntMatrix const&            m) {
    if (v.size() != m.rows()) {
      throw DomainError("IntMatrix: vector length mismatch");
    }
    std::vector<Integer> r(m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (v[i] == 0) {
        continue;
      }
      for (std::size_t j = 0; j < m.cols(); ++j) {
        r[j] += v[i] * m(i, j);
      }
    }
    return r;
  }

  /// U * A * V == S with S diagonal, d_1 | d_2 | ... and all d_i >= 0.
  struct SnfResult {
    IntMatrix S;
    IntMatrix U;
    IntMatrix V;

    std::vector<Integer> diagonal() const {
      std::vector<Integer> d;
      for (std::size_t i = 0; i < std::min(S.rows(), S.cols()); ++i) {
        d.push_back(S(i, i));
      }
      return d;
    }

    std::size_t rank() const {
      std::size_t r = 0;
      for (auto const& d : diagonal()) {
        r += d != 0 ? 1 : 0;
      }
      return r;
    }
  };

  namespace detail {

    inline Integer abs(Integer const& x) {
      return x < 0 ? Integer(-x) : x;
    }

    // Truncating quotient rounded towards the nearest integer, so remainders
    // satisfy |r| <= |d| / 2.
    inline Integer nearest_quotient(Integer const& n, Integer const& d) {
      Integer q = n / d;
      Integer r = n - q * d;
      if (2 * abs(r) > abs(d)) {
        q += ((r < 0) == (d < 0)) ? 1 : -1;
      }
      return q;
    }

    /// Smith normal form, also maintaining U^-1 and V^-1 when requested.
    struct SnfWork {
      IntMatrix A, U, V, Uinv, Vinv;
      bool      track_inverse = false;

      void swap_rows(std::size_t a, std::size_t b) {
        A.swap_rows(a, b);
        U.swap_rows(a, b);
        if (track_inverse) {
          Uinv.swap_cols(a, b);
        }
      }
      void swap_cols(std::size_t a, std::size_t b) {
        A.swap_cols(a, b);
        V.swap_cols(a, b);
        if (track_inverse) {
          Vinv.swap_rows(a, b);
        }
      }
      // row[dst] += q row[src]
      void add_row(std::size_t dst, std::size_t src, Integer const& q) {
        A.add_row(dst, src, q);
        U.add_row(dst, src, q);
        if (track_inverse) {
          Uinv.add_col(src, dst, -q);
        }
      }
      // col[dst] += q col[src]
      void add_col(std::size_t dst, std::size_t src, Integer const& q) {
        A.add_col(dst, src, q);
        V.add_col(dst, src, q);
        if (track_inverse) {
          Vinv.add_row(src, dst, -q);
        }
      }
      void negate_row(std::size_t i) {
        A.negate_row(i);
        U.negate_row(i);
        if (track_inverse) {
          Uinv.negate_col(i);
        }
      }

      void run() {
        auto const m = A.rows();
        auto const n = A.cols();
        for (std::size_t t = 0; t < std::min(m, n); ++t) {
          // Pivot: nonzero entry of least absolute value in the trailing block.
          std::optional<std::pair<std::size_t, std::size_t>> piv;
          for (std::size_t i = t; i < m; ++i) {
            for (std::size_t j = t; j < n; ++j) {
              if (A(i, j) != 0
                  && (!piv || abs(A(i, j)) < abs(A(piv->first, piv->second)))) {
                piv = {i, j};
              }
            }
          }
          if (!piv) {
            break;
          }
          swap_rows(t, piv->first);
          swap_cols(t, piv->second);
          while (true) {
            bool dirty = false;
            for (std::size_t i = t + 1; i < m; ++i) {
              if (A(i, t) != 0) {
                add_row(i, t, -nearest_quotient(A(i, t), A(t, t)));
                dirty = dirty || A(i, t) != 0;
              }
            }
            for (std::size_t j = t + 1; j < n; ++j) {
              if (A(t, j) != 0) {
                add_col(j, t, -nearest_quotient(A(t, j), A(t, t)));
                dirty = dirty || A(t, j) != 0;
              }
            }
            if (dirty) {
              // Bring the smallest remainder in row/column t to the pivot.
              std::size_t bi = t, bj = t;
              for (std::size_t i = t + 1; i < m; ++i) {
                if (A(i, t) != 0 && abs(A(i, t)) < abs(A(bi, bj))) {
                  bi = i;
                  bj = t;
                }
              }
              for (std::size_t j = t + 1; j < n; ++j) {
                if (A(t, j) != 0 && abs(A(t, j)) < abs(A(bi, bj))) {
                  bi = t;
                  bj = j;
                }
              }
              swap_rows(t, bi);
              swap_cols(t, bj);
              continue;
            }
            // Divisibility: the pivot must divide the whole trailing block.
            std::optional<std::size_t> bad;
            for (std::size_t i = t + 1; i < m && !bad; ++i) {
              for (std::size_t j = t + 1; j < n; ++j) {
                if (A(i, j) % A(t, t) != 0) {
                  bad = i;
                  break;
                }
              }
            }
            if (!bad) {
              break;
            }
            add_row(t, *bad, 1);
          }
          if (A(t, t) < 0) {
            negate_row(t);
          }
        }
      }
    };

    inline SnfWork snf_work(IntMatrix const& a, bool track_inverse) {
      SnfWork w;
      w.A             = a;
      w.U             = IntMatrix::identity(a.rows());
      w.V             = IntMatrix::identity(a.cols());
      w.track_inverse = track_inverse;
      if (track_inverse) {
        w.Uinv = IntMatrix::identity(a.rows());
        w.Vinv = IntMatrix::identity(a.cols());
      }
      w.run();
      return w;
    }

  }  // namespace detail

  inline SnfResult smith_normal_form(IntMatrix const& a) {
    auto w = detail::snf_work(a, false);
    return {std::move(w.A), std::move(w.U), std::move(w.V)};
  }

  ////////////////////////////////////////////////////////////////////////
  // Abelian invariants
  ////////////////////////////////////////////////////////////////////////

  /// Z^free_rank + Z/t_1 + ... + Z/t_k with t_i >= 2 and t_i | t_{i+1}.
  struct AbelianInvariants {
    std::size_t          free_rank = 0;
    std::vector<Integer> torsion;

    bool is_trivial() const noexcept {
      return free_rank == 0 && torsion.empty();
    }

    bool is_finite() const noexcept {
      return free_rank == 0;
    }

    /// Order of the torsion subgroup.
    Integer torsion_order() const {
      Integer o = 1;
      for (auto const& t : torsion) {
        o *= t;
      }
      return o;
    }

    /// Prime-power cyclic factors, e.g. Z/12 -> {4, 3}; sorted by prime.
    std::vector<Integer> primary_decomposition() const {
      std::map<Integer, std::vector<Integer>> by_prime;
      for (Integer t : torsion) {
        for (Integer p = 2; p * p <= t; ++p) {
          if (t % p == 0) {
            Integer q = 1;
            while (t % p == 0) {
              t /= p;
              q *= p;
            }
            by_prime[p].push_back(q);
          }
        }
        if (t > 1) {
          by_prime[t].push_back(t);
        }
      }
      std::vector<Integer> out;
      for (auto& [p, qs] : by_prime) {
        std::sort(qs.begin(), qs.end());
        out.insert(out.end(), qs.begin(), qs.end());
      }
      return out;
    }

    std::string to_string() const {
      if (is_trivial()) {
        return "0";
      }
      std::ostringstream os;
      bool               first = true;
      if (free_rank > 0) {
        os << "Z";
        if (free_rank > 1) {
          os << "^" << free_rank;
        }
        first = false;
      }
      for (auto const& t : torsion) {
        os << (first ? "" : " + ") << "Z/" << t;
        first = false;
      }
      return os.str();
    }

    friend bool operator==(AbelianInvariants const&,
                           AbelianInvariants const&) = default;
  };

  /// Canonical invariants from invariant factors (entries 1 dropped, 0 counted
  /// as free rank) of a group on `ngens` generators.
  inline AbelianInvariants invariants_from_diagonal(
      std::vector<Integer> const& diag,
      std::size_t                 ngens) {
    AbelianInvariants inv;
    std::size_t       nonzero = 0;
    for (auto const& d : diag) {
      if (d != 0) {
        ++nonzero;
        if (d != 1) {
          inv.torsion.push_back(d);
        }
      }
    }
    inv.free_rank = ngens - nonzero;
    return inv;
  }

  /// Invariants of Z^ngens / rowspace(relations).
  inline AbelianInvariants cokernel_invariants(IntMatrix const& relations,
                                               std::size_t      ngens) {
    if (relations.rows() == 0) {
      AbelianInvariants inv;
      inv.free_rank = ngens;
      return inv;
    }
    if (relations.cols() != ngens) {
      throw DomainError("cokernel_invariants: column count mismatch");
    }
    return invariants_from_diagonal(smith_normal_form(relations).diagonal(),
                                    ngens);
  }

  /// Rows = relators, columns = generators, entries = exponent sums.
  inline IntMatrix exponent_matrix(Presentation const& p) {
    IntMatrix m(p.num_relators(), p.num_generators());
    for (std::size_t i = 0; i < p.num_relators(); ++i) {
      auto v = exponent_vector(p.relator(i), p.num_generators());
      for (std::size_t j = 0; j < v.size(); ++j) {
        m(i, j) = v[j];
      }
    }
    return m;
  }

  inline AbelianInvariants abelianization(Presentation const& p) {
    return cokernel_invariants(exponent_matrix(p), p.num_generators());
  }

  inline bool is_perfect(Presentation const& p) {
    return abelianization(p).is_trivial();
  }

  ////////////////////////////////////////////////////////////////////////
  // Lattice membership
  ////////////////////////////////////////////////////////////////////////

  namespace detail {
    inline Integer weighted_norm(std::vector<Integer> const& c,
                                 std::vector<Integer> const& weights) {
      Integer n = 0;
      for (std::size_t i = 0; i < c.size(); ++i) {
        n += abs(c[i]) * (weights.empty() ? Integer(1) : weights[i]);
      }
      return n;
    }
  }  // namespace detail

  /// Finds an integer row vector c with c * basis == target, or nullopt when
  /// target is not in the row lattice. The certificate is re-multiplied
  /// before being returned and then greedily shortened along the left kernel
  /// in the (optionally weighted) l1 norm.
  inline std::optional<std::vector<Integer>> lattice_solve(
      std::vector<Integer> const& target,
      IntMatrix const&            basis,
      std::vector<Integer> const& weights = {}) {
    if (target.size() != basis.cols()) {
      throw DomainError("lattice_solve: target length mismatch");
    }
    if (!weights.empty() && weights.size() != basis.rows()) {
      throw DomainError("lattice_solve: weight count mismatch");
    }
    auto const k = basis.rows();
    if (k == 0) {
      bool zero = std::all_of(target.begin(), target.end(), [](auto& x) {
        return x == 0;
      });
      return zero ? std::optional<std::vector<Integer>>(std::vector<Integer>{})
                  : std::nullopt;
    }
    // U M V = S; c M = t  <=>  (c U^-1) S = t V.
    auto const           snf = smith_normal_form(basis);
    std::vector<Integer> tv  = target * snf.V;
    std::vector<Integer> y(k);
    std::size_t const    diag = std::min(k, basis.cols());
    for (std::size_t j = 0; j < basis.cols(); ++j) {
      Integer const d = j < diag ? snf.S(j, j) : Integer(0);
      if (d == 0) {
        if (tv[j] != 0) {
          return std::nullopt;
        }
      } else {
        if (tv[j] % d != 0) {
          return std::nullopt;
        }
        y[j] = tv[j] / d;
      }
    }
    std::vector<Integer> c = y * snf.U;
    if (c * basis != target) {
      throw Error("lattice_solve: certificate failed verification");
    }
    // Left kernel: rows of U past the rank.
    std::vector<std::vector<Integer>> kernel;
    for (std::size_t i = snf.rank(); i < k; ++i) {
      kernel.push_back(snf.U.row(i));
    }
    Integer best     = detail::weighted_norm(c, weights);
    bool    improved = !kernel.empty();
    while (improved) {
      improved = false;
      for (auto const& kv : kernel) {
        for (int sgn : {1, -1}) {
          while (true) {
            std::vector<Integer> cand = c;
            for (std::size_t i = 0; i < k; ++i) {
              cand[i] += sgn * kv[i];
            }
            Integer n = detail::weighted_norm(cand, weights);
            if (n < best) {
              best     = n;
              c        = std::move(cand);
              improved = true;
            } else {
              break;
            }
          }
        }
      }
    }
    if (c * basis != target) {
      throw Error("lattice_solve: certificate failed verification");
    }
    return c;
  }

  ////////////////////////////////////////////////////////////////////////
  // Finitely presented abelian groups
  ////////////////////////////////////////////////////////////////////////

  /// Z^num_generators / rowspace(relations).
  struct FpAbelianGroup {
    std::size_t num_generators = 0;
    IntMatrix   relations;  // k x num_generators (k may be 0)

    AbelianInvariants invariants() const {
      return cokernel_invariants(relations, num_generators);
    }
  };

  /// Coinvariants: the quotient by (A_i - I) rows for each action matrix.
  inline AbelianInvariants coinvariants(FpAbelianGroup const&         g,
                                        std::vector<IntMatrix> const& actions) {
    auto const n = g.num_generators;
    IntMatrix  stacked(0, n);
    if (g.relations.rows() > 0) {
      if (g.relations.cols() != n) {
        throw DomainError("coinvariants: relation matrix has wrong width");
      }
      stacked.append_rows(g.relations);
    }
    for (auto const& a : actions) {
      if (a.rows() != n || a.cols() != n) {
        throw DomainError("coinvariants: action matrix must be "
                          + std::to_string(n) + "x" + std::to_string(n));
      }
      IntMatrix d = a;
      for (std::size_t i = 0; i < n; ++i) {
        d(i, i) -= 1;
      }
      stacked.append_rows(d);
    }
    return cokernel_invariants(stacked, n);
  }

  /// Invariants of the kernel of the map coker(relations) -> Z^m induced by
  /// `map` (one row per generator). Throws DomainError when the map does not
  /// kill the relation lattice.
  inline AbelianInvariants kernel_invariants(FpAbelianGroup const& domain,
                                             IntMatrix const&      map) {
    auto const n = domain.num_generators;
    if (map.rows() != n) {
      throw DomainError("kernel_invariants: map needs one row per generator");
    }
    if (domain.relations.rows() > 0) {
      if (domain.relations.cols() != n) {
        throw DomainError("kernel_invariants: relation matrix has wrong width");
      }
      if (!(domain.relations * map).is_zero()) {
        throw DomainError(
            "kernel_invariants: map is not well defined on the quotient");
      }
    }
    if (map.cols() == 0) {
      return domain.invariants();
    }
    // Left kernel K of the map: rows r.. of U. Relations live in K; their
    // coordinates in that basis come from multiplying by U^-1.
    auto              w    = detail::snf_work(map, true);
    std::size_t       rank = 0;
    std::size_t const diag = std::min(map.rows(), map.cols());
    while (rank < diag && w.A(rank, rank) != 0) {
      ++rank;
    }
    std::size_t const kdim = n - rank;
    IntMatrix         rel(0, kdim);
    for (std::size_t i = 0; i < domain.relations.rows(); ++i) {
      auto coords = domain.relations.row(i) * w.Uinv;
      for (std::size_t j = 0; j < rank; ++j) {
        if (coords[j] != 0) {
          throw Error("kernel_invariants: relation outside kernel");
        }
      }
      rel.append_row({coords.begin() + rank, coords.end()});
    }
    if (rel.rows() == 0) {
      AbelianInvariants inv;
      inv.free_rank = kdim;
      return inv;
    }
    return cokernel_invariants(rel, kdim);
  }

  ////////////////////////////////////////////////////////////////////////
  // JSON
  ////////////////////////////////////////////////////////////////////////

  inline nlohmann::json integer_json(Integer const& x) {
    if (x >= std::numeric_limits<long long>::min()
        && x <= std::numeric_limits<long long>::max()) {
      return static_cast<long long>(x);
    }
    return x.str();
  }

  inline Integer integer_from_json(nlohmann::json const& j) {
    if (j.is_string()) {
      return Integer(j.get<std::string>());
    }
    return Integer(j.get<long long>());
  }

  inline nlohmann::json to_json(IntMatrix const& m) {
    auto e = nlohmann::json::array();
    for (auto const& x : m.entries()) {
      e.push_back(integer_json(x));
    }
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", e}};
  }

  inline IntMatrix matrix_from_json(nlohmann::json const& j) {
    IntMatrix m(j.at("rows").get<std::size_t>(),
                j.at("cols").get<std::size_t>());
    auto const& e = j.at("entries");
    if (e.size() != m.rows() * m.cols()) {
      throw DomainError("matrix JSON: entry count does not match shape");
    }
    for (std::size_t k = 0; k < e.size(); ++k) {
      m(k / m.cols(), k % m.cols()) = integer_from_json(e[k]);
    }
    return m;
  }

  inline nlohmann::json to_json(AbelianInvariants const& inv) {
    auto t = nlohmann::json::array();
    for (auto const& x : inv.torsion) {
      t.push_back(integer_json(x));
    }
    return {{"free_rank", inv.free_rank}, {"torsion", t}};
  }

  inline AbelianInvariants invariants_from_json(nlohmann::json const& j) {
    AbelianInvariants inv;
    inv.free_rank = j.at("free_rank").get<std::size_t>();
    for (auto const& x : j.at("torsion")) {
      inv.torsion.push_back(integer_from_json(x));
    }
    return inv;
  }

}  // namespace fpgrp

#endif  // FPGRP_ZLATTICE_HPP_
