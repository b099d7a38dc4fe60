#ifndef FPGRP_COSET_HPP_
#define FPGRP_COSET_HPP_

// Coset enumeration, Reidemeister-Schreier rewriting and low-index subgroups.
//
// Cosets are numbered from 0 (the subgroup itself). A table column is
// 2 * g for generator g and 2 * g + 1 for its inverse; standardized tables
// number cosets in breadth-first order, visiting columns in that order.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "budget.hpp"
#include "errors.hpp"
#include "json.hpp"
#include "presentation.hpp"
#include "word.hpp"

namespace fpgrp {

  constexpr std::size_t column_of(Letter l) noexcept {
    return 2 * generator_of(l) + (is_inverse(l) ? 1 : 0);
  }

  class CosetTable {
   public:
    CosetTable() = default;

    /// action[column][coset]
    CosetTable(std::size_t                             num_generators,
               std::vector<std::vector<std::uint32_t>> action,
               std::vector<Word>                       subgroup_gens)
        : ngens_(num_generators),
          action_(std::move(action)),
          subgroup_(std::move(subgroup_gens)) {
      if (action_.size() != 2 * ngens_) {
        throw DomainError("coset table: need two columns per generator");
      }
      standardized_ = is_standard();
    }

    std::size_t size() const noexcept {
      return action_.empty() ? 1 : action_[0].size();
    }
    std::size_t num_generators() const noexcept {
      return ngens_;
    }
    std::vector<Word> const& subgroup_gens() const noexcept {
      return subgroup_;
    }
    bool standardized() const noexcept {
      return standardized_;
    }
    std::vector<std::uint32_t> const& column(std::size_t col) const {
      return action_.at(col);
    }

    std::uint32_t act(std::uint32_t c, Letter l) const {
      return action_[column_of(l)][c];
    }

    std::uint32_t trace(std::uint32_t c, Word const& w) const {
      for (Letter l : w) {
        c = act(c, l);
      }
      return c;
    }

    /// Checks every table invariant against p. Returns a description of the
    /// first violation, or nothing when the table is a valid certificate.
    std::optional<std::string> check(Presentation const& p) const {
      if (ngens_ != p.num_generators()) {
        return "generator count differs from the presentation";
      }
      auto const n = size();
      for (std::size_t g = 0; g < ngens_; ++g) {
        auto const& fw = action_[2 * g];
        auto const& bw = action_[2 * g + 1];
        if (fw.size() != n || bw.size() != n) {
          return "column sizes differ";
        }
        for (std::size_t c = 0; c < n; ++c) {
          if (fw[c] >= n || bw[fw[c]] != c) {
            return "generator " + p.alphabet().name(g)
                   + " does not act as a bijection with its inverse";
          }
        }
      }
      for (std::size_t i = 0; i < p.num_relators(); ++i) {
        for (std::uint32_t c = 0; c < n; ++c) {
          if (trace(c, p.relator(i)) != c) {
            return "relator " + std::to_string(i + 1)
                   + " does not close at coset " + std::to_string(c);
          }
        }
      }
      for (std::size_t i = 0; i < subgroup_.size(); ++i) {
        if (trace(0, subgroup_[i]) != 0) {
          return "subgroup generator " + std::to_string(i + 1)
                 + " does not fix coset 0";
        }
      }
      return std::nullopt;
    }

    /// Breadth-first renumbering starting from `root`.
    CosetTable rerooted(std::uint32_t root) const {
      auto const n = size();
      std::vector<std::uint32_t> order;
      std::vector<std::uint32_t> label(n, UINT32_MAX);
      order.reserve(n);
      order.push_back(root);
      label[root] = 0;
      for (std::size_t i = 0; i < order.size(); ++i) {
        for (auto const& col : action_) {
          auto const d = col[order[i]];
          if (label[d] == UINT32_MAX) {
            label[d] = static_cast<std::uint32_t>(order.size());
            order.push_back(d);
          }
        }
      }
      std::vector<std::vector<std::uint32_t>> act(
          action_.size(), std::vector<std::uint32_t>(order.size()));
      for (std::size_t col = 0; col < action_.size(); ++col) {
        for (std::size_t i = 0; i < order.size(); ++i) {
          act[col][i] = label[action_[col][order[i]]];
        }
      }
      return CosetTable(ngens_, std::move(act), subgroup_);
    }

    CosetTable standardize() const {
      return rerooted(0);
    }

    bool is_standard() const {
      auto const     n    = size();
      std::uint32_t  next = 1;
      for (std::uint32_t c = 0; c < n && next < n; ++c) {
        for (auto const& col : action_) {
          auto const d = col[c];
          if (d == next) {
            ++next;
          } else if (d > next) {
            return false;
          }
        }
      }
      return true;
    }

    /// Coset representatives along the breadth-first spanning tree; requires
    /// a standardized table.
    std::vector<Word> representatives() const {
      auto const        n = size();
      std::vector<Word> rep(n);
      std::vector<bool> seen(n, false);
      seen[0] = true;
      for (std::uint32_t c = 0; c < n; ++c) {
        for (std::size_t col = 0; col < action_.size(); ++col) {
          auto const d = action_[col][c];
          if (!seen[d]) {
            seen[d] = true;
            rep[d]  = rep[c];
            rep[d].push_back(letter(col / 2, col % 2 == 1));
          }
        }
      }
      return rep;
    }

    friend bool operator==(CosetTable const& a, CosetTable const& b) {
      return a.ngens_ == b.ngens_ && a.action_ == b.action_;
    }

   private:
    std::size_t                             ngens_ = 0;
    std::vector<std::vector<std::uint32_t>> action_;
    std::vector<Word>                       subgroup_;
    bool                                    standardized_ = false;
  };

  struct Exhausted {
    std::string reason;
    std::size_t live_cosets    = 0;
    std::size_t defined_cosets = 0;
  };

  using EnumerationResult = std::variant<CosetTable, Exhausted>;

  namespace detail {

    // Cyclic conjugates of the relators and their inverses, grouped by first
    // column. Each cyclic word is stored twice over so a conjugate is a
    // pointer into it.
    class RelatorConjugates {
     public:
      struct View {
        std::uint32_t const* data;
        std::size_t          size;

        std::uint32_t operator[](std::size_t i) const {
          return data[i];
        }
      };

      explicit RelatorConjugates(Presentation const& p)
          : by_column_(2 * p.num_generators()) {
        for (auto const& r : p.relators()) {
          Word const core = cyclic_reduce(r).core;
          if (core.empty()) {
            continue;
          }
          auto const root   = proper_power_root(core);
          auto const period = root ? root->size() : core.size();
          for (Word const& w : {core, inverse(core)}) {
            std::vector<std::uint32_t> cols;
            cols.reserve(2 * w.size());
            for (int rep = 0; rep < 2; ++rep) {
              for (Letter l : w) {
                cols.push_back(static_cast<std::uint32_t>(column_of(l)));
              }
            }
            auto const id = words_.size();
            for (std::size_t k = 0; k < period; ++k) {
              by_column_[cols[k]].emplace_back(id, k);
            }
            words_.push_back(std::move(cols));
          }
        }
      }

      std::size_t count(std::uint32_t col) const {
        return by_column_[col].size();
      }

      View get(std::uint32_t col, std::size_t i) const {
        auto const [id, k] = by_column_[col][i];
        return {words_[id].data() + k, words_[id].size() / 2};
      }

     private:
      std::vector<std::vector<std::uint32_t>>                   words_;
      std::vector<std::vector<std::pair<std::size_t, std::size_t>>> by_column_;
    };

    inline std::vector<std::uint32_t> columns(Word const& w) {
      std::vector<std::uint32_t> cols;
      for (Letter l : w) {
        cols.push_back(static_cast<std::uint32_t>(column_of(l)));
      }
      return cols;
    }

    // HLT enumeration with a deduction stack and the standard coincidence
    // procedure. The cap bounds the number of live cosets.
    class Enumerator {
     public:
      static constexpr std::int32_t kUndef = -1;

      Enumerator(Presentation const& p,
                 std::vector<Word>   subgroup,
                 std::size_t         cap,
                 Deadline            deadline)
          : ncols_(2 * p.num_generators()),
            cap_(cap),
            deadline_(deadline),
            subgroup_(std::move(subgroup)),
            conj_(p) {
        for (auto const& r : p.relators()) {
          auto const core = cyclic_reduce(r).core;
          if (!core.empty()) {
            relators_.push_back(columns(core));
          }
        }
        new_coset();
      }

      EnumerationResult run() {
        if (ncols_ == 0) {
          return CosetTable(0, {}, subgroup_);
        }
        for (auto const& h : subgroup_) {
          auto const cols = columns(free_reduce(h));
          if (!cols.empty() && !scan_and_fill(0, cols)) {
            return exhausted();
          }
          if (!process_deductions()) {
            return exhausted();
          }
        }
        for (std::int32_t c = 0; c < static_cast<std::int32_t>(fwd_.size());
             ++c) {
          if (!live(c)) {
            continue;
          }
          for (auto const& r : relators_) {
            if (!live(c)) {
              break;
            }
            if (!scan_and_fill(c, r) || !process_deductions()) {
              return exhausted();
            }
          }
          for (std::uint32_t x = 0; x < ncols_ && live(c); ++x) {
            if (entry(c, x) == kUndef) {
              if (!define(c, x) || !process_deductions()) {
                return exhausted();
              }
            }
          }
          if (live(c) && fwd_.size() > 2 * live_ + 1024) {
            compact(c);
          }
        }
        return finish();
      }

     private:
      std::int32_t& entry(std::int32_t c, std::uint32_t x) {
        return table_[static_cast<std::size_t>(c) * ncols_ + x];
      }

      bool live(std::int32_t c) const {
        return fwd_[c] == c;
      }

      std::int32_t new_coset() {
        auto const c = static_cast<std::int32_t>(fwd_.size());
        fwd_.push_back(c);
        table_.resize(table_.size() + ncols_, kUndef);
        ++live_;
        ++defined_;
        return c;
      }

      bool define(std::int32_t c, std::uint32_t x) {
        if (live_ >= cap_) {
          if (!lookahead() || live_ >= cap_) {
            reason_ = "coset cap of " + std::to_string(cap_) + " reached";
            return false;
          }
          if (!live(c) || entry(c, x) != kUndef) {
            return true;
          }
        }
        if ((defined_ & 255) == 0 && deadline_.expired()) {
          reason_ = "time limit reached";
          return false;
        }
        auto const d   = new_coset();
        entry(c, x)    = d;
        entry(d, x ^ 1) = c;
        deductions_.emplace_back(c, x);
        return true;
      }

      // Scan every relator at every live coset without defining; frees
      // cosets through coincidences.
      bool lookahead() {
        if (in_lookahead_) {
          return false;
        }
        in_lookahead_ = true;
        for (std::int32_t c = 0; c < static_cast<std::int32_t>(fwd_.size());
             ++c) {
          for (auto const& r : relators_) {
            if (!live(c)) {
              break;
            }
            scan(c, {r.data(), r.size()});
          }
          if (!process_deductions()) {
            in_lookahead_ = false;
            return false;
          }
        }
        in_lookahead_ = false;
        return true;
      }

      std::int32_t rep(std::int32_t c) {
        std::int32_t r = c;
        while (fwd_[r] != r) {
          r = fwd_[r];
        }
        while (fwd_[c] != r) {
          auto const n = fwd_[c];
          fwd_[c]      = r;
          c            = n;
        }
        return r;
      }

      void merge(std::int32_t a, std::int32_t b) {
        a = rep(a);
        b = rep(b);
        if (a == b) {
          return;
        }
        auto const lo = std::min(a, b), hi = std::max(a, b);
        fwd_[hi]      = lo;
        --live_;
        queue_.push_back(hi);
      }

      void coincidence(std::int32_t a, std::int32_t b) {
        queue_.clear();
        merge(a, b);
        for (std::size_t i = 0; i < queue_.size(); ++i) {
          auto const g = queue_[i];
          for (std::uint32_t x = 0; x < ncols_; ++x) {
            auto const d = entry(g, x);
            if (d == kUndef) {
              continue;
            }
            if (entry(d, x ^ 1) == g) {
              entry(d, x ^ 1) = kUndef;
            }
            auto const mu = rep(g);
            auto const nu = rep(d);
            if (entry(mu, x) != kUndef) {
              merge(nu, entry(mu, x));
            } else if (entry(nu, x ^ 1) != kUndef) {
              merge(mu, entry(nu, x ^ 1));
            } else {
              entry(mu, x)     = nu;
              entry(nu, x ^ 1) = mu;
              deductions_.emplace_back(mu, x);
            }
          }
        }
      }

      // Returns false only on budget exhaustion.
      bool scan_and_fill(std::int32_t a, std::vector<std::uint32_t> const& w) {
        std::size_t  i = 0, j = w.size();
        std::int32_t f = a, b = a;
        while (true) {
          while (i < j && entry(f, w[i]) != kUndef) {
            f = entry(f, w[i++]);
          }
          if (i == j) {
            if (f != b) {
              coincidence(f, b);
            }
            return true;
          }
          while (j > i && entry(b, w[j - 1] ^ 1) != kUndef) {
            b = entry(b, w[--j] ^ 1);
          }
          if (j == i) {
            coincidence(f, b);
            return true;
          }
          if (j == i + 1) {
            entry(f, w[i])     = b;
            entry(b, w[i] ^ 1) = f;
            deductions_.emplace_back(f, w[i]);
            return true;
          }
          if (!define(f, w[i])) {
            return false;
          }
          if (!live(a)) {
            return true;
          }
          f = rep(f);
          b = rep(b);
        }
      }

      void scan(std::int32_t a, RelatorConjugates::View w) {
        std::size_t  i = 0, j = w.size;
        std::int32_t f = a, b = a;
        while (i < j && entry(f, w[i]) != kUndef) {
          f = entry(f, w[i++]);
        }
        if (i == j) {
          if (f != a) {
            coincidence(f, a);
          }
          return;
        }
        while (j > i && entry(b, w[j - 1] ^ 1) != kUndef) {
          b = entry(b, w[--j] ^ 1);
        }
        if (j == i) {
          coincidence(f, b);
        } else if (j == i + 1) {
          entry(f, w[i])     = b;
          entry(b, w[i] ^ 1) = f;
          deductions_.emplace_back(f, w[i]);
        }
      }

      bool process_deductions() {
        while (!deductions_.empty()) {
          auto const [c, x] = deductions_.back();
          deductions_.pop_back();
          if (!live(c)) {
            continue;
          }
          for (std::size_t i = 0; i < conj_.count(x) && live(c); ++i) {
            scan(c, conj_.get(x, i));
          }
          if (!live(c)) {
            continue;
          }
          auto const d = entry(c, x);
          if (d == kUndef || !live(d)) {
            continue;
          }
          for (std::size_t i = 0; i < conj_.count(x ^ 1) && live(d); ++i) {
            scan(d, conj_.get(x ^ 1, i));
          }
        }
        return true;
      }

      void compact(std::int32_t& cursor) {
        std::vector<std::int32_t> label(fwd_.size(), kUndef);
        std::int32_t              n = 0;
        for (std::size_t c = 0; c < fwd_.size(); ++c) {
          if (fwd_[c] == static_cast<std::int32_t>(c)) {
            label[c] = n++;
          }
        }
        std::vector<std::int32_t> table(static_cast<std::size_t>(n) * ncols_);
        for (std::size_t c = 0; c < fwd_.size(); ++c) {
          if (label[c] == kUndef) {
            continue;
          }
          for (std::uint32_t x = 0; x < ncols_; ++x) {
            auto const e = table_[c * ncols_ + x];
            table[static_cast<std::size_t>(label[c]) * ncols_ + x]
                = e == kUndef ? kUndef : label[e];
          }
        }
        // The cursor is live: it was just processed.
        cursor = label[cursor];
        table_.swap(table);
        fwd_.resize(n);
        for (std::int32_t c = 0; c < n; ++c) {
          fwd_[c] = c;
        }
      }

      EnumerationResult exhausted() {
        return Exhausted{reason_, live_, defined_};
      }

      EnumerationResult finish() {
        std::vector<std::int32_t> label(fwd_.size(), kUndef);
        std::uint32_t             n = 0;
        for (std::size_t c = 0; c < fwd_.size(); ++c) {
          if (live(static_cast<std::int32_t>(c))) {
            label[c] = static_cast<std::int32_t>(n++);
          }
        }
        std::vector<std::vector<std::uint32_t>> act(
            ncols_, std::vector<std::uint32_t>(n));
        for (std::size_t c = 0; c < fwd_.size(); ++c) {
          if (label[c] == kUndef) {
            continue;
          }
          for (std::uint32_t x = 0; x < ncols_; ++x) {
            auto const e = table_[c * ncols_ + x];
            if (e == kUndef || label[e] == kUndef) {
              throw Error("coset enumeration finished with an incomplete table");
            }
            act[x][label[c]] = static_cast<std::uint32_t>(label[e]);
          }
        }
        return CosetTable(ncols_ / 2, std::move(act), subgroup_).standardize();
      }

      std::uint32_t                                           ncols_;
      std::size_t                                             cap_;
      Deadline                                                deadline_;
      std::vector<Word>                                       subgroup_;
      RelatorConjugates                                       conj_;
      std::vector<std::vector<std::uint32_t>>                 relators_;
      std::vector<std::int32_t>                               table_;
      std::vector<std::int32_t>                               fwd_;
      std::vector<std::int32_t>                               queue_;
      std::vector<std::pair<std::int32_t, std::uint32_t>>     deductions_;
      std::size_t                                             live_    = 0;
      std::size_t                                             defined_ = 0;
      bool                                                    in_lookahead_ = false;
      std::string                                             reason_;
    };

  }  // namespace detail

  /// Enumerates the cosets of <subgroup> in the group of p. The result is a
  /// complete standardized table, or Exhausted when more than
  /// budget.max_cosets cosets are live at once or time runs out.
  inline EnumerationResult todd_coxeter(Presentation const&      p,
                                        std::vector<Word> const& subgroup,
                                        Budget const&            budget = {}) {
    if (budget.max_cosets < 1) {
      throw DomainError("todd_coxeter: max_cosets must be at least 1");
    }
    for (auto const& h : subgroup) {
      if (h.generator_bound() > p.num_generators()) {
        throw DomainError("todd_coxeter: subgroup generator uses foreign letters");
      }
    }
    detail::Enumerator e(p, subgroup, budget.max_cosets, Deadline::from(budget));
    auto               res = e.run();
    if (auto const* t = std::get_if<CosetTable>(&res)) {
      if (auto err = t->check(p)) {
        throw Error("coset enumeration produced an invalid table: " + *err);
      }
    }
    return res;
  }

  /// Order of the group when the enumeration over the trivial subgroup
  /// completes.
  inline std::optional<std::size_t> group_order(Presentation const& p,
                                                Budget const&       budget = {}) {
    auto res = todd_coxeter(p, {}, budget);
    if (auto const* t = std::get_if<CosetTable>(&res)) {
      return t->size();
    }
    return std::nullopt;
  }

  ////////////////////////////////////////////////////////////////////////
  // Reidemeister-Schreier
  ////////////////////////////////////////////////////////////////////////

  /// Subgroup presentation on Schreier generators s_(c,g) = t_c g t_(cg)^-1
  /// for the non-tree edges (c, g) in (coset, generator) order.
  class SchreierRewriter {
   public:
    SchreierRewriter(CosetTable t) : t_(std::move(t)) {
      if (!t_.standardized()) {
        throw PreconditionError("Reidemeister-Schreier needs a standardized table");
      }
      auto const n  = t_.size();
      auto const ng = t_.num_generators();
      reps_         = t_.representatives();
      // tree edges: coset d discovered from c via column col
      std::vector<bool> tree(n * 2 * ng, false);
      std::vector<bool> seen(n, false);
      seen[0] = true;
      for (std::uint32_t c = 0; c < n; ++c) {
        for (std::size_t col = 0; col < 2 * ng; ++col) {
          auto const d = t_.column(col)[c];
          if (!seen[d]) {
            seen[d] = true;
            if (col % 2 == 0) {
              tree[c * 2 * ng + col] = true;
            } else {
              tree[d * 2 * ng + (col - 1)] = true;  // d g = c
            }
          }
        }
      }
      index_.assign(n * ng, -1);
      for (std::uint32_t c = 0; c < n; ++c) {
        for (std::size_t g = 0; g < ng; ++g) {
          if (!tree[c * 2 * ng + 2 * g]) {
            index_[c * ng + g] = static_cast<std::int64_t>(edges_.size());
            edges_.emplace_back(c, g);
          }
        }
      }
    }

    CosetTable const& table() const noexcept {
      return t_;
    }
    std::size_t num_schreier_generators() const noexcept {
      return edges_.size();
    }
    std::vector<Word> const& representatives() const noexcept {
      return reps_;
    }
    std::pair<std::uint32_t, std::size_t> edge(std::size_t i) const {
      return edges_.at(i);
    }

    /// s_i as a word over the original generators.
    Word schreier_word(std::size_t i) const {
      auto const [c, g] = edges_.at(i);
      auto const d      = t_.act(c, letter(g));
      return free_reduce(reps_[c] * Word{letter(g)} * inverse(reps_[d]));
    }

    /// Rewrites w read from coset `start` as a word in the Schreier
    /// generators (generator i is letter(i)). Also returns the end coset.
    std::pair<Word, std::uint32_t> rewrite(Word const&   w,
                                           std::uint32_t start = 0) const {
      auto const    ng = t_.num_generators();
      Word          out;
      std::uint32_t c = start;
      for (Letter l : w) {
        auto const g = generator_of(l);
        if (!is_inverse(l)) {
          auto const s = index_[c * ng + g];
          if (s >= 0) {
            out.push_reduced(letter(static_cast<std::size_t>(s)));
          }
          c = t_.act(c, l);
        } else {
          auto const d = t_.act(c, l);
          auto const s = index_[d * ng + g];
          if (s >= 0) {
            out.push_reduced(letter(static_cast<std::size_t>(s), true));
          }
          c = d;
        }
      }
      return {out, c};
    }

    /// Names s1, s2, ... and relators: every relator rewritten at every
    /// coset, identities dropped.
    Presentation presentation(Presentation const& p) const {
      std::vector<std::string> names;
      for (std::size_t i = 0; i < edges_.size(); ++i) {
        names.push_back("s" + std::to_string(i + 1));
      }
      Presentation out{Alphabet(names)};
      for (std::uint32_t c = 0; c < t_.size(); ++c) {
        for (auto const& r : p.relators()) {
          auto [w, end] = rewrite(r, c);
          if (end != c) {
            throw Error("Reidemeister-Schreier: relator does not close");
          }
          if (!w.empty()) {
            out.add_relator(w);
          }
        }
      }
      return out;
    }

   private:
    CosetTable                                         t_;
    std::vector<Word>                                  reps_;
    std::vector<std::int64_t>                          index_;
    std::vector<std::pair<std::uint32_t, std::size_t>> edges_;
  };

  inline Presentation reidemeister_schreier(Presentation const& p,
                                            CosetTable const&   t) {
    if (auto err = t.check(p)) {
      throw PreconditionError("Reidemeister-Schreier: " + *err);
    }
    return SchreierRewriter(t).presentation(p);
  }

  ////////////////////////////////////////////////////////////////////////
  // Low-index subgroups
  ////////////////////////////////////////////////////////////////////////

  struct IndexCount {
    std::size_t index      = 0;
    std::size_t subgroups  = 0;  // total
    std::size_t classes    = 0;  // conjugacy classes
    bool        partial    = false;
  };

  struct Fingerprint {
    std::size_t             bound = 0;
    std::vector<IndexCount> counts;  // indices 1..bound
    bool                    exhausted  = false;
    bool                    consistent = true;  // class sizes sum to totals

    std::size_t proper_subgroups() const {
      std::size_t s = 0;
      for (auto const& c : counts) {
        if (c.index > 1) {
          s += c.subgroups;
        }
      }
      return s;
    }
  };

  namespace detail {

    class LowIndexSearch {
     public:
      static constexpr std::int32_t kUndef = -1;

      LowIndexSearch(Presentation const& p, std::size_t bound, Deadline d)
          : ncols_(static_cast<std::uint32_t>(2 * p.num_generators())),
            bound_(bound),
            deadline_(d),
            conj_(p),
            table_(bound * ncols_, kUndef) {
        fp_.bound = bound;
        for (std::size_t k = 1; k <= bound; ++k) {
          fp_.counts.push_back({k, 0, 0, false});
        }
      }

      Fingerprint run() {
        n_ = 1;
        if (ncols_ == 0) {
          record();
        } else {
          search();
        }
        if (aborted_) {
          fp_.exhausted = true;
          for (auto& c : fp_.counts) {
            c.partial = c.index > 1;
          }
        }
        return fp_;
      }

     private:
      std::int32_t& entry(std::size_t c, std::uint32_t x) {
        return table_[c * ncols_ + x];
      }

      void set(std::size_t c, std::uint32_t x, std::int32_t d) {
        entry(c, x)                         = d;
        entry(static_cast<std::size_t>(d), x ^ 1) = static_cast<std::int32_t>(c);
        undo_.push_back(c * ncols_ + x);
        undo_.push_back(static_cast<std::size_t>(d) * ncols_ + (x ^ 1));
        pending_.emplace_back(static_cast<std::int32_t>(c), x);
      }

      void rollback(std::size_t mark) {
        while (undo_.size() > mark) {
          table_[undo_.back()] = kUndef;
          undo_.pop_back();
        }
      }

      // false on inconsistency
      bool scan(std::int32_t a, RelatorConjugates::View w) {
        std::size_t  i = 0, j = w.size;
        std::int32_t f = a, b = a;
        while (i < j && entry(f, w[i]) != kUndef) {
          f = entry(f, w[i++]);
        }
        if (i == j) {
          return f == a;
        }
        while (j > i && entry(b, w[j - 1] ^ 1) != kUndef) {
          b = entry(b, w[--j] ^ 1);
        }
        if (j == i) {
          return f == b;
        }
        if (j == i + 1) {
          if (entry(b, w[i] ^ 1) != kUndef) {
            return false;
          }
          set(f, w[i], b);
        }
        return true;
      }

      bool propagate() {
        while (!pending_.empty()) {
          auto const [c, x] = pending_.back();
          pending_.pop_back();
          for (std::size_t i = 0; i < conj_.count(x); ++i) {
            if (!scan(c, conj_.get(x, i))) {
              pending_.clear();
              return false;
            }
          }
          auto const d = entry(c, x);
          for (std::size_t i = 0; i < conj_.count(x ^ 1); ++i) {
            if (!scan(d, conj_.get(x ^ 1, i))) {
              pending_.clear();
              return false;
            }
          }
        }
        return true;
      }

      void search() {
        if (aborted_ || ((++nodes_ & 4095) == 0 && deadline_.expired())) {
          aborted_ = true;
          return;
        }
        std::size_t pos = 0;
        while (pos < n_ * ncols_ && table_[pos] != kUndef) {
          ++pos;
        }
        if (pos == n_ * ncols_) {
          record();
          return;
        }
        auto const c = pos / ncols_;
        auto const x = static_cast<std::uint32_t>(pos % ncols_);
        for (std::size_t d = 0; d <= n_ && d < bound_; ++d) {
          if (d < n_ && entry(d, x ^ 1) != kUndef) {
            continue;
          }
          auto const mark  = undo_.size();
          auto const saved = n_;
          if (d == n_) {
            ++n_;
          }
          set(c, x, static_cast<std::int32_t>(d));
          if (propagate()) {
            search();
          }
          rollback(mark);
          n_ = saved;
          if (aborted_) {
            return;
          }
        }
      }

      CosetTable snapshot() const {
        std::vector<std::vector<std::uint32_t>> act(
            ncols_, std::vector<std::uint32_t>(n_));
        for (std::size_t c = 0; c < n_; ++c) {
          for (std::uint32_t x = 0; x < ncols_; ++x) {
            act[x][c] = static_cast<std::uint32_t>(table_[c * ncols_ + x]);
          }
        }
        return CosetTable(ncols_ / 2, std::move(act), {});
      }

      void record() {
        auto& cnt = fp_.counts[n_ - 1];
        ++cnt.subgroups;
        class_sizes_.resize(bound_, 0);
        if (ncols_ == 0) {
          ++cnt.classes;
          ++class_sizes_[0];
          return;
        }
        auto const  t        = snapshot();
        std::size_t stab     = 0;
        bool        minimal  = true;
        for (std::uint32_t k = 0; k < n_; ++k) {
          auto const r = t.rerooted(k);
          if (r == t) {
            ++stab;
          } else if (less(r, t)) {
            minimal = false;
            break;
          }
        }
        if (minimal) {
          ++cnt.classes;
          class_sizes_[n_ - 1] += n_ / stab;
          if (n_ % stab != 0) {
            fp_.consistent = false;
          }
        }
      }

      static bool less(CosetTable const& a, CosetTable const& b) {
        for (std::size_t c = 0; c < a.size(); ++c) {
          for (std::size_t x = 0; x < 2 * a.num_generators(); ++x) {
            auto const u = a.column(x)[c], v = b.column(x)[c];
            if (u != v) {
              return u < v;
            }
          }
        }
        return false;
      }

     public:
      std::vector<std::size_t> const& class_sizes() const {
        return class_sizes_;
      }

     private:
      std::uint32_t                                        ncols_;
      std::size_t                                          bound_;
      Deadline                                             deadline_;
      RelatorConjugates                                    conj_;
      std::vector<std::int32_t>                            table_;
      std::vector<std::size_t>                             undo_;
      std::vector<std::pair<std::int32_t, std::uint32_t>>  pending_;
      std::size_t                                          n_       = 1;
      std::size_t                                          nodes_   = 0;
      bool                                                 aborted_ = false;
      std::vector<std::size_t>                             class_sizes_;
      Fingerprint                                          fp_;
    };

  }  // namespace detail

  /// Counts subgroups of every index up to `bound`, in total and up to
  /// conjugacy. On time-out every index above 1 is flagged partial.
  inline Fingerprint low_index(Presentation const& p,
                               std::size_t         bound,
                               Budget const&       budget = {}) {
    if (bound < 1) {
      throw DomainError("low_index: bound must be at least 1");
    }
    detail::LowIndexSearch s(p, bound, Deadline::from(budget));
    Fingerprint            fp = s.run();
    if (!fp.exhausted) {
      auto sizes = s.class_sizes();
      sizes.resize(bound, 0);
      for (std::size_t k = 0; k < bound; ++k) {
        if (sizes[k] != fp.counts[k].subgroups) {
          fp.consistent = false;
        }
      }
    }
    return fp;
  }

  struct FingerprintComparison {
    Fingerprint                first;
    Fingerprint                second;
    bool                       equal     = true;
    bool                       exhausted = false;
    std::optional<std::size_t> first_discrepancy;  // index
  };

  inline FingerprintComparison fingerprint_compare(Presentation const& p1,
                                                   Presentation const& p2,
                                                   std::size_t         bound,
                                                   Budget const& budget = {}) {
    FingerprintComparison r;
    r.first     = low_index(p1, bound, budget);
    r.second    = low_index(p2, bound, budget);
    r.exhausted = r.first.exhausted || r.second.exhausted;
    for (std::size_t k = 0; k < bound; ++k) {
      if (r.first.counts[k].subgroups != r.second.counts[k].subgroups) {
        r.equal             = false;
        r.first_discrepancy = k + 1;
        break;
      }
    }
    return r;
  }

  ////////////////////////////////////////////////////////////////////////
  // JSON
  ////////////////////////////////////////////////////////////////////////

  inline nlohmann::json to_json(CosetTable const& t, Alphabet const& a) {
    nlohmann::json act = nlohmann::json::object();
    for (std::size_t g = 0; g < t.num_generators(); ++g) {
      act[a.name(g)] = t.column(2 * g);
    }
    return {{"index", t.size()},
            {"standardized", t.standardized()},
            {"action", act}};
  }

  inline CosetTable coset_table_from_json(nlohmann::json const& j,
                                          Alphabet const&       a) {
    std::vector<std::vector<std::uint32_t>> act;
    auto const                              n = j.at("index").get<std::size_t>();
    for (std::size_t g = 0; g < a.size(); ++g) {
      auto fw = j.at("action").at(a.name(g)).get<std::vector<std::uint32_t>>();
      if (fw.size() != n) {
        throw DomainError("coset table JSON: wrong column length");
      }
      std::vector<std::uint32_t> bw(n, UINT32_MAX);
      for (std::uint32_t c = 0; c < n; ++c) {
        if (fw[c] >= n || bw[fw[c]] != UINT32_MAX) {
          throw DomainError("coset table JSON: column is not a permutation");
        }
        bw[fw[c]] = c;
      }
      act.push_back(std::move(fw));
      act.push_back(std::move(bw));
    }
    return CosetTable(a.size(), std::move(act), {});
  }

  inline nlohmann::json to_json(Fingerprint const& f) {
    auto arr = nlohmann::json::array();
    for (auto const& c : f.counts) {
      arr.push_back({{"index", c.index},
                     {"subgroups", c.subgroups},
                     {"classes", c.classes},
                     {"partial", c.partial}});
    }
    return {{"bound", f.bound},
            {"counts", arr},
            {"exhausted", f.exhausted},
            {"consistent", f.consistent}};
  }

}  // namespace fpgrp

#endif  // FPGRP_COSET_HPP_
