#ifndef FPGRP_PERMREP_HPP_
#define FPGRP_PERMREP_HPP_

// Finite permutation images of finitely presented groups.
//
// Permutations act on {0, ..., n-1} internally and print 1-based in cycle
// notation. Products compose left to right: (p * q)(x) = q(p(x)), so the
// permutation of a word a b is "first a, then b", matching the right action
// of a coset table.

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <thread>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <variant>
#include <vector>

#include "budget.hpp"
#include "coset.hpp"
#include "errors.hpp"
#include "json.hpp"
#include "presentation.hpp"
#include "word.hpp"

namespace fpgrp {

  class Perm {
   public:
    using Point = std::uint32_t;

    Perm() = default;

    explicit Perm(std::size_t degree) : img_(degree) {
      for (std::size_t i = 0; i < degree; ++i) {
        img_[i] = static_cast<Point>(i);
      }
    }

    /// Throws DomainError unless `images` is a bijection of {0..n-1}.
    static Perm from_images(std::vector<Point> images) {
      std::vector<bool> hit(images.size(), false);
      for (auto x : images) {
        if (x >= images.size() || hit[x]) {
          throw DomainError("permutation images do not form a bijection");
        }
        hit[x] = true;
      }
      Perm p;
      p.img_ = std::move(images);
      return p;
    }

    /// Parses 1-based cycle notation such as "(1 2 3)(4 5)" or "(1,2)".
    /// "()" is the identity.
    static Perm from_cycles(std::string_view text, std::size_t degree) {
      Perm        p(degree);
      std::size_t i = 0;
      auto        skip = [&] {
        while (i < text.size()
               && (std::isspace(static_cast<unsigned char>(text[i]))
                   || text[i] == ',')) {
          ++i;
        }
      };
      std::vector<bool> used(degree, false);
      skip();
      while (i < text.size()) {
        if (text[i] != '(') {
          throw DomainError("cycle notation: expected '('");
        }
        ++i;
        std::vector<Point> cyc;
        while (true) {
          skip();
          if (i >= text.size()) {
            throw DomainError("cycle notation: unterminated cycle");
          }
          if (text[i] == ')') {
            ++i;
            break;
          }
          if (!std::isdigit(static_cast<unsigned char>(text[i]))) {
            throw DomainError("cycle notation: expected a point");
          }
          std::size_t v = 0;
          while (i < text.size()
                 && std::isdigit(static_cast<unsigned char>(text[i]))) {
            v = v * 10 + static_cast<std::size_t>(text[i] - '0');
            if (v > degree) {
              throw DomainError("cycle notation: point exceeds degree");
            }
            ++i;
          }
          if (v == 0) {
            throw DomainError("cycle notation: points start at 1");
          }
          if (used[v - 1]) {
            throw DomainError("cycle notation: point repeated");
          }
          used[v - 1] = true;
          cyc.push_back(static_cast<Point>(v - 1));
        }
        for (std::size_t k = 0; k < cyc.size(); ++k) {
          p.img_[cyc[k]] = cyc[(k + 1) % cyc.size()];
        }
        skip();
      }
      return p;
    }

    std::size_t degree() const noexcept {
      return img_.size();
    }
    Point operator()(Point x) const {
      return img_[x];
    }
    std::vector<Point> const& images() const noexcept {
      return img_;
    }

    bool is_identity() const {
      for (std::size_t i = 0; i < img_.size(); ++i) {
        if (img_[i] != i) {
          return false;
        }
      }
      return true;
    }

    Perm inverse() const {
      Perm q;
      q.img_.resize(img_.size());
      for (std::size_t i = 0; i < img_.size(); ++i) {
        q.img_[img_[i]] = static_cast<Point>(i);
      }
      return q;
    }

    /// First this, then q.
    friend Perm operator*(Perm const& p, Perm const& q) {
      if (p.degree() != q.degree()) {
        throw DomainError("permutation degrees differ");
      }
      Perm r;
      r.img_.resize(p.img_.size());
      for (std::size_t i = 0; i < p.img_.size(); ++i) {
        r.img_[i] = q.img_[p.img_[i]];
      }
      return r;
    }

    std::size_t order() const {
      std::size_t       o = 1;
      std::vector<bool> seen(img_.size(), false);
      for (std::size_t i = 0; i < img_.size(); ++i) {
        if (seen[i]) {
          continue;
        }
        std::size_t len = 0;
        for (auto j = static_cast<Point>(i); !seen[j]; j = img_[j]) {
          seen[j] = true;
          ++len;
        }
        o = std::lcm(o, len);
      }
      return o;
    }

    std::string to_cycles() const {
      std::ostringstream os;
      std::vector<bool>  seen(img_.size(), false);
      for (std::size_t i = 0; i < img_.size(); ++i) {
        if (seen[i] || img_[i] == i) {
          continue;
        }
        os << '(';
        for (auto j = static_cast<Point>(i); !seen[j]; j = img_[j]) {
          seen[j] = true;
          if (j != i) {
            os << ' ';
          }
          os << j + 1;
        }
        os << ')';
      }
      auto s = os.str();
      return s.empty() ? "()" : s;
    }

    friend bool operator==(Perm const&, Perm const&)  = default;
    friend auto operator<=>(Perm const&, Perm const&) = default;

   private:
    std::vector<Point> img_;
  };

  struct PermHash {
    std::size_t operator()(Perm const& p) const noexcept {
      std::uint64_t h = 1469598103934665603ULL;
      for (auto x : p.images()) {
        h ^= x;
        h *= 1099511628211ULL;
      }
      return static_cast<std::size_t>(h);
    }
  };

  namespace detail {

    // Generator images with inverses, for repeated evaluation.
    class Evaluator {
     public:
      explicit Evaluator(std::vector<Perm> const& images) {
        for (auto const& p : images) {
          fwd_.push_back(p.images());
          bwd_.push_back(p.inverse().images());
        }
      }

      Perm::Point apply(Perm::Point x, Word const& w) const {
        for (Letter l : w) {
          auto const g = generator_of(l);
          x            = is_inverse(l) ? bwd_[g][x] : fwd_[g][x];
        }
        return x;
      }

      bool kills(Word const& w, std::size_t degree) const {
        for (std::size_t x = 0; x < degree; ++x) {
          if (apply(static_cast<Perm::Point>(x), w) != x) {
            return false;
          }
        }
        return true;
      }

      Perm value(Word const& w, std::size_t degree) const {
        std::vector<Perm::Point> pt(degree);
        for (std::size_t x = 0; x < degree; ++x) {
          pt[x] = apply(static_cast<Perm::Point>(x), w);
        }
        return Perm::from_images(std::move(pt));
      }

     private:
      std::vector<std::vector<Perm::Point>> fwd_, bwd_;
    };

  }  // namespace detail

  /// Image of w when generator g maps to images[g].
  inline Perm evaluate(Word const&              w,
                       std::vector<Perm> const& images,
                       std::size_t              degree) {
    if (w.generator_bound() > images.size()) {
      throw DomainError("evaluate: word uses a generator without an image");
    }
    return detail::Evaluator(images).value(w, degree);
  }

  /// Closure of `gens` under multiplication; nothing when it exceeds `cap`
  /// elements. Elements are returned sorted.
  inline std::optional<std::vector<Perm>> closure(std::vector<Perm> const& gens,
                                                  std::size_t              degree,
                                                  std::size_t              cap) {
    std::unordered_set<Perm, PermHash> seen;
    std::vector<Perm>                  order{Perm(degree)};
    seen.insert(order.front());
    for (std::size_t i = 0; i < order.size(); ++i) {
      for (auto const& g : gens) {
        Perm h = order[i] * g;
        if (seen.insert(h).second) {
          if (seen.size() > cap) {
            return std::nullopt;
          }
          order.push_back(std::move(h));
        }
      }
    }
    std::sort(order.begin(), order.end());
    return order;
  }

  class PermGroup {
   public:
    PermGroup(std::size_t degree, std::vector<Perm> gens, std::string name = {})
        : degree_(degree), gens_(std::move(gens)), name_(std::move(name)) {
      for (auto const& g : gens_) {
        if (g.degree() != degree_) {
          throw DomainError("permutation group: generator degree differs");
        }
      }
    }

    std::size_t degree() const noexcept {
      return degree_;
    }
    std::vector<Perm> const& generators() const noexcept {
      return gens_;
    }
    std::string const& name() const noexcept {
      return name_;
    }

    /// Sorted element list; throws BudgetError beyond `cap` elements.
    std::vector<Perm> const& elements(std::size_t cap = 100'000) const {
      if (!elements_) {
        auto e = closure(gens_, degree_, cap);
        if (!e) {
          throw BudgetError("permutation group has more than "
                            + std::to_string(cap) + " elements");
        }
        elements_ = std::move(*e);
      }
      return *elements_;
    }

    std::size_t order(std::size_t cap = 100'000) const {
      return elements(cap).size();
    }

    bool contains(Perm const& p, std::size_t cap = 100'000) const {
      auto const& e = elements(cap);
      return std::binary_search(e.begin(), e.end(), p);
    }

   private:
    std::size_t                              degree_;
    std::vector<Perm>                        gens_;
    std::string                              name_;
    mutable std::optional<std::vector<Perm>> elements_;
  };

  ////////////////////////////////////////////////////////////////////////
  // Named groups
  ////////////////////////////////////////////////////////////////////////

  inline PermGroup symmetric_group(std::size_t n) {
    std::vector<Perm> g;
    if (n >= 2) {
      std::vector<Perm::Point> cyc(n);
      for (std::size_t i = 0; i < n; ++i) {
        cyc[i] = static_cast<Perm::Point>((i + 1) % n);
      }
      g.push_back(Perm::from_images(cyc));
      g.push_back(Perm::from_cycles("(1 2)", n));
    }
    return PermGroup(n, g, "S" + std::to_string(n));
  }

  inline PermGroup alternating_group(std::size_t n) {
    std::vector<Perm> g;
    for (std::size_t i = 3; i <= n; ++i) {
      g.push_back(Perm::from_cycles(
          "(1 2 " + std::to_string(i) + ")", n));
    }
    return PermGroup(n, g, "A" + std::to_string(n));
  }

  inline PermGroup cyclic_group(std::size_t n) {
    std::vector<Perm::Point> cyc(n);
    for (std::size_t i = 0; i < n; ++i) {
      cyc[i] = static_cast<Perm::Point>((i + 1) % n);
    }
    return PermGroup(n, {Perm::from_images(cyc)}, "C" + std::to_string(n));
  }

  /// Dihedral group of order 2n acting on n points (n >= 3).
  inline PermGroup dihedral_group(std::size_t n) {
    std::vector<Perm::Point> rot(n), ref(n);
    for (std::size_t i = 0; i < n; ++i) {
      rot[i] = static_cast<Perm::Point>((i + 1) % n);
      ref[i] = static_cast<Perm::Point>((n - i) % n);
    }
    return PermGroup(n,
                     {Perm::from_images(rot), Perm::from_images(ref)},
                     "D" + std::to_string(n));
  }

  /// Transitive groups of degree 2..max_degree (max_degree <= 5), one per
  /// conjugacy class in the symmetric group.
  inline std::vector<PermGroup> transitive_groups(std::size_t max_degree) {
    if (max_degree > 5) {
      throw DomainError("transitive_groups: tabulated up to degree 5");
    }
    std::vector<PermGroup> out;
    if (max_degree >= 2) {
      out.push_back(symmetric_group(2));
    }
    if (max_degree >= 3) {
      out.push_back(cyclic_group(3));
      out.push_back(symmetric_group(3));
    }
    if (max_degree >= 4) {
      out.push_back(cyclic_group(4));
      out.push_back(PermGroup(4,
                              {Perm::from_cycles("(1 2)(3 4)", 4),
                               Perm::from_cycles("(1 3)(2 4)", 4)},
                              "V4"));
      out.push_back(dihedral_group(4));
      out.push_back(alternating_group(4));
      out.push_back(symmetric_group(4));
    }
    if (max_degree >= 5) {
      out.push_back(cyclic_group(5));
      out.push_back(dihedral_group(5));
      out.push_back(PermGroup(5,
                              {Perm::from_cycles("(1 2 3 4 5)", 5),
                               Perm::from_cycles("(2 3 5 4)", 5)},
                              "F20"));
      out.push_back(alternating_group(5));
      out.push_back(symmetric_group(5));
    }
    return out;
  }

  /// "S5", "A4", "C6", "D5", "V4", "F20".
  inline PermGroup named_perm_group(std::string const& name) {
    if (name == "V4") {
      return transitive_groups(4)[4];
    }
    if (name == "F20") {
      return transitive_groups(5)[10];
    }
    if (name.size() >= 2 && std::all_of(name.begin() + 1, name.end(), [](char c) {
          return std::isdigit(static_cast<unsigned char>(c));
        })) {
      auto const n = static_cast<std::size_t>(std::stoul(name.substr(1)));
      if (n >= 1 && n <= 64) {
        switch (name[0]) {
          case 'S': return symmetric_group(n);
          case 'A': return alternating_group(n);
          case 'C': return cyclic_group(n);
          case 'D':
            if (n >= 3) {
              return dihedral_group(n);
            }
            break;
          default: break;
        }
      }
    }
    throw DomainError("unknown permutation group '" + name + "'");
  }

  ////////////////////////////////////////////////////////////////////////
  // Homomorphisms
  ////////////////////////////////////////////////////////////////////////

  struct GroupHom {
    Presentation      source;
    std::vector<Perm> images;
    std::size_t       degree = 0;

    Perm operator()(Word const& w) const {
      return detail::Evaluator(images).value(w, degree);
    }
  };

  struct Rejection {
    std::size_t relator;  // index of the first relator not killed
    Word        witness;
  };

  using HomCheck = std::variant<GroupHom, Rejection>;

  inline HomCheck verify_hom(Presentation const& p, std::vector<Perm> images) {
    if (images.size() != p.num_generators()) {
      throw DomainError("verify_hom: need one image per generator");
    }
    std::size_t const degree = images.empty() ? 0 : images.front().degree();
    for (auto const& im : images) {
      if (im.degree() != degree) {
        throw DomainError("verify_hom: images have different degrees");
      }
    }
    detail::Evaluator const ev(images);
    for (std::size_t i = 0; i < p.num_relators(); ++i) {
      if (!ev.kills(p.relator(i), degree)) {
        return Rejection{i, p.relator(i)};
      }
    }
    return GroupHom{p, std::move(images), degree};
  }

  /// Action of the generators on the cosets of a complete table.
  inline std::vector<Perm> coset_action(CosetTable const& t) {
    std::vector<Perm> out;
    for (std::size_t g = 0; g < t.num_generators(); ++g) {
      out.push_back(Perm::from_images(t.column(2 * g)));
    }
    return out;
  }

  /// Regular permutation representation from coset enumeration over the
  /// trivial subgroup; nothing when the enumeration is exhausted.
  inline std::optional<GroupHom> regular_representation(Presentation const& p,
                                                        Budget const& budget = {}) {
    auto res = todd_coxeter(p, {}, budget);
    auto const* t = std::get_if<CosetTable>(&res);
    if (!t) {
      return std::nullopt;
    }
    return std::get<GroupHom>(verify_hom(p, coset_action(*t)));
  }

  struct HomSearchResult {
    std::vector<GroupHom> homs;
    std::vector<bool>     epi;
    bool                  exhausted = false;

    std::size_t epi_count() const {
      return static_cast<std::size_t>(std::count(epi.begin(), epi.end(), true));
    }
    std::size_t nontrivial_count() const {
      std::size_t n = 0;
      for (auto const& h : homs) {
        n += std::any_of(h.images.begin(), h.images.end(),
                         [](Perm const& x) { return !x.is_identity(); })
                 ? 1
                 : 0;
      }
      return n;
    }
  };

  namespace detail {

    class HomSearch {
     public:
      HomSearch(Presentation const&      p,
                std::vector<Perm> const& elems,
                std::size_t              degree,
                Deadline                 deadline)
          : p_(p),
            elems_(elems),
            degree_(degree),
            deadline_(deadline),
            by_last_(p.num_generators()) {
        for (auto const& e : elems_) {
          inv_.push_back(e.inverse().images());
        }
        for (std::size_t i = 0; i < p.num_relators(); ++i) {
          auto const& r = p.relator(i);
          if (r.empty()) {
            continue;
          }
          by_last_[r.generator_bound() - 1].push_back(i);
        }
        choice_.resize(p.num_generators());
      }

      // Enumerates with the first generator's image restricted to `first`.
      std::vector<std::vector<std::size_t>> run(std::size_t first) {
        out_.clear();
        if (p_.num_generators() == 0) {
          out_.emplace_back();
          return out_;
        }
        choice_[0] = first;
        if (consistent(0)) {
          extend(1);
        }
        return out_;
      }

      bool aborted() const {
        return aborted_;
      }

     private:
      bool consistent(std::size_t g) const {
        for (auto i : by_last_[g]) {
          auto const& r = p_.relator(i);
          for (std::size_t x = 0; x < degree_; ++x) {
            auto y = static_cast<Perm::Point>(x);
            for (Letter l : r) {
              auto const k = choice_[generator_of(l)];
              y            = is_inverse(l) ? inv_[k][y] : elems_[k](y);
            }
            if (y != x) {
              return false;
            }
          }
        }
        return true;
      }

      void extend(std::size_t g) {
        if (aborted_ || ((++nodes_ & 1023) == 0 && deadline_.expired())) {
          aborted_ = true;
          return;
        }
        if (g == p_.num_generators()) {
          out_.push_back(choice_);
          return;
        }
        for (std::size_t k = 0; k < elems_.size(); ++k) {
          choice_[g] = k;
          if (consistent(g)) {
            extend(g + 1);
          }
          if (aborted_) {
            return;
          }
        }
      }

      Presentation const&                   p_;
      std::vector<Perm> const&              elems_;
      std::vector<std::vector<Perm::Point>> inv_;
      std::size_t                           degree_;
      Deadline                              deadline_;
      std::vector<std::vector<std::size_t>> by_last_;
      std::vector<std::size_t>              choice_;
      std::vector<std::vector<std::size_t>> out_;
      std::size_t                           nodes_   = 0;
      bool                                  aborted_ = false;
    };

  }  // namespace detail

  /// Every homomorphism from p to target, in lexicographic order of image
  /// tuples (elements sorted). Generator images are chosen in generator
  /// order and each relator is checked as soon as its generators are set.
  inline HomSearchResult hom_search(Presentation const& p,
                                    PermGroup const&    target,
                                    Budget const&       budget  = {},
                                    unsigned            threads = 1) {
    auto const&    elems    = target.elements(budget.max_elements);
    auto const     degree   = target.degree();
    auto const     deadline = Deadline::from(budget);
    HomSearchResult res;

    std::vector<std::vector<std::vector<std::size_t>>> parts;
    std::vector<char>                                  aborted;
    std::size_t const firsts = p.num_generators() == 0 ? 1 : elems.size();
    parts.resize(firsts);
    aborted.resize(firsts, 0);
    auto work = [&](std::size_t from, std::size_t step) {
      detail::HomSearch s(p, elems, degree, deadline);
      for (std::size_t k = from; k < firsts; k += step) {
        parts[k]   = s.run(k);
        aborted[k] = s.aborted() ? 1 : 0;
        if (s.aborted()) {
          break;
        }
      }
    };
    threads = std::max(1u, threads);
    if (threads == 1) {
      work(0, 1);
    } else {
      std::vector<std::thread> pool;
      for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back(work, t, threads);
      }
      for (auto& t : pool) {
        t.join();
      }
    }
    std::size_t const full = target.order(budget.max_elements);
    for (std::size_t k = 0; k < firsts; ++k) {
      res.exhausted = res.exhausted || aborted[k];
      for (auto const& choice : parts[k]) {
        std::vector<Perm> images;
        for (auto c : choice) {
          images.push_back(elems[c]);
        }
        auto const gen = closure(images, degree, full);
        res.epi.push_back(gen && gen->size() == full);
        res.homs.push_back(GroupHom{p, std::move(images), degree});
      }
    }
    return res;
  }

  struct EpiCountReport {
    std::size_t e1        = 0;  // |Epi(p, target)|
    std::size_t e2        = 0;  // |Epi(p x p, target)|
    bool        asserted  = false;
    bool        holds     = true;
    bool        exhausted = false;
  };

  inline EpiCountReport epi_count_product_check(Presentation const& p,
                                                PermGroup const&    target,
                                                Budget const&       budget = {}) {
    EpiCountReport r;
    auto const     a = hom_search(p, target, budget);
    auto const     b = hom_search(direct_product(p, p), target, budget);
    r.e1             = a.epi_count();
    r.e2             = b.epi_count();
    r.exhausted      = a.exhausted || b.exhausted;
    r.asserted       = r.e1 > 0 && target.order(budget.max_elements) > 1
                 && !r.exhausted;
    r.holds = !r.asserted || r.e2 >= 2 * r.e1;
    return r;
  }

  ////////////////////////////////////////////////////////////////////////
  // Fibre products
  ////////////////////////////////////////////////////////////////////////

  struct FiniteFibreProduct {
    std::vector<Perm>        group;      // elements of G, discovery order
    std::vector<std::size_t> quotient;   // quotient class of each element
    std::size_t              quotient_order = 0;
    std::size_t              kernel_size    = 0;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> elements;  // sorted

    std::size_t size() const noexcept {
      return elements.size();
    }
  };

  namespace detail {
    inline std::unordered_map<Perm, std::uint32_t, PermHash> element_index(
        std::vector<Perm> const& elems) {
      std::unordered_map<Perm, std::uint32_t, PermHash> m;
      for (std::size_t i = 0; i < elems.size(); ++i) {
        m.emplace(elems[i], static_cast<std::uint32_t>(i));
      }
      return m;
    }
  }  // namespace detail

  /// P = {(g, h) in G x G : eta(g) = eta(h)} for G the image of rho. Both
  /// maps are defined on the same generators; eta must factor through rho.
  inline FiniteFibreProduct fibre_product_finite(GroupHom const& rho,
                                                 GroupHom const& eta,
                                                 Budget const&   budget = {}) {
    auto const n = rho.images.size();
    if (eta.images.size() != n) {
      throw DomainError("fibre product: maps have different generator counts");
    }
    FiniteFibreProduct                                f;
    std::unordered_map<Perm, std::uint32_t, PermHash> gi, qi;
    std::vector<Perm>                                 qs;
    f.group.push_back(Perm(rho.degree));
    qs.push_back(Perm(eta.degree));
    gi.emplace(f.group[0], 0);
    qi.emplace(qs[0], 0);
    f.quotient.push_back(0);
    for (std::size_t i = 0; i < f.group.size(); ++i) {
      for (std::size_t a = 0; a < n; ++a) {
        Perm g = f.group[i] * rho.images[a];
        Perm q = qs[f.quotient[i]] * eta.images[a];
        auto [qit, qnew] = qi.emplace(q, static_cast<std::uint32_t>(qs.size()));
        if (qnew) {
          qs.push_back(q);
        }
        auto it = gi.find(g);
        if (it == gi.end()) {
          if (f.group.size() * f.group.size() >= budget.max_elements) {
            throw BudgetError("fibre product: |G|^2 exceeds the element cap of "
                              + std::to_string(budget.max_elements));
          }
          gi.emplace(g, static_cast<std::uint32_t>(f.group.size()));
          f.group.push_back(std::move(g));
          f.quotient.push_back(qit->second);
        } else if (f.quotient[it->second] != qit->second) {
          throw DomainError("fibre product: the quotient map does not factor "
                            "through the group");
        }
      }
    }
    f.quotient_order = qs.size();
    std::vector<std::vector<std::uint32_t>> fibres(qs.size());
    for (std::size_t i = 0; i < f.group.size(); ++i) {
      fibres[f.quotient[i]].push_back(static_cast<std::uint32_t>(i));
    }
    f.kernel_size = fibres[0].size();
    for (auto const& fib : fibres) {
      for (auto g : fib) {
        for (auto h : fib) {
          f.elements.emplace_back(g, h);
        }
      }
    }
    std::sort(f.elements.begin(), f.elements.end());
    return f;
  }

  /// True iff the pairs generate exactly the fibre product. `rho` evaluates
  /// both coordinates.
  inline bool check_generation(FiniteFibreProduct const&    f,
                               std::vector<PairWord> const& gens,
                               GroupHom const&              rho) {
    auto const index = detail::element_index(f.group);
    auto       find  = [&](Perm const& p) {
      auto it = index.find(p);
      if (it == index.end()) {
        throw DomainError("check_generation: word evaluates outside the group");
      }
      return it->second;
    };
    std::vector<std::pair<std::uint32_t, std::uint32_t>> g;
    for (auto const& pw : gens) {
      g.emplace_back(find(rho(pw.left)), find(rho(pw.right)));
    }
    auto const                              n = f.group.size();
    std::vector<bool>                       seen(n * n, false);
    std::vector<std::pair<std::uint32_t, std::uint32_t>> order{{0, 0}};
    seen[0] = true;
    for (std::size_t i = 0; i < order.size(); ++i) {
      for (auto const& [a, b] : g) {
        auto const x = find(f.group[order[i].first] * f.group[a]);
        auto const y = find(f.group[order[i].second] * f.group[b]);
        if (!seen[std::size_t{x} * n + y]) {
          seen[std::size_t{x} * n + y] = true;
          order.emplace_back(x, y);
        }
      }
    }
    if (order.size() != f.size()) {
      return false;
    }
    for (auto const& [x, y] : f.elements) {
      if (!seen[std::size_t{x} * n + y]) {
        return false;
      }
    }
    return true;
  }

  ////////////////////////////////////////////////////////////////////////
  // JSON
  ////////////////////////////////////////////////////////////////////////

  inline nlohmann::json to_json(GroupHom const& h) {
    nlohmann::json j = nlohmann::json::object();
    for (std::size_t g = 0; g < h.images.size(); ++g) {
      j[h.source.alphabet().name(g)] = h.images[g].to_cycles();
    }
    return j;
  }

}  // namespace fpgrp

#endif  // FPGRP_PERMREP_HPP_
