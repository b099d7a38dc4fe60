#ifndef FPGRP_PRESENTATION_HPP_
#define FPGRP_PRESENTATION_HPP_

// Finite presentations <A | R>: the value type, its text and JSON forms,
// the symmetrized closure, and presentation combinators.
//
// Text grammar (see syntax.hpp for words):
//
//   presentation := "<" [ident ("," ident)*] "|" [rel ("," rel)*] ">"
//   rel          := word | word "=" word          (u = v means u v^-1)

#include <algorithm>
#include <cstddef>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "json.hpp"
#include "syntax.hpp"
#include "word.hpp"

namespace fpgrp {

  class Presentation {
   public:
    Presentation() = default;

    explicit Presentation(Alphabet alphabet) : alphabet_(std::move(alphabet)) {}

    Presentation(Alphabet alphabet, std::vector<Word> const& relators)
        : alphabet_(std::move(alphabet)) {
      for (auto const& r : relators) {
        add_relator(r);
      }
    }

    Alphabet const& alphabet() const noexcept {
      return alphabet_;
    }

    std::size_t num_generators() const noexcept {
      return alphabet_.size();
    }

    std::vector<Word> const& relators() const noexcept {
      return relators_;
    }

    std::size_t num_relators() const noexcept {
      return relators_.size();
    }

    Word const& relator(std::size_t i) const {
      return relators_.at(i);
    }

    std::size_t add_generator(std::string const& name) {
      return alphabet_.add(name);
    }

    /// Stores the free reduction of r. Identity relators are kept here so that
    /// constructions retain their exact relator counts; the text parser drops
    /// them instead.
    void add_relator(Word const& r) {
      if (r.generator_bound() > alphabet_.size()) {
        throw DomainError("relator uses a letter outside the alphabet");
      }
      relators_.push_back(free_reduce(r));
    }

    /// Parses a word over this presentation's alphabet.
    Word word(std::string_view text) const {
      return parse_word(text, alphabet_);
    }

    std::string format(Word const& w) const {
      return format_word(w, alphabet_);
    }

    Word generator(std::string_view name) const {
      return Word{letter(alphabet_.at(name))};
    }

    /// Indices of relators equal (as cyclic words, up to inversion) to an
    /// earlier relator.
    std::vector<std::size_t> duplicate_relators() const {
      std::set<Word>           seen;
      std::vector<std::size_t> dups;
      for (std::size_t i = 0; i < relators_.size(); ++i) {
        Word const core = cyclic_reduce(relators_[i]).core;
        Word const a    = least_rotation(core);
        Word const b    = least_rotation(inverse(core));
        Word const key  = std::min(a, b);
        if (!seen.insert(key).second) {
          dups.push_back(i);
        }
      }
      return dups;
    }

    /// Indices of relators whose cyclic core is a proper power.
    std::vector<std::size_t> proper_power_relators() const {
      std::vector<std::size_t> out;
      for (std::size_t i = 0; i < relators_.size(); ++i) {
        if (proper_power_root(cyclic_reduce(relators_[i]).core)) {
          out.push_back(i);
        }
      }
      return out;
    }

    std::size_t total_length() const noexcept {
      std::size_t n = 0;
      for (auto const& r : relators_) {
        n += r.size();
      }
      return n;
    }

    std::size_t max_relator_length() const noexcept {
      std::size_t n = 0;
      for (auto const& r : relators_) {
        n = std::max(n, r.size());
      }
      return n;
    }

    friend bool operator==(Presentation const& a, Presentation const& b) {
      return a.alphabet_ == b.alphabet_ && a.relators_ == b.relators_;
    }

   private:
    Alphabet          alphabet_;
    std::vector<Word> relators_;
  };

  ////////////////////////////////////////////////////////////////////////
  // Text form
  ////////////////////////////////////////////////////////////////////////

  /// Parses the presentation grammar. Relators that reduce to the identity are
  /// dropped and reported through `warnings` when given.
  inline Presentation parse_presentation(std::string_view          text,
                                         std::vector<std::string>* warnings
                                         = nullptr) {
    detail::Lexer lx(text);
    lx.expect('<');
    Alphabet alphabet;
    if (lx.at_identifier()) {
      do {
        auto const line = lx.line();
        auto const col  = lx.column();
        auto const name = lx.identifier();
        if (alphabet.contains(name)) {
          throw ParseError("duplicate generator '" + name + "'", line, col);
        }
        alphabet.add(name);
      } while (lx.accept(','));
    }
    lx.expect('|');
    Presentation p(alphabet);
    if (lx.peek() != '>') {
      do {
        auto const line = lx.line();
        auto const col  = lx.column();
        Word       r    = detail::parse_word(lx, alphabet);
        if (lx.accept('=')) {
          r = free_reduce(r * inverse(detail::parse_word(lx, alphabet)));
        }
        if (r.empty()) {
          if (warnings != nullptr) {
            warnings->push_back(std::to_string(line) + ":"
                                + std::to_string(col)
                                + ": relator reduces to the identity; dropped");
          }
        } else {
          p.add_relator(r);
        }
      } while (lx.accept(','));
    }
    lx.expect('>');
    if (!lx.at_end()) {
      lx.fail("trailing input after presentation" + lx.found());
    }
    if (warnings != nullptr) {
      for (auto i : p.duplicate_relators()) {
        warnings->push_back("relator " + std::to_string(i + 1)
                            + " duplicates an earlier relator");
      }
    }
    return p;
  }

  /// Canonical text form. Short presentations go on one line, longer ones
  /// put each relator on its own line.
  inline std::string to_string(Presentation const& p) {
    std::vector<std::string> rels;
    std::size_t              total = 0;
    for (auto const& r : p.relators()) {
      rels.push_back(p.format(r));
      total += rels.back().size() + 2;
    }
    std::ostringstream os;
    os << "< ";
    for (std::size_t i = 0; i < p.num_generators(); ++i) {
      os << (i ? ", " : "") << p.alphabet().name(i);
    }
    if (total + p.num_generators() * 4 <= 100) {
      os << " |";
      for (std::size_t i = 0; i < rels.size(); ++i) {
        os << (i ? ", " : " ") << rels[i];
      }
      os << " >";
    } else {
      os << " |\n";
      for (std::size_t i = 0; i < rels.size(); ++i) {
        os << "  " << rels[i] << (i + 1 < rels.size() ? ",\n" : "\n");
      }
      os << ">";
    }
    return os.str();
  }

  ////////////////////////////////////////////////////////////////////////
  // JSON form: {"generators": [...], "relators": [...]}
  ////////////////////////////////////////////////////////////////////////

  inline nlohmann::json to_json(Presentation const& p) {
    nlohmann::json j;
    j["generators"] = p.alphabet().names();
    auto rels       = nlohmann::json::array();
    for (auto const& r : p.relators()) {
      rels.push_back(p.format(r));
    }
    j["relators"] = std::move(rels);
    return j;
  }

  inline Presentation presentation_from_json(nlohmann::json const&     j,
                                             std::vector<std::string>* warnings
                                             = nullptr) {
    if (!j.is_object() || !j.contains("generators")
        || !j.contains("relators")) {
      throw ParseError("JSON presentation needs 'generators' and 'relators'",
                       1,
                       1);
    }
    Alphabet alphabet;
    for (auto const& g : j.at("generators")) {
      alphabet.add(g.get<std::string>());
    }
    Presentation p(alphabet);
    for (std::size_t i = 0; i < j.at("relators").size(); ++i) {
      auto const s = j.at("relators")[i].get<std::string>();
      Word       r;
      try {
        r = parse_word(s, alphabet);
      } catch (ParseError const& e) {
        throw ParseError("relator " + std::to_string(i + 1) + ": " + e.what(),
                         1,
                         1);
      }
      if (r.empty()) {
        if (warnings != nullptr) {
          warnings->push_back("relator " + std::to_string(i + 1)
                              + " reduces to the identity; dropped");
        }
      } else {
        p.add_relator(r);
      }
    }
    return p;
  }

  /// Accepts either the text grammar or the JSON form.
  inline Presentation load_presentation(std::string_view          text,
                                        std::vector<std::string>* warnings
                                        = nullptr) {
    auto const first = text.find_first_not_of(" \t\r\n");
    if (first != std::string_view::npos && text[first] == '{') {
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(text);
      } catch (nlohmann::json::parse_error const& e) {
        throw ParseError(e.what(), 1, e.byte);
      }
      return presentation_from_json(j, warnings);
    }
    return parse_presentation(text, warnings);
  }

  ////////////////////////////////////////////////////////////////////////
  // Symmetrized closure
  ////////////////////////////////////////////////////////////////////////

  /// All cyclic permutations of the cyclic cores of the relators and of their
  /// inverses, as a sorted set of words. origin[i] is the first relator that
  /// produced elements[i].
  struct SymmetrizedSet {
    std::vector<Word>        elements;
    std::vector<std::size_t> origin;

    std::size_t size() const noexcept {
      return elements.size();
    }

    bool contains(Word const& w) const {
      return std::binary_search(elements.begin(), elements.end(), w);
    }
  };

  inline SymmetrizedSet symmetrize(Presentation const& p) {
    std::map<Word, std::size_t> all;
    for (std::size_t i = 0; i < p.num_relators(); ++i) {
      Word const core = cyclic_reduce(p.relator(i)).core;
      if (core.empty()) {
        continue;
      }
      for (Word const& c : {core, inverse(core)}) {
        for (std::size_t k = 0; k < c.size(); ++k) {
          all.emplace(rotate(c, k), i);
        }
      }
    }
    SymmetrizedSet s;
    for (auto& [w, i] : all) {
      s.elements.push_back(w);
      s.origin.push_back(i);
    }
    return s;
  }

  ////////////////////////////////////////////////////////////////////////
  // Combinators
  ////////////////////////////////////////////////////////////////////////

  namespace detail {
    inline Word shift_letters(Word const& w, std::size_t offset) {
      Word r;
      r.reserve(w.size());
      for (Letter l : w) {
        r.push_back(letter(generator_of(l) + offset, is_inverse(l)));
      }
      return r;
    }

    inline Alphabet suffixed_union(Alphabet const& a,
                                   Alphabet const& b,
                                   bool            force_suffix) {
      bool clash = force_suffix;
      for (auto const& n : a.names()) {
        clash = clash || b.contains(n);
      }
      Alphabet out;
      try {
        for (auto const& n : a.names()) {
          out.add(clash ? n + "_1" : n);
        }
        for (auto const& n : b.names()) {
          out.add(clash ? n + "_2" : n);
        }
      } catch (DomainError const& e) {
        throw DomainError(std::string("generator renaming collides: ")
                          + e.what());
      }
      return out;
    }
  }  // namespace detail

  /// Presentation of the direct product: generators g_1 (from p) and g_2
  /// (from q), relators R_p, R_q and every commutator [x_1, y_2].
  inline Presentation direct_product(Presentation const& p,
                                     Presentation const& q) {
    auto const   np = p.num_generators();
    Presentation out(detail::suffixed_union(p.alphabet(), q.alphabet(), true));
    for (auto const& r : p.relators()) {
      out.add_relator(r);
    }
    for (auto const& r : q.relators()) {
      out.add_relator(detail::shift_letters(r, np));
    }
    for (std::size_t x = 0; x < np; ++x) {
      for (std::size_t y = 0; y < q.num_generators(); ++y) {
        out.add_relator(commutator(Word{letter(x)}, Word{letter(np + y)}));
      }
    }
    return out;
  }

  /// Ascending HNN extension <A, t | R, t^-1 a t = phi(a)>; the added relators
  /// are t^-1 a t phi(a)^-1 in generator order.
  inline Presentation hnn_ascending(Presentation const& p,
                                    Substitution const& phi,
                                    std::string const&  t) {
    if (!(phi.source() == p.alphabet()) || !(phi.target() == p.alphabet())) {
      throw DomainError("hnn_ascending: endomorphism must act on the "
                        "presentation's alphabet");
    }
    if (p.alphabet().contains(t)) {
      throw DomainError("hnn_ascending: stable letter '" + t
                        + "' clashes with an existing generator");
    }
    Presentation out = p;
    auto const   tg  = out.add_generator(t);
    Word const   tw{letter(tg)};
    for (std::size_t a = 0; a < p.num_generators(); ++a) {
      out.add_relator(inverse(tw) * Word{letter(a)} * tw
                      * inverse(phi.image(a)));
    }
    return out;
  }

  /// Free product with amalgamation: relators R_p, R_q and u_i v_i^-1 for
  /// each identified pair. Generator names are kept when the alphabets are
  /// disjoint and suffixed _1/_2 otherwise.
  inline Presentation amalgam(Presentation const&                     p,
                              Presentation const&                     q,
                              std::vector<std::pair<Word, Word>> const& ids) {
    auto const   np = p.num_generators();
    Presentation out(
        detail::suffixed_union(p.alphabet(), q.alphabet(), false));
    for (auto const& r : p.relators()) {
      out.add_relator(r);
    }
    for (auto const& r : q.relators()) {
      out.add_relator(detail::shift_letters(r, np));
    }
    for (auto const& [u, v] : ids) {
      if (u.generator_bound() > np
          || v.generator_bound() > q.num_generators()) {
        throw DomainError("amalgam: identification uses foreign generators");
      }
      out.add_relator(u * inverse(detail::shift_letters(v, np)));
    }
    return out;
  }

}  // namespace fpgrp

#endif  // FPGRP_PRESENTATION_HPP_
