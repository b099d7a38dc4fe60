#ifndef FPGRP_WORD_HPP_
#define FPGRP_WORD_HPP_

// Elements of free groups: letters, words, alphabets, free and cyclic
// reduction, substitution endomorphisms and exponent sums.

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace fpgrp {

  /// A signed generator: generator index g is stored as g + 1, its inverse as
  /// -(g + 1). Zero is never a valid letter.
  using Letter = std::int32_t;

  constexpr Letter letter(std::size_t gen, bool inverted = false) noexcept {
    auto const l = static_cast<Letter>(gen + 1);
    return inverted ? -l : l;
  }

  constexpr std::size_t generator_of(Letter l) noexcept {
    return static_cast<std::size_t>(l < 0 ? -l : l) - 1;
  }

  constexpr bool is_inverse(Letter l) noexcept {
    return l < 0;
  }

  constexpr Letter inverse(Letter l) noexcept {
    return -l;
  }

  inline bool is_identifier(std::string_view s) {
    if (s.empty() || !std::isalpha(static_cast<unsigned char>(s.front()))) {
      return false;
    }
    return std::all_of(s.begin() + 1, s.end(), [](char c) {
      return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    });
  }

  /// An ordered list of distinct generator names.
  class Alphabet {
   public:
    Alphabet() = default;

    Alphabet(std::initializer_list<std::string> names) {
      for (auto const& n : names) {
        add(n);
      }
    }

    explicit Alphabet(std::vector<std::string> const& names) {
      for (auto const& n : names) {
        add(n);
      }
    }

    std::size_t add(std::string const& name) {
      if (!is_identifier(name)) {
        throw DomainError("invalid generator name '" + name + "'");
      }
      if (index_.count(name) != 0) {
        throw DomainError("duplicate generator name '" + name + "'");
      }
      index_.emplace(name, names_.size());
      names_.push_back(name);
      return names_.size() - 1;
    }

    std::size_t size() const noexcept {
      return names_.size();
    }

    bool empty() const noexcept {
      return names_.empty();
    }

    std::string const& name(std::size_t i) const {
      return names_.at(i);
    }

    std::vector<std::string> const& names() const noexcept {
      return names_;
    }

    std::optional<std::size_t> find(std::string_view name) const {
      auto it = index_.find(std::string(name));
      if (it == index_.end()) {
        return std::nullopt;
      }
      return it->second;
    }

    bool contains(std::string_view name) const {
      return find(name).has_value();
    }

    /// Index of `name`; throws DomainError if absent.
    std::size_t at(std::string_view name) const {
      auto i = find(name);
      if (!i) {
        throw DomainError("unknown generator '" + std::string(name) + "'");
      }
      return *i;
    }

    friend bool operator==(Alphabet const& a, Alphabet const& b) {
      return a.names_ == b.names_;
    }

   private:
    std::vector<std::string>                     names_;
    std::unordered_map<std::string, std::size_t> index_;
  };

  /// A finite sequence of letters. Words are not implicitly reduced; use
  /// free_reduce. Words carry no alphabet: the owner of a word (a
  /// Presentation, a Substitution) resolves its letters.
  class Word {
   public:
    using value_type     = Letter;
    using const_iterator = std::vector<Letter>::const_iterator;

    Word() = default;
    Word(std::initializer_list<Letter> l) : letters_(l) {}
    explicit Word(std::vector<Letter> l) : letters_(std::move(l)) {}
    template <typename It>
    Word(It first, It last) : letters_(first, last) {}

    std::size_t size() const noexcept {
      return letters_.size();
    }
    bool empty() const noexcept {
      return letters_.empty();
    }
    Letter operator[](std::size_t i) const {
      return letters_[i];
    }
    Letter front() const {
      return letters_.front();
    }
    Letter back() const {
      return letters_.back();
    }
    const_iterator begin() const noexcept {
      return letters_.begin();
    }
    const_iterator end() const noexcept {
      return letters_.end();
    }
    std::span<Letter const> view() const noexcept {
      return letters_;
    }
    std::vector<Letter> const& letters() const noexcept {
      return letters_;
    }

    void push_back(Letter l) {
      letters_.push_back(l);
    }
    void pop_back() {
      letters_.pop_back();
    }
    void reserve(std::size_t n) {
      letters_.reserve(n);
    }
    void append(Word const& w) {
      letters_.insert(letters_.end(), w.begin(), w.end());
    }

    /// Appends `l`, cancelling against the last letter when possible.
    void push_reduced(Letter l) {
      if (!letters_.empty() && letters_.back() == -l) {
        letters_.pop_back();
      } else {
        letters_.push_back(l);
      }
    }

    /// Largest generator index used plus one (0 for the empty word).
    std::size_t generator_bound() const noexcept {
      std::size_t b = 0;
      for (Letter l : letters_) {
        b = std::max(b, generator_of(l) + 1);
      }
      return b;
    }

    friend bool operator==(Word const&, Word const&)  = default;
    friend auto operator<=>(Word const&, Word const&) = default;

   private:
    std::vector<Letter> letters_;
  };

  /// Concatenation without reduction.
  inline Word operator*(Word const& u, Word const& v) {
    Word w;
    w.reserve(u.size() + v.size());
    w.append(u);
    w.append(v);
    return w;
  }

  inline Word inverse(Word const& w) {
    Word r;
    r.reserve(w.size());
    for (auto it = w.letters().rbegin(); it != w.letters().rend(); ++it) {
      r.push_back(-*it);
    }
    return r;
  }

  inline Word free_reduce(std::span<Letter const> letters) {
    Word r;
    r.reserve(letters.size());
    for (Letter l : letters) {
      r.push_reduced(l);
    }
    return r;
  }

  inline Word free_reduce(Word const& w) {
    return free_reduce(w.view());
  }

  inline bool is_freely_reduced(Word const& w) {
    for (std::size_t i = 1; i < w.size(); ++i) {
      if (w[i] == -w[i - 1]) {
        return false;
      }
    }
    return true;
  }

  inline bool is_cyclically_reduced(Word const& w) {
    return is_freely_reduced(w) && (w.size() < 2 || w.front() != -w.back());
  }

  struct CyclicReduction {
    Word core;
    Word conjugator;
  };

  /// Writes w (after free reduction) as conjugator * core * conjugator^-1 with
  /// core cyclically reduced.
  inline CyclicReduction cyclic_reduce(Word const& w) {
    Word const  r = free_reduce(w);
    std::size_t i = 0;
    std::size_t j = r.size();
    while (j >= i + 2 && r[i] == -r[j - 1]) {
      ++i;
      --j;
    }
    return {Word(r.begin() + i, r.begin() + j), Word(r.begin(), r.begin() + i)};
  }

  /// Reduced word of w^n; n may be negative.
  inline Word power(Word const& w, long long n) {
    Word const base = n < 0 ? inverse(w) : w;
    auto const k    = n < 0 ? -n : n;
    Word       r;
    r.reserve(base.size() * static_cast<std::size_t>(k));
    for (long long i = 0; i < k; ++i) {
      for (Letter l : base) {
        r.push_reduced(l);
      }
    }
    return r;
  }

  /// Reduced u v u^-1 v^-1.
  inline Word commutator(Word const& u, Word const& v) {
    return free_reduce(u * v * inverse(u) * inverse(v));
  }

  /// Rotation of w starting at offset k (no reduction).
  inline Word rotate(Word const& w, std::size_t k) {
    if (w.empty()) {
      return w;
    }
    k %= w.size();
    std::vector<Letter> r(w.begin() + k, w.end());
    r.insert(r.end(), w.begin(), w.begin() + k);
    return Word(std::move(r));
  }

  inline long long exponent_sum(Word const& w, std::size_t gen) {
    long long s = 0;
    for (Letter l : w) {
      if (generator_of(l) == gen) {
        s += is_inverse(l) ? -1 : 1;
      }
    }
    return s;
  }

  /// Exponent sums of every generator in [0, ngens).
  inline std::vector<long long> exponent_vector(Word const& w,
                                                std::size_t ngens) {
    std::vector<long long> v(ngens, 0);
    for (Letter l : w) {
      auto g = generator_of(l);
      if (g >= ngens) {
        throw DomainError("letter outside alphabet of size "
                          + std::to_string(ngens));
      }
      v[g] += is_inverse(l) ? -1 : 1;
    }
    return v;
  }

  /// If w (cyclically reduced) is a proper power u^k with k >= 2, returns the
  /// root u of minimal length; otherwise nullopt.
  inline std::optional<Word> proper_power_root(Word const& w) {
    auto const n = w.size();
    for (std::size_t d = 1; d <= n / 2; ++d) {
      if (n % d != 0) {
        continue;
      }
      bool periodic = true;
      for (std::size_t i = d; i < n && periodic; ++i) {
        periodic = w[i] == w[i - d];
      }
      if (periodic) {
        return Word(w.begin(), w.begin() + d);
      }
    }
    return std::nullopt;
  }

  /// Lexicographically least rotation; canonical label of a cyclic word.
  inline Word least_rotation(Word const& w) {
    auto const  n    = w.size();
    std::size_t best = 0;
    for (std::size_t k = 1; k < n; ++k) {
      for (std::size_t i = 0; i < n; ++i) {
        Letter a = w[(k + i) % n];
        Letter b = w[(best + i) % n];
        if (a != b) {
          if (a < b) {
            best = k;
          }
          break;
        }
      }
    }
    return rotate(w, best);
  }

  /// A total map from the generators of a source alphabet to words over a
  /// target alphabet, extended to a homomorphism of free groups.
  class Substitution {
   public:
    Substitution(Alphabet source, Alphabet target)
        : source_(std::move(source)),
          target_(std::move(target)),
          images_(source_.size()) {}

    /// Identity on a common alphabet.
    static Substitution identity(Alphabet const& a) {
      Substitution s(a, a);
      for (std::size_t g = 0; g < a.size(); ++g) {
        s.images_[g] = Word{letter(g)};
        s.defined_[g] = true;
      }
      return s;
    }

    void set(std::size_t gen, Word image) {
      if (gen >= source_.size()) {
        throw DomainError("substitution: generator index out of range");
      }
      if (image.generator_bound() > target_.size()) {
        throw DomainError("substitution: image uses letters outside target");
      }
      images_[gen] = free_reduce(image);
      defined_[gen] = true;
    }

    void set(std::string_view gen, Word image) {
      set(source_.at(gen), std::move(image));
    }

    Word const& image(std::size_t gen) const {
      if (gen >= source_.size() || !defined_[gen]) {
        throw DomainError("substitution: unmapped generator"
                          + (gen < source_.size()
                                 ? " '" + source_.name(gen) + "'"
                                 : std::string()));
      }
      return images_[gen];
    }

    Alphabet const& source() const noexcept {
      return source_;
    }
    Alphabet const& target() const noexcept {
      return target_;
    }

    bool is_total() const {
      return std::all_of(defined_.begin(), defined_.end(), [](bool b) {
        return b;
      });
    }

   private:
    Alphabet          source_;
    Alphabet          target_;
    std::vector<Word> images_;
    std::vector<bool> defined_ = std::vector<bool>(source_.size(), false);
  };

  /// Freely reduced image of w under s. Inverse letters map to inverse
  /// images. Throws DomainError on an unmapped generator.
  inline Word substitute(Word const& w, Substitution const& s) {
    Word r;
    for (Letter l : w) {
      Word const& img = s.image(generator_of(l));
      if (is_inverse(l)) {
        for (auto it = img.letters().rbegin(); it != img.letters().rend();
             ++it) {
          r.push_reduced(-*it);
        }
      } else {
        for (Letter m : img) {
          r.push_reduced(m);
        }
      }
    }
    return r;
  }

  struct WordHash {
    std::size_t operator()(Word const& w) const noexcept {
      std::uint64_t h = 1469598103934665603ULL;
      for (Letter l : w) {
        h ^= static_cast<std::uint32_t>(l);
        h *= 1099511628211ULL;
      }
      return static_cast<std::size_t>(h);
    }
  };

  /// An element (left, right) of a direct product of a group with itself.
  struct PairWord {
    Word left;
    Word right;

    friend bool operator==(PairWord const&, PairWord const&) = default;
  };

}  // namespace fpgrp

#endif  // FPGRP_WORD_HPP_
