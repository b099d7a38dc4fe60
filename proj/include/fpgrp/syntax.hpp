#ifndef FPGRP_SYNTAX_HPP_
#define FPGRP_SYNTAX_HPP_

// Text syntax for words:
//
//   word   := factor (["*"] factor)*  |  "1"
//   factor := atom ["^" int]
//   atom   := ident | "(" word ")" | "[" word "," word "]"
//   int    := ["+"|"-"] digits  |  "{" ["+"|"-"] digits "}"
//
// "[u,v]" denotes u v u^-1 v^-1. Whitespace is insignificant; "#" starts a
// comment running to the end of the line.

#include <cctype>
#include <cstddef>
#include <limits>
#include <sstream>
#include <string>
#include <string_view>

#include "errors.hpp"
#include "word.hpp"

namespace fpgrp {

  namespace detail {

    class Lexer {
     public:
      explicit Lexer(std::string_view text) : text_(text) {}

      void skip_space() {
        while (pos_ < text_.size()) {
          char c = text_[pos_];
          if (c == '#') {
            while (pos_ < text_.size() && text_[pos_] != '\n') {
              advance();
            }
          } else if (std::isspace(static_cast<unsigned char>(c))) {
            advance();
          } else {
            break;
          }
        }
      }

      bool at_end() {
        skip_space();
        return pos_ >= text_.size();
      }

      char peek() {
        skip_space();
        return pos_ < text_.size() ? text_[pos_] : '\0';
      }

      bool accept(char c) {
        if (peek() == c) {
          advance();
          return true;
        }
        return false;
      }

      void expect(char c) {
        if (!accept(c)) {
          fail(std::string("expected '") + c + "'" + found());
        }
      }

      bool at_identifier() {
        return std::isalpha(static_cast<unsigned char>(peek())) != 0;
      }

      std::string identifier() {
        if (!at_identifier()) {
          fail("expected generator name" + found());
        }
        std::string s;
        while (pos_ < text_.size()
               && (std::isalnum(static_cast<unsigned char>(text_[pos_]))
                   || text_[pos_] == '_')) {
          s += text_[pos_];
          advance();
        }
        return s;
      }

      long long integer() {
        bool braced = accept('{');
        bool neg    = false;
        if (accept('-')) {
          neg = true;
        } else {
          accept('+');
        }
        skip_space();
        if (pos_ >= text_.size()
            || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
          fail("expected integer" + found());
        }
        long long v = 0;
        while (pos_ < text_.size()
               && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
          if (v > (std::numeric_limits<long long>::max() - 9) / 10) {
            fail("integer too large");
          }
          v = v * 10 + (text_[pos_] - '0');
          advance();
        }
        if (braced) {
          expect('}');
        }
        return neg ? -v : v;
      }

      [[noreturn]] void fail(std::string const& msg) const {
        throw ParseError(msg, line_, column_);
      }

      std::string found() {
        skip_space();
        if (pos_ >= text_.size()) {
          return ", found end of input";
        }
        return std::string(", found '") + text_[pos_] + "'";
      }

      std::size_t line() const {
        return line_;
      }
      std::size_t column() const {
        return column_;
      }

     private:
      void advance() {
        if (text_[pos_] == '\n') {
          ++line_;
          column_ = 1;
        } else {
          ++column_;
        }
        ++pos_;
      }

      std::string_view text_;
      std::size_t      pos_    = 0;
      std::size_t      line_   = 1;
      std::size_t      column_ = 1;
    };

    inline bool starts_factor(Lexer& lx) {
      char c = lx.peek();
      return lx.at_identifier() || c == '(' || c == '[';
    }

    Word parse_word(Lexer& lx, Alphabet const& alphabet);

    inline Word parse_atom(Lexer& lx, Alphabet const& alphabet) {
      if (lx.accept('(')) {
        Word w = parse_word(lx, alphabet);
        lx.expect(')');
        return w;
      }
      if (lx.accept('[')) {
        Word u = parse_word(lx, alphabet);
        lx.expect(',');
        Word v = parse_word(lx, alphabet);
        lx.expect(']');
        return commutator(u, v);
      }
      auto const line = lx.line();
      auto const col  = lx.column();
      auto const name = lx.identifier();
      auto const g    = alphabet.find(name);
      if (!g) {
        throw ParseError("unknown generator '" + name + "'", line, col);
      }
      return Word{letter(*g)};
    }

    inline Word parse_word(Lexer& lx, Alphabet const& alphabet) {
      Word w;
      if (lx.peek() == '1') {
        lx.integer();
        return w;
      }
      if (!starts_factor(lx)) {
        lx.fail("expected word" + lx.found());
      }
      while (true) {
        Word a = parse_atom(lx, alphabet);
        if (lx.accept('^')) {
          a = power(a, lx.integer());
        }
        for (Letter l : a) {
          w.push_reduced(l);
        }
        if (lx.accept('*')) {
          if (!starts_factor(lx)) {
            lx.fail("expected factor after '*'" + lx.found());
          }
          continue;
        }
        if (!starts_factor(lx)) {
          break;
        }
      }
      return w;
    }

  }  // namespace detail

  /// Parses a single word over `alphabet`; the result is freely reduced.
  inline Word parse_word(std::string_view text, Alphabet const& alphabet) {
    detail::Lexer lx(text);
    Word          w = detail::parse_word(lx, alphabet);
    if (!lx.at_end()) {
      lx.fail("trailing input" + lx.found());
    }
    return w;
  }

  /// Writes w with runs collapsed: "a^2 b^-1 a". The identity prints as "1".
  inline std::string format_word(Word const& w, Alphabet const& alphabet) {
    if (w.empty()) {
      return "1";
    }
    std::ostringstream os;
    std::size_t        i = 0;
    while (i < w.size()) {
      std::size_t j = i;
      while (j < w.size() && w[j] == w[i]) {
        ++j;
      }
      long long const n = static_cast<long long>(j - i);
      if (i > 0) {
        os << ' ';
      }
      os << alphabet.name(generator_of(w[i]));
      long long const e = is_inverse(w[i]) ? -n : n;
      if (e != 1) {
        os << '^' << e;
      }
      i = j;
    }
    return os.str();
  }

}  // namespace fpgrp

#endif  // FPGRP_SYNTAX_HPP_
