#ifndef FPGRP_TESTS_SUPPORT_HPP_
#define FPGRP_TESTS_SUPPORT_HPP_

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "fpgrp.hpp"

namespace fpgrp::test {

  using Rng = std::mt19937_64;

  inline std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
  }

  inline long long uniform_signed(Rng& rng, long long lo, long long hi) {
    return std::uniform_int_distribution<long long>(lo, hi)(rng);
  }

  // Unreduced random word.
  inline Word random_word(Rng& rng, std::size_t ngens, std::size_t max_len) {
    Word w;
    for (auto n = uniform(rng, 0, max_len); n > 0; --n) {
      w.push_back(letter(uniform(rng, 0, ngens - 1), uniform(rng, 0, 1) == 1));
    }
    return w;
  }

  inline Word random_reduced_word(Rng& rng, std::size_t ngens, std::size_t max_len) {
    return free_reduce(random_word(rng, ngens, max_len));
  }

  // Product of k conjugates of relators (or their inverses).
  inline Word random_consequence(Rng& rng, Presentation const& p, std::size_t k,
                                 std::size_t conj_len) {
    Word w;
    for (std::size_t i = 0; i < k; ++i) {
      Word c = random_word(rng, p.num_generators(), conj_len);
      Word r = p.relator(uniform(rng, 0, p.num_relators() - 1));
      if (uniform(rng, 0, 1) == 1) {
        r = inverse(r);
      }
      w = w * c * r * inverse(c);
    }
    return free_reduce(w);
  }

  inline IntMatrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols,
                                 long long bound) {
    IntMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
      for (std::size_t j = 0; j < cols; ++j) {
        m(i, j) = uniform_signed(rng, -bound, bound);
      }
    }
    return m;
  }

  inline Presentation pres(std::string const& text) {
    return parse_presentation(text);
  }

}  // namespace fpgrp::test

#endif  // FPGRP_TESTS_SUPPORT_HPP_
