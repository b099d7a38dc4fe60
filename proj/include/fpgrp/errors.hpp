#ifndef FPGRP_ERRORS_HPP_
#define FPGRP_ERRORS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fpgrp {

  /// Base class of every exception thrown by the library.
  class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  /// Malformed presentation or word text. Line and column are 1-based.
  class ParseError : public Error {
   public:
    ParseError(std::string const& what, std::size_t line, std::size_t column)
        : Error(std::to_string(line) + ":" + std::to_string(column) + ": "
                + what),
          line_(line),
          column_(column) {}

    std::size_t line() const noexcept {
      return line_;
    }
    std::size_t column() const noexcept {
      return column_;
    }

   private:
    std::size_t line_;
    std::size_t column_;
  };

  /// A word or map refers to a generator outside the expected alphabet.
  class DomainError : public Error {
   public:
    using Error::Error;
  };

  /// An operation was called on an input that violates its precondition
  /// (e.g. a non-perfect group passed to the UCE builder).
  class PreconditionError : public Error {
   public:
    using Error::Error;
  };

  /// A configured budget (length cap, element cap, time) was exceeded in an
  /// operation that cannot return partial data.
  class BudgetError : public Error {
   public:
    using Error::Error;
  };

}  // namespace fpgrp

#endif  // FPGRP_ERRORS_HPP_
