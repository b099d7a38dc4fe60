#ifndef FPGRP_BUDGET_HPP_
#define FPGRP_BUDGET_HPP_

#include <chrono>
#include <cstddef>
#include <limits>

namespace fpgrp {

  /// Resource limits shared by the search procedures. Exhausting a budget is
  /// reported as a result value by the procedures that can return partial
  /// data.
  struct Budget {
    std::size_t max_cosets   = 100'000;
    std::size_t max_elements = 100'000;
    double      time_limit   = 60.0;  // seconds; <= 0 means unlimited
  };

  class Deadline {
   public:
    using clock = std::chrono::steady_clock;

    Deadline() : end_(clock::time_point::max()) {}

    explicit Deadline(double seconds) : Deadline() {
      if (seconds > 0) {
        end_ = clock::now()
               + std::chrono::duration_cast<clock::duration>(
                   std::chrono::duration<double>(seconds));
      }
    }

    static Deadline from(Budget const& b) {
      return Deadline(b.time_limit);
    }

    bool expired() const {
      return end_ != clock::time_point::max() && clock::now() >= end_;
    }

   private:
    clock::time_point end_;
  };

}  // namespace fpgrp

#endif  // FPGRP_BUDGET_HPP_
