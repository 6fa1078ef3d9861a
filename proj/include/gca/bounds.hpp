#pragma once

#include <cstddef>
#include <stdexcept>

namespace gca {

// Raised when a semi-decision procedure exhausts its configured bound.
// Callers get an error, never a silently wrong answer.
struct UndecidedError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Bounds {
    std::size_t pair_cache = 100000;  // equality pair recursion
    std::size_t nucleus = 10000;      // nucleus element count
    int word_depth = 12;              // word-search depth
    std::size_t cycle_steps = 4096;   // tail cycle detection on infinite words
};

}  // namespace gca
