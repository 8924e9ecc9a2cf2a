#pragma once

#include <cstdint>

#include "treekernel/errors.hpp"

namespace treekernel {

// All weight arithmetic goes through these two helpers; a 64-bit overflow
// raises OverflowError instead of wrapping.

inline std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r;
    if (__builtin_add_overflow(a, b, &r)) {
        throw OverflowError("weight addition overflows 64 bits");
    }
    return r;
}

inline std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r;
    if (__builtin_mul_overflow(a, b, &r)) {
        throw OverflowError("weight multiplication overflows 64 bits");
    }
    return r;
}

}  // namespace treekernel
