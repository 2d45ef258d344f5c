#pragma once

#include <bit>
#include <cstdint>
#include <vector>

#include "supergeo/context.hpp"

namespace supergeo {

/// Exponent data of one term: Laurent exponents on the even variables
/// (negative allowed), nonnegative exponents on the parameters, and a bitmask
/// selecting a squarefree product of odd generators.  The odd factors are
/// always understood in ascending generator order; reordering signs live in
/// the term coefficient, never here.
struct SuperMonomial {
    std::vector<int> even_exps;
    std::vector<int> param_exps;
    std::uint64_t odd_mask = 0;

    Parity parity() const {
        return (std::popcount(odd_mask) & 1) ? Parity::Odd : Parity::Even;
    }

    bool is_unit() const {
        if (odd_mask != 0) return false;
        for (int e : even_exps)
            if (e != 0) return false;
        for (int e : param_exps)
            if (e != 0) return false;
        return true;
    }

    bool operator==(const SuperMonomial& o) const {
        return odd_mask == o.odd_mask && even_exps == o.even_exps &&
               param_exps == o.param_exps;
    }

    // Total order used as the term order of SuperPoly: lexicographic on even
    // exponents, then parameter exponents, then the odd mask.
    bool operator<(const SuperMonomial& o) const {
        if (even_exps != o.even_exps) return even_exps < o.even_exps;
        if (param_exps != o.param_exps) return param_exps < o.param_exps;
        return odd_mask < o.odd_mask;
    }
};

// Sign of re-sorting the concatenation (sorted A, sorted B) of two disjoint
// odd index sets: one transposition per pair (x in A, y in B) with x > y.
// Returns 0 when the sets intersect (a repeated odd generator squares to 0);
// otherwise +1 or -1.
inline int koszul_sign(std::uint64_t a, std::uint64_t b) {
    if (a & b) return 0;
    int inversions = 0;
    std::uint64_t rest = b;
    while (rest) {
        int y = std::countr_zero(rest);
        rest &= rest - 1;
        std::uint64_t above = (y == 63) ? 0 : (a >> (y + 1));
        inversions += std::popcount(above);
    }
    return (inversions & 1) ? -1 : 1;
}

// Sign collected when the odd generator at bit `idx` of `mask` is commuted to
// the leftmost position (for the left derivative): one swap per lower-index
// factor present.
inline int odd_prefix_sign(std::uint64_t mask, int idx) {
    std::uint64_t below = mask & ((std::uint64_t{1} << idx) - 1);
    return (std::popcount(below) & 1) ? -1 : 1;
}

}  // namespace supergeo
