#pragma once

#include <optional>
#include <string>
#include <vector>

#include "supergeo/errors.hpp"

namespace supergeo {

/// Sheaf cohomology dimension tables for the closed catalog of spaces the
/// engine works over: projective lines and planes and the product of two
/// lines.  All dimensions are exact integers.

enum class Space { P1, P2, P1xP1 };

int space_dim(Space s);

/// One summand of a formal sheaf expression: a twist of the structure sheaf
/// or of the tangent sheaf, optionally parity-shifted, with a multiplicity.
/// Tangent atoms are supported on P1 and P2 only; two-index twists on the
/// product only.
struct SheafAtom {
    Space space = Space::P2;
    bool tangent = false;
    int d1 = 0;
    int d2 = 0;
    bool pi = false;
    long multiplicity = 1;
};

struct SheafExpr {
    std::vector<SheafAtom> atoms;
};

/// Dimension of a graded vector space split into even and odd parts.
struct SuperDim {
    long even = 0;
    long odd = 0;

    SuperDim operator+(const SuperDim& o) const { return {even + o.even, odd + o.odd}; }
    bool operator==(const SuperDim& o) const = default;
};

/// Cohomology dimensions of a sheaf expression, one row per degree q.
struct CohomologyTable {
    std::vector<SuperDim> h;
};

// dim H^q of the degree-d twisting sheaf on projective n-space, by the
// classical closed form: only q = 0 (d >= 0) and q = n (d <= -n-1) survive.
long h_line(int n, int d, int q);

// The same dimension computed independently: Laurent monomials of total
// degree d are enumerated explicitly and the finite alternating complex of
// each sign pattern is resolved by exact rank computations.
// ResourceCapError above n = 3 or |d| = 12.
long h_line_cech(int n, int d, int q);

// dim H^q of the (d1, d2) twist on the product of two lines (Kunneth sum).
long h_product(int d1, int d2, int q);

// dim H^q of the d-twisted tangent sheaf of the plane, chased through the
// long exact sequence of 0 -> O(d) -> O(d+1)^3 -> T(d) -> 0.
// AmbiguousExactSequenceError when exactness does not force the value.
long h_tangent_twist(int d, int q);

// Fills the unknown entries of an exact sequence 0 -> t_0 -> ... -> t_k -> 0
// of finite-dimensional spaces (nullopt marks unknowns).  Every entry must be
// forced by exactness and nonnegativity alone; AmbiguousExactSequenceError
// otherwise, ConstraintViolationError on inconsistent data.
std::vector<long> les_solve(const std::vector<std::optional<long>>& dims);

// Additive over atoms; the parity shift swaps the even and odd counts.
// Degrees above the dimension of an atom's space contribute zero.
SuperDim eval_sheaf(const SheafExpr& e, int q);

// Rows q = 0 .. max space dimension occurring in the expression.
CohomologyTable sheaf_table(const SheafExpr& e);

// Text form, e.g. "Pi O(-1) + Pi O(-2) on P2", "T(-3) on P2",
// "2*O(0) + O(1) on P2", "O(0,-2) on P1xP1".  The trailing space clause
// applies to every summand.  ParseError on malformed input.
SheafExpr parse_sheaf(const std::string& text);

}  // namespace supergeo
