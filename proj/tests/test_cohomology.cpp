#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "supergeo/cohomology.hpp"
#include "supergeo/errors.hpp"

using namespace supergeo;

namespace {

std::optional<long> unknown() { return std::nullopt; }

}  // namespace

TEST_CASE("twisting sheaf dimensions on projective space") {
    CHECK(h_line(1, 0, 0) == 1);
    CHECK(h_line(1, 3, 0) == 4);
    CHECK(h_line(1, -1, 0) == 0);
    CHECK(h_line(1, -1, 1) == 0);
    CHECK(h_line(1, -2, 1) == 1);
    CHECK(h_line(1, -5, 1) == 4);

    CHECK(h_line(2, 0, 0) == 1);
    CHECK(h_line(2, 1, 0) == 3);
    CHECK(h_line(2, 2, 0) == 6);
    CHECK(h_line(2, -1, 0) == 0);
    CHECK(h_line(2, -2, 2) == 0);
    CHECK(h_line(2, -3, 2) == 1);
    CHECK(h_line(2, -4, 2) == 3);
    for (int d = -6; d <= 6; ++d) CHECK(h_line(2, d, 1) == 0);

    CHECK_THROWS_AS(h_line(2, 0, 3), ConstraintViolationError);
    CHECK_THROWS_AS(h_line(2, 0, -1), ConstraintViolationError);
    CHECK_THROWS_AS(h_line(-1, 0, 0), ConstraintViolationError);
}

TEST_CASE("alternating complex recomputes every line dimension independently") {
    for (int n = 1; n <= 2; ++n)
        for (int d = -6; d <= 6; ++d)
            for (int q = 0; q <= n; ++q) {
                CAPTURE(n);
                CAPTURE(d);
                CAPTURE(q);
                CHECK(h_line_cech(n, d, q) == h_line(n, d, q));
            }

    // A few third-dimensional spot checks at both surviving degrees.
    CHECK(h_line_cech(3, 2, 0) == 10);
    CHECK(h_line_cech(3, -4, 3) == 1);
    CHECK(h_line_cech(3, -6, 3) == 10);
    CHECK(h_line_cech(3, -2, 1) == 0);
    CHECK(h_line_cech(3, -2, 2) == 0);

    CHECK_THROWS_AS(h_line_cech(4, 0, 0), ResourceCapError);
    CHECK_THROWS_AS(h_line_cech(2, 13, 0), ResourceCapError);
    CHECK_THROWS_AS(h_line_cech(2, -13, 2), ResourceCapError);
}

TEST_CASE("Serre duality on the line and the plane") {
    for (int n = 1; n <= 2; ++n)
        for (int d = -8; d <= 8; ++d)
            for (int q = 0; q <= n; ++q) {
                CAPTURE(n);
                CAPTURE(d);
                CAPTURE(q);
                CHECK(h_line(n, d, q) == h_line(n, -d - n - 1, n - q));
            }
}

TEST_CASE("Euler characteristic of plane twists is the expected polynomial") {
    for (int d = -9; d <= 9; ++d) {
        const long chi = h_line(2, d, 0) - h_line(2, d, 1) + h_line(2, d, 2);
        CHECK(2 * chi == static_cast<long>(d + 1) * (d + 2));
    }
}

TEST_CASE("product twists obey the convolution formula and its symmetries") {
    CHECK(h_product(0, 0, 0) == 1);
    CHECK(h_product(1, 2, 0) == 6);
    CHECK(h_product(0, -2, 1) == 1);
    CHECK(h_product(-2, 0, 1) == 1);
    CHECK(h_product(-2, -2, 2) == 1);
    CHECK(h_product(-3, -2, 2) == 2);
    CHECK(h_product(-1, 5, 0) == 0);
    CHECK(h_product(-1, 5, 1) == 0);
    CHECK(h_product(-1, 5, 2) == 0);

    for (int d1 = -4; d1 <= 4; ++d1)
        for (int d2 = -4; d2 <= 4; ++d2)
            for (int q = 0; q <= 2; ++q) {
                CAPTURE(d1);
                CAPTURE(d2);
                CAPTURE(q);
                CHECK(h_product(d1, d2, q) == h_product(d2, d1, q));
                long conv = 0;
                for (int i = 0; i <= 1; ++i)
                    if (q - i >= 0 && q - i <= 1) conv += h_line(1, d1, i) * h_line(1, d2, q - i);
                CHECK(h_product(d1, d2, q) == conv);
            }

    CHECK_THROWS_AS(h_product(0, 0, 3), ConstraintViolationError);
}

TEST_CASE("twisted tangent dimensions forced by the three-term resolution") {
    CHECK(h_tangent_twist(0, 0) == 8);
    CHECK(h_tangent_twist(0, 1) == 0);
    CHECK(h_tangent_twist(0, 2) == 0);
    CHECK(h_tangent_twist(-1, 0) == 3);
    CHECK(h_tangent_twist(-2, 0) == 0);
    CHECK(h_tangent_twist(-3, 0) == 0);
    CHECK(h_tangent_twist(-3, 1) == 1);
    CHECK(h_tangent_twist(-3, 2) == 0);
    CHECK(h_tangent_twist(-2, 1) == 0);
    CHECK(h_tangent_twist(-1, 1) == 0);
    CHECK(h_tangent_twist(1, 0) == 15);

    // Below -3 the global sections still vanish for degree reasons, while
    // the higher rows admit more than one consistent filling.
    CHECK(h_tangent_twist(-4, 0) == 0);
    CHECK_THROWS_AS(h_tangent_twist(-4, 1), AmbiguousExactSequenceError);
    CHECK_THROWS_AS(h_tangent_twist(-4, 2), AmbiguousExactSequenceError);
    CHECK_THROWS_AS(h_tangent_twist(-5, 1), AmbiguousExactSequenceError);

    CHECK_THROWS_AS(h_tangent_twist(0, 3), ConstraintViolationError);
}

TEST_CASE("tangent sections satisfy the resolution's own accounting") {
    // Whenever all three rows are forced, the alternating sums of the
    // sequence 0 -> O(d) -> O(d+1)^3 -> T(d) -> 0 must close.
    for (int d = -3; d <= 5; ++d) {
        long chi_t = 0;
        for (int q = 0; q <= 2; ++q) {
            const long sign = q % 2 == 0 ? 1 : -1;
            chi_t += sign * h_tangent_twist(d, q);
        }
        long chi_mid = 0;
        long chi_sub = 0;
        for (int q = 0; q <= 2; ++q) {
            const long sign = q % 2 == 0 ? 1 : -1;
            chi_mid += sign * 3 * h_line(2, d + 1, q);
            chi_sub += sign * h_line(2, d, q);
        }
        CAPTURE(d);
        CHECK(chi_t == chi_mid - chi_sub);
    }
}

TEST_CASE("exact sequence solver fills forced unknowns and rejects the rest") {
    SUBCASE("surjective connecting map pins the first term") {
        const std::vector<std::optional<long>> even{unknown(), 13, 1};
        const std::vector<long> even_solved{12, 13, 1};
        CHECK(les_solve(even) == even_solved);
        const std::vector<std::optional<long>> odd{unknown(), 12, 0};
        const std::vector<long> odd_solved{12, 12, 0};
        CHECK(les_solve(odd) == odd_solved);
    }

    SUBCASE("zeros propagate through the whole sequence") {
        const std::vector<std::optional<long>> dims{0, unknown(), 0, unknown(), 0};
        const std::vector<long> solved{0, 0, 0, 0, 0};
        CHECK(les_solve(dims) == solved);
    }

    SUBCASE("two-term sequences force equality") {
        const std::vector<std::optional<long>> dims{unknown(), 7};
        const std::vector<long> solved{7, 7};
        CHECK(les_solve(dims) == solved);
    }

    SUBCASE("a four-term chase with interior unknown") {
        const std::vector<std::optional<long>> dims{1, 3, unknown(), 4};
        const std::vector<long> solved{1, 3, 6, 4};
        CHECK(les_solve(dims) == solved);
    }

    SUBCASE("ambiguous interiors are refused") {
        const std::vector<std::optional<long>> dims{unknown(), unknown()};
        CHECK_THROWS_AS(les_solve(dims), AmbiguousExactSequenceError);
        const std::vector<std::optional<long>> middle{1, unknown(), unknown(), 1};
        CHECK_THROWS_AS(les_solve(middle), AmbiguousExactSequenceError);
        // A zero at one end does not pin a pair of adjacent unknowns.
        const std::vector<std::optional<long>> tail{0, unknown(), unknown()};
        CHECK_THROWS_AS(les_solve(tail), AmbiguousExactSequenceError);
    }

    SUBCASE("inconsistent data is rejected") {
        const std::vector<std::optional<long>> lone{1};
        CHECK_THROWS_AS(les_solve(lone), ConstraintViolationError);
        const std::vector<std::optional<long>> unequal{1, 0};
        CHECK_THROWS_AS(les_solve(unequal), ConstraintViolationError);
        const std::vector<std::optional<long>> negative_rank{5, 2, unknown()};
        CHECK_THROWS_AS(les_solve(negative_rank), ConstraintViolationError);
        const std::vector<std::optional<long>> negative_dim{-1};
        CHECK_THROWS_AS(les_solve(negative_dim), ConstraintViolationError);
    }

    SUBCASE("empty input solves to the empty sequence") {
        CHECK(les_solve({}).empty());
    }
}

TEST_CASE("sheaf expressions evaluate additively with parity bookkeeping") {
    const SheafExpr tangent_quotient = parse_sheaf(
        "T(0) + O(1) + 2*O(0) + O(-1) + Pi T(-2) + Pi T(-1) + Pi O(2) + Pi O(1) on P2");
    CHECK((eval_sheaf(tangent_quotient, 0) == SuperDim{13, 12}));
    CHECK((eval_sheaf(tangent_quotient, 1) == SuperDim{0, 0}));
    CHECK((eval_sheaf(tangent_quotient, 2) == SuperDim{0, 0}));

    const SheafExpr squared_ideal = parse_sheaf("T(-3) + Pi O(-2) + Pi O(-1) on P2");
    CHECK((eval_sheaf(squared_ideal, 0) == SuperDim{0, 0}));
    CHECK((eval_sheaf(squared_ideal, 1) == SuperDim{1, 0}));
    CHECK((eval_sheaf(squared_ideal, 2) == SuperDim{0, 0}));

    const SheafExpr product = parse_sheaf("O(0,-2) + O(-2,0) on P1xP1");
    CHECK((eval_sheaf(product, 0) == SuperDim{0, 0}));
    CHECK((eval_sheaf(product, 1) == SuperDim{2, 0}));

    const SheafExpr odd_product = parse_sheaf("Pi O(-1,-1) + Pi O(-1,-1) on P1xP1");
    CHECK((eval_sheaf(odd_product, 1) == SuperDim{0, 0}));

    const SheafExpr line_tangent = parse_sheaf("T(0) on P1");
    CHECK((eval_sheaf(line_tangent, 0) == SuperDim{3, 0}));
    CHECK((eval_sheaf(line_tangent, 1) == SuperDim{0, 0}));

    CHECK((eval_sheaf(SheafExpr{}, 0) == SuperDim{0, 0}));
    CHECK((eval_sheaf(SheafExpr{}, 5) == SuperDim{0, 0}));

    // Degrees above the space dimension contribute nothing.
    CHECK((eval_sheaf(tangent_quotient, 7) == SuperDim{0, 0}));
}

TEST_CASE("parity shift is an involution and multiplicities scale") {
    const SheafExpr once = parse_sheaf("Pi O(-3) on P2");
    const SheafExpr twice = parse_sheaf("Pi Pi O(-3) on P2");
    const SheafExpr plain = parse_sheaf("O(-3) on P2");
    for (int q = 0; q <= 2; ++q) {
        const SuperDim a = eval_sheaf(once, q);
        const SuperDim b = eval_sheaf(plain, q);
        CHECK(a.even == b.odd);
        CHECK(a.odd == b.even);
        CHECK(eval_sheaf(twice, q) == b);
    }

    const SheafExpr tripled = parse_sheaf("3*O(1) on P2");
    const SheafExpr summed = parse_sheaf("O(1) + O(1) + O(1) on P2");
    for (int q = 0; q <= 2; ++q) CHECK(eval_sheaf(tripled, q) == eval_sheaf(summed, q));
}

TEST_CASE("tables list one row per degree of the underlying space") {
    const CohomologyTable plane = sheaf_table(parse_sheaf("O(-3) + Pi O(0) on P2"));
    REQUIRE(plane.h.size() == 3);
    CHECK((plane.h[0] == SuperDim{0, 1}));
    CHECK((plane.h[1] == SuperDim{0, 0}));
    CHECK((plane.h[2] == SuperDim{1, 0}));

    const CohomologyTable line = sheaf_table(parse_sheaf("O(-2) on P1"));
    REQUIRE(line.h.size() == 2);
    CHECK((line.h[0] == SuperDim{0, 0}));
    CHECK((line.h[1] == SuperDim{1, 0}));
}

TEST_CASE("sheaf expression parsing accepts the documented forms only") {
    const SheafExpr e = parse_sheaf("  2*Pi T(-1)+O(3) on  P2 ");
    REQUIRE(e.atoms.size() == 2);
    CHECK(e.atoms[0].multiplicity == 2);
    CHECK(e.atoms[0].pi);
    CHECK(e.atoms[0].tangent);
    CHECK(e.atoms[0].d1 == -1);
    CHECK(e.atoms[0].space == Space::P2);
    CHECK(e.atoms[1].multiplicity == 1);
    CHECK_FALSE(e.atoms[1].pi);
    CHECK_FALSE(e.atoms[1].tangent);
    CHECK(e.atoms[1].d1 == 3);

    const SheafExpr pp = parse_sheaf("O(1,-2) on P1xP1");
    REQUIRE(pp.atoms.size() == 1);
    CHECK(pp.atoms[0].space == Space::P1xP1);
    CHECK(pp.atoms[0].d1 == 1);
    CHECK(pp.atoms[0].d2 == -2);

    CHECK_THROWS_AS(parse_sheaf(""), ParseError);
    CHECK_THROWS_AS(parse_sheaf("O(1)"), ParseError);
    CHECK_THROWS_AS(parse_sheaf("O(1) on P3"), ParseError);
    CHECK_THROWS_AS(parse_sheaf("O(1) on P2 junk"), ParseError);
    CHECK_THROWS_AS(parse_sheaf("Q(1) on P2"), ParseError);
    CHECK_THROWS_AS(parse_sheaf("O(1,2) on P2"), ParseError);
    CHECK_THROWS_AS(parse_sheaf("O(1) on P1xP1"), ParseError);
    CHECK_THROWS_AS(parse_sheaf("T(1,2) on P1xP1"), ParseError);
    CHECK_THROWS_AS(parse_sheaf("T(0,0) on P1xP1"), ParseError);
    CHECK_THROWS_AS(parse_sheaf("O(x) on P2"), ParseError);
    CHECK_THROWS_AS(parse_sheaf("O(1 on P2"), ParseError);
    CHECK_THROWS_AS(parse_sheaf("+ O(1) on P2"), ParseError);
}
