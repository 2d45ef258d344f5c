#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <random>
#include <string>

#include "supergeo/cohomology.hpp"
#include "supergeo/json_io.hpp"
#include "supergeo/p2family.hpp"

using namespace supergeo;

namespace {

SuperPoly v(const ContextPtr& c, const std::string& n, int e = 1) {
    return SuperPoly::variable(c, n, e);
}

SuperFrac fvar(const ContextPtr& c, const std::string& n, int e = 1) {
    return SuperFrac::variable(c, n, e);
}

FamilyParams at(long num, long den = 1) { return FamilyParams{make_rational(num, den)}; }

VectorField odd_euler(const Chart& chart, const std::string& odd_coord) {
    VectorField f(chart);
    f.set(odd_coord, fvar(chart.ctx, odd_coord));
    return f;
}

}  // namespace

TEST_CASE("the three charts glue consistently") {
    const Atlas formal = build_family_atlas({});
    const ConsistencyReport formal_report = verify_cocycle(formal);
    for (const std::string& failure : formal_report.failures) CAPTURE(failure);
    CHECK(formal_report.ok());

    const Atlas unit = build_family_atlas(at(1));
    CHECK(verify_cocycle(unit).ok());
}

TEST_CASE("the cocycle check pinpoints a mistyped odd denominator") {
    Atlas atlas = build_family_atlas({});
    const Chart& u0 = atlas.chart(0);
    const Chart& u2 = atlas.chart(2);
    const ContextPtr& c = u0.ctx;

    // Same table as the atlas's U0 -> U2 entry except that the odd
    // coordinates divide by the wrong affine coordinate.
    std::map<std::string, SuperFrac> a;
    a.emplace("z12", fvar(c, "z20", -1));
    a.emplace("z22", SuperFrac(v(c, "z10") * v(c, "z20") +
                                   v(c, "lambda") * v(c, "th10") * v(c, "th20"),
                               v(c, "z20", 2)));
    a.emplace("th12", SuperFrac(v(c, "th10"), v(c, "z10")));
    a.emplace("th22", SuperFrac(v(c, "th20"), v(c, "z10", 2)));
    atlas.set_transition(TransitionMap(u0, u2, std::move(a)));

    const ConsistencyReport report = verify_cocycle(atlas);
    CHECK_FALSE(report.ok());
}

TEST_CASE("the inverse jacobian of the first overlap matches the hand-checked table") {
    const Atlas atlas = build_family_atlas(at(1));
    const SuperMatrix& jac = atlas.cached_jacobian(1, 0);
    const ContextPtr& c = atlas.chart(1).ctx;

    REQUIRE(jac.rows() == 4);
    REQUIRE(jac.cols() == 4);
    const std::vector<Parity> frame{Parity::Even, Parity::Even, Parity::Odd, Parity::Odd};
    CHECK(jac.row_parities() == frame);
    CHECK(jac.col_parities() == frame);

    const SuperFrac zero = SuperFrac::zero(c);
    CHECK(jac.at(0, 0) == SuperFrac(-v(c, "z11", 2)));
    CHECK(jac.at(0, 1) ==
          SuperFrac(-(v(c, "z11") * v(c, "z21")) + v(c, "th11") * v(c, "th21")));
    CHECK(jac.at(0, 2) == SuperFrac(-(v(c, "th11") * v(c, "z11"))));
    CHECK(jac.at(0, 3) == SuperFrac(Rational(-2) * v(c, "th21") * v(c, "z11")));
    CHECK(jac.at(1, 0) == zero);
    CHECK(jac.at(1, 1) == fvar(c, "z11"));
    CHECK(jac.at(1, 2) == zero);
    CHECK(jac.at(1, 3) == zero);
    CHECK(jac.at(2, 0) == zero);
    CHECK(jac.at(2, 1) == SuperFrac(-v(c, "th21")));
    CHECK(jac.at(2, 2) == fvar(c, "z11"));
    CHECK(jac.at(2, 3) == zero);
    CHECK(jac.at(3, 0) == zero);
    CHECK(jac.at(3, 1) == SuperFrac(v(c, "z11") * v(c, "th11")));
    CHECK(jac.at(3, 2) == zero);
    CHECK(jac.at(3, 3) == SuperFrac(v(c, "z11", 2)));

    // The deformation weights the two mixed entries.
    const Atlas formal = build_family_atlas({});
    const SuperMatrix& fjac = formal.cached_jacobian(1, 0);
    const ContextPtr& fc = formal.chart(1).ctx;
    CHECK(fjac.at(2, 1) == SuperFrac(-(v(fc, "lambda") * v(fc, "th21"))));
    CHECK(fjac.at(3, 1) == SuperFrac(v(fc, "lambda") * v(fc, "z11") * v(fc, "th11")));
}

TEST_CASE("odd blocks glue by coordinate cubes on every overlap") {
    const Atlas atlas = build_family_atlas({});
    const std::string inverted[3][3] = {
        {"", "z10", "z20"},
        {"z11", "", "z21"},
        {"z12", "z22", ""},
    };

    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
            if (i == j) continue;
            CAPTURE(i);
            CAPTURE(j);
            const TransitionMap& t = atlas.transition(i, j);
            const SuperFrac det = odd_block_determinant(t);
            CHECK(det == fvar(t.source.ctx, inverted[i][j], -3));

            // The product of the odd coordinates pulls back through the
            // same determinant.
            const ContextPtr& tc = t.target.ctx;
            const ContextPtr& sc = t.source.ctx;
            const SuperFrac tgt_prod =
                SuperFrac(v(tc, t.target.odd_coords[0]) * v(tc, t.target.odd_coords[1]));
            const SuperFrac src_prod =
                SuperFrac(v(sc, t.source.odd_coords[0]) * v(sc, t.source.odd_coords[1]));
            CHECK(substitute(tgt_prod, t) == det * src_prod);
        }
    }

    Chart line{"A", {"x"}, {"e"}};
    CHECK_THROWS_AS(odd_block_determinant(identity_transition(line)),
                    ConstraintViolationError);
}

TEST_CASE("twelve even and twelve odd closed-form fields are global") {
    const Atlas atlas = build_family_atlas({});
    const SectionBasis basis = canonical_sections();
    REQUIRE(basis.even.size() == 12);
    REQUIRE(basis.odd.size() == 12);
    CHECK(basis.origin == BasisOrigin::Canonical);

    for (std::size_t i = 0; i < basis.even.size(); ++i) {
        CAPTURE(i);
        CHECK(basis.even[i].parity() == Parity::Even);
        CHECK(is_global(atlas, basis.even[i]));
    }
    for (std::size_t i = 0; i < basis.odd.size(); ++i) {
        CAPTURE(i);
        CHECK(basis.odd[i].parity() == Parity::Odd);
        CHECK(is_global(atlas, basis.odd[i]));
    }

    const Atlas unit = build_family_atlas(at(1));
    const SectionBasis special = canonical_sections(at(1));
    for (std::size_t i = 0; i < special.even.size(); ++i) {
        CAPTURE(i);
        CHECK(is_global(unit, special.even[i]));
        CHECK(is_global(unit, special.odd[i]));
    }

    VectorField stray(atlas.chart(1));
    CHECK_THROWS_AS(is_global(atlas, stray), ContextMismatchError);
}

TEST_CASE("the regularity solve recovers exactly the closed-form span") {
    const SectionBasis unit = solve_global_sections(at(1));
    CHECK(unit.origin == BasisOrigin::Solved);
    CHECK(unit.even.size() == 12);
    CHECK(unit.odd.size() == 12);
    const SectionBasis closed = canonical_sections(at(1));
    CHECK(equal_span(unit.even, closed.even));
    CHECK(equal_span(unit.odd, closed.odd));

    const SectionBasis seven = solve_global_sections(at(7));
    CHECK(seven.even.size() == 12);
    CHECK(seven.odd.size() == 12);

    // Switching the deformation off frees one extra even direction: the
    // first odd Euler field becomes global on its own.
    const SectionBasis split = solve_global_sections(at(0));
    CHECK(split.even.size() == 13);
    CHECK(split.odd.size() == 12);
    const SectionBasis closed0 = canonical_sections(at(0));
    CHECK(span_contains(split.even, closed0.even));
    CHECK(span_contains(split.odd, closed0.odd));
    CHECK(equal_span(split.odd, closed0.odd));

    const Atlas off = build_family_atlas(at(0));
    const VectorField euler = odd_euler(off.chart(0), "th10");
    CHECK(is_global(off, euler));
    CHECK(span_contains(split.even, {euler}));
    CHECK_FALSE(span_contains(closed0.even, {euler}));

    // The same field fails regularity once the deformation is on.
    const Atlas on = build_family_atlas(at(1));
    CHECK_FALSE(is_global(on, odd_euler(on.chart(0), "th10")));

    // The even count matches the tally of the reduced tangent pieces.
    const SheafExpr reduced = parse_sheaf(
        "T(0) + O(1) + 2*O(0) + O(-1) + Pi T(-2) + Pi T(-1) + Pi O(2) + Pi O(1) on P2");
    const SuperDim h0 = eval_sheaf(reduced, 0);
    CHECK(h0.even == static_cast<long>(split.even.size()));
    CHECK(h0.odd == static_cast<long>(split.odd.size()));

    CHECK_THROWS_AS(solve_global_sections(FamilyParams{}), ConstraintViolationError);
    CHECK_THROWS_AS(solve_global_sections(at(1), 1), BoundTooSmallError);
}

TEST_CASE("odd Euler directions obstruct gluing while their difference does not") {
    const Atlas atlas = build_family_atlas(at(1));
    const Chart& u0 = atlas.chart(0);
    const Chart& u1 = atlas.chart(1);

    const VectorField s1 = odd_euler(u0, "th10");
    const DeltaClass d1 = delta_class(atlas, s1);
    CHECK(d1.nonzero());

    VectorField expected10(u1);
    expected10.set("z21", SuperFrac(v(u1.ctx, "th11") * v(u1.ctx, "th21"), v(u1.ctx, "z11")));
    CHECK(d1.residues.entry(1, 0).field == expected10);

    VectorField expected01(u0);
    expected01.set("z20",
                   SuperFrac(-(v(u0.ctx, "th10") * v(u0.ctx, "th20")), v(u0.ctx, "z10")));
    CHECK(d1.residues.entry(0, 1).field == expected01);

    // The transport defects reproduce the same cochain the even transition
    // souls carry, with opposite orientation.
    const VectorCochain omega = extract_omega(atlas);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            if (i == j) continue;
            CAPTURE(i);
            CAPTURE(j);
            CHECK(d1.residues.entry(i, j).field == -omega.entry(i, j).field);
        }

    const VectorField s2 = odd_euler(u0, "th20");
    const DeltaClass d2 = delta_class(atlas, s2);
    CHECK(d2.nonzero());
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            if (i == j) continue;
            CHECK(d2.residues.entry(i, j).field == d1.residues.entry(i, j).field);
        }

    const DeltaClass diff = delta_class(atlas, s1 - s2);
    CHECK_FALSE(diff.nonzero());
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            if (i == j) continue;
            CHECK(diff.residues.entry(i, j).field.is_zero());
        }

    // A field that is global outright has no residues at all.
    const SectionBasis closed = canonical_sections(at(1));
    const DeltaClass global = delta_class(atlas, closed.even[8]);
    CHECK_FALSE(global.nonzero());
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            if (i == j) continue;
            CHECK(global.residues.entry(i, j).field.is_zero());
        }

    // Truncation does not repair a field that is singular in even degrees.
    VectorField bad(u0);
    bad.set("z10", SuperFrac(v(u0.ctx, "z20", 2)));
    CHECK_THROWS_AS(delta_class(atlas, bad), ConstraintViolationError);

    VectorField stray(u1);
    CHECK_THROWS_AS(delta_class(atlas, stray), ContextMismatchError);
}

TEST_CASE("transition souls scale linearly in the deformation strength") {
    const Atlas one = build_family_atlas(at(1));
    const Atlas two = build_family_atlas(at(2));
    const Atlas off = build_family_atlas(at(0));

    const VectorCochain omega_one = extract_omega(one);
    const VectorCochain omega_two = extract_omega(two);
    const VectorCochain omega_off = extract_omega(off);

    CHECK(verify_omega_cocycle(omega_one, one).ok());

    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            if (i == j) continue;
            CAPTURE(i);
            CAPTURE(j);
            const VectorField& base = omega_one.entry(i, j).field;
            CHECK_FALSE(base.is_zero());
            const SuperFrac twice(base.chart.ctx, Rational(2));
            CHECK(omega_two.entry(i, j).field == base.scaled(twice));
            CHECK(omega_off.entry(i, j).field.is_zero());
        }
}

TEST_CASE("global fields close under the graded bracket") {
    const Atlas atlas = build_family_atlas({});
    const SectionBasis basis = canonical_sections();
    std::vector<VectorField> all = basis.even;
    all.insert(all.end(), basis.odd.begin(), basis.odd.end());

    std::mt19937 rng(61);
    std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t a = pick(rng);
        const std::size_t b = pick(rng);
        CAPTURE(a);
        CAPTURE(b);
        CHECK(is_global(atlas, bracket(all[a], all[b])));
    }
}

TEST_CASE("the family atlas document matches the committed fixture") {
    const Atlas atlas = build_family_atlas({});
    const nlohmann::json doc = atlas_document(atlas);

    std::ifstream in(std::string(FIXTURES_DIR) + "/p2_family_atlas.json");
    REQUIRE(in.good());
    nlohmann::json fixture;
    in >> fixture;
    CHECK(doc == fixture);

    const Atlas loaded = atlas_from_document(fixture);
    REQUIRE(loaded.size() == 3);
    CHECK(verify_cocycle(loaded).ok());
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            const TransitionMap& t = atlas.transition(i, j);
            const TransitionMap& u = loaded.transition(i, j);
            for (const auto& [coord, value] : t.assignment) CHECK(u.of(coord) == value);
        }
}
