#include "supergeo/selftest.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "supergeo/cohomology.hpp"
#include "supergeo/embedding.hpp"
#include "supergeo/grassmannian.hpp"
#include "supergeo/p2family.hpp"

namespace supergeo {

namespace {

// Running tally for one check; remembers the first mismatch only.
struct Verdict {
    bool ok = true;
    long checked = 0;
    std::string why;

    void expect(bool cond, const std::string& what) {
        ++checked;
        if (!cond && ok) {
            ok = false;
            why = what;
        }
    }
};

SuperPoly v(const ContextPtr& c, const std::string& n, int e = 1) {
    return SuperPoly::variable(c, n, e);
}

SuperFrac fvar(const ContextPtr& c, const std::string& n, int e = 1) {
    return SuperFrac::variable(c, n, e);
}

Check result(const std::string& name, const Verdict& vd, const std::string& summary) {
    return {name, vd.ok, vd.ok ? summary + " (" + std::to_string(vd.checked) + " comparisons)"
                              : vd.why};
}

Check check_four_cell_cover() {
    Verdict vd;
    const Atlas atlas = g11_atlas();
    vd.expect(atlas.size() == 4, "expected four charts");

    auto table = [&](std::size_t j, std::size_t i,
                     const std::vector<std::pair<std::string, SuperFrac>>& rows) {
        const TransitionMap& t = atlas.transition(j, i);
        for (const auto& [coord, expr] : rows)
            vd.expect(t.of(coord) == expr,
                      "overlap (" + atlas.chart(j).name + "," + atlas.chart(i).name +
                          "): coordinate " + coord + " differs from the reference table");
    };

    {
        const auto& c = atlas.chart(1).ctx;
        table(1, 0,
              {{"x1", fvar(c, "x2", -1)},
               {"xi1", SuperFrac(v(c, "xi2"), v(c, "x2"))},
               {"eta1", -SuperFrac(v(c, "eta2"), v(c, "x2"))},
               {"y1", SuperFrac(v(c, "y2") * v(c, "x2") + v(c, "xi2") * v(c, "eta2"),
                                v(c, "x2"))}});
    }
    {
        const auto& c = atlas.chart(2).ctx;
        table(2, 0,
              {{"x1", SuperFrac(v(c, "x3") * v(c, "y3") - v(c, "xi3") * v(c, "eta3"),
                                v(c, "y3"))},
               {"xi1", -SuperFrac(v(c, "xi3"), v(c, "y3"))},
               {"eta1", SuperFrac(v(c, "eta3"), v(c, "y3"))},
               {"y1", fvar(c, "y3", -1)}});
        table(2, 1,
              {{"x2", SuperFrac(v(c, "x3") * v(c, "y3") + v(c, "xi3") * v(c, "eta3"),
                                v(c, "x3", 2) * v(c, "y3"))},
               {"xi2", -SuperFrac(v(c, "xi3"), v(c, "x3") * v(c, "y3"))},
               {"eta2", -SuperFrac(v(c, "eta3"), v(c, "x3") * v(c, "y3"))},
               {"y2", SuperFrac(v(c, "x3") * v(c, "y3") - v(c, "xi3") * v(c, "eta3"),
                                v(c, "x3") * v(c, "y3", 2))}});
    }
    {
        const auto& c = atlas.chart(3).ctx;
        table(3, 0,
              {{"x1", SuperFrac(v(c, "x4") * v(c, "y4") + v(c, "xi4") * v(c, "eta4"),
                                v(c, "x4", 2) * v(c, "y4"))},
               {"xi1", -SuperFrac(v(c, "xi4"), v(c, "x4") * v(c, "y4"))},
               {"eta1", -SuperFrac(v(c, "eta4"), v(c, "x4") * v(c, "y4"))},
               {"y1", SuperFrac(v(c, "x4") * v(c, "y4") - v(c, "xi4") * v(c, "eta4"),
                                v(c, "x4") * v(c, "y4", 2))}});
        table(3, 1,
              {{"x2", SuperFrac(v(c, "x4") * v(c, "y4") - v(c, "xi4") * v(c, "eta4"),
                                v(c, "y4"))},
               {"xi2", -SuperFrac(v(c, "xi4"), v(c, "y4"))},
               {"eta2", SuperFrac(v(c, "eta4"), v(c, "y4"))},
               {"y2", fvar(c, "y4", -1)}});
        table(3, 2,
              {{"x3", fvar(c, "x4", -1)},
               {"xi3", SuperFrac(v(c, "xi4"), v(c, "x4"))},
               {"eta3", -SuperFrac(v(c, "eta4"), v(c, "x4"))},
               {"y3", SuperFrac(v(c, "y4") * v(c, "x4") + v(c, "xi4") * v(c, "eta4"),
                                v(c, "x4"))}});
    }

    const ConsistencyReport report = verify_cocycle(atlas);
    vd.expect(report.ok(), report.ok() ? "" : "cocycle defect: " + report.failures.front());
    return result("four-cell-overlap-tables", vd,
                  "six overlap tables verbatim, pair and triple closure exact");
}

Check check_plane_renormalization() {
    Verdict vd;
    const GrassDescriptor g(2, 1, 3, 2);
    const BigCell from = big_cell(g, CellIndex{{0, 1}, {0}});
    const BigCell to = big_cell(g, CellIndex{{0, 2}, {0}});
    const auto& c = from.chart.ctx;

    const SuperMatrix block = from.matrix.select_columns(
        {0, 2, 3}, {Parity::Even, Parity::Even, Parity::Odd});
    const SuperMatrix inv = invert_matrix(block);
    vd.expect((block * inv).is_identity() && (inv * block).is_identity(),
              "renormalizing block times its inverse is not the identity");

    const TransitionMap t = cell_transition(from, to);
    auto entry = [&](const std::string& coord, const SuperFrac& expected) {
        vd.expect(t.of(coord) == expected,
                  "renormalized coordinate " + coord + " differs from the reference");
    };
    entry("x_0_1", -SuperFrac(v(c, "x_0_2"), v(c, "x_1_2")));
    entry("x_1_1", fvar(c, "x_1_2", -1));
    entry("xi_2_1", -SuperFrac(v(c, "xi_2_2"), v(c, "x_1_2")));
    entry("xi_0_4",
          SuperFrac(v(c, "xi_0_4") * v(c, "x_1_2") - v(c, "xi_1_4") * v(c, "x_0_2"),
                    v(c, "x_1_2")));
    entry("xi_1_4", SuperFrac(v(c, "xi_1_4"), v(c, "x_1_2")));
    entry("x_2_4",
          SuperFrac(v(c, "x_2_4") * v(c, "x_1_2") - v(c, "xi_2_2") * v(c, "xi_1_4"),
                    v(c, "x_1_2")));
    return result("plane-cell-renormalization", vd,
                  "re-normalized cell matrix matches the reference entry for entry");
}

Check check_cohomology_tables() {
    Verdict vd;
    auto dims = [&](const std::string& expr, int q, long even, long odd) {
        const SuperDim d = eval_sheaf(parse_sheaf(expr), q);
        vd.expect(d == SuperDim{even, odd},
                  expr + " at degree " + std::to_string(q) + ": got " +
                      std::to_string(d.even) + "|" + std::to_string(d.odd));
    };
    dims("O(0,-2) + O(-2,0) on P1xP1", 1, 2, 0);
    dims("O(-2,-2) on P1xP1", 2, 1, 0);
    dims("T(-3) on P2", 1, 1, 0);

    for (int n = 1; n <= 2; ++n)
        for (int d = -6; d <= 6; ++d)
            for (int q = 0; q <= n; ++q)
                vd.expect(h_line(n, d, q) == h_line_cech(n, d, q),
                          "closed form and complex-based dimension disagree at n=" +
                              std::to_string(n) + " d=" + std::to_string(d) +
                              " q=" + std::to_string(q));
    return result("cohomology-dimension-tables", vd,
                  "golden dimensions hit, closed form equals the complex on the sweep");
}

Check check_family_cocycle() {
    Verdict vd;
    const Atlas atlas = build_family_atlas({});
    const ConsistencyReport report = verify_cocycle(atlas);
    vd.expect(report.ok(),
              report.ok() ? "" : "cocycle defect: " + report.failures.front());

    const std::vector<std::tuple<std::size_t, std::size_t, std::string>> cubes = {
        {1, 0, "z11"}, {0, 1, "z10"}, {2, 1, "z22"},
        {1, 2, "z21"}, {0, 2, "z20"}, {2, 0, "z12"},
    };
    for (const auto& [i, j, w] : cubes) {
        const SuperFrac det = odd_block_determinant(atlas.transition(i, j));
        vd.expect(det == fvar(atlas.chart(i).ctx, w, -3),
                  "odd block on overlap (" + std::to_string(i) + "," + std::to_string(j) +
                      ") does not glue by " + w + "^-3");
    }
    return result("family-atlas-cocycle", vd,
                  "formal-deformation cocycle closed, odd blocks glue by coordinate cubes");
}

Check check_first_overlap_jacobian() {
    Verdict vd;
    const Atlas unit = build_family_atlas(FamilyParams{make_rational(1, 1)});
    const SuperMatrix& jac = unit.cached_jacobian(1, 0);
    const auto& c = unit.chart(1).ctx;
    const SuperPoly z = v(c, "z11"), w = v(c, "z21");
    const SuperPoly t1 = v(c, "th11"), t2 = v(c, "th21");
    const SuperPoly o = SuperPoly::zero(c);

    const std::vector<std::vector<SuperPoly>> expected = {
        {-(z * z), -(z * w) + t1 * t2, -(t1 * z), Rational(-2) * t2 * z},
        {o, z, o, o},
        {o, -t2, z, o},
        {o, z * t1, o, z * z},
    };
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t k = 0; k < 4; ++k)
            vd.expect(jac.at(r, k) == SuperFrac(expected[r][k]),
                      "inverse Jacobian entry (" + std::to_string(r) + "," +
                          std::to_string(k) + ") differs from the reference");
    return result("first-overlap-inverse-jacobian", vd,
                  "all sixteen entries exact, including both nilpotent corrections");
}

Check check_global_sections() {
    Verdict vd;
    const Atlas formal = build_family_atlas({});
    const SectionBasis canonical = canonical_sections({});
    vd.expect(canonical.even.size() == 12 && canonical.odd.size() == 12,
              "closed-form basis is not 12|12");
    for (std::size_t i = 0; i < canonical.even.size(); ++i)
        vd.expect(is_global(formal, canonical.even[i]),
                  "even closed-form field " + std::to_string(i + 1) + " is not global");
    for (std::size_t i = 0; i < canonical.odd.size(); ++i)
        vd.expect(is_global(formal, canonical.odd[i]),
                  "odd closed-form field " + std::to_string(i + 1) + " is not global");

    const FamilyParams unit{make_rational(1, 1)};
    const SectionBasis solved = solve_global_sections(unit);
    vd.expect(solved.even.size() == 12 && solved.odd.size() == 12,
              "regularity solve at unit deformation is not 12|12: got " +
                  std::to_string(solved.even.size()) + "|" +
                  std::to_string(solved.odd.size()));
    const SectionBasis canonical_unit = canonical_sections(unit);
    vd.expect(equal_span(solved.even, canonical_unit.even) &&
                  equal_span(solved.odd, canonical_unit.odd),
              "solved span differs from the closed-form span at unit deformation");

    const SectionBasis split = solve_global_sections(FamilyParams{make_rational(0, 1)});
    vd.expect(split.even.size() == 13 && split.odd.size() == 12,
              "regularity solve at zero deformation is not 13|12: got " +
                  std::to_string(split.even.size()) + "|" +
                  std::to_string(split.odd.size()));
    return result("global-section-counts", vd,
                  "24 closed-form sections global, solve gives 12|12 deformed and 13|12 split");
}

Check check_odd_euler_obstruction() {
    Verdict vd;
    const Atlas formal = build_family_atlas({});
    const Chart& u0 = formal.chart(0);
    VectorField s1(u0);
    s1.set("th10", fvar(u0.ctx, "th10"));
    const DeltaClass delta = delta_class(formal, s1);
    vd.expect(delta.nonzero(),
              "the odd Euler direction unexpectedly admits a bounded witness");

    VectorField s2(u0);
    s2.set("th20", fvar(u0.ctx, "th20"));
    const DeltaClass diff = delta_class(formal, s1 - s2);
    vd.expect(!diff.nonzero(),
              "the difference of the two odd Euler directions is unexpectedly obstructed");
    return result("odd-euler-obstruction", vd,
                  "single odd Euler direction obstructed, the traceless difference is not");
}

Check check_evaluation_blocks() {
    Verdict vd;
    const Atlas atlas = build_family_atlas({});
    const SectionBasis basis = canonical_sections({});
    const EvaluationMatrix m = evaluation_matrix(atlas, 0, basis);
    const ContextPtr& c = atlas.chart(0).ctx;
    const SuperPoly z1 = v(c, "z10"), z2 = v(c, "z20");
    const SuperPoly t1 = v(c, "th10"), t2 = v(c, "th20");
    const SuperPoly L = v(c, "lambda");
    const SuperPoly o = SuperPoly::zero(c);
    using Row = std::vector<SuperPoly>;

    const std::vector<std::pair<std::size_t, std::size_t>> units = {
        {0, 0}, {1, 1}, {2, 12}, {3, 13}};
    for (const auto& [r, col] : units)
        for (std::size_t row = 0; row < 4; ++row)
            vd.expect(m.matrix.at(row, col) ==
                          (row == r ? SuperFrac::one(c) : SuperFrac::zero(c)),
                      "frame column " + m.labels[col] + " is not a unit column");

    const std::vector<Row> A = {
        {z2, o, z1, o, o, o, o, o, z1 * z1, z1 * z2 - L * t1 * t2},
        {o, z1, -z2, o, o, o, z2, z2, z1 * z2 + L * t1 * t2, z2 * z2},
    };
    const std::vector<Row> B = {
        {t1, o, o, o, o, L * z2 * t1, o, L * t2, z1 * t1, o},
        {o, t1, o, o, -(L * z1 * t1), o, L * t2, o, z2 * t1, -(L * z2 * t1)},
    };
    const std::vector<Row> C = {
        {o, o, o, o, o, o, t1, o, z1 * t1, z2 * t1},
        {o, o, o, t1, z1 * t1, z2 * t1, o, t2, Rational(2) * z1 * t2,
         Rational(2) * z2 * t2},
    };
    const std::vector<Row> D = {
        {o, o, o, o, o, o, z1, -z2, o, o},
        {o, o, z1, z2, z1 * z1, z2 * z2, o, o, Rational(2) * t1 * t2,
         z1 * z2 - L * t1 * t2},
    };
    for (std::size_t r = 0; r < 2; ++r)
        for (std::size_t k = 0; k < 10; ++k) {
            vd.expect(m.matrix.at(r, 2 + k) == SuperFrac(A[r][k]),
                      "upper even block entry (" + std::to_string(r) + "," +
                          std::to_string(k) + ") differs");
            vd.expect(m.matrix.at(r, 14 + k) == SuperFrac(B[r][k]),
                      "upper odd block entry (" + std::to_string(r) + "," +
                          std::to_string(k) + ") differs");
            vd.expect(m.matrix.at(2 + r, 2 + k) == SuperFrac(C[r][k]),
                      "lower even block entry (" + std::to_string(r) + "," +
                          std::to_string(k) + ") differs");
            vd.expect(m.matrix.at(2 + r, 14 + k) == SuperFrac(D[r][k]),
                      "lower odd block entry (" + std::to_string(r) + "," +
                          std::to_string(k) + ") differs");
        }

    // The six probe sections evaluate to the literal coordinate-recovery
    // pattern on the home chart.
    const std::vector<VectorField> probes = {basis.even[8] - basis.even[9],
                                             basis.even[4],
                                             basis.even[0],
                                             basis.even[1],
                                             basis.odd[0],
                                             basis.odd[1]};
    const EvaluationMatrix p =
        evaluation_matrix(atlas, 0, {"P1", "P2", "P3", "P4", "P5", "P6"}, probes);
    const SuperFrac zero = SuperFrac::zero(c);
    const SuperFrac one = SuperFrac::one(c);
    const std::vector<std::vector<SuperFrac>> pattern = {
        {zero, fvar(c, "z10"), one, zero, zero, zero},
        {zero, -fvar(c, "z20"), zero, one, zero, zero},
        {fvar(c, "th10"), zero, zero, zero, one, zero},
        {-fvar(c, "th20"), zero, zero, zero, zero, one},
    };
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t k = 0; k < 6; ++k)
            vd.expect(p.matrix.at(r, k) == pattern[r][k],
                      "probe matrix entry (" + std::to_string(r) + "," +
                          std::to_string(k) + ") differs from the linear pattern");
    return result("section-evaluation-blocks", vd,
                  "all four blocks entry for entry, probe matrix is the linear pattern");
}

Check check_rank_certificates() {
    Verdict vd;
    const FamilyParams unit{make_rational(1, 1)};
    const Atlas atlas = build_family_atlas(unit);
    const SectionBasis basis = canonical_sections(unit);
    const std::vector<SamplePoint> samples = default_samples();

    for (std::size_t k = 0; k < 3; ++k) {
        const EvaluationMatrix m = evaluation_matrix(atlas, k, basis);
        const RankCertificate cert = rank_certificate(m, samples, make_rational(1, 1));
        vd.expect(cert.pivots.size() == 4, "chart " + std::to_string(k) +
                                               ": no full pivot set found");
        for (std::size_t r : cert.generation_ranks)
            vd.expect(r == 4, "chart " + std::to_string(k) +
                                  ": generation rank " + std::to_string(r) + " != 4");
        for (std::size_t r : cert.differential_ranks)
            vd.expect(r == 4, "chart " + std::to_string(k) +
                                  ": differential rank " + std::to_string(r) + " != 4");
        vd.expect(cert.embedding, "chart " + std::to_string(k) + ": certificate failed");

        const InjectivityReport rep = injectivity_check(atlas, basis, k);
        vd.expect(rep.injective, "chart " + std::to_string(k) +
                                     ": probe directions escape the global span");
    }

    // Symbolic identity minor of the probe matrix on the home chart.
    const SectionBasis formal = canonical_sections({});
    const Atlas formal_atlas = build_family_atlas({});
    const std::vector<VectorField> probes = {formal.even[8] - formal.even[9],
                                             formal.even[4],
                                             formal.even[0],
                                             formal.even[1],
                                             formal.odd[0],
                                             formal.odd[1]};
    const EvaluationMatrix p = evaluation_matrix(
        formal_atlas, 0, {"P1", "P2", "P3", "P4", "P5", "P6"}, probes);
    const ContextPtr& c = formal_atlas.chart(0).ctx;
    const SuperFrac one = SuperFrac::one(c);
    vd.expect(p.matrix.at(0, 1).partial("z10") == one, "minor entry dz1 is not +1");
    vd.expect(p.matrix.at(1, 1).partial("z20") == -one, "minor entry dz2 is not -1");
    vd.expect(p.matrix.at(2, 0).partial("th10") == one, "minor entry dth1 is not +1");
    vd.expect(p.matrix.at(3, 0).partial("th20") == -one, "minor entry dth2 is not -1");
    return result("rank-certificates", vd,
                  "body rank 4 at five samples on three charts, signed identity minor exact");
}

Check check_picard_boundary() {
    Verdict vd;
    vd.expect(picard_boundary(1, 0) == Rational(1), "boundary of (1,0) is not 1");
    vd.expect(picard_boundary(0, 1) == Rational(1), "boundary of (0,1) is not 1");
    for (int a = 1; a <= 3; ++a)
        vd.expect(picard_boundary(a, -a) == Rational(0),
                  "boundary of (" + std::to_string(a) + "," + std::to_string(-a) +
                      ") is not 0");
    for (int a = -2; a <= 2; ++a)
        for (int b = -2; b <= 2; ++b)
            vd.expect(picard_boundary(a, b) == Rational(a + b),
                      "boundary of (" + std::to_string(a) + "," + std::to_string(b) +
                          ") is not additive");
    return result("picard-boundary", vd,
                  "boundary values exact, additive on the five-by-five grid");
}

// Random polynomial source mirroring the unit-test generator.
struct Gen {
    std::mt19937_64 rng{20260815};
    ContextPtr ctx = make_context({"z", "w"}, {"t1", "t2", "t3"}, {"lambda"});

    Rational coeff() {
        std::uniform_int_distribution<int> num(-6, 6), den(1, 4);
        int n = num(rng);
        if (n == 0) n = 1;
        return make_rational(n, den(rng));
    }

    SuperPoly poly(std::optional<Parity> want = std::nullopt) {
        std::uniform_int_distribution<int> nterms(1, 4), exp(-2, 2), pexp(0, 2),
            mask(0, 7);
        SuperPoly p(ctx);
        for (int t = 0, n = nterms(rng); t < n; ++t) {
            SuperMonomial m;
            m.even_exps = {exp(rng), exp(rng)};
            m.param_exps = {pexp(rng)};
            m.odd_mask = static_cast<std::uint64_t>(mask(rng));
            if (want && m.parity() != *want) m.odd_mask ^= 1;
            p.add_term(m, coeff());
        }
        return p;
    }
};

Check check_algebra_laws() {
    Verdict vd;
    Gen g;
    long cases = 0;
    for (int i = 0; i < 2500 && vd.ok; ++i) {
        const Parity pa = (i % 2 == 0) ? Parity::Even : Parity::Odd;
        const Parity pb = (i % 4 < 2) ? Parity::Even : Parity::Odd;
        const SuperPoly a = g.poly(pa), b = g.poly(pb), c = g.poly();
        const bool both_odd = pa == Parity::Odd && pb == Parity::Odd;
        const SuperPoly ab = a * b, ba = b * a;
        vd.expect(ab == (both_odd ? -ba : ba), "graded commutativity failed");
        vd.expect((a * b) * c == a * (b * c), "associativity failed");
        vd.expect(a * (b + c) == a * b + a * c, "distributivity failed");
        cases += 3;
    }
    for (int i = 0; i < 2500 && vd.ok; ++i) {
        const Parity pa = (i % 2 == 0) ? Parity::Even : Parity::Odd;
        const SuperPoly a = g.poly(pa), b = g.poly();
        const std::string th = (i % 3 == 0) ? "t1" : (i % 3 == 1) ? "t2" : "t3";
        const SuperPoly rhs = a.partial(th) * b + (pa == Parity::Odd
                                                       ? -(a * b.partial(th))
                                                       : a * b.partial(th));
        vd.expect((a * b).partial(th) == rhs, "graded Leibniz rule failed");
        ++cases;
    }
    for (int i = 0; i < 1000 && vd.ok; ++i) {
        const SuperPoly a = g.poly(), b = g.poly();
        vd.expect((a * b).partial("z") == a.partial("z") * b + a * b.partial("z"),
                  "even derivation rule failed");
        ++cases;
    }

    // Product-identity checks over both committed atlases.
    const std::vector<Atlas> atlases = {g11_atlas(), build_family_atlas({})};
    for (const Atlas& atlas : atlases) {
        for (std::size_t i = 0; i < atlas.size(); ++i)
            for (std::size_t j = 0; j < atlas.size(); ++j) {
                if (i == j) continue;
                const SuperMatrix& jac = atlas.cached_jacobian(i, j);
                const SuperMatrix inv = invert_matrix(jac);
                vd.expect((jac * inv).is_identity() && (inv * jac).is_identity(),
                          "Jacobian inverse product is not the identity");
                const TransitionMap& t = atlas.transition(i, j);
                for (const auto& [coord, expr] : t.assignment) {
                    if (expr.parity() != Parity::Even) continue;
                    const SuperFrac w = invert_even(expr);
                    vd.expect(w * expr == SuperFrac::one(expr.context()),
                              "even transition entry times its inverse is not one");
                }
            }
    }
    return result("randomized-algebra-laws", vd,
                  std::to_string(cases) + " randomized law cases, inverses verified on both atlases");
}

}  // namespace

std::vector<Check> run_acceptance_checks() {
    return {
        check_four_cell_cover(),
        check_plane_renormalization(),
        check_cohomology_tables(),
        check_family_cocycle(),
        check_first_overlap_jacobian(),
        check_global_sections(),
        check_odd_euler_obstruction(),
        check_evaluation_blocks(),
        check_rank_certificates(),
        check_picard_boundary(),
        check_algebra_laws(),
    };
}

}  // namespace supergeo
