#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "supergeo/atlas.hpp"
#include "supergeo/json_io.hpp"

using namespace supergeo;

namespace {

// Two affine charts of the odd-deformed plane family restricted to their
// overlap: the z2/th2 directions transform with a lambda-weighted twist.
struct PlanePatch {
    Chart u0{"U0", {"z10", "z20"}, {"th10", "th20"}};
    Chart u1{"U1", {"z11", "z21"}, {"th11", "th21"}};
    TransitionMap t10;  // writes U0 coordinates in U1 coordinates
    TransitionMap t01;  // writes U1 coordinates in U0 coordinates

    PlanePatch() : t10(make_t10()), t01(make_t01()) {}

    static SuperPoly v(const ContextPtr& c, const std::string& n, int e = 1) {
        return SuperPoly::variable(c, n, e);
    }

    TransitionMap make_t10() {
        const auto& c = u1.ctx;
        std::map<std::string, SuperFrac> a;
        a.emplace("z10", SuperFrac::variable(c, "z11", -1));
        a.emplace("z20", SuperFrac(v(c, "z21") * v(c, "z11") +
                                       v(c, "lambda") * v(c, "th11") * v(c, "th21"),
                                   v(c, "z11", 2)));
        a.emplace("th10", SuperFrac(v(c, "th11"), v(c, "z11")));
        a.emplace("th20", SuperFrac(v(c, "th21"), v(c, "z11", 2)));
        return TransitionMap(u1, u0, std::move(a));
    }

    TransitionMap make_t01() {
        const auto& c = u0.ctx;
        std::map<std::string, SuperFrac> a;
        a.emplace("z11", SuperFrac::variable(c, "z10", -1));
        a.emplace("z21", SuperFrac(v(c, "z20") * v(c, "z10") -
                                       v(c, "lambda") * v(c, "th10") * v(c, "th20"),
                                   v(c, "z10", 2)));
        a.emplace("th11", SuperFrac(v(c, "th10"), v(c, "z10")));
        a.emplace("th21", SuperFrac(v(c, "th20"), v(c, "z10", 2)));
        return TransitionMap(u0, u1, std::move(a));
    }

    Atlas atlas() const {
        Atlas a({u0, u1});
        a.set_transition(t01);
        a.set_transition(t10);
        return a;
    }
};

SuperFrac fvar(const ContextPtr& c, const std::string& n, int e = 1) {
    return SuperFrac::variable(c, n, e);
}

}  // namespace

TEST_CASE("substitution rewrites target functions in source coordinates") {
    PlanePatch p;
    const auto& c0 = p.u0.ctx;
    const auto& c1 = p.u1.ctx;

    CHECK(substitute(fvar(c0, "z10"), p.t10) == fvar(c1, "z11", -1));
    CHECK(substitute(fvar(c0, "z10", -1), p.t10) == fvar(c1, "z11"));
    CHECK(substitute(fvar(c0, "z10", -3), p.t10) == fvar(c1, "z11", 3));

    // z10*z20 = z21/z11^2 + lambda th11 th21 / z11^3
    SuperFrac expected(PlanePatch::v(c1, "z21") * PlanePatch::v(c1, "z11") +
                           PlanePatch::v(c1, "lambda") * PlanePatch::v(c1, "th11") *
                               PlanePatch::v(c1, "th21"),
                       PlanePatch::v(c1, "z11", 3));
    CHECK(substitute(fvar(c0, "z10") * fvar(c0, "z20"), p.t10) == expected);

    // Odd products pick up the powers of both denominators.
    CHECK(substitute(fvar(c0, "th10") * fvar(c0, "th20"), p.t10) ==
          SuperFrac(PlanePatch::v(c1, "th11") * PlanePatch::v(c1, "th21"),
                    PlanePatch::v(c1, "z11", 3)));

    CHECK_THROWS_AS(substitute(fvar(c1, "z11"), p.t10), ContextMismatchError);
}

TEST_CASE("composing a coordinate change with its inverse is the identity") {
    PlanePatch p;
    TransitionMap round0 = compose(p.t01, p.t10);  // U0 -> U1 -> U0
    for (const std::string& coord : p.u0.all_coords())
        CHECK(round0.of(coord) == fvar(p.u0.ctx, coord));
    TransitionMap round1 = compose(p.t10, p.t01);
    for (const std::string& coord : p.u1.all_coords())
        CHECK(round1.of(coord) == fvar(p.u1.ctx, coord));

    CHECK(verify_cocycle(p.atlas()).ok());
    CHECK_THROWS_AS(compose(p.t01, p.t01), ContextMismatchError);
}

TEST_CASE("cocycle verification flags a corrupted transition") {
    PlanePatch p;
    Atlas bad({p.u0, p.u1});
    bad.set_transition(p.t10);
    // Flip the sign of the lambda term in the inverse map.
    const auto& c = p.u0.ctx;
    std::map<std::string, SuperFrac> a;
    a.emplace("z11", fvar(c, "z10", -1));
    a.emplace("z21", SuperFrac(PlanePatch::v(c, "z20") * PlanePatch::v(c, "z10") +
                                   PlanePatch::v(c, "lambda") * PlanePatch::v(c, "th10") *
                                       PlanePatch::v(c, "th20"),
                               PlanePatch::v(c, "z10", 2)));
    a.emplace("th11", SuperFrac(PlanePatch::v(c, "th10"), PlanePatch::v(c, "z10")));
    a.emplace("th21", SuperFrac(PlanePatch::v(c, "th20"), PlanePatch::v(c, "z10", 2)));
    bad.set_transition(TransitionMap(p.u0, p.u1, std::move(a)));

    ConsistencyReport report = verify_cocycle(bad);
    CHECK_FALSE(report.ok());
    REQUIRE_FALSE(report.failures.empty());
    CHECK(report.failures[0].find("pair") != std::string::npos);
}

TEST_CASE("frame change matrix matches the hand-inverted forward derivative") {
    PlanePatch p;
    SuperMatrix jac = jacobian(p.t10);
    const auto& c = p.u1.ctx;
    auto v = [&](const std::string& n, int e = 1) { return PlanePatch::v(c, n, e); };

    // Rows expand d/d(z10), d/d(z20), d/d(th10), d/d(th20) in the U1 frame.
    CHECK(jac.at(0, 0) == SuperFrac(-v("z11", 2)));
    CHECK(jac.at(0, 1) ==
          SuperFrac(-(v("z11") * v("z21")) + v("lambda") * v("th11") * v("th21")));
    CHECK(jac.at(0, 2) == SuperFrac(-(v("th11") * v("z11"))));
    CHECK(jac.at(0, 3) == SuperFrac(v("th21") * v("z11") * -2));

    CHECK(jac.at(1, 0).is_zero());
    CHECK(jac.at(1, 1) == fvar(c, "z11"));
    CHECK(jac.at(1, 2).is_zero());
    CHECK(jac.at(1, 3).is_zero());

    CHECK(jac.at(2, 0).is_zero());
    CHECK(jac.at(2, 1) == SuperFrac(-(v("lambda") * v("th21"))));
    CHECK(jac.at(2, 2) == fvar(c, "z11"));
    CHECK(jac.at(2, 3).is_zero());

    CHECK(jac.at(3, 0).is_zero());
    CHECK(jac.at(3, 1) == SuperFrac(v("lambda") * v("z11") * v("th11")));
    CHECK(jac.at(3, 2).is_zero());
    CHECK(jac.at(3, 3) == SuperFrac(v("z11", 2)));

    CHECK(jac.row_parities() ==
          std::vector<Parity>{Parity::Even, Parity::Even, Parity::Odd, Parity::Odd});
}

TEST_CASE("transport reproduces the classical frame changes") {
    PlanePatch p;
    const auto& c0 = p.u0.ctx;
    const auto& c1 = p.u1.ctx;
    auto v0 = [&](const std::string& n, int e = 1) { return PlanePatch::v(c0, n, e); };
    auto v1 = [&](const std::string& n, int e = 1) { return PlanePatch::v(c1, n, e); };

    SUBCASE("odd Euler field gains a nilpotent correction") {
        VectorField x(p.u0);
        x.set("th10", SuperFrac(v0("th10")));
        VectorField moved = transport(x, p.t10);

        VectorField expected(p.u1);
        expected.set("th11", SuperFrac(v1("th11")));
        expected.set("z21", SuperFrac(-(v1("lambda") * v1("th11") * v1("th21")), v1("z11")));
        CHECK(moved == expected);
    }

    SUBCASE("twisted odd translation becomes a plain frame vector") {
        VectorField x(p.u0);
        x.set("th10", SuperFrac(v0("z10")));
        x.set("z20", SuperFrac(v0("lambda") * v0("th20")));
        VectorField moved = transport(x, p.t10);

        VectorField expected(p.u1);
        expected.set("th11", SuperFrac::one(c1));
        CHECK(moved == expected);
    }

    SUBCASE("degree-two even field lands on a translation") {
        VectorField x(p.u0);
        x.set("z10", SuperFrac(v0("z10", 2)));
        x.set("z20", SuperFrac(v0("z10") * v0("z20") +
                               v0("lambda") * v0("th10") * v0("th20")));
        x.set("th10", SuperFrac(v0("z10") * v0("th10")));
        x.set("th20", SuperFrac(v0("z10") * v0("th20") * 2));
        VectorField moved = transport(x, p.t10);

        VectorField expected(p.u1);
        expected.set("z11", -SuperFrac::one(c1));
        CHECK(moved == expected);
    }

    SUBCASE("transport respects addition and the cached matrix") {
        Atlas atlas = p.atlas();
        VectorField x(p.u0), y(p.u0);
        x.set("z10", SuperFrac(v0("z10", 2)));
        y.set("th10", SuperFrac(v0("th10")));
        const SuperMatrix& jac = atlas.cached_jacobian(1, 0);
        CHECK(transport(x + y, p.t10, jac) == transport(x, p.t10) + transport(y, p.t10));
    }
}

TEST_CASE("super Lie bracket on fields") {
    PlanePatch p;
    const auto& c = p.u0.ctx;
    auto v = [&](const std::string& n, int e = 1) { return PlanePatch::v(c, n, e); };

    VectorField d_th(p.u0);
    d_th.set("th10", SuperFrac::one(c));
    VectorField euler_th(p.u0);
    euler_th.set("th10", SuperFrac(v("th10")));

    // [d/dth, th d/dth] = d/dth
    CHECK(bracket(d_th, euler_th) == d_th);

    // An odd field anticommutes with itself; theta d/dz squares to zero.
    VectorField xi(p.u0);
    xi.set("z10", SuperFrac(v("th10")));
    CHECK(bracket(xi, xi).is_zero());

    // {d/dth, th d/dz} = d/dz
    VectorField mixed(p.u0);
    mixed.set("z10", SuperFrac(v("th10")));
    VectorField d_z(p.u0);
    d_z.set("z10", SuperFrac::one(c));
    CHECK(bracket(d_th, mixed) == d_z);

    // Even part behaves classically: [z d/dz, z^2 d/dz] = z^2 d/dz.
    VectorField e1(p.u0), e2(p.u0);
    e1.set("z10", SuperFrac(v("z10")));
    e2.set("z10", SuperFrac(v("z10", 2)));
    VectorField expect(p.u0);
    expect.set("z10", SuperFrac(v("z10", 2)));
    CHECK(bracket(e1, e2) == expect);

    CHECK(d_th.parity() == Parity::Odd);
    CHECK(euler_th.parity() == Parity::Even);
    VectorField inhomogeneous = d_z + mixed;
    CHECK_FALSE(inhomogeneous.parity().has_value());
    CHECK_THROWS_AS(bracket(inhomogeneous, d_z), ParityMismatchError);
}

TEST_CASE("obstruction cochain extraction and antisymmetry") {
    PlanePatch p;
    Atlas atlas = p.atlas();
    VectorCochain omega = extract_omega(atlas);
    const auto& c0 = p.u0.ctx;
    const auto& c1 = p.u1.ctx;
    auto v0 = [&](const std::string& n, int e = 1) { return PlanePatch::v(c0, n, e); };
    auto v1 = [&](const std::string& n, int e = 1) { return PlanePatch::v(c1, n, e); };

    const CochainEntry& e01 = omega.entry(0, 1);
    CHECK(e01.raw.at("z10").is_zero());
    CHECK(e01.raw.at("z20") ==
          SuperFrac(v1("lambda") * v1("th11") * v1("th21"), v1("z11", 2)));
    CHECK(e01.field.comp("z10").is_zero());
    CHECK(e01.field.comp("z20") ==
          SuperFrac(v0("lambda") * v0("th10") * v0("th20"), v0("z10")));

    const CochainEntry& e10 = omega.entry(1, 0);
    CHECK(e10.field.comp("z21") ==
          SuperFrac(-(v1("lambda") * v1("th11") * v1("th21")), v1("z11")));

    CHECK(verify_omega_cocycle(omega, atlas).ok());
}

TEST_CASE("coboundary witness finds exact cochains and rejects the obstruction") {
    PlanePatch p;
    Atlas atlas = p.atlas();
    const auto& c0 = p.u0.ctx;
    auto v0 = [&](const std::string& n, int e = 1) { return PlanePatch::v(c0, n, e); };

    SUBCASE("a difference cochain of regular fields is recognized") {
        VectorField w0(p.u0);
        w0.set("z20", SuperFrac(v0("th10") * v0("th20") * v0("z10")));
        VectorCochain diff;
        CochainEntry e01;
        e01.i = 0;
        e01.j = 1;
        e01.field = w0;  // w1 = 0
        diff.set_entry(e01);
        CochainEntry e10;
        e10.i = 1;
        e10.j = 0;
        e10.field = -transport(w0, p.t10);
        diff.set_entry(e10);

        auto witness = coboundary_witness(atlas, diff, {2, 1});
        REQUIRE(witness.has_value());
        const VectorField& g0 = (*witness)[0];
        const VectorField& g1 = (*witness)[1];
        CHECK(g0 - transport(g1, atlas.transition(0, 1)) == e01.field);
        CHECK(g1 - transport(g0, atlas.transition(1, 0)) == e10.field);
    }

    SUBCASE("the extracted obstruction admits no bounded witness") {
        VectorCochain omega = extract_omega(atlas);
        CHECK_FALSE(coboundary_witness(atlas, omega, {3, 2}).has_value());
    }
}

TEST_CASE("atlas documents round trip byte for byte") {
    PlanePatch p;
    Atlas atlas = p.atlas();
    nlohmann::json doc = atlas_document(atlas);
    Atlas back = atlas_from_document(doc);

    REQUIRE(back.size() == atlas.size());
    for (std::size_t i = 0; i < atlas.size(); ++i) CHECK(back.chart(i) == atlas.chart(i));
    for (std::size_t i = 0; i < atlas.size(); ++i)
        for (std::size_t j = 0; j < atlas.size(); ++j)
            for (const std::string& coord : atlas.chart(j).all_coords())
                CHECK(back.transition(i, j).of(coord) == atlas.transition(i, j).of(coord));

    CHECK(atlas_document(back).dump() == doc.dump());
}
