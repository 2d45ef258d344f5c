#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "supergeo/json_io.hpp"

using namespace supergeo;
using nlohmann::json;

namespace {

struct Gen {
    std::mt19937_64 rng{77};
    ContextPtr ctx = make_context({"x", "y"}, {"xi", "eta"}, {"lambda"});

    SuperPoly poly(bool unit_safe = false) {
        std::uniform_int_distribution<int> nterms(0, 5), exp(-3, 3), pexp(0, 2),
            mask(0, 3), num(-9, 9), den(1, 7);
        SuperPoly p(ctx);
        for (int t = 0, n = nterms(rng); t < n; ++t) {
            SuperMonomial m;
            m.even_exps = {exp(rng), exp(rng)};
            m.param_exps = {pexp(rng)};
            m.odd_mask = static_cast<std::uint64_t>(mask(rng));
            if (unit_safe && m.odd_mask == 0) m.param_exps = {0};
            int c = num(rng);
            p.add_term(m, make_rational(c ? c : 2, den(rng)));
        }
        return p;
    }

    SuperFrac frac() {
        SuperPoly d = poly(true).body() + SuperPoly::constant(ctx, 5);
        return SuperFrac(poly(), d);
    }
};

}  // namespace

TEST_CASE("poly JSON round-trip is exact") {
    Gen g;
    for (int i = 0; i < 500; ++i) {
        SuperPoly p = g.poly();
        json j = poly_to_json(p);
        CHECK(poly_from_json(j, g.ctx) == p);
        // Byte-exact re-serialization.
        CHECK(json::parse(j.dump()).dump() == poly_to_json(poly_from_json(j, g.ctx)).dump());
    }
}

TEST_CASE("term shape carries coeff/even/params/odd") {
    auto ctx = make_context({"z"}, {"th1", "th2"}, {"lambda"});
    SuperPoly p = SuperPoly::variable(ctx, "z", -2) *
                  SuperPoly::variable(ctx, "lambda") *
                  SuperPoly::variable(ctx, "th1") * SuperPoly::variable(ctx, "th2") *
                  make_rational(-3, 4);
    json j = poly_to_json(p);
    REQUIRE(j.size() == 1);
    CHECK(j[0]["coeff"] == "-3/4");
    CHECK(j[0]["even"]["z"] == -2);
    CHECK(j[0]["params"]["lambda"] == 1);
    CHECK(j[0]["odd"] == json::array({"th1", "th2"}));
}

TEST_CASE("frac documents round-trip with their context") {
    Gen g;
    for (int i = 0; i < 200; ++i) {
        SuperFrac f = g.frac();
        json doc = frac_document(f);
        SuperFrac back = frac_from_document(json::parse(doc.dump()));
        CHECK(back == f);
        CHECK(frac_document(back).dump() == doc.dump());
    }
}

TEST_CASE("matrix round-trip preserves parities and entries") {
    Gen g;
    std::vector<Parity> rp{Parity::Even, Parity::Odd};
    std::vector<Parity> cp{Parity::Even, Parity::Odd, Parity::Even};
    for (int i = 0; i < 50; ++i) {
        SuperMatrix m(g.ctx, rp, cp);
        for (std::size_t r = 0; r < 2; ++r)
            for (std::size_t c = 0; c < 3; ++c) m.set(r, c, g.frac());
        json doc = matrix_document(m);
        SuperMatrix back = matrix_from_document(json::parse(doc.dump()));
        CHECK(back == m);
        CHECK(back.row_parities() == rp);
        CHECK(back.col_parities() == cp);
        CHECK(matrix_document(back).dump() == doc.dump());
    }
}

TEST_CASE("malformed input is rejected") {
    auto ctx = make_context({"z"}, {"t"}, {"lambda"});
    CHECK_THROWS_AS(poly_from_json(json::parse(R"([{"coeff":"1","even":{"w":1}}])"), ctx),
                    ParseError);
    CHECK_THROWS_AS(poly_from_json(json::parse(R"([{"coeff":"1/0"}])"), ctx), ParseError);
    CHECK_THROWS_AS(poly_from_json(json::parse(R"([{"coeff":"x"}])"), ctx), ParseError);
    CHECK_THROWS_AS(poly_from_json(json::parse(R"([{"coeff":"1","odd":["t","t"]}])"), ctx),
                    ParseError);
    CHECK_THROWS_AS(frac_from_json(json::parse(R"({"num":[]})"), ctx), ParseError);
}
