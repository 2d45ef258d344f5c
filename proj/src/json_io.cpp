#include "supergeo/json_io.hpp"

namespace supergeo {

using nlohmann::json;

json context_to_json(const GeneratorContext& ctx) {
    return json{{"even", ctx.even_names()},
                {"odd", ctx.odd_names()},
                {"params", ctx.param_names()}};
}

ContextPtr context_from_json(const json& j) {
    if (!j.is_object() || !j.contains("even") || !j.contains("odd") || !j.contains("params"))
        throw ParseError("context: expected {even, odd, params}");
    return make_context(j.at("even").get<std::vector<std::string>>(),
                        j.at("odd").get<std::vector<std::string>>(),
                        j.at("params").get<std::vector<std::string>>());
}

json poly_to_json(const SuperPoly& p) {
    const auto& ctx = *p.context();
    json terms = json::array();
    for (const auto& [m, c] : p.terms()) {
        json even = json::object();
        for (std::size_t i = 0; i < ctx.even_count(); ++i)
            if (m.even_exps[i] != 0) even[ctx.even_names()[i]] = m.even_exps[i];
        json params = json::object();
        for (std::size_t i = 0; i < ctx.param_count(); ++i)
            if (m.param_exps[i] != 0) params[ctx.param_names()[i]] = m.param_exps[i];
        json odd = json::array();
        for (std::size_t i = 0; i < ctx.odd_count(); ++i)
            if (m.odd_mask & (std::uint64_t{1} << i)) odd.push_back(ctx.odd_names()[i]);
        terms.push_back(json{{"coeff", rational_to_string(c)},
                             {"even", even},
                             {"params", params},
                             {"odd", odd}});
    }
    return terms;
}

SuperPoly poly_from_json(const json& j, const ContextPtr& ctx) {
    if (!j.is_array()) throw ParseError("poly: expected an array of terms");
    SuperPoly p(ctx);
    for (const auto& t : j) {
        if (!t.is_object() || !t.contains("coeff"))
            throw ParseError("poly term: expected {coeff, even, params, odd}");
        SuperMonomial m;
        m.even_exps.assign(ctx->even_count(), 0);
        m.param_exps.assign(ctx->param_count(), 0);
        if (t.contains("even"))
            for (const auto& [name, exp] : t.at("even").items()) {
                int i = ctx->even_index(name);
                if (i < 0) throw ParseError("poly term: unknown even variable " + name);
                m.even_exps[i] = exp.get<int>();
            }
        if (t.contains("params"))
            for (const auto& [name, exp] : t.at("params").items()) {
                int i = ctx->param_index(name);
                if (i < 0) throw ParseError("poly term: unknown parameter " + name);
                int e = exp.get<int>();
                if (e < 0) throw ParseError("poly term: negative parameter exponent");
                m.param_exps[i] = e;
            }
        if (t.contains("odd"))
            for (const auto& name : t.at("odd")) {
                int i = ctx->odd_index(name.get<std::string>());
                if (i < 0)
                    throw ParseError("poly term: unknown odd variable " +
                                     name.get<std::string>());
                std::uint64_t bit = std::uint64_t{1} << i;
                if (m.odd_mask & bit) throw ParseError("poly term: repeated odd variable");
                m.odd_mask |= bit;
            }
        p.add_term(m, parse_rational(t.at("coeff").get<std::string>()));
    }
    return p;
}

json frac_to_json(const SuperFrac& f) {
    return json{{"num", poly_to_json(f.num())}, {"den", poly_to_json(f.den())}};
}

SuperFrac frac_from_json(const json& j, const ContextPtr& ctx) {
    if (!j.is_object() || !j.contains("num") || !j.contains("den"))
        throw ParseError("frac: expected {num, den}");
    return SuperFrac(poly_from_json(j.at("num"), ctx), poly_from_json(j.at("den"), ctx));
}

json matrix_to_json(const SuperMatrix& m) {
    auto parities = [](const std::vector<Parity>& v) {
        json a = json::array();
        for (Parity p : v) a.push_back(parity_name(p));
        return a;
    };
    json entries = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) entries.push_back(frac_to_json(m.at(i, j)));
    return json{{"row_parities", parities(m.row_parities())},
                {"col_parities", parities(m.col_parities())},
                {"entries", entries}};
}

namespace {

std::vector<Parity> parities_from_json(const json& j) {
    std::vector<Parity> v;
    for (const auto& s : j) {
        std::string t = s.get<std::string>();
        if (t == "even") v.push_back(Parity::Even);
        else if (t == "odd") v.push_back(Parity::Odd);
        else throw ParseError("matrix: bad parity tag " + t);
    }
    return v;
}

}  // namespace

SuperMatrix matrix_from_json(const json& j, const ContextPtr& ctx) {
    if (!j.is_object() || !j.contains("row_parities") || !j.contains("col_parities") ||
        !j.contains("entries"))
        throw ParseError("matrix: expected {row_parities, col_parities, entries}");
    SuperMatrix m(ctx, parities_from_json(j.at("row_parities")),
                  parities_from_json(j.at("col_parities")));
    const auto& entries = j.at("entries");
    if (!entries.is_array() || entries.size() != m.rows() * m.cols())
        throw ParseError("matrix: entry count does not match shape");
    std::size_t k = 0;
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c)
            m.set(r, c, frac_from_json(entries[k++], ctx));
    return m;
}

json poly_document(const SuperPoly& p) {
    return json{{"schema", "superpoly/1"},
                {"context", context_to_json(*p.context())},
                {"terms", poly_to_json(p)}};
}

SuperPoly poly_from_document(const json& j) {
    if (j.value("schema", "") != "superpoly/1") throw ParseError("expected schema superpoly/1");
    return poly_from_json(j.at("terms"), context_from_json(j.at("context")));
}

json frac_document(const SuperFrac& f) {
    return json{{"schema", "superfrac/1"},
                {"context", context_to_json(*f.context())},
                {"value", frac_to_json(f)}};
}

SuperFrac frac_from_document(const json& j) {
    if (j.value("schema", "") != "superfrac/1") throw ParseError("expected schema superfrac/1");
    return frac_from_json(j.at("value"), context_from_json(j.at("context")));
}

json matrix_document(const SuperMatrix& m) {
    return json{{"schema", "supermatrix/1"},
                {"context", context_to_json(*m.context())},
                {"value", matrix_to_json(m)}};
}

SuperMatrix matrix_from_document(const json& j) {
    if (j.value("schema", "") != "supermatrix/1")
        throw ParseError("expected schema supermatrix/1");
    return matrix_from_json(j.at("value"), context_from_json(j.at("context")));
}

json atlas_document(const Atlas& atlas) {
    json charts = json::array();
    for (const Chart& c : atlas.charts())
        charts.push_back(json{{"name", c.name}, {"even", c.even_coords}, {"odd", c.odd_coords}});
    json transitions = json::array();
    for (std::size_t i = 0; i < atlas.size(); ++i) {
        for (std::size_t j = 0; j < atlas.size(); ++j) {
            if (i == j) continue;
            const TransitionMap& t = atlas.transition(i, j);
            json assignment = json::object();
            for (const auto& [coord, value] : t.assignment)
                assignment[coord] = frac_to_json(value);
            transitions.push_back(json{{"source", t.source.name},
                                       {"target", t.target.name},
                                       {"assignment", assignment}});
        }
    }
    json params = atlas.size() ? json(atlas.chart(0).ctx->param_names()) : json::array();
    return json{{"schema", "atlas/1"},
                {"params", params},
                {"charts", charts},
                {"transitions", transitions}};
}

Atlas atlas_from_document(const json& j) {
    if (j.value("schema", "") != "atlas/1") throw ParseError("expected schema atlas/1");
    auto params = j.at("params").get<std::vector<std::string>>();
    std::vector<Chart> charts;
    for (const auto& c : j.at("charts"))
        charts.emplace_back(c.at("name").get<std::string>(),
                            c.at("even").get<std::vector<std::string>>(),
                            c.at("odd").get<std::vector<std::string>>(), params);
    Atlas atlas(charts);
    for (const auto& t : j.at("transitions")) {
        const Chart& source = charts.at(atlas.chart_index(t.at("source").get<std::string>()));
        const Chart& target = charts.at(atlas.chart_index(t.at("target").get<std::string>()));
        std::map<std::string, SuperFrac> assignment;
        for (const auto& [coord, value] : t.at("assignment").items())
            assignment.emplace(coord, frac_from_json(value, source.ctx));
        atlas.set_transition(TransitionMap(source, target, std::move(assignment)));
    }
    return atlas;
}

}  // namespace supergeo
