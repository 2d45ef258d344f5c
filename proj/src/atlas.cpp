#include "supergeo/atlas.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

namespace supergeo {

namespace {

SuperFrac frac_pow(const SuperFrac& f, unsigned n) {
    SuperFrac acc = SuperFrac::one(f.context());
    SuperFrac base = f;
    while (n) {
        if (n & 1u) acc = acc * base;
        base = base * base;
        n >>= 1u;
    }
    return acc;
}

}  // namespace

Chart::Chart(std::string chart_name, std::vector<std::string> even,
             std::vector<std::string> odd, std::vector<std::string> params)
    : name(std::move(chart_name)),
      even_coords(std::move(even)),
      odd_coords(std::move(odd)),
      ctx(make_context(even_coords, odd_coords, std::move(params))) {}

std::vector<std::string> Chart::all_coords() const {
    std::vector<std::string> out = even_coords;
    out.insert(out.end(), odd_coords.begin(), odd_coords.end());
    return out;
}

Parity Chart::coord_parity(const std::string& coord) const {
    if (ctx->even_index(coord) >= 0) return Parity::Even;
    if (ctx->odd_index(coord) >= 0) return Parity::Odd;
    throw UnknownVariableError("chart " + name + " has no coordinate " + coord);
}

TransitionMap::TransitionMap(Chart src, Chart tgt, std::map<std::string, SuperFrac> assign)
    : source(std::move(src)), target(std::move(tgt)), assignment(std::move(assign)) {
    for (const auto& [coord, value] : assignment) {
        Parity p = target.coord_parity(coord);  // throws on a stray name
        require_same_context(value.context(), source.ctx,
                             ("transition " + source.name + " -> " + target.name).c_str());
        if (!value.is_homogeneous(p))
            throw ParityMismatchError("transition " + source.name + " -> " + target.name +
                                      ": assignment for " + coord + " is not " +
                                      parity_name(p));
    }
    for (const std::string& coord : target.all_coords())
        if (!assignment.count(coord))
            throw ConstraintViolationError("transition " + source.name + " -> " +
                                           target.name + ": no assignment for " + coord);
}

const SuperFrac& TransitionMap::of(const std::string& target_coord) const {
    auto it = assignment.find(target_coord);
    if (it == assignment.end())
        throw UnknownVariableError("transition has no assignment for " + target_coord);
    return it->second;
}

TransitionMap identity_transition(const Chart& chart) {
    std::map<std::string, SuperFrac> assign;
    for (const std::string& coord : chart.all_coords())
        assign.emplace(coord, SuperFrac::variable(chart.ctx, coord));
    return TransitionMap(chart, chart, std::move(assign));
}

SuperFrac poly_substitute(const SuperPoly& p,
                          const std::map<std::string, SuperFrac>& assignment,
                          const ContextPtr& source_ctx) {
    const ContextPtr& tctx = p.context();
    // Power cache keyed by (even index, exponent); negative exponents invert.
    std::map<std::pair<int, int>, SuperFrac> powers;
    auto even_power = [&](int idx, int exp) -> const SuperFrac& {
        auto key = std::make_pair(idx, exp);
        auto it = powers.find(key);
        if (it != powers.end()) return it->second;
        const SuperFrac& base = assignment.at(tctx->even_names()[idx]);
        SuperFrac value = exp >= 0 ? frac_pow(base, static_cast<unsigned>(exp))
                                   : frac_pow(invert_even(base), static_cast<unsigned>(-exp));
        return powers.emplace(key, std::move(value)).first->second;
    };

    SuperFrac result = SuperFrac::zero(source_ctx);
    for (const auto& [mono, coeff] : p.terms()) {
        SuperFrac acc(source_ctx, coeff);
        for (std::size_t i = 0; i < mono.param_exps.size(); ++i)
            if (mono.param_exps[i] != 0)
                acc = acc * SuperFrac::variable(source_ctx, tctx->param_names()[i],
                                                mono.param_exps[i]);
        for (std::size_t i = 0; i < mono.even_exps.size(); ++i)
            if (mono.even_exps[i] != 0)
                acc = acc * even_power(static_cast<int>(i), mono.even_exps[i]);
        // Odd factors in ascending generator order, exactly as the monomial
        // is normalized, so no extra sign appears.
        for (std::size_t i = 0; i < tctx->odd_count(); ++i)
            if (mono.odd_mask & (std::uint64_t{1} << i))
                acc = acc * assignment.at(tctx->odd_names()[i]);
        result = result + acc;
    }
    return result;
}

SuperFrac substitute(const SuperFrac& f, const TransitionMap& t) {
    require_same_context(f.context(), t.target.ctx, "substitute");
    SuperFrac num = poly_substitute(f.num(), t.assignment, t.source.ctx);
    if (f.den().is_constant()) {
        Rational c = f.den().terms().begin()->second;
        return num * Rational(1 / c);
    }
    SuperFrac den = poly_substitute(f.den(), t.assignment, t.source.ctx);
    return num * invert_even(den);
}

TransitionMap compose(const TransitionMap& t1, const TransitionMap& t2) {
    if (t1.target != t2.source)
        throw ContextMismatchError("compose: " + t1.target.name + " does not match " +
                                   t2.source.name);
    std::map<std::string, SuperFrac> assign;
    for (const auto& [coord, value] : t2.assignment)
        assign.emplace(coord, substitute(value, t1));
    return TransitionMap(t1.source, t2.target, std::move(assign));
}

SuperMatrix jacobian(const TransitionMap& t) {
    const std::vector<std::string> src = t.source.all_coords();
    const std::vector<std::string> tgt = t.target.all_coords();
    if (src.size() != tgt.size())
        throw ConstraintViolationError("jacobian: charts of different dimension");
    std::vector<Parity> row_par, col_par;
    for (const auto& c : src) row_par.push_back(t.source.coord_parity(c));
    for (const auto& c : tgt) col_par.push_back(t.target.coord_parity(c));
    SuperMatrix forward(t.source.ctx, row_par, col_par);
    for (std::size_t d = 0; d < src.size(); ++d)
        for (std::size_t c = 0; c < tgt.size(); ++c)
            forward.set(d, c, t.of(tgt[c]).partial(src[d]));
    return invert_matrix(forward);
}

SuperFrac VectorField::comp(const std::string& coord) const {
    auto it = comps.find(coord);
    return it == comps.end() ? SuperFrac::zero(chart.ctx) : it->second;
}

void VectorField::set(const std::string& coord, SuperFrac v) {
    chart.coord_parity(coord);  // reject stray coordinate names
    require_same_context(v.context(), chart.ctx, "VectorField::set");
    if (v.is_zero())
        comps.erase(coord);
    else
        comps.insert_or_assign(coord, std::move(v));
}

bool VectorField::is_zero() const {
    for (const auto& [coord, value] : comps)
        if (!value.is_zero()) return false;
    return true;
}

std::optional<Parity> VectorField::parity() const {
    std::optional<Parity> result;
    for (const auto& [coord, value] : comps) {
        if (value.is_zero()) continue;
        auto p = value.parity();
        if (!p) return std::nullopt;
        Parity field_p = *p + chart.coord_parity(coord);
        if (result && *result != field_p) return std::nullopt;
        result = field_p;
    }
    return result;
}

VectorField VectorField::operator+(const VectorField& o) const {
    if (chart != o.chart) throw ContextMismatchError("VectorField: charts differ");
    VectorField out(chart);
    for (const auto& [coord, value] : comps) out.set(coord, value + o.comp(coord));
    for (const auto& [coord, value] : o.comps)
        if (!comps.count(coord)) out.set(coord, value);
    return out;
}

VectorField VectorField::operator-(const VectorField& o) const { return *this + (-o); }

VectorField VectorField::operator-() const {
    VectorField out(chart);
    for (const auto& [coord, value] : comps) out.set(coord, -value);
    return out;
}

VectorField VectorField::scaled(const SuperFrac& f) const {
    VectorField out(chart);
    for (const auto& [coord, value] : comps) out.set(coord, f * value);
    return out;
}

bool VectorField::operator==(const VectorField& o) const {
    if (chart != o.chart) return false;
    for (const auto& [coord, value] : comps)
        if (value != o.comp(coord)) return false;
    for (const auto& [coord, value] : o.comps)
        if (!comps.count(coord) && !value.is_zero()) return false;
    return true;
}

VectorField VectorField::truncate_odd_degree(int k) const {
    VectorField out(chart);
    for (const auto& [coord, value] : comps) {
        SuperPoly kept(chart.ctx);
        for (const auto& [mono, coeff] : value.num().terms())
            if (std::popcount(mono.odd_mask) <= k)
                kept.add_term(mono, coeff);
        out.set(coord, SuperFrac(kept, value.den()));
    }
    return out;
}

std::string VectorField::to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const std::string& coord : chart.all_coords()) {
        auto it = comps.find(coord);
        if (it == comps.end() || it->second.is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        os << "(" << it->second.to_string() << ")*d/d" << coord;
    }
    return os.str();
}

SuperFrac apply_field(const VectorField& x, const SuperFrac& f) {
    require_same_context(f.context(), x.chart.ctx, "apply_field");
    SuperFrac out = SuperFrac::zero(x.chart.ctx);
    for (const auto& [coord, value] : x.comps)
        out = out + value * f.partial(coord);
    return out;
}

VectorField bracket(const VectorField& x, const VectorField& y) {
    if (x.chart != y.chart) throw ContextMismatchError("bracket: charts differ");
    VectorField out(x.chart);
    if (x.is_zero() || y.is_zero()) return out;
    auto px = x.parity(), py = y.parity();
    if (!px || !py)
        throw ParityMismatchError("bracket requires homogeneous vector fields");
    Rational sign = (*px == Parity::Odd && *py == Parity::Odd) ? -1 : 1;
    for (const std::string& coord : x.chart.all_coords()) {
        SuperFrac c = apply_field(x, y.comp(coord)) - sign * apply_field(y, x.comp(coord));
        out.set(coord, c);
    }
    return out;
}

VectorField transport(const VectorField& v, const TransitionMap& t) {
    return transport(v, t, jacobian(t));
}

VectorField transport(const VectorField& v, const TransitionMap& t, const SuperMatrix& jac) {
    if (v.chart != t.target)
        throw ContextMismatchError("transport: field lives on " + v.chart.name +
                                   ", transition targets " + t.target.name);
    const std::vector<std::string> tgt = t.target.all_coords();
    const std::vector<std::string> src = t.source.all_coords();
    // Pull each coefficient back first, then recombine the frame through the
    // Jacobian row for its coordinate.  Order matters: coefficients stay on
    // the left of the frame expansion.
    std::vector<SuperFrac> pulled;
    pulled.reserve(tgt.size());
    for (const std::string& coord : tgt) {
        SuperFrac c = v.comp(coord);
        pulled.push_back(c.is_zero() ? SuperFrac::zero(t.source.ctx) : substitute(c, t));
    }
    VectorField out(t.source);
    for (std::size_t d = 0; d < src.size(); ++d) {
        SuperFrac acc = SuperFrac::zero(t.source.ctx);
        for (std::size_t c = 0; c < tgt.size(); ++c) {
            if (pulled[c].is_zero()) continue;
            acc = acc + pulled[c] * jac.at(c, d);
        }
        out.set(src[d], acc);
    }
    return out;
}

void Atlas::set_transition(TransitionMap t) {
    std::size_t i = chart_index(t.source.name);
    std::size_t j = chart_index(t.target.name);
    if (charts_[i] != t.source || charts_[j] != t.target)
        throw ContextMismatchError("set_transition: charts do not match the atlas");
    jacobians_.erase({i, j});
    transitions_.insert_or_assign({i, j}, std::move(t));
}

const TransitionMap& Atlas::transition(std::size_t i, std::size_t j) const {
    auto it = transitions_.find({i, j});
    if (it != transitions_.end()) return it->second;
    throw Error("atlas has no transition " + std::to_string(i) + " -> " + std::to_string(j));
}

const SuperMatrix& Atlas::cached_jacobian(std::size_t i, std::size_t j) const {
    auto it = jacobians_.find({i, j});
    if (it != jacobians_.end()) return it->second;
    return jacobians_.emplace(std::make_pair(i, j), jacobian(transition(i, j))).first->second;
}

std::size_t Atlas::chart_index(const std::string& name) const {
    for (std::size_t i = 0; i < charts_.size(); ++i)
        if (charts_[i].name == name) return i;
    throw Error("atlas has no chart named " + name);
}

ConsistencyReport verify_cocycle(const Atlas& atlas) {
    ConsistencyReport report;
    const std::size_t n = atlas.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            TransitionMap round = compose(atlas.transition(i, j), atlas.transition(j, i));
            for (const std::string& coord : atlas.chart(i).all_coords()) {
                SuperFrac residual =
                    round.of(coord) - SuperFrac::variable(atlas.chart(i).ctx, coord);
                if (!residual.is_zero())
                    report.failures.push_back(
                        "pair (" + atlas.chart(i).name + "," + atlas.chart(j).name +
                        "): round trip moves " + coord + " by " + residual.to_string());
            }
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t k = 0; k < n; ++k) {
                if (i == j || j == k || i == k) continue;
                TransitionMap chained =
                    compose(atlas.transition(i, j), atlas.transition(j, k));
                const TransitionMap& direct = atlas.transition(i, k);
                for (const std::string& coord : atlas.chart(k).all_coords()) {
                    SuperFrac residual = chained.of(coord) - direct.of(coord);
                    if (!residual.is_zero())
                        report.failures.push_back(
                            "triple (" + atlas.chart(i).name + "," + atlas.chart(j).name +
                            "," + atlas.chart(k).name + "): " + coord + " differs by " +
                            residual.to_string());
                }
            }
        }
    }
    return report;
}

const CochainEntry& VectorCochain::entry(std::size_t i, std::size_t j) const {
    auto it = entries_.find({i, j});
    if (it == entries_.end())
        throw Error("cochain has no entry (" + std::to_string(i) + "," + std::to_string(j) +
                    ")");
    return it->second;
}

bool VectorCochain::has_entry(std::size_t i, std::size_t j) const {
    return entries_.count({i, j}) > 0;
}

void VectorCochain::set_entry(CochainEntry e) {
    entries_.insert_or_assign({e.i, e.j}, std::move(e));
}

VectorCochain extract_omega(const Atlas& atlas) {
    // Soul extraction isolates the full obstruction only while products of
    // three or more local odd coordinates vanish identically.
    for (std::size_t i = 0; i < atlas.size(); ++i) {
        const Chart& chart = atlas.chart(i);
        if (chart.odd_coords.size() > 2)
            throw ConstraintViolationError("extract_omega: chart " + chart.name +
                                           " has more than two odd coordinates");
    }
    VectorCochain omega;
    for (std::size_t i = 0; i < atlas.size(); ++i) {
        for (std::size_t j = 0; j < atlas.size(); ++j) {
            if (i == j) continue;
            // transition(j, i) writes chart-i coordinates in chart-j terms;
            // the soul of an even assignment is its obstruction part.
            const TransitionMap& t_ji = atlas.transition(j, i);
            CochainEntry entry;
            entry.i = i;
            entry.j = j;
            entry.field = VectorField(atlas.chart(i));
            for (const std::string& coord : atlas.chart(i).even_coords) {
                const SuperFrac& f = t_ji.of(coord);
                SuperFrac raw(f.num().soul(), f.den());
                entry.raw.emplace(coord, raw);
                entry.field.set(coord, substitute(raw, atlas.transition(i, j)));
            }
            omega.set_entry(std::move(entry));
        }
    }
    return omega;
}

ConsistencyReport verify_omega_cocycle(const VectorCochain& omega, const Atlas& atlas) {
    ConsistencyReport report;
    const std::size_t n = atlas.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j || !omega.has_entry(i, j) || !omega.has_entry(j, i)) continue;
            VectorField back = transport(omega.entry(j, i).field, atlas.transition(i, j),
                                         atlas.cached_jacobian(i, j));
            VectorField residual = omega.entry(i, j).field + back;
            if (!residual.is_zero())
                report.failures.push_back("pair (" + atlas.chart(i).name + "," +
                                          atlas.chart(j).name + ") is not antisymmetric: " +
                                          residual.to_string());
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t k = 0; k < n; ++k) {
                if (i == j || j == k || i == k) continue;
                if (!omega.has_entry(i, j) || !omega.has_entry(j, k) ||
                    !omega.has_entry(i, k))
                    continue;
                VectorField middle = transport(omega.entry(j, k).field,
                                               atlas.transition(i, j),
                                               atlas.cached_jacobian(i, j));
                VectorField residual =
                    omega.entry(i, j).field + middle - omega.entry(i, k).field;
                if (!residual.is_zero())
                    report.failures.push_back(
                        "triple (" + atlas.chart(i).name + "," + atlas.chart(j).name + "," +
                        atlas.chart(k).name + "): defect " + residual.to_string());
            }
        }
    }
    return report;
}

namespace {

// One ansatz summand: (product of all odd coordinates) * monomial * d/d(coord).
struct AnsatzTerm {
    std::size_t chart;
    std::string coord;
    SuperPoly monomial;
};

SuperPoly to_laurent_or_throw(const SuperFrac& f, const char* where) {
    auto p = f.as_laurent_polynomial();
    if (!p)
        throw ConstraintViolationError(std::string(where) +
                                       ": value is not a Laurent polynomial: " +
                                       f.to_string());
    return *p;
}

}  // namespace

std::optional<std::vector<VectorField>> coboundary_witness(const Atlas& atlas,
                                                           const VectorCochain& cochain,
                                                           const AnsatzBounds& bounds) {
    // A witness of a homogeneous cochain can be taken homogeneous of the same
    // parity, so the ansatz keeps only the matching frame directions.
    std::optional<Parity> target_parity;
    bool homogeneous = true;
    for (const auto& [key, entry] : cochain.entries()) {
        if (entry.field.is_zero()) continue;
        auto p = entry.field.parity();
        if (!p || (target_parity && *target_parity != *p)) {
            homogeneous = false;
            break;
        }
        target_parity = p;
    }
    if (!homogeneous) target_parity.reset();
    const bool filter_parity = target_parity.has_value();
    const Parity wanted_parity = target_parity.value_or(Parity::Even);

    // Unknowns: coefficients of every ansatz term on every chart.
    std::vector<AnsatzTerm> terms;
    std::vector<std::vector<std::size_t>> by_chart(atlas.size());
    for (std::size_t ci = 0; ci < atlas.size(); ++ci) {
        const Chart& chart = atlas.chart(ci);
        SuperPoly top = SuperPoly::one(chart.ctx);
        for (const std::string& odd : chart.odd_coords)
            top = top * SuperPoly::variable(chart.ctx, odd);
        const std::size_t ne = chart.even_coords.size();
        const std::size_t np = chart.ctx->param_count();
        std::vector<int> exps(ne, 0), pexps(np, 0);
        // Odometer over even exponents 0..even_degree and parameter
        // exponents 0..param_degree.
        while (true) {
            SuperPoly mono = top;
            for (std::size_t v = 0; v < ne; ++v)
                if (exps[v])
                    mono = mono * SuperPoly::variable(chart.ctx, chart.even_coords[v], exps[v]);
            for (std::size_t v = 0; v < np; ++v)
                if (pexps[v])
                    mono = mono *
                           SuperPoly::variable(chart.ctx, chart.ctx->param_names()[v],
                                               pexps[v]);
            // Term parity = parity of the full odd product + frame parity.
            Parity top_parity = (chart.odd_coords.size() % 2) ? Parity::Odd : Parity::Even;
            for (const std::string& coord : chart.all_coords()) {
                if (filter_parity && top_parity + chart.coord_parity(coord) != wanted_parity)
                    continue;
                by_chart[ci].push_back(terms.size());
                terms.push_back({ci, coord, mono});
            }
            std::size_t v = 0;
            for (; v < ne + np; ++v) {
                int& e = v < ne ? exps[v] : pexps[v - ne];
                int cap = v < ne ? bounds.even_degree : bounds.param_degree;
                if (e < cap) {
                    ++e;
                    break;
                }
                e = 0;
            }
            if (v == ne + np) break;
        }
    }

    // Rows are indexed by (ordered pair, chart-i coordinate, monomial); build
    // the sparse rational system  cochain_ij = w_i - T_ij(w_j)  term by term.
    std::map<std::tuple<std::size_t, std::string, SuperMonomial>, std::size_t> row_index;
    std::vector<std::vector<Rational>> rows;
    std::vector<Rational> rhs;
    const std::size_t ncols = terms.size();
    auto row_of = [&](std::size_t pair_id, const std::string& coord,
                      const SuperMonomial& m) -> std::size_t {
        auto key = std::make_tuple(pair_id, coord, m);
        auto it = row_index.find(key);
        if (it != row_index.end()) return it->second;
        std::size_t r = rows.size();
        row_index.emplace(std::move(key), r);
        rows.emplace_back(ncols, Rational(0));
        rhs.emplace_back(0);
        return r;
    };

    std::size_t pair_id = 0;
    for (const auto& [key, entry] : cochain.entries()) {
        const std::size_t i = key.first, j = key.second;
        const TransitionMap& t = atlas.transition(i, j);
        const SuperMatrix& jac = atlas.cached_jacobian(i, j);
        for (std::size_t col : by_chart[i]) {
            const AnsatzTerm& a = terms[col];
            for (const auto& [mono, coeff] : a.monomial.terms())
                rows[row_of(pair_id, a.coord, mono)][col] += coeff;
        }
        for (std::size_t col : by_chart[j]) {
            const AnsatzTerm& a = terms[col];
            VectorField basis(atlas.chart(j));
            basis.set(a.coord, SuperFrac(a.monomial));
            VectorField moved = transport(basis, t, jac);
            for (const auto& [coord, value] : moved.comps) {
                SuperPoly p = to_laurent_or_throw(value, "coboundary_witness");
                for (const auto& [mono, coeff] : p.terms())
                    rows[row_of(pair_id, coord, mono)][col] -= coeff;
            }
        }
        for (const auto& [coord, value] : entry.field.comps) {
            SuperPoly p = to_laurent_or_throw(value, "coboundary_witness");
            for (const auto& [mono, coeff] : p.terms())
                rhs[row_of(pair_id, coord, mono)] = coeff;
        }
        ++pair_id;
    }

    auto solution = solve(rows, rhs);
    if (!solution) return std::nullopt;

    std::vector<VectorField> witness;
    for (std::size_t ci = 0; ci < atlas.size(); ++ci) {
        VectorField w(atlas.chart(ci));
        for (std::size_t col : by_chart[ci]) {
            const AnsatzTerm& a = terms[col];
            if ((*solution)[col] == 0) continue;
            w.set(a.coord, w.comp(a.coord) + SuperFrac(a.monomial) * (*solution)[col]);
        }
        witness.push_back(std::move(w));
    }
    return witness;
}

}  // namespace supergeo
