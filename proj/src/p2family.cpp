#include "supergeo/p2family.hpp"

#include <bit>
#include <map>
#include <tuple>
#include <utility>

#include "supergeo/linalg.hpp"

namespace supergeo {

namespace {

SuperPoly pv(const ContextPtr& c, const std::string& n, int e = 1) {
    return SuperPoly::variable(c, n, e);
}

SuperPoly deformation(const ContextPtr& c, const FamilyParams& p) {
    return p.lambda ? SuperPoly::constant(c, *p.lambda) : pv(c, "lambda");
}

// One pairwise table, written in source coordinates.  The source coordinate
// at w_index inverts into the target coordinate at recip_index; the other
// even target coordinate is a degree-two fraction carrying the deformation
// with the given sign; the odd coordinates divide by w and w^2.
TransitionMap family_transition(const Chart& src, const Chart& tgt, int w_index,
                                int recip_index, int sign, const SuperPoly& lam) {
    const ContextPtr& c = src.ctx;
    const std::string& w_name = src.even_coords[static_cast<std::size_t>(w_index)];
    SuperPoly w = pv(c, w_name);
    SuperPoly other = pv(c, src.even_coords[static_cast<std::size_t>(1 - w_index)]);
    SuperPoly soul = lam * pv(c, src.odd_coords[0]) * pv(c, src.odd_coords[1]);
    std::map<std::string, SuperFrac> a;
    a.emplace(tgt.even_coords[static_cast<std::size_t>(recip_index)],
              SuperFrac::variable(c, w_name, -1));
    a.emplace(tgt.even_coords[static_cast<std::size_t>(1 - recip_index)],
              SuperFrac(sign > 0 ? other * w + soul : other * w - soul, w.pow(2)));
    a.emplace(tgt.odd_coords[0], SuperFrac(pv(c, src.odd_coords[0]), w));
    a.emplace(tgt.odd_coords[1], SuperFrac(pv(c, src.odd_coords[1]), w.pow(2)));
    return TransitionMap(src, tgt, std::move(a));
}

bool frac_is_regular(const SuperFrac& f) {
    auto p = f.as_laurent_polynomial();
    return p && !p->has_negative_even_exponent();
}

bool field_is_regular(const VectorField& v) {
    for (const auto& [coord, value] : v.comps)
        if (!frac_is_regular(value)) return false;
    return true;
}

// Single-term polynomial fields of homogeneous total parity on one chart,
// with even coefficient degree at most degree_bound.
std::vector<VectorField> polynomial_field_basis(const Chart& chart, Parity parity,
                                                int degree_bound) {
    if (chart.even_coords.size() != 2 || chart.odd_coords.size() != 2)
        throw ConstraintViolationError(
            "polynomial field ansatz expects two even and two odd coordinates");
    const ContextPtr& c = chart.ctx;
    std::vector<VectorField> out;
    for (const std::string& coord : chart.all_coords()) {
        Parity frame = chart.coord_parity(coord);
        for (unsigned mask = 0; mask < 4; ++mask) {
            Parity twist = (std::popcount(mask) % 2) ? Parity::Odd : Parity::Even;
            if (twist + frame != parity) continue;
            for (int a = 0; a <= degree_bound; ++a) {
                for (int b = 0; a + b <= degree_bound; ++b) {
                    SuperPoly mono = SuperPoly::one(c);
                    if (a) mono = mono * pv(c, chart.even_coords[0], a);
                    if (b) mono = mono * pv(c, chart.even_coords[1], b);
                    for (std::size_t t = 0; t < chart.odd_coords.size(); ++t)
                        if (mask & (1u << t)) mono = mono * pv(c, chart.odd_coords[t]);
                    VectorField f(chart);
                    f.set(coord, SuperFrac(mono));
                    out.push_back(std::move(f));
                }
            }
        }
    }
    return out;
}

// Kernel of the regularity constraints: a combination of ansatz fields is
// global exactly when every negative-exponent monomial of its transports
// cancels.
std::vector<VectorField> solve_parity(const Atlas& atlas, Parity parity,
                                      int degree_bound) {
    const Chart& chart0 = atlas.chart(0);
    std::vector<VectorField> basis = polynomial_field_basis(chart0, parity, degree_bound);
    const std::size_t ncols = basis.size();

    std::map<std::tuple<std::size_t, std::string, SuperMonomial>, std::size_t> row_index;
    QMat rows;
    auto row_of = [&](std::size_t chart, const std::string& coord,
                      const SuperMonomial& m) -> std::size_t {
        auto key = std::make_tuple(chart, coord, m);
        auto it = row_index.find(key);
        if (it != row_index.end()) return it->second;
        std::size_t r = rows.size();
        row_index.emplace(std::move(key), r);
        rows.emplace_back(ncols, Rational(0));
        return r;
    };

    for (std::size_t col = 0; col < ncols; ++col) {
        for (std::size_t k = 1; k < atlas.size(); ++k) {
            VectorField moved = transport(basis[col], atlas.transition(k, 0),
                                          atlas.cached_jacobian(k, 0));
            for (const auto& [coord, value] : moved.comps) {
                auto p = value.as_laurent_polynomial();
                if (!p)
                    throw ConstraintViolationError(
                        "solve_global_sections: transported ansatz is not Laurent");
                for (const auto& [mono, coeff] : p->terms()) {
                    bool defect = false;
                    for (int e : mono.even_exps)
                        if (e < 0) defect = true;
                    if (defect) rows[row_of(k, coord, mono)][col] += coeff;
                }
            }
        }
    }

    std::vector<QVec> kernel = nullspace(rows, ncols);
    std::vector<VectorField> out;
    out.reserve(kernel.size());
    for (const QVec& coeffs : kernel) {
        VectorField f(chart0);
        for (std::size_t col = 0; col < ncols; ++col)
            if (coeffs[col] != 0)
                f = f + basis[col].scaled(SuperFrac(chart0.ctx, coeffs[col]));
        out.push_back(std::move(f));
    }
    return out;
}

using MonoKey = std::pair<std::string, SuperMonomial>;

void collect_keys(const std::vector<VectorField>& fields,
                  std::map<MonoKey, std::size_t>& index) {
    for (const VectorField& f : fields) {
        for (const auto& [coord, value] : f.comps) {
            auto p = value.as_laurent_polynomial();
            if (!p)
                throw ConstraintViolationError(
                    "span comparison needs Laurent polynomial coefficients");
            for (const auto& [mono, coeff] : p->terms())
                index.emplace(MonoKey{coord, mono}, index.size());
        }
    }
}

void append_columns(const std::vector<VectorField>& fields,
                    const std::map<MonoKey, std::size_t>& index, QMat& m) {
    for (const VectorField& f : fields) {
        for (QVec& row : m) row.emplace_back(0);
        const std::size_t col = m.empty() ? 0 : m.front().size() - 1;
        for (const auto& [coord, value] : f.comps) {
            const auto p = value.as_laurent_polynomial();
            for (const auto& [mono, coeff] : p->terms())
                m[index.at(MonoKey{coord, mono})][col] = coeff;
        }
    }
}

}  // namespace

SuperFrac odd_block_determinant(const TransitionMap& t) {
    const auto& src_odd = t.source.odd_coords;
    const auto& tgt_odd = t.target.odd_coords;
    if (src_odd.size() != 2 || tgt_odd.size() != 2)
        throw ConstraintViolationError(
            "odd_block_determinant expects two odd coordinates per chart");
    auto block = [&](std::size_t a, std::size_t b) {
        return t.of(tgt_odd[a]).partial(src_odd[b]);
    };
    return block(0, 0) * block(1, 1) - block(0, 1) * block(1, 0);
}

Atlas build_family_atlas(const FamilyParams& p) {
    Chart u0{"U0", {"z10", "z20"}, {"th10", "th20"}};
    Chart u1{"U1", {"z11", "z21"}, {"th11", "th21"}};
    Chart u2{"U2", {"z12", "z22"}, {"th12", "th22"}};
    Atlas atlas({u0, u1, u2});
    atlas.set_transition(family_transition(u1, u0, 0, 0, +1, deformation(u1.ctx, p)));
    atlas.set_transition(family_transition(u0, u1, 0, 0, -1, deformation(u0.ctx, p)));
    atlas.set_transition(family_transition(u2, u1, 1, 1, +1, deformation(u2.ctx, p)));
    atlas.set_transition(family_transition(u1, u2, 1, 1, -1, deformation(u1.ctx, p)));
    atlas.set_transition(family_transition(u0, u2, 1, 0, +1, deformation(u0.ctx, p)));
    atlas.set_transition(family_transition(u2, u0, 0, 1, -1, deformation(u2.ctx, p)));

    for (std::size_t i = 0; i < atlas.size(); ++i) {
        for (std::size_t j = 0; j < atlas.size(); ++j) {
            if (i == j) continue;
            const TransitionMap& t = atlas.transition(i, j);
            SuperFrac det = odd_block_determinant(t);
            bool cube = false;
            for (const std::string& w : t.source.even_coords)
                if (det == SuperFrac::variable(t.source.ctx, w, -3)) cube = true;
            if (!cube)
                throw ConstraintViolationError(
                    "family atlas: odd block of " + t.source.name + " -> " + t.target.name +
                    " does not glue by the cube of a reciprocal coordinate");
        }
    }
    return atlas;
}

SectionBasis canonical_sections(const FamilyParams& p) {
    Chart u0{"U0", {"z10", "z20"}, {"th10", "th20"}};
    const ContextPtr& c = u0.ctx;
    const SuperPoly z1 = pv(c, "z10"), z2 = pv(c, "z20");
    const SuperPoly t1 = pv(c, "th10"), t2 = pv(c, "th20");
    const SuperPoly lam = deformation(c, p);
    const SuperPoly one = SuperPoly::one(c);

    auto field = [&](std::initializer_list<std::pair<const char*, SuperPoly>> comps) {
        VectorField f(u0);
        for (const auto& [coord, poly] : comps) f.set(coord, SuperFrac(poly));
        return f;
    };

    SectionBasis basis;
    basis.origin = BasisOrigin::Canonical;
    basis.even = {
        field({{"z10", one}}),
        field({{"z20", one}}),
        field({{"z10", z2}}),
        field({{"z20", z1}}),
        field({{"z10", z1}, {"z20", -z2}}),
        field({{"th20", t1}}),
        field({{"th20", z1 * t1}}),
        field({{"th20", z2 * t1}}),
        field({{"th10", t1}, {"z20", z2}}),
        field({{"th20", t2}, {"z20", z2}}),
        field({{"z10", z1 * z1}, {"z20", z1 * z2 + lam * t1 * t2},
               {"th10", z1 * t1}, {"th20", Rational(2) * z1 * t2}}),
        field({{"z10", z1 * z2 - lam * t1 * t2}, {"z20", z2 * z2},
               {"th10", z2 * t1}, {"th20", Rational(2) * z2 * t2}}),
    };
    basis.odd = {
        field({{"th10", one}}),
        field({{"th20", one}}),
        field({{"z10", t1}}),
        field({{"z20", t1}}),
        field({{"th20", z1}}),
        field({{"th20", z2}}),
        field({{"th20", z1 * z1}, {"z20", -(lam * z1 * t1)}}),
        field({{"th20", z2 * z2}, {"z10", lam * z2 * t1}}),
        field({{"th10", z1}, {"z20", lam * t2}}),
        field({{"th10", -z2}, {"z10", lam * t2}}),
        field({{"z10", z1 * t1}, {"z20", z2 * t1}, {"th20", Rational(2) * t1 * t2}}),
        field({{"th20", z1 * z2 - lam * t1 * t2}, {"z20", -(lam * z2 * t1)}}),
    };
    return basis;
}

bool is_global(const Atlas& atlas, const VectorField& v) {
    if (v.chart != atlas.chart(0))
        throw ContextMismatchError("is_global expects a field on the first chart");
    if (!field_is_regular(v)) return false;
    for (std::size_t k = 1; k < atlas.size(); ++k) {
        VectorField moved =
            transport(v, atlas.transition(k, 0), atlas.cached_jacobian(k, 0));
        if (!field_is_regular(moved)) return false;
    }
    return true;
}

SectionBasis solve_global_sections(const FamilyParams& p, int degree_bound) {
    if (!p.lambda)
        throw ConstraintViolationError(
            "solve_global_sections requires a specialized deformation parameter");
    if (degree_bound < 0)
        throw ConstraintViolationError("solve_global_sections: negative degree bound");
    Atlas atlas = build_family_atlas(p);

    SectionBasis basis;
    basis.origin = BasisOrigin::Solved;
    basis.even = solve_parity(atlas, Parity::Even, degree_bound);
    basis.odd = solve_parity(atlas, Parity::Odd, degree_bound);

    // The cut-off is trustworthy only if widening the ansatz finds nothing new.
    if (solve_parity(atlas, Parity::Even, degree_bound + 1).size() != basis.even.size() ||
        solve_parity(atlas, Parity::Odd, degree_bound + 1).size() != basis.odd.size())
        throw BoundTooSmallError("solve_global_sections: degree bound " +
                                 std::to_string(degree_bound) + " truncates the solution");
    return basis;
}

DeltaClass delta_class(const Atlas& atlas, const VectorField& v,
                       const AnsatzBounds& bounds) {
    if (v.chart != atlas.chart(0))
        throw ContextMismatchError("delta_class expects a field on the first chart");

    std::vector<VectorField> truncated;
    for (std::size_t k = 0; k < atlas.size(); ++k) {
        VectorField moved =
            k == 0 ? v
                   : transport(v, atlas.transition(k, 0), atlas.cached_jacobian(k, 0));
        VectorField cut = moved.truncate_odd_degree(1);
        if (!field_is_regular(cut))
            throw ConstraintViolationError(
                "delta_class: the truncated field is not regular on chart " +
                atlas.chart(k).name);
        truncated.push_back(std::move(cut));
    }

    VectorCochain residues;
    for (std::size_t i = 0; i < atlas.size(); ++i) {
        for (std::size_t j = 0; j < atlas.size(); ++j) {
            if (i == j) continue;
            VectorField defect =
                truncated[i] - transport(truncated[j], atlas.transition(i, j),
                                         atlas.cached_jacobian(i, j));
            for (const auto& [coord, value] : defect.comps) {
                auto lp = value.as_laurent_polynomial();
                if (!lp)
                    throw ConstraintViolationError(
                        "delta_class: defect is not Laurent on the overlap");
                for (const auto& [mono, coeff] : lp->terms())
                    if (std::popcount(mono.odd_mask) < 2)
                        throw ConstraintViolationError(
                            "delta_class: defect leaks below the square of the odd ideal");
            }
            CochainEntry entry;
            entry.i = i;
            entry.j = j;
            entry.raw = defect.comps;
            entry.field = std::move(defect);
            residues.set_entry(std::move(entry));
        }
    }

    DeltaClass out{std::move(residues), std::nullopt};
    out.witness = coboundary_witness(atlas, out.residues, bounds);
    return out;
}

bool span_contains(const std::vector<VectorField>& outer,
                   const std::vector<VectorField>& inner) {
    if (inner.empty()) return true;
    for (const VectorField& f : outer)
        if (f.chart != inner.front().chart)
            throw ContextMismatchError("span comparison mixes charts");
    for (const VectorField& f : inner)
        if (f.chart != inner.front().chart)
            throw ContextMismatchError("span comparison mixes charts");

    std::map<MonoKey, std::size_t> index;
    collect_keys(outer, index);
    collect_keys(inner, index);
    QMat joint(index.size());
    append_columns(outer, index, joint);
    std::size_t outer_rank = rank(joint);
    append_columns(inner, index, joint);
    return rank(joint) == outer_rank;
}

bool equal_span(const std::vector<VectorField>& a, const std::vector<VectorField>& b) {
    return span_contains(a, b) && span_contains(b, a);
}

}  // namespace supergeo
