#include "supergeo/grassmannian.hpp"

#include <set>
#include <sstream>

#include "supergeo/errors.hpp"

namespace supergeo {

namespace {

unsigned long long binom_ull(int n, int k) {
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    unsigned long long r = 1;
    for (int i = 1; i <= k; ++i) {
        r = r * static_cast<unsigned long long>(n - k + i);
        r /= static_cast<unsigned long long>(i);
    }
    return r;
}

std::vector<std::vector<int>> combinations(int n, int k) {
    std::vector<std::vector<int>> out;
    if (k == 0) {
        out.push_back({});
        return out;
    }
    std::vector<int> cur(k);
    for (int i = 0; i < k; ++i) cur[i] = i;
    while (true) {
        out.push_back(cur);
        int pos = k - 1;
        while (pos >= 0 && cur[pos] == n - k + pos) --pos;
        if (pos < 0) break;
        ++cur[pos];
        for (int q = pos + 1; q < k; ++q) cur[q] = cur[q - 1] + 1;
    }
    return out;
}

void validate_block(const std::vector<int>& cols, int count, int limit, const char* what) {
    if (static_cast<int>(cols.size()) != count)
        throw ConstraintViolationError(std::string("cell index: expected ") +
                                       std::to_string(count) + " " + what + " columns, got " +
                                       std::to_string(cols.size()));
    for (std::size_t p = 0; p < cols.size(); ++p) {
        if (cols[p] < 0 || cols[p] >= limit)
            throw ConstraintViolationError(std::string("cell index: ") + what + " column " +
                                           std::to_string(cols[p]) + " out of range");
        if (p > 0 && cols[p] <= cols[p - 1])
            throw ConstraintViolationError(std::string("cell index: ") + what +
                                           " columns must be strictly increasing");
    }
}

std::string join_ints(const std::vector<int>& v) {
    std::ostringstream os;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) os << ",";
        os << v[i];
    }
    return os.str();
}

bool same_shape(const GrassDescriptor& a, const GrassDescriptor& b) {
    return a.d0 == b.d0 && a.d1 == b.d1 && a.n == b.n && a.m == b.m;
}

}  // namespace

GrassDescriptor::GrassDescriptor(int d0_, int d1_, int n_, int m_)
    : d0(d0_), d1(d1_), n(n_), m(m_) {
    if (d0 < 0 || d1 < 0 || d0 > n || d1 > m || d0 + d1 < 1)
        throw ConstraintViolationError("plane shape (" + std::to_string(d0) + "|" +
                                       std::to_string(d1) + ") does not fit in (" +
                                       std::to_string(n) + "|" + std::to_string(m) + ")");
}

std::size_t cell_count(const GrassDescriptor& g) {
    return static_cast<std::size_t>(binom_ull(g.n, g.d0) * binom_ull(g.m, g.d1));
}

std::vector<CellIndex> enumerate_cells(const GrassDescriptor& g) {
    std::vector<CellIndex> out;
    out.reserve(cell_count(g));
    for (const auto& even : combinations(g.n, g.d0))
        for (const auto& odd : combinations(g.m, g.d1)) out.push_back(CellIndex{even, odd});
    return out;
}

std::pair<int, int> dimension(const GrassDescriptor& g) {
    return {g.d0 * (g.n - g.d0) + g.d1 * (g.m - g.d1),
            g.d0 * (g.m - g.d1) + g.d1 * (g.n - g.d0)};
}

std::string default_cell_name(const CellIndex& index) {
    return "U(" + join_ints(index.even_cols) + "|" + join_ints(index.odd_cols) + ")";
}

std::string default_coord_name(int row, int col, Parity parity) {
    return std::string(parity == Parity::Even ? "x_" : "xi_") + std::to_string(row) + "_" +
           std::to_string(col);
}

BigCell big_cell(const GrassDescriptor& g, const CellIndex& index,
                 const std::string& chart_name, const CoordNamer& namer) {
    validate_block(index.even_cols, g.d0, g.n, "even");
    validate_block(index.odd_cols, g.d1, g.m, "odd");

    const int rows = g.d0 + g.d1;
    const int cols = g.n + g.m;
    std::vector<Parity> row_par, col_par;
    for (int r = 0; r < rows; ++r) row_par.push_back(r < g.d0 ? Parity::Even : Parity::Odd);
    for (int c = 0; c < cols; ++c) col_par.push_back(c < g.n ? Parity::Even : Parity::Odd);

    std::vector<int> id_col(rows);
    std::vector<bool> is_id(cols, false);
    for (int p = 0; p < g.d0; ++p) {
        id_col[p] = index.even_cols[p];
        is_id[id_col[p]] = true;
    }
    for (int q = 0; q < g.d1; ++q) {
        id_col[g.d0 + q] = g.n + index.odd_cols[q];
        is_id[id_col[g.d0 + q]] = true;
    }

    std::vector<CoordSlot> slots;
    std::vector<std::string> evens, odds;
    std::set<std::string> seen;
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
            if (is_id[c]) continue;
            const Parity parity = row_par[r] + col_par[c];
            std::string name = namer ? namer(r, c, parity) : default_coord_name(r, c, parity);
            if (!seen.insert(name).second)
                throw ConstraintViolationError("big cell: duplicate coordinate name " + name);
            (parity == Parity::Even ? evens : odds).push_back(name);
            slots.push_back(CoordSlot{std::move(name), r, c, parity});
        }

    Chart chart(chart_name.empty() ? default_cell_name(index) : chart_name, evens, odds);
    SuperMatrix matrix(chart.ctx, row_par, col_par);
    for (int r = 0; r < rows; ++r) matrix.set(r, id_col[r], SuperFrac::one(chart.ctx));
    for (const CoordSlot& s : slots)
        matrix.set(s.row, s.col, SuperFrac::variable(chart.ctx, s.name));
    return BigCell{g, index, std::move(chart), std::move(matrix), std::move(slots)};
}

TransitionMap cell_transition(const BigCell& from, const BigCell& to) {
    if (!same_shape(from.g, to.g))
        throw ConstraintViolationError("cell transition: cells of different Grassmannians");

    std::vector<std::size_t> sel;
    std::vector<Parity> sel_par;
    for (int p = 0; p < to.g.d0; ++p) {
        sel.push_back(static_cast<std::size_t>(to.index.even_cols[p]));
        sel_par.push_back(Parity::Even);
    }
    for (int q = 0; q < to.g.d1; ++q) {
        sel.push_back(static_cast<std::size_t>(to.g.n + to.index.odd_cols[q]));
        sel_par.push_back(Parity::Odd);
    }

    // Re-normalize the source matrix so the target identity columns carry 1.
    const SuperMatrix block = from.matrix.select_columns(sel, sel_par);
    const SuperMatrix renormalized = invert_matrix(block) * from.matrix;
    if (!renormalized.select_columns(sel, sel_par).is_identity())
        throw Error("cell transition: identity block failed to reappear");

    std::map<std::string, SuperFrac> assign;
    for (const CoordSlot& s : to.slots)
        assign.emplace(s.name, renormalized.at(static_cast<std::size_t>(s.row),
                                               static_cast<std::size_t>(s.col)));
    return TransitionMap(from.chart, to.chart, std::move(assign));
}

TransitionMap cell_transition(const GrassDescriptor& g, const CellIndex& from,
                              const CellIndex& to) {
    return cell_transition(big_cell(g, from), big_cell(g, to));
}

Atlas build_atlas(const std::vector<BigCell>& cells) {
    std::vector<Chart> charts;
    charts.reserve(cells.size());
    for (const BigCell& c : cells) charts.push_back(c.chart);
    Atlas atlas(std::move(charts));
    for (std::size_t i = 0; i < cells.size(); ++i)
        for (std::size_t j = 0; j < cells.size(); ++j) {
            if (i == j) continue;
            atlas.set_transition(cell_transition(cells[i], cells[j]));
        }
    return atlas;
}

Atlas build_atlas(const GrassDescriptor& g, std::size_t cell_cap) {
    if (cell_count(g) > cell_cap)
        throw ResourceCapError("atlas over " + std::to_string(cell_count(g)) +
                               " cells exceeds the cap of " + std::to_string(cell_cap));
    std::vector<BigCell> cells;
    for (const CellIndex& index : enumerate_cells(g)) cells.push_back(big_cell(g, index));
    return build_atlas(cells);
}

std::vector<BigCell> g11_cells() {
    const GrassDescriptor g(1, 1, 2, 2);
    const std::vector<CellIndex> indices = {
        CellIndex{{0}, {0}}, CellIndex{{1}, {0}}, CellIndex{{0}, {1}}, CellIndex{{1}, {1}}};
    std::vector<BigCell> cells;
    for (std::size_t k = 0; k < indices.size(); ++k) {
        const std::string suffix = std::to_string(k + 1);
        auto namer = [&suffix](int row, int col, Parity) {
            if (row == 0) return (col < 2 ? "x" : "xi") + suffix;
            return (col < 2 ? "eta" : "y") + suffix;
        };
        cells.push_back(big_cell(g, indices[k], "U" + suffix, namer));
    }
    return cells;
}

Atlas g11_atlas() { return build_atlas(g11_cells()); }

namespace {

// Coefficient of xi1*eta1/(x1*y1) in f - 1, with f expressed on U1; anything
// outside the span of 1 and that monomial is rejected.
Rational boundary_coefficient(const SuperFrac& f, const ContextPtr& ctx) {
    const SuperFrac body(f.num().body(), f.den());
    if (!(body == SuperFrac::one(ctx)))
        throw ConstraintViolationError("picard boundary: cochain body is not 1");
    const SuperFrac soul(f.num().soul(), f.den());
    const SuperFrac scaled =
        soul * SuperFrac::variable(ctx, "x1") * SuperFrac::variable(ctx, "y1");
    const auto poly = scaled.as_laurent_polynomial();
    if (!poly)
        throw ConstraintViolationError("picard boundary: soul is not a Laurent polynomial");
    if (poly->is_zero()) return Rational(0);
    const SuperPoly gen = SuperPoly::variable(ctx, "xi1") * SuperPoly::variable(ctx, "eta1");
    if (poly->terms().size() != 1 ||
        !(poly->terms().begin()->first == gen.terms().begin()->first))
        throw ConstraintViolationError("picard boundary: soul is not a multiple of the generator");
    return poly->terms().begin()->second;
}

}  // namespace

Rational picard_boundary(int a, int b) {
    const Atlas atlas = g11_atlas();
    const ContextPtr& u1 = atlas.chart(0).ctx;

    // Affine flavor per chart: which homogeneous coordinate of each line
    // factor the cell normalizes to 1.
    const int s[4] = {0, 1, 0, 1};
    const int t[4] = {0, 0, 1, 1};

    // Monomial lift, on chart j, of the reduced transition factor from the
    // chart-i to the chart-j trivialization of the (a, b) bundle.
    auto lift = [&](std::size_t i, std::size_t j) {
        const ContextPtr& ctx = atlas.chart(j).ctx;
        const std::string tag = std::to_string(j + 1);
        const int px = a * (s[j] - s[i]) * (s[j] == 0 ? 1 : -1);
        const int py = b * (t[j] - t[i]) * (t[j] == 0 ? 1 : -1);
        SuperFrac f = SuperFrac::one(ctx);
        if (px != 0) f = f * SuperFrac::variable(ctx, "x" + tag, px);
        if (py != 0) f = f * SuperFrac::variable(ctx, "y" + tag, py);
        return f;
    };

    // Multiplicative coboundary around every ascending triple, expressed on
    // U1 so the generator coefficients are directly comparable.
    std::vector<Rational> c;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = i + 1; j < 4; ++j)
            for (std::size_t k = j + 1; k < 4; ++k) {
                const TransitionMap& t_ik = atlas.transition(i, k);
                SuperFrac n = substitute(lift(j, k), t_ik) *
                              invert_even(substitute(lift(i, k), t_ik)) *
                              substitute(lift(i, j), atlas.transition(i, j));
                if (i != 0) n = substitute(n, atlas.transition(0, i));
                c.push_back(boundary_coefficient(n, u1));
            }

    // Triples in ascending order: (123), (124), (134), (234).
    if (c[3] - c[2] + c[1] - c[0] != 0)
        throw ConstraintViolationError("picard boundary: lifted cochain is not a 2-cocycle");
    // The unique linear form killing coboundaries, oriented so (1, 0) -> +1.
    return c[0] - c[3];
}

}  // namespace supergeo
