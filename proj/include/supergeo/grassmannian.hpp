#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "supergeo/atlas.hpp"

namespace supergeo {

/// Shape of a Grassmannian of (d0|d1)-planes inside a (n|m)-dimensional
/// graded space.  Validated on construction: 0 <= d0 <= n, 0 <= d1 <= m,
/// and d0 + d1 >= 1 (the empty plane has no cells).
struct GrassDescriptor {
    int d0 = 0;
    int d1 = 0;
    int n = 0;
    int m = 0;

    GrassDescriptor(int d0_, int d1_, int n_, int m_);
};

/// Identity-column selection of a big cell: strictly increasing 0-based
/// column indices, separately within the even block (size d0, values < n)
/// and the odd block (size d1, values < m).
struct CellIndex {
    std::vector<int> even_cols;
    std::vector<int> odd_cols;

    auto operator<=>(const CellIndex&) const = default;
};

std::size_t cell_count(const GrassDescriptor& g);

// All identity-column selections in lexicographic order: the even selection
// is the outer key, the odd selection the inner one.
std::vector<CellIndex> enumerate_cells(const GrassDescriptor& g);

// Free-coordinate count of every big cell, split as (even, odd).
std::pair<int, int> dimension(const GrassDescriptor& g);

/// Produces the coordinate name for the free matrix slot at (row, global
/// column); the parity is the product grading of the slot.
using CoordNamer = std::function<std::string(int row, int col, Parity parity)>;

/// One free slot of a cell matrix in row-major scan order.
struct CoordSlot {
    std::string name;
    int row = 0;
    int col = 0;
    Parity parity = Parity::Even;
};

/// A big cell: the chart of free coordinates together with the normalized
/// matrix carrying the identity block in the selected columns.  Rows are
/// ordered d0 even rows then d1 odd rows; columns n even then m odd.
struct BigCell {
    GrassDescriptor g;
    CellIndex index;
    Chart chart;
    SuperMatrix matrix;
    std::vector<CoordSlot> slots;
};

std::string default_cell_name(const CellIndex& index);
std::string default_coord_name(int row, int col, Parity parity);

// Normalized cell matrix and chart for the given identity columns.  An empty
// chart_name falls back to default_cell_name; a null namer to
// default_coord_name.
BigCell big_cell(const GrassDescriptor& g, const CellIndex& index,
                 const std::string& chart_name = "", const CoordNamer& namer = nullptr);

// Coordinate change on the overlap of two cells: re-normalizes the source
// cell matrix to the target's identity columns and reads the target
// coordinates off the result.  SingularBodyError when the selected block has
// no invertible body, i.e. the cells do not overlap generically.
TransitionMap cell_transition(const BigCell& from, const BigCell& to);
TransitionMap cell_transition(const GrassDescriptor& g, const CellIndex& from,
                              const CellIndex& to);

// Full atlas over the given cells (all ordered pairs glued), or over all
// cells of the descriptor in enumeration order with default names.
// ResourceCapError when the cell count exceeds cell_cap.
Atlas build_atlas(const std::vector<BigCell>& cells);
Atlas build_atlas(const GrassDescriptor& g, std::size_t cell_cap = 64);

// The four-cell cover of (1|1)-planes in C^{2|2} with the classical aliases:
// chart Uk carries even coordinates xk, yk and odd coordinates xik, etak.
// Chart order: U1 = ({0}|{0}), U2 = ({1}|{0}), U3 = ({0}|{1}), U4 = ({1}|{1}).
std::vector<BigCell> g11_cells();
Atlas g11_atlas();

// Boundary coefficient of the monomial line bundle of bidegree (a, b) on the
// reduced product of two projective lines under the four-cell cover above.
// Monomial lifts of the reduced transition cocycle are multiplied around
// every ascending chart triple, the soul of each product is expressed on U1
// as a multiple of xi1*eta1/(x1*y1), the resulting quadruple is checked to be
// a 2-cocycle, and the component orthogonal to coboundaries is returned.
// Normalization: bidegree (1, 0) maps to +1.
Rational picard_boundary(int a, int b);

}  // namespace supergeo
