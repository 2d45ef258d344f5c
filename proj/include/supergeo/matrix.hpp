#pragma once

#include <vector>

#include "supergeo/frac.hpp"

namespace supergeo {

/// Rectangular matrix over the super fraction ring with a parity tag per row
/// and per column.  Entries are stored row-major; the parity tags record the
/// free-module grading, they are not enforced per entry (intermediate results
/// of elimination may be inhomogeneous).
class SuperMatrix {
public:
    SuperMatrix(ContextPtr ctx, std::vector<Parity> row_parities,
                std::vector<Parity> col_parities);

    static SuperMatrix identity(const ContextPtr& ctx, const std::vector<Parity>& parities);

    std::size_t rows() const { return row_par_.size(); }
    std::size_t cols() const { return col_par_.size(); }
    const std::vector<Parity>& row_parities() const { return row_par_; }
    const std::vector<Parity>& col_parities() const { return col_par_; }
    const ContextPtr& context() const { return ctx_; }

    const SuperFrac& at(std::size_t r, std::size_t c) const { return e_[r][c]; }
    void set(std::size_t r, std::size_t c, SuperFrac v);

    SuperMatrix operator*(const SuperMatrix& o) const;
    SuperMatrix operator+(const SuperMatrix& o) const;
    SuperMatrix operator-(const SuperMatrix& o) const;
    bool operator==(const SuperMatrix& o) const;
    bool operator!=(const SuperMatrix& o) const { return !(*this == o); }

    bool is_identity() const;

    // Column sub-selection, reusing this matrix's row parities.
    SuperMatrix select_columns(const std::vector<std::size_t>& idx,
                               const std::vector<Parity>& parities) const;

    std::string to_string() const;

private:
    ContextPtr ctx_;
    std::vector<Parity> row_par_, col_par_;
    std::vector<std::vector<SuperFrac>> e_;
};

// Determinant over the commutative even subring by cofactor expansion.
// Requires a square matrix whose entries are all parity-even.
SuperFrac det_even(const SuperMatrix& m);

// Two-sided inverse by Gauss-Jordan elimination.  Pivots are entries with
// invertible body (odd entries have zero body and are never chosen), rows may
// be permuted freely.  The products m*inv and inv*m are verified to be the
// identity before returning; SingularBodyError when no pivot exists.
SuperMatrix invert_matrix(const SuperMatrix& m);

}  // namespace supergeo
