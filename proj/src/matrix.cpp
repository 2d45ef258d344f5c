#include "supergeo/matrix.hpp"

#include <sstream>

namespace supergeo {

SuperMatrix::SuperMatrix(ContextPtr ctx, std::vector<Parity> row_parities,
                         std::vector<Parity> col_parities)
    : ctx_(std::move(ctx)),
      row_par_(std::move(row_parities)),
      col_par_(std::move(col_parities)) {
    e_.assign(row_par_.size(), std::vector<SuperFrac>(col_par_.size(), SuperFrac(ctx_)));
}

SuperMatrix SuperMatrix::identity(const ContextPtr& ctx, const std::vector<Parity>& parities) {
    SuperMatrix m(ctx, parities, parities);
    for (std::size_t i = 0; i < parities.size(); ++i) m.set(i, i, SuperFrac::one(ctx));
    return m;
}

void SuperMatrix::set(std::size_t r, std::size_t c, SuperFrac v) {
    require_same_context(ctx_, v.context(), "SuperMatrix::set");
    e_[r][c] = std::move(v);
}

SuperMatrix SuperMatrix::operator*(const SuperMatrix& o) const {
    require_same_context(ctx_, o.ctx_, "SuperMatrix::operator*");
    if (cols() != o.rows() || col_par_ != o.row_par_)
        throw ParityMismatchError("matrix product: inner dimensions/parities disagree");
    SuperMatrix r(ctx_, row_par_, o.col_par_);
    for (std::size_t i = 0; i < rows(); ++i)
        for (std::size_t j = 0; j < o.cols(); ++j) {
            SuperFrac acc(ctx_);
            for (std::size_t k = 0; k < cols(); ++k) {
                if (e_[i][k].is_zero() || o.e_[k][j].is_zero()) continue;
                acc = acc + e_[i][k] * o.e_[k][j];
            }
            r.e_[i][j] = std::move(acc);
        }
    return r;
}

SuperMatrix SuperMatrix::operator+(const SuperMatrix& o) const {
    require_same_context(ctx_, o.ctx_, "SuperMatrix::operator+");
    if (row_par_ != o.row_par_ || col_par_ != o.col_par_)
        throw ParityMismatchError("matrix sum: shapes/parities disagree");
    SuperMatrix r(ctx_, row_par_, col_par_);
    for (std::size_t i = 0; i < rows(); ++i)
        for (std::size_t j = 0; j < cols(); ++j) r.e_[i][j] = e_[i][j] + o.e_[i][j];
    return r;
}

SuperMatrix SuperMatrix::operator-(const SuperMatrix& o) const {
    require_same_context(ctx_, o.ctx_, "SuperMatrix::operator-");
    if (row_par_ != o.row_par_ || col_par_ != o.col_par_)
        throw ParityMismatchError("matrix difference: shapes/parities disagree");
    SuperMatrix r(ctx_, row_par_, col_par_);
    for (std::size_t i = 0; i < rows(); ++i)
        for (std::size_t j = 0; j < cols(); ++j) r.e_[i][j] = e_[i][j] - o.e_[i][j];
    return r;
}

bool SuperMatrix::operator==(const SuperMatrix& o) const {
    if (!same_context(ctx_, o.ctx_) || row_par_ != o.row_par_ || col_par_ != o.col_par_)
        return false;
    for (std::size_t i = 0; i < rows(); ++i)
        for (std::size_t j = 0; j < cols(); ++j)
            if (e_[i][j] != o.e_[i][j]) return false;
    return true;
}

bool SuperMatrix::is_identity() const {
    if (rows() != cols()) return false;
    for (std::size_t i = 0; i < rows(); ++i)
        for (std::size_t j = 0; j < cols(); ++j) {
            if (i == j ? !e_[i][j].is_one() : !e_[i][j].is_zero()) return false;
        }
    return true;
}

SuperMatrix SuperMatrix::select_columns(const std::vector<std::size_t>& idx,
                                        const std::vector<Parity>& parities) const {
    if (idx.size() != parities.size())
        throw ConstraintViolationError("select_columns: index/parity size mismatch");
    SuperMatrix r(ctx_, row_par_, parities);
    for (std::size_t j = 0; j < idx.size(); ++j) {
        if (idx[j] >= cols()) throw ConstraintViolationError("select_columns: index out of range");
        for (std::size_t i = 0; i < rows(); ++i) r.e_[i][j] = e_[i][idx[j]];
    }
    return r;
}

std::string SuperMatrix::to_string() const {
    std::ostringstream out;
    for (std::size_t i = 0; i < rows(); ++i) {
        out << "[ ";
        for (std::size_t j = 0; j < cols(); ++j) {
            if (j) out << ", ";
            out << e_[i][j].to_string();
        }
        out << " ]\n";
    }
    return out.str();
}

SuperFrac det_even(const SuperMatrix& m) {
    if (m.rows() != m.cols())
        throw ConstraintViolationError("det_even: matrix is not square");
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (!m.at(i, j).is_homogeneous(Parity::Even))
                throw ParityMismatchError("det_even: entry with odd-parity terms");
    const std::size_t n = m.rows();
    if (n == 0) return SuperFrac::one(m.context());
    if (n == 1) return m.at(0, 0);
    // Cofactor expansion along the first row; entries commute here.
    SuperFrac acc(m.context());
    std::vector<std::size_t> cols(n - 1);
    for (std::size_t j = 0; j < n; ++j) {
        if (m.at(0, j).is_zero()) continue;
        std::size_t w = 0;
        for (std::size_t c = 0; c < n; ++c)
            if (c != j) cols[w++] = c;
        SuperMatrix minor(m.context(), std::vector<Parity>(n - 1, Parity::Even),
                          std::vector<Parity>(n - 1, Parity::Even));
        for (std::size_t i = 1; i < n; ++i)
            for (std::size_t c = 0; c < n - 1; ++c) minor.set(i - 1, c, m.at(i, cols[c]));
        SuperFrac term = m.at(0, j) * det_even(minor);
        acc = (j & 1) ? acc - term : acc + term;
    }
    return acc;
}

SuperMatrix invert_matrix(const SuperMatrix& m) {
    if (m.rows() != m.cols())
        throw ConstraintViolationError("invert_matrix: matrix is not square");
    const std::size_t n = m.rows();
    const ContextPtr& ctx = m.context();

    // Augmented [m | I]; rows permute freely, bookkeeping is implicit because
    // the right block receives the same operations.
    std::vector<std::vector<SuperFrac>> a(n, std::vector<SuperFrac>(2 * n, SuperFrac(ctx)));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) a[i][j] = m.at(i, j);
        a[i][n + i] = SuperFrac::one(ctx);
    }

    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pivot = n;
        for (std::size_t r = k; r < n; ++r) {
            if (!a[r][k].num().body().is_zero()) { pivot = r; break; }
        }
        if (pivot == n)
            throw SingularBodyError("invert_matrix: no pivot with invertible body in column " +
                                    std::to_string(k));
        std::swap(a[k], a[pivot]);
        SuperFrac inv = a[k][k].invert_unit();
        for (std::size_t j = 0; j < 2 * n; ++j) a[k][j] = inv * a[k][j];
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k || a[i][k].is_zero()) continue;
            SuperFrac f = a[i][k];
            for (std::size_t j = 0; j < 2 * n; ++j) a[i][j] = a[i][j] - f * a[k][j];
        }
    }

    SuperMatrix inv(ctx, m.col_parities(), m.row_parities());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv.set(i, j, a[i][n + j]);

    if (!(m * inv).is_identity() || !(inv * m).is_identity())
        throw Error("invert_matrix: inverse verification failed");
    return inv;
}

}  // namespace supergeo
