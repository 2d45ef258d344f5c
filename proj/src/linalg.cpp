#include "supergeo/linalg.hpp"

namespace supergeo {

std::vector<std::size_t> rref(QMat& m) {
    std::vector<std::size_t> pivots;
    if (m.empty()) return pivots;
    const std::size_t rows = m.size(), cols = m[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = rows;
        for (std::size_t i = r; i < rows; ++i)
            if (m[i][c] != 0) { p = i; break; }
        if (p == rows) continue;
        std::swap(m[r], m[p]);
        Rational inv = Rational(1) / m[r][c];
        for (std::size_t j = c; j < cols; ++j) m[r][j] *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c] == 0) continue;
            Rational f = m[i][c];
            for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

std::size_t rank(QMat m) { return rref(m).size(); }

std::optional<QVec> solve(const QMat& a, const QVec& b) {
    const std::size_t rows = a.size();
    const std::size_t cols = rows ? a[0].size() : 0;
    QMat aug = a;
    for (std::size_t i = 0; i < rows; ++i) aug[i].push_back(b[i]);
    auto pivots = rref(aug);
    // Inconsistent iff a pivot lands in the appended column.
    if (!pivots.empty() && pivots.back() == cols) return std::nullopt;
    QVec x(cols, 0);
    for (std::size_t k = 0; k < pivots.size(); ++k) x[pivots[k]] = aug[k][cols];
    return x;
}

std::vector<QVec> nullspace(const QMat& a, std::size_t num_cols) {
    QMat m = a;
    auto pivots = rref(m);
    std::vector<bool> is_pivot(num_cols, false);
    for (std::size_t c : pivots) is_pivot[c] = true;
    std::vector<QVec> basis;
    for (std::size_t f = 0; f < num_cols; ++f) {
        if (is_pivot[f]) continue;
        QVec v(num_cols, 0);
        v[f] = 1;
        for (std::size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = -m[k][f];
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace supergeo
