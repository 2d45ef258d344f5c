#pragma once

#include <optional>
#include <vector>

#include "supergeo/rational.hpp"

namespace supergeo {

// Dense exact linear algebra over Q, enough for the solves this project
// needs: rank, consistency of A x = b, and a nullspace basis.  Row echelon
// with full fraction arithmetic; sizes stay in the low hundreds.
using QVec = std::vector<Rational>;
using QMat = std::vector<QVec>;

// Reduces in place; returns pivot column indices in order.
std::vector<std::size_t> rref(QMat& m);

std::size_t rank(QMat m);

// One solution of A x = b, or nullopt when inconsistent.  Free variables are
// set to zero.
std::optional<QVec> solve(const QMat& a, const QVec& b);

// Basis of the right nullspace of A (columns = unknowns).
std::vector<QVec> nullspace(const QMat& a, std::size_t num_cols);

}  // namespace supergeo
