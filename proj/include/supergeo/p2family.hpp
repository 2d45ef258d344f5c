#pragma once

#include <optional>
#include <vector>

#include "supergeo/atlas.hpp"

namespace supergeo {

/// Three-chart atlas of a 2|2-dimensional space fibered over the projective
/// plane, with two odd coordinates gluing as inverse powers of the affine
/// coordinates and an even deformation mixing a product of the odd
/// coordinates into one even transition on every overlap.  The deformation
/// strength is a single parameter, kept formal or specialized to a rational.

struct FamilyParams {
    /// Empty keeps the deformation parameter as a formal variable.
    std::optional<Rational> lambda;
};

/// Charts U0, U1, U2 with coordinates z1k, z2k | th1k, th2k and all six
/// pairwise transitions.  Construction verifies that on every overlap the
/// odd coordinate block glues by the cube of a reciprocal coordinate.
Atlas build_family_atlas(const FamilyParams& p = {});

/// Determinant of the 2x2 coefficient block expressing the target odd
/// coordinates in the source odd coordinates.  Requires two odd coordinates
/// on each chart.
SuperFrac odd_block_determinant(const TransitionMap& t);

enum class BasisOrigin { Canonical, Solved };

/// Vector fields on the first chart of the family atlas, split by parity.
struct SectionBasis {
    std::vector<VectorField> even;
    std::vector<VectorField> odd;
    BasisOrigin origin = BasisOrigin::Canonical;
};

/// The closed-form basis of global vector fields: twelve even and twelve odd
/// fields with polynomial coefficients of degree at most two.
SectionBasis canonical_sections(const FamilyParams& p = {});

/// True when v, given on the first chart, stays polynomial after transport
/// to every other chart.
bool is_global(const Atlas& atlas, const VectorField& v);

/// Global vector fields found by linear algebra alone: an ansatz of
/// polynomial fields of coefficient degree at most degree_bound on the first
/// chart, cut down by the regularity constraints on the other charts.  The
/// parameter must be specialized.  The solve is repeated with the bound
/// raised by one; a dimension change throws BoundTooSmallError.
SectionBasis solve_global_sections(const FamilyParams& p, int degree_bound = 3);

/// Connecting-map data for a field that is global only modulo the square of
/// the odd ideal: the truncation of v transports to a regular field on every
/// chart, and the transport defects form a 1-cochain valued in that square.
/// The cochain is a coboundary exactly when a bounded witness exists.
struct DeltaClass {
    VectorCochain residues;
    std::optional<std::vector<VectorField>> witness;

    bool nonzero() const { return !witness.has_value(); }
};

DeltaClass delta_class(const Atlas& atlas, const VectorField& v,
                       const AnsatzBounds& bounds = {});

/// Exact span comparisons over the rationals for lists of fields on one
/// chart with Laurent polynomial coefficients.
bool span_contains(const std::vector<VectorField>& outer,
                   const std::vector<VectorField>& inner);
bool equal_span(const std::vector<VectorField>& a, const std::vector<VectorField>& b);

}  // namespace supergeo
