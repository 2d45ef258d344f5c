#pragma once

#include <string>
#include <vector>

#include "supergeo/matrix.hpp"
#include "supergeo/p2family.hpp"

namespace supergeo {

/// Frame components of a list of global fields on one chart of the family
/// atlas: one labeled column per field, one row per chart coordinate, even
/// rows before odd rows.  Sections are given on the first chart and are
/// transported when evaluating elsewhere.

struct EvaluationMatrix {
    std::size_t chart = 0;
    std::vector<std::string> labels;
    SuperMatrix matrix;
};

EvaluationMatrix evaluation_matrix(const Atlas& atlas, std::size_t chart,
                                   const std::vector<std::string>& labels,
                                   const std::vector<VectorField>& sections);

/// Canonical 24-column layout: even sections labeled V1..V12, then odd
/// sections labeled X1..X12.
EvaluationMatrix evaluation_matrix(const Atlas& atlas, std::size_t chart,
                                   const SectionBasis& basis);

/// Left-multiplies by the inverse of the pivot-column block, so those
/// columns become the identity frame.  The block must have invertible body.
SuperMatrix standard_form(const EvaluationMatrix& m, const std::vector<std::size_t>& pivots);

/// Greedy pivot choice: first columns whose body stays independent at a few
/// probe points.  Returns fewer than four indices when the matrix body is
/// degenerate.
std::vector<std::size_t> default_pivots(const EvaluationMatrix& m, const Rational& lambda);

/// Even coordinates of one evaluation point; the odd coordinates evaluate
/// to zero in every body computation.
struct SamplePoint {
    Rational z1, z2;
};

std::vector<SamplePoint> default_samples();

/// Exact rank evidence that the section columns both span the tangent frame
/// at the samples and separate tangent directions there: the body of the
/// matrix itself and the body of the coordinate differential of its
/// standard form must have full rank everywhere.
struct RankCertificate {
    std::size_t chart = 0;
    std::vector<std::size_t> pivots;
    std::vector<std::size_t> generation_ranks;
    std::vector<std::size_t> differential_ranks;
    bool embedding = false;
};

RankCertificate rank_certificate(const EvaluationMatrix& m,
                                 const std::vector<SamplePoint>& samples,
                                 const Rational& lambda);

/// Separation of points: six probe fields whose frame components on the
/// chart read off every coordinate literally (z1 and -z2 on the even side,
/// th1 and -th2 on the odd side, next to two identity columns each).  The
/// chart is separated when all six probes lie in the span of the
/// transported basis.
struct InjectivityReport {
    std::size_t chart = 0;
    bool injective = false;
    std::vector<std::string> labels;
    std::vector<VectorField> probes;
};

InjectivityReport injectivity_check(const Atlas& atlas, const SectionBasis& basis,
                                    std::size_t chart);

}  // namespace supergeo
