#include "supergeo/embedding.hpp"

#include <utility>

#include "supergeo/linalg.hpp"

namespace supergeo {

namespace {

std::vector<VectorField> transported_sections(const Atlas& atlas, std::size_t chart,
                                              const std::vector<VectorField>& sections) {
    std::vector<VectorField> out;
    out.reserve(sections.size());
    for (const VectorField& s : sections) {
        if (s.chart != atlas.chart(0))
            throw ContextMismatchError(
                "evaluation sections must live on the first chart");
        out.push_back(chart == 0 ? s
                                 : transport(s, atlas.transition(chart, 0),
                                             atlas.cached_jacobian(chart, 0)));
    }
    return out;
}

}  // namespace

EvaluationMatrix evaluation_matrix(const Atlas& atlas, std::size_t chart,
                                   const std::vector<std::string>& labels,
                                   const std::vector<VectorField>& sections) {
    if (labels.size() != sections.size())
        throw ConstraintViolationError("evaluation_matrix: one label per section");
    const Chart& frame = atlas.chart(chart);
    const std::vector<std::string> coords = frame.all_coords();

    std::vector<Parity> row_par;
    for (const std::string& c : coords) row_par.push_back(frame.coord_parity(c));
    std::vector<Parity> col_par;
    for (const VectorField& s : sections) {
        auto p = s.parity();
        if (!p && !s.is_zero())
            throw ParityMismatchError(
                "evaluation_matrix: sections must be parity homogeneous");
        col_par.push_back(p.value_or(Parity::Even));
    }

    const std::vector<VectorField> local = transported_sections(atlas, chart, sections);
    SuperMatrix m(frame.ctx, row_par, col_par);
    for (std::size_t c = 0; c < local.size(); ++c)
        for (std::size_t r = 0; r < coords.size(); ++r)
            m.set(r, c, local[c].comp(coords[r]));
    return EvaluationMatrix{chart, labels, std::move(m)};
}

EvaluationMatrix evaluation_matrix(const Atlas& atlas, std::size_t chart,
                                   const SectionBasis& basis) {
    std::vector<std::string> labels;
    std::vector<VectorField> sections;
    for (std::size_t i = 0; i < basis.even.size(); ++i) {
        labels.push_back("V" + std::to_string(i + 1));
        sections.push_back(basis.even[i]);
    }
    for (std::size_t i = 0; i < basis.odd.size(); ++i) {
        labels.push_back("X" + std::to_string(i + 1));
        sections.push_back(basis.odd[i]);
    }
    return evaluation_matrix(atlas, chart, labels, sections);
}

SuperMatrix standard_form(const EvaluationMatrix& m,
                          const std::vector<std::size_t>& pivots) {
    if (pivots.size() != m.matrix.rows())
        throw ConstraintViolationError("standard_form: need one pivot column per row");
    std::vector<Parity> par;
    for (std::size_t c : pivots) {
        if (c >= m.matrix.cols())
            throw ConstraintViolationError("standard_form: pivot column out of range");
        par.push_back(m.matrix.col_parities()[c]);
    }
    const SuperMatrix block = m.matrix.select_columns(pivots, par);
    return invert_matrix(block) * m.matrix;
}

std::vector<std::size_t> default_pivots(const EvaluationMatrix& m, const Rational& lambda) {
    const std::size_t nrows = m.matrix.rows();
    const std::vector<std::pair<Rational, Rational>> probes = {
        {Rational(17), Rational(23)},
        {Rational(5), Rational(-7)},
        {Rational(-11), Rational(13)},
    };

    std::vector<std::size_t> best;
    for (const auto& [z1, z2] : probes) {
        std::vector<std::size_t> pivots;
        QMat chosen(nrows);
        for (std::size_t c = 0; c < m.matrix.cols() && pivots.size() < nrows; ++c) {
            QVec vals(nrows);
            bool usable = true;
            for (std::size_t r = 0; r < nrows; ++r) {
                try {
                    vals[r] = m.matrix.at(r, c).eval_body({z1, z2}, {lambda});
                } catch (const ConstraintViolationError&) {
                    usable = false;
                    break;
                }
            }
            if (!usable) continue;
            QMat trial = chosen;
            for (std::size_t r = 0; r < nrows; ++r) trial[r].push_back(vals[r]);
            if (rank(trial) > pivots.size()) {
                chosen = std::move(trial);
                pivots.push_back(c);
            }
        }
        if (pivots.size() == nrows) return pivots;
        if (pivots.size() > best.size()) best = std::move(pivots);
    }
    return best;
}

std::vector<SamplePoint> default_samples() {
    return {{Rational(1), Rational(2)},
            {Rational(2), Rational(3)},
            {Rational(3), Rational(5)},
            {Rational(5), Rational(7)},
            {Rational(-1), Rational(4)}};
}

RankCertificate rank_certificate(const EvaluationMatrix& m,
                                 const std::vector<SamplePoint>& samples,
                                 const Rational& lambda) {
    RankCertificate cert;
    cert.chart = m.chart;
    const std::size_t nrows = m.matrix.rows();
    const std::size_t ncols = m.matrix.cols();

    for (const SamplePoint& s : samples) {
        QMat body(nrows, QVec(ncols, Rational(0)));
        for (std::size_t r = 0; r < nrows; ++r)
            for (std::size_t c = 0; c < ncols; ++c)
                body[r][c] = m.matrix.at(r, c).eval_body({s.z1, s.z2}, {lambda});
        cert.generation_ranks.push_back(rank(body));
    }

    cert.pivots = default_pivots(m, lambda);
    if (cert.pivots.size() == nrows) {
        const SuperMatrix sf = standard_form(m, cert.pivots);
        std::vector<bool> is_pivot(ncols, false);
        for (std::size_t c : cert.pivots) is_pivot[c] = true;

        // Coordinate differential of every non-pivot entry, one column per
        // entry, one row per chart coordinate.
        const ContextPtr& ctx = m.matrix.context();
        std::vector<std::string> vars = ctx->even_names();
        for (const std::string& n : ctx->odd_names()) vars.push_back(n);
        std::vector<std::vector<SuperFrac>> partials(vars.size());
        for (std::size_t c = 0; c < ncols; ++c) {
            if (is_pivot[c]) continue;
            for (std::size_t r = 0; r < nrows; ++r)
                for (std::size_t v = 0; v < vars.size(); ++v)
                    partials[v].push_back(sf.at(r, c).partial(vars[v]));
        }

        for (const SamplePoint& s : samples) {
            QMat d(vars.size(), QVec(partials[0].size(), Rational(0)));
            for (std::size_t v = 0; v < vars.size(); ++v)
                for (std::size_t e = 0; e < partials[v].size(); ++e)
                    d[v][e] = partials[v][e].eval_body({s.z1, s.z2}, {lambda});
            cert.differential_ranks.push_back(rank(d));
        }
    }

    cert.embedding = cert.pivots.size() == nrows &&
                     cert.differential_ranks.size() == samples.size();
    for (std::size_t r : cert.generation_ranks)
        if (r != nrows) cert.embedding = false;
    for (std::size_t r : cert.differential_ranks)
        if (r != nrows) cert.embedding = false;
    return cert;
}

InjectivityReport injectivity_check(const Atlas& atlas, const SectionBasis& basis,
                                    std::size_t chart) {
    const Chart& frame = atlas.chart(chart);
    const ContextPtr& c = frame.ctx;
    auto unit = [&](const std::string& coord) {
        VectorField f(frame);
        f.set(coord, SuperFrac::one(c));
        return f;
    };

    InjectivityReport rep;
    rep.chart = chart;

    // Probe columns in the display order: the two traceless Euler fields
    // carry the coordinates, the four frame fields carry identity columns.
    VectorField odd_euler_diff(frame);
    odd_euler_diff.set(frame.odd_coords[0], SuperFrac::variable(c, frame.odd_coords[0]));
    odd_euler_diff.set(frame.odd_coords[1], -SuperFrac::variable(c, frame.odd_coords[1]));
    VectorField even_euler_diff(frame);
    even_euler_diff.set(frame.even_coords[0], SuperFrac::variable(c, frame.even_coords[0]));
    even_euler_diff.set(frame.even_coords[1], -SuperFrac::variable(c, frame.even_coords[1]));

    rep.probes = {odd_euler_diff,          even_euler_diff,
                  unit(frame.even_coords[0]), unit(frame.even_coords[1]),
                  unit(frame.odd_coords[0]),  unit(frame.odd_coords[1])};
    rep.labels = {"th-euler-diff",
                  "z-euler-diff",
                  "d/d" + frame.even_coords[0],
                  "d/d" + frame.even_coords[1],
                  "d/d" + frame.odd_coords[0],
                  "d/d" + frame.odd_coords[1]};

    std::vector<VectorField> transported =
        transported_sections(atlas, chart, basis.even);
    for (const VectorField& s :
         transported_sections(atlas, chart, basis.odd))
        transported.push_back(s);
    rep.injective = span_contains(transported, rep.probes);
    return rep;
}

}  // namespace supergeo
