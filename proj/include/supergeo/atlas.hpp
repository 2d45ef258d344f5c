#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "supergeo/linalg.hpp"
#include "supergeo/matrix.hpp"

namespace supergeo {

/// A coordinate chart: named even and odd coordinates over the shared
/// parameter list.  The chart owns the generator context its functions live in.
struct Chart {
    std::string name;
    std::vector<std::string> even_coords;
    std::vector<std::string> odd_coords;
    ContextPtr ctx;

    Chart() = default;
    Chart(std::string chart_name, std::vector<std::string> even,
          std::vector<std::string> odd,
          std::vector<std::string> params = {"lambda"});

    // Even coordinates first, then odd; the row/column order of Jacobians.
    std::vector<std::string> all_coords() const;
    Parity coord_parity(const std::string& coord) const;

    bool operator==(const Chart& o) const {
        return name == o.name && even_coords == o.even_coords && odd_coords == o.odd_coords;
    }
    bool operator!=(const Chart& o) const { return !(*this == o); }
};

/// Coordinate change written in the direction of the classical tables:
/// each *target*-chart coordinate is assigned its expression in *source*-chart
/// coordinates.  Validated on construction: every target coordinate gets an
/// assignment of its own parity, expressed over the source context.
struct TransitionMap {
    Chart source;
    Chart target;
    std::map<std::string, SuperFrac> assignment;

    TransitionMap() = default;
    TransitionMap(Chart src, Chart tgt, std::map<std::string, SuperFrac> assign);

    const SuperFrac& of(const std::string& target_coord) const;
};

TransitionMap identity_transition(const Chart& chart);

// Pullback along the coordinate change: rewrites a function of the target
// coordinates as a function of the source coordinates.
SuperFrac substitute(const SuperFrac& f, const TransitionMap& t);
SuperFrac poly_substitute(const SuperPoly& p,
                          const std::map<std::string, SuperFrac>& assignment,
                          const ContextPtr& source_ctx);

// Chain U_i -> U_j -> U_k: requires t1.target == t2.source; the result
// expresses U_k coordinates directly in U_i coordinates.
TransitionMap compose(const TransitionMap& t1, const TransitionMap& t2);

// Row r expands the target frame field d/d(target coord r) in the source
// frame, with coefficient functions of the source coordinates.  Computed as
// the verified matrix inverse of the forward derivative matrix
// [d(assignment_c)/d(source_d)].
SuperMatrix jacobian(const TransitionMap& t);

/// Vector field on one chart: components indexed by coordinate name (missing
/// means zero), coefficients in the chart's own context.
struct VectorField {
    Chart chart;
    std::map<std::string, SuperFrac> comps;

    VectorField() = default;
    explicit VectorField(Chart c) : chart(std::move(c)) {}

    SuperFrac comp(const std::string& coord) const;
    void set(const std::string& coord, SuperFrac v);
    bool is_zero() const;

    // Parity of a homogeneous field (component parity minus frame parity);
    // nullopt for inhomogeneous or undeterminable (zero) fields.
    std::optional<Parity> parity() const;

    VectorField operator+(const VectorField& o) const;
    VectorField operator-(const VectorField& o) const;
    VectorField operator-() const;
    VectorField scaled(const SuperFrac& f) const;  // left multiplication
    bool operator==(const VectorField& o) const;

    // Drop all terms of odd-degree > k in every component (e.g. k = 1 reduces
    // a field modulo the square of the odd ideal).
    VectorField truncate_odd_degree(int k) const;

    std::string to_string() const;
};

// Derivation action X(f) = sum_d X_d * d(f)/d(coord_d).
SuperFrac apply_field(const VectorField& x, const SuperFrac& f);

// Super Lie bracket [X,Y] = X o Y - (-1)^{|X||Y|} Y o X of homogeneous fields.
VectorField bracket(const VectorField& x, const VectorField& y);

// Rewrites a field living on t.target as a field on t.source:
// components are pulled back through t and recombined with jacobian(t).
VectorField transport(const VectorField& v, const TransitionMap& t);
VectorField transport(const VectorField& v, const TransitionMap& t, const SuperMatrix& jac);

/// Finite atlas: charts plus a transition for every ordered pair.
/// transition(i, j) has source chart i and target chart j: it expresses
/// chart-j coordinates in chart-i coordinates, and transports fields and
/// functions from chart j to chart i.
class Atlas {
public:
    explicit Atlas(std::vector<Chart> charts) : charts_(std::move(charts)) {
        for (std::size_t i = 0; i < charts_.size(); ++i)
            transitions_.emplace(std::make_pair(i, i), identity_transition(charts_[i]));
    }

    const std::vector<Chart>& charts() const { return charts_; }
    std::size_t size() const { return charts_.size(); }
    const Chart& chart(std::size_t i) const { return charts_.at(i); }

    void set_transition(TransitionMap t);
    const TransitionMap& transition(std::size_t i, std::size_t j) const;
    const SuperMatrix& cached_jacobian(std::size_t i, std::size_t j) const;

    std::size_t chart_index(const std::string& name) const;

private:
    std::vector<Chart> charts_;
    std::map<std::pair<std::size_t, std::size_t>, TransitionMap> transitions_;
    mutable std::map<std::pair<std::size_t, std::size_t>, SuperMatrix> jacobians_;
};

struct ConsistencyReport {
    std::vector<std::string> failures;
    bool ok() const { return failures.empty(); }
};

// Pair checks (transition(i,j) o transition(j,i) = id) and ordered-triple
// checks (transition(i,j) then (j,k) equals (i,k)); every defect is reported
// with the charts, the coordinate and the residual expression.
ConsistencyReport verify_cocycle(const Atlas& atlas);

/// One entry of a vector-valued 1-cochain.  `raw` is the classical mixed
/// notation (coefficient still in chart-j coordinates, frame on chart i);
/// `field` is the same object rewritten entirely on chart i.
struct CochainEntry {
    std::size_t i = 0, j = 0;
    std::map<std::string, SuperFrac> raw;
    VectorField field;
};

class VectorCochain {
public:
    const CochainEntry& entry(std::size_t i, std::size_t j) const;
    bool has_entry(std::size_t i, std::size_t j) const;
    void set_entry(CochainEntry e);
    const std::map<std::pair<std::size_t, std::size_t>, CochainEntry>& entries() const {
        return entries_;
    }

private:
    std::map<std::pair<std::size_t, std::size_t>, CochainEntry> entries_;
};

// The obstruction cochain of the even coordinate transitions: for each
// ordered overlap, the part of every even assignment that lies in the square
// of the odd ideal, as a frame-indexed cochain entry.
VectorCochain extract_omega(const Atlas& atlas);

// Checks antisymmetry on pairs and the additive cocycle identity
// omega_ij + T_ij(omega_jk) = omega_ik on ordered triples.
ConsistencyReport verify_omega_cocycle(const VectorCochain& omega, const Atlas& atlas);

/// Degree bounds for the coboundary ansatz: per-chart 0-cochains with
/// components (product of all odd coordinates) * even-monomials of per-variable
/// degree <= even_degree * parameter powers <= param_degree.
struct AnsatzBounds {
    int even_degree = 3;
    int param_degree = 2;
};

/// Is the given 1-cochain (entries on the first chart of each ordered pair,
/// at least all pairs i<j) the Cech coboundary w_i - T_ij(w_j) of a regular
/// degree-bounded 0-cochain?  Returns the witness when one exists.
std::optional<std::vector<VectorField>> coboundary_witness(const Atlas& atlas,
                                                           const VectorCochain& cochain,
                                                           const AnsatzBounds& bounds);

}  // namespace supergeo
