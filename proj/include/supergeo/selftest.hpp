#pragma once

#include <string>
#include <vector>

namespace supergeo {

/// One replayed end-to-end check: a stable name, the verdict, and a short
/// account of what was compared (or of the first mismatch on failure).
struct Check {
    std::string name;
    bool pass = false;
    std::string detail;
};

// Replays the full battery of end-to-end checks: overlap tables of the
// four-cell cover, the plane-cell renormalization example, cohomology
// dimension tables against the complex-based oracle, the family atlas
// cocycle and odd-block determinants, the first-overlap inverse Jacobian,
// global section counts, the odd Euler obstruction class, the section
// evaluation block tables, rank certificates on all charts, boundary values
// of the line-bundle classification, and the randomized algebra laws.
// Deterministic: the same build produces the same list in the same order.
std::vector<Check> run_acceptance_checks();

}  // namespace supergeo
