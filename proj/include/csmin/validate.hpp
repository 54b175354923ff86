#pragma once

#include <string>
#include <vector>

#include "csmin/profile.hpp"

namespace csmin {

// One line of the invariant table: the worst residual observed for a named
// identity, against the tolerance it must stay under.
struct ValidationCheck {
    std::string name;
    double residual = 0.0;
    double tolerance = 0.0;
    bool passed = false;
    std::string detail;  // optional context (grid size, operator, lambda)
};

struct ValidationReport {
    int n = 2;
    std::vector<ValidationCheck> checks;
    bool all_passed() const;
};

// Run every invariant suite against a built curve: profile symmetries and
// arc length, geometry frame identities, Hill monodromy identities and
// nodal law, spectral frontier soundness and monotonicity, and the verdict
// consistency checks.  Each suite contributes rows; nothing throws on a
// failed identity — failures are reported in the table.
ValidationReport validate_curve(const ProfileCurve& curve);

// Fixed-width text rendering, one row per check, PASS/FAIL column first.
std::string validation_table(const ValidationReport& report);

}  // namespace csmin
