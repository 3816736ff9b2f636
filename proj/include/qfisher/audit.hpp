// audit.hpp — the prefactor audit: every published closed-form QFI expression
// is evaluated next to the variance-formula oracle and the ratio reported.

#pragma once

#include <string>
#include <vector>

namespace qfisher {

struct AuditRow {
    std::string id;
    std::string note;
    double paper_value = 0.0;
    double oracle_value = 0.0;
    double ratio = 0.0;           // oracle / paper
    double ratio_spread = 0.0;    // max relative deviation of the ratio over the grid
    bool ratio_stable = false;    // spread <= 1e-6
    int grid_points = 0;
};

std::vector<AuditRow> run_factor_audit();

std::string format_audit_table(const std::vector<AuditRow>& rows);

}  // namespace qfisher
