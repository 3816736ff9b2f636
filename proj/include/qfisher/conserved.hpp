// conserved.hpp — detection and certification of the conserved-quantity
// structure: Omega^2 estimation, V construction, residual verification.

#pragma once

#include "qfisher/operator_core.hpp"

#include <optional>

namespace qfisher {

struct OmegaEstimate {
    double omega_sq = 0.0;
    // true when [H, dH] vanishes; the characteristic operator is exactly -t dH
    bool parameter_commuting = false;
};

// Hilbert-Schmidt Rayleigh quotient <W, (H^x)^2 W> / <W, W> with W = [H, dH].
// Exact Omega^2 when the eigenoperator condition holds; never negative.
OmegaEstimate estimate_omega_sq(const HermitianOperator& h, const HermitianOperator& dh);

// V = (H^x)^2 dH - Omega^2 dH.
HermitianOperator build_v(const HermitianOperator& h, const HermitianOperator& dh, double omega_sq);

struct ConservedStructure {
    double omega_sq = 0.0;
    Matrix v;
    double conservation_residual = 0.0;  // ||[V,H]|| / (||V|| ||H||), 0 if V = 0
    double eigenop_residual = 0.0;       // normalized eigenoperator-condition residual
    bool pass = false;                   // both residuals <= 1e-8
    double omega() const;                // +sqrt(omega_sq); throws if omega_sq <= 0
};

// Fills both residuals for a candidate (omega_sq, V); reports, never throws.
ConservedStructure verify(const HermitianOperator& h, const HermitianOperator& dh, double omega_sq,
                          const Matrix& v);

// Estimate, build, verify. Empty when [H, dH] = 0 (parameter-commuting case).
std::optional<ConservedStructure> analyze(const HermitianOperator& h, const HermitianOperator& dh);

}  // namespace qfisher
