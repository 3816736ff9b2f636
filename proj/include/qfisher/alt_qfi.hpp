// alt_qfi.hpp — the alternative QFI I_theta = 4 Tr(d sqrt(rho))^2: unitary-case
// trace and spectral forms, the direct finite-difference oracle, and the
// Gamma-pair machinery for exponential families.

#pragma once

#include "qfisher/operator_core.hpp"

#include <functional>

namespace qfisher {

struct AltQfiValue {
    double trace_form = 0.0;     // 8 Tr[H^2 rho0 - (H sqrt(rho0))^2]
    double spectral_form = 0.0;  // 8 sum_i (p_i <D^2 H>_i - 2 sum_{j>i} sqrt(p_i p_j) |H_ij|^2)
};

AltQfiValue alt_qfi_unitary(const SpectralState& rho0, const Matrix& h_theta);

struct AltQfiOracleResult {
    double value = 0.0;
    bool degeneracy_warning = false;  // eigenvalue gap < 1e-8 near theta (accuracy flag)
};

// 4 Tr[(d sqrt(rho)/d theta)^2] by central differences of the PSD square root.
AltQfiOracleResult alt_qfi_direct_oracle(const std::function<Matrix(double)>& rho_of_theta, double theta,
                                         double fd_step = 1e-5);

// Gamma_- = Gamma_+^dagger; the pair coincides when [G, dG] = 0.
struct GammaPair {
    Matrix plus, minus;
};

// Gamma_pm = sum_n (+-1/2)^n / (n+1)! (G^x)^n dG (entire; always converges).
GammaPair gamma_series(const HermitianOperator& g, const Matrix& dg, int n_max = 60, double tail_tol = 1e-12);

// Gauss-Legendre quadrature of int_0^1 exp(+-s G^x / 2) dG ds (cross-check).
GammaPair gamma_integral(const HermitianOperator& g, const Matrix& dg, int nodes = 32);

// f_I(Omega, beta) = 2 Omega^-3 [beta Omega / 2 - sinh(beta Omega / 2)]
double f_i_function(double omega, double beta);
// d f_I / d beta = Omega^-2 [1 - cosh(beta Omega / 2)]
double df_i_dbeta(double omega, double beta);

// Gamma_pm = f_I V + (f_I Omega^2 - beta) dH -+ 2 (df_I/dbeta) [H, dH] for the
// thermal family of a verified structure (hyperbolic continuation of the
// unitary closed form).
GammaPair gamma_thermal_closed(const HermitianOperator& h, const HermitianOperator& dh, const Matrix& v,
                               double omega, double beta);

struct AltQfiThermal {
    double value = 0.0;            // Re <Gamma_- Gamma_+> with re-centered gammas
    double raw_published = 0.0;    // Re <Gamma_+ Gamma_-> without the trace shift
};

// I_theta for the thermal family as a Gamma correlation function. Since
// d sqrt(rho) = Gamma_+ sqrt(rho) / 2 = sqrt(rho) Gamma_- / 2, the defining
// trace fixes the order <Gamma_- Gamma_+>; re-centering (subtracting
// <Gamma_pm>) restores the d(ln Z) scalar. The published ordering without the
// shift is reported alongside.
AltQfiThermal alt_qfi_thermal(const GammaPair& gamma, const SpectralState& rho_t);

}  // namespace qfisher
