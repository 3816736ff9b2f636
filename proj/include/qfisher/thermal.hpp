// thermal.hpp — Gibbs states, the closed-form thermal SLD of the
// conserved-quantity scenario, the Bernoulli-series SLD, and thermal QFI.

#pragma once

#include "qfisher/conserved.hpp"

#include <vector>

namespace qfisher {

struct ThermalState {
    SpectralState state;      // populations in the energy eigenbasis, ground first
    double beta = 0.0;
    double log_z = 0.0;       // log partition function
    double energy_spread = 0; // E_max - E_min
};

// p_i = exp(-beta E_i)/Z in the eigenbasis of H, log-sum-exp stabilized.
ThermalState thermal_state(const HermitianOperator& h, double beta);

// r(beta, Omega) = Omega^-2 [1 - tanh(beta Omega)/(beta Omega)], in [0, Omega^-2].
double r_function(double beta, double omega);

// Closed-form SLD of the thermal family for a verified structure. The series
// kernel resums to 2 tanh(beta Omega / 2)/(beta Omega), so the V and dH
// coefficients carry the half-argument; see sld_bernoulli_series. The trace
// shift from d(ln Z)/d(theta) is restored by re-centering on rho_T, which
// makes Tr(rho L) = 0 and the defining equation hold.
Matrix sld_thermal_closed(const HermitianOperator& dh, const Matrix& v, double omega, double beta,
                          const SpectralState& rho_t);

struct SldSeriesResult {
    Matrix l;                  // truncated series (no d ln Z shift)
    bool converged = false;
    int terms_used = 0;
    double last_term_norm = 0.0;
    double radius_estimate = 0.0;  // spread of G's spectrum; series requires < pi
};

// L = sum_n 4(4^{n+1}-1) B_{2n+2}/(2n+2)! (G^x)^{2n} dG for rho = exp(G).
// The generating function has radius pi in beta*spread(H); convergence is
// detected (0.9 pi safety plus term decay), not assumed.
SldSeriesResult sld_bernoulli_series(const HermitianOperator& g, const Matrix& dg, int n_max = 40,
                                     double tail_tol = 1e-12);

// Thermal wrapper: G = -beta H, dG = -beta dH via
// (G^x)^{2n} dG = (-beta)^{2n+1} (H^x)^{2n} dH, re-centered on rho_T.
SldSeriesResult sld_thermal_series(const HermitianOperator& h, const HermitianOperator& dh, double beta,
                                   const SpectralState& rho_t, int n_max = 40);

// Thermal QFI Tr(rho L^2) with the re-centered closed-form SLD. Equals
// beta^2 rh^2 <V^2> + (4/Omega^2) th^2 <dH^2> - (2 beta/Omega) rh th <{V,dH}>
// - <L0>^2 with rh = r(beta/2, Omega) and th = tanh(beta Omega/2).
double qfi_thermal(const HermitianOperator& dh, const Matrix& v, double omega, double beta,
                   const SpectralState& rho_t);

// The published closed form (r at full argument, no variance re-centering),
// reproduced verbatim for the factor audit.
double qfi_thermal_paper_form(const HermitianOperator& dh, const Matrix& v, double omega, double beta,
                              const SpectralState& rho_t);

// B_2, B_4, ..., B_{2n} by the tangent-number triangle (quad precision).
std::vector<double> bernoulli_even(int n);

// 4 (4^{n+1} - 1) B_{2n+2} / (2n+2)!
double sld_series_coefficient(int n);

}  // namespace qfisher
