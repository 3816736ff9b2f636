// qfi.hpp — QFI and QFIM for pure and mixed states under unitary
// parametrization, the SLD and fidelity finite-difference oracles, the
// multiparameter saturation check and Cramer-Rao bounds.

#pragma once

#include "qfisher/operator_core.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace qfisher {

struct QfimMatrix {
    std::vector<std::string> labels;
    Eigen::MatrixXd entries;   // symmetric
    double min_eigenvalue = 0; // PSD reported, never projected
    bool psd_ok = true;        // min eigenvalue >= -1e-9
};

// 4 <Delta^2 H_theta> on the initial state.
double qfi_pure(const PureState& psi, const Matrix& h_theta);

// F_mn = 4 cov(H_m, H_n) on the initial state.
QfimMatrix qfim_pure(const PureState& psi, const std::vector<Matrix>& h_list,
                     const std::vector<std::string>& labels = {});

// sum_i 4 p_i <Delta^2 H>_i - sum_{i != j} 8 p_i p_j / (p_i + p_j) |<i|H|j>|^2,
// both sums restricted to the support of rho0.
double qfi_mixed(const SpectralState& rho0, const Matrix& h_theta);

QfimMatrix qfim_mixed(const SpectralState& rho0, const std::vector<Matrix>& h_list,
                      const std::vector<std::string>& labels = {});

struct SldResult {
    Matrix l;
    double qfi = 0.0;
};

// L_ij = 2 (drho)_ij / (p_i + p_j) in the eigenbasis of rho_theta, zero for
// pairs below the support cutoff; qfi = Tr(rho L^2).
SldResult sld_oracle(const SpectralState& rho_theta, const Matrix& drho);

// QFI of an arbitrary differentiable density-matrix family by central
// differences (one Richardson level) and the SLD construction.
double qfi_fd_family(const std::function<Matrix(double)>& rho_of_theta, double theta, double fd_step = 1e-5);

// Pure-state fidelity route: F = 4(<dpsi|dpsi> - |<psi|dpsi>|^2).
double qfi_fd_pure_family(const std::function<Vector(double)>& psi_of_theta, double theta,
                          double fd_step = 1e-5);

// Unitary-family oracle for initial state rho0 or psi0 under
// U(theta) = exp(-i t H(theta)).
double qfi_fd_oracle(const std::function<Matrix(double)>& h_of_theta, double theta, double t,
                     const SpectralState& rho0, double fd_step = 1e-5);
double qfi_fd_oracle(const std::function<Matrix(double)>& h_of_theta, double theta, double t,
                     const PureState& psi0, double fd_step = 1e-5);

// |<psi|[H_plus, H_minus]|psi>|; zero signals an attainable multiparameter bound.
double saturation_check(const PureState& psi, const Matrix& h_plus, const Matrix& h_minus);

// 1/(nu F); empty when F <= 0 (parameter not estimable via the bound).
std::optional<double> crb_bound(double fisher, unsigned nu);

// Diagonal of the inverse QFIM: per-parameter multiparameter bounds (nu = 1).
Eigen::VectorXd crb_multiparameter(const QfimMatrix& f);

}  // namespace qfisher
