#include "qfisher/conserved.hpp"

#include <cmath>
#include <stdexcept>

namespace qfisher {

namespace {
cplx hs_inner(const Matrix& a, const Matrix& b) { return (a.adjoint() * b).trace(); }
}  // namespace

OmegaEstimate estimate_omega_sq(const HermitianOperator& h, const HermitianOperator& dh) {
    const Matrix w = commutator(h.mat(), dh.mat());
    const double wn = fro_norm(w);
    if (wn <= 1e-12) return {0.0, true};
    const Matrix w2 = adjoint_power(h.mat(), w, 2);
    // <W, (H^x)^2 W> = ||[H,W]||^2 >= 0, so the quotient is real nonnegative
    const double q = hs_inner(w, w2).real() / (wn * wn);
    return {q, false};
}

HermitianOperator build_v(const HermitianOperator& h, const HermitianOperator& dh, double omega_sq) {
    const Matrix v = adjoint_power(h.mat(), dh.mat(), 2) - omega_sq * dh.mat();
    return HermitianOperator::from(v, 1e-10);
}

double ConservedStructure::omega() const {
    if (omega_sq <= 0.0) throw std::domain_error("ConservedStructure: omega_sq not positive");
    return std::sqrt(omega_sq);
}

ConservedStructure verify(const HermitianOperator& h, const HermitianOperator& dh, double omega_sq,
                          const Matrix& v) {
    ConservedStructure s;
    s.omega_sq = omega_sq;
    s.v = v;

    const double vn = fro_norm(v);
    const double hn = fro_norm(h.mat());
    // V is the difference (H^x)^2 dH - Omega^2 dH; below this scale it is zero
    const double v_scale =
        fro_norm(adjoint_power(h.mat(), dh.mat(), 2)) + std::abs(omega_sq) * fro_norm(dh.mat());
    const bool v_is_zero = vn <= 1e-12 * std::max(v_scale, 1e-300);
    s.conservation_residual =
        (!v_is_zero && hn > 0.0) ? fro_norm(commutator(v, h.mat())) / (vn * hn) : 0.0;

    const Matrix w = commutator(h.mat(), dh.mat());
    const double wn = fro_norm(w);
    if (wn <= 1e-12) {
        s.eigenop_residual = 0.0;
    } else {
        const Matrix w2 = adjoint_power(h.mat(), w, 2);
        const double denom = fro_norm(w2) + std::abs(omega_sq) * wn;
        s.eigenop_residual = denom > 0.0 ? fro_norm(w2 - omega_sq * w) / denom : 0.0;
    }
    s.pass = s.conservation_residual <= 1e-8 && s.eigenop_residual <= 1e-8;
    return s;
}

std::optional<ConservedStructure> analyze(const HermitianOperator& h, const HermitianOperator& dh) {
    const OmegaEstimate est = estimate_omega_sq(h, dh);
    if (est.parameter_commuting) return std::nullopt;
    const HermitianOperator v = build_v(h, dh, est.omega_sq);
    return verify(h, dh, est.omega_sq, v.mat());
}

}  // namespace qfisher
