#pragma once

#include "minmodes/connectors.hpp"

namespace minmodes {

struct Moduli {
    double mu_s = 1.0, mu_d = 1.0, mu_b = 1.0;

    Moduli() = default;
    Moduli(double s, double d, double b) : mu_s(s), mu_d(d), mu_b(b) {
        if (mu_s < 0 || mu_d < 0 || mu_b < 0)
            throw InvalidParamsError("moduli must be nonnegative");
    }
};

enum class EnergyRoute { closed_form, connector, third_rank_oracle };

struct EnergyDensities {
    double w_s = 0.0, w_d = 0.0, w_b = 0.0;
    double w_total = 0.0;
    EnergyRoute route = EnergyRoute::closed_form;
};

inline double weighted_total(double w_s, double w_d, double w_b, const Moduli& mu) {
    return 0.5 * mu.mu_s * w_s + 0.5 * mu.mu_d * w_d + 0.25 * mu.mu_b * w_b;
}

namespace detail {

/// Defect pair of the drilling-neutrality equations at w:
///   D_u = alpha_,u - [ln((1+|h|^2)|h'|/(1+|w|^2))]_,v
///   D_v = alpha_,v + [ln((1+|h|^2)|h'|/(1+|w|^2))]_,u
/// with alpha = chi* - chi. All derivatives are exact (no branch needed:
/// alpha_,u = Im d/dw log(F* o h / F), additive 2 pi shifts drop out).
inline std::pair<double, double> drilling_defects(const PairLocal& L) {
    const Complex dalpha = L.logFs_d - L.logF_d;
    const double a_u = dalpha.imag();
    const double a_v = dalpha.real();
    const Complex hh = std::conj(L.hw) * L.hp;
    const Complex lhp = L.hpp / L.hp;
    const double Lu = 2.0 * hh.real() / L.sh + lhp.real() - 2.0 * L.w.real() / L.s;
    const double Lv = -2.0 * hh.imag() / L.sh - lhp.imag() - 2.0 * L.w.imag() / L.s;
    return {a_u - Lv, a_v + Lu};
}

}  // namespace detail

/// W_s = 2 (e^{Phi*-Phi} |h'| (1+|h|^2)/(1+|w|^2) - 1)^2; equals |U - P(nu)|^2.
inline double stretching_density(const DeformationPair& pair, Complex w) {
    const auto L = pair.local_state(w);
    return 2.0 * (L.j - 1.0) * (L.j - 1.0);
}

inline EnergyDensities third_rank_oracle(const DeformationPair& pair, Complex w, double step,
                                         const Moduli& mu);

/// Pure drilling measure. closed_form evaluates
///   -K (1+|w|^2)^2 (D_u^2 + D_v^2)
/// from the exact defects; connector evaluates 4 |V c* - R c|^2.
inline double drilling_density(const DeformationPair& pair, Complex w,
                               EnergyRoute route = EnergyRoute::closed_form) {
    if (route == EnergyRoute::third_rank_oracle)
        return third_rank_oracle(pair, w, 0.0, Moduli()).w_d;
    if (route == EnergyRoute::connector) {
        const auto L = pair.local_state(w);
        const ConnectorSet src =
            detail::source_connectors_local(L.src, L.logF_d, w);
        const ConnectorSet star = starred_connectors(pair, w);
        return 4.0 * (L.V * star.c - L.R * src.c).squaredNorm();
    }
    const auto L = pair.local_state(w);
    const auto [Du, Dv] = detail::drilling_defects(L);
    return -L.src.gauss * L.s * L.s * (Du * Du + Dv * Dv);
}

/// Pure bending measure. closed_form evaluates
///   16 K^2 [ (|h'| (1+|w|^2)/(1+|h|^2))^2 - 1 ]^2;
/// connector evaluates 4 (|V grad* nu*|^2 - |grad nu|^2)^2 from the curvature
/// connectors of both frames.
inline double bending_density(const DeformationPair& pair, Complex w,
                              EnergyRoute route = EnergyRoute::closed_form) {
    if (route == EnergyRoute::third_rank_oracle)
        return third_rank_oracle(pair, w, 0.0, Moduli()).w_b;
    const auto L = pair.local_state(w);
    if (route == EnergyRoute::connector) {
        const ConnectorSet src = detail::source_connectors_local(L.src, L.logF_d, w);
        const ConnectorSet star = starred_connectors(pair, w);
        const Matrix3d grad_nu = -(L.src.e_u * src.d_u.transpose() + L.src.e_v * src.d_v.transpose());
        const Matrix3d grad_nu_star =
            -(L.es_u * star.d_u.transpose() + L.es_v * star.d_v.transpose());
        const double diff = (L.V * grad_nu_star).squaredNorm() - grad_nu.squaredNorm();
        return 4.0 * diff * diff;
    }
    const double ratio = std::abs(L.hp) * L.s / L.sh;
    const double r2 = ratio * ratio - 1.0;
    return 16.0 * L.src.gauss * L.src.gauss * r2 * r2;
}

/// 16 (stretch_ratio^2 K* - K)^2: the bending measure through the two
/// Gaussian curvatures; a third independent route used by the checks.
inline double bending_density_curvature_route(const DeformationPair& pair, Complex w) {
    const auto L = pair.local_state(w);
    const double diff = L.j * L.j * L.star.gauss - L.src.gauss;
    return 16.0 * diff * diff;
}

inline EnergyDensities total_density(const DeformationPair& pair, Complex w,
                                     const Moduli& mu = Moduli()) {
    EnergyDensities e;
    e.route = EnergyRoute::closed_form;
    e.w_s = stretching_density(pair, w);
    e.w_d = drilling_density(pair, w, EnergyRoute::closed_form);
    e.w_b = bending_density(pair, w, EnergyRoute::closed_form);
    e.w_total = weighted_total(e.w_s, e.w_d, e.w_b, mu);
    return e;
}

/// Finite-difference oracle for the pure measures as originally defined:
/// builds the third-rank tensor H = R^T grad_s R from central differences of
/// the rotation field and contracts
///   W_d = |W(nu) o H|^2,
///   W_b = (|H|^2 - W_d / 2 - 4 nu . H o grad_s nu)^2,
/// with A o H = A_ij H_ijk e_k and H o A = H_ijk A_jk e_i. W_s is taken as
/// |U - P(nu)|^2 from the polar factors. Independent of the closed forms.
inline EnergyDensities third_rank_oracle(const DeformationPair& pair, Complex w,
                                         double step = 0.0, const Moduli& mu = Moduli()) {
    if (step <= 0.0) step = 1e-4 * std::max(1.0, std::abs(w));
    const auto L = pair.local_state(w);

    const Matrix3d R_u =
        (pair.local_state(w + step).R - pair.local_state(w - step).R) / (2.0 * step);
    const Matrix3d R_v = (pair.local_state(w + Complex(0, step)).R -
                          pair.local_state(w - Complex(0, step)).R) /
                         (2.0 * step);

    // grad_s R: direction index k contracts with e_u/|r_,u|, e_v/|r_,v|.
    const double m = L.src.metric;
    const Matrix3d A_u = L.R.transpose() * R_u / m;  // skew
    const Matrix3d A_v = L.R.transpose() * R_v / m;
    std::array<Matrix3d, 3> H;  // H[k](i,j) = H_ijk
    for (int k = 0; k < 3; ++k)
        H[k] = A_u * L.src.e_u[k] + A_v * L.src.e_v[k];

    const Vector3d& nu = L.src.nu;
    Matrix3d Wnu;
    Wnu << 0, -nu[2], nu[1], nu[2], 0, -nu[0], -nu[1], nu[0], 0;

    Vector3d WoH;
    double H_sq = 0.0;
    for (int k = 0; k < 3; ++k) {
        WoH[k] = Wnu.cwiseProduct(H[k]).sum();
        H_sq += H[k].squaredNorm();
    }
    const double w_d = WoH.squaredNorm();

    const ConnectorSet src = detail::source_connectors_local(L.src, L.logF_d, w);
    const Matrix3d grad_nu = -(L.src.e_u * src.d_u.transpose() + L.src.e_v * src.d_v.transpose());
    Vector3d HoA = Vector3d::Zero();
    for (int k = 0; k < 3; ++k) HoA += H[k] * grad_nu.col(k);
    const double w_b_inner = H_sq - 0.5 * w_d - 4.0 * nu.dot(HoA);

    EnergyDensities e;
    e.route = EnergyRoute::third_rank_oracle;
    const Matrix3d U = L.j * (Matrix3d::Identity() - L.src.nu * L.src.nu.transpose());
    e.w_s = (U - (Matrix3d::Identity() - L.src.nu * L.src.nu.transpose())).squaredNorm();
    e.w_d = w_d;
    e.w_b = w_b_inner * w_b_inner;
    e.w_total = weighted_total(e.w_s, e.w_d, e.w_b, mu);
    return e;
}

/// Finite-difference Laplacian of alpha = chi* - chi at w (locally continued);
/// harmonic for any conformal pair, used as a cross-check.
inline double alpha_laplacian_fd(const DeformationPair& pair, Complex w, double step = 0.0) {
    if (step <= 0.0) step = 1e-4 * std::max(1.0, std::abs(w));
    const HolomorphicFn& F = pair.source().weierstrass_fn();
    const HolomorphicFn& Fs = pair.target().weierstrass_fn();
    const HolomorphicFn& h = pair.conformal_map();
    auto ratio = [&](Complex z) { return Fs(h(z)) / F(z); };
    const Complex r0 = ratio(w);
    auto alpha_rel = [&](Complex z) { return std::arg(ratio(z) / r0); };
    const double lap = (alpha_rel(w + step) + alpha_rel(w - step) + alpha_rel(w + Complex(0, step)) +
                        alpha_rel(w - Complex(0, step))) /
                       (step * step);
    return lap;
}

}  // namespace minmodes
