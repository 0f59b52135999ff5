#pragma once

#include "minmodes/deformation.hpp"

namespace minmodes {

enum class FrameTag { source, starred_uv, starred_native };

/// Spin connector c and curvature connectors d_u, d_v of a moving frame, as
/// ambient tangent vectors. They satisfy
///   grad e_u =  e_v (x) c + nu (x) d_u
///   grad e_v = -e_u (x) c + nu (x) d_v
///   grad nu  = -e_u (x) d_u - e_v (x) d_v
/// with d_u . e_v = d_v . e_u (symmetry of the curvature tensor).
struct ConnectorSet {
    FrameTag frame_tag = FrameTag::source;
    Vector3d c, d_u, d_v;
};

struct FrameVectors {
    Vector3d e_u, e_v, nu;
};

namespace detail {

inline ConnectorSet source_connectors_local(const FrameGeometry& g, Complex logF_d, Complex w) {
    ConnectorSet cs;
    cs.frame_tag = FrameTag::source;
    const double k0 = std::exp(g.phi) / (g.metric * g.metric);  // = 4 e^{-Phi} / s^2
    cs.d_u = k0 * (-g.cos_chi * g.e_u + g.sin_chi * g.e_v);
    cs.d_v = k0 * (g.sin_chi * g.e_u + g.cos_chi * g.e_v);
    const double chi_u = logF_d.imag();
    const double chi_v = logF_d.real();
    const double lu = 2.0 * w.real() / g.s;  // [ln(1+|w|^2)]_,u
    const double lv = 2.0 * w.imag() / g.s;
    cs.c = (1.0 / g.metric) * ((chi_u - lv) * g.e_u + (chi_v + lu) * g.e_v);
    return cs;
}

}  // namespace detail

inline ConnectorSet source_connectors(const WeierstrassSurface& s, Complex w) {
    s.require_in_domain(w);
    const Complex Fw = s.weierstrass_fn()(w);
    const auto g = detail::frame_geometry(Fw, w);
    return detail::source_connectors_local(g, s.weierstrass_fn_derivative()(w) / Fw, w);
}

/// Connectors of the (u,v)-parametrized frame (e*_u, e*_v) on the target
/// surface. All derivatives are taken in (u,v) by the chain rule with exact
/// h-derivatives:
///   c*  has the log term ln((1+|h|^2)|h'|) in place of ln(1+|w|^2),
///   d*_u, d*_v mix the native connectors with h'^2 / |h'|^2.
inline ConnectorSet starred_connectors(const DeformationPair& pair, Complex w) {
    const auto L = pair.local_state(w);
    ConnectorSet cs;
    cs.frame_tag = FrameTag::starred_uv;
    const double m_uv = L.star.metric * std::abs(L.hp);  // |r*_,u|
    const double chis_u = L.logFs_d.imag();
    const double chis_v = L.logFs_d.real();
    const Complex hh = std::conj(L.hw) * L.hp;
    const Complex lhp = L.hpp / L.hp;  // (ln h')' = h''/h'
    const double Mu = 2.0 * hh.real() / L.sh + lhp.real();   // [ln((1+|h|^2)|h'|)]_,u
    const double Mv = -2.0 * hh.imag() / L.sh - lhp.imag();  // [ln((1+|h|^2)|h'|)]_,v
    cs.c = (1.0 / m_uv) * ((chis_u - Mv) * L.es_u + (chis_v + Mu) * L.es_v);
    const double p = L.hp.real(), q = L.hp.imag();
    const double pref = std::exp(L.star.phi) / (m_uv * m_uv);
    const double A = (q * q - p * p) * L.star.cos_chi + 2.0 * p * q * L.star.sin_chi;
    const double B = 2.0 * p * q * L.star.cos_chi + (p * p - q * q) * L.star.sin_chi;
    cs.d_u = pref * (A * L.es_u + B * L.es_v);
    cs.d_v = pref * (B * L.es_u - A * L.es_v);
    return cs;
}

/// Connectors of the native starred frame (e*_{u*}, e*_{v*}): the source
/// formulas with every quantity starred, as ambient vectors at h(w).
inline ConnectorSet starred_native_connectors(const DeformationPair& pair, Complex w) {
    const Complex ws = pair.pushforward(w);
    const Complex Fsw = pair.target().weierstrass_fn()(ws);
    const auto g = detail::frame_geometry(Fsw, ws);
    ConnectorSet cs = detail::source_connectors_local(
        g, pair.target().weierstrass_fn_derivative()(ws) / Fsw, ws);
    cs.frame_tag = FrameTag::starred_native;
    return cs;
}

/// Assemble (grad e_u, grad e_v, grad nu) dyadically from the connector
/// equations; the gradients live in the frame's own surface.
inline std::array<Matrix3d, 3> reconstruct_frame_gradients(const ConnectorSet& cs,
                                                           const FrameVectors& f) {
    return {Matrix3d(f.e_v * cs.c.transpose() + f.nu * cs.d_u.transpose()),
            Matrix3d(-f.e_u * cs.c.transpose() + f.nu * cs.d_v.transpose()),
            Matrix3d(-f.e_u * cs.d_u.transpose() - f.e_v * cs.d_v.transpose())};
}

}  // namespace minmodes
