#pragma once

#include "minmodes/weierstrass.hpp"

namespace minmodes {

/// Pointwise kinematics of a conformal deformation at w: the pushed-forward
/// point, both orthonormal frames on the target, the surface deformation
/// gradient and its polar factors.
struct DeformationState {
    Complex w, w_star;
    SurfaceFrame frame;                    // on the source surface
    Vector3d star_e_u, star_e_v;           // target frame in the (u,v) parameters
    Vector3d star_e_ustar, star_e_vstar;   // target frame in its native parameters
    Vector3d nu_star;
    Matrix3d grad_y;  // rank 2
    Matrix3d R;       // rotation, grad_y = R U = V R
    Matrix3d U, V;    // symmetric PSD stretches on source/target tangent planes
    double stretch_ratio = 0.0;  // |r*_,u| / |r_,u|
};

namespace detail {

/// Everything the energy formulas need at one point; cheap (no path work).
struct PairLocal {
    Complex w, ws;
    FrameGeometry src, star;  // star: native frame at w*
    Vector3d es_u, es_v;      // (u,v)-parametrized target frame
    double j = 0.0;           // stretch ratio
    Complex hw, hp, hpp;      // h, h', h''
    Complex logF_d;           // (F'/F)(w)
    Complex logFs_d;          // (F*'/F*)(w*) * h'(w): d/du of log F* o h
    double s = 0.0, sh = 0.0; // 1+|w|^2, 1+|h|^2
    Matrix3d R, V;
};

}  // namespace detail

/// Two minimal surfaces tied by a conformal map h with h(Omega) inside
/// Omega*. Immutable; all evaluations are pure.
class DeformationPair {
  public:
    DeformationPair(WeierstrassSurface source, WeierstrassSurface target, HolomorphicFn h,
                    int containment_grid = 64)
        : source_(std::move(source)),
          target_(std::move(target)),
          h_(std::move(h)),
          hp_(h_.derivative()),
          hpp_(hp_.derivative()) {
        for (Complex w : source_.domain().lattice_points(containment_grid, containment_grid)) {
            Complex ws;
            try {
                ws = h_(w);
            } catch (const SingularPointError&) {
                throw InvalidParamsError(
                    "pair: h is singular at interior probe w = " + detail::complex_str(w) +
                    "; add an exclusion around the pole");
            }
            if (!target_.domain().contains(ws))
                throw DomainViolationError("pair: h(w) leaves the target domain at w = " +
                                           detail::complex_str(w));
            if (std::abs(hp_(w)) < 1e-12)
                throw InvalidParamsError("pair: |h'| below 1e-12 at probe w = " +
                                         detail::complex_str(w) +
                                         "; exclude the degenerate point");
        }
    }

    const WeierstrassSurface& source() const { return source_; }
    const WeierstrassSurface& target() const { return target_; }
    const HolomorphicFn& conformal_map() const { return h_; }
    const HolomorphicFn& conformal_map_derivative() const { return hp_; }
    const HolomorphicFn& conformal_map_second_derivative() const { return hpp_; }

    Complex pushforward(Complex w) const {
        source_.require_in_domain(w);
        const Complex ws = h_(w);
        if (!target_.domain().contains(ws))
            throw DomainViolationError("pushforward: h(w) outside target domain at w = " +
                                       detail::complex_str(w));
        return ws;
    }

    detail::PairLocal local_state(Complex w) const {
        detail::PairLocal L;
        L.w = w;
        L.ws = pushforward(w);
        const Complex Fw = source_.weierstrass_fn()(w);
        const Complex Fsw = target_.weierstrass_fn()(L.ws);
        L.src = detail::frame_geometry(Fw, w);
        L.star = detail::frame_geometry(Fsw, L.ws);
        L.hw = L.ws;
        L.hp = hp_(w);
        L.hpp = hpp_(w);
        const double ahp = std::abs(L.hp);
        if (ahp < 1e-300)
            throw SingularPointError("state: h' vanishes at w = " + detail::complex_str(w));
        const double p = L.hp.real(), q = L.hp.imag();
        L.es_u = (p * L.star.e_u + q * L.star.e_v) / ahp;
        L.es_v = (-q * L.star.e_u + p * L.star.e_v) / ahp;
        L.s = L.src.s;
        L.sh = L.star.s;
        L.j = (std::abs(Fsw) / std::abs(Fw)) * ahp * L.sh / L.s;
        L.logF_d = source_.weierstrass_fn_derivative()(w) / Fw;
        L.logFs_d = target_.weierstrass_fn_derivative()(L.ws) / Fsw * L.hp;
        L.R = L.es_u * L.src.e_u.transpose() + L.es_v * L.src.e_v.transpose() +
              L.star.nu * L.src.nu.transpose();
        L.V = L.j * (Matrix3d::Identity() - L.star.nu * L.star.nu.transpose());
        return L;
    }

    DeformationState state_at(Complex w) const {
        const auto L = local_state(w);
        DeformationState st;
        st.w = w;
        st.w_star = L.ws;
        st.frame = source_.frame_at(w);
        st.star_e_u = L.es_u;
        st.star_e_v = L.es_v;
        st.star_e_ustar = L.star.e_u;
        st.star_e_vstar = L.star.e_v;
        st.nu_star = L.star.nu;
        st.grad_y = L.j * (L.es_u * L.src.e_u.transpose() + L.es_v * L.src.e_v.transpose());
        st.R = L.R;
        st.U = L.j * (Matrix3d::Identity() - L.src.nu * L.src.nu.transpose());
        st.V = L.V;
        st.stretch_ratio = L.j;
        return st;
    }

    /// K*(h(w)) / K(w) per the closed form; agrees with curvature_at on the
    /// two surfaces.
    double curvature_ratio(Complex w) const {
        const auto L = local_state(w);
        const double dphi = L.star.phi - L.src.phi;
        const double ratio = L.s / L.sh;
        return std::exp(-2.0 * dphi) * ratio * ratio * ratio * ratio;
    }

    /// y(r(w)): the deformed position, integrated in the source chart (the
    /// pulled-back integrand is regular even across poles of h).
    Vector3d deformed_position_at(Complex w) const {
        source_.require_in_domain(w);
        return deformed_position_along(plan_path(source_.domain(), source_.basepoint(), w));
    }

    Vector3d deformed_position_along(const Path& source_path) const {
        const HolomorphicFn& h = h_;
        const HolomorphicFn& hp = hp_;
        const HolomorphicFn& Fs = target_.weierstrass_fn();
        auto integrand = [&](Complex z) -> std::array<Complex, 3> {
            const Complex hz = h(z);
            const Complex g = Fs(hz) * hp(z);  // F*(h) h'
            return {0.5 * (1.0 - hz * hz) * g, Complex(0, 0.5) * (1.0 + hz * hz) * g, hz * g};
        };
        const auto ints = integrate_path<3>(source_path, integrand);
        return target_.translation() + Vector3d(ints[0].real(), ints[1].real(), ints[2].real());
    }

  private:
    WeierstrassSurface source_, target_;
    HolomorphicFn h_, hp_, hpp_;
};

}  // namespace minmodes
