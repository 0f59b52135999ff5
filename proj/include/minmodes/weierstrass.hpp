#pragma once

#include <Eigen/Dense>
#include <optional>

#include "minmodes/quadrature.hpp"

namespace minmodes {

using Eigen::Matrix2d;
using Eigen::Matrix3d;
using Eigen::Vector3d;

/// F = exp(Phi + i*chi); chi is continued along a path from a branch anchor.
struct LogDecomposition {
    double phi = 0.0;
    double chi = 0.0;
};

/// Pointwise frame data of a Weierstrass surface at parameter w.
struct SurfaceFrame {
    Complex w;
    Vector3d r;
    Vector3d e_u, e_v, nu;
    double metric_factor = 0.0;  // |r_,u| = |r_,v| = (1/2) e^Phi (1+|w|^2)
    double phi = 0.0;
    double chi = 0.0;
};

/// Curvature tensor restricted to the (e_u, e_v) tangent basis.
struct CurvatureState {
    Matrix2d shape_operator;
    double mean = 0.0;   // (1/2) tr, zero for minimal surfaces
    double gauss = 0.0;  // det
};

namespace detail {

/// Frame quantities that need only the value of F at w. The tangent frame and
/// normal depend on chi only through cos/sin, so no branch tracking is needed,
/// and e^Phi cancels from the unit vectors (safe for large |w|).
struct FrameGeometry {
    Vector3d e_u, e_v, nu;
    double s = 0.0;  // 1 + |w|^2
    double phi = 0.0;
    double cos_chi = 0.0, sin_chi = 0.0;
    double metric = 0.0;
    double gauss = 0.0;
};

inline FrameGeometry frame_geometry(Complex Fw, Complex w) {
    const double mod = std::abs(Fw);
    if (!(mod > 0.0) || !std::isfinite(mod))
        throw ZeroCrossingError("frame: Weierstrass function vanishes or is not finite at w = " +
                                complex_str(w));
    FrameGeometry g;
    const double u = w.real(), v = w.imag();
    g.s = 1.0 + std::norm(w);
    g.phi = std::log(mod);
    g.cos_chi = Fw.real() / mod;
    g.sin_chi = Fw.imag() / mod;
    const double c = g.cos_chi, sn = g.sin_chi;
    g.e_u = (2.0 / g.s) *
            Vector3d(u * v * sn + 0.5 * (1.0 - u * u + v * v) * c,
                     -(u * v * c + 0.5 * (1.0 + u * u - v * v) * sn), u * c - v * sn);
    g.e_v = (2.0 / g.s) *
            Vector3d(u * v * c - 0.5 * (1.0 - u * u + v * v) * sn,
                     u * v * sn - 0.5 * (1.0 + u * u - v * v) * c, -(u * sn + v * c));
    g.nu = (1.0 / g.s) * Vector3d(2.0 * u, 2.0 * v, std::norm(w) - 1.0);
    g.metric = 0.5 * std::exp(g.phi) * g.s;
    const double k0 = 4.0 * std::exp(-g.phi) / (g.s * g.s);
    g.gauss = -k0 * k0;
    return g;
}

}  // namespace detail

/// Minimal surface represented by a Weierstrass function F over a planar
/// domain, fixed to within a translation by the basepoint (where the position
/// integral starts) and an explicit translation vector.
class WeierstrassSurface {
  public:
    WeierstrassSurface(HolomorphicFn F, DomainSpec domain,
                       std::optional<Complex> basepoint = std::nullopt,
                       Vector3d translation = Vector3d::Zero())
        : F_(std::move(F)),
          Fp_(F_.derivative()),
          domain_(std::move(domain)),
          basepoint_(basepoint ? *basepoint : domain_.default_basepoint()),
          translation_(std::move(translation)) {
        if (!domain_.contains(basepoint_))
            throw DomainViolationError("surface: basepoint outside domain");
        const Complex Fb = F_(basepoint_);
        if (!is_finite(Fb) || std::abs(Fb) == 0.0)
            throw ZeroCrossingError("surface: F vanishes at the basepoint (chi anchor)");
        for (Complex w : domain_.probe_points(128)) {
            const Complex Fw = F_(w);
            if (!is_finite(Fw) || std::abs(Fw) == 0.0)
                throw ZeroCrossingError("surface: F vanishes or blows up at probe w = " +
                                        detail::complex_str(w));
        }
    }

    const HolomorphicFn& weierstrass_fn() const { return F_; }
    const HolomorphicFn& weierstrass_fn_derivative() const { return Fp_; }
    const DomainSpec& domain() const { return domain_; }
    Complex basepoint() const { return basepoint_; }
    const Vector3d& translation() const { return translation_; }

    void require_in_domain(Complex w) const {
        if (domain_.in_exclusion(w))
            throw SingularPointError("surface: w = " + detail::complex_str(w) +
                                     " is inside an exclusion radius");
        if (!domain_.contains(w))
            throw DomainViolationError("surface: w = " + detail::complex_str(w) +
                                       " outside domain");
    }

    detail::FrameGeometry frame_geometry(Complex w) const {
        require_in_domain(w);
        return detail::frame_geometry(F_(w), w);
    }

    SurfaceFrame frame_at(Complex w) const {
        const auto g = frame_geometry(w);
        SurfaceFrame f;
        f.w = w;
        f.r = position_at(w);
        f.e_u = g.e_u;
        f.e_v = g.e_v;
        f.nu = g.nu;
        f.metric_factor = g.metric;
        f.phi = g.phi;
        f.chi = log_weierstrass_at(w).chi;
        return f;
    }

    /// Real parts of the three Weierstrass path integrals from the basepoint,
    /// along the domain's canonical path, plus the translation.
    Vector3d position_at(Complex w) const {
        require_in_domain(w);
        return position_along(plan_path(domain_, basepoint_, w));
    }

    /// Same, along an explicit path starting at the basepoint.
    Vector3d position_along(const Path& path) const {
        const HolomorphicFn& F = F_;
        auto integrand = [&F](Complex z) -> std::array<Complex, 3> {
            const Complex Fz = F(z);
            return {0.5 * (1.0 - z * z) * Fz, Complex(0, 0.5) * (1.0 + z * z) * Fz, z * Fz};
        };
        const auto ints = integrate_path<3>(path, integrand);
        return translation_ + Vector3d(ints[0].real(), ints[1].real(), ints[2].real());
    }

    CurvatureState curvature_at(Complex w) const {
        const auto g = frame_geometry(w);
        const double k0 = 4.0 * std::exp(-g.phi) / (g.s * g.s);
        CurvatureState cs;
        cs.shape_operator << k0 * g.cos_chi, -k0 * g.sin_chi, -k0 * g.sin_chi, -k0 * g.cos_chi;
        cs.mean = 0.5 * cs.shape_operator.trace();
        cs.gauss = cs.shape_operator.determinant();
        return cs;
    }

    double gauss_curvature(Complex w) const { return frame_geometry(w).gauss; }

    /// (Phi, chi) with chi continued from the principal value at the basepoint
    /// along the canonical path.
    LogDecomposition log_weierstrass_at(Complex w) const {
        require_in_domain(w);
        LogDecomposition out;
        out.phi = std::log(std::abs(F_(w)));
        out.chi = std::arg(F_(basepoint_)) + continue_arg_along(F_, plan_path(domain_, basepoint_, w));
        return out;
    }

  private:
    HolomorphicFn F_, Fp_;
    DomainSpec domain_;
    Complex basepoint_;
    Vector3d translation_;
};

/// arg-tracked log of an arbitrary holomorphic function. The path runs from
/// branch_anchor to w inside `domain` (staircase for disk/rectangle, radial
/// then angular for annuli); chi at the anchor is the principal value.
inline LogDecomposition log_decompose(const HolomorphicFn& f, Complex w, Complex branch_anchor,
                                      const DomainSpec& domain) {
    const Complex fw = f(w);
    if (std::abs(fw) == 0.0)
        throw ZeroCrossingError("log_decompose: f vanishes at w");
    LogDecomposition out;
    out.phi = std::log(std::abs(fw));
    out.chi = std::arg(f(branch_anchor)) + continue_arg_along(f, plan_path(domain, branch_anchor, w));
    return out;
}

/// Same along an explicit path (must start at the anchor and end at w).
inline LogDecomposition log_decompose_along(const HolomorphicFn& f, const Path& path) {
    if (path.empty()) throw InvalidParamsError("log_decompose_along: empty path");
    const Complex start = path.front().point(0.0);
    const Complex end = path.back().point(1.0);
    LogDecomposition out;
    out.phi = std::log(std::abs(f(end)));
    out.chi = std::arg(f(start)) + continue_arg_along(f, path);
    return out;
}

}  // namespace minmodes
