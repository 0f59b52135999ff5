#pragma once

#include <array>
#include <cmath>
#include <functional>

#include "minmodes/path.hpp"

namespace minmodes {

namespace detail {

// Gauss-Kronrod 15 on [-1,1] (nonnegative abscissae; rule is symmetric) with
// the embedded Gauss-7 weights for the error estimate.
inline constexpr int kGkHalf = 8;
inline constexpr double kGkNode[kGkHalf] = {
    0.0,
    0.207784955007898468,
    0.405845151377397167,
    0.586087235467691130,
    0.741531185599394440,
    0.864864423359769073,
    0.949107912342758525,
    0.991455371120812639,
};
inline constexpr double kGkWeight[kGkHalf] = {
    0.209482141084727828,
    0.204432940075298892,
    0.190350578064785410,
    0.169004726639267903,
    0.140653259715525919,
    0.104790010322250184,
    0.063092092629978553,
    0.022935322010529225,
};
// Gauss-7 weights for nodes kGkNode[0], [2], [4], [6] (the even slots).
inline constexpr double kGaussWeight[4] = {
    0.417959183673469388,
    0.381830050505118945,
    0.279705391489276668,
    0.129484966168869693,
};

template <std::size_t N>
struct GkPanel {
    std::array<Complex, N> value{};
    double error = 0.0;
};

template <std::size_t N, typename F>
GkPanel<N> gk15_panel(const CurveSegment& seg, const F& f, double t0, double t1) {
    const double half = 0.5 * (t1 - t0);
    const double mid = 0.5 * (t0 + t1);
    std::array<Complex, N> kronrod{}, gauss{};
    for (int i = 0; i < kGkHalf; ++i) {
        const double x = kGkNode[i];
        const int reps = (i == 0) ? 1 : 2;
        for (int r = 0; r < reps; ++r) {
            const double t = mid + (r == 0 ? x : -x) * half;
            std::array<Complex, N> fv = f(seg.point(t));
            const Complex vel = seg.velocity(t);
            for (std::size_t k = 0; k < N; ++k) {
                const Complex term = fv[k] * vel;
                kronrod[k] += kGkWeight[i] * term;
                if (i % 2 == 0) gauss[k] += kGaussWeight[i / 2] * term;
            }
        }
    }
    GkPanel<N> out;
    double err = 0.0;
    for (std::size_t k = 0; k < N; ++k) {
        out.value[k] = kronrod[k] * half;
        err += std::abs((kronrod[k] - gauss[k]) * half);
    }
    out.error = err;
    return out;
}

template <std::size_t N, typename F>
std::array<Complex, N> gk15_adaptive(const CurveSegment& seg, const F& f, double t0, double t1,
                                     double tol, int depth) {
    GkPanel<N> panel = gk15_panel<N>(seg, f, t0, t1);
    if (panel.error <= tol || depth >= 48) return panel.value;
    const double mid = 0.5 * (t0 + t1);
    std::array<Complex, N> left = gk15_adaptive<N>(seg, f, t0, mid, 0.5 * tol, depth + 1);
    std::array<Complex, N> right = gk15_adaptive<N>(seg, f, mid, t1, 0.5 * tol, depth + 1);
    for (std::size_t k = 0; k < N; ++k) left[k] += right[k];
    return left;
}

}  // namespace detail

/// Absolute quadrature tolerance per path segment.
constexpr double kQuadTol = 1e-10;

/// Adaptive Gauss-Kronrod 15 with bisection of f(z) dz along a path, for N
/// complex integrands evaluated together.
template <std::size_t N, typename F>
std::array<Complex, N> integrate_path(const Path& path, const F& f, double tol = kQuadTol) {
    std::array<Complex, N> total{};
    for (const auto& seg : path) {
        std::array<Complex, N> part = detail::gk15_adaptive<N>(seg, f, 0.0, 1.0, tol, 0);
        for (std::size_t k = 0; k < N; ++k) total[k] += part[k];
    }
    return total;
}

/// Continue arg(f) from the start to the end of the path; returns the total
/// increment. Steps are refined until each contributes less than pi/2, which
/// keeps the branch unambiguous. Throws ZeroCrossingError when f vanishes on
/// (or too close to) the path.
inline double continue_arg_along(const HolomorphicFn& f, const Path& path) {
    double total = 0.0;
    for (const auto& seg : path) {
        struct Frame {
            double t0, t1;
            Complex f0, f1;
            int depth;
        };
        std::vector<Frame> stack;
        Complex f0 = f(seg.point(0.0));
        Complex f1 = f(seg.point(1.0));
        stack.push_back({0.0, 1.0, f0, f1, 0});
        while (!stack.empty()) {
            Frame fr = stack.back();
            stack.pop_back();
            if (std::abs(fr.f0) < 1e-300 || std::abs(fr.f1) < 1e-300)
                throw ZeroCrossingError("continue_arg_along: function vanishes on path");
            const double dphi = std::arg(fr.f1 / fr.f0);
            if (std::abs(dphi) < M_PI / 2.0 && fr.depth >= 4) {
                total += dphi;
                continue;
            }
            if (fr.depth >= 48)
                throw ZeroCrossingError(
                    "continue_arg_along: cannot resolve branch (zero on or near path)");
            const double tm = 0.5 * (fr.t0 + fr.t1);
            const Complex fm = f(seg.point(tm));
            // Process left before right: push right first.
            stack.push_back({tm, fr.t1, fm, fr.f1, fr.depth + 1});
            stack.push_back({fr.t0, tm, fr.f0, fm, fr.depth + 1});
        }
    }
    return total;
}

}  // namespace minmodes
