#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "minmodes/domain.hpp"

namespace minmodes {

/// Smooth parametrized curve segment, t in [0,1].
struct CurveSegment {
    std::function<Complex(double)> point;
    std::function<Complex(double)> velocity;
};

using Path = std::vector<CurveSegment>;

inline CurveSegment line_segment(Complex z0, Complex z1) {
    const Complex d = z1 - z0;
    return {[z0, d](double t) { return z0 + t * d; }, [d](double) { return d; }};
}

/// Circular arc about the origin at radius rho from theta0 to theta1.
inline CurveSegment arc_segment(double rho, double theta0, double theta1) {
    const double dth = theta1 - theta0;
    return {[rho, theta0, dth](double t) { return std::polar(rho, theta0 + t * dth); },
            [rho, theta0, dth](double t) {
                return Complex(0, 1) * std::polar(rho, theta0 + t * dth) * dth;
            }};
}

inline Path mobius_image(const Mobius& h, const Path& path) {
    Path out;
    out.reserve(path.size());
    for (const auto& seg : path) {
        out.push_back({[h, seg](double t) { return h(seg.point(t)); },
                       [h, seg](double t) {
                           return h.derivative_at(seg.point(t)) * seg.velocity(t);
                       }});
    }
    return out;
}

inline bool path_admissible(const DomainSpec& domain, const Path& path,
                            int samples_per_segment = 64) {
    for (const auto& seg : path)
        for (int i = 0; i <= samples_per_segment; ++i) {
            const double t = double(i) / samples_per_segment;
            if (!domain.contains(seg.point(t))) return false;
        }
    return true;
}

/// Annulus path from `from` to polar target (rho, theta): radially along the
/// ray of `from`, then along the arc to theta. theta is taken literally (it
/// may exceed 2*pi), which fixes the branch on multivalued surfaces.
inline Path annulus_polar_path(Complex from, double rho, double theta) {
    Path p;
    const double rho0 = std::abs(from);
    const double th0 = std::arg(from);
    if (rho != rho0) p.push_back(line_segment(from, std::polar(rho, th0)));
    if (theta != th0) p.push_back(arc_segment(rho, th0, theta));
    return p;
}

/// Deterministic path between two points of a domain.
///   annulus:    radial-then-angular with the principal angle difference
///   disk/rect:  axis-parallel staircase (H-then-V, else V-then-H), falling
///               back to the straight segment (convex domains)
///   transformed: plan in the base chart, map through h
inline Path plan_path(const DomainSpec& domain, Complex from, Complex to) {
    if (!domain.contains(from) || !domain.contains(to))
        throw PathBlockedError("plan_path: endpoint outside domain");
    if (from == to) return {};

    switch (domain.kind()) {
        case DomainSpec::Kind::annulus: {
            const double th0 = std::arg(from);
            double dth = std::arg(to) - th0;
            if (dth > M_PI) dth -= 2.0 * M_PI;
            if (dth <= -M_PI) dth += 2.0 * M_PI;
            Path p = annulus_polar_path(from, std::abs(to), th0 + dth);
            if (!path_admissible(domain, p)) throw PathBlockedError("plan_path: annulus path blocked");
            return p;
        }
        case DomainSpec::Kind::disk:
        case DomainSpec::Kind::rectangle: {
            const Complex corner_hv(to.real(), from.imag());
            Path hv{line_segment(from, corner_hv), line_segment(corner_hv, to)};
            if (path_admissible(domain, hv)) return hv;
            const Complex corner_vh(from.real(), to.imag());
            Path vh{line_segment(from, corner_vh), line_segment(corner_vh, to)};
            if (path_admissible(domain, vh)) return vh;
            Path direct{line_segment(from, to)};
            if (path_admissible(domain, direct)) return direct;
            throw PathBlockedError("plan_path: no admissible staircase or straight path");
        }
        case DomainSpec::Kind::transformed: {
            const Mobius inv = domain.map().inverse();
            Path base_path = plan_path(domain.base(), inv(from), inv(to));
            return mobius_image(domain.map(), base_path);
        }
    }
    throw PathBlockedError("plan_path: unknown domain kind");
}

}  // namespace minmodes
