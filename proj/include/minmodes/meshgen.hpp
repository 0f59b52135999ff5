#pragma once

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include "minmodes/energetics.hpp"

namespace minmodes {

/// Shortest decimal representation that round-trips at 9 significant digits;
/// fixed formatting keeps exports byte-identical across runs.
inline std::string format_float(double v) {
    if (v == 0.0) return "0";  // normalizes -0
    char ref[64];
    std::snprintf(ref, sizeof(ref), "%.9g", v);
    const double target = std::strtod(ref, nullptr);
    for (int p = 1; p <= 9; ++p) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.*g", p, v);
        if (std::strtod(buf, nullptr) == target) return buf;
    }
    return ref;
}

struct SampledVertex {
    Complex w;
    double t0 = 0.0, t1 = 0.0;  // grid parameters: (log rho, theta) or (u, v)
    Vector3d position = Vector3d::Zero();
    Vector3d normal = Vector3d::Zero();
    double K = 0.0;
    double Ws = 0.0, Wd = 0.0, Wb = 0.0;
    bool excluded = false;
    bool near_singular = false;  // |w| < 1e-3 flag for densities that may diverge there
};

struct SampledSurface {
    std::vector<SampledVertex> vertices;  // row-major: index = i0 * grid_n1 + i1
    std::vector<std::array<int, 4>> faces;  // quads over included vertices
    int grid_n0 = 0, grid_n1 = 0;
    bool has_fields = false;
};

/// Sampling grid. For annuli the samples run over (log rho, theta): n0 radial
/// samples inclusive of both radii, n1 angular samples over [theta_min,
/// theta_max) half-open; theta beyond 2*pi is allowed (multivalued branches).
/// For disks and rectangles: an (n0 x n1) lattice over the parameter box,
/// inclusive, with samples outside the domain excluded.
struct GridSpec {
    int n0 = 32, n1 = 64;
    double theta_min = 0.0;
    double theta_max = 2.0 * M_PI;
};

enum class PairGeometry { source, target };

namespace detail {

struct GridPoint {
    Complex w;
    double t0, t1;
    bool annulus_mode;
};

inline std::vector<GridPoint> make_grid(const DomainSpec& domain, const GridSpec& grid) {
    if (grid.n0 < 2 || grid.n1 < 2) throw InvalidParamsError("grid dims must be >= 2");
    std::vector<GridPoint> pts;
    pts.reserve(static_cast<size_t>(grid.n0) * grid.n1);
    if (domain.kind() == DomainSpec::Kind::transformed) {
        // grid in the base chart, pushed through the map; paths are planned in
        // the image domain (plan_path pulls them back), so no polar shortcut
        pts = make_grid(domain.base(), grid);
        for (auto& gp : pts) {
            gp.annulus_mode = false;
            try {
                gp.w = domain.map()(gp.w);
            } catch (const SingularPointError&) {
                gp.w = Complex(std::numeric_limits<double>::quiet_NaN(), 0.0);
            }
        }
        return pts;
    }
    const DomainSpec& geom = domain;
    if (geom.kind() == DomainSpec::Kind::annulus) {
        const double l0 = std::log(geom.annulus_r_min());
        const double l1 = std::log(geom.annulus_r_max());
        for (int i = 0; i < grid.n0; ++i) {
            const double lr = l0 + (l1 - l0) * i / (grid.n0 - 1);
            for (int j = 0; j < grid.n1; ++j) {
                const double th =
                    grid.theta_min + (grid.theta_max - grid.theta_min) * j / grid.n1;
                pts.push_back({std::polar(std::exp(lr), th), lr, th, true});
            }
        }
    } else {
        double u0, u1, v0, v1;
        if (geom.kind() == DomainSpec::Kind::disk) {
            u0 = v0 = -geom.disk_radius();
            u1 = v1 = geom.disk_radius();
        } else {
            u0 = geom.rect_u_min();
            u1 = geom.rect_u_max();
            v0 = geom.rect_v_min();
            v1 = geom.rect_v_max();
        }
        for (int i = 0; i < grid.n0; ++i) {
            const double u = u0 + (u1 - u0) * i / (grid.n0 - 1);
            for (int j = 0; j < grid.n1; ++j) {
                const double v = v0 + (v1 - v0) * j / (grid.n1 - 1);
                pts.push_back({Complex(u, v), u, v, false});
            }
        }
    }
    return pts;
}

inline void build_faces(SampledSurface& s) {
    for (int i = 0; i + 1 < s.grid_n0; ++i)
        for (int j = 0; j + 1 < s.grid_n1; ++j) {
            const int a = i * s.grid_n1 + j;
            const int b = i * s.grid_n1 + (j + 1);
            const int c = (i + 1) * s.grid_n1 + (j + 1);
            const int d = (i + 1) * s.grid_n1 + j;
            if (!s.vertices[a].excluded && !s.vertices[b].excluded && !s.vertices[c].excluded &&
                !s.vertices[d].excluded)
                s.faces.push_back({a, b, c, d});
        }
}

}  // namespace detail

/// Sample geometry (positions, normals, Gaussian curvature) of a surface.
/// Annulus positions integrate along the radial-then-angular path from the
/// basepoint's ray, so the branch of multivalued surfaces is continuous in
/// the grid's theta. A sampling domain other than the surface's own restricts
/// the grid to a sub-region.
inline SampledSurface sample(const WeierstrassSurface& surf, const GridSpec& grid,
                             const std::optional<DomainSpec>& sample_domain = std::nullopt) {
    SampledSurface out;
    out.grid_n0 = grid.n0;
    out.grid_n1 = grid.n1;
    out.has_fields = false;
    const DomainSpec& region = sample_domain ? *sample_domain : surf.domain();
    const auto pts = detail::make_grid(region, grid);
    out.vertices.reserve(pts.size());
    for (const auto& gp : pts) {
        SampledVertex v;
        v.w = gp.w;
        v.t0 = gp.t0;
        v.t1 = gp.t1;
        try {
            if (!region.contains(gp.w))
                throw DomainViolationError("sample: outside sampling region");
            const auto g = surf.frame_geometry(gp.w);
            v.normal = g.nu;
            v.K = g.gauss;
            const Path path = gp.annulus_mode
                                  ? annulus_polar_path(surf.basepoint(), std::abs(gp.w), gp.t1)
                                  : plan_path(surf.domain(), surf.basepoint(), gp.w);
            v.position = surf.position_along(path);
        } catch (const Error&) {
            v.excluded = true;
        }
        out.vertices.push_back(std::move(v));
    }
    detail::build_faces(out);
    return out;
}

/// Sample a deformation pair over the source grid. Geometry comes from the
/// requested side (target = the deformed surface y(r(w))); the energy fields
/// are the closed-form densities at w either way.
inline SampledSurface sample(const DeformationPair& pair, const GridSpec& grid,
                             PairGeometry geometry = PairGeometry::target,
                             const std::optional<DomainSpec>& sample_domain = std::nullopt) {
    SampledSurface out;
    out.grid_n0 = grid.n0;
    out.grid_n1 = grid.n1;
    out.has_fields = true;
    const WeierstrassSurface& src = pair.source();
    const DomainSpec& region = sample_domain ? *sample_domain : src.domain();
    const auto pts = detail::make_grid(region, grid);
    out.vertices.reserve(pts.size());
    for (const auto& gp : pts) {
        SampledVertex v;
        v.w = gp.w;
        v.t0 = gp.t0;
        v.t1 = gp.t1;
        v.near_singular = std::abs(gp.w) < 1e-3;
        try {
            if (!region.contains(gp.w))
                throw DomainViolationError("sample: outside sampling region");
            const Path path = gp.annulus_mode
                                  ? annulus_polar_path(src.basepoint(), std::abs(gp.w), gp.t1)
                                  : plan_path(src.domain(), src.basepoint(), gp.w);
            const auto L = pair.local_state(gp.w);
            if (geometry == PairGeometry::target) {
                v.position = pair.deformed_position_along(path);
                v.normal = L.star.nu;
                v.K = L.star.gauss;
            } else {
                v.position = src.position_along(path);
                v.normal = L.src.nu;
                v.K = L.src.gauss;
            }
            v.Ws = stretching_density(pair, gp.w);
            v.Wd = drilling_density(pair, gp.w);
            v.Wb = bending_density(pair, gp.w);
        } catch (const Error&) {
            v.excluded = true;
        }
        out.vertices.push_back(std::move(v));
    }
    detail::build_faces(out);
    return out;
}

namespace detail {

inline std::ofstream open_out(const std::string& path) {
    std::ofstream f(path, std::ios::binary);  // binary: byte-identical output
    if (!f) throw IoError("cannot open for writing: " + path);
    return f;
}

/// OBJ vertex indices are 1-based over the included vertices only.
inline std::vector<int> obj_index_map(const SampledSurface& s) {
    std::vector<int> map(s.vertices.size(), 0);
    int next = 1;
    for (size_t i = 0; i < s.vertices.size(); ++i)
        if (!s.vertices[i].excluded) map[i] = next++;
    return map;
}

}  // namespace detail

/// OBJ: v/vn/f records. Scalar fields go to the sidecar CSV (index keyed to
/// the OBJ vertex numbering).
inline void export_obj(const SampledSurface& s, const std::string& path) {
    auto f = detail::open_out(path);
    const auto map = detail::obj_index_map(s);
    for (const auto& v : s.vertices) {
        if (v.excluded) continue;
        f << "v " << format_float(v.position[0]) << " " << format_float(v.position[1]) << " "
          << format_float(v.position[2]) << "\n";
    }
    for (const auto& v : s.vertices) {
        if (v.excluded) continue;
        f << "vn " << format_float(v.normal[0]) << " " << format_float(v.normal[1]) << " "
          << format_float(v.normal[2]) << "\n";
    }
    for (const auto& q : s.faces) {
        f << "f";
        for (int k = 0; k < 4; ++k) {
            const int idx = map[q[k]];
            f << " " << idx << "//" << idx;
        }
        f << "\n";
    }
    if (!f) throw IoError("write failed: " + path);
}

/// Sidecar scalar fields: index,K,Ws,Wd,Wb with OBJ vertex indices.
inline void export_fields_csv(const SampledSurface& s, const std::string& path) {
    auto f = detail::open_out(path);
    const auto map = detail::obj_index_map(s);
    f << "index,K,Ws,Wd,Wb\n";
    for (size_t i = 0; i < s.vertices.size(); ++i) {
        const auto& v = s.vertices[i];
        if (v.excluded) continue;
        f << map[i] << "," << format_float(v.K) << "," << format_float(v.Ws) << ","
          << format_float(v.Wd) << "," << format_float(v.Wb) << "\n";
    }
    if (!f) throw IoError("write failed: " + path);
}

/// PLY (ascii) with the scalar fields as custom vertex properties.
inline void export_ply(const SampledSurface& s, const std::string& path) {
    auto f = detail::open_out(path);
    const auto map = detail::obj_index_map(s);
    int n_vertices = 0;
    for (const auto& v : s.vertices)
        if (!v.excluded) ++n_vertices;
    f << "ply\nformat ascii 1.0\n";
    f << "element vertex " << n_vertices << "\n";
    for (const char* p : {"x", "y", "z", "nx", "ny", "nz", "K", "Ws", "Wd", "Wb"})
        f << "property double " << p << "\n";
    f << "element face " << s.faces.size() << "\n";
    f << "property list uchar int vertex_indices\n";
    f << "end_header\n";
    for (const auto& v : s.vertices) {
        if (v.excluded) continue;
        f << format_float(v.position[0]) << " " << format_float(v.position[1]) << " "
          << format_float(v.position[2]) << " " << format_float(v.normal[0]) << " "
          << format_float(v.normal[1]) << " " << format_float(v.normal[2]) << " "
          << format_float(v.K) << " " << format_float(v.Ws) << " " << format_float(v.Wd) << " "
          << format_float(v.Wb) << "\n";
    }
    for (const auto& q : s.faces) {
        f << "4";
        for (int k = 0; k < 4; ++k) f << " " << (map[q[k]] - 1);  // PLY is 0-based
        f << "\n";
    }
    if (!f) throw IoError("write failed: " + path);
}

}  // namespace minmodes
