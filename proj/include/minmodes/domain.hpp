#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <vector>

#include "minmodes/holomorphic.hpp"

namespace minmodes {

struct ExcludedPoint {
    Complex center;
    double radius = 1e-8;
};

/// Planar parameter domain. The `transformed` kind is the Moebius image of a
/// base domain (membership decided through the inverse map); it is what the
/// Goursat-style constructions produce for Omega* = h(Omega).
class DomainSpec {
  public:
    enum class Kind { annulus, disk, rectangle, transformed };

    static DomainSpec annulus(double r_min, double r_max) {
        if (!(r_min > 0.0) || !(r_max > r_min))
            throw InvalidParamsError("annulus: need 0 < r_min < r_max");
        DomainSpec d;
        d.kind_ = Kind::annulus;
        d.p_ = {r_min, r_max, 0.0, 0.0};
        return d;
    }

    static DomainSpec disk(double radius) {
        if (!(radius > 0.0)) throw InvalidParamsError("disk: radius must be > 0");
        DomainSpec d;
        d.kind_ = Kind::disk;
        d.p_ = {radius, 0.0, 0.0, 0.0};
        return d;
    }

    static DomainSpec rectangle(double u_min, double u_max, double v_min, double v_max) {
        if (!(u_max > u_min) || !(v_max > v_min))
            throw InvalidParamsError("rectangle: empty range");
        DomainSpec d;
        d.kind_ = Kind::rectangle;
        d.p_ = {u_min, u_max, v_min, v_max};
        return d;
    }

    static DomainSpec transformed(DomainSpec base, const Mobius& map) {
        if (base.kind_ == Kind::transformed)
            throw InvalidParamsError("transformed: base must be a plain domain");
        DomainSpec d;
        d.kind_ = Kind::transformed;
        d.base_ = std::make_shared<DomainSpec>(std::move(base));
        d.map_ = map;
        return d;
    }

    Kind kind() const { return kind_; }
    const std::vector<ExcludedPoint>& exclusions() const { return exclusions_; }
    double annulus_r_min() const { return p_[0]; }
    double annulus_r_max() const { return p_[1]; }
    double disk_radius() const { return p_[0]; }
    double rect_u_min() const { return p_[0]; }
    double rect_u_max() const { return p_[1]; }
    double rect_v_min() const { return p_[2]; }
    double rect_v_max() const { return p_[3]; }
    const DomainSpec& base() const { return *base_; }
    const Mobius& map() const { return *map_; }

    DomainSpec with_exclusion(Complex center, double radius = 1e-8) const {
        if (!(radius > 0.0)) throw InvalidParamsError("exclusion radius must be > 0");
        DomainSpec d = *this;
        d.exclusions_.push_back({center, radius});
        return d;
    }

    bool in_exclusion(Complex w) const {
        for (const auto& e : exclusions_)
            if (std::abs(w - e.center) <= e.radius) return true;
        return false;
    }

    /// Membership including exclusions; boundaries are inclusive with a small
    /// relative slack so lattice points on the rim count as inside.
    bool contains(Complex w) const {
        if (!is_finite(w)) return false;
        if (in_exclusion(w)) return false;
        return contains_geometric(w);
    }

    bool contains_geometric(Complex w) const {
        constexpr double slack = 1e-12;
        switch (kind_) {
            case Kind::annulus: {
                const double r = std::abs(w);
                return r >= p_[0] * (1.0 - slack) && r <= p_[1] * (1.0 + slack);
            }
            case Kind::disk: return std::abs(w) <= p_[0] * (1.0 + slack);
            case Kind::rectangle: {
                const double su = slack * std::max(1.0, std::max(std::abs(p_[0]), std::abs(p_[1])));
                const double sv = slack * std::max(1.0, std::max(std::abs(p_[2]), std::abs(p_[3])));
                return w.real() >= p_[0] - su && w.real() <= p_[1] + su &&
                       w.imag() >= p_[2] - sv && w.imag() <= p_[3] + sv;
            }
            case Kind::transformed: {
                try {
                    return base_->contains_geometric(map_->inverse()(w));
                } catch (const SingularPointError&) {
                    return false;  // w is the image of infinity
                }
            }
        }
        return false;
    }

    Complex default_basepoint() const {
        Complex bp(std::numeric_limits<double>::quiet_NaN(), 0.0);
        switch (kind_) {
            case Kind::annulus: bp = std::sqrt(p_[0] * p_[1]); break;
            case Kind::disk: bp = 0.0; break;
            case Kind::rectangle: bp = Complex(0.5 * (p_[0] + p_[1]), 0.5 * (p_[2] + p_[3])); break;
            case Kind::transformed:
                try {
                    bp = (*map_)(base_->default_basepoint());
                } catch (const SingularPointError&) {
                    // base centre maps to infinity; fall through to probes
                }
                break;
        }
        if (is_finite(bp) && contains(bp)) return bp;
        for (Complex w : probe_points(64))
            if (contains(w)) return w;
        throw InvalidParamsError("domain: cannot pick a basepoint clear of exclusions");
    }

    /// Quasi-random (Halton 2,3) interior points, deterministic for fixed n and salt.
    std::vector<Complex> probe_points(int n, std::uint32_t salt = 0) const {
        std::vector<Complex> out;
        out.reserve(static_cast<size_t>(n));
        std::uint32_t i = 1 + salt * 7919u;
        int guard = 0;
        while (static_cast<int>(out.size()) < n && guard < 100000) {
            const double t0 = halton(i, 2);
            const double t1 = halton(i, 3);
            ++i;
            ++guard;
            Complex w = from_unit_square(t0, t1);
            if (contains(w)) out.push_back(w);
        }
        if (static_cast<int>(out.size()) < n)
            throw InvalidParamsError("domain: probe generation exhausted (domain mostly excluded?)");
        return out;
    }

    /// Regular lattice over the parameter rectangle, filtered to the domain.
    std::vector<Complex> lattice_points(int n0, int n1) const {
        std::vector<Complex> out;
        for (int i = 0; i < n0; ++i)
            for (int j = 0; j < n1; ++j) {
                const double t0 = (n0 == 1) ? 0.5 : (i + 0.5) / n0;
                const double t1 = (n1 == 1) ? 0.5 : (j + 0.5) / n1;
                Complex w = from_unit_square(t0, t1);
                if (contains(w)) out.push_back(w);
            }
        return out;
    }

  private:
    Kind kind_ = Kind::disk;
    std::array<double, 4> p_{1.0, 0.0, 0.0, 0.0};
    std::shared_ptr<DomainSpec> base_;
    std::optional<Mobius> map_;
    std::vector<ExcludedPoint> exclusions_;

    static double halton(std::uint32_t i, std::uint32_t base) {
        double f = 1.0, r = 0.0;
        while (i > 0) {
            f /= base;
            r += f * (i % base);
            i /= base;
        }
        return r;
    }

    Complex from_unit_square(double t0, double t1) const {
        switch (kind_) {
            case Kind::annulus: {
                const double lr = std::log(p_[0]) + t0 * (std::log(p_[1]) - std::log(p_[0]));
                const double th = 2.0 * M_PI * t1;
                return std::polar(std::exp(lr), th);
            }
            case Kind::disk: {
                const double r = p_[0] * std::sqrt(t0);
                return std::polar(r, 2.0 * M_PI * t1);
            }
            case Kind::rectangle:
                return Complex(p_[0] + t0 * (p_[1] - p_[0]), p_[2] + t1 * (p_[3] - p_[2]));
            case Kind::transformed: return (*map_)(base_->from_unit_square(t0, t1));
        }
        return Complex(0, 0);
    }
};

}  // namespace minmodes
