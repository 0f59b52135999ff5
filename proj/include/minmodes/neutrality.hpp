#pragma once

#include <span>
#include <vector>

#include "minmodes/energetics.hpp"

namespace minmodes {

enum class DeformationClass { isometry, drilling_neutral, bending_neutral, generic };

inline const char* to_string(DeformationClass c) {
    switch (c) {
        case DeformationClass::isometry: return "isometry";
        case DeformationClass::drilling_neutral: return "drilling_neutral";
        case DeformationClass::bending_neutral: return "bending_neutral";
        case DeformationClass::generic: return "generic";
    }
    return "?";
}

/// Sup-norm residuals of the three neutrality conditions over a probe set,
/// plus the resulting class. The hierarchy isometry => drilling-neutral =>
/// bending-neutral is enforced: a pair that passes a stronger condition but
/// fails a weaker one is an internal error.
struct NeutralityReport {
    double bending_residual = 0.0;    // sup | |h'| - (1+|h|^2)/(1+|w|^2) |
    double drilling_residual = 0.0;   // sup |(D_u, D_v)|
    double stretching_residual = 0.0; // sup |stretch_ratio - 1|
    DeformationClass classification = DeformationClass::generic;
};

constexpr double kNeutralTol = 1e-9;

/// sup over probes of | |h'(w)| - (1+|h(w)|^2)/(1+|w|^2) |: zero iff h is a
/// neutral (locally area preserving) map on the probes.
inline double bending_neutral_residual(const HolomorphicFn& h, std::span<const Complex> probes) {
    const HolomorphicFn hp = h.derivative();
    double sup = 0.0;
    for (Complex w : probes) {
        const Complex hw = h(w);
        const double res =
            std::abs(std::abs(hp(w)) - (1.0 + std::norm(hw)) / (1.0 + std::norm(w)));
        sup = std::max(sup, res);
    }
    return sup;
}

/// sup over probes of the Euclidean norm of the two drilling-neutrality
/// defects (the bracketed terms of the drilling density).
inline double drilling_neutral_residual(const DeformationPair& pair,
                                        std::span<const Complex> probes) {
    double sup = 0.0;
    for (Complex w : probes) {
        const auto [Du, Dv] = detail::drilling_defects(pair.local_state(w));
        sup = std::max(sup, std::hypot(Du, Dv));
    }
    return sup;
}

inline double stretching_residual(const DeformationPair& pair, std::span<const Complex> probes) {
    double sup = 0.0;
    for (Complex w : probes)
        sup = std::max(sup, std::abs(pair.local_state(w).j - 1.0));
    return sup;
}

inline NeutralityReport classify(const DeformationPair& pair, std::span<const Complex> probes,
                                 double tol_neutral = kNeutralTol) {
    NeutralityReport rep;
    std::vector<Complex> pv(probes.begin(), probes.end());
    rep.bending_residual = bending_neutral_residual(pair.conformal_map(), pv);
    rep.drilling_residual = drilling_neutral_residual(pair, pv);
    rep.stretching_residual = stretching_residual(pair, pv);
    const bool s_ok = rep.stretching_residual <= tol_neutral;
    const bool d_ok = rep.drilling_residual <= tol_neutral;
    const bool b_ok = rep.bending_residual <= tol_neutral;
    if (s_ok) {
        if (rep.drilling_residual > 10.0 * tol_neutral || rep.bending_residual > 10.0 * tol_neutral)
            throw Error("classify: hierarchy violated (stretching-neutral pair with active "
                        "drilling or bending)");
        rep.classification = DeformationClass::isometry;
    } else if (d_ok && b_ok) {
        rep.classification = DeformationClass::drilling_neutral;
    } else if (b_ok) {
        rep.classification = DeformationClass::bending_neutral;
    } else {
        rep.classification = DeformationClass::generic;
    }
    return rep;
}

inline NeutralityReport classify(const DeformationPair& pair, int n_probes = 200,
                                 double tol_neutral = kNeutralTol) {
    return classify(pair, pair.source().domain().probe_points(n_probes), tol_neutral);
}

namespace detail {

/// F* = g e^{i alpha0} F / h'^2, composed with h^{-1} so that it is a function
/// of w*; the target domain is h(Omega). A pole of h inside Omega is excluded
/// from the source domain (the deformation is undefined there).
inline DeformationPair build_family_pair(const HolomorphicFn& F, const DomainSpec& domain,
                                         const Mobius& h, const HolomorphicFn& g,
                                         double alpha0) {
    const HolomorphicFn hfn = HolomorphicFn::mobius(h);
    const HolomorphicFn hp = hfn.derivative();
    const HolomorphicFn hinv = HolomorphicFn::mobius(h.inverse());
    const Complex phase = std::polar(1.0, alpha0);
    const HolomorphicFn numer = HolomorphicFn::scaled(
        phase, HolomorphicFn::product(g, F));
    const HolomorphicFn Fstar_of_w = HolomorphicFn::quotient(numer, HolomorphicFn::power(hp, 2));
    const HolomorphicFn Fstar = HolomorphicFn::compose(Fstar_of_w, hinv);

    DomainSpec source_domain = domain;
    if (h.has_finite_pole() && domain.contains_geometric(h.pole()))
        source_domain = domain.with_exclusion(h.pole(), 1e-8);

    const bool is_id = h.approx_equal(Mobius::identity());
    DomainSpec target_domain =
        is_id ? source_domain : DomainSpec::transformed(source_domain, h);

    WeierstrassSurface source(F, source_domain);
    // Anchor the target where |h| is moderate.
    Complex tgt_base(0.0);
    bool have_base = false;
    try {
        tgt_base = h(source.basepoint());
        have_base = is_finite(tgt_base) && std::abs(tgt_base) <= 1e6;
    } catch (const SingularPointError&) {
    }
    if (!have_base) {
        double best = std::numeric_limits<double>::infinity();
        for (Complex w : source_domain.probe_points(64)) {
            const Complex z = h(w);
            if (std::abs(z) < best && target_domain.contains(z)) {
                best = std::abs(z);
                tgt_base = z;
                have_base = true;
            }
        }
        if (!have_base)
            throw InvalidParamsError("family pair: no usable target basepoint");
    }
    WeierstrassSurface target(Fstar, target_domain, tgt_base);
    return DeformationPair(std::move(source), std::move(target), hfn);
}

}  // namespace detail

/// Bonnet family F* = e^{i alpha0} F / h'^2 with a neutral h (default the
/// identity): an isometry for every alpha0.
inline DeformationPair make_bonnet(const HolomorphicFn& F, const DomainSpec& domain, double alpha0,
                                   const Mobius& h = Mobius::identity(),
                                   double tol_neutral = kNeutralTol) {
    const auto probes = domain.probe_points(128);
    const double res = bending_neutral_residual(HolomorphicFn::mobius(h), probes);
    if (res > tol_neutral)
        throw NotNeutralError("make_bonnet: h is not neutral (residual " + std::to_string(res) +
                              ")");
    return detail::build_family_pair(F, domain, h, HolomorphicFn::constant(1.0), alpha0);
}

/// Drilling-neutral family F* = lambda e^{i alpha0} F / h'^2, lambda > 0
/// constant; an isometry exactly when lambda = 1.
inline DeformationPair make_drilling_neutral(const HolomorphicFn& F, const DomainSpec& domain,
                                             const Mobius& h, double lambda, double alpha0,
                                             double tol_neutral = kNeutralTol) {
    if (!(lambda > 0.0)) throw InvalidParamsError("make_drilling_neutral: lambda must be > 0");
    const auto probes = domain.probe_points(128);
    const double res = bending_neutral_residual(HolomorphicFn::mobius(h), probes);
    if (res > tol_neutral)
        throw NotNeutralError("make_drilling_neutral: h is not neutral (residual " +
                              std::to_string(res) + ")");
    return detail::build_family_pair(F, domain, h, HolomorphicFn::constant(lambda), alpha0);
}

/// Bending-neutral family F* = lambda e^{i beta} F / h'^2 with lambda = |g|,
/// beta = arg g for a user-supplied holomorphic g: holomorphy of F* comes for
/// free, and beta is harmonic by construction (still checked). The drilling
/// density is then -K (1+|w|^2)^2 |grad beta|^2.
inline DeformationPair make_bending_neutral(const HolomorphicFn& F, const DomainSpec& domain,
                                            const Mobius& h, const HolomorphicFn& g,
                                            double tol_neutral = kNeutralTol) {
    const auto probes = domain.probe_points(128);
    const double res = bending_neutral_residual(HolomorphicFn::mobius(h), probes);
    if (res > tol_neutral)
        throw NotNeutralError("make_bending_neutral: h is not neutral (residual " +
                              std::to_string(res) + ")");
    DeformationPair pair = detail::build_family_pair(F, domain, h, g, 0.0);
    // beta = arg g harmonic: FD Laplacian of the local argument.
    for (int i = 0; i < 16; ++i) {
        const Complex w = probes[i * probes.size() / 16];
        const double step = 1e-4 * std::max(1.0, std::abs(w));
        const Complex g0 = g(w);
        if (std::abs(g0) == 0.0)
            throw InvalidParamsError("make_bending_neutral: g vanishes at probe");
        auto beta_rel = [&](Complex z) { return std::arg(g(z) / g0); };
        const double lap = (beta_rel(w + step) + beta_rel(w - step) +
                            beta_rel(w + Complex(0, step)) + beta_rel(w - Complex(0, step))) /
                           (step * step);
        if (std::abs(lap) > 1e-4)
            throw InvalidParamsError("make_bending_neutral: beta is not harmonic at probe");
    }
    // Assembled F* must be holomorphic on the pullback probes.
    const HolomorphicFn& Fs = pair.target().weierstrass_fn();
    for (int i = 0; i < 16; ++i) {
        const Complex w = probes[i * probes.size() / 16];
        const Complex ws = pair.conformal_map()(w);
        const double res_cr = cauchy_riemann_residual(Fs, ws, fd_step(ws));
        const double scale = std::max(1.0, std::abs(Fs.derivative()(ws)));
        if (res_cr > kFdTol * scale)
            throw NotHolomorphicError("make_bending_neutral: assembled F* fails the "
                                      "Cauchy-Riemann check");
    }
    return pair;
}

/// Constant-field variant: lambda e^{i beta} supplied directly.
inline DeformationPair make_bending_neutral(const HolomorphicFn& F, const DomainSpec& domain,
                                            const Mobius& h, double lambda, double beta,
                                            double tol_neutral = kNeutralTol) {
    if (!(lambda > 0.0)) throw InvalidParamsError("make_bending_neutral: lambda must be > 0");
    return make_drilling_neutral(F, domain, h, lambda, beta, tol_neutral);
}

/// Goursat transformation F*(h(w)) = F(w)/h'(w)^2 for a Moebius h (no
/// neutrality required). The special Moebius maps give rigid rotations.
inline DeformationPair make_goursat(const HolomorphicFn& F, const DomainSpec& domain,
                                    const Mobius& h) {
    return detail::build_family_pair(F, domain, h, HolomorphicFn::constant(1.0), 0.0);
}

inline DeformationPair make_goursat_kappa(const HolomorphicFn& F, const DomainSpec& domain,
                                          double kappa) {
    if (kappa == 0.0) throw InvalidParamsError("make_goursat_kappa: kappa must be nonzero");
    return make_goursat(F, domain, Mobius::scaling(kappa));
}

/// Uniform dilation F* = lambda F, h = id.
inline DeformationPair make_dilation(const HolomorphicFn& F, const DomainSpec& domain,
                                     double lambda) {
    if (!(lambda > 0.0)) throw InvalidParamsError("make_dilation: lambda must be > 0");
    return detail::build_family_pair(F, domain, Mobius::identity(),
                                     HolomorphicFn::constant(lambda), 0.0);
}

struct AreaCheckResult {
    bool area_preserving = false;
    Mobius canonical;  // |a|^2+..+|d|^2 = 1 normalization of the input
};

/// Appendix-B characterization: after scaling to ad-bc = 1, the map preserves
/// spherical area iff d = conj(a) and b = -conj(c).
inline AreaCheckResult area_preserving_moebius_check(Complex a, Complex b, Complex c, Complex d,
                                                     double tol = 1e-12) {
    const Complex det = a * d - b * c;
    if (std::abs(det) == 0.0) throw DegenerateMoebiusError("area check: ad - bc = 0");
    const Complex mu = 1.0 / std::sqrt(det);
    const Complex an = mu * a, bn = mu * b, cn = mu * c, dn = mu * d;
    const double scale = std::max({1.0, std::abs(an), std::abs(bn), std::abs(cn), std::abs(dn)});
    AreaCheckResult out;
    out.canonical = Mobius(a, b, c, d);
    out.area_preserving = std::abs(dn - std::conj(an)) <= tol * scale &&
                          std::abs(bn + std::conj(cn)) <= tol * scale;
    return out;
}

/// Ratio of stereographic arc-length elements at w and h(w):
///   (2 |h'| |dw| / (1+|h|^2)) / (2 |dw| / (1+|w|^2));
/// equals 1 exactly when h is neutral at w.
inline double spherical_arc_ratio(const HolomorphicFn& h, Complex w, Complex dw) {
    if (std::abs(dw) == 0.0) throw InvalidParamsError("spherical_arc_ratio: dw must be nonzero");
    const Complex hw = h(w);
    const double hp = std::abs(h.derivative()(w));
    return hp * (1.0 + std::norm(w)) / (1.0 + std::norm(hw));
}

}  // namespace minmodes
