#pragma once

#include <functional>
#include <string>

#include "minmodes/neutrality.hpp"

namespace minmodes {

/// The example domain used throughout: the annulus 1/e < |w| < e.
inline DomainSpec example_annulus() {
    return DomainSpec::annulus(std::exp(-1.0), std::exp(1.0));
}

inline HolomorphicFn enneper_fn() { return HolomorphicFn::constant(1.0); }       // F = 1
inline HolomorphicFn bour_m1_fn() { return HolomorphicFn::reciprocal(HolomorphicFn::identity()); }  // F = 1/w
inline HolomorphicFn bour_m3_fn() { return HolomorphicFn::identity(); }          // F = w

inline WeierstrassSurface enneper_surface(double radius = 1.5) {
    return WeierstrassSurface(enneper_fn(), DomainSpec::disk(radius));
}
inline WeierstrassSurface bour_m1_surface() {
    return WeierstrassSurface(bour_m1_fn(), example_annulus());
}
inline WeierstrassSurface bour_m3_surface() {
    return WeierstrassSurface(bour_m3_fn(), example_annulus());
}

/// Closed-form densities (W_s, W_d, W_b) for the Goursat kappa family on
/// Bour m=1, with K = -16|w|^2/(1+|w|^2)^4. Densities depend on |kappa| only;
/// the printed stretching formula holds for kappa > 0, so it is evaluated at
/// |kappa|.
inline std::array<double, 3> goursat_kappa_golden(double kappa, Complex w) {
    const double k = std::abs(kappa);
    const double r2 = std::norm(w);
    const double s = 1.0 + r2;
    const double K = -16.0 * r2 / (s * s * s * s);
    const double ws = 2.0 * std::pow(1.0 - 1.0 / k, 2) * std::pow((1.0 - k * r2) / s, 2);
    const double dk = 1.0 - k * k;
    const double den = 1.0 + k * k * r2;
    const double wd = -4.0 * K * dk * dk * r2 / (den * den);
    const double wb =
        16.0 * K * K * dk * dk * std::pow(1.0 - k * k * r2 * r2, 2) / (den * den * den * den);
    return {ws, wd, wb};
}

/// Closed-form densities for Enneper -> Bour m=3 with h = id:
/// W_s = 2(|w|-1)^2, W_d = 16/((1+|w|^2)^2 |w|^2), W_b = 0.
inline std::array<double, 3> enneper_bour3_golden(Complex w) {
    const double r = std::abs(w);
    const double s = 1.0 + r * r;
    return {2.0 * (r - 1.0) * (r - 1.0), 16.0 / (s * s * r * r), 0.0};
}

inline std::array<double, 3> dilation_golden(double lambda, Complex) {
    return {2.0 * (lambda - 1.0) * (lambda - 1.0), 0.0, 0.0};
}

struct CorpusEntry {
    std::string name;
    DeformationClass expected_class;
    DeformationPair pair;
    // golden closed-form densities when the example has them
    std::function<std::array<double, 3>(Complex)> golden;
};

/// Enneper -> Bour m=3 over the example annulus (F = 1, F* = w, h = id),
/// built through the bending-neutral construction with g = w.
inline DeformationPair enneper_to_bour3_pair() {
    return make_bending_neutral(enneper_fn(), example_annulus(), Mobius::identity(),
                                HolomorphicFn::identity());
}

inline DeformationPair goursat_kappa_pair(double kappa) {
    return make_goursat_kappa(bour_m1_fn(), example_annulus(), kappa);
}

/// Deformation pairs spanning the whole hierarchy; every verification suite
/// runs over these.
inline std::vector<CorpusEntry> registered_corpus() {
    std::vector<CorpusEntry> out;
    const DomainSpec ann = example_annulus();
    const HolomorphicFn one = enneper_fn();
    const HolomorphicFn inv_w = bour_m1_fn();
    auto zero_golden = [](Complex) { return std::array<double, 3>{0.0, 0.0, 0.0}; };

    out.push_back({"identity-enneper", DeformationClass::isometry,
                   make_bonnet(one, ann, 0.0), zero_golden});
    out.push_back({"bonnet-bour1-pi2", DeformationClass::isometry,
                   make_bonnet(inv_w, ann, M_PI / 2.0), zero_golden});
    out.push_back({"rotation-bour1-ai", DeformationClass::isometry,
                   make_bonnet(inv_w, ann, 0.0, Mobius::special(Complex(0, 1), -1.0)),
                   zero_golden});
    out.push_back({"soft-bour1-pi6", DeformationClass::isometry,
                   make_bonnet(inv_w, ann, M_PI / 6.0, Mobius::special(1.0, -1.0)), zero_golden});
    out.push_back({"soft-bour1-pi4", DeformationClass::isometry,
                   make_bonnet(inv_w, ann, M_PI / 4.0, Mobius::special(1.0, -1.0)), zero_golden});

    out.push_back({"dilation-enneper-2", DeformationClass::drilling_neutral,
                   make_dilation(one, ann, 2.0),
                   [](Complex w) { return dilation_golden(2.0, w); }});
    out.push_back({"dilation-bour1-half", DeformationClass::drilling_neutral,
                   make_dilation(inv_w, ann, 0.5),
                   [](Complex w) { return dilation_golden(0.5, w); }});
    out.push_back({"drilling-bour1-l3-special", DeformationClass::drilling_neutral,
                   make_drilling_neutral(inv_w, ann, Mobius::special(1.0, -1.0), 3.0, M_PI / 6.0),
                   nullptr});

    out.push_back({"enneper-bour3", DeformationClass::bending_neutral, enneper_to_bour3_pair(),
                   [](Complex w) { return enneper_bour3_golden(w); }});
    out.push_back({"bending-enneper-w2", DeformationClass::bending_neutral,
                   make_bending_neutral(one, ann, Mobius::identity(),
                                        HolomorphicFn::power(HolomorphicFn::identity(), 2)),
                   nullptr});
    out.push_back({"bending-bour1-special", DeformationClass::bending_neutral,
                   make_bending_neutral(inv_w, ann, Mobius::special(1.0, -1.0),
                                        HolomorphicFn::identity()),
                   nullptr});

    for (double kappa : {0.5, -1.5, 2.0}) {
        out.push_back({"goursat-kappa-" + std::to_string(kappa).substr(0, 4),
                       DeformationClass::generic, goursat_kappa_pair(kappa),
                       [kappa](Complex w) { return goursat_kappa_golden(kappa, w); }});
    }
    out.push_back({"goursat-shift-enneper", DeformationClass::generic,
                   make_goursat(one, ann, Mobius(1.0, 0.2, 0.0, 1.0)), nullptr});

    return out;
}

}  // namespace minmodes
