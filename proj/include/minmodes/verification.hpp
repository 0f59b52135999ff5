#pragma once

#include <random>

#include "minmodes/corpus.hpp"

namespace minmodes {

/// One verification suite outcome: the worst deviation seen, the tolerance it
/// was held to, and where the worst case occurred.
struct CheckResult {
    std::string name;
    double max_deviation = 0.0;
    double tolerance = 0.0;
    bool passed = false;
    std::string worst_case;

    static CheckResult from(std::string name, double dev, double tol, std::string worst) {
        return {std::move(name), dev, tol, dev <= tol, std::move(worst)};
    }
};

namespace detail {

/// Relative deviation with a magnitude floor: dev <= tol_rel is equivalent to
/// |a-b| <= max(tol_rel * floor_scale, tol_rel * max(|a|,|b|)), i.e.
/// floor_scale = tol_abs / tol_rel screens roundoff on near-zero quantities.
inline double rel_dev(double a, double b, double floor_scale = 1e-4) {
    const double scale = std::max({std::abs(a), std::abs(b), floor_scale});
    return std::abs(a - b) / scale;
}

struct WorstTracker {
    double dev = 0.0;
    std::string where;
    void update(double d, const std::string& w) {
        if (d > dev) {
            dev = d;
            where = w;
        }
    }
};

}  // namespace detail

/// Connector-route drilling/bending densities against the closed forms,
/// including the curvature-based bending route.
inline CheckResult check_route_agreement_analytic(const std::vector<CorpusEntry>& corpus,
                                                  double tol = 1e-8, int probes_per_pair = 50) {
    detail::WorstTracker worst;
    for (const auto& entry : corpus) {
        for (Complex w : entry.pair.source().domain().probe_points(probes_per_pair)) {
            const double wd_c = drilling_density(entry.pair, w, EnergyRoute::closed_form);
            const double wd_k = drilling_density(entry.pair, w, EnergyRoute::connector);
            const double wb_c = bending_density(entry.pair, w, EnergyRoute::closed_form);
            const double wb_k = bending_density(entry.pair, w, EnergyRoute::connector);
            const double wb_K = bending_density_curvature_route(entry.pair, w);
            worst.update(detail::rel_dev(wd_c, wd_k), entry.name + " W_d");
            worst.update(detail::rel_dev(wb_c, wb_k), entry.name + " W_b");
            worst.update(detail::rel_dev(wb_c, wb_K), entry.name + " W_b curvature");
        }
    }
    return CheckResult::from("route-agreement-analytic", worst.dev, tol, worst.where);
}

/// Finite-difference third-rank-tensor oracle against the closed forms.
inline CheckResult check_route_agreement_oracle(const std::vector<CorpusEntry>& corpus,
                                                double tol = 1e-4, int probes_per_pair = 50) {
    detail::WorstTracker worst;
    for (const auto& entry : corpus) {
        for (Complex w : entry.pair.source().domain().probe_points(probes_per_pair)) {
            const auto oracle = third_rank_oracle(entry.pair, w);
            // floor 1e-4: densities below 1e-8 absolute sit in FD noise
            worst.update(detail::rel_dev(oracle.w_d, drilling_density(entry.pair, w), 1e-4),
                         entry.name + " oracle W_d");
            worst.update(detail::rel_dev(oracle.w_b, bending_density(entry.pair, w), 1e-4),
                         entry.name + " oracle W_b");
        }
    }
    return CheckResult::from("route-agreement-oracle", worst.dev, tol, worst.where);
}

/// Densities against the paper's closed-form example expressions, where the
/// corpus carries them.
inline CheckResult check_golden_forms(const std::vector<CorpusEntry>& corpus, double tol = 1e-9,
                                      int probes_per_pair = 50) {
    detail::WorstTracker worst;
    for (const auto& entry : corpus) {
        if (!entry.golden) continue;
        for (Complex w : entry.pair.source().domain().probe_points(probes_per_pair)) {
            const auto g = entry.golden(w);
            worst.update(detail::rel_dev(stretching_density(entry.pair, w), g[0], 1e-3),
                         entry.name + " W_s");
            worst.update(detail::rel_dev(drilling_density(entry.pair, w), g[1], 1e-3),
                         entry.name + " W_d");
            worst.update(detail::rel_dev(bending_density(entry.pair, w), g[2], 1e-3),
                         entry.name + " W_b");
        }
    }
    return CheckResult::from("golden-closed-forms", worst.dev, tol, worst.where);
}

/// Neutrality hierarchy W_s = 0 => W_d = 0 => W_b = 0 over the corpus: a pair
/// whose stronger mode is neutral at `tol` must have the weaker modes neutral
/// too. Reported deviation is the worst weaker-mode sup-density over pairs
/// whose stronger mode passed.
inline CheckResult check_hierarchy(const std::vector<CorpusEntry>& corpus, double tol = 1e-8,
                                   int probes_per_pair = 50) {
    detail::WorstTracker worst;
    worst.update(0.0, "all pairs consistent");
    for (const auto& entry : corpus) {
        double sup_s = 0.0, sup_d = 0.0, sup_b = 0.0;
        for (Complex w : entry.pair.source().domain().probe_points(probes_per_pair)) {
            sup_s = std::max(sup_s, stretching_density(entry.pair, w));
            sup_d = std::max(sup_d, drilling_density(entry.pair, w));
            sup_b = std::max(sup_b, bending_density(entry.pair, w));
        }
        if (sup_s <= tol) {
            worst.update(sup_d, entry.name + " W_d under stretching-neutral");
            worst.update(sup_b, entry.name + " W_b under stretching-neutral");
        }
        if (sup_d <= tol) worst.update(sup_b, entry.name + " W_b under drilling-neutral");
    }
    return CheckResult::from("hierarchy", worst.dev, tol, worst.where);
}

/// First-fundamental-form and curvature identities on quasi-random probes of
/// the example surfaces: |r_,u| = |r_,v|, r_,u . r_,v = 0, tr(grad nu) = 0,
/// and the FD curvature tensor against the closed form.
inline CheckResult check_geometry_invariants(int probes_per_surface = 1000, double tol = 1e-6) {
    detail::WorstTracker worst;
    const std::vector<std::pair<std::string, WeierstrassSurface>> surfaces = {
        {"enneper", enneper_surface()},
        {"bour-m1", bour_m1_surface()},
        {"bour-m3", bour_m3_surface()},
    };
    for (const auto& [name, s] : surfaces) {
        auto pos = [&](Complex z) { return s.position_at(z); };
        for (Complex w : s.domain().probe_points(probes_per_surface)) {
            const auto g = s.frame_geometry(w);
            const double h = 1e-5 * std::max(1.0, std::abs(w));

            worst.update(std::abs(g.e_u.dot(g.e_v)), name + " e_u.e_v");
            worst.update(std::abs(g.e_u.norm() - 1.0), name + " |e_u|");
            worst.update(std::abs(g.e_v.norm() - 1.0), name + " |e_v|");

            const auto cs = s.curvature_at(w);
            worst.update(std::abs(cs.shape_operator.trace()), name + " tr grad nu");

            const Vector3d ru = (pos(w + h) - pos(w - h)) / (2.0 * h);
            const Vector3d rv = (pos(w + Complex(0, h)) - pos(w - Complex(0, h))) / (2.0 * h);
            worst.update(std::abs(ru.norm() - rv.norm()) / g.metric, name + " |r_u|=|r_v| fd");
            worst.update(std::abs(ru.dot(rv)) / (g.metric * g.metric), name + " r_u.r_v fd");

            auto normal = [&](Complex z) { return s.frame_geometry(z).nu; };
            const Vector3d nu_u = (normal(w + h) - normal(w - h)) / (2.0 * h);
            const Vector3d nu_v =
                (normal(w + Complex(0, h)) - normal(w - Complex(0, h))) / (2.0 * h);
            // shape operator columns in the (e_u, e_v) basis, FD vs closed form
            const double m = g.metric;
            Matrix2d fd_shape;
            fd_shape << nu_u.dot(g.e_u) / m, nu_v.dot(g.e_u) / m, nu_u.dot(g.e_v) / m,
                nu_v.dot(g.e_v) / m;
            worst.update((fd_shape - cs.shape_operator).cwiseAbs().maxCoeff() /
                             std::max(1.0, cs.shape_operator.cwiseAbs().maxCoeff()),
                         name + " curvature fd");
        }
    }
    return CheckResult::from("geometry-invariants", worst.dev, tol, worst.where);
}

/// FD frame gradients reproduce every connector component, for the source
/// frame and both starred frames.
inline CheckResult check_connector_fd(const std::vector<CorpusEntry>& corpus, double tol = 1e-6,
                                      int probes_per_pair = 12) {
    detail::WorstTracker worst;
    auto fd_grad = [](auto&& field, Complex w, const Vector3d& e_u, const Vector3d& e_v,
                      double metric, double step) {
        const Vector3d fu = (field(w + step) - field(w - step)) / (2.0 * step);
        const Vector3d fv =
            (field(w + Complex(0, step)) - field(w - Complex(0, step))) / (2.0 * step);
        return Matrix3d((fu * e_u.transpose() + fv * e_v.transpose()) / metric);
    };
    for (const auto& entry : corpus) {
        const auto& pair = entry.pair;
        for (Complex w : pair.source().domain().probe_points(probes_per_pair)) {
            const double h = 1e-5 * std::max(1.0, std::abs(w));
            {
                const auto g = pair.source().frame_geometry(w);
                const auto cs = source_connectors(pair.source(), w);
                const auto grads = reconstruct_frame_gradients(cs, {g.e_u, g.e_v, g.nu});
                auto eu = [&](Complex z) { return pair.source().frame_geometry(z).e_u; };
                auto ev = [&](Complex z) { return pair.source().frame_geometry(z).e_v; };
                auto nu = [&](Complex z) { return pair.source().frame_geometry(z).nu; };
                worst.update((fd_grad(eu, w, g.e_u, g.e_v, g.metric, h) - grads[0])
                                 .cwiseAbs()
                                 .maxCoeff(),
                             entry.name + " source grad e_u");
                worst.update((fd_grad(ev, w, g.e_u, g.e_v, g.metric, h) - grads[1])
                                 .cwiseAbs()
                                 .maxCoeff(),
                             entry.name + " source grad e_v");
                worst.update((fd_grad(nu, w, g.e_u, g.e_v, g.metric, h) - grads[2])
                                 .cwiseAbs()
                                 .maxCoeff(),
                             entry.name + " source grad nu");
            }
            {
                const auto L = pair.local_state(w);
                const auto star = starred_connectors(pair, w);
                const auto grads = reconstruct_frame_gradients(star, {L.es_u, L.es_v, L.star.nu});
                const double m_uv = L.star.metric * std::abs(L.hp);
                auto esu = [&](Complex z) { return pair.local_state(z).es_u; };
                auto esv = [&](Complex z) { return pair.local_state(z).es_v; };
                auto nus = [&](Complex z) { return pair.local_state(z).star.nu; };
                worst.update((fd_grad(esu, w, L.es_u, L.es_v, m_uv, h) - grads[0])
                                 .cwiseAbs()
                                 .maxCoeff(),
                             entry.name + " starred grad e*_u");
                worst.update((fd_grad(esv, w, L.es_u, L.es_v, m_uv, h) - grads[1])
                                 .cwiseAbs()
                                 .maxCoeff(),
                             entry.name + " starred grad e*_v");
                worst.update((fd_grad(nus, w, L.es_u, L.es_v, m_uv, h) - grads[2])
                                 .cwiseAbs()
                                 .maxCoeff(),
                             entry.name + " starred grad nu*");
            }
        }
    }
    // the native starred frame is the source formula set on the target chart;
    // cover it through one Goursat pair explicitly
    const DeformationPair pair = goursat_kappa_pair(2.0);
    for (Complex w : pair.source().domain().probe_points(probes_per_pair)) {
        const Complex ws = pair.pushforward(w);
        const auto g = pair.target().frame_geometry(ws);
        const auto native = starred_native_connectors(pair, w);
        const auto grads = reconstruct_frame_gradients(native, {g.e_u, g.e_v, g.nu});
        auto eu = [&](Complex z) { return pair.target().frame_geometry(z).e_u; };
        const double h = 1e-5 * std::max(1.0, std::abs(ws));
        worst.update(
            (fd_grad(eu, ws, g.e_u, g.e_v, g.metric, h) - grads[0]).cwiseAbs().maxCoeff(),
            "goursat-2 native grad e*_u*");
    }
    return CheckResult::from("connector-fd-oracle", worst.dev, tol, worst.where);
}

/// Appendix-B sweep: over random Moebius maps (half constructed special, half
/// generic), the algebraic area-preservation test and the differential
/// bending-neutrality test agree with zero disagreements. Deviation = number
/// of disagreements.
inline CheckResult check_area_mobius_sweep(int n_maps = 500, double residual_tol = 1e-9) {
    std::mt19937 rng(73501u);
    std::uniform_real_distribution<double> uni(-1.5, 1.5);
    const auto probes = example_annulus().probe_points(64);
    int disagreements = 0, tested = 0;
    std::string worst = "all maps agree";
    while (tested < n_maps) {
        Complex a(uni(rng), uni(rng)), b, c(uni(rng), uni(rng)), d;
        const bool make_special = (tested % 2 == 0);
        if (make_special) {
            if (std::abs(a) + std::abs(c) < 0.3) continue;
            b = -std::conj(c);
            d = std::conj(a);
        } else {
            b = Complex(uni(rng), uni(rng));
            d = Complex(uni(rng), uni(rng));
            if (std::abs(a * d - b * c) < 0.1) continue;
        }
        bool algebraic, differential;
        try {
            algebraic = area_preserving_moebius_check(a, b, c, d).area_preserving;
            differential =
                bending_neutral_residual(HolomorphicFn::mobius(Mobius(a, b, c, d)), probes) <=
                residual_tol;
        } catch (const SingularPointError&) {
            continue;  // pole on a probe point
        }
        ++tested;
        if (algebraic != make_special || differential != make_special) {
            ++disagreements;
            worst = "map " + std::to_string(tested);
        }
    }
    return CheckResult::from("area-preserving-mobius", double(disagreements), 0.0, worst);
}

inline std::vector<CheckResult> run_verification_suites(int probes_per_pair = 50,
                                                        double tol_analytic = 1e-8,
                                                        double tol_oracle = 1e-4) {
    const auto corpus = registered_corpus();
    return {
        check_golden_forms(corpus, 1e-9, probes_per_pair),
        check_route_agreement_analytic(corpus, tol_analytic, probes_per_pair),
        check_route_agreement_oracle(corpus, tol_oracle, probes_per_pair),
        check_hierarchy(corpus, 1e-8, probes_per_pair),
        check_geometry_invariants(1000, 1e-6),
        check_connector_fd(corpus, 1e-6),
        check_area_mobius_sweep(500, 1e-9),
    };
}

}  // namespace minmodes
