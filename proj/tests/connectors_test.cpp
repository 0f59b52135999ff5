#include <gtest/gtest.h>

#include "minmodes/connectors.hpp"
#include "minmodes/corpus.hpp"

using namespace minmodes;

namespace {

// FD surface gradient of a vector field f(w) on the source surface:
// grad f = f_,u (x) e_u/|r_,u| + f_,v (x) e_v/|r_,v|.
template <typename F>
Matrix3d fd_surface_gradient(const F& field, Complex w, const Vector3d& e_u, const Vector3d& e_v,
                             double metric, double step) {
    const Vector3d fu = (field(w + step) - field(w - step)) / (2.0 * step);
    const Vector3d fv =
        (field(w + Complex(0, step)) - field(w - Complex(0, step))) / (2.0 * step);
    return (fu * e_u.transpose() + fv * e_v.transpose()) / metric;
}

}  // namespace

TEST(SourceConnectors, EnneperFrozenValues) {
    const WeierstrassSurface enneper = enneper_surface();
    {
        // at w = 0: e^Phi/|r_,u|^2 = 4, chi = 0, no log-gradient
        const auto g = enneper.frame_geometry(Complex(0, 0));
        const auto cs = source_connectors(enneper, Complex(0, 0));
        EXPECT_LT((cs.d_u + 4.0 * g.e_u).norm(), 1e-12);
        EXPECT_LT((cs.d_v - 4.0 * g.e_v).norm(), 1e-12);
        EXPECT_LT(cs.c.norm(), 1e-12);
    }
    {
        // at w = 1: |r_,u| = 1, c = e_v
        const auto g = enneper.frame_geometry(Complex(1, 0));
        const auto cs = source_connectors(enneper, Complex(1, 0));
        EXPECT_LT((cs.c - g.e_v).norm(), 1e-12);
    }
}

TEST(SourceConnectors, CurvatureNormIdentity) {
    // |d_u|^2 + |d_v|^2 = |grad nu|^2 = -2K (H = 0)
    for (const WeierstrassSurface& s : {enneper_surface(), bour_m1_surface(), bour_m3_surface()}) {
        for (Complex w : s.domain().probe_points(50)) {
            const auto cs = source_connectors(s, w);
            const double lhs = cs.d_u.squaredNorm() + cs.d_v.squaredNorm();
            const double rhs = -2.0 * s.gauss_curvature(w);
            EXPECT_NEAR(lhs, rhs, 1e-9 * rhs);
        }
    }
}

TEST(Connectors, TangencyAndSymmetryIdentity) {
    const DeformationPair pair = goursat_kappa_pair(2.0);
    for (Complex w : pair.source().domain().probe_points(30)) {
        const auto st = pair.state_at(w);
        const auto src = source_connectors(pair.source(), w);
        const auto star = starred_connectors(pair, w);
        const auto native = starred_native_connectors(pair, w);
        for (const Vector3d& t : {src.c, src.d_u, src.d_v})
            EXPECT_LT(std::abs(t.dot(st.frame.nu)), 1e-10 * std::max(1.0, t.norm()));
        for (const Vector3d& t : {star.c, star.d_u, star.d_v, native.c, native.d_u, native.d_v})
            EXPECT_LT(std::abs(t.dot(st.nu_star)), 1e-10 * std::max(1.0, t.norm()));
        // d_u . e_v = d_v . e_u for every emitted set
        EXPECT_NEAR(src.d_u.dot(st.frame.e_v), src.d_v.dot(st.frame.e_u), 1e-10);
        EXPECT_NEAR(star.d_u.dot(st.star_e_v), star.d_v.dot(st.star_e_u), 1e-10);
        EXPECT_NEAR(native.d_u.dot(st.star_e_vstar), native.d_v.dot(st.star_e_ustar), 1e-10);
    }
}

TEST(StarredConnectors, DegenerateDeformationEqualsSource) {
    const DeformationPair idp(bour_m1_surface(), bour_m1_surface(), HolomorphicFn::identity());
    for (Complex w : idp.source().domain().probe_points(20)) {
        const auto src = source_connectors(idp.source(), w);
        const auto star = starred_connectors(idp, w);
        EXPECT_LT((src.c - star.c).norm(), 1e-11);
        EXPECT_LT((src.d_u - star.d_u).norm(), 1e-11);
        EXPECT_LT((src.d_v - star.d_v).norm(), 1e-11);
    }
}

TEST(StarredConnectors, CurvatureNormAgreesWithNativeRoute) {
    // |d*_u|^2 + |d*_v|^2 = |d*_{u*}|^2 + |d*_{v*}|^2, computed independently
    for (const auto& entry : registered_corpus()) {
        for (Complex w : entry.pair.source().domain().probe_points(10)) {
            const auto star = starred_connectors(entry.pair, w);
            const auto native = starred_native_connectors(entry.pair, w);
            const double a = star.d_u.squaredNorm() + star.d_v.squaredNorm();
            const double b = native.d_u.squaredNorm() + native.d_v.squaredNorm();
            EXPECT_NEAR(a, b, 1e-9 * std::max(a, b)) << entry.name;
        }
    }
}

TEST(StarredConnectors, EnneperBour3DrillingValue) {
    // 4 |V c* - R c|^2 = W_d = 4 on |w| = 1 (arg pi/2 spot of the example)
    const DeformationPair pair = enneper_to_bour3_pair();
    const Complex w(0.0, 1.0);
    const auto st = pair.state_at(w);
    const auto src = source_connectors(pair.source(), w);
    const auto star = starred_connectors(pair, w);
    const double wd = 4.0 * (st.V * star.c - st.R * src.c).squaredNorm();
    EXPECT_NEAR(wd, 4.0, 1e-10);
}

TEST(StarredConnectors, SpinRelationToNativeSpin) {
    // c* = c*_* + (1/|r*_,u|)(-(ln|h'|)_,v e*_u + (ln|h'|)_,u e*_v)
    const DeformationPair pair = make_goursat(bour_m1_fn(), example_annulus(),
                                              Mobius(Complex(1, 0.3), 0.1, Complex(-0.2, 0.1), 1.0));
    for (Complex w : pair.source().domain().probe_points(15)) {
        const auto st = pair.state_at(w);
        const auto star = starred_connectors(pair, w);
        const auto native = starred_native_connectors(pair, w);
        const Complex hp = pair.conformal_map_derivative()(w);
        const Complex hpp = pair.conformal_map_second_derivative()(w);
        const Complex lhp = hpp / hp;  // (ln|h'|)_,u + i (arg h')_,u
        const double m_uv = 0.5 * std::exp(pair.target().frame_geometry(st.w_star).phi) *
                            (1.0 + std::norm(st.w_star)) * std::abs(hp);
        const Vector3d corr =
            (1.0 / m_uv) * (lhp.imag() * st.star_e_u + lhp.real() * st.star_e_v);
        // (ln|h'|)_,v = -Im(h''/h')
        EXPECT_LT((star.c - (native.c + corr)).norm(), 1e-9 * std::max(1.0, star.c.norm()));
    }
}

TEST(ReconstructGradients, MatchesCurvatureTensorAndAntisymmetry) {
    const WeierstrassSurface s = bour_m1_surface();
    for (Complex w : s.domain().probe_points(25)) {
        const auto g = s.frame_geometry(w);
        const auto cs = source_connectors(s, w);
        const auto grads = reconstruct_frame_gradients(cs, {g.e_u, g.e_v, g.nu});
        // grad nu rebuilt dyadically equals the curvature tensor in the frame basis
        const auto shape = s.curvature_at(w).shape_operator;
        Matrix3d expected = Matrix3d::Zero();
        const Vector3d basis[2] = {g.e_u, g.e_v};
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                expected += shape(i, j) * basis[i] * basis[j].transpose();
        EXPECT_LT((grads[2] - expected).cwiseAbs().maxCoeff(), 1e-9);
        // frame rotation antisymmetry: grad e_u has no e_u component
        EXPECT_LT((g.e_u.transpose() * grads[0]).norm(), 1e-12);
        EXPECT_LT((g.e_v.transpose() * grads[1]).norm(), 1e-12);
    }
}

TEST(ReconstructGradients, FiniteDifferenceOracleSourceFrame) {
    const WeierstrassSurface s = bour_m1_surface();
    auto e_u_field = [&](Complex z) { return s.frame_geometry(z).e_u; };
    auto e_v_field = [&](Complex z) { return s.frame_geometry(z).e_v; };
    auto nu_field = [&](Complex z) { return s.frame_geometry(z).nu; };
    for (Complex w : s.domain().probe_points(20)) {
        const auto g = s.frame_geometry(w);
        const auto cs = source_connectors(s, w);
        const auto grads = reconstruct_frame_gradients(cs, {g.e_u, g.e_v, g.nu});
        const double h = 1e-5 * std::max(1.0, std::abs(w));
        EXPECT_LT((fd_surface_gradient(e_u_field, w, g.e_u, g.e_v, g.metric, h) - grads[0])
                      .cwiseAbs()
                      .maxCoeff(),
                  1e-6);
        EXPECT_LT((fd_surface_gradient(e_v_field, w, g.e_u, g.e_v, g.metric, h) - grads[1])
                      .cwiseAbs()
                      .maxCoeff(),
                  1e-6);
        EXPECT_LT((fd_surface_gradient(nu_field, w, g.e_u, g.e_v, g.metric, h) - grads[2])
                      .cwiseAbs()
                      .maxCoeff(),
                  1e-6);
    }
}

TEST(ReconstructGradients, FiniteDifferenceOracleStarredFrame) {
    // The starred (u,v) frame is parametrized by w; its surface gradient on
    // the target uses e*_u/|r*_,u|, e*_v/|r*_,v|.
    const DeformationPair pair = goursat_kappa_pair(2.0);
    auto es_u_field = [&](Complex z) { return pair.local_state(z).es_u; };
    auto es_v_field = [&](Complex z) { return pair.local_state(z).es_v; };
    auto nus_field = [&](Complex z) { return pair.local_state(z).star.nu; };
    for (Complex w : pair.source().domain().probe_points(12)) {
        const auto L = pair.local_state(w);
        const auto star = starred_connectors(pair, w);
        const auto grads = reconstruct_frame_gradients(star, {L.es_u, L.es_v, L.star.nu});
        const double m_uv = L.star.metric * std::abs(L.hp);
        const double h = 1e-5 * std::max(1.0, std::abs(w));
        EXPECT_LT((fd_surface_gradient(es_u_field, w, L.es_u, L.es_v, m_uv, h) - grads[0])
                      .cwiseAbs()
                      .maxCoeff(),
                  1e-6);
        EXPECT_LT((fd_surface_gradient(es_v_field, w, L.es_u, L.es_v, m_uv, h) - grads[1])
                      .cwiseAbs()
                      .maxCoeff(),
                  1e-6);
        EXPECT_LT((fd_surface_gradient(nus_field, w, L.es_u, L.es_v, m_uv, h) - grads[2])
                      .cwiseAbs()
                      .maxCoeff(),
                  1e-6);
    }
}

TEST(ReconstructGradients, FiniteDifferenceOracleNativeStarredFrame) {
    // Native starred frame checked in its own chart at w*.
    const DeformationPair pair = goursat_kappa_pair(2.0);
    const WeierstrassSurface& tgt = pair.target();
    auto e_u_field = [&](Complex z) { return tgt.frame_geometry(z).e_u; };
    for (Complex w : pair.source().domain().probe_points(12)) {
        const Complex ws = pair.pushforward(w);
        const auto g = tgt.frame_geometry(ws);
        const auto native = starred_native_connectors(pair, w);
        const auto grads = reconstruct_frame_gradients(native, {g.e_u, g.e_v, g.nu});
        const double h = 1e-5 * std::max(1.0, std::abs(ws));
        EXPECT_LT((fd_surface_gradient(e_u_field, ws, g.e_u, g.e_v, g.metric, h) - grads[0])
                      .cwiseAbs()
                      .maxCoeff(),
                  1e-6);
    }
}
