#include <gtest/gtest.h>

#include <random>

#include "minmodes/corpus.hpp"
#include "minmodes/neutrality.hpp"
#include "minmodes/parse.hpp"

using namespace minmodes;

TEST(BendingResidual, IdentityAndSpecialMobius) {
    const auto probes = example_annulus().probe_points(100);
    EXPECT_EQ(bending_neutral_residual(HolomorphicFn::identity(), probes), 0.0);
    const HolomorphicFn special =
        HolomorphicFn::mobius(Mobius::special(Complex(1, 0), Complex(-1, 0)));
    EXPECT_LT(bending_neutral_residual(special, probes), 1e-12);
    const HolomorphicFn special2 =
        HolomorphicFn::mobius(Mobius::special(Complex(0, 1), Complex(-1, 0)));
    EXPECT_LT(bending_neutral_residual(special2, probes), 1e-12);
}

TEST(BendingResidual, ScalingAtOne) {
    // h = 2w at w = 1: | 2 - (1+4)/(1+1) | = 1/2
    const std::vector<Complex> probe{Complex(1, 0)};
    EXPECT_NEAR(bending_neutral_residual(parse_expression("scale(2,id)"), probe), 0.5, 1e-14);
}

TEST(DrillingResidual, BonnetAndIdentity) {
    const auto probes = example_annulus().probe_points(60);
    const DeformationPair bonnet = make_bonnet(bour_m1_fn(), example_annulus(), M_PI / 3.0);
    EXPECT_LT(drilling_neutral_residual(bonnet, probes), 1e-10);
    const DeformationPair idp(bour_m1_surface(), bour_m1_surface(), HolomorphicFn::identity());
    EXPECT_LT(drilling_neutral_residual(idp, probes), 1e-14);
}

TEST(DrillingResidual, EnneperBour3DefectNormOnUnitCircle) {
    // alpha = arg w, log term vanishes (h = id): defect norm = |grad arg w| = 1
    // at |w| = 1, consistent with W_d = -K (1+|w|^2)^2 * 1 = 4 there.
    const DeformationPair pair = enneper_to_bour3_pair();
    for (double th : {0.2, 1.9, 3.6}) {
        const std::vector<Complex> probe{std::polar(1.0, th)};
        EXPECT_NEAR(drilling_neutral_residual(pair, probe), 1.0, 1e-12);
    }
}

TEST(Classify, RepresentativeOfEachClass) {
    // soft elasticity: special Moebius + Bonnet
    const DeformationPair soft =
        make_bonnet(bour_m1_fn(), example_annulus(), M_PI / 4.0, Mobius::special(1.0, -1.0));
    EXPECT_EQ(classify(soft).classification, DeformationClass::isometry);

    // pure dilation: drilling neutral
    const DeformationPair dil = make_dilation(bour_m1_fn(), example_annulus(), 2.0);
    EXPECT_EQ(classify(dil).classification, DeformationClass::drilling_neutral);

    // Enneper -> Bour m=3: bending neutral
    EXPECT_EQ(classify(enneper_to_bour3_pair()).classification,
              DeformationClass::bending_neutral);

    // Goursat kappa: generic
    EXPECT_EQ(classify(goursat_kappa_pair(2.0)).classification, DeformationClass::generic);
}

TEST(Classify, WholeCorpusMatchesExpectedClasses) {
    for (const auto& entry : registered_corpus()) {
        EXPECT_EQ(classify(entry.pair).classification, entry.expected_class) << entry.name;
    }
}

TEST(Hierarchy, ResidualHierarchyAcrossCorpus) {
    const double tol = kNeutralTol;
    for (const auto& entry : registered_corpus()) {
        const auto rep = classify(entry.pair);
        if (rep.stretching_residual <= tol) {
            EXPECT_LE(rep.drilling_residual, 10.0 * tol) << entry.name;
            EXPECT_LE(rep.bending_residual, 10.0 * tol) << entry.name;
        }
        if (rep.drilling_residual <= tol) {
            EXPECT_LE(rep.bending_residual, 10.0 * tol) << entry.name;
        }
    }
}

TEST(Hierarchy, BendingResidualEquivalentToBendingDensity) {
    // |h'| - (1+|h|^2)/(1+|w|^2) vanishes on probes exactly when W_b does:
    // the density is a strictly increasing function of the residual at fixed K.
    for (const auto& entry : registered_corpus()) {
        const auto probes = entry.pair.source().domain().probe_points(60);
        const double residual =
            bending_neutral_residual(entry.pair.conformal_map(), probes);
        double sup_wb = 0.0;
        for (Complex w : probes) sup_wb = std::max(sup_wb, bending_density(entry.pair, w));
        EXPECT_EQ(residual <= 1e-9, sup_wb <= 1e-10) << entry.name << " residual " << residual
                                                     << " sup W_b " << sup_wb;
    }
}

TEST(MakeBonnet, ReducesToFWhenAlphaZero) {
    const DeformationPair pair = make_bonnet(bour_m1_fn(), example_annulus(), 0.0);
    for (Complex w : pair.source().domain().probe_points(20)) {
        const Complex a = pair.source().weierstrass_fn()(w);
        const Complex b = pair.target().weierstrass_fn()(w);
        EXPECT_LT(std::abs(a - b), 1e-14 * std::abs(a));
    }
}

TEST(MakeBonnet, IsometriesForAllPanels) {
    // the soft-elasticity figure panels: (a=i, c=-1) and (a=1, c=-1) with
    // alpha0 in {0, pi/6, pi/4, pi/2}
    for (const Mobius& m :
         {Mobius::special(Complex(0, 1), -1.0), Mobius::special(Complex(1, 0), -1.0)}) {
        for (double alpha0 : {0.0, M_PI / 6.0, M_PI / 4.0, M_PI / 2.0}) {
            const DeformationPair pair = make_bonnet(bour_m1_fn(), example_annulus(), alpha0, m);
            EXPECT_EQ(classify(pair).classification, DeformationClass::isometry);
        }
    }
}

TEST(MakeBonnet, SoftElasticityHasNoEnergyForAnyModuli) {
    const DeformationPair pair =
        make_bonnet(bour_m1_fn(), example_annulus(), M_PI / 2.0, Mobius::special(1.0, -1.0));
    for (Complex w : pair.source().domain().probe_points(30)) {
        for (const Moduli& mu : {Moduli(10, 10, 10), Moduli(1, 0.5, 2), Moduli(0, 0, 10)}) {
            EXPECT_LT(total_density(pair, w, mu).w_total, 1e-10);
        }
    }
}

TEST(MakeDrillingNeutral, LambdaOneIsIsometry) {
    const DeformationPair pair =
        make_drilling_neutral(bour_m1_fn(), example_annulus(), Mobius::identity(), 1.0, 0.7);
    EXPECT_EQ(classify(pair).classification, DeformationClass::isometry);
}

TEST(MakeDrillingNeutral, UniformDilationEnergies) {
    // lambda = 2, h = id, F = 1: W_s = 2 everywhere, W_d = W_b = 0
    const DeformationPair pair =
        make_drilling_neutral(enneper_fn(), example_annulus(), Mobius::identity(), 2.0, 0.0);
    for (Complex w : pair.source().domain().probe_points(25)) {
        EXPECT_NEAR(stretching_density(pair, w), 2.0, 1e-12);
        EXPECT_LT(drilling_density(pair, w), 1e-10);
        EXPECT_LT(bending_density(pair, w), 1e-10);
    }
}

TEST(MakeDrillingNeutral, SpecialMobiusLambda3) {
    const DeformationPair pair = make_drilling_neutral(
        bour_m1_fn(), example_annulus(), Mobius::special(1.0, -1.0), 3.0, 0.0);
    EXPECT_EQ(classify(pair).classification, DeformationClass::drilling_neutral);
}

TEST(MakeDrillingNeutral, NonNeutralMapRejected) {
    EXPECT_THROW(make_drilling_neutral(bour_m1_fn(), example_annulus(), Mobius::scaling(2.0), 2.0,
                                       0.0),
                 NotNeutralError);
    EXPECT_THROW(make_drilling_neutral(bour_m1_fn(), example_annulus(), Mobius::identity(), -1.0,
                                       0.0),
                 InvalidParamsError);
}

TEST(MakeBendingNeutral, EnneperToBourM3Construction) {
    // F = 1, lambda = |w|, beta = arg w (g = w), h = id: F* = w
    const DeformationPair pair = enneper_to_bour3_pair();
    for (Complex w : pair.source().domain().probe_points(20)) {
        const Complex Fs = pair.target().weierstrass_fn()(w);
        EXPECT_LT(std::abs(Fs - w), 1e-13 * std::abs(w));
    }
    // W_d matches -K (1+|w|^2)^2 |grad beta|^2 with |grad arg w| = 1/|w|
    for (Complex w : pair.source().domain().probe_points(20)) {
        const double K = pair.source().gauss_curvature(w);
        const double s = 1.0 + std::norm(w);
        const double expected = -K * s * s / std::norm(w);
        EXPECT_NEAR(drilling_density(pair, w), expected, 1e-10 * expected);
    }
}

TEST(MakeBendingNeutral, SquareFieldGivesBourLikeTarget) {
    // lambda = |w|^2, beta = 2 arg w (g = w^2): F* = w^2, W_b = 0 on probes
    const DeformationPair pair =
        make_bending_neutral(enneper_fn(), example_annulus(), Mobius::identity(),
                             HolomorphicFn::power(HolomorphicFn::identity(), 2));
    for (Complex w : pair.source().domain().probe_points(25)) {
        const Complex Fs = pair.target().weierstrass_fn()(w);
        EXPECT_LT(std::abs(Fs - w * w), 1e-12 * std::norm(w));
        EXPECT_LT(bending_density(pair, w), 1e-10);
    }
    EXPECT_EQ(classify(pair).classification, DeformationClass::bending_neutral);
}

TEST(MakeBendingNeutral, ConstantFieldReducesToDrillingNeutral) {
    const DeformationPair pair = make_bending_neutral(bour_m1_fn(), example_annulus(),
                                                      Mobius::identity(), 2.0, M_PI / 5.0);
    EXPECT_EQ(classify(pair).classification, DeformationClass::drilling_neutral);
}

TEST(MakeGoursat, KappaOneIsIdentityPair) {
    const DeformationPair pair = make_goursat_kappa(bour_m1_fn(), example_annulus(), 1.0);
    for (Complex w : pair.source().domain().probe_points(20)) {
        EXPECT_LT(stretching_density(pair, w), 1e-12);
        EXPECT_LT(drilling_density(pair, w), 1e-12);
        EXPECT_LT(bending_density(pair, w), 1e-12);
    }
}

TEST(MakeGoursat, KappaTwoReproducesClosedFormEnergies) {
    const DeformationPair pair = make_goursat_kappa(bour_m1_fn(), example_annulus(), 2.0);
    for (Complex w : pair.source().domain().probe_points(30)) {
        const auto g = goursat_kappa_golden(2.0, w);
        EXPECT_NEAR(stretching_density(pair, w), g[0], 1e-9 * std::max(1.0, g[0]));
        EXPECT_NEAR(drilling_density(pair, w), g[1], 1e-9 * std::max(1.0, g[1]));
        EXPECT_NEAR(bending_density(pair, w), g[2], 1e-9 * std::max(1.0, g[2]));
    }
}

TEST(MakeGoursat, SpecialMobiusIsRigidRotation) {
    const DeformationPair pair =
        make_goursat(bour_m1_fn(), example_annulus(), Mobius::special(Complex(0, 1), -1.0));
    EXPECT_EQ(classify(pair).classification, DeformationClass::isometry);
}

TEST(AreaCheck, KnownMaps) {
    EXPECT_TRUE(area_preserving_moebius_check(1.0, 0.0, 0.0, 1.0).area_preserving);
    // a=i, b=1, c=-1, d=-i: b = -conj(c), d = conj(a)
    EXPECT_TRUE(area_preserving_moebius_check(Complex(0, 1), 1.0, -1.0, Complex(0, -1))
                    .area_preserving);
    // dilation (2, 0, 0, 1/2): det = 1 but d != conj(a)
    const auto dil = area_preserving_moebius_check(2.0, 0.0, 0.0, 0.5);
    EXPECT_FALSE(dil.area_preserving);
    const std::vector<Complex> probes = example_annulus().probe_points(50);
    EXPECT_GT(bending_neutral_residual(parse_expression("mobius(2,0,0,0.5)"), probes), 1e-3);
    EXPECT_THROW(area_preserving_moebius_check(1.0, 2.0, 2.0, 4.0), DegenerateMoebiusError);
}

TEST(AreaCheck, ScaleInvariance) {
    // multiplying all coefficients by any nonzero complex number changes nothing
    const Complex s(0.3, -1.2);
    const auto base = area_preserving_moebius_check(Complex(0, 1), 1.0, -1.0, Complex(0, -1));
    const auto scaled = area_preserving_moebius_check(s * Complex(0, 1), s * 1.0, s * (-1.0),
                                                      s * Complex(0, -1));
    EXPECT_EQ(base.area_preserving, scaled.area_preserving);
    EXPECT_TRUE(base.canonical.approx_equal(scaled.canonical, 1e-12));
}

TEST(AreaCheck, EquivalentToBendingNeutralityOverMobiusFamily) {
    // over random Moebius maps, the algebraic test and the differential test
    // agree with zero disagreements
    std::mt19937 rng(20240817u);
    std::uniform_real_distribution<double> uni(-1.5, 1.5);
    const auto probes = example_annulus().probe_points(64);
    int specials = 0, generics = 0;
    for (int i = 0; i < 200; ++i) {
        Complex a, b, c, d;
        if (i % 2 == 0) {
            a = Complex(uni(rng), uni(rng));
            c = Complex(uni(rng), uni(rng));
            if (std::abs(a) + std::abs(c) < 0.3) continue;
            b = -std::conj(c);
            d = std::conj(a);
            ++specials;
        } else {
            a = Complex(uni(rng), uni(rng));
            b = Complex(uni(rng), uni(rng));
            c = Complex(uni(rng), uni(rng));
            d = Complex(uni(rng), uni(rng));
            if (std::abs(a * d - b * c) < 0.1) continue;
            ++generics;
        }
        const auto check = area_preserving_moebius_check(a, b, c, d);
        double residual;
        try {
            residual = bending_neutral_residual(HolomorphicFn::mobius(Mobius(a, b, c, d)), probes);
        } catch (const SingularPointError&) {
            continue;  // pole on a probe
        }
        EXPECT_EQ(check.area_preserving, residual <= 1e-9)
            << "disagreement at map " << i << " residual " << residual;
    }
    EXPECT_GT(specials, 50);
    EXPECT_GT(generics, 50);
}

TEST(SphericalArcRatio, KnownValues) {
    EXPECT_NEAR(spherical_arc_ratio(HolomorphicFn::identity(), Complex(0.7, 0.2), Complex(1e-3, 0)),
                1.0, 1e-15);
    const HolomorphicFn special =
        HolomorphicFn::mobius(Mobius::special(Complex(1, 0), Complex(-1, 0)));
    for (Complex w : example_annulus().probe_points(25))
        EXPECT_NEAR(spherical_arc_ratio(special, w, Complex(1e-4, 1e-4)), 1.0, 1e-12);
    // h = 2w at w = 1: (2*2/5)/(2/2) = 4/5
    EXPECT_NEAR(spherical_arc_ratio(parse_expression("scale(2,id)"), Complex(1, 0),
                                    Complex(0, 1e-5)),
                0.8, 1e-14);
    EXPECT_THROW(spherical_arc_ratio(HolomorphicFn::identity(), Complex(1, 0), Complex(0, 0)),
                 InvalidParamsError);
}
