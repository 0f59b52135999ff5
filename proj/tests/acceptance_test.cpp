// Acceptance suite: one criterion per test, one PASS/FAIL line per criterion
// on stdout. Tolerances are pinned in code.

#include <gtest/gtest.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "minmodes/meshgen.hpp"
#include "minmodes/verification.hpp"

using namespace minmodes;
namespace fs = std::filesystem;

namespace {

struct Criterion {
    int id;
    std::string summary;
    bool passed = true;
    double worst = 0.0;

    void note(bool ok, double dev = 0.0) {
        passed = passed && ok;
        worst = std::max(worst, dev);
    }
    ~Criterion() {
        std::printf("[%s] criterion %d: %s (worst deviation %.3g)\n",
                    passed ? "PASS" : "FAIL", id, summary.c_str(), worst);
        std::fflush(stdout);
    }
};

// |a - b| <= max(abs_floor, rel * max(|a|, |b|))
bool close(double a, double b, double rel, double abs_floor, double* dev = nullptr) {
    const double lim = std::max(abs_floor, rel * std::max(std::abs(a), std::abs(b)));
    if (dev) *dev = std::abs(a - b);
    return std::abs(a - b) <= lim;
}

int run_shell(const std::string& cmd) {
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

}  // namespace

TEST(Acceptance, Criterion01_EnneperToBourM3Grid) {
    Criterion crit{1, "Enneper->Bour m=3: closed-form W_s, W_d on 32x64 grid at 1e-9, W_b <= 1e-10, < 5 s"};
    const auto t0 = std::chrono::steady_clock::now();
    const DeformationPair pair = enneper_to_bour3_pair();
    const SampledSurface mesh = sample(pair, GridSpec{32, 64});
    for (const auto& v : mesh.vertices) {
        ASSERT_FALSE(v.excluded);
        const auto g = enneper_bour3_golden(v.w);
        double dev;
        const bool ws_ok = close(v.Ws, g[0], 1e-9, 1e-12, &dev);
        crit.note(ws_ok, dev);
        const bool wd_ok = close(v.Wd, g[1], 1e-9, 1e-12, &dev);
        crit.note(wd_ok, dev);
        crit.note(v.Wb <= 1e-10);
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    crit.note(seconds < 5.0);
    EXPECT_TRUE(crit.passed);
    EXPECT_LT(seconds, 5.0);
}

TEST(Acceptance, Criterion02_GoursatKappaFamily) {
    Criterion crit{2, "Goursat kappa in {+-1/2, +-2/3, +-3/2, 2}: closed forms at 1e-9, sign-invariant"};
    for (double kappa : {0.5, -0.5, 2.0 / 3.0, -2.0 / 3.0, 1.5, -1.5, 2.0}) {
        const DeformationPair pair = goursat_kappa_pair(kappa);
        const SampledSurface mesh = sample(pair, GridSpec{16, 24});
        for (const auto& v : mesh.vertices) {
            ASSERT_FALSE(v.excluded);
            const auto g = goursat_kappa_golden(kappa, v.w);
            double dev;
            const bool ws_ok = close(v.Ws, g[0], 1e-9, 1e-12, &dev);
            crit.note(ws_ok, dev);
            const bool wd_ok = close(v.Wd, g[1], 1e-9, 1e-12, &dev);
            crit.note(wd_ok, dev);
            const bool wb_ok = close(v.Wb, g[2], 1e-9, 1e-12, &dev);
            crit.note(wb_ok, dev);
        }
    }
    // sign of kappa leaves the densities invariant
    for (double kappa : {0.5, 2.0 / 3.0, 1.5}) {
        const DeformationPair plus = goursat_kappa_pair(kappa);
        const DeformationPair minus = goursat_kappa_pair(-kappa);
        for (Complex w : plus.source().domain().probe_points(60)) {
            double dev;
            const bool s_ok =
                close(stretching_density(plus, w), stretching_density(minus, w), 1e-12, 1e-13, &dev);
            crit.note(s_ok, dev);
            const bool d_ok =
                close(drilling_density(plus, w), drilling_density(minus, w), 1e-12, 1e-13, &dev);
            crit.note(d_ok, dev);
            const bool b_ok =
                close(bending_density(plus, w), bending_density(minus, w), 1e-12, 1e-13, &dev);
            crit.note(b_ok, dev);
        }
    }
    // spot value kappa = 2 at |w| = 1
    const DeformationPair pair = goursat_kappa_pair(2.0);
    const Complex w = std::polar(1.0, 0.4);
    crit.note(close(stretching_density(pair, w), 1.0 / 8.0, 1e-12, 0));
    crit.note(close(drilling_density(pair, w), 36.0 / 25.0, 1e-11, 0));
    crit.note(close(bending_density(pair, w), 1296.0 / 625.0, 1e-11, 0));
    EXPECT_TRUE(crit.passed);
}

TEST(Acceptance, Criterion03_SoftElasticityPanels) {
    Criterion crit{3, "soft elasticity panels: all densities <= 1e-10 on grid, classify = isometry"};
    std::vector<std::pair<Mobius, double>> panels;
    for (const Mobius& mob :
         {Mobius::special(Complex(0, 1), -1.0), Mobius::special(Complex(1, 0), -1.0)})
        for (double a0 : {0.0, M_PI / 6.0, M_PI / 4.0, M_PI / 2.0})
            panels.emplace_back(mob, a0);
    for (const auto& [mob, alpha0] : panels) {
        const DeformationPair pair = make_bonnet(bour_m1_fn(), example_annulus(), alpha0, mob);
        const SampledSurface mesh = sample(pair, GridSpec{32, 64});
        for (const auto& v : mesh.vertices) {
            if (v.excluded) continue;  // Moebius pole exclusion
            crit.note(v.Ws <= 1e-10, v.Ws);
            crit.note(v.Wd <= 1e-10, v.Wd);
            crit.note(v.Wb <= 1e-10, v.Wb);
        }
        crit.note(classify(pair).classification == DeformationClass::isometry);
    }
    EXPECT_TRUE(crit.passed);
}

TEST(Acceptance, Criterion04_Hierarchy) {
    Criterion crit{4, "hierarchy W_s=0 => W_d=0 => W_b=0 over the >= 12-pair corpus at 1e-8"};
    const auto corpus = registered_corpus();
    crit.note(corpus.size() >= 12);
    // all four classes present
    for (DeformationClass c : {DeformationClass::isometry, DeformationClass::drilling_neutral,
                               DeformationClass::bending_neutral, DeformationClass::generic}) {
        bool found = false;
        for (const auto& e : corpus) found = found || e.expected_class == c;
        crit.note(found);
    }
    const CheckResult r = check_hierarchy(corpus, 1e-8, 50);
    crit.note(r.passed, r.max_deviation);
    EXPECT_TRUE(crit.passed);
}

TEST(Acceptance, Criterion05_RouteAgreement) {
    Criterion crit{5, "connector route at 1e-8 and finite-difference H-oracle at 1e-4, 50 probes/pair"};
    const auto corpus = registered_corpus();
    const CheckResult analytic = check_route_agreement_analytic(corpus, 1e-8, 50);
    crit.note(analytic.passed, analytic.max_deviation);
    const CheckResult oracle = check_route_agreement_oracle(corpus, 1e-4, 50);
    crit.note(oracle.passed, oracle.max_deviation);
    EXPECT_TRUE(crit.passed);
}

TEST(Acceptance, Criterion06_GeometryInvariants) {
    Criterion crit{6, "first-fundamental-form + curvature identities, 1000 probes per surface"};
    const CheckResult r = check_geometry_invariants(1000, 1e-6);
    crit.note(r.passed, r.max_deviation);
    EXPECT_TRUE(crit.passed);
}

TEST(Acceptance, Criterion07_ConnectorFdOracle) {
    Criterion crit{7, "FD frame gradients reproduce all connector components (both frames) at 1e-6"};
    const CheckResult r = check_connector_fd(registered_corpus(), 1e-6);
    crit.note(r.passed, r.max_deviation);
    EXPECT_TRUE(crit.passed);
}

TEST(Acceptance, Criterion08_AreaPreservingMobius) {
    Criterion crit{8, "500 random Moebius maps: algebraic area test <=> bending-neutral residual"};
    const CheckResult r = check_area_mobius_sweep(500, 1e-9);
    crit.note(r.passed, r.max_deviation);
    EXPECT_TRUE(crit.passed);
}

TEST(Acceptance, Criterion09_PureDilation) {
    Criterion crit{9, "dilation lambda = 2: W_s = 2, W_d = W_b <= 1e-10 everywhere"};
    const DeformationPair pair = make_dilation(bour_m1_fn(), example_annulus(), 2.0);
    const SampledSurface mesh = sample(pair, GridSpec{32, 64});
    for (const auto& v : mesh.vertices) {
        ASSERT_FALSE(v.excluded);
        double dev;
        const bool ws_ok = close(v.Ws, 2.0, 1e-12, 0, &dev);
        crit.note(ws_ok, dev);
        crit.note(v.Wd <= 1e-10, v.Wd);
        crit.note(v.Wb <= 1e-10, v.Wb);
    }
    EXPECT_TRUE(crit.passed);
}

TEST(Acceptance, Criterion10_CliDeterminismAndVerify) {
    Criterion crit{10, "reproduce emits byte-identical outputs across runs; verify exits 0"};
    const fs::path base = fs::temp_directory_path() / "minmodes_acceptance";
    fs::remove_all(base);
    fs::create_directories(base);
    const std::string cli = MINMODES_CLI_PATH;
    const char* cases[] = {"soft-elasticity", "dilation", "enneper-bour3", "goursat-kappa"};
    for (const char* c : cases) {
        const fs::path d1 = base / (std::string(c) + "_run1");
        const fs::path d2 = base / (std::string(c) + "_run2");
        const std::string args = std::string(" reproduce ") + c + " --grid 16x24 > /dev/null";
        crit.note(run_shell(cli + " --out " + d1.string() + args) == 0);
        crit.note(run_shell(cli + " --out " + d2.string() + args) == 0);
        int compared = 0;
        for (const auto& entry : fs::directory_iterator(d1)) {
            const fs::path other = d2 / entry.path().filename();
            crit.note(fs::exists(other) && slurp(entry.path()) == slurp(other));
            ++compared;
        }
        crit.note(compared >= 3);
    }
    crit.note(run_shell(cli + " verify --probes 50 > " + (base / "verify.log").string()) == 0);
    EXPECT_TRUE(crit.passed);
}
