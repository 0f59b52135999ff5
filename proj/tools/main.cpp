// minmodes command-line driver: build minimal surfaces from Weierstrass data,
// evaluate the stretching/drilling/bending densities of conformal
// deformations, classify neutral modes, run the verification suites, and
// regenerate the worked example cases.

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "minmodes/meshgen.hpp"
#include "minmodes/parse.hpp"
#include "minmodes/verification.hpp"

using namespace minmodes;
using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitCheckFailed = 2;

// ---------------------------------------------------------------------------
// option plumbing

struct DomainOpt {
    std::string spec = "annulus(0.36787944117144233,2.718281828459045)";
    std::vector<std::string> exclusions;  // "re,im,radius"
};

DomainSpec parse_domain(const DomainOpt& opt) {
    const std::string& s = opt.spec;
    auto args_of = [&](size_t open) {
        if (s.back() != ')') throw ParseError("domain: expected ')' in '" + s + "'");
        std::vector<double> vals;
        std::string inner = s.substr(open + 1, s.size() - open - 2);
        std::istringstream is(inner);
        std::string tok;
        while (std::getline(is, tok, ',')) vals.push_back(std::stod(tok));
        return vals;
    };
    DomainSpec d = DomainSpec::disk(1.0);
    if (s.rfind("annulus(", 0) == 0) {
        const auto v = args_of(7);
        if (v.size() != 2) throw ParseError("domain: annulus(r_min,r_max)");
        d = DomainSpec::annulus(v[0], v[1]);
    } else if (s.rfind("disk(", 0) == 0) {
        const auto v = args_of(4);
        if (v.size() != 1) throw ParseError("domain: disk(radius)");
        d = DomainSpec::disk(v[0]);
    } else if (s.rfind("rect(", 0) == 0) {
        const auto v = args_of(4);
        if (v.size() != 4) throw ParseError("domain: rect(u0,u1,v0,v1)");
        d = DomainSpec::rectangle(v[0], v[1], v[2], v[3]);
    } else {
        throw ParseError("domain: unknown spec '" + s + "'");
    }
    for (const auto& e : opt.exclusions) {
        std::istringstream is(e);
        std::string tok;
        std::vector<double> v;
        while (std::getline(is, tok, ',')) v.push_back(std::stod(tok));
        if (v.size() != 3) throw ParseError("exclusion: expected re,im,radius");
        d = d.with_exclusion(Complex(v[0], v[1]), v[2]);
    }
    return d;
}

struct GridOpt {
    std::string spec = "32x64";
    double theta_min = 0.0;
    double theta_max = 2.0 * M_PI;
};

GridSpec parse_grid(const GridOpt& opt) {
    GridSpec g;
    const auto x = opt.spec.find('x');
    if (x == std::string::npos) throw ParseError("grid: expected NxM");
    g.n0 = std::stoi(opt.spec.substr(0, x));
    g.n1 = std::stoi(opt.spec.substr(x + 1));
    g.theta_min = opt.theta_min;
    g.theta_max = opt.theta_max;
    return g;
}

Moduli parse_moduli(const std::string& s) {
    std::istringstream is(s);
    std::string tok;
    std::vector<double> v;
    while (std::getline(is, tok, ',')) v.push_back(std::stod(tok));
    if (v.size() != 3) throw ParseError("moduli: expected mu_s,mu_d,mu_b");
    return Moduli(v[0], v[1], v[2]);
}

// ','- or ';'-separated complex literals (literals themselves contain no commas)
std::vector<Complex> parse_complex_list(const std::string& s, size_t expect) {
    std::vector<Complex> out;
    std::string tok;
    for (char ch : s) {
        if (ch == ',' || ch == ';') {
            out.push_back(parse_complex(tok));
            tok.clear();
        } else {
            tok += ch;
        }
    }
    if (!tok.empty()) out.push_back(parse_complex(tok));
    if (out.size() != expect)
        throw ParseError("expected " + std::to_string(expect) + " comma-separated complex values");
    return out;
}

// Parsed expressions must be holomorphic on the domain they will be used on
// (the grammar only builds holomorphic functions; this is the load-time check).
void check_holomorphy(const HolomorphicFn& f, const DomainSpec& domain, const char* what) {
    const HolomorphicFn fp = f.derivative();
    int checked = 0;
    for (Complex w : domain.probe_points(32)) {
        double res, scale;
        try {
            res = cauchy_riemann_residual(f, w, fd_step(w));
            scale = std::max(1.0, std::abs(fp(w)));
        } catch (const SingularPointError&) {
            continue;
        }
        ++checked;
        if (res > kFdTol * scale)
            throw NotHolomorphicError(std::string(what) + " fails the Cauchy-Riemann check at w = " +
                                      detail::complex_str(w));
    }
    if (checked == 0)
        throw InvalidParamsError(std::string(what) + ": singular on every probe of the domain");
}

// Pair definition shared by `energies` and `classify`: either explicit
// expressions or a named family.
struct PairOpt {
    std::string family = "custom";  // custom|bonnet|drilling|bending|goursat|dilation
    std::string F = "recip(id)";
    std::string Fstar;
    std::string h = "id";
    DomainOpt domain;
    std::string domain_star;  // empty: same as domain (custom pairs only)
    double alpha0 = 0.0;
    double lambda = 1.0;
    std::string g_expr;  // bending-neutral generator
    double kappa = 2.0;
    std::string mobius;          // "a;b;c;d"
    std::string mobius_special;  // "a;c"
};

Mobius pair_mobius(const PairOpt& p) {
    if (!p.mobius.empty()) {
        const auto v = parse_complex_list(p.mobius, 4);
        return Mobius(v[0], v[1], v[2], v[3]);
    }
    if (!p.mobius_special.empty()) {
        const auto v = parse_complex_list(p.mobius_special, 2);
        return Mobius::special(v[0], v[1]);
    }
    return Mobius::identity();
}

DeformationPair build_pair(const PairOpt& p) {
    const DomainSpec domain = parse_domain(p.domain);
    const HolomorphicFn F = parse_expression(p.F);
    check_holomorphy(F, domain, "F");
    if (p.family == "bonnet") return make_bonnet(F, domain, p.alpha0, pair_mobius(p));
    if (p.family == "drilling")
        return make_drilling_neutral(F, domain, pair_mobius(p), p.lambda, p.alpha0);
    if (p.family == "bending") {
        if (p.g_expr.empty()) throw ParseError("bending family needs --g <expr>");
        return make_bending_neutral(F, domain, pair_mobius(p), parse_expression(p.g_expr));
    }
    if (p.family == "goursat") {
        if (!p.mobius.empty() || !p.mobius_special.empty())
            return make_goursat(F, domain, pair_mobius(p));
        return make_goursat_kappa(F, domain, p.kappa);
    }
    if (p.family == "dilation") return make_dilation(F, domain, p.lambda);
    if (p.family != "custom") throw ParseError("unknown family '" + p.family + "'");
    if (p.Fstar.empty()) throw ParseError("custom pair needs --Fstar");
    DomainOpt star_opt = p.domain;
    if (!p.domain_star.empty()) star_opt.spec = p.domain_star;
    const DomainSpec dom = parse_domain(p.domain);
    const DomainSpec dom_star = parse_domain(star_opt);
    const HolomorphicFn Fstar = parse_expression(p.Fstar);
    const HolomorphicFn h = parse_expression(p.h);
    check_holomorphy(Fstar, dom_star, "Fstar");
    check_holomorphy(h, dom, "h");
    WeierstrassSurface source(F, dom);
    WeierstrassSurface target(Fstar, dom_star);
    return DeformationPair(std::move(source), std::move(target), h);
}

void add_pair_options(CLI::App* cmd, PairOpt& p) {
    cmd->add_option("--family", p.family,
                    "pair family: custom|bonnet|drilling|bending|goursat|dilation");
    cmd->add_option("--F", p.F, "Weierstrass expression for the source surface");
    cmd->add_option("--Fstar", p.Fstar, "Weierstrass expression for the target (custom family)");
    cmd->add_option("--map", p.h, "conformal map expression h (custom family)");
    cmd->add_option("--domain", p.domain.spec, "annulus(r0,r1) | disk(r) | rect(u0,u1,v0,v1)");
    cmd->add_option("--exclude", p.domain.exclusions, "excluded point re,im,radius (repeatable)");
    cmd->add_option("--domain-star", p.domain_star, "target domain (default: same as --domain)");
    cmd->add_option("--alpha0", p.alpha0, "Bonnet angle (radians)");
    cmd->add_option("--lambda", p.lambda, "uniform stretch factor");
    cmd->add_option("--g", p.g_expr, "holomorphic generator for lambda e^{i beta}");
    cmd->add_option("--kappa", p.kappa, "Goursat scaling parameter");
    cmd->add_option("--mobius", p.mobius, "Moebius coefficients a;b;c;d");
    cmd->add_option("--mobius-special", p.mobius_special, "special Moebius a;c");
}

// ---------------------------------------------------------------------------
// output helpers

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot write " + path.string());
    f << text;
}

void write_report(const fs::path& outdir, const json& report) {
    fs::create_directories(outdir);
    write_text(outdir / "report.json", report.dump(2) + "\n");
}

void export_mesh(const SampledSurface& mesh, const fs::path& outdir, const std::string& name,
                 const std::string& format) {
    fs::create_directories(outdir);
    if (format == "obj") {
        export_obj(mesh, (outdir / (name + ".obj")).string());
        export_fields_csv(mesh, (outdir / (name + "_fields.csv")).string());
    } else if (format == "ply") {
        export_ply(mesh, (outdir / (name + ".ply")).string());
    } else {
        throw ParseError("format must be obj or ply");
    }
}

struct FieldStats {
    double min = std::numeric_limits<double>::infinity();
    double max = -std::numeric_limits<double>::infinity();
    double sup_abs = 0.0;
    void add(double v) {
        min = std::min(min, v);
        max = std::max(max, v);
        sup_abs = std::max(sup_abs, std::abs(v));
    }
};

json stats_json(const FieldStats& s) {
    return json{{"min", s.min}, {"max", s.max}, {"sup", s.sup_abs}};
}

// ---------------------------------------------------------------------------
// subcommand payloads

int run_surface(const std::string& F, const DomainOpt& dom, const GridOpt& grid,
                const std::string& format, const fs::path& outdir, const std::string& name) {
    const DomainSpec domain = parse_domain(dom);
    const HolomorphicFn fn = parse_expression(F);
    check_holomorphy(fn, domain, "F");
    WeierstrassSurface surf(fn, domain);
    const SampledSurface mesh = sample(surf, parse_grid(grid));
    export_mesh(mesh, outdir, name, format);
    json report{{"command", "surface"},
                {"F", surf.weierstrass_fn().to_string()},
                {"vertices", 0},
                {"faces", mesh.faces.size()}};
    int included = 0;
    for (const auto& v : mesh.vertices)
        if (!v.excluded) ++included;
    report["vertices"] = included;
    write_report(outdir, report);
    std::cout << "surface: " << included << " vertices, " << mesh.faces.size() << " faces -> "
              << (outdir / (name + "." + format)).string() << "\n";
    return kExitOk;
}

int run_energies(const PairOpt& popt, const GridOpt& grid, const std::string& moduli_str,
                 const std::string& format, const fs::path& outdir) {
    const DeformationPair pair = build_pair(popt);
    const Moduli mu = parse_moduli(moduli_str);
    const GridSpec gs = parse_grid(grid);
    const SampledSurface src_mesh = sample(pair, gs, PairGeometry::source);
    const SampledSurface tgt_mesh = sample(pair, gs, PairGeometry::target);
    export_mesh(src_mesh, outdir, "source", format);
    export_mesh(tgt_mesh, outdir, "target", format);

    FieldStats ws, wd, wb, wt;
    std::ostringstream csv;
    csv << "i0,i1,u,v,Ws,Wd,Wb,W\n";
    for (int i = 0; i < gs.n0; ++i)
        for (int j = 0; j < gs.n1; ++j) {
            const auto& v = src_mesh.vertices[i * gs.n1 + j];
            if (v.excluded) continue;
            const double total = weighted_total(v.Ws, v.Wd, v.Wb, mu);
            ws.add(v.Ws);
            wd.add(v.Wd);
            wb.add(v.Wb);
            wt.add(total);
            csv << i << "," << j << "," << format_float(v.w.real()) << ","
                << format_float(v.w.imag()) << "," << format_float(v.Ws) << ","
                << format_float(v.Wd) << "," << format_float(v.Wb) << "," << format_float(total)
                << "\n";
        }
    fs::create_directories(outdir);
    write_text(outdir / "summary.csv", csv.str());

    json report{{"command", "energies"},
                {"moduli", {{"mu_s", mu.mu_s}, {"mu_d", mu.mu_d}, {"mu_b", mu.mu_b}}},
                {"W_s", stats_json(ws)},
                {"W_d", stats_json(wd)},
                {"W_b", stats_json(wb)},
                {"W", stats_json(wt)}};
    write_report(outdir, report);
    std::cout << "energies: sup W_s = " << format_float(ws.sup_abs)
              << ", sup W_d = " << format_float(wd.sup_abs)
              << ", sup W_b = " << format_float(wb.sup_abs) << "\n";
    return kExitOk;
}

int run_classify(const PairOpt& popt, int n_probes, double tol, const fs::path& outdir,
                 bool have_outdir) {
    const DeformationPair pair = build_pair(popt);
    const NeutralityReport rep = classify(pair, n_probes, tol);
    std::cout << to_string(rep.classification) << "\n";
    std::cout << "  stretching_residual = " << format_float(rep.stretching_residual) << "\n";
    std::cout << "  drilling_residual   = " << format_float(rep.drilling_residual) << "\n";
    std::cout << "  bending_residual    = " << format_float(rep.bending_residual) << "\n";
    if (have_outdir) {
        json report{{"command", "classify"},
                    {"classification", to_string(rep.classification)},
                    {"stretching_residual", rep.stretching_residual},
                    {"drilling_residual", rep.drilling_residual},
                    {"bending_residual", rep.bending_residual},
                    {"tol", tol}};
        write_report(outdir, report);
    }
    return kExitOk;
}

int run_verify(int probes_per_pair, double tol_analytic, double tol_oracle,
               const fs::path& outdir, bool have_outdir) {
    const auto results = run_verification_suites(probes_per_pair, tol_analytic, tol_oracle);
    json suites = json::array();
    bool all_passed = true;
    for (const auto& r : results) {
        std::cout << (r.passed ? "[PASS] " : "[FAIL] ") << r.name
                  << ": max deviation = " << format_float(r.max_deviation)
                  << " (tol " << format_float(r.tolerance) << ", worst: " << r.worst_case << ")\n";
        suites.push_back(json{{"name", r.name},
                              {"max_deviation", r.max_deviation},
                              {"tolerance", r.tolerance},
                              {"passed", r.passed},
                              {"worst_case", r.worst_case}});
        all_passed = all_passed && r.passed;
    }
    if (have_outdir)
        write_report(outdir, json{{"command", "verify"},
                                  {"passed", all_passed},
                                  {"suites", suites}});
    return all_passed ? kExitOk : kExitCheckFailed;
}

// Rows of the closed-form-vs-computed table: a fixed radius list that always
// contains |w| = 1, evaluated off the real axis (theta = pi/4).
std::vector<double> table_radii() {
    return {std::exp(-1.0), 0.5, 1.0 / std::sqrt(2.0), 1.0, std::sqrt(2.0), 2.0, std::exp(1.0)};
}

struct ReproduceCase {
    std::string name;
    DeformationPair pair;
    std::function<std::array<double, 3>(Complex)> golden;
};

int run_reproduce(const std::string& case_name, double kappa, double lambda,
                  const GridOpt& grid, const std::string& format, double tol,
                  const fs::path& outdir) {
    std::vector<ReproduceCase> cases;
    const DomainSpec ann = example_annulus();
    if (case_name == "soft-elasticity") {
        // the figure panels: (a=i, c=-1, alpha0=0) and (a=1, c=-1) for each alpha0
        cases.push_back({"soft_b_ai_a0", make_bonnet(bour_m1_fn(), ann, 0.0,
                                                     Mobius::special(Complex(0, 1), -1.0)),
                         [](Complex) { return std::array<double, 3>{0, 0, 0}; }});
        const double alphas[] = {0.0, M_PI / 6.0, M_PI / 4.0, M_PI / 2.0};
        const char* names[] = {"soft_c_a1_a0", "soft_d_a1_pi6", "soft_e_a1_pi4", "soft_f_a1_pi2"};
        for (int i = 0; i < 4; ++i)
            cases.push_back({names[i], make_bonnet(bour_m1_fn(), ann, alphas[i],
                                                   Mobius::special(1.0, -1.0)),
                             [](Complex) { return std::array<double, 3>{0, 0, 0}; }});
    } else if (case_name == "dilation") {
        cases.push_back({"dilation", make_dilation(bour_m1_fn(), ann, lambda),
                         [lambda](Complex w) { return dilation_golden(lambda, w); }});
    } else if (case_name == "enneper-bour3") {
        cases.push_back({"enneper_bour3", enneper_to_bour3_pair(),
                         [](Complex w) { return enneper_bour3_golden(w); }});
    } else if (case_name == "goursat-kappa") {
        cases.push_back({"goursat_kappa", goursat_kappa_pair(kappa),
                         [kappa](Complex w) { return goursat_kappa_golden(kappa, w); }});
    } else {
        throw ParseError("unknown case '" + case_name +
                         "' (soft-elasticity|dilation|enneper-bour3|goursat-kappa)");
    }

    fs::create_directories(outdir);
    json report{{"command", "reproduce"}, {"case", case_name}, {"cases", json::array()}};
    double overall_dev = 0.0;
    std::ostringstream table;
    table << "case,rho,Ws_computed,Ws_closed,Wd_computed,Wd_closed,Wb_computed,Wb_closed\n";

    bool exported_source = false;
    for (const auto& rc : cases) {
        const SampledSurface tgt = sample(rc.pair, parse_grid(grid), PairGeometry::target);
        export_mesh(tgt, outdir, rc.name + "_target", format);
        if (!exported_source) {
            const SampledSurface src = sample(rc.pair, parse_grid(grid), PairGeometry::source);
            export_mesh(src, outdir, "source", format);
            exported_source = true;
        }

        json rows = json::array();
        double case_dev = 0.0;
        for (double rho : table_radii()) {
            const Complex w = std::polar(rho, M_PI / 4.0);
            if (!rc.pair.source().domain().contains(w)) continue;
            const double ws = stretching_density(rc.pair, w);
            const double wd = drilling_density(rc.pair, w);
            const double wb = bending_density(rc.pair, w);
            const auto g = rc.golden(w);
            for (int k = 0; k < 3; ++k) {
                const double computed = (k == 0 ? ws : k == 1 ? wd : wb);
                case_dev = std::max(case_dev,
                                    std::abs(computed - g[k]) /
                                        std::max({1e-3, std::abs(computed), std::abs(g[k])}));
            }
            table << rc.name << "," << format_float(rho) << "," << format_float(ws) << ","
                  << format_float(g[0]) << "," << format_float(wd) << "," << format_float(g[1])
                  << "," << format_float(wb) << "," << format_float(g[2]) << "\n";
            rows.push_back(json{{"rho", rho},
                                {"Ws", ws},
                                {"Ws_closed", g[0]},
                                {"Wd", wd},
                                {"Wd_closed", g[1]},
                                {"Wb", wb},
                                {"Wb_closed", g[2]}});
        }
        // grid-wide deviation from the closed forms
        for (const auto& v : tgt.vertices) {
            if (v.excluded) continue;
            const auto g = rc.golden(v.w);
            case_dev = std::max(
                case_dev, std::abs(v.Ws - g[0]) / std::max({1e-3, std::abs(v.Ws), std::abs(g[0])}));
            case_dev = std::max(
                case_dev, std::abs(v.Wd - g[1]) / std::max({1e-3, std::abs(v.Wd), std::abs(g[1])}));
            case_dev = std::max(
                case_dev, std::abs(v.Wb - g[2]) / std::max({1e-3, std::abs(v.Wb), std::abs(g[2])}));
        }
        overall_dev = std::max(overall_dev, case_dev);
        report["cases"].push_back(json{{"name", rc.name},
                                       {"max_rel_deviation", case_dev},
                                       {"rows", rows}});
        std::cout << rc.name << ": max closed-form deviation " << format_float(case_dev) << "\n";
    }
    write_text(outdir / "energies.csv", table.str());
    report["max_rel_deviation"] = overall_dev;
    report["tol"] = tol;
    report["passed"] = overall_dev <= tol;
    write_report(outdir, report);
    if (overall_dev > tol) {
        std::cerr << "reproduce: deviation " << overall_dev << " exceeds tol " << tol << "\n";
        return kExitCheckFailed;
    }
    return kExitOk;
}

json error_report(const std::string& kind, const std::string& what, int code) {
    return json{{"status", "error"}, {"kind", kind}, {"exit_code", code}, {"detail", what}};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"minimal-surface deformation modes: geometry, energy densities, neutrality"};
    app.require_subcommand(1);
    app.set_config("--config");

    std::string outdir_str = "out";
    app.add_option("--out", outdir_str, "output directory")->capture_default_str();

    // surface
    auto* c_surface = app.add_subcommand("surface", "sample a surface and export a mesh")->configurable();
    std::string surf_F = "recip(id)";
    DomainOpt surf_dom;
    GridOpt surf_grid;
    std::string surf_format = "ply";
    std::string surf_name = "surface";
    c_surface->add_option("--F", surf_F, "Weierstrass expression");
    c_surface->add_option("--domain", surf_dom.spec, "domain spec");
    c_surface->add_option("--exclude", surf_dom.exclusions, "excluded point re,im,radius");
    c_surface->add_option("--grid", surf_grid.spec, "grid NxM");
    c_surface->add_option("--theta-min", surf_grid.theta_min, "angular range start");
    c_surface->add_option("--theta-max", surf_grid.theta_max,
                          "angular range end (may exceed 2 pi)");
    c_surface->add_option("--format", surf_format, "obj|ply");
    c_surface->add_option("--name", surf_name, "output base name");

    // energies
    auto* c_energies =
        app.add_subcommand("energies", "per-vertex energy densities of a deformation pair")->configurable();
    PairOpt en_pair;
    GridOpt en_grid;
    std::string en_moduli = "1,1,1";
    std::string en_format = "ply";
    add_pair_options(c_energies, en_pair);
    c_energies->add_option("--grid", en_grid.spec, "grid NxM");
    c_energies->add_option("--theta-min", en_grid.theta_min, "angular range start");
    c_energies->add_option("--theta-max", en_grid.theta_max, "angular range end");
    c_energies->add_option("--moduli", en_moduli, "mu_s,mu_d,mu_b");
    c_energies->add_option("--format", en_format, "obj|ply");

    // classify
    auto* c_classify = app.add_subcommand("classify", "neutral-mode classification of a pair")->configurable();
    PairOpt cl_pair;
    int cl_probes = 200;
    double cl_tol = kNeutralTol;
    add_pair_options(c_classify, cl_pair);
    c_classify->add_option("--probes", cl_probes, "number of quasi-random probes");
    c_classify->add_option("--tol", cl_tol, "neutrality tolerance");

    // verify
    auto* c_verify =
        app.add_subcommand("verify", "cross-route and finite-difference verification suites")->configurable();
    int vf_probes = 50;
    double vf_tol_analytic = 1e-8, vf_tol_oracle = 1e-4;
    c_verify->add_option("--probes", vf_probes, "probes per pair");
    c_verify->add_option("--tol-analytic", vf_tol_analytic, "closed-vs-connector tolerance");
    c_verify->add_option("--tol-oracle", vf_tol_oracle, "FD oracle tolerance");

    // reproduce
    auto* c_reproduce =
        app.add_subcommand("reproduce", "regenerate a worked example case with meshes and tables")->configurable();
    std::string rp_case;
    double rp_kappa = 2.0, rp_lambda = 2.0, rp_tol = 1e-9;
    GridOpt rp_grid;
    std::string rp_format = "ply";
    c_reproduce
        ->add_option("case", rp_case, "soft-elasticity|dilation|enneper-bour3|goursat-kappa")
        ->required();
    c_reproduce->add_option("--kappa", rp_kappa, "Goursat parameter");
    c_reproduce->add_option("--lambda", rp_lambda, "dilation factor");
    c_reproduce->add_option("--grid", rp_grid.spec, "grid NxM");
    c_reproduce->add_option("--format", rp_format, "obj|ply");
    c_reproduce->add_option("--tol", rp_tol, "closed-form agreement tolerance");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);  // prints help/usage message
        return code == 0 ? kExitOk : kExitConfig;
    }

    const fs::path outdir = outdir_str;
    const bool have_outdir = app.count("--out") > 0;
    try {
        if (*c_surface)
            return run_surface(surf_F, surf_dom, surf_grid, surf_format, outdir, surf_name);
        if (*c_energies) return run_energies(en_pair, en_grid, en_moduli, en_format, outdir);
        if (*c_classify) return run_classify(cl_pair, cl_probes, cl_tol, outdir, have_outdir);
        if (*c_verify)
            return run_verify(vf_probes, vf_tol_analytic, vf_tol_oracle, outdir, have_outdir);
        if (*c_reproduce)
            return run_reproduce(rp_case, rp_kappa, rp_lambda, rp_grid, rp_format, rp_tol,
                                 outdir);
    } catch (const ParseError& e) {
        std::cerr << error_report("parse", e.what(), kExitConfig).dump() << "\n";
        return kExitConfig;
    } catch (const InvalidParamsError& e) {
        std::cerr << error_report("invalid-params", e.what(), kExitConfig).dump() << "\n";
        return kExitConfig;
    } catch (const DomainViolationError& e) {
        std::cerr << error_report("domain", e.what(), kExitConfig).dump() << "\n";
        return kExitConfig;
    } catch (const Error& e) {
        std::cerr << error_report("numerical", e.what(), kExitCheckFailed).dump() << "\n";
        return kExitCheckFailed;
    } catch (const std::exception& e) {
        std::cerr << error_report("config", e.what(), kExitConfig).dump() << "\n";
        return kExitConfig;
    }
    return kExitConfig;
}
