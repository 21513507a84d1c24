// Command-line front end: every operation as a reproducible, scriptable run
// emitting CSV/JSON plot data. No timestamps inside data files; meta.json
// carries the effective configuration of the run.

#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "ttw/classical.hpp"
#include "ttw/coherent.hpp"
#include "ttw/io.hpp"
#include "ttw/oracle.hpp"
#include "ttw/spectrum.hpp"

using json = nlohmann::ordered_json;
using namespace ttw;
namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitInfeasible = 4;
constexpr int kExitIntegrator = 5;
constexpr int kExitInconclusive = 6;

const char* kConventionResolved = "Resolved";
const char* kConventionReference = "PaperEqE";
const char* kArgumentCosTwoTheta = "cos2T";
const char* kArgumentTwoSinSq = "2sin2m1";

json default_config() {
    return json{
        {"omega", 1.0},
        {"alpha", 0.0},
        {"beta", 0.0},
        {"k", "1"},
        {"spectrum", {{"e_max", 30.0}, {"convention", kConventionResolved}}},
        {"eigenstate",
         {{"n_r", 0}, {"l1", 0}, {"r_max", 4.0}, {"n_r_samples", 48}, {"n_theta_samples", 48},
          {"quad_order", 128}}},
        {"coherent",
         {{"e_target", 6.0}, {"split", 0.5}, {"phase_u", 0.0}, {"phase_v", 0.0},
          {"t_max", M_PI}, {"n_t_samples", 160}, {"l1_max", 24}, {"nr_max", 48},
          {"tail_tol", 1e-8}, {"quad_order", 96}, {"snapshots", 0}, {"snapshot_grid", 40}}},
        {"classical",
         {{"r", 2.0}, {"theta", -1.0}, {"p_r", 0.0}, {"p_theta", 1.0}, {"t_end", 4.0 * M_PI},
          {"tol", 1e-10}, {"n_samples", 1200}, {"max_radial_periods", 12},
          {"closure_tol", 1e-6}}},
        {"validate",
         {{"n_points", 800}, {"l1_max", 2}, {"n_radial", 5}, {"tolerance", 1e-3},
          {"alphas", json::array({0.0, 2.0})}, {"betas", json::array({0.0, 2.0})},
          {"ks", json::array({"1", "2", "3", "3/2"})},
          {"identity",
           {{"p_phi", 0.5}, {"p_psi", 1.5}, {"l1_max", 30}, {"threshold", 1e-8},
            {"pairs", json::array({json::array({0.8, 1.1}), json::array({0.5, 2.0}),
                                   json::array({1.5, 0.7})})}}}}},
    };
}

void merge_over(json& base, const json& overlay) {
    for (auto it = overlay.begin(); it != overlay.end(); ++it) {
        if (it->is_object() && base.contains(it.key()) && base[it.key()].is_object())
            merge_over(base[it.key()], *it);
        else
            base[it.key()] = *it;
    }
}

Rational parse_k(const std::string& text) {
    if (text.find('/') == std::string::npos && text.find('.') != std::string::npos)
        std::cerr << "warning: decimal k '" << text
                  << "' converted to an exact rational; pass p/q to silence\n";
    Rational k = Rational::parse(text);
    if (k.num() < 1) throw std::domain_error("k must be positive");
    return k;
}

PotentialParams params_from(const json& cfg) {
    return PotentialParams(cfg.at("omega").get<double>(), cfg.at("alpha").get<double>(),
                           cfg.at("beta").get<double>(), parse_k(cfg.at("k").get<std::string>()));
}

void write_meta(const fs::path& out_dir, const std::string& command, const json& cfg,
                const std::vector<std::string>& outputs) {
    json meta{{"tool", "ttw"}, {"command", command}, {"outputs", outputs}, {"config", cfg}};
    io::write_file_atomic(out_dir / "meta.json", meta.dump(2) + "\n");
}

int cmd_spectrum(const json& cfg, const fs::path& out_dir) {
    PotentialParams params = params_from(cfg);
    const json& sc = cfg.at("spectrum");
    std::string conv_text = sc.at("convention").get<std::string>();
    if (conv_text != kConventionReference && conv_text != kConventionResolved)
        throw std::invalid_argument("spectrum: convention must be Resolved or PaperEqE");
    auto convention = conv_text == kConventionReference ? SpectrumConvention::reference
                                                        : SpectrumConvention::resolved;
    auto levels = spectrum::enumerate_levels(params, sc.at("e_max").get<double>(), convention);

    std::string csv = "n_r,l1,energy,degeneracy_class_id,class_size\n";
    for (const auto& lvl : levels) {
        csv += std::to_string(lvl.qn.n_r) + "," + std::to_string(lvl.qn.l1) + "," +
               io::format_double(lvl.energy) + "," + std::to_string(lvl.class_id) + "," +
               std::to_string(lvl.class_size) + "\n";
    }
    io::write_file_atomic(out_dir / "levels.csv", csv);
    write_meta(out_dir, "spectrum", cfg, {"levels.csv"});
    return kExitOk;
}

int cmd_eigenstate(const json& cfg, const fs::path& out_dir) {
    PotentialParams params = params_from(cfg);
    const json& ec = cfg.at("eigenstate");
    QuantumNumbers qn(ec.at("n_r").get<int>(), ec.at("l1").get<int>());
    double c = spectrum::norm_constant(qn, params, ec.at("quad_order").get<int>());
    int nr = ec.at("n_r_samples").get<int>(), nt = ec.at("n_theta_samples").get<int>();
    double r_max = ec.at("r_max").get<double>();

    std::string csv = "r,theta,psi\n";
    for (int i = 0; i <= nr; ++i) {
        double r = r_max * i / nr;
        for (int j = 0; j <= nt; ++j) {
            double theta = params.theta_max() * j / nt;
            double psi = c * spectrum::eigenstate(qn, params, r, theta);
            csv += io::format_double(r) + "," + io::format_double(theta) + "," +
                   io::format_double(psi) + "\n";
        }
    }
    io::write_file_atomic(out_dir / "eigenstate.csv", csv);
    write_meta(out_dir, "eigenstate", cfg, {"eigenstate.csv"});
    return kExitOk;
}

int cmd_coherent(const json& cfg, const fs::path& out_dir) {
    PotentialParams params = params_from(cfg);
    const json& cc = cfg.at("coherent");
    auto amplitudes = coherent::constrain_amplitudes(
        cc.at("e_target").get<double>(), params, cc.at("phase_u").get<double>(),
        cc.at("phase_v").get<double>(), cc.at("split").get<double>());
    coherent::SeriesTruncation trunc(cc.at("l1_max").get<int>(), cc.at("nr_max").get<int>(),
                                     cc.at("tail_tol").get<double>());
    coherent::CoherentEvaluator evaluator(amplitudes, params, trunc,
                                          cc.at("quad_order").get<int>());

    double E = coherent::mechanical_energy(amplitudes);
    double A = coherent::angular_charge(amplitudes);
    double t0 = coherent::r2_reference_time(amplitudes);
    double alpha_eff =
        std::pow(params.k_value() * params.p_phi(), 2) - 0.25;  // k-rescaled charge slot

    int n_t = cc.at("n_t_samples").get<int>();
    double t_max = cc.at("t_max").get<double>();
    std::string csv = "t,exp_r2_analytic,exp_r2_series,exp_u2,exp_sin2theta\n";
    for (int i = 0; i <= n_t; ++i) {
        double t = t_max * i / n_t;
        csv += io::format_double(t) + "," +
               io::format_double(coherent::expectation_r2(E, A, params.omega, t, t0)) + "," +
               io::format_double(evaluator.expectation_r2_series(t)) + "," +
               io::format_double(coherent::expectation_u2(amplitudes, t, alpha_eff)) + "," +
               io::format_double(coherent::expectation_sin2_theta(amplitudes, params, t)) + "\n";
    }
    io::write_file_atomic(out_dir / "coherent.csv", csv);
    std::vector<std::string> outputs{"coherent.csv", "coherent_coefficients.csv"};

    std::string table = "l1,n_r,coeff_re,coeff_im\n";
    for (const auto& entry : evaluator.coefficient_table())
        table += std::to_string(entry.l1) + "," + std::to_string(entry.n_r) + "," +
                 io::format_double(entry.value.real()) + "," +
                 io::format_double(entry.value.imag()) + "\n";
    io::write_file_atomic(out_dir / "coherent_coefficients.csv", table);

    int snapshots = cc.at("snapshots").get<int>();
    int grid = cc.at("snapshot_grid").get<int>();
    double r_max = 1.5 * std::sqrt(E / (params.omega * params.omega));
    for (int f = 0; f < snapshots; ++f) {
        double t = snapshots > 1 ? t_max * f / (snapshots - 1) : 0.0;
        std::string snap = "r,theta,density\n";
        for (int i = 0; i <= grid; ++i) {
            double r = r_max * i / grid;
            for (int j = 0; j <= grid; ++j) {
                double theta = params.theta_max() * j / grid;
                double d = std::norm(evaluator.evaluate_with_tail(t, r, theta).value);
                snap += io::format_double(r) + "," + io::format_double(theta) + "," +
                        io::format_double(d) + "\n";
            }
        }
        std::string name = "coherent_snapshot_" + std::to_string(f) + ".csv";
        io::write_file_atomic(out_dir / name, snap);
        outputs.push_back(name);
    }
    write_meta(out_dir, "coherent", cfg, outputs);
    return kExitOk;
}

int cmd_classical(const json& cfg, const fs::path& out_dir) {
    PotentialParams params = params_from(cfg);
    const json& kc = cfg.at("classical");
    classical::ClassicalState s0;
    s0.r = kc.at("r").get<double>();
    s0.theta = kc.at("theta").get<double>();
    if (s0.theta < 0.0) s0.theta = 0.5 * params.theta_max();  // wedge midpoint default
    s0.p_r = kc.at("p_r").get<double>();
    s0.p_theta = kc.at("p_theta").get<double>();

    double t_end = kc.at("t_end").get<double>();
    double tol = kc.at("tol").get<double>();
    int n = kc.at("n_samples").get<int>();
    std::vector<double> ts(n);
    for (int i = 0; i < n; ++i) ts[i] = t_end * i / (n - 1.0);

    auto traj = classical::integrate(s0, params, t_end, tol, ts);
    std::string csv = "t,r,theta,p_r,p_theta,energy,angular_charge\n";
    for (std::size_t i = 0; i < traj.t.size(); ++i) {
        const auto& s = traj.states[i];
        csv += io::format_double(traj.t[i]) + "," + io::format_double(s.r) + "," +
               io::format_double(s.theta) + "," + io::format_double(s.p_r) + "," +
               io::format_double(s.p_theta) + "," + io::format_double(traj.energy[i]) + "," +
               io::format_double(traj.charge[i]) + "\n";
    }
    io::write_file_atomic(out_dir / "trajectory.csv", csv);

    auto closure = classical::closure_detect(s0, params, kc.at("max_radial_periods").get<int>(),
                                             kc.at("closure_tol").get<double>());
    json report{{"closure_time", nullptr},
                {"residual", nullptr},
                {"max_radial_periods", kc.at("max_radial_periods").get<int>()},
                {"tolerance", kc.at("closure_tol").get<double>()},
                {"energy", traj.energy0},
                {"angular_charge", traj.angular_charge0}};
    if (closure) {
        report["closure_time"] = closure->time;
        report["residual"] = closure->residual;
    }
    io::write_file_atomic(out_dir / "closure.json", report.dump(2) + "\n");
    write_meta(out_dir, "classical", cfg, {"trajectory.csv", "closure.json"});
    return kExitOk;
}

int cmd_validate(const json& cfg, const fs::path& out_dir) {
    const json& vc = cfg.at("validate");
    double omega = cfg.at("omega").get<double>();
    int n_points = vc.at("n_points").get<int>();
    int l1_max = vc.at("l1_max").get<int>();
    int n_radial = vc.at("n_radial").get<int>();
    double tolerance = vc.at("tolerance").get<double>();

    std::vector<double> alphas = vc.at("alphas").get<std::vector<double>>();
    std::vector<double> betas = vc.at("betas").get<std::vector<double>>();
    std::vector<Rational> ks;
    for (const auto& s : vc.at("ks")) ks.push_back(parse_k(s.get<std::string>()));

    json report;

    // angular oracle detail
    json angular = json::array();
    for (double a : alphas)
        for (double b : betas) {
            auto ev = oracle::angular_eigenvalues(a, b, l1_max + 1,
                                                  oracle::default_angular_grid(n_points));
            json analytic = json::array();
            double p = std::sqrt(a + 0.25), q = std::sqrt(b + 0.25);
            for (int l = 0; l <= l1_max; ++l)
                analytic.push_back(std::pow(2.0 * l + p + q + 1.0, 2));
            angular.push_back(
                {{"alpha", a}, {"beta", b}, {"eigenvalues", ev}, {"analytic", analytic}});
        }
    report["angular"] = angular;

    // spectrum convention arbitration (radial oracle composed with angular)
    auto arb = oracle::arbitrate_spectrum_convention(alphas, betas, ks, omega, l1_max, n_radial,
                                                     n_points, tolerance);
    json radial = json::array();
    for (const auto& sc : arb.cases) {
        radial.push_back({{"alpha", sc.alpha},
                          {"beta", sc.beta},
                          {"k", sc.k.str()},
                          {"l1", sc.l1},
                          {"oracle_energies", sc.oracle_energies},
                          {"max_rel_err_reference", sc.max_rel_err_reference},
                          {"max_rel_err_resolved", sc.max_rel_err_resolved}});
    }
    report["radial"] = radial;

    // Bessel-product identity arbitration
    const json& ic = vc.at("identity");
    double p_phi = ic.at("p_phi").get<double>(), p_psi = ic.at("p_psi").get<double>();
    double threshold = ic.at("threshold").get<double>();
    int id_l1max = ic.at("l1_max").get<int>();
    bool sym_all = true, printed_any = false, decaying = true;
    json id_cases = json::array();
    for (const auto& pr : ic.at("pairs")) {
        double x = pr[0].get<double>(), y = pr[1].get<double>();
        auto rep = oracle::bessel_product_identity_check(p_phi, p_psi, x, y, id_l1max);
        sym_all = sym_all && rep.residual_symmetric < threshold;
        printed_any = printed_any || rep.residual_printed < threshold;
        decaying = decaying && oracle::residual_tail_decays(rep.residual_by_l_symmetric);
        id_cases.push_back({{"x", x},
                            {"y", y},
                            {"lhs", rep.lhs},
                            {"residual_printed", rep.residual_printed},
                            {"residual_symmetric", rep.residual_symmetric}});
    }
    bool identity_symmetric_case = std::abs(p_phi - p_psi) < 1e-14;
    std::string identity_winner =
        identity_symmetric_case ? "indistinguishable-symmetric"
                                : (sym_all && !printed_any ? "symmetric"
                                                           : (printed_any && !sym_all ? "printed"
                                                                                      : "inconclusive"));
    report["identity"] = {{"p_phi", p_phi},
                          {"p_psi", p_psi},
                          {"l1_max", id_l1max},
                          {"threshold", threshold},
                          {"cases", id_cases},
                          {"monotone_tail_decay", decaying},
                          {"winner", identity_winner}};

    // Jacobi argument arbitration
    double a_probe = 2.0, b_probe = 0.75;
    auto jac = oracle::arbitrate_angular_argument(a_probe, b_probe);
    report["jacobi_argument"] = {{"alpha", a_probe},
                                 {"beta", b_probe},
                                 {"residual_cos2T", jac.residual_cos_two_theta},
                                 {"residual_2sin2m1", jac.residual_two_sin_sq}};

    report["spectrum_convention_winner"] =
        arb.winner == SpectrumConvention::resolved ? kConventionResolved : kConventionReference;
    report["jacobi_argument_winner"] = jac.winner == AngularArgument::cos_two_theta
                                           ? kArgumentCosTwoTheta
                                           : kArgumentTwoSinSq;

    bool conclusive = arb.conclusive && (identity_winner != "inconclusive") &&
                      (jac.residual_cos_two_theta < 1e-8) != (jac.residual_two_sin_sq < 1e-8);
    report["conclusive"] = conclusive;

    io::write_file_atomic(out_dir / "report.json", report.dump(2) + "\n");
    write_meta(out_dir, "validate", cfg, {"report.json"});
    return conclusive ? kExitOk : kExitInconclusive;
}

int cmd_specfun_probe(const std::string& fn, const std::string& args_text) {
    std::vector<double> args;
    std::stringstream ss(args_text);
    std::string tok;
    while (std::getline(ss, tok, ',')) args.push_back(std::stod(tok));

    auto need = [&](std::size_t n) {
        if (args.size() != n)
            throw std::invalid_argument("specfun-probe: " + fn + " takes " + std::to_string(n) +
                                        " comma-separated args");
    };
    if (fn == "gamma") {
        need(1);
        std::printf("%s\n", io::format_double(specfun::gamma_real(args[0])).c_str());
    } else if (fn == "laguerre") {
        need(3);
        std::printf("%s\n",
                    io::format_double(specfun::laguerre(static_cast<int>(args[0]), args[1],
                                                        args[2]))
                        .c_str());
    } else if (fn == "jacobi") {
        need(4);
        std::printf("%s\n",
                    io::format_double(specfun::jacobi(static_cast<int>(args[0]), args[1], args[2],
                                                      args[3]))
                        .c_str());
    } else if (fn == "besselj") {
        if (args.size() == 2) {
            std::printf("%s\n", io::format_double(specfun::bessel_j(args[0], args[1])).c_str());
        } else {
            need(3);
            auto v = specfun::bessel_j(args[0], std::complex<double>(args[1], args[2]));
            std::printf("%s\n%s\n", io::format_double(v.real()).c_str(),
                        io::format_double(v.imag()).c_str());
        }
    } else {
        throw std::invalid_argument("specfun-probe: unknown --fn " + fn);
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact eigenstates, conserved-charge coherent states, and classical orbits "
                 "of the anisotropic oscillator-plus-barrier wedge potential"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand

    std::string config_path, out_dir = ".";
    std::optional<double> omega, alpha, beta;
    std::optional<std::string> k_text;
    app.add_option("--config", config_path, "JSON config file (flags override its values)");
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--omega", omega, "oscillator frequency w > 0");
    app.add_option("--alpha", alpha, "sin^-2 barrier strength >= 0");
    app.add_option("--beta", beta, "cos^-2 barrier strength >= 0");
    app.add_option("--k", k_text, "wedge parameter as exact rational p/q");

    auto* sp = app.add_subcommand("spectrum", "enumerate levels and degeneracy classes");
    std::optional<double> emax;
    std::optional<std::string> convention;
    sp->add_option("--emax", emax, "enumerate E <= emax");
    sp->add_option("--convention", convention, "Resolved | PaperEqE");

    auto* eig = app.add_subcommand("eigenstate", "sample one normalized eigenstate on a grid");
    std::optional<int> nr_opt, l1_opt, grid_opt;
    std::optional<double> rmax_opt;
    eig->add_option("--nr", nr_opt, "radial quantum number");
    eig->add_option("--l1", l1_opt, "angular quantum number");
    eig->add_option("--rmax", rmax_opt, "radial grid extent");
    eig->add_option("--samples", grid_opt, "grid samples per axis");

    auto* coh = app.add_subcommand("coherent", "coherent-state expectation time series");
    std::optional<double> etarget, split, phase_u, phase_v, tmax;
    std::optional<int> tsamples, snapshots;
    coh->add_option("--etarget", etarget, "target energy charge E (units of w)");
    coh->add_option("--split", split, "u-pair energy share in (0,1)");
    coh->add_option("--phase-u", phase_u, "u-pair overall phase");
    coh->add_option("--phase-v", phase_v, "v-pair overall phase");
    coh->add_option("--tmax", tmax, "time-series extent");
    coh->add_option("--samples", tsamples, "number of time samples");
    coh->add_option("--snapshots", snapshots, "number of |Psi|^2 grid snapshots");

    auto* cla = app.add_subcommand("classical", "integrate an orbit and detect closure");
    std::optional<double> r0, th0, pr0, pth0, tend, ctol, itol;
    std::optional<int> nsamp, periods;
    cla->add_option("--r", r0, "initial r");
    cla->add_option("--theta", th0, "initial theta (default: wedge midpoint)");
    cla->add_option("--pr", pr0, "initial p_r");
    cla->add_option("--ptheta", pth0, "initial p_theta");
    cla->add_option("--tend", tend, "integration span");
    cla->add_option("--tol", itol, "integration tolerance");
    cla->add_option("--samples", nsamp, "trajectory samples");
    cla->add_option("--periods", periods, "closure horizon in radial periods");
    cla->add_option("--closure-tol", ctol, "closure residual tolerance");

    auto* val = app.add_subcommand("validate", "run the numerical oracles and arbitration");
    std::optional<int> npoints;
    val->add_option("--n-points", npoints, "base finite-difference grid size");

    auto* probe = app.add_subcommand("specfun-probe", "evaluate one special function");
    probe->group("");  // debugging aid, hidden from help
    std::string fn, fn_args;
    probe->add_option("--fn", fn, "gamma | laguerre | jacobi | besselj")->required();
    probe->add_option("--args", fn_args, "comma-separated arguments")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        json cfg = default_config();
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) {
                std::cerr << "error: cannot read config " << config_path << "\n";
                return kExitConfig;
            }
            json file_cfg = json::parse(in, nullptr, true, true);
            merge_over(cfg, file_cfg);
        }
        if (omega) cfg["omega"] = *omega;
        if (alpha) cfg["alpha"] = *alpha;
        if (beta) cfg["beta"] = *beta;
        if (k_text) cfg["k"] = *k_text;
        if (emax) cfg["spectrum"]["e_max"] = *emax;
        if (convention) cfg["spectrum"]["convention"] = *convention;
        if (nr_opt) cfg["eigenstate"]["n_r"] = *nr_opt;
        if (l1_opt) cfg["eigenstate"]["l1"] = *l1_opt;
        if (rmax_opt) cfg["eigenstate"]["r_max"] = *rmax_opt;
        if (grid_opt) {
            cfg["eigenstate"]["n_r_samples"] = *grid_opt;
            cfg["eigenstate"]["n_theta_samples"] = *grid_opt;
        }
        if (etarget) cfg["coherent"]["e_target"] = *etarget;
        if (split) cfg["coherent"]["split"] = *split;
        if (phase_u) cfg["coherent"]["phase_u"] = *phase_u;
        if (phase_v) cfg["coherent"]["phase_v"] = *phase_v;
        if (tmax) cfg["coherent"]["t_max"] = *tmax;
        if (tsamples) cfg["coherent"]["n_t_samples"] = *tsamples;
        if (snapshots) cfg["coherent"]["snapshots"] = *snapshots;
        if (r0) cfg["classical"]["r"] = *r0;
        if (th0) cfg["classical"]["theta"] = *th0;
        if (pr0) cfg["classical"]["p_r"] = *pr0;
        if (pth0) cfg["classical"]["p_theta"] = *pth0;
        if (tend) cfg["classical"]["t_end"] = *tend;
        if (itol) cfg["classical"]["tol"] = *itol;
        if (nsamp) cfg["classical"]["n_samples"] = *nsamp;
        if (periods) cfg["classical"]["max_radial_periods"] = *periods;
        if (ctol) cfg["classical"]["closure_tol"] = *ctol;
        if (npoints) cfg["validate"]["n_points"] = *npoints;

        if (probe->parsed()) return cmd_specfun_probe(fn, fn_args);

        fs::path out(out_dir);
        fs::create_directories(out);
        if (sp->parsed()) return cmd_spectrum(cfg, out);
        if (eig->parsed()) return cmd_eigenstate(cfg, out);
        if (coh->parsed()) return cmd_coherent(cfg, out);
        if (cla->parsed()) return cmd_classical(cfg, out);
        if (val->parsed()) return cmd_validate(cfg, out);
        return kExitConfig;
    } catch (const coherent::InfeasibleCharges& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const classical::StepCollapseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIntegrator;
    } catch (const spectrum::QuadratureError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const oracle::NonConvergenceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const specfun::ConvergenceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const json::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::domain_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumeric;
    }
}
