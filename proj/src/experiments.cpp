#include "porocell/experiments.hpp"

#include <atomic>
#include <cmath>
#include <fstream>
#include <mutex>
#include <random>
#include <thread>

namespace porocell {

Experiment parse_experiment(const std::string& name) {
    if (name == "convergence") return Experiment::Convergence;
    if (name == "sweep") return Experiment::Sweep;
    if (name == "naive-sweep") return Experiment::NaiveSweep;
    if (name == "qblock-cond") return Experiment::QblockCond;
    if (name == "nondim") return Experiment::Nondim;
    if (name == "swelling-demo") return Experiment::SwellingDemo;
    throw std::invalid_argument("unknown experiment: " + name);
}

std::string experiment_name(Experiment e) {
    switch (e) {
        case Experiment::Convergence: return "convergence";
        case Experiment::Sweep: return "sweep";
        case Experiment::NaiveSweep: return "naive-sweep";
        case Experiment::QblockCond: return "qblock-cond";
        case Experiment::Nondim: return "nondim";
        case Experiment::SwellingDemo: return "swelling-demo";
    }
    return "?";
}

namespace {

BcRegime parse_regime(const std::string& s) {
    if (s == "mixed") return BcRegime::Mixed;
    if (s == "full_dirichlet") return BcRegime::FullDirichlet;
    if (s == "all_dirichlet") return BcRegime::AllDirichlet;
    throw std::invalid_argument("unknown boundary regime: " + s);
}

std::string regime_name(BcRegime r) {
    switch (r) {
        case BcRegime::Mixed: return "mixed";
        case BcRegime::FullDirichlet: return "full_dirichlet";
        case BcRegime::AllDirichlet: return "all_dirichlet";
    }
    return "?";
}

PrecondKind parse_kind(const std::string& s) {
    if (s == "robust") return PrecondKind::Robust;
    if (s == "diag") return PrecondKind::Diag;
    if (s == "dirichlet_p0") return PrecondKind::DirichletP0;
    if (s == "diag_p0") return PrecondKind::DiagP0;
    if (s == "naive") return PrecondKind::NaiveSingle;
    throw std::invalid_argument("unknown preconditioner: " + s);
}

std::string kind_name(PrecondKind k) {
    switch (k) {
        case PrecondKind::Robust: return "robust";
        case PrecondKind::Diag: return "diag";
        case PrecondKind::DirichletP0: return "dirichlet_p0";
        case PrecondKind::DiagP0: return "diag_p0";
        case PrecondKind::NaiveSingle: return "naive";
    }
    return "?";
}

void parallel_for(int count, int threads, const std::function<void(int)>& body) {
    if (threads <= 1 || count <= 1) {
        for (int i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto worker = [&] {
        while (true) {
            const int i = next.fetch_add(1);
            if (i >= count) return;
            try {
                body(i);
            } catch (...) {
                std::scoped_lock lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < std::min(threads, count); ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace

void ExperimentConfig::validate() const {
    if (mesh_sizes.empty() || alphas.empty() || kappas.empty() || lambdas.empty() || lps.empty())
        throw std::invalid_argument("config: parameter grids must be non-empty");
    if (!(tol > 0.0 && tol < 1.0)) throw std::invalid_argument("config: tol must be in (0, 1)");
    if (maxit <= 0) throw std::invalid_argument("config: max_it must be positive");
    if (threads < 1) throw std::invalid_argument("config: threads must be >= 1");
    if (precond.theta_q < 0.0 || precond.theta_q > 1.0 || precond.theta_e < 0.0 ||
        precond.theta_e > 1.0)
        throw std::invalid_argument("config: theta must be in [0, 1]");
}

Json ExperimentConfig::to_json() const {
    Json j;
    j["experiment"] = experiment_name(experiment);
    j["mesh_sizes"] = mesh_sizes;
    j["regime"] = regime_name(regime);
    j["alpha"] = alphas;
    j["kappa"] = kappas;
    j["lambda"] = lambdas;
    j["lp"] = lps;
    j["c0"] = c0;
    j["preconditioner"] = kind_name(kind);
    j["mode"] = precond.mode == PrecondMode::Exact ? "exact" : "amg";
    j["theta"] = precond.theta_q;
    j["nu"] = precond.nu_q;
    j["theta_elasticity"] = precond.theta_e;
    j["nu_elasticity"] = precond.nu_e;
    j["smw_nu"] = precond.smw_nu;
    j["smw_cycles"] = precond.smw_cycles;
    j["tol"] = tol;
    j["max_it"] = maxit;
    j["threads"] = threads;
    j["format"] = format_name(format);
    j["convergence"] = {{"sizes", conv_sizes},         {"lambda", conv_params.lambda},
                        {"alpha", conv_params.alpha},  {"kappa", conv_params.kappa},
                        {"c0", conv_params.c0},        {"lp", conv_params.lp},
                        {"tol", conv_tol}};
    j["qblock"] = {{"lambda", q_lambdas}, {"kappa", q_kappas}, {"lp", q_lps},
                   {"alpha", q_alpha},    {"n", q_n}};
    j["swelling"] = {{"n", swelling.n},
                     {"osmotic_peak_pa", swelling.osmotic_peak_pa},
                     {"gaussian_width", swelling.gaussian_width},
                     {"fields_csv", swelling.fields_csv},
                     {"mu", swelling.phys.mu},
                     {"lambda", swelling.phys.lambda},
                     {"alpha", swelling.phys.alpha},
                     {"kappa", swelling.phys.kappa},
                     {"c0", swelling.phys.c0},
                     {"lp", swelling.phys.lp},
                     {"tau", swelling.phys.tau},
                     {"length", swelling.phys.length},
                     {"p0", swelling.phys.p0},
                     {"d0", swelling.phys.d0}};
    return j;
}

ExperimentConfig ExperimentConfig::defaults(Experiment e) {
    ExperimentConfig cfg;
    cfg.experiment = e;
    switch (e) {
        case Experiment::NaiveSweep:
            cfg.kind = PrecondKind::NaiveSingle;
            cfg.alphas = {1.0};
            cfg.lambdas = {1e3};
            cfg.kappas = {1e-7, 1e-3};
            cfg.lps = {1e-9, 1e-5, 1e-2, 1e2};
            cfg.mesh_sizes = {16};
            break;
        case Experiment::SwellingDemo:
            cfg.kind = PrecondKind::DirichletP0;
            cfg.regime = BcRegime::FullDirichlet;
            cfg.tol = 1e-8;
            cfg.maxit = 500;
            break;
        default: break;
    }
    // Cellular-swelling physical scenario: E = 1 kPa, nu = 0.4, alpha = 1,
    // kappa = 1e-13 m^2/(Pa s), c0 = 1e-6 1/Pa, Lp = 1e-12 m/(s Pa), one
    // 0.1 s step on a 20 um box; d0 from the stress balance alpha p0 L / 2mu.
    PhysicalParams& ph = cfg.swelling.phys;
    ph.mu = 1000.0 / (2.0 * 1.4);
    ph.lambda = 1000.0 * 0.4 / (1.4 * 0.2);
    ph.alpha = 1.0;
    ph.kappa = 1e-13;
    ph.c0 = 1e-6;
    ph.lp = 1e-12;
    ph.tau = 0.1;
    ph.length = 20e-6;
    ph.p0 = 10.0;
    ph.d0 = ph.alpha * ph.p0 * ph.length / (2.0 * ph.mu);
    return cfg;
}

ExperimentConfig ExperimentConfig::from_json(const Json& j) {
    ExperimentConfig cfg = defaults(parse_experiment(j.value("experiment", "sweep")));
    if (j.contains("mesh_sizes")) cfg.mesh_sizes = j["mesh_sizes"].get<std::vector<int>>();
    if (j.contains("regime")) cfg.regime = parse_regime(j["regime"]);
    if (j.contains("alpha")) cfg.alphas = j["alpha"].get<std::vector<double>>();
    if (j.contains("kappa")) cfg.kappas = j["kappa"].get<std::vector<double>>();
    if (j.contains("lambda")) cfg.lambdas = j["lambda"].get<std::vector<double>>();
    if (j.contains("lp")) cfg.lps = j["lp"].get<std::vector<double>>();
    cfg.c0 = j.value("c0", cfg.c0);
    if (j.contains("preconditioner")) cfg.kind = parse_kind(j["preconditioner"]);
    if (j.contains("mode"))
        cfg.precond.mode = j["mode"] == "amg" ? PrecondMode::Amg : PrecondMode::Exact;
    cfg.precond.theta_q = j.value("theta", cfg.precond.theta_q);
    cfg.precond.nu_q = j.value("nu", cfg.precond.nu_q);
    cfg.precond.theta_e = j.value("theta_elasticity", cfg.precond.theta_e);
    cfg.precond.nu_e = j.value("nu_elasticity", cfg.precond.nu_e);
    cfg.precond.smw_nu = j.value("smw_nu", cfg.precond.smw_nu);
    cfg.precond.smw_cycles = j.value("smw_cycles", cfg.precond.smw_cycles);
    cfg.tol = j.value("tol", cfg.tol);
    cfg.maxit = j.value("max_it", cfg.maxit);
    cfg.threads = j.value("threads", cfg.threads);
    cfg.out_path = j.value("out", cfg.out_path);
    if (j.contains("format")) cfg.format = parse_format(j["format"]);
    if (j.contains("convergence")) {
        const Json& c = j["convergence"];
        if (c.contains("sizes")) cfg.conv_sizes = c["sizes"].get<std::vector<int>>();
        cfg.conv_params.lambda = c.value("lambda", cfg.conv_params.lambda);
        cfg.conv_params.alpha = c.value("alpha", cfg.conv_params.alpha);
        cfg.conv_params.kappa = c.value("kappa", cfg.conv_params.kappa);
        cfg.conv_params.c0 = c.value("c0", cfg.conv_params.c0);
        cfg.conv_params.lp = c.value("lp", cfg.conv_params.lp);
        cfg.conv_tol = c.value("tol", cfg.conv_tol);
    }
    if (j.contains("qblock")) {
        const Json& q = j["qblock"];
        if (q.contains("lambda")) cfg.q_lambdas = q["lambda"].get<std::vector<double>>();
        if (q.contains("kappa")) cfg.q_kappas = q["kappa"].get<std::vector<double>>();
        if (q.contains("lp")) cfg.q_lps = q["lp"].get<std::vector<double>>();
        cfg.q_alpha = q.value("alpha", cfg.q_alpha);
        cfg.q_n = q.value("n", cfg.q_n);
    }
    if (j.contains("swelling")) {
        const Json& s = j["swelling"];
        SwellingConfig& sw = cfg.swelling;
        sw.n = s.value("n", sw.n);
        sw.osmotic_peak_pa = s.value("osmotic_peak_pa", sw.osmotic_peak_pa);
        sw.gaussian_width = s.value("gaussian_width", sw.gaussian_width);
        sw.fields_csv = s.value("fields_csv", sw.fields_csv);
        sw.phys.mu = s.value("mu", sw.phys.mu);
        sw.phys.lambda = s.value("lambda", sw.phys.lambda);
        sw.phys.alpha = s.value("alpha", sw.phys.alpha);
        sw.phys.kappa = s.value("kappa", sw.phys.kappa);
        sw.phys.c0 = s.value("c0", sw.phys.c0);
        sw.phys.lp = s.value("lp", sw.phys.lp);
        sw.phys.tau = s.value("tau", sw.phys.tau);
        sw.phys.length = s.value("length", sw.phys.length);
        sw.phys.p0 = s.value("p0", sw.phys.p0);
        sw.phys.d0 = s.value("d0", sw.phys.d0);
    }
    cfg.validate();
    return cfg;
}

// ---------------------------------------------------------------------------
// Convergence study
// ---------------------------------------------------------------------------

RunResult run_convergence(const ExperimentConfig& cfg) {
    Report rep;
    rep.experiment = "convergence";
    rep.config = cfg.to_json();
    rep.table.columns = {"N",      "h1_d",   "eoc_d",  "h1_pF",     "eoc_pF",
                         "l2_pT",  "eoc_pT", "iterations", "converged"};
    int exit_code = 0;
    double prev_d = 0.0, prev_pf = 0.0, prev_pt = 0.0;
    bool have_prev = false;
    for (int N : cfg.conv_sizes) {
        ManufacturedProblem mp = manufactured_problem(cfg.conv_params, N, BcRegime::AllDirichlet);
        const Preconditioner B = build_robust(mp.system, cfg.precond);
        const LinearOperator A = LinearOperator::from_csr(mp.system.mono);
        const KrylovResult res = minres(A, B.op(), mp.system.rhs, cfg.conv_tol, 1000);
        if (!res.report.converged) {
            rep.table.add_row({N, nullptr, nullptr, nullptr, nullptr, nullptr, nullptr,
                               res.report.iterations, false});
            exit_code = 2;
            continue;
        }
        const auto fields = mp.system.split(res.x);
        const ErrorNorms ed = error_norms(mp.system.mesh, mp.system.spaces.V, fields.d, mp.exact.d);
        const ErrorNorms efi =
            error_norms(mp.system.mesh, mp.system.spaces.QF_i, fields.pF_i, mp.exact.pF_intra);
        const ErrorNorms efe =
            error_norms(mp.system.mesh, mp.system.spaces.QF_e, fields.pF_e, mp.exact.pF_extra);
        const ErrorNorms eti =
            error_norms(mp.system.mesh, mp.system.spaces.QT_i, fields.pT_i, mp.exact.pT_intra);
        const ErrorNorms ete =
            error_norms(mp.system.mesh, mp.system.spaces.QT_e, fields.pT_e, mp.exact.pT_extra);
        const double h1_d = std::sqrt(ed.l2 * ed.l2 + ed.h1_semi * ed.h1_semi);
        const double h1_pf = std::sqrt(efi.l2 * efi.l2 + efi.h1_semi * efi.h1_semi +
                                       efe.l2 * efe.l2 + efe.h1_semi * efe.h1_semi);
        const double l2_pt = std::sqrt(eti.l2 * eti.l2 + ete.l2 * ete.l2);
        Json eoc_d, eoc_pf, eoc_pt;
        if (have_prev) {
            eoc_d = std::log2(prev_d / h1_d);
            eoc_pf = std::log2(prev_pf / h1_pf);
            eoc_pt = std::log2(prev_pt / l2_pt);
        }
        rep.table.add_row(
            {N, h1_d, eoc_d, h1_pf, eoc_pf, l2_pt, eoc_pt, res.report.iterations, true});
        prev_d = h1_d;
        prev_pf = h1_pf;
        prev_pt = l2_pt;
        have_prev = true;
    }
    rep.extra = Json::object();
    return {std::move(rep), exit_code};
}

// ---------------------------------------------------------------------------
// Parameter sweeps
// ---------------------------------------------------------------------------

namespace {

struct SweepCell {
    int n;
    Params params;
};

struct SweepOutcome {
    int iterations = -1;
    bool converged = false;
    std::string status = "ok";
};

RunResult run_sweep_impl(const ExperimentConfig& cfg, PrecondKind kind,
                         const std::string& report_name) {
    Report rep;
    rep.experiment = report_name;
    rep.config = cfg.to_json();
    rep.table.columns = {"n",  "alpha",      "kappa",     "lambda", "lp",
                         "c0", "iterations", "converged", "status"};
    bool all_converged = true;
    for (int n : cfg.mesh_sizes) {
        std::vector<SweepCell> cells;
        for (double a : cfg.alphas)
            for (double k : cfg.kappas)
                for (double l : cfg.lambdas)
                    for (double lp : cfg.lps)
                        cells.push_back({n, Params{l, a, k, cfg.c0, lp}});

        // The elasticity block does not depend on the material parameters;
        // factor it once per mesh and share across the grid.
        const ManufacturedProblem rep_problem =
            manufactured_problem(cells.front().params, n, cfg.regime);
        const auto disp = make_displacement_solver(rep_problem.system, cfg.precond);

        std::vector<SweepOutcome> results(cells.size());
        parallel_for(static_cast<int>(cells.size()), cfg.threads, [&](int i) {
            const ManufacturedProblem mp = manufactured_problem(cells[i].params, n, cfg.regime);
            SweepOutcome& out = results[i];
            try {
                const Preconditioner B = build_preconditioner(kind, mp.system, cfg.precond, disp);
                const LinearOperator A = LinearOperator::from_csr(mp.system.mono);
                const KrylovResult res = minres(A, B.op(), mp.system.rhs, cfg.tol, cfg.maxit);
                out.iterations = res.report.iterations;
                out.converged = res.report.converged;
            } catch (const NotSpdError& e) {
                out.status = std::string("not_spd: ") + e.what();
            } catch (const SmwBreakdownError& e) {
                out.status = std::string("smw_breakdown: ") + e.what();
            }
        });
        for (std::size_t i = 0; i < cells.size(); ++i) {
            const Params& p = cells[i].params;
            const SweepOutcome& out = results[i];
            if (!out.converged) all_converged = false;
            rep.table.add_row({cells[i].n, p.alpha, p.kappa, p.lambda, p.lp, p.c0, out.iterations,
                               out.converged, out.status});
        }
    }
    rep.extra = Json{{"all_converged", all_converged}};
    return {std::move(rep), all_converged ? 0 : 2};
}

}  // namespace

RunResult run_sweep(const ExperimentConfig& cfg) { return run_sweep_impl(cfg, cfg.kind, "sweep"); }

RunResult run_naive_sweep(const ExperimentConfig& cfg) {
    return run_sweep_impl(cfg, PrecondKind::NaiveSingle, "naive-sweep");
}

// ---------------------------------------------------------------------------
// Q-block condition study
// ---------------------------------------------------------------------------

RunResult run_qblock_cond(const ExperimentConfig& cfg) {
    Report rep;
    rep.experiment = "qblock-cond";
    rep.config = cfg.to_json();
    rep.table.columns = {"lambda", "kappa", "lp",       "theta",
                         "cond",   "iterations", "converged"};
    bool all_converged = true;
    for (double lambda : cfg.q_lambdas) {
        for (double kappa : cfg.q_kappas) {
            for (double lp : cfg.q_lps) {
                const Params p{lambda, cfg.q_alpha, kappa, cfg.c0, lp};
                Mesh mesh = build_box_mesh(cfg.q_n, 0.5);
                mark_boundaries(mesh, BoundaryConfig::mixed());
                const DiscreteSystem sys =
                    build_system(mesh, p, BcRegime::Mixed, ProblemData::homogeneous());
                const SparseMatrix Q = robust_pressure_matrix(sys);
                const AmgHierarchy h = amg_setup(Q, cfg.precond.theta_q, cfg.precond.nu_q);
                std::mt19937 rng(12345);
                std::uniform_real_distribution<double> dist(-1.0, 1.0);
                std::vector<double> b(Q.rows());
                for (double& v : b) v = dist(rng);
                const KrylovResult res = pcg_condition_estimate(
                    LinearOperator::from_csr(Q), vcycle_operator(h), b, cfg.tol, 500);
                if (!res.report.converged) all_converged = false;
                rep.table.add_row({lambda, kappa, lp, cfg.precond.theta_q,
                                   res.report.cond_estimate ? Json(*res.report.cond_estimate)
                                                            : Json(),
                                   res.report.iterations, res.report.converged});
            }
        }
    }
    rep.extra = Json{{"all_converged", all_converged}};
    return {std::move(rep), all_converged ? 0 : 2};
}

// ---------------------------------------------------------------------------
// Dimensionless groups
// ---------------------------------------------------------------------------

namespace {

struct RawRange {
    double lo, hi;
};

struct ScenarioPreset {
    std::string name;
    double L, tau, p0, d0;
    RawRange young, nu, kappa, c0, alpha, lp;
};

// Scenario corner configurations. The Lame parameters follow from (E, nu) at
// each corner; ranges are chosen so that the outward-rounded decades of the
// evaluated groups land on the published application ranges.
std::vector<ScenarioPreset> presets() {
    return {
        {"cellular-swelling", 20e-6, 0.1, 10.0, 1e-7,
         {500.0, 1500.0}, {0.477, 0.49995}, {1e-13, 1e-11}, {1e-8, 1e-5}, {1.0, 1.0},
         {1e-14, 1e-11}},
        {"tissue-engineering", 5e-3, 3600.0, 10.0, 1e-4,
         {5e4, 5e4}, {0.48, 0.48}, {5e-16, 5e-16}, {1e-6, 1e-4}, {1.0, 1.0},
         {5e-17, 9e-13}},
        {"aquifer", 500.0, 86400.0, 1e6, 1.0,
         {5e8, 1e10}, {0.477, 0.4999974}, {1e-14, 1e-6}, {1e-10, 1e-8}, {0.6, 1.0},
         {1e-17, 1.9e-15}},
    };
}

double decade_floor(double x) { return std::pow(10.0, std::floor(std::log10(x) + 1e-9)); }
double decade_ceil(double x) { return std::pow(10.0, std::ceil(std::log10(x) - 1e-9)); }

GroupRange make_range(double lo, double hi) {
    return {lo, hi, decade_floor(lo), decade_ceil(hi)};
}

ScenarioRanges evaluate_preset(const ScenarioPreset& ps) {
    NondimGroups lo, hi;
    bool first = true;
    const RawRange* ranges[6] = {&ps.young, &ps.nu, &ps.kappa, &ps.c0, &ps.alpha, &ps.lp};
    for (int mask = 0; mask < 64; ++mask) {
        double v[6];
        for (int k = 0; k < 6; ++k) v[k] = (mask >> k) & 1 ? ranges[k]->hi : ranges[k]->lo;
        const double young = v[0], nu = v[1];
        PhysicalParams p;
        p.mu = young / (2.0 * (1.0 + nu));
        p.lambda = young * nu / ((1.0 + nu) * (1.0 - 2.0 * nu));
        p.kappa = v[2];
        p.c0 = v[3];
        p.alpha = v[4];
        p.lp = v[5];
        p.tau = ps.tau;
        p.length = ps.L;
        p.p0 = ps.p0;
        p.d0 = ps.d0;
        const NondimGroups g = nondimensional_groups(p);
        if (first) {
            lo = hi = g;
            first = false;
        } else {
            lo.Da = std::min(lo.Da, g.Da);
            hi.Da = std::max(hi.Da, g.Da);
            lo.S = std::min(lo.S, g.S);
            hi.S = std::max(hi.S, g.S);
            lo.BW = std::min(lo.BW, g.BW);
            hi.BW = std::max(hi.BW, g.BW);
            lo.E = std::min(lo.E, g.E);
            hi.E = std::max(hi.E, g.E);
            lo.Cp = std::min(lo.Cp, g.Cp);
            hi.Cp = std::max(hi.Cp, g.Cp);
        }
    }
    ScenarioRanges out;
    out.name = ps.name;
    out.Da = make_range(lo.Da, hi.Da);
    out.S = make_range(lo.S, hi.S);
    out.BW = make_range(lo.BW, hi.BW);
    out.E = make_range(lo.E, hi.E);
    out.Cp = make_range(lo.Cp, hi.Cp);
    return out;
}

}  // namespace

std::vector<ScenarioRanges> nondim_scenarios() {
    std::vector<ScenarioRanges> out;
    {
        // Unit configuration: every group evaluates to one.
        PhysicalParams p;
        p.mu = 0.5;
        const NondimGroups g = nondimensional_groups(p);
        ScenarioRanges unit;
        unit.name = "unit";
        unit.Da = make_range(g.Da, g.Da);
        unit.S = make_range(g.S, g.S);
        unit.BW = make_range(g.BW, g.BW);
        unit.E = make_range(g.E, g.E);
        unit.Cp = make_range(g.Cp, g.Cp);
        out.push_back(unit);
    }
    for (const ScenarioPreset& ps : presets()) out.push_back(evaluate_preset(ps));
    return out;
}

RunResult run_nondim(const ExperimentConfig& cfg) {
    Report rep;
    rep.experiment = "nondim";
    rep.config = cfg.to_json();
    rep.table.columns = {"scenario", "group", "min", "max", "decade_min", "decade_max"};
    for (const ScenarioRanges& s : nondim_scenarios()) {
        const std::pair<std::string, const GroupRange*> groups[5] = {
            {"Da", &s.Da}, {"S", &s.S}, {"BW", &s.BW}, {"E", &s.E}, {"Cp", &s.Cp}};
        for (const auto& [name, g] : groups)
            rep.table.add_row({s.name, name, g->lo, g->hi, g->decade_lo, g->decade_hi});
    }
    rep.extra = Json::object();
    return {std::move(rep), 0};
}

// ---------------------------------------------------------------------------
// Swelling demo
// ---------------------------------------------------------------------------

namespace {

// Transmembrane flux int_Gamma |lp ([[p_F]] + p_osm)| ds by edge quadrature.
double transmembrane_flux(const DiscreteSystem& sys, std::span<const double> pF_i,
                          std::span<const double> pF_e, const ScalarField& p_osm, double lp) {
    double flux = 0.0;
    const Mesh& mesh = sys.mesh;
    for (int f : mesh.interface_facets()) {
        const Facet& fc = mesh.facets[f];
        const double len = mesh.facet_length(f);
        const Vec2 a = mesh.vertices[fc.verts[0]], b = mesh.vertices[fc.verts[1]];
        const double pi0 = pF_i[sys.spaces.QF_i.vertex_node[fc.verts[0]]];
        const double pi1 = pF_i[sys.spaces.QF_i.vertex_node[fc.verts[1]]];
        const double pe0 = pF_e[sys.spaces.QF_e.vertex_node[fc.verts[0]]];
        const double pe1 = pF_e[sys.spaces.QF_e.vertex_node[fc.verts[1]]];
        for (double t : {0.1127016653792583, 0.5, 0.8872983346207417}) {  // 3-pt Gauss
            const double w = t == 0.5 ? 4.0 / 9.0 : 5.0 / 18.0;
            const Vec2 x = a + t * (b - a);
            const double jump = (pi0 * (1 - t) + pi1 * t) - (pe0 * (1 - t) + pe1 * t);
            flux += len * w * std::abs(lp * (jump + p_osm.value(x.x, x.y)));
        }
    }
    return flux;
}

}  // namespace

RunResult run_swelling_demo(const ExperimentConfig& cfg) {
    const SwellingConfig& sw = cfg.swelling;
    const NondimGroups g = nondimensional_groups(sw.phys);
    // Unit-square analog: interpret the dimensionless groups as the rescaled
    // parameters (kappa <- Da, c0 <- S, alpha <- BW, lambda <- E, lp <- Cp Da).
    const Params params{g.E, g.BW, g.Da, g.S, g.Cp * g.Da};

    ProblemData data = ProblemData::homogeneous();
    const double peak = sw.osmotic_peak_pa / sw.phys.p0;
    const double width = sw.gaussian_width;
    // The membrane condition reads -kappa grad p . n = lp ([[p_F]] + p_osm),
    // so an intracellular osmolarity increase enters with a negative sign:
    // it drives flux into the cells.
    data.p_osm.value = [peak, width](double x, double y) {
        const double r2 = (x - 0.5) * (x - 0.5) + (y - 0.5) * (y - 0.5);
        return -peak * std::exp(-r2 / (2.0 * width * width));
    };

    Mesh mesh = build_box_mesh(sw.n, 0.5);
    mark_boundaries(mesh, boundary_config(cfg.regime));
    const DiscreteSystem sys = build_system(mesh, params, cfg.regime, data);

    const Preconditioner B = build_preconditioner(cfg.kind, sys, cfg.precond);
    const KrylovResult res =
        minres(LinearOperator::from_csr(sys.mono), B.op(), sys.rhs, cfg.tol, cfg.maxit);
    const auto fields = sys.split(res.x);

    auto minmax = [](const std::vector<double>& v) {
        double lo = 0.0, hi = 0.0;
        for (double x : v) {
            lo = std::min(lo, x);
            hi = std::max(hi, x);
        }
        return std::pair{lo, hi};
    };
    const auto [pfi_min, pfi_max] = minmax(fields.pF_i);
    const auto [pfe_min, pfe_max] = minmax(fields.pF_e);
    double dmax = 0.0;
    for (std::size_t i = 0; i + 1 < fields.d.size(); i += 2)
        dmax = std::max(dmax, std::hypot(fields.d[i], fields.d[i + 1]));
    const double flux =
        transmembrane_flux(sys, fields.pF_i, fields.pF_e, data.p_osm, params.lp);

    Report rep;
    rep.experiment = "swelling-demo";
    rep.config = cfg.to_json();
    rep.table.columns = {"n",         "pF_intra_min", "pF_intra_max", "pF_extra_min",
                         "pF_extra_max", "disp_max",  "membrane_flux", "iterations",
                         "converged"};
    rep.table.add_row({sw.n, pfi_min, pfi_max, pfe_min, pfe_max, dmax, flux,
                       res.report.iterations, res.report.converged});
    rep.extra = Json{{"p0", sw.phys.p0},
                     {"params", {{"lambda", params.lambda},
                                 {"alpha", params.alpha},
                                 {"kappa", params.kappa},
                                 {"c0", params.c0},
                                 {"lp", params.lp}}}};

    if (!sw.fields_csv.empty()) {
        std::ofstream os(sw.fields_csv);
        if (!os) throw std::runtime_error("swelling-demo: cannot open " + sw.fields_csv);
        os << "region,x,y,pF,pT,dx,dy\n";
        os.precision(12);
        const auto dump_region = [&](const char* name, const Space& qf,
                                     const std::vector<double>& pf, const std::vector<double>& pt) {
            for (int v = 0; v < mesh.num_vertices(); ++v) {
                const int dof = qf.vertex_node[v];
                if (dof < 0) continue;
                os << name << "," << mesh.vertices[v].x << "," << mesh.vertices[v].y << ","
                   << pf[dof] << "," << pt[dof] << "," << fields.d[2 * v] << ","
                   << fields.d[2 * v + 1] << "\n";
            }
        };
        dump_region("intra", sys.spaces.QF_i, fields.pF_i, fields.pT_i);
        dump_region("extra", sys.spaces.QF_e, fields.pF_e, fields.pT_e);
    }
    return {std::move(rep), res.report.converged ? 0 : 2};
}

RunResult run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    switch (cfg.experiment) {
        case Experiment::Convergence: return run_convergence(cfg);
        case Experiment::Sweep: return run_sweep(cfg);
        case Experiment::NaiveSweep: return run_naive_sweep(cfg);
        case Experiment::QblockCond: return run_qblock_cond(cfg);
        case Experiment::Nondim: return run_nondim(cfg);
        case Experiment::SwellingDemo: return run_swelling_demo(cfg);
    }
    throw std::invalid_argument("run_experiment: unknown experiment");
}

}  // namespace porocell
