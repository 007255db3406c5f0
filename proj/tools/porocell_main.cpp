// Experiment harness for the two-domain poroelasticity solver. Subcommands
// reproduce the desk-scale studies: convergence, parameter sweeps, the naive
// baseline, Q-block condition estimates, dimensionless groups and a cellular
// swelling demo.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "porocell/experiments.hpp"

namespace {

porocell::ExperimentConfig load_config(porocell::Experiment exp, const std::string& path) {
    using porocell::ExperimentConfig;
    if (path.empty()) return ExperimentConfig::defaults(exp);
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open config file: " + path);
    porocell::Json j = porocell::Json::parse(is);
    j["experiment"] = porocell::experiment_name(exp);
    return ExperimentConfig::from_json(j);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"porocell: finite element solvers and preconditioner experiments for the "
                 "two-domain poroelasticity model"};
    app.require_subcommand(1);

    std::string config_path, out_path, format, mode, regime;
    double theta = -1.0, tol = -1.0;
    int maxit = -1, threads = -1, nu = -1;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "JSON experiment configuration");
        cmd->add_option("--out", out_path, "output path (default: stdout)");
        cmd->add_option("--format", format, "csv | json | md");
        cmd->add_option("--mode", mode, "block inverses: exact | amg");
        cmd->add_option("--regime", regime, "mixed | full_dirichlet | all_dirichlet");
        cmd->add_option("--theta", theta, "AMG strong threshold for the pressure blocks");
        cmd->add_option("--nu", nu, "AMG smoothing sweeps for the pressure blocks");
        cmd->add_option("--tol", tol, "relative residual tolerance");
        cmd->add_option("--max-it", maxit, "iteration cap");
        cmd->add_option("--threads", threads, "worker threads for sweep cells");
    };

    const std::pair<std::string, porocell::Experiment> subcommands[] = {
        {"convergence", porocell::Experiment::Convergence},
        {"sweep", porocell::Experiment::Sweep},
        {"naive-sweep", porocell::Experiment::NaiveSweep},
        {"qblock-cond", porocell::Experiment::QblockCond},
        {"nondim", porocell::Experiment::Nondim},
        {"swelling-demo", porocell::Experiment::SwellingDemo},
    };
    for (const auto& [name, exp] : subcommands) {
        CLI::App* cmd = app.add_subcommand(name);
        add_common(cmd);
        cmd->parse_complete_callback([&, exp] {
            porocell::ExperimentConfig cfg = load_config(exp, config_path);
            if (!out_path.empty()) cfg.out_path = out_path;
            if (!format.empty()) cfg.format = porocell::parse_format(format);
            if (!mode.empty()) {
                if (mode != "exact" && mode != "amg") throw CLI::ValidationError("--mode", mode);
                cfg.precond.mode =
                    mode == "amg" ? porocell::PrecondMode::Amg : porocell::PrecondMode::Exact;
            }
            if (!regime.empty()) {
                porocell::Json j = cfg.to_json();
                j["regime"] = regime;
                cfg = porocell::ExperimentConfig::from_json(j);
            }
            if (theta >= 0.0) cfg.precond.theta_q = theta;
            if (nu > 0) cfg.precond.nu_q = nu;
            if (tol > 0.0) cfg.tol = tol;
            if (maxit > 0) cfg.maxit = maxit;
            if (threads > 0) cfg.threads = threads;
            cfg.validate();
            const porocell::RunResult result = porocell::run_experiment(cfg);
            result.report.write(cfg.out_path, cfg.format);
            if (result.exit_code != 0) {
                std::cerr << "warning: some cells did not converge (exit code "
                          << result.exit_code << ")\n";
                std::exit(result.exit_code);
            }
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
