// Desk-scale experiment drivers: convergence study on the manufactured
// solution, parameter-robustness sweeps, the failing single-domain baseline,
// Q-block condition studies, dimensionless-group presets and a cellular
// swelling demo. Each returns a schema-stable report table.
#pragma once

#include "porocell/precond.hpp"
#include "porocell/report.hpp"

namespace porocell {

enum class Experiment : std::uint8_t {
    Convergence,
    Sweep,
    NaiveSweep,
    QblockCond,
    Nondim,
    SwellingDemo,
};

Experiment parse_experiment(const std::string& name);
std::string experiment_name(Experiment e);

struct SwellingConfig {
    PhysicalParams phys;             // physical scenario parameters
    double osmotic_peak_pa = 1000.0; // peak intracellular osmolarity increase [Pa]
    double gaussian_width = 0.2;     // stddev of the hill on the unit square
    int n = 32;
    std::string fields_csv;          // optional vertex-field export path
};

struct ExperimentConfig {
    Experiment experiment = Experiment::Sweep;

    // Sweep grids (decade points of the application-derived ranges).
    std::vector<int> mesh_sizes{8, 16, 32};
    BcRegime regime = BcRegime::Mixed;
    std::vector<double> alphas{1e-2, 1.0, 1e2};
    std::vector<double> kappas{1e-7, 1e-3, 1.0, 1e3};
    std::vector<double> lambdas{10.0, 1e3, 1e5};
    std::vector<double> lps{1e-9, 1e-5, 1e-2};
    double c0 = 1e-6;

    PrecondKind kind = PrecondKind::Robust;
    PrecondOptions precond;
    double tol = 1e-10;
    int maxit = 250;
    int threads = 1;

    std::string out_path;
    ReportFormat format = ReportFormat::Csv;

    // Convergence study.
    std::vector<int> conv_sizes{8, 16, 32, 64};
    Params conv_params{1.0, 1.0, 1.0, 1.0, 1.0};
    double conv_tol = 1e-12;

    // Q-block condition study.
    std::vector<double> q_lambdas{1.0, 1e5};
    std::vector<double> q_kappas{1e-7, 1e-3, 1.0, 1e3};
    std::vector<double> q_lps{0.0};
    double q_alpha = 1.0;
    int q_n = 32;

    SwellingConfig swelling;

    void validate() const;
    Json to_json() const;
    static ExperimentConfig defaults(Experiment e);
    static ExperimentConfig from_json(const Json& j);
};

struct RunResult {
    Report report;
    int exit_code = 0;  // 2 when any cell failed to converge
};

RunResult run_convergence(const ExperimentConfig& cfg);
RunResult run_sweep(const ExperimentConfig& cfg);
RunResult run_naive_sweep(const ExperimentConfig& cfg);
RunResult run_qblock_cond(const ExperimentConfig& cfg);
RunResult run_nondim(const ExperimentConfig& cfg);
RunResult run_swelling_demo(const ExperimentConfig& cfg);
RunResult run_experiment(const ExperimentConfig& cfg);

// Dimensionless-group presets evaluated on scenario corner configurations.
struct GroupRange {
    double lo = 0.0, hi = 0.0;          // computed extremes
    double decade_lo = 0.0, decade_hi = 0.0;  // outward-rounded decade endpoints
};

struct ScenarioRanges {
    std::string name;
    GroupRange Da, S, BW, E, Cp;
};

std::vector<ScenarioRanges> nondim_scenarios();

}  // namespace porocell
