#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "spinchain/errors.hpp"
#include "spinchain/experiment.hpp"

namespace fs = std::filesystem;
using namespace spinchain;

namespace {

struct CommonOpts {
    std::string config_path;
    std::string mode;
    std::string relaxation;
    std::string out_dir = "out";
    double tau_max = -1.0;
    int tau_steps = 0;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--config", opts.config_path, "JSON config file");
    cmd->add_option("--mode", opts.mode, "ideal|full")
        ->check(CLI::IsMember({"ideal", "full"}));
    cmd->add_option("--relaxation", opts.relaxation, "on|off")
        ->check(CLI::IsMember({"on", "off"}));
    cmd->add_option("--out", opts.out_dir, "output directory");
    cmd->add_option("--tau-max", opts.tau_max, "largest dimensionless time");
    cmd->add_option("--tau-steps", opts.tau_steps, "number of grid points");
}

ExperimentConfig load_config(const CommonOpts& opts) {
    ExperimentConfig cfg = opts.config_path.empty()
                               ? ExperimentConfig{}
                               : ExperimentConfig::from_json_file(opts.config_path);
    if (opts.mode == "ideal") cfg.mode = EvolutionMode::ideal();
    if (opts.mode == "full") cfg.mode = EvolutionMode::full();
    if (!opts.relaxation.empty()) cfg.relaxation_enabled = (opts.relaxation == "on");
    if (opts.tau_max >= 0.0 || opts.tau_steps > 0) {
        double tmax = opts.tau_max >= 0.0 ? opts.tau_max : 1.5;
        int steps = opts.tau_steps > 0 ? opts.tau_steps : 30;
        cfg.tau_grid = linspace_grid(tmax, steps);
    } else if (cfg.tau_grid.empty()) {
        cfg.tau_grid = linspace_grid(1.5, 30);
    }
    return cfg;
}

std::ofstream open_out(const fs::path& path) {
    std::ofstream out(path);
    if (!out) throw ConfigurationError("cannot write " + path.string());
    return out;
}

int cmd_sweep(const CommonOpts& opts, bool emit_spectra) {
    ExperimentConfig cfg = load_config(opts);
    fs::create_directories(opts.out_dir);
    std::cerr << "sweep: " << cfg.tau_grid.size() << " points, mode "
              << (cfg.mode.kind == EvolutionMode::Kind::IdealRwa ? "ideal" : "full")
              << ", relaxation " << (cfg.relaxation_enabled ? "on" : "off") << "\n";

    SequenceRunner runner(cfg);
    std::cerr << "preparation: crossing at " << runner.crossing().duration_s * 1e6
              << " us, spread " << runner.crossing().spread << "\n";
    std::vector<ExperimentRecord> records;
    records.reserve(cfg.tau_grid.size());
    for (double tau : cfg.tau_grid) {
        records.push_back(runner.run(tau, emit_spectra));
        std::cerr << "  tau=" << tau << " max|err|=" << records.back().abs_err_max << "\n";
        if (emit_spectra) {
            char name[64];
            std::snprintf(name, sizeof name, "spectrum_tau_%07.4f.csv", tau);
            auto out = open_out(fs::path(opts.out_dir) / name);
            write_spectrum_csv(out, *records.back().spectrum);
        }
    }
    auto out = open_out(fs::path(opts.out_dir) / "sweep.csv");
    write_sweep_csv(out, records);
    std::cerr << "wrote " << (fs::path(opts.out_dir) / "sweep.csv").string() << "\n";
    return 0;
}

int cmd_equilibrium(const CommonOpts& opts) {
    ExperimentConfig cfg = load_config(opts);
    fs::create_directories(opts.out_dir);
    EquilibriumReport report = equilibrium_report(cfg);
    SpinSystem sys(cfg.spin, cfg.splitting_hz);
    auto spec_out = open_out(fs::path(opts.out_dir) / "equilibrium_spectrum.csv");
    write_spectrum_csv(spec_out, report.spectrum);
    auto table_out = open_out(fs::path(opts.out_dir) / "equilibrium_peaks.csv");
    write_peak_table_csv(table_out, sys, report);
    std::cerr << "peak ratios (central = 16):";
    for (double r : report.ratios) std::cerr << ' ' << r;
    std::cerr << "\n";
    return 0;
}

int cmd_prepare(const CommonOpts& opts) {
    ExperimentConfig cfg = load_config(opts);
    SpinSystem sys(cfg.spin, cfg.splitting_hz);
    PreparationPulseSpec prep = cfg.prep;
    if (prep.relative_amplitudes.empty())
        prep.relative_amplitudes = PreparationPulseSpec::exact_crossing_profile(sys.dimension());
    CrossingResult crossing = find_crossing(prep, sys, cfg.mode);
    std::cout << "{ \"crossing_duration_s\": " << crossing.duration_s
              << ", \"population_spread\": " << crossing.spread << " }\n";
    return 0;
}

int cmd_oracle(const CommonOpts& opts) {
    ExperimentConfig cfg = load_config(opts);
    fs::create_directories(opts.out_dir);
    SpinSystem sys(cfg.spin, cfg.splitting_hz);
    ChainHamiltonian chain = build_chain_hamiltonian(sys.dimension(), 1.0);
    auto rows = reference_populations(chain, cfg.tau_grid);
    auto out = open_out(fs::path(opts.out_dir) / "oracle.csv");
    write_population_csv(out, cfg.tau_grid, rows);
    std::cerr << "wrote " << (fs::path(opts.out_dir) / "oracle.csv").string() << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"NMR analog simulation of excitation transport on an eight-site chain"};
    app.require_subcommand(1);

    CommonOpts sweep_opts, eq_opts, prep_opts, oracle_opts;
    bool emit_spectra = false;

    CLI::App* sweep = app.add_subcommand("sweep", "run the pulse sequence over a tau grid");
    add_common(sweep, sweep_opts);
    sweep->add_flag("--emit-spectra", emit_spectra, "write one spectrum CSV per grid point");

    CLI::App* equilibrium =
        app.add_subcommand("equilibrium", "simulated equilibrium spectrum and peak table");
    add_common(equilibrium, eq_opts);

    CLI::App* prepare =
        app.add_subcommand("prepare", "report the preparation crossing time and spread");
    add_common(prepare, prep_opts);

    CLI::App* oracle = app.add_subcommand("oracle", "reference chain populations only");
    add_common(oracle, oracle_opts);

    CLI11_PARSE(app, argc, argv);

    try {
        if (sweep->parsed()) return cmd_sweep(sweep_opts, emit_spectra);
        if (equilibrium->parsed()) return cmd_equilibrium(eq_opts);
        if (prepare->parsed()) return cmd_prepare(prep_opts);
        if (oracle->parsed()) return cmd_oracle(oracle_opts);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
