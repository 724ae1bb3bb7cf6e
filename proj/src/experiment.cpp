#include "spinchain/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "spinchain/errors.hpp"

namespace spinchain {

namespace {

using nlohmann::json;

void parse_prep(const json& j, PreparationPulseSpec& prep) {
    if (j.contains("relative_amplitudes"))
        prep.relative_amplitudes = j.at("relative_amplitudes").get<std::vector<double>>();
    if (j.contains("base_strength_rad_s"))
        prep.base_strength_rad_s = j.at("base_strength_rad_s").get<double>();
    if (j.contains("max_duration_s")) prep.max_duration_s = j.at("max_duration_s").get<double>();
}

void parse_acq(const json& j, AcquisitionConfig& acq) {
    if (j.contains("reading_angle_rad"))
        acq.reading_angle_rad = j.at("reading_angle_rad").get<double>();
    if (j.contains("broadening_hz")) acq.broadening_hz = j.at("broadening_hz").get<double>();
    if (j.contains("dwell_s")) acq.dwell_s = j.at("dwell_s").get<double>();
    if (j.contains("n_points")) acq.n_points = j.at("n_points").get<int>();
    if (j.contains("transients")) acq.transients = j.at("transients").get<int>();
    if (j.contains("peak_halfwidth_hz"))
        acq.peak_halfwidth_hz = j.at("peak_halfwidth_hz").get<double>();
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigurationError(std::string("config is not valid JSON: ") + e.what());
    }
    ExperimentConfig cfg;
    try {
        if (j.contains("spin_two_I")) cfg.spin = j.at("spin_two_I").get<double>() / 2.0;
        if (j.contains("splitting_hz")) cfg.splitting_hz = j.at("splitting_hz").get<double>();
        if (j.contains("omega1_rad_s")) cfg.omega1_rad_s = j.at("omega1_rad_s").get<double>();
        if (j.contains("mode")) {
            std::string mode = j.at("mode").get<std::string>();
            if (mode == "ideal")
                cfg.mode = EvolutionMode::ideal();
            else if (mode == "full")
                cfg.mode = EvolutionMode::full(j.value("full_max_step_s", 0.0));
            else
                throw ConfigurationError("mode must be \"ideal\" or \"full\"");
        }
        if (j.contains("relaxation_enabled"))
            cfg.relaxation_enabled = j.at("relaxation_enabled").get<bool>();
        if (j.contains("linewidths_hz"))
            cfg.linewidths_hz = j.at("linewidths_hz").get<std::vector<double>>();
        if (j.contains("t1_s")) cfg.t1_s = j.at("t1_s").get<double>();
        if (j.contains("preparation")) parse_prep(j.at("preparation"), cfg.prep);
        if (j.contains("acquisition")) parse_acq(j.at("acquisition"), cfg.acq);
        if (j.contains("tau_grid"))
            cfg.tau_grid = j.at("tau_grid").get<std::vector<double>>();
        else if (j.contains("tau_max"))
            cfg.tau_grid = linspace_grid(j.at("tau_max").get<double>(), j.value("tau_steps", 30));
        if (j.contains("max_pulse_duration_s"))
            cfg.max_pulse_duration_s = j.at("max_pulse_duration_s").get<double>();
    } catch (const json::exception& e) {
        throw ConfigurationError(std::string("bad config field: ") + e.what());
    }
    cfg.validate();
    return cfg;
}

ExperimentConfig ExperimentConfig::from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigurationError("cannot open config file " + path);
    std::ostringstream text;
    text << in.rdbuf();
    return from_json_text(text.str());
}

void ExperimentConfig::validate() const {
    if (omega1_rad_s <= 0.0) throw ConfigurationError("omega1_rad_s must be positive");
    for (size_t i = 0; i < tau_grid.size(); ++i) {
        if (tau_grid[i] < 0.0) throw ConfigurationError("tau grid must be nonnegative");
        if (i > 0 && tau_grid[i] < tau_grid[i - 1])
            throw ConfigurationError("tau grid must be sorted ascending");
    }
}

std::vector<double> linspace_grid(double tau_max, int steps) {
    if (steps < 1 || tau_max < 0.0) throw ConfigurationError("bad tau grid request");
    std::vector<double> grid(steps);
    for (int i = 0; i < steps; ++i)
        grid[i] = steps == 1 ? tau_max : tau_max * i / (steps - 1);
    return grid;
}

SequenceRunner::SequenceRunner(const ExperimentConfig& cfg)
    : cfg_(cfg),
      sys_(cfg.spin, cfg.splitting_hz),
      relax_(cfg.linewidths_hz),
      crossing_{},
      prepared_{},
      calib_{},
      chain_(build_chain_hamiltonian(sys_.dimension(), 1.0)),
      chain_prop_(chain_) {
    cfg_.validate();
    if (cfg_.prep.relative_amplitudes.empty())
        cfg_.prep.relative_amplitudes =
            PreparationPulseSpec::exact_crossing_profile(sys_.dimension());
    if (cfg_.t1_s > 0.0) relax_.set_t1(cfg_.t1_s, equilibrium_state(sys_).diagonal().real());
    validate_acquisition(cfg_.acq, sys_);

    crossing_ = find_crossing(cfg_.prep, sys_, cfg_.mode);
    ShapedPulse prep_pulse = preparation_pulse(cfg_.prep, sys_);
    prep_pulse.duration_s = crossing_.duration_s;
    const RelaxationModel* relax = cfg_.relaxation_enabled ? &relax_ : nullptr;
    prepared_ = crush_coherences(evolve(equilibrium_state(sys_), prep_pulse, sys_, cfg_.mode, relax));
    calib_ = ReadoutCalibration::build(sys_, relax_, cfg_.acq);
}

ExperimentRecord SequenceRunner::run(double tau, bool keep_spectrum) const {
    if (tau < 0.0) throw std::invalid_argument("tau must be nonnegative");
    ExperimentRecord rec;
    rec.tau = tau;
    rec.duration_s = duration_for_tau(cfg_.omega1_rad_s, tau);
    if (rec.duration_s > cfg_.max_pulse_duration_s)
        std::cerr << "warning: evolution pulse of " << rec.duration_s * 1e6
                  << " us exceeds the configured " << cfg_.max_pulse_duration_s * 1e6
                  << " us limit\n";

    ShapedPulse pulse = chain_emulation_pulse(sys_, cfg_.omega1_rad_s, rec.duration_s);
    const RelaxationModel* relax = cfg_.relaxation_enabled ? &relax_ : nullptr;
    Matrix cycled =
        phase_cycled_state(prepared_, pulse, sys_, cfg_.mode, relax, cfg_.acq.transients);
    Matrix read = reading_pulse(cycled, cfg_.acq.reading_angle_rad, sys_);
    std::vector<cxd> fid = synthesize_fid(read, sys_, relax_, cfg_.acq);
    Spectrum spec = spectrum(fid, cfg_.acq);
    std::vector<double> integrals = integrate_peaks(spec, sys_, cfg_.acq);
    RealVector deviations = populations_from_integrals(integrals, calib_, 0.0);
    rec.recovered = pseudopure_site_populations(deviations);

    rec.oracle = chain_prop_.propagate(excitation_at(sys_.dimension(), 0), tau).populations();
    rec.abs_err_max = (rec.recovered - rec.oracle).cwiseAbs().maxCoeff();
    if (keep_spectrum) rec.spectrum = std::move(spec);
    return rec;
}

ExperimentRecord run_sequence(const ExperimentConfig& cfg, double tau) {
    return SequenceRunner(cfg).run(tau);
}

std::pair<std::vector<ExperimentRecord>, SweepSummary> run_sweep(const ExperimentConfig& cfg) {
    std::vector<ExperimentRecord> records;
    SweepSummary summary;
    if (cfg.tau_grid.empty()) return {records, summary};
    SequenceRunner runner(cfg);
    records.reserve(cfg.tau_grid.size());
    double sq_sum = 0.0;
    size_t count = 0;
    for (double tau : cfg.tau_grid) {
        records.push_back(runner.run(tau));
        const ExperimentRecord& rec = records.back();
        summary.max_abs_err = std::max(summary.max_abs_err, rec.abs_err_max);
        sq_sum += (rec.recovered - rec.oracle).squaredNorm();
        count += rec.recovered.size();
    }
    summary.rms_err = std::sqrt(sq_sum / count);
    return {std::move(records), summary};
}

void write_sweep_csv(std::ostream& out, const std::vector<ExperimentRecord>& records) {
    const Eigen::Index d = records.empty() ? 0 : records.front().recovered.size();
    out << "tau";
    for (Eigen::Index j = 0; j < d; ++j) out << ",p" << j << "_sim";
    for (Eigen::Index j = 0; j < d; ++j) out << ",p" << j << "_ref";
    out << ",abs_err_max\n";
    char buf[48];
    auto put = [&](double v, char sep) {
        std::snprintf(buf, sizeof buf, "%.15g", v);
        out << sep << buf;
    };
    for (const ExperimentRecord& rec : records) {
        std::snprintf(buf, sizeof buf, "%.15g", rec.tau);
        out << buf;
        for (Eigen::Index j = 0; j < d; ++j) put(rec.recovered(j), ',');
        for (Eigen::Index j = 0; j < d; ++j) put(rec.oracle(j), ',');
        put(rec.abs_err_max, ',');
        out << '\n';
    }
}

EquilibriumReport equilibrium_report(const ExperimentConfig& cfg) {
    SpinSystem sys(cfg.spin, cfg.splitting_hz);
    RelaxationModel relax(cfg.linewidths_hz);
    validate_acquisition(cfg.acq, sys);
    Matrix read = reading_pulse(equilibrium_state(sys), cfg.acq.reading_angle_rad, sys);
    EquilibriumReport report;
    report.spectrum = spectrum(synthesize_fid(read, sys, relax, cfg.acq), cfg.acq);
    report.integrals = integrate_peaks(report.spectrum, sys, cfg.acq);
    const double central = report.integrals[report.integrals.size() / 2];
    report.ratios.reserve(report.integrals.size());
    for (double v : report.integrals) report.ratios.push_back(16.0 * v / central);
    return report;
}

void write_peak_table_csv(std::ostream& out, const SpinSystem& sys,
                          const EquilibriumReport& report) {
    out << "transition,offset_hz,integral,ratio_central16\n";
    char buf[48];
    for (size_t k = 0; k < report.integrals.size(); ++k) {
        out << k;
        std::snprintf(buf, sizeof buf, "%.15g", sys.transitions()[k].offset_hz);
        out << ',' << buf;
        std::snprintf(buf, sizeof buf, "%.15g", report.integrals[k]);
        out << ',' << buf;
        std::snprintf(buf, sizeof buf, "%.15g", report.ratios[k]);
        out << ',' << buf << '\n';
    }
}

}  // namespace spinchain
