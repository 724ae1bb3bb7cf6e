#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "spinchain/chain.hpp"
#include "spinchain/prep.hpp"
#include "spinchain/pulse.hpp"
#include "spinchain/readout.hpp"
#include "spinchain/relaxation.hpp"
#include "spinchain/spin.hpp"

namespace spinchain {

/// Everything one sweep needs. All physical quantities are SI; field names
/// carry the unit. Loaded from a single JSON document with the same names.
struct ExperimentConfig {
    double spin = 3.5;
    double splitting_hz = 6000.0;
    double omega1_rad_s = 5000.0;  // tau reaches 1.5 at the 600 us duration cap
    EvolutionMode mode = EvolutionMode::ideal();
    bool relaxation_enabled = false;  // decay during the pulses; lineshapes always apply
    std::vector<double> linewidths_hz = default_linewidths();
    double t1_s = 0.0;
    PreparationPulseSpec prep;  // empty amplitude list = exact defaults for this spin
    AcquisitionConfig acq;
    std::vector<double> tau_grid;
    double max_pulse_duration_s = 600e-6;  // longer evolution pulses only warn

    static ExperimentConfig from_json_text(const std::string& text);
    static ExperimentConfig from_json_file(const std::string& path);
    void validate() const;
};

std::vector<double> linspace_grid(double tau_max, int steps);

/// One sweep point: what the simulated instrument recovered and what the
/// exact chain dynamics says.
struct ExperimentRecord {
    double tau = 0.0;
    double duration_s = 0.0;
    RealVector recovered;  // chain-site populations from the synthesized spectrum
    RealVector oracle;     // reference populations from |0><0|
    double abs_err_max = 0.0;
    std::optional<Spectrum> spectrum;
};

struct SweepSummary {
    double max_abs_err = 0.0;
    double rms_err = 0.0;  // over all grid points and sites
};

/// Caches the prepared state, the readout calibration and the diagonalized
/// reference chain, so a sweep pays the setup cost once. Runs are
/// independent and const.
class SequenceRunner {
   public:
    explicit SequenceRunner(const ExperimentConfig& cfg);

    ExperimentRecord run(double tau, bool keep_spectrum = false) const;

    const SpinSystem& system() const { return sys_; }
    const RelaxationModel& relaxation() const { return relax_; }
    const Matrix& prepared_state() const { return prepared_; }
    const ReadoutCalibration& calibration() const { return calib_; }
    CrossingResult crossing() const { return crossing_; }

   private:
    ExperimentConfig cfg_;
    SpinSystem sys_;
    RelaxationModel relax_;
    CrossingResult crossing_;
    Matrix prepared_;
    ReadoutCalibration calib_;
    ChainHamiltonian chain_;
    ChainPropagator chain_prop_;
};

/// Full Fig-1 sequence at one evolution time (builds a fresh runner).
ExperimentRecord run_sequence(const ExperimentConfig& cfg, double tau);

/// One record per grid point, in tau order; deterministic for a given config.
std::pair<std::vector<ExperimentRecord>, SweepSummary> run_sweep(const ExperimentConfig& cfg);

/// CSV schema: tau,p0_sim,...,p7_sim,p0_ref,...,p7_ref,abs_err_max
void write_sweep_csv(std::ostream& out, const std::vector<ExperimentRecord>& records);

struct EquilibriumReport {
    Spectrum spectrum;
    std::vector<double> integrals;
    std::vector<double> ratios;  // normalized so the central peak reads 16
};

EquilibriumReport equilibrium_report(const ExperimentConfig& cfg);
void write_peak_table_csv(std::ostream& out, const SpinSystem& sys,
                          const EquilibriumReport& report);

}  // namespace spinchain
