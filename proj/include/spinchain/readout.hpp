#pragma once

#include <ostream>
#include <vector>

#include "spinchain/linalg.hpp"
#include "spinchain/pulse.hpp"
#include "spinchain/relaxation.hpp"
#include "spinchain/spin.hpp"

namespace spinchain {

struct AcquisitionConfig {
    double reading_angle_rad = kPi / 20.0;
    double broadening_hz = 100.0;   // extra Lorentzian width applied to every line
    double dwell_s = 1e-5;
    int n_points = 8192;
    int transients = 4;             // phase-cycle length, positive multiple of 4
    double peak_halfwidth_hz = 0.0; // integration window half-width; 0 = splitting/2
};

/// Throws ConfigurationError if the cycle length, spectral width or
/// integration windows are unusable for this spin system.
void validate_acquisition(const AcquisitionConfig& acq, const SpinSystem& sys);

double peak_halfwidth_hz(const AcquisitionConfig& acq, const SpinSystem& sys);

struct Spectrum {
    RealVector freq_hz;    // uniform, ascending
    RealVector intensity;  // phased absorption part
};

/// rho' = exp(-i·angle·Ix) rho exp(+i·angle·Ix). At small angles this converts
/// population differences into single-quantum coherences linearly:
/// rho'_{k+1,k} ≈ -i (angle/2) d_k (p_k - p_{k+1}).
Matrix reading_pulse(const Matrix& rho, double angle_rad, const SpinSystem& sys);

/// Temporal averaging: the evolution pulse is replayed with its common phase
/// stepped by pi/2 and the resulting states averaged. A common phase shift
/// phi multiplies each coherence of order q by e^{-i q phi}, so the four-step
/// cycle cancels every order except multiples of four; populations survive
/// untouched. With transients = 4n the cycle is nested — n blocks offset by
/// pi/(2n) — which pushes the first surviving order to 4n (for this
/// eight-level system, transients = 8 removes every off-diagonal order).
/// The default four-transient cycle leaves the +-4-quantum residue; its
/// feed-through into the readout is third order in the reading angle.
Matrix phase_cycled_state(const Matrix& rho_prepared, const ShapedPulse& evolution,
                          const SpinSystem& sys, const EvolutionMode& mode,
                          const RelaxationModel* relax, int transients = 4);

/// s(t_n) = sum_k c_k exp(i 2pi f_k t_n) exp(-(pi FWHM_k + pi broadening) t_n)
/// with c_k = d_k rho_{k+1,k}, the transition-k share of <I+>.
std::vector<cxd> synthesize_fid(const Matrix& rho, const SpinSystem& sys,
                                const RelaxationModel& relax, const AcquisitionConfig& acq);

/// Discrete Fourier transform scaled by the dwell time, frequency-ordered
/// (ascending, centered on zero). Satisfies the discrete Parseval identity
/// sum |S|^2 df = sum |s|^2 dt exactly.
std::vector<cxd> spectrum_transform(const std::vector<cxd>& fid, const AcquisitionConfig& acq);

/// Absorption spectrum: the transform phased by the +i factor that makes the
/// linear-response signal of a positive population difference a positive
/// Lorentzian. An isolated line of width w appears with FWHM = w + broadening.
Spectrum spectrum(const std::vector<cxd>& fid, const AcquisitionConfig& acq);

/// Trapezoidal integral of the intensity over a window of half-width
/// peak_halfwidth centered on each transition offset.
std::vector<double> integrate_peaks(const Spectrum& spec, const SpinSystem& sys,
                                    const AcquisitionConfig& acq);

/// Instrument response calibrated from simulated reference spectra: column j
/// holds the peak integrals produced by a unit population difference on
/// transition j (their sum is the equilibrium spectrum's integrals, so this
/// is the equilibrium-ratio calibration resolved per transition). Inverting
/// it removes the reading-pulse gain, the window leakage between neighboring
/// lines, and any transform convention.
class ReadoutCalibration {
   public:
    static ReadoutCalibration build(const SpinSystem& sys, const RelaxationModel& relax,
                                    const AcquisitionConfig& acq);

    const RealMatrix& response() const { return response_; }

   private:
    RealMatrix response_;
};

/// Integrals -> population differences (via the calibrated response) ->
/// populations by cumulative sums, with the total fixed by `total_deviation`.
/// Entries are ordered by chain site (= level, see SpinSystem).
RealVector populations_from_integrals(const std::vector<double>& integrals,
                                      const ReadoutCalibration& calib,
                                      double total_deviation);

void write_spectrum_csv(std::ostream& out, const Spectrum& spec);
void write_fid_csv(std::ostream& out, const std::vector<cxd>& fid, double dwell_s);

}  // namespace spinchain
