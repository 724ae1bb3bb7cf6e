#pragma once

#include <vector>

#include "spinchain/linalg.hpp"
#include "spinchain/relaxation.hpp"
#include "spinchain/spin.hpp"

namespace spinchain {

/// One RF tone. Amplitude is the nutation strength in rad/s before
/// matrix-element weighting; frequency is an offset in the frame rotating at
/// the multiplet center.
struct RfHarmonic {
    double frequency_hz;
    double amplitude_rad_s;
    double phase_rad;
};

/// A multi-tone pulse of fixed duration — the instrument's one knob-set.
struct ShapedPulse {
    std::vector<RfHarmonic> harmonics;
    double duration_s = 0.0;
};

/// Same pulse with every harmonic phase advanced by `dphi` (the common-phase
/// shifts used for phase cycling).
ShapedPulse with_phase_shift(const ShapedPulse& pulse, double dphi);

/// IdealRwa keeps only the resonant term of each harmonic, so the engineered
/// Hamiltonian is exactly the target chain coupling. Full retains every
/// inter-transition off-resonant term and integrates the time-dependent
/// interaction-frame Hamiltonian with piecewise-constant midpoint
/// propagators (each step exactly unitary).
struct EvolutionMode {
    enum class Kind { IdealRwa, Full };
    Kind kind = Kind::IdealRwa;
    double max_step_s = 0.0;  // Full only; 0 picks 1/(100·line spacing)

    static EvolutionMode ideal() { return {Kind::IdealRwa, 0.0}; }
    static EvolutionMode full(double max_step_s = 0.0) {
        return {Kind::Full, max_step_s};
    }
};

/// The 7-tone pulse that turns the multiplet into the hopping chain: one
/// harmonic per transition, amplitude omega1/d_k so every effective coupling
/// equals omega1/2. Dimensionless time advances at omega1/2 per second.
ShapedPulse chain_emulation_pulse(const SpinSystem& sys, double omega1_rad_s,
                                  double duration_s, double phase_rad = 0.0);

/// tau = omega1·t/2: a linearly polarized tone of amplitude omega1
/// contributes omega1/2 to the rotating-frame coupling, which is the chain's
/// unit of time. Used everywhere a duration is reported as tau.
inline double dimensionless_time(double omega1_rad_s, double duration_s) {
    return 0.5 * omega1_rad_s * duration_s;
}
inline double duration_for_tau(double omega1_rad_s, double tau) {
    return 2.0 * tau / omega1_rad_s;
}

/// Rotating-wave Hamiltonian of the pulse (rad/s): element (k, k+1) is
/// amplitude_k·d_k/2 · exp(i·phase_k) for the harmonic resonant with
/// transition k. Every harmonic must sit on exactly one transition (1e-6 Hz);
/// otherwise InvalidPulseError.
Matrix effective_hamiltonian_rwa(const ShapedPulse& pulse, const SpinSystem& sys);

/// Propagates rho through the pulse. Relaxation, when given, is interleaved
/// multiplicatively with the unitary steps (symmetric splitting). Throws
/// InvalidStateError for non-Hermitian input, ConfigurationError when the
/// Full-mode step exceeds 1/(50·line spacing).
Matrix evolve(const Matrix& rho, const ShapedPulse& pulse, const SpinSystem& sys,
              const EvolutionMode& mode, const RelaxationModel* relax = nullptr);

}  // namespace spinchain
