#pragma once

#include <vector>

#include "spinchain/pulse.hpp"
#include "spinchain/spin.hpp"

namespace spinchain {

/// The six-tone preparation pulse: every transition except the lowest one is
/// driven, with per-transition effective strengths given by
/// `relative_amplitudes`. The defaults make the driven block an x-rotation of
/// a fictitious spin (d-2)/2, so the linear equilibrium profile rotates
/// entirely into coherence and the seven upper populations meet in a single
/// point: sqrt((k+1)(d-2-k)), normalized — 0.7071, 0.9129, 1, 1, 0.9129,
/// 0.7071 for d = 8 (the "0.7, 0.9, 1" recipe, at full precision).
struct PreparationPulseSpec {
    std::vector<double> relative_amplitudes;
    double base_strength_rad_s = 2.0 * kPi * 1000.0;
    double max_duration_s = 2.5e-3;

    static std::vector<double> exact_crossing_profile(int dimension);
    static PreparationPulseSpec defaults(const SpinSystem& sys);
};

/// Harmonics on transitions 1..d-2 with amplitude base·relative_k/d_k, so the
/// effective transition strengths are proportional to the relative values.
/// Transition 0 is never driven: the populated end of the chain stays put.
ShapedPulse preparation_pulse(const PreparationPulseSpec& spec, const SpinSystem& sys);

struct CrossingResult {
    double duration_s;  // pulse length at which the upper populations meet
    double spread;      // max - min over those populations, equilibrium units
};

/// Scans the spread of the seven driven populations over a uniform grid of
/// candidate durations and refines the best interior minimum by golden
/// section to 1e-9 s. Throws NoCrossingError if no interior minimum exists.
CrossingResult find_crossing(const PreparationPulseSpec& spec, const SpinSystem& sys,
                             const EvolutionMode& mode);

/// Zeroes every off-diagonal element (the gradient-pulse model). Populations
/// and trace are untouched; idempotent.
Matrix crush_coherences(const Matrix& rho);

/// equilibrium -> preparation pulse at the crossing duration -> crush.
/// The result's deviation from uniform is proportional to |0><0| up to the
/// crossing spread.
Matrix prepare_pseudopure(const SpinSystem& sys, const PreparationPulseSpec& spec,
                          const EvolutionMode& mode);

/// Converts level deviations (equilibrium units, summing to zero) into
/// chain-site populations: the prepared pseudopure excess is d/2 units, so
/// p_n = q_n/(d/2) + 1/d, which sums to one exactly.
RealVector pseudopure_site_populations(const RealVector& level_deviations);

}  // namespace spinchain
