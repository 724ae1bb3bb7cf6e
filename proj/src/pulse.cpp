#include "spinchain/pulse.hpp"

#include <cmath>
#include <stdexcept>

#include "spinchain/errors.hpp"

namespace spinchain {

namespace {

constexpr double kMatchTolHz = 1e-6;

void validate_pulse(const ShapedPulse& pulse) {
    if (pulse.duration_s < 0.0) throw InvalidPulseError("pulse duration must be nonnegative");
    for (size_t j = 0; j < pulse.harmonics.size(); ++j) {
        if (pulse.harmonics[j].amplitude_rad_s < 0.0)
            throw InvalidPulseError("harmonic amplitude must be nonnegative");
        for (size_t l = j + 1; l < pulse.harmonics.size(); ++l)
            if (std::abs(pulse.harmonics[j].frequency_hz - pulse.harmonics[l].frequency_hz) <
                kMatchTolHz)
                throw InvalidPulseError("harmonic frequencies must be distinct");
    }
}

int matching_transition(const SpinSystem& sys, double frequency_hz) {
    int match = -1;
    for (int k = 0; k < sys.n_transitions(); ++k) {
        if (std::abs(sys.transitions()[k].offset_hz - frequency_hz) <= kMatchTolHz) {
            if (match >= 0)
                throw InvalidPulseError("harmonic matches more than one transition");
            match = k;
        }
    }
    if (match < 0)
        throw InvalidPulseError("harmonic at " + std::to_string(frequency_hz) +
                                " Hz matches no transition");
    return match;
}

// Smallest spacing between neighboring lines sets the fastest off-resonant
// beat that matters; equidistant spectra make all spacings equal.
double line_spacing(const SpinSystem& sys) {
    double spacing = 0.0;
    for (int k = 0; k + 1 < sys.n_transitions(); ++k)
        spacing = std::max(spacing, std::abs(sys.transitions()[k + 1].offset_hz -
                                             sys.transitions()[k].offset_hz));
    return spacing;
}

Matrix decay_half_step(const Matrix& rho, const RelaxationModel* relax, double dt) {
    return relax ? apply_decay(rho, *relax, 0.5 * dt) : rho;
}

}  // namespace

ShapedPulse with_phase_shift(const ShapedPulse& pulse, double dphi) {
    ShapedPulse shifted = pulse;
    for (auto& h : shifted.harmonics) h.phase_rad += dphi;
    return shifted;
}

ShapedPulse chain_emulation_pulse(const SpinSystem& sys, double omega1_rad_s,
                                  double duration_s, double phase_rad) {
    if (omega1_rad_s < 0.0) throw std::invalid_argument("omega1 must be nonnegative");
    ShapedPulse pulse;
    pulse.duration_s = duration_s;
    pulse.harmonics.reserve(sys.n_transitions());
    for (const Transition& tr : sys.transitions())
        pulse.harmonics.push_back(
            {tr.offset_hz, omega1_rad_s / tr.matrix_element, phase_rad});
    return pulse;
}

Matrix effective_hamiltonian_rwa(const ShapedPulse& pulse, const SpinSystem& sys) {
    validate_pulse(pulse);
    const int d = sys.dimension();
    Matrix h = Matrix::Zero(d, d);
    for (const RfHarmonic& harm : pulse.harmonics) {
        int k = matching_transition(sys, harm.frequency_hz);
        cxd element = 0.5 * harm.amplitude_rad_s * sys.transitions()[k].matrix_element *
                      std::exp(kImag * harm.phase_rad);
        h(k, k + 1) += element;
        h(k + 1, k) += std::conj(element);
    }
    return h;
}

Matrix evolve(const Matrix& rho, const ShapedPulse& pulse, const SpinSystem& sys,
              const EvolutionMode& mode, const RelaxationModel* relax) {
    if (!is_hermitian(rho, 1e-9))
        throw InvalidStateError("input density matrix is not Hermitian");
    validate_pulse(pulse);
    if (pulse.duration_s == 0.0) return rho;

    if (mode.kind == EvolutionMode::Kind::IdealRwa) {
        Matrix h = effective_hamiltonian_rwa(pulse, sys);
        if (!relax) {
            Matrix u = unitary_of(h, pulse.duration_s);
            return conjugate_by(u, rho);
        }
        // Symmetric interleave of decay and rotation. Step resolves the
        // fastest decay rate; the propagator for one step is reused.
        double max_rate = 0.0;
        for (int i = 0; i < sys.dimension(); ++i)
            for (int j = 0; j < sys.dimension(); ++j)
                max_rate = std::max(max_rate, relax->r2(i, j));
        if (relax->t1_enabled()) max_rate = std::max(max_rate, 1.0 / relax->t1_s());
        int n = std::max<int>(1, static_cast<int>(std::ceil(pulse.duration_s * max_rate * 20.0)));
        double dt = pulse.duration_s / n;
        Matrix u = unitary_of(h, dt);
        Matrix state = rho;
        for (int s = 0; s < n; ++s) {
            state = decay_half_step(state, relax, dt);
            state = conjugate_by(u, state);
            state = decay_half_step(state, relax, dt);
        }
        return state;
    }

    // Full mode: interaction-frame Hamiltonian
    //   H(t) = sum_{j,k} (A_j d_k / 2) e^{i(2pi(f_j - f_k)t + phi_j)} |k><k+1| + h.c.
    // where f_k are the static transition offsets. Resonant pairs (j = k for
    // the chain pulse) are time-independent; the rest beat at multiples of
    // the line spacing.
    const double spacing = line_spacing(sys);
    const double bound = spacing > 0.0 ? 1.0 / (50.0 * spacing) : pulse.duration_s;
    double step = mode.max_step_s > 0.0
                      ? mode.max_step_s
                      : (spacing > 0.0 ? 1.0 / (100.0 * spacing) : pulse.duration_s);
    if (step > bound + 1e-18)
        throw ConfigurationError("Full-mode step too coarse for the line spacing");

    struct Term {
        int k;
        double coeff;     // A_j d_k / 2
        double beat_rad;  // 2pi (f_j - f_k)
        double phase;
    };
    std::vector<Term> terms;
    const int d = sys.dimension();
    for (const RfHarmonic& harm : pulse.harmonics) {
        if (harm.amplitude_rad_s == 0.0) continue;
        for (int k = 0; k < sys.n_transitions(); ++k) {
            const Transition& tr = sys.transitions()[k];
            terms.push_back({k, 0.5 * harm.amplitude_rad_s * tr.matrix_element,
                             2.0 * kPi * (harm.frequency_hz - tr.offset_hz),
                             harm.phase_rad});
        }
    }

    int n = std::max<int>(1, static_cast<int>(std::ceil(pulse.duration_s / step)));
    double dt = pulse.duration_s / n;
    Matrix state = rho;
    Matrix h(d, d);
    for (int s = 0; s < n; ++s) {
        double t_mid = (s + 0.5) * dt;
        h.setZero();
        for (const Term& term : terms) {
            cxd element = term.coeff * std::exp(kImag * (term.beat_rad * t_mid + term.phase));
            h(term.k, term.k + 1) += element;
            h(term.k + 1, term.k) += std::conj(element);
        }
        state = decay_half_step(state, relax, dt);
        state = conjugate_by(unitary_of(h, dt), state);
        state = decay_half_step(state, relax, dt);
    }
    return state;
}

}  // namespace spinchain
