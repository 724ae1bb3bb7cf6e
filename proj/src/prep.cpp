#include "spinchain/prep.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "spinchain/errors.hpp"

namespace spinchain {

namespace {

// max - min over the driven populations (levels 1..d-1).
double upper_spread(const Matrix& rho) {
    const Eigen::Index d = rho.rows();
    double lo = rho(1, 1).real(), hi = lo;
    for (Eigen::Index n = 2; n < d; ++n) {
        double p = rho(n, n).real();
        lo = std::min(lo, p);
        hi = std::max(hi, p);
    }
    return hi - lo;
}

}  // namespace

std::vector<double> PreparationPulseSpec::exact_crossing_profile(int dimension) {
    const int n = dimension - 2;
    if (n < 1) throw std::invalid_argument("preparation needs at least 3 levels");
    std::vector<double> rel(n);
    double peak = 0.0;
    for (int k = 0; k < n; ++k) {
        rel[k] = std::sqrt(static_cast<double>((k + 1) * (n - k)));
        peak = std::max(peak, rel[k]);
    }
    for (double& r : rel) r /= peak;
    return rel;
}

PreparationPulseSpec PreparationPulseSpec::defaults(const SpinSystem& sys) {
    PreparationPulseSpec spec;
    spec.relative_amplitudes = exact_crossing_profile(sys.dimension());
    return spec;
}

ShapedPulse preparation_pulse(const PreparationPulseSpec& spec, const SpinSystem& sys) {
    const int d = sys.dimension();
    if (static_cast<int>(spec.relative_amplitudes.size()) != d - 2)
        throw std::invalid_argument("preparation spec needs exactly dimension-2 amplitudes");
    for (double r : spec.relative_amplitudes)
        if (r <= 0.0) throw std::invalid_argument("relative amplitudes must be positive");
    if (spec.base_strength_rad_s < 0.0)
        throw std::invalid_argument("base strength must be nonnegative");

    ShapedPulse pulse;
    for (int k = 1; k <= d - 2; ++k) {
        const Transition& tr = sys.transitions()[k];
        double effective = spec.base_strength_rad_s * spec.relative_amplitudes[k - 1];
        pulse.harmonics.push_back({tr.offset_hz, effective / tr.matrix_element, 0.0});
    }
    return pulse;
}

CrossingResult find_crossing(const PreparationPulseSpec& spec, const SpinSystem& sys,
                             const EvolutionMode& mode) {
    if (spec.max_duration_s <= 0.0)
        throw std::invalid_argument("max duration must be positive");
    ShapedPulse pulse = preparation_pulse(spec, sys);
    const Matrix eq = equilibrium_state(sys);

    auto spread_at = [&](double t) {
        pulse.duration_s = t;
        return upper_spread(evolve(eq, pulse, sys, mode));
    };

    // Spread is smooth but globally non-convex; sample first, then refine.
    constexpr int kGridPoints = 512;
    const double dt = spec.max_duration_s / kGridPoints;
    std::vector<double> spread(kGridPoints + 1);
    for (int i = 0; i <= kGridPoints; ++i) spread[i] = spread_at(i * dt);

    int best = -1;
    for (int i = 1; i < kGridPoints; ++i) {
        if (spread[i] < spread[i - 1] && spread[i] <= spread[i + 1] &&
            (best < 0 || spread[i] < spread[best]))
            best = i;
    }
    if (best < 0)
        throw NoCrossingError("population spread has no interior minimum up to " +
                              std::to_string(spec.max_duration_s) + " s");

    // Golden-section refinement to 1e-9 s.
    constexpr double kInvPhi = 0.6180339887498949;
    double a = (best - 1) * dt, b = (best + 1) * dt;
    double x1 = b - kInvPhi * (b - a), x2 = a + kInvPhi * (b - a);
    double f1 = spread_at(x1), f2 = spread_at(x2);
    while (b - a > 1e-9) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - kInvPhi * (b - a);
            f1 = spread_at(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + kInvPhi * (b - a);
            f2 = spread_at(x2);
        }
    }
    double t_star = 0.5 * (a + b);
    return {t_star, spread_at(t_star)};
}

Matrix crush_coherences(const Matrix& rho) {
    return rho.diagonal().asDiagonal();
}

Matrix prepare_pseudopure(const SpinSystem& sys, const PreparationPulseSpec& spec,
                          const EvolutionMode& mode) {
    CrossingResult crossing = find_crossing(spec, sys, mode);
    ShapedPulse pulse = preparation_pulse(spec, sys);
    pulse.duration_s = crossing.duration_s;
    return crush_coherences(evolve(equilibrium_state(sys), pulse, sys, mode));
}

RealVector pseudopure_site_populations(const RealVector& level_deviations) {
    const double d = static_cast<double>(level_deviations.size());
    RealVector p = level_deviations / (0.5 * d);
    p.array() += 1.0 / d;
    return p;
}

}  // namespace spinchain
