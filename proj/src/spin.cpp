#include "spinchain/spin.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace spinchain {

namespace {

bool is_valid_spin(double spin) {
    if (spin < 0.0) return false;
    double two_i = 2.0 * spin;
    return std::abs(two_i - std::round(two_i)) < 1e-12;
}

}  // namespace

SpinOperators spin_operators(double spin) {
    if (!is_valid_spin(spin))
        throw std::invalid_argument("spin must be a nonnegative half-integer, got " +
                                    std::to_string(spin));
    const int d = static_cast<int>(std::lround(2.0 * spin)) + 1;
    SpinOperators op;
    op.iz = Matrix::Zero(d, d);
    op.iminus = Matrix::Zero(d, d);
    for (int n = 0; n < d; ++n) op.iz(n, n) = spin - n;
    // I-|I,m> = sqrt((I+m)(I-m+1)) |I,m-1>; m-1 lives one level below.
    for (int n = 0; n + 1 < d; ++n) {
        double m = spin - n;
        op.iminus(n + 1, n) = std::sqrt((spin + m) * (spin - m + 1.0));
    }
    op.iplus = op.iminus.adjoint();
    op.ix = 0.5 * (op.iplus + op.iminus);
    op.iy = -0.5 * kImag * (op.iplus - op.iminus);
    return op;
}

SpinSystem::SpinSystem(double spin, double splitting_hz)
    : spin_(spin), splitting_hz_(splitting_hz) {
    if (!is_valid_spin(spin) || spin < 0.5)
        throw std::invalid_argument("spin system needs I >= 1/2 with integer 2I");
    if (splitting_hz < 0.0)
        throw std::invalid_argument("splitting must be nonnegative");
    dim_ = static_cast<int>(std::lround(2.0 * spin)) + 1;
    ops_ = spin_operators(spin);

    // Line positions from eigenvalue differences of q·Iz²: transition k sits
    // at (E_{k+1} - E_k)/2pi, which makes the multiplet equidistant with the
    // site-0 line at the low-frequency end.
    const double q = kPi * splitting_hz;
    transitions_.reserve(dim_ - 1);
    for (int k = 0; k + 1 < dim_; ++k) {
        double ek = q * level_m(k) * level_m(k);
        double ek1 = q * level_m(k + 1) * level_m(k + 1);
        transitions_.push_back({(ek1 - ek) / (2.0 * kPi), ops_.iminus(k + 1, k).real()});
    }
}

Matrix static_hamiltonian(const SpinSystem& sys) {
    const double q = kPi * sys.splitting_hz();
    Matrix iz = sys.ops().iz;
    return q * iz * iz;
}

Matrix equilibrium_state(const SpinSystem& sys) {
    return sys.ops().iz;
}

}  // namespace spinchain
