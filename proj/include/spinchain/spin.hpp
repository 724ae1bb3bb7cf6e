#pragma once

#include <vector>

#include "spinchain/linalg.hpp"

namespace spinchain {

/// Angular-momentum operators in the basis |level n> = |I, m = I - n>,
/// n = 0 .. 2I. Level 0 carries the largest magnetic quantum number.
struct SpinOperators {
    Matrix iz, iplus, iminus, ix, iy;
};

/// Throws std::invalid_argument unless 2I is a nonnegative integer.
SpinOperators spin_operators(double spin);

/// Single-quantum transition k connects levels k and k+1.
struct Transition {
    double offset_hz;        // line position in the rotating frame, multiplet centered at 0
    double matrix_element;   // d_k = sqrt((I+m)(I-m+1)) at m = I - k
};

/// The physical register: a single quadrupolar nucleus whose 2I+1 levels play
/// the chain sites. Level n maps to chain site n (and to m = I - n); the
/// preparation pulse leaves site 0 = |I, I> untouched, so that level is the
/// chain's occupied end.
class SpinSystem {
   public:
    SpinSystem(double spin, double splitting_hz);

    double spin() const { return spin_; }
    double splitting_hz() const { return splitting_hz_; }
    int dimension() const { return dim_; }
    int n_transitions() const { return dim_ - 1; }

    const SpinOperators& ops() const { return ops_; }
    const std::vector<Transition>& transitions() const { return transitions_; }

    double level_m(int level) const { return spin_ - level; }
    int level_of_site(int site) const { return site; }
    int site_of_level(int level) const { return level; }

   private:
    double spin_;
    double splitting_hz_;
    int dim_;
    SpinOperators ops_;
    std::vector<Transition> transitions_;
};

/// First-order quadrupolar Hamiltonian q·Iz², q = pi·splitting (rad/s).
/// Adjacent transitions are then exactly `splitting` Hz apart; the identity
/// shift is irrelevant and kept as-is.
Matrix static_hamiltonian(const SpinSystem& sys);

/// High-temperature deviation density matrix, proportional to Iz and
/// normalized so adjacent levels differ by one population unit. Traceless,
/// no coherences.
Matrix equilibrium_state(const SpinSystem& sys);

}  // namespace spinchain
