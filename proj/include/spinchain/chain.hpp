#pragma once

#include <ostream>
#include <vector>

#include "spinchain/linalg.hpp"

namespace spinchain {

/// Single-excitation hopping Hamiltonian of an open n-site chain:
/// zero diagonal, constant coupling on the first off-diagonals.
struct ChainHamiltonian {
    int n_sites;
    double coupling;     // hopping strength; dimensionless time is coupling * t
    RealMatrix matrix;   // n x n real symmetric tridiagonal
};

ChainHamiltonian build_chain_hamiltonian(int n_sites, double coupling);

/// Density matrix of the excitation; populations are site-occupation probabilities.
struct ChainState {
    Matrix rho;
    RealVector populations() const { return rho.diagonal().real(); }
};

/// |site><site| — excitation localized on one site.
ChainState excitation_at(int n_sites, int site);

/// Propagator cache: diagonalizes H once, then any evolution time is a
/// phase rotation in the eigenbasis. Keeps the reference dynamics free of
/// integrator error.
class ChainPropagator {
   public:
    explicit ChainPropagator(const ChainHamiltonian& h);

    Matrix unitary(double tau) const;
    ChainState propagate(const ChainState& rho0, double tau) const;

    const RealVector& eigenvalues() const { return eigenvalues_; }

   private:
    RealMatrix eigenvectors_;
    RealVector eigenvalues_;
};

/// U rho0 U† with U = exp(-i H tau). Throws InvalidStateError if rho0 is not
/// Hermitian within 1e-9, std::invalid_argument for tau < 0.
ChainState propagate_exact(const ChainHamiltonian& h, const ChainState& rho0, double tau);

/// Site populations vs dimensionless time, starting from |0><0|. One row per
/// tau value.
std::vector<RealVector> reference_populations(const ChainHamiltonian& h,
                                              const std::vector<double>& tau_grid);

/// CSV table `tau,p0,...,p{n-1}`, 15 significant digits.
void write_population_csv(std::ostream& out, const std::vector<double>& tau_grid,
                          const std::vector<RealVector>& rows);

}  // namespace spinchain
