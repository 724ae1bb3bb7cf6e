#include "spinchain/chain.hpp"

#include <cstdio>
#include <stdexcept>

#include "spinchain/errors.hpp"

namespace spinchain {

ChainHamiltonian build_chain_hamiltonian(int n_sites, double coupling) {
    if (n_sites < 2)
        throw std::invalid_argument("chain needs at least 2 sites, got " +
                                    std::to_string(n_sites));
    RealMatrix m = RealMatrix::Zero(n_sites, n_sites);
    for (int i = 0; i + 1 < n_sites; ++i) {
        m(i, i + 1) = coupling;
        m(i + 1, i) = coupling;
    }
    return {n_sites, coupling, std::move(m)};
}

ChainState excitation_at(int n_sites, int site) {
    if (site < 0 || site >= n_sites)
        throw std::invalid_argument("site index out of range");
    Matrix rho = Matrix::Zero(n_sites, n_sites);
    rho(site, site) = 1.0;
    return {std::move(rho)};
}

ChainPropagator::ChainPropagator(const ChainHamiltonian& h) {
    Eigen::SelfAdjointEigenSolver<RealMatrix> es(h.matrix);
    eigenvectors_ = es.eigenvectors();
    eigenvalues_ = es.eigenvalues();
}

Matrix ChainPropagator::unitary(double tau) const {
    Eigen::VectorXcd phases(eigenvalues_.size());
    for (Eigen::Index k = 0; k < eigenvalues_.size(); ++k)
        phases(k) = std::exp(-kImag * eigenvalues_(k) * tau);
    return eigenvectors_.cast<cxd>() * phases.asDiagonal() *
           eigenvectors_.transpose().cast<cxd>();
}

ChainState ChainPropagator::propagate(const ChainState& rho0, double tau) const {
    if (!is_hermitian(rho0.rho, 1e-9))
        throw InvalidStateError("chain state is not Hermitian");
    Matrix u = unitary(tau);
    return {u * rho0.rho * u.adjoint()};
}

ChainState propagate_exact(const ChainHamiltonian& h, const ChainState& rho0, double tau) {
    if (tau < 0.0) throw std::invalid_argument("evolution time must be nonnegative");
    return ChainPropagator(h).propagate(rho0, tau);
}

std::vector<RealVector> reference_populations(const ChainHamiltonian& h,
                                              const std::vector<double>& tau_grid) {
    ChainPropagator prop(h);
    ChainState rho0 = excitation_at(h.n_sites, 0);
    std::vector<RealVector> rows;
    rows.reserve(tau_grid.size());
    for (double tau : tau_grid) {
        if (tau < 0.0) throw std::invalid_argument("tau grid must be nonnegative");
        rows.push_back(prop.propagate(rho0, tau).populations());
    }
    return rows;
}

void write_population_csv(std::ostream& out, const std::vector<double>& tau_grid,
                          const std::vector<RealVector>& rows) {
    if (rows.empty()) {
        out << "tau\n";
        return;
    }
    const Eigen::Index n = rows.front().size();
    out << "tau";
    for (Eigen::Index j = 0; j < n; ++j) out << ",p" << j;
    out << "\n";
    char buf[48];
    for (size_t i = 0; i < rows.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.15g", tau_grid[i]);
        out << buf;
        for (Eigen::Index j = 0; j < n; ++j) {
            std::snprintf(buf, sizeof buf, "%.15g", rows[i](j));
            out << ',' << buf;
        }
        out << "\n";
    }
}

}  // namespace spinchain
