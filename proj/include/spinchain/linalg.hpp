#pragma once

#include <Eigen/Dense>
#include <complex>

namespace spinchain {

using cxd = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr cxd kImag{0.0, 1.0};

inline double hermiticity_defect(const Matrix& a) {
    return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

inline bool is_hermitian(const Matrix& a, double tol = 1e-9) {
    return a.rows() == a.cols() && hermiticity_defect(a) <= tol;
}

// exp(-i H t) for Hermitian H (rad/s or dimensionless), via spectral decomposition.
inline Matrix unitary_of(const Matrix& hamiltonian, double t) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(hamiltonian);
    const RealVector& e = es.eigenvalues();
    Eigen::VectorXcd phases(e.size());
    for (Eigen::Index k = 0; k < e.size(); ++k)
        phases(k) = std::exp(-kImag * e(k) * t);
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

inline Matrix conjugate_by(const Matrix& u, const Matrix& rho) {
    return u * rho * u.adjoint();
}

inline double purity(const Matrix& rho) {
    return (rho * rho).trace().real();
}

}  // namespace spinchain
