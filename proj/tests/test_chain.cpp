#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "reference_oracle.hpp"
#include "spinchain/chain.hpp"
#include "spinchain/errors.hpp"
#include "test_util.hpp"

using namespace spinchain;

TEST_SUITE_BEGIN("chain");

TEST_CASE("eight-site Hamiltonian is the unit tridiagonal") {
    ChainHamiltonian h = build_chain_hamiltonian(8, 1.0);
    REQUIRE(h.matrix.rows() == 8);
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) {
            double expect = std::abs(i - j) == 1 ? 1.0 : 0.0;
            CHECK(h.matrix(i, j) == expect);
        }
    // symmetric under site reversal
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j)
            CHECK(h.matrix(i, j) == h.matrix(7 - i, 7 - j));
}

TEST_CASE("two-site chain") {
    ChainHamiltonian h = build_chain_hamiltonian(2, 1.0);
    CHECK(h.matrix(0, 0) == 0.0);
    CHECK(h.matrix(0, 1) == 1.0);
    CHECK(h.matrix(1, 0) == 1.0);
    CHECK(h.matrix(1, 1) == 0.0);
}

TEST_CASE("fewer than two sites is rejected") {
    CHECK_THROWS_AS(build_chain_hamiltonian(1, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(build_chain_hamiltonian(0, 1.0), std::invalid_argument);
}

TEST_CASE("spectrum is 2 cos(k pi / 9)") {
    ChainHamiltonian h = build_chain_hamiltonian(8, 1.0);
    ChainPropagator prop(h);
    for (int k = 1; k <= 8; ++k) {
        double e = 2.0 * std::cos(k * kPi / 9.0);
        // analytic eigenvector, checked by its matrix-vector residual
        RealVector v(8);
        for (int j = 0; j < 8; ++j) v(j) = std::sin((j + 1) * k * kPi / 9.0);
        v.normalize();
        CHECK((h.matrix * v - e * v).cwiseAbs().maxCoeff() < 1e-10);
        // the solver found the same value
        double nearest = 1e300;
        for (int i = 0; i < 8; ++i)
            nearest = std::min(nearest, std::abs(prop.eigenvalues()(i) - e));
        CHECK(nearest < 1e-12);
    }
}

TEST_CASE("tau = 0 leaves the state untouched") {
    ChainHamiltonian h = build_chain_hamiltonian(8, 1.0);
    std::mt19937 rng(7);
    Matrix rho = testutil::random_density(rng, 8);
    ChainState out = propagate_exact(h, {rho}, 0.0);
    CHECK((out.rho - rho).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("two-site hopping oscillates as sin^2") {
    ChainHamiltonian h = build_chain_hamiltonian(2, 1.0);
    ChainPropagator prop(h);
    ChainState rho0 = excitation_at(2, 0);
    for (double tau : {0.1, 0.7, 1.3, 2.9}) {
        RealVector p = prop.propagate(rho0, tau).populations();
        CHECK(p(1) == doctest::Approx(std::sin(tau) * std::sin(tau)).epsilon(1e-12));
    }
}

TEST_CASE("landmark populations match the frozen analytic values") {
    ChainHamiltonian h = build_chain_hamiltonian(8, 1.0);
    ChainPropagator prop(h);
    ChainState rho0 = excitation_at(8, 0);

    RealVector p013 = prop.propagate(rho0, 0.13).populations();
    CHECK(std::abs(p013(0) - oracle::kP0_tau013) < 1e-12);
    CHECK(std::abs(p013(0) - oracle::chain_populations(8, 0.13)(0)) < 1e-12);
    CHECK(p013(0) > 0.95);  // still close to the initial state

    RealVector p13 = prop.propagate(rho0, 1.3).populations();
    RealVector ref = oracle::chain_populations(8, 1.3);
    for (int j = 0; j < 8; ++j) {
        CHECK(std::abs(p13(j) - oracle::kP_tau13[j]) < 1e-12);
        CHECK(std::abs(p13(j) - ref(j)) < 1e-12);
    }
    // excitation has reached the three neighbor sites, not the far end
    for (int j : {1, 2, 3}) CHECK(p13(j) > 0.02);
    for (int j : {5, 6, 7}) CHECK(p13(j) < p13(3));
}

TEST_CASE("propagator agrees with the analytic eigensystem on random times") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> taus(0.0, 5.0);
    for (int n : {2, 3, 5, 8}) {
        ChainHamiltonian h = build_chain_hamiltonian(n, 1.0);
        ChainPropagator prop(h);
        for (int trial = 0; trial < 8; ++trial) {
            double tau = taus(rng);
            Matrix diff = prop.unitary(tau) - oracle::chain_propagator(n, 1.0, tau);
            CHECK(diff.cwiseAbs().maxCoeff() < 1e-12);
        }
    }
}

TEST_CASE("reference populations: rows normalized, early growth quadratic") {
    ChainHamiltonian h = build_chain_hamiltonian(8, 1.0);
    std::vector<double> grid{0.0, 1e-3, 0.05, 0.13, 0.5, 1.3};
    auto rows = reference_populations(h, grid);
    REQUIRE(rows.size() == grid.size());
    for (const RealVector& row : rows) CHECK(std::abs(row.sum() - 1.0) < 1e-12);

    CHECK(rows[0](0) == doctest::Approx(1.0).epsilon(1e-14));
    for (int j = 1; j < 8; ++j) CHECK(std::abs(rows[0](j)) < 1e-14);
    // P1 ~ tau^2 for small tau
    CHECK(std::abs(rows[1](1) / (1e-3 * 1e-3) - 1.0) < 1e-5);
    // tau = 1.3: excess on the three neighbor sites
    for (int j : {1, 2, 3}) CHECK(rows[5](j) > 0.02);
}

TEST_CASE("unitarity and purity are preserved") {
    std::mt19937 rng(23);
    ChainHamiltonian h = build_chain_hamiltonian(8, 1.0);
    ChainPropagator prop(h);
    std::uniform_real_distribution<double> taus(0.0, 10.0);
    for (int trial = 0; trial < 20; ++trial) {
        Matrix rho = testutil::random_density(rng, 8);
        double tau = taus(rng);
        ChainState out = prop.propagate({rho}, tau);
        CHECK(std::abs(out.rho.trace().real() - 1.0) < 1e-12);
        CHECK(hermiticity_defect(out.rho) < 1e-12);
        CHECK(std::abs(purity(out.rho) - purity(rho)) < 1e-10);
        Eigen::SelfAdjointEigenSolver<Matrix> es(out.rho);
        CHECK(es.eigenvalues().minCoeff() > -1e-10);
        CHECK(es.eigenvalues().maxCoeff() < 1.0 + 1e-10);
    }
}

TEST_CASE("mirror symmetry of the chain") {
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> taus(0.0, 6.0);
    for (int n : {3, 8}) {
        ChainHamiltonian h = build_chain_hamiltonian(n, 1.0);
        ChainPropagator prop(h);
        for (int trial = 0; trial < 10; ++trial) {
            double tau = taus(rng);
            RealVector from_left = prop.propagate(excitation_at(n, 0), tau).populations();
            RealVector from_right =
                prop.propagate(excitation_at(n, n - 1), tau).populations();
            for (int j = 0; j < n; ++j)
                CHECK(std::abs(from_left(j) - from_right(n - 1 - j)) < 1e-10);
        }
    }
}

TEST_CASE("propagation composes") {
    std::mt19937 rng(43);
    ChainHamiltonian h = build_chain_hamiltonian(8, 1.0);
    ChainPropagator prop(h);
    std::uniform_real_distribution<double> taus(0.0, 3.0);
    for (int trial = 0; trial < 10; ++trial) {
        Matrix rho = testutil::random_density(rng, 8);
        double t1 = taus(rng), t2 = taus(rng);
        Matrix two_step = prop.propagate(prop.propagate({rho}, t1), t2).rho;
        Matrix one_step = prop.propagate({rho}, t1 + t2).rho;
        CHECK((two_step - one_step).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("non-Hermitian input is rejected") {
    ChainHamiltonian h = build_chain_hamiltonian(8, 1.0);
    Matrix bad = Matrix::Zero(8, 8);
    bad(0, 0) = 1.0;
    bad(0, 3) = 0.5;  // no conjugate partner
    CHECK_THROWS_AS(propagate_exact(h, {bad}, 0.5), InvalidStateError);
}

TEST_CASE("population table CSV") {
    ChainHamiltonian h = build_chain_hamiltonian(8, 1.0);
    std::vector<double> grid{0.0, 0.13};
    auto rows = reference_populations(h, grid);
    std::ostringstream out;
    write_population_csv(out, grid, rows);
    std::istringstream in(out.str());
    std::string header;
    std::getline(in, header);
    CHECK(header == "tau,p0,p1,p2,p3,p4,p5,p6,p7");
    std::string line;
    std::getline(in, line);
    std::getline(in, line);
    // second row: parse back and compare at full precision
    std::istringstream fields(line);
    std::string field;
    std::getline(fields, field, ',');
    CHECK(std::stod(field) == 0.13);
    std::getline(fields, field, ',');
    CHECK(std::abs(std::stod(field) - oracle::kP0_tau013) < 1e-12);
}

TEST_SUITE_END();
