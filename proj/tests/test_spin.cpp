#include <doctest.h>

#include <cmath>

#include "spinchain/spin.hpp"

using namespace spinchain;

TEST_SUITE_BEGIN("spin");

TEST_CASE("spin-1/2 operators are the halved Pauli matrices") {
    SpinOperators op = spin_operators(0.5);
    CHECK(std::abs(op.iz(0, 0) - cxd(0.5)) < 1e-15);
    CHECK(std::abs(op.iz(1, 1) - cxd(-0.5)) < 1e-15);
    CHECK(std::abs(op.ix(0, 1) - cxd(0.5)) < 1e-15);
    CHECK(std::abs(op.ix(1, 0) - cxd(0.5)) < 1e-15);
    CHECK(std::abs(op.iy(0, 1) - cxd(0.0, -0.5)) < 1e-15);
    CHECK(std::abs(op.iy(1, 0) - cxd(0.0, 0.5)) < 1e-15);
}

TEST_CASE("spin-7/2 lowering elements square to 7:12:15:16:15:12:7") {
    SpinOperators op = spin_operators(3.5);
    const double expect[] = {7, 12, 15, 16, 15, 12, 7};
    for (int k = 0; k < 7; ++k) {
        double d = op.iminus(k + 1, k).real();
        CHECK(std::abs(d * d - expect[k]) < 1e-12);
    }
}

TEST_CASE("Casimir identity and ladder commutator") {
    for (double spin : {0.5, 1.0, 1.5, 3.5}) {
        SpinOperators op = spin_operators(spin);
        int d = static_cast<int>(std::lround(2 * spin)) + 1;
        Matrix casimir = op.ix * op.ix + op.iy * op.iy + op.iz * op.iz;
        Matrix expect = spin * (spin + 1.0) * Matrix::Identity(d, d);
        CHECK((casimir - expect).cwiseAbs().maxCoeff() < 1e-12);
        Matrix comm = op.iz * op.iplus - op.iplus * op.iz;
        CHECK((comm - op.iplus).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("invalid spins are rejected") {
    CHECK_THROWS_AS(spin_operators(0.3), std::invalid_argument);
    CHECK_THROWS_AS(spin_operators(-0.5), std::invalid_argument);
    CHECK_THROWS_AS(SpinSystem(1.2, 6000.0), std::invalid_argument);
}

TEST_CASE("transitions are equidistant at the splitting") {
    SpinSystem sys(3.5, 6000.0);
    REQUIRE(sys.n_transitions() == 7);
    for (int k = 0; k + 1 < 7; ++k) {
        double gap = sys.transitions()[k + 1].offset_hz - sys.transitions()[k].offset_hz;
        CHECK(std::abs(gap - 6000.0) < 1e-9);
    }
    SUBCASE("degenerate multiplet at zero splitting") {
        SpinSystem flat(3.5, 0.0);
        for (const Transition& tr : flat.transitions()) CHECK(std::abs(tr.offset_hz) < 1e-12);
    }
}

TEST_CASE("offsets are antisymmetric about the multiplet center") {
    SpinSystem sys(3.5, 6000.0);
    // recompute from eigenvalue differences of the static Hamiltonian
    Matrix hq = static_hamiltonian(sys);
    for (int k = 0; k < 7; ++k) {
        double f = (hq(k + 1, k + 1).real() - hq(k, k).real()) / (2.0 * kPi);
        CHECK(std::abs(f - sys.transitions()[k].offset_hz) <
              1e-9 * std::max(1.0, std::abs(f)));
        CHECK(std::abs(sys.transitions()[k].offset_hz +
                       sys.transitions()[6 - k].offset_hz) < 1e-9);
    }
    // the populated-site transition sits at the low-frequency end
    CHECK(sys.transitions()[0].offset_hz < sys.transitions()[6].offset_hz);
    CHECK(sys.transitions()[0].offset_hz == doctest::Approx(-18000.0));
}

TEST_CASE("transition elements are symmetric and peak at the center") {
    SpinSystem sys(3.5, 6000.0);
    SpinOperators op = spin_operators(3.5);
    for (int k = 0; k < 7; ++k) {
        double d = sys.transitions()[k].matrix_element;
        CHECK(std::abs(d - sys.transitions()[6 - k].matrix_element) < 1e-12);
        CHECK(std::abs(d - op.iminus(k + 1, k).real()) < 1e-12);
        CHECK(d <= sys.transitions()[3].matrix_element + 1e-12);
    }
}

TEST_CASE("equilibrium deviation is linear in m") {
    SpinSystem sys(3.5, 6000.0);
    Matrix eq = equilibrium_state(sys);
    for (int n = 0; n < 8; ++n)
        CHECK(std::abs(eq(n, n).real() - (3.5 - n)) < 1e-15);
    CHECK(std::abs(eq.trace().real()) < 1e-12);
    CHECK((eq - Matrix(eq.diagonal().asDiagonal())).cwiseAbs().maxCoeff() == 0.0);
    // predicted equilibrium peak areas: d_k^2 * adjacent difference
    const double expect[] = {7, 12, 15, 16, 15, 12, 7};
    for (int k = 0; k < 7; ++k) {
        double d = sys.transitions()[k].matrix_element;
        double diff = eq(k, k).real() - eq(k + 1, k + 1).real();
        CHECK(std::abs(d * d * diff - expect[k]) < 1e-12);
    }
}

TEST_CASE("level map: site n is level n with m = I - n") {
    SpinSystem sys(3.5, 6000.0);
    for (int n = 0; n < 8; ++n) {
        CHECK(sys.level_of_site(n) == n);
        CHECK(sys.site_of_level(n) == n);
        CHECK(sys.level_m(n) == doctest::Approx(3.5 - n));
    }
    CHECK(sys.level_m(0) == doctest::Approx(sys.spin()));  // occupied chain end
}

TEST_SUITE_END();
