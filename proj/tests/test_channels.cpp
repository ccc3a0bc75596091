#include <catch2/catch_amalgamated.hpp>

#include "qdc/channels.hpp"
#include "qdc/experiment.hpp"
#include "test_util.hpp"

using namespace qdc;

namespace {

DeviationMatrix uniform_quarter() {
    Mat4 m;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) m(r, c) = 0.25;
    return DeviationMatrix::projector_normalized(m);
}

}  // namespace

TEST_CASE("ancilla_z_dephase zeroes the off-diagonal ancilla blocks") {
    const DeviationMatrix out = ancilla_z_dephase(uniform_quarter());
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) {
            const bool same_block = (r / 2) == (c / 2);
            CHECK(out.matrix()(r, c) == cplx(same_block ? 0.25 : 0.0));
        }
    CHECK(out.matrix().trace().real() == Catch::Approx(1.0));
}

TEST_CASE("ancilla_z_dephase is idempotent, trace- and positivity-preserving, linear") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 15; ++trial) {
        const DeviationMatrix d = pseudo_pure(testutil::to_qdc(oracle::random_ket(rng)));
        const DeviationMatrix once = ancilla_z_dephase(d);
        const DeviationMatrix twice = ancilla_z_dephase(once);
        CHECK(max_abs_diff(once.matrix(), twice.matrix()) < 1e-14);
        CHECK(once.matrix().trace().real() == Catch::Approx(1.0).margin(1e-12));
        CHECK(min_eigenvalue(once.matrix()) >= -1e-10);
    }

    // linearity on a mixture
    const DeviationMatrix a = pseudo_pure({1.0, 0.0, 0.0, 0.0});
    const DeviationMatrix b = uniform_quarter();
    const Mat4 mix = cplx(0.3) * a.matrix() + cplx(0.7) * b.matrix();
    const Mat4 lhs = ancilla_z_dephase(DeviationMatrix::projector_normalized(mix)).matrix();
    const Mat4 rhs = cplx(0.3) * ancilla_z_dephase(a).matrix() +
                     cplx(0.7) * ancilla_z_dephase(b).matrix();
    CHECK(max_abs_diff(lhs, rhs) < 1e-14);
}

TEST_CASE("dephasing the superposition projector reproduces the block-diagonal form") {
    // This is the closed-form post-measurement matrix: equal alpha weights at
    // pi/2, particle block with full coherence, wave block on |0>.
    for (double theta : {0.0, 0.9, kPi / 2, kPi, 5.1}) {
        const DeviationMatrix in =
            pseudo_pure(testutil::to_qdc(oracle::ideal_state(kPi / 2, theta)));
        const DeviationMatrix out = ancilla_z_dephase(in);
        CHECK(testutil::diff(out.matrix(), oracle::dephased_reference(kPi / 2, theta)) < 1e-13);
    }
}

TEST_CASE("gradient block with refocusing equals the ideal channel plus the pi pulse") {
    const DeviationMatrix in = pseudo_pure(testutil::to_qdc(oracle::ideal_state(kPi / 2, 0.0)));
    const Mat4 xs = on_system(rotation(Axis::PlusX, kPi));

    const DeviationMatrix block = gradient_measurement_block(in, DephaseSpec::gradient(4));
    const Mat4 want = xs * ancilla_z_dephase(in).matrix() * xs.adjoint();
    CHECK(max_abs_diff(block.matrix(), want) < 1e-12);

    // the corrected view matches the ideal channel exactly
    CHECK(max_abs_diff(undo_refocus(block).matrix(), ancilla_z_dephase(in).matrix()) < 1e-12);
}

TEST_CASE("gradient block equals the ideal channel for N >= 3 on random states") {
    std::mt19937_64 rng(2024);
    for (int n : {3, 4, 8}) {
        for (int trial = 0; trial < 20; ++trial) {
            const DeviationMatrix in =
                DeviationMatrix::trace_one_hermitian(testutil::to_qdc(oracle::random_hermitian_trace1(rng)));
            const DeviationMatrix got =
                undo_refocus(gradient_measurement_block(in, DephaseSpec::gradient(n)));
            const DeviationMatrix want = ancilla_z_dephase(in);
            CHECK(max_abs_diff(got.matrix(), want.matrix()) < 1e-12);
        }
    }
}

TEST_CASE("the gyromagnetic ratio is irrelevant when the refocusing pulse is on") {
    std::mt19937_64 rng(99);
    const DeviationMatrix in =
        DeviationMatrix::trace_one_hermitian(testutil::to_qdc(oracle::random_hermitian_trace1(rng)));
    DephaseSpec a = DephaseSpec::gradient(8);
    DephaseSpec b = DephaseSpec::gradient(8);
    a.gyro_ratio = 0.2514;
    b.gyro_ratio = 0.77;
    CHECK(max_abs_diff(gradient_measurement_block(in, a).matrix(),
                       gradient_measurement_block(in, b).matrix()) < 1e-13);
}

TEST_CASE("without refocusing the system coherence is attenuated, not preserved") {
    // Two gradients with no pi pulse leave every coherence with a net phase
    // order kappa: 2r for the system coherence, 2 for a pure ancilla
    // coherence, 2 -+ 2r for the mixed ones. The discrete average multiplies
    // each entry by D(kappa) = (1/N) sum_k exp(-i kappa phi_k), which vanishes
    // only for nonzero integer orders. With r = 0.2514 the system and mixed
    // coherences survive attenuated; only the pure ancilla ones die.
    const DeviationMatrix in = pseudo_pure(testutil::to_qdc(oracle::ideal_state(kPi / 2, 0.0)));
    const int n = 8;
    const double r = 0.2514;
    const DeviationMatrix out = gradient_measurement_block(in, DephaseSpec::gradient(n, false));

    auto attenuation = [&](double kappa) {
        cplx sum = 0.0;
        for (int k = 0; k < n; ++k) sum += std::polar(1.0, -kappa * 2.0 * kPi * k / n);
        return sum / cplx(static_cast<double>(n));
    };

    const cplx d_factor(0.11949435458750371, -0.6258772010283566);  // frozen from the oracle sum
    CHECK(std::abs(attenuation(2.0 * r) - d_factor) < 1e-12);
    CHECK(std::abs(out.matrix()(0, 1) - d_factor * in.matrix()(0, 1)) < 1e-12);
    CHECK(std::abs(out.matrix()(0, 1)) ==
          Catch::Approx(0.6371822122010109 * 0.25).margin(1e-12));

    // pure ancilla coherence (system index unchanged): integer order, exactly killed
    CHECK(std::abs(out.matrix()(0, 2)) < 1e-13);
    CHECK(std::abs(out.matrix()(1, 3)) < 1e-13);
    // mixed coherence order 2 - 2r survives attenuated
    CHECK(std::abs(out.matrix()(1, 2) - attenuation(2.0 - 2.0 * r) * in.matrix()(1, 2)) < 1e-12);
    CHECK(std::abs(out.matrix()(1, 2)) > 0.05);

    // diagonal entries survive untouched
    for (int i = 0; i < 4; ++i)
        CHECK(out.matrix()(i, i).real() == Catch::Approx(in.matrix()(i, i).real()).margin(1e-13));
}

TEST_CASE("diagonal states are invariant under any gradient spec") {
    Mat4 diag;
    diag(0, 0) = 0.4;
    diag(1, 1) = 0.3;
    diag(2, 2) = 0.2;
    diag(3, 3) = 0.1;
    const DeviationMatrix in = DeviationMatrix::projector_normalized(diag);
    for (bool refocus : {true, false}) {
        DeviationMatrix out = gradient_measurement_block(in, DephaseSpec::gradient(5, refocus));
        if (refocus) out = undo_refocus(out);
        CHECK(max_abs_diff(out.matrix(), diag) < 1e-13);
    }
    CHECK(max_abs_diff(ancilla_z_dephase(in).matrix(), diag) == 0.0);
}

TEST_CASE("system coherence protection is the point of the refocusing pulse") {
    // |+>_A |+>_S: after the measurement block each ancilla block keeps its
    // full system coherence (magnitude weight/2 = 1/4) while the ancilla
    // coherences vanish.
    const double h = 0.5;
    Vec4 plus_plus{h, h, h, h};
    const DeviationMatrix in = pseudo_pure(plus_plus);
    const DeviationMatrix out = undo_refocus(gradient_measurement_block(in, DephaseSpec::gradient(8)));

    CHECK(std::abs(out.matrix()(0, 1)) == Catch::Approx(0.25).margin(1e-12));
    CHECK(std::abs(out.matrix()(2, 3)) == Catch::Approx(0.25).margin(1e-12));
    CHECK(std::abs(out.matrix()(0, 2)) < 1e-12);
    CHECK(std::abs(out.matrix()(0, 3)) < 1e-12);
    CHECK(std::abs(out.matrix()(1, 2)) < 1e-12);
}

TEST_CASE("gradient spec validation") {
    const DeviationMatrix in = pseudo_pure({1.0, 0.0, 0.0, 0.0});
    CHECK_THROWS_AS(gradient_measurement_block(in, DephaseSpec::gradient(1)), std::invalid_argument);
    CHECK_THROWS_AS(gradient_measurement_block(in, DephaseSpec::ideal()), std::invalid_argument);
}
