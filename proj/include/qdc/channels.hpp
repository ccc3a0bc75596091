#pragma once

// Non-unitary dynamics: the ideal sigma_z dephasing of the ancilla and its
// ensemble emulation with two identical z-gradient pulses around a refocusing
// pi pulse on the system.
//
// Per gradient sample the composite is K = G(phi) X_S G(phi) with
// G(phi) = Rz_A(phi) (x) Rz_S(phi*r). The pi pulse flips the system between
// the two gradients, so the system's gradient phase cancels identically while
// the ancilla accumulates 2*phi. Averaging over N >= 3 equally spaced phases
// then annihilates the ancilla coherences exactly, and the block equals the
// ideal channel composed with the (real, uncorrected) pi pulse. Without the
// refocusing pulse the system coherences are only attenuated, by
// sin(2 pi r) / (N sin(2 pi r / N)) for the discrete average -- they do not
// vanish, because 2r is not an integer coherence order.

#include <vector>

#include "qdc/complex_matrix.hpp"
#include "qdc/gates.hpp"
#include "qdc/spin_system.hpp"

namespace qdc {

struct DephaseSpec {
    enum class Mode { Ideal, Gradient };

    Mode mode = Mode::Ideal;
    int samples = 8;            // gradient phase samples over [0, 2pi)
    bool refocus = true;        // pi_x on the system between the two gradients
    double gyro_ratio = 0.2514; // system/ancilla gradient-phase ratio

    static DephaseSpec ideal() { return {}; }
    static DephaseSpec gradient(int n, bool refocus_pulse = true) {
        DephaseSpec s;
        s.mode = Mode::Gradient;
        s.samples = n;
        s.refocus = refocus_pulse;
        return s;
    }
};

namespace detail {

inline Mat4 project_ancilla_blocks(const Mat4& m) {
    Mat4 out;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c)
            if ((r / 2) == (c / 2)) out(r, c) = m(r, c);
    return out;
}

// Channel outputs keep the input's normalization flavor. Trace-normalized
// inputs rewrap without the positivity re-check: the channels preserve
// positivity, so a psd input stays psd, and a tomography-style input with a
// small negative eigenvalue must pass through unchanged rather than throw.
inline DeviationMatrix rewrap(const DeviationMatrix& like, const Mat4& m) {
    return like.normalization() == Normalization::ProjectorNormalized
               ? DeviationMatrix::trace_one_hermitian(m)
               : DeviationMatrix::raw(m);
}

// Fixed pairwise tree reduction; keeps the summation order deterministic even
// if the terms are produced concurrently.
inline Mat4 tree_sum(std::vector<Mat4>& terms) {
    for (size_t stride = 1; stride < terms.size(); stride *= 2)
        for (size_t i = 0; i + stride < terms.size(); i += 2 * stride)
            terms[i] = terms[i] + terms[i + stride];
    return terms.empty() ? Mat4{} : terms[0];
}

}  // namespace detail

/// Ideal strong sigma_z measurement of the ancilla: keeps the two diagonal
/// 2x2 ancilla blocks and zeroes the blocks connecting ancilla |0> and |1>.
/// Trace-preserving, idempotent, linear.
inline DeviationMatrix ancilla_z_dephase(const DeviationMatrix& d) {
    return detail::rewrap(d, detail::project_ancilla_blocks(d.matrix()));
}

/// Ensemble emulation of the measurement block: two identical gradients with
/// (by default) a refocusing pi pulse on the system in between. Returns the
/// raw block output; the pi pulse is a real rotation left in the state, so
/// callers comparing against the ideal channel must undo it (undo_refocus).
inline DeviationMatrix gradient_measurement_block(const DeviationMatrix& d, const DephaseSpec& spec) {
    if (spec.mode != DephaseSpec::Mode::Gradient)
        throw std::invalid_argument("gradient_measurement_block: spec mode must be gradient");
    if (spec.samples < 2)
        throw std::invalid_argument("gradient_measurement_block: need at least 2 gradient samples");

    const Mat4 refocus = on_system(rotation(Axis::PlusX, kPi));
    std::vector<Mat4> terms;
    terms.reserve(spec.samples);
    for (int k = 0; k < spec.samples; ++k) {
        const double phi = 2.0 * kPi * k / spec.samples;
        const Mat4 g = kron(rotation(Axis::Z, phi), rotation(Axis::Z, phi * spec.gyro_ratio));
        const Mat4 op = spec.refocus ? g * refocus * g : g * g;
        terms.push_back(op * d.matrix() * op.adjoint());
    }
    const Mat4 sum = detail::tree_sum(terms);
    return detail::rewrap(d, cplx(1.0 / spec.samples) * sum);
}

/// Undoes the deterministic refocusing pulse left in the block output,
/// exposing the measurement-channel view of the state.
inline DeviationMatrix undo_refocus(const DeviationMatrix& d) {
    const Mat4 r = on_system(rotation(Axis::PlusX, kPi));
    return detail::rewrap(d, r.adjoint() * d.matrix() * r);
}

}  // namespace qdc
