#pragma once

// Closed-form unitaries: Pauli operators, single-spin rotations, scalar-coupling
// evolution, and the ideal two-qubit gates of the interferometer circuit.
// No matrix exponentials anywhere; every entry is written down exactly.

#include <numbers>

#include "qdc/complex_matrix.hpp"

namespace qdc {

inline constexpr double kPi = std::numbers::pi;

/// Which spin a single-spin operation acts on. The ancilla (1H) is the first
/// tensor factor, the system (13C) the second.
enum class Spin { Ancilla, System };

enum class Axis { PlusX, MinusX, PlusY, MinusY, Z };

inline Mat2 pauli_x() {
    Mat2 m;
    m(0, 1) = 1.0;
    m(1, 0) = 1.0;
    return m;
}

inline Mat2 pauli_y() {
    Mat2 m;
    m(0, 1) = cplx(0.0, -1.0);
    m(1, 0) = cplx(0.0, 1.0);
    return m;
}

inline Mat2 pauli_z() {
    Mat2 m;
    m(0, 0) = 1.0;
    m(1, 1) = -1.0;
    return m;
}

inline Mat2 hadamard() {
    const double c = 1.0 / std::sqrt(2.0);
    Mat2 m;
    m(0, 0) = c;
    m(0, 1) = c;
    m(1, 0) = c;
    m(1, 1) = -c;
    return m;
}

/// exp(-i (angle/2) n.sigma) for the pulse axes. Angle in radians.
inline Mat2 rotation(Axis axis, double angle_rad) {
    const double c = std::cos(angle_rad / 2.0);
    const double s = std::sin(angle_rad / 2.0);
    Mat2 m;
    switch (axis) {
        case Axis::PlusX:
            m(0, 0) = c;
            m(0, 1) = cplx(0.0, -s);
            m(1, 0) = cplx(0.0, -s);
            m(1, 1) = c;
            break;
        case Axis::MinusX:
            m(0, 0) = c;
            m(0, 1) = cplx(0.0, s);
            m(1, 0) = cplx(0.0, s);
            m(1, 1) = c;
            break;
        case Axis::PlusY:
            m(0, 0) = c;
            m(0, 1) = -s;
            m(1, 0) = s;
            m(1, 1) = c;
            break;
        case Axis::MinusY:
            m(0, 0) = c;
            m(0, 1) = s;
            m(1, 0) = -s;
            m(1, 1) = c;
            break;
        case Axis::Z:
            m(0, 0) = std::polar(1.0, -angle_rad / 2.0);
            m(1, 1) = std::polar(1.0, angle_rad / 2.0);
            break;
    }
    return m;
}

inline Mat4 on_ancilla(const Mat2& m) { return kron(m, Mat2::identity()); }
inline Mat4 on_system(const Mat2& m) { return kron(Mat2::identity(), m); }

inline Mat4 on_spin(Spin target, const Mat2& m) {
    return target == Spin::Ancilla ? on_ancilla(m) : on_system(m);
}

/// Free evolution under the scalar coupling 2*pi*J Sz.Sz for a duration of
/// k/(2J): diagonal phases exp(-i k pi/4) on |00>,|11> and exp(+i k pi/4) on
/// |01>,|10>. Expressed in exact multiples of 1/(2J) so the phases carry no
/// clock error.
inline Mat4 j_evolution(int half_j_multiples) {
    if (half_j_multiples <= 0)
        throw std::invalid_argument("j_evolution: duration multiple must be positive");
    const double phi = half_j_multiples * kPi / 4.0;
    Mat4 m;
    m(0, 0) = std::polar(1.0, -phi);
    m(1, 1) = std::polar(1.0, phi);
    m(2, 2) = std::polar(1.0, phi);
    m(3, 3) = std::polar(1.0, -phi);
    return m;
}

/// CNOT with the ancilla as control and the system as target.
inline Mat4 ideal_cnot() {
    Mat4 m;
    m(0, 0) = 1.0;
    m(1, 1) = 1.0;
    m(2, 3) = 1.0;
    m(3, 2) = 1.0;
    return m;
}

/// Controlled-Hadamard, ancilla control: block-diag(I, H).
inline Mat4 ideal_controlled_hadamard() {
    const double c = 1.0 / std::sqrt(2.0);
    Mat4 m;
    m(0, 0) = 1.0;
    m(1, 1) = 1.0;
    m(2, 2) = c;
    m(2, 3) = c;
    m(3, 2) = c;
    m(3, 3) = -c;
    return m;
}

/// What the nine-pulse CNOT sequence actually implements: the ideal CNOT
/// preceded by a 180-degree z rotation on the system spin (global phase
/// aside). The sequence is equivalent to the textbook CNOT only up to this
/// diagonal factor, so verification against `cnot` uses this reference.
inline Mat4 nmr_cnot_reference() {
    return ideal_cnot() * on_system(rotation(Axis::Z, kPi));
}

}  // namespace qdc
