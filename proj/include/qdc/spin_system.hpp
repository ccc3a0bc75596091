#pragma once

// Two-spin ensemble model: the high-temperature expansion rho = I/4 + eps*dev,
// deviation matrices, and pseudo-pure preparation. Deviation matrices are kept
// projector-normalized (trace 1) so that dephased outputs can be compared
// entry-by-entry against the closed forms; the I/4 subtraction happens only
// when assembling the full density operator.

#include "qdc/complex_matrix.hpp"
#include "qdc/gates.hpp"

namespace qdc {

/// The 1H/13C pair. The ancilla label is fixed to 1H and the system to 13C;
/// only the coupling and the magnetic-to-thermal energy ratio vary.
struct SpinSystem {
    double j_coupling_hz = 215.1;
    double epsilon = 1e-5;

    SpinSystem() = default;
    SpinSystem(double j_hz, double eps) : j_coupling_hz(j_hz), epsilon(eps) {
        if (!(j_coupling_hz > 0.0))
            throw std::invalid_argument("SpinSystem: scalar coupling must be positive");
        // epsilon = 0 is allowed as the exact infinite-temperature limit
        if (!(epsilon >= 0.0) || epsilon >= 0.01)
            throw std::invalid_argument("SpinSystem: epsilon must lie in [0, 0.01)");
    }

    /// Wall-clock duration of one 1/(2J) evolution period, seconds. Display
    /// value only; all phases are computed from the exact rational multiple.
    double half_j_period_s() const { return 1.0 / (2.0 * j_coupling_hz); }
};

enum class Normalization { ProjectorNormalized, Raw };

/// Hermitian 4x4 deviation matrix plus its normalization convention.
/// Projector-normalized means trace 1 with (numerically) nonnegative
/// eigenvalues, the form in which all observables in this library are quoted.
class DeviationMatrix {
public:
    /// Validating factory: Hermitian, trace 1, eigenvalues >= -1e-10.
    static DeviationMatrix projector_normalized(const Mat4& m) {
        require_hermitian(m);
        require_unit_trace(m);
        if (qdc::min_eigenvalue(m) < -kDefaultTol)
            throw std::invalid_argument("DeviationMatrix: negative eigenvalue in projector-normalized matrix");
        return DeviationMatrix(m, Normalization::ProjectorNormalized);
    }

    /// Trace-1 Hermitian without the positivity requirement. Linear-inversion
    /// tomography of noisy data lands here; negativity is reported through
    /// min_eigenvalue(), not rejected.
    static DeviationMatrix trace_one_hermitian(const Mat4& m) {
        require_hermitian(m);
        require_unit_trace(m);
        return DeviationMatrix(m, Normalization::ProjectorNormalized);
    }

    static DeviationMatrix raw(const Mat4& m) {
        require_hermitian(m);
        return DeviationMatrix(m, Normalization::Raw);
    }

    const Mat4& matrix() const { return delta_; }
    Normalization normalization() const { return norm_; }
    double min_eigenvalue() const { return qdc::min_eigenvalue(delta_); }

private:
    DeviationMatrix(const Mat4& m, Normalization n) : delta_(m), norm_(n) {}

    static void require_hermitian(const Mat4& m) {
        if (!hermitian_check(m, kDefaultTol))
            throw std::invalid_argument("DeviationMatrix: matrix is not Hermitian");
    }
    static void require_unit_trace(const Mat4& m) {
        if (std::abs(m.trace() - cplx(1.0)) > kDefaultTol)
            throw std::invalid_argument("DeviationMatrix: trace must equal 1");
    }

    Mat4 delta_;
    Normalization norm_;
};

/// Pseudo-pure deviation matrix |psi><psi| for a normalized two-qubit ket.
/// The gradient/pulse recipe that prepares this in the lab is abstracted away.
inline DeviationMatrix pseudo_pure(const Vec4& ket) {
    if (std::abs(norm(ket) - 1.0) > kDefaultTol)
        throw std::invalid_argument("pseudo_pure: ket must be normalized");
    return DeviationMatrix::projector_normalized(outer(ket, ket));
}

/// Full density operator I/4 + eps*(dev - I/4). Unit trace by construction;
/// throws if the result picks up a negative eigenvalue (deviation too wild
/// for the given epsilon).
inline Mat4 full_density(const SpinSystem& sys, const DeviationMatrix& d) {
    if (std::abs(d.matrix().trace() - cplx(1.0)) > kDefaultTol)
        throw std::invalid_argument("full_density: deviation must be trace-normalized");
    const Mat4 quarter = cplx(0.25) * Mat4::identity();
    const Mat4 rho = quarter + cplx(sys.epsilon) * (d.matrix() - quarter);
    if (min_eigenvalue(rho) < -1e-12)
        throw std::invalid_argument("full_density: negative density operator (epsilon too large)");
    return rho;
}

/// Re Tr(dev * obs) for a Hermitian observable. The imaginary part of the
/// trace is checked to be numerical noise.
inline double observable_trace(const DeviationMatrix& d, const Mat4& obs) {
    if (!hermitian_check(obs, kDefaultTol))
        throw std::invalid_argument("observable_trace: observable is not Hermitian");
    const cplx t = (d.matrix() * obs).trace();
    if (std::abs(t.imag()) >= kDefaultTol)
        throw std::logic_error("observable_trace: trace has a non-negligible imaginary part");
    return t.real();
}

/// Thermal-equilibrium deviation (sigma_z terms weighted by the gyromagnetic
/// ratios, raw normalization). Provided for completeness; the protocol always
/// starts from a pseudo-pure state instead.
inline DeviationMatrix thermal_equilibrium(double gamma_ratio = 0.2514) {
    const Mat4 m = cplx(0.5) * (on_ancilla(pauli_z()) + cplx(gamma_ratio) * on_system(pauli_z()));
    return DeviationMatrix::raw(m);
}

}  // namespace qdc
