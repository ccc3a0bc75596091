#pragma once

// Two-qubit state tomography: forward simulation of the 15 non-identity Pauli
// expectation values and linear-inversion reconstruction
// dev = (I + sum_P <P> P) / 4. Linear inversion round-trips exact data;
// noisy inputs may reconstruct to a non-positive matrix, which is reported
// through min_eigenvalue rather than rejected.

#include <array>
#include <string>

#include "qdc/complex_matrix.hpp"
#include "qdc/gates.hpp"
#include "qdc/rng.hpp"
#include "qdc/spin_system.hpp"

namespace qdc {

/// The 15 sigma_i (x) sigma_j with (i, j) != (I, I); the first letter is the
/// ancilla factor. Fixed label order, also the JSON key order.
class PauliExpectations {
public:
    static constexpr int kCount = 15;

    static const std::array<std::string, kCount>& labels() {
        static const std::array<std::string, kCount> names = {
            "IX", "IY", "IZ", "XI", "XX", "XY", "XZ", "YI",
            "YX", "YY", "YZ", "ZI", "ZX", "ZY", "ZZ"};
        return names;
    }

    static Mat4 pauli_operator(int index) {
        auto single = [](char c) -> Mat2 {
            switch (c) {
                case 'I': return Mat2::identity();
                case 'X': return pauli_x();
                case 'Y': return pauli_y();
                default:  return pauli_z();
            }
        };
        const std::string& l = labels()[index];
        return kron(single(l[0]), single(l[1]));
    }

    double value(int index) const { return values_[index]; }

    void set(int index, double v) {
        if (std::abs(v) > 1.0 + 1e-9)
            throw std::invalid_argument("PauliExpectations: |value| must not exceed 1");
        values_[index] = v;
    }

private:
    std::array<double, kCount> values_{};
};

/// Forward tomography: <P> = Tr(dev * P) for each of the 15 operators.
inline PauliExpectations measure_expectations(const DeviationMatrix& d) {
    PauliExpectations e;
    for (int i = 0; i < PauliExpectations::kCount; ++i)
        e.set(i, observable_trace(d, PauliExpectations::pauli_operator(i)));
    return e;
}

/// Linear inversion. Hermitian with trace 1 by construction; exact inverse of
/// measure_expectations on trace-1 Hermitian inputs.
inline DeviationMatrix reconstruct(const PauliExpectations& e) {
    Mat4 m = Mat4::identity();
    for (int i = 0; i < PauliExpectations::kCount; ++i)
        m = m + cplx(e.value(i)) * PauliExpectations::pauli_operator(i);
    return DeviationMatrix::trace_one_hermitian(cplx(0.25) * m);
}

/// Seeded Gaussian perturbation of the expectation values, clamped to [-1, 1].
inline PauliExpectations perturb(const PauliExpectations& e, double sigma, std::uint64_t seed) {
    if (sigma < 0.0) throw std::invalid_argument("perturb: sigma must be nonnegative");
    if (sigma == 0.0) return e;
    GaussianSampler g(seed);
    PauliExpectations out;
    for (int i = 0; i < PauliExpectations::kCount; ++i)
        out.set(i, std::clamp(e.value(i) + sigma * g.next(), -1.0, 1.0));
    return out;
}

}  // namespace qdc
