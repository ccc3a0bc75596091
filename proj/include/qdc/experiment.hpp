#pragma once

// The delayed-choice protocol: prepare |00>, rotate the ancilla by alpha,
// split the system path with a pseudo-Hadamard, acquire the path phase theta,
// apply the controlled-Hadamard, then emulate the strong ancilla measurement.
// Runs either with ideal gate matrices or with compiled pulse sequences.

#include <vector>

#include "qdc/channels.hpp"
#include "qdc/complex_matrix.hpp"
#include "qdc/gates.hpp"
#include "qdc/pulse.hpp"
#include "qdc/rng.hpp"
#include "qdc/spin_system.hpp"

namespace qdc {

enum class CircuitLevel { Gate, Pulse };

inline const char* to_string(CircuitLevel l) { return l == CircuitLevel::Gate ? "gate" : "pulse"; }

struct DelayedChoiceConfig {
    double alpha = 0.0;  // ancilla superposition angle, [0, pi]
    double theta = 0.0;  // path phase, [0, 2pi]
    CircuitLevel level = CircuitLevel::Gate;
    DephaseSpec dephase;
};

inline void validate_angles(double alpha, double theta) {
    if (!(alpha >= 0.0) || !(alpha <= kPi))
        throw std::invalid_argument("alpha must lie in [0, pi]");
    if (!(theta >= 0.0) || theta > 2.0 * kPi)
        throw std::invalid_argument("theta must lie in [0, 2pi]");
}

/// The pre-measurement state: cos(a/2)|0>|particle> + sin(a/2)|1>|wave>,
/// |particle> = (|0> + e^{i theta}|1>)/sqrt 2 and
/// |wave> = e^{i theta/2}(cos(theta/2)|0> - i sin(theta/2)|1>).
inline Vec4 ideal_final_state(double alpha, double theta) {
    validate_angles(alpha, theta);
    const double ca = std::cos(alpha / 2.0), sa = std::sin(alpha / 2.0);
    const cplx half_phase = std::polar(1.0, theta / 2.0);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

    Vec4 k{};
    k[0] = ca * inv_sqrt2;                                        // |00>
    k[1] = ca * inv_sqrt2 * std::polar(1.0, theta);               // |01>
    k[2] = sa * half_phase * std::cos(theta / 2.0);               // |10>
    k[3] = sa * half_phase * cplx(0.0, -1.0) * std::sin(theta / 2.0);  // |11>
    return k;
}

/// Circuit unitary before the measurement block. The pulse level compiles
/// each gate to its sequence and folds the closed-form event matrices.
inline Mat4 circuit_unitary(const DelayedChoiceConfig& cfg, const SpinSystem& sys) {
    validate_angles(cfg.alpha, cfg.theta);
    if (cfg.level == CircuitLevel::Gate) {
        return ideal_controlled_hadamard() * on_system(rotation(Axis::Z, cfg.theta)) *
               on_system(rotation(Axis::PlusY, kPi / 2.0)) *
               on_ancilla(rotation(Axis::PlusY, cfg.alpha));
    }
    Mat4 u = Mat4::identity();
    for (const PulseSequence& seq :
         {compile_gate(GateName::RyA, cfg.alpha), compile_gate(GateName::PseudoHadamardS),
          compile_gate(GateName::RzS, cfg.theta), compile_gate(GateName::ControlledHadamardAS)})
        u = sequence_unitary(seq, sys) * u;
    return u;
}

/// State reached from |00> just before the measurement block.
inline Vec4 circuit_state(const DelayedChoiceConfig& cfg, const SpinSystem& sys) {
    return circuit_unitary(cfg, sys) * Vec4{1.0, 0.0, 0.0, 0.0};
}

/// Full protocol run; returns the measured deviation matrix. Gradient-mode
/// outputs are given in the refocus-corrected view (the deterministic pi
/// pulse undone) so that all modes compare against the same closed form.
inline DeviationMatrix run_circuit(const DelayedChoiceConfig& cfg, const SpinSystem& sys) {
    const DeviationMatrix prepared = pseudo_pure(circuit_state(cfg, sys));
    if (cfg.dephase.mode == DephaseSpec::Mode::Ideal) return ancilla_z_dephase(prepared);
    const DeviationMatrix block = gradient_measurement_block(prepared, cfg.dephase);
    return cfg.dephase.refocus ? undo_refocus(block) : block;
}

/// Closed-form post-measurement deviation matrix, trace-normalized:
/// cos^2(a/2) |0><0| (x) |particle><particle| + sin^2(a/2) |1><1| (x) |wave><wave|.
inline DeviationMatrix expected_dephased_deviation(double alpha, double theta) {
    validate_angles(alpha, theta);
    const Vec4 particle = ideal_final_state(0.0, theta);  // |0>|particle>
    const Vec4 wave = ideal_final_state(kPi, theta);      // |1>|wave>
    const double w0 = std::cos(alpha / 2.0) * std::cos(alpha / 2.0);
    const Mat4 m = cplx(w0) * outer(particle, particle) + cplx(1.0 - w0) * outer(wave, wave);
    return DeviationMatrix::projector_normalized(m);
}

/// Projector onto |10>: ancilla flipped, system back on the input path.
inline Mat4 initial_state_projector() {
    Mat4 p;
    p(2, 2) = 1.0;
    return p;
}

/// Tr(dev |10><10|), the detection signal plotted against theta.
inline double detection_probability(const DeviationMatrix& d) {
    const double p = observable_trace(d, initial_state_projector());
    if (p < -1e-9 || p > 1.0 + 1e-9)
        throw std::logic_error("detection_probability: value escaped [0, 1]");
    return p;
}

struct DetectionRecord {
    double alpha;
    double theta;
    double p;
};

/// Cartesian sweep, alpha-major row order.
inline std::vector<DetectionRecord> run_sweep(const std::vector<double>& alphas,
                                              const std::vector<double>& thetas,
                                              CircuitLevel level, const DephaseSpec& dephase,
                                              const SpinSystem& sys) {
    if (alphas.empty() || thetas.empty())
        throw std::invalid_argument("run_sweep: angle grids must be non-empty");
    std::vector<DetectionRecord> out;
    out.reserve(alphas.size() * thetas.size());
    for (double a : alphas)
        for (double t : thetas) {
            const DelayedChoiceConfig cfg{a, t, level, dephase};
            out.push_back({a, t, detection_probability(run_circuit(cfg, sys))});
        }
    return out;
}

/// Optional demo noise: i.i.d. Gaussian on p, clamped back to [0, 1].
inline std::vector<DetectionRecord> apply_noise(std::vector<DetectionRecord> records,
                                                double sigma, std::uint64_t seed) {
    if (sigma < 0.0) throw std::invalid_argument("apply_noise: sigma must be nonnegative");
    if (sigma == 0.0) return records;
    GaussianSampler g(seed);
    for (DetectionRecord& r : records)
        r.p = std::clamp(r.p + sigma * g.next(), 0.0, 1.0);
    return records;
}

}  // namespace qdc
