// Compile the controlled-Hadamard to pulses, print the program, and verify it
// against the ideal block-diag(I, H) matrix.

#include <cstdio>

#include "qdc/pulse.hpp"
#include "qdc/pulse_parser.hpp"

int main() {
    const qdc::SpinSystem sys;
    const qdc::PulseSequence seq = qdc::compile_gate(qdc::GateName::ControlledHadamardAS);
    std::printf("%s:\n%s", seq.name.c_str(), qdc::render(seq).c_str());

    const auto report = qdc::verify_sequence(seq, qdc::ideal_controlled_hadamard(), sys);
    std::printf("distance to ideal CH: %.3e -> %s\n", report.distance,
                report.pass ? "PASS" : "FAIL");
    return report.pass ? 0 : 1;
}
