// Minimal library walkthrough: sweep the path phase for a few ancilla angles
// and print the fitted fringe amplitude next to the closed form sin^2(a/2)/2.

#include <cstdio>
#include <vector>

#include "qdc/experiment.hpp"
#include "qdc/fringe_fit.hpp"

int main() {
    const qdc::SpinSystem sys;
    std::vector<double> thetas;
    for (int i = 0; i < 17; ++i) thetas.push_back(2.0 * qdc::kPi * i / 16);

    std::printf("%10s %12s %12s\n", "alpha", "fit amp", "sin^2(a/2)/2");
    for (double alpha : {0.0, qdc::kPi / 4, qdc::kPi / 2, 3 * qdc::kPi / 4, qdc::kPi}) {
        const auto records =
            qdc::run_sweep({alpha}, thetas, qdc::CircuitLevel::Gate, qdc::DephaseSpec::ideal(), sys);
        std::vector<std::pair<double, double>> pts;
        for (const auto& r : records) pts.emplace_back(r.theta, r.p);
        const auto fit = qdc::fit_cosine(pts);
        const double s = std::sin(alpha / 2);
        std::printf("%10.4f %12.8f %12.8f\n", alpha, fit.amplitude, s * s / 2);
    }
    return 0;
}
