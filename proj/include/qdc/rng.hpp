#pragma once

// Seeded Gaussian draws via Box-Muller on mt19937_64. std::normal_distribution
// is implementation-defined, which would break byte-identical outputs across
// standard libraries; this pins the exact draw sequence.

#include <cmath>
#include <cstdint>
#include <random>

namespace qdc {

class GaussianSampler {
public:
    explicit GaussianSampler(std::uint64_t seed) : eng_(seed) {}

    /// Standard normal deviate.
    double next() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = uniform_open();
        const double u2 = uniform_open();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * 3.14159265358979323846 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

private:
    // uniform on (0, 1]
    double uniform_open() {
        return (static_cast<double>(eng_() >> 11) + 1.0) * 0x1.0p-53;
    }

    std::mt19937_64 eng_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace qdc
