#pragma once

// Least-squares cosine fit p(theta) = a + b cos(theta) + c sin(theta), solved
// through the 3x3 normal equations. Reported as offset, amplitude
// sqrt(b^2 + c^2), phase atan2(-c, b), and rms residual.

#include <array>
#include <cmath>
#include <span>
#include <stdexcept>
#include <utility>

namespace qdc {

struct FringeFit {
    double offset = 0.0;
    double amplitude = 0.0;
    double phase = 0.0;
    double rms_residual = 0.0;
};

struct FitError : std::domain_error {
    using std::domain_error::domain_error;
};

namespace detail {

// Gaussian elimination with partial pivoting; throws FitError when singular.
inline std::array<double, 3> solve3(std::array<std::array<double, 4>, 3> m) {
    for (int col = 0; col < 3; ++col) {
        int pivot = col;
        for (int r = col + 1; r < 3; ++r)
            if (std::abs(m[r][col]) > std::abs(m[pivot][col])) pivot = r;
        if (std::abs(m[pivot][col]) < 1e-12) throw FitError("degenerate design matrix");
        std::swap(m[col], m[pivot]);
        for (int r = 0; r < 3; ++r) {
            if (r == col) continue;
            const double f = m[r][col] / m[col][col];
            for (int c = col; c < 4; ++c) m[r][c] -= f * m[col][c];
        }
    }
    return {m[0][3] / m[0][0], m[1][3] / m[1][1], m[2][3] / m[2][2]};
}

}  // namespace detail

/// Fits (theta, p) samples at fixed alpha. Requires at least three points
/// with three distinct theta values.
inline FringeFit fit_cosine(std::span<const std::pair<double, double>> samples) {
    if (samples.size() < 3) throw FitError("need at least 3 samples");
    int distinct = 0;
    for (size_t i = 0; i < samples.size(); ++i) {
        bool seen = false;
        for (size_t j = 0; j < i; ++j)
            if (std::abs(samples[j].first - samples[i].first) <= 1e-12) seen = true;
        if (!seen) ++distinct;
    }
    if (distinct < 3) throw FitError("need at least 3 distinct theta values");

    // Normal equations for the basis {1, cos, sin}.
    std::array<std::array<double, 4>, 3> m{};
    for (const auto& [theta, p] : samples) {
        const std::array<double, 3> row{1.0, std::cos(theta), std::sin(theta)};
        for (int r = 0; r < 3; ++r) {
            for (int c = 0; c < 3; ++c) m[r][c] += row[r] * row[c];
            m[r][3] += row[r] * p;
        }
    }
    const auto [a, b, c] = detail::solve3(m);

    double ss = 0.0;
    for (const auto& [theta, p] : samples) {
        const double resid = a + b * std::cos(theta) + c * std::sin(theta) - p;
        ss += resid * resid;
    }

    FringeFit fit;
    fit.offset = a;
    fit.amplitude = std::hypot(b, c);
    fit.phase = std::atan2(-c, b);
    fit.rms_residual = std::sqrt(ss / samples.size());
    return fit;
}

}  // namespace qdc
