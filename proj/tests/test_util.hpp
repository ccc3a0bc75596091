#pragma once

// Bridges between the reference oracle types and the library types.

#include "oracle.hpp"
#include "qdc/complex_matrix.hpp"

namespace testutil {

inline qdc::Mat4 to_qdc(const oracle::M4& m) {
    qdc::Mat4 out;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) out(r, c) = m[r * 4 + c];
    return out;
}

inline qdc::Mat2 to_qdc2(const oracle::M2& m) {
    qdc::Mat2 out;
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) out(r, c) = m[r * 2 + c];
    return out;
}

inline qdc::Vec4 to_qdc(const oracle::V4& v) { return {v[0], v[1], v[2], v[3]}; }

inline double diff(const qdc::Mat4& a, const oracle::M4& b) {
    double d = 0.0;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) d = std::max(d, std::abs(a(r, c) - b[r * 4 + c]));
    return d;
}

}  // namespace testutil
