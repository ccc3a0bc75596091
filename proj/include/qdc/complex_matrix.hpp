#pragma once

// Dense complex linear algebra for the two-spin simulator. Everything is a
// 2x2 or 4x4 matrix with value semantics; dimensions are template parameters
// so mixing them is a compile error rather than a runtime check.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace qdc {

using cplx = std::complex<double>;

inline constexpr double kDefaultTol = 1e-10;   // per-entry comparison tolerance
inline constexpr double kUnitaryTol = 1e-12;   // constructors must be unitary to this

template <int N>
class SquareMatrix {
    static_assert(N == 2 || N == 4, "only 2- and 4-dimensional operators are supported");

public:
    SquareMatrix() = default;   // zero matrix

    static SquareMatrix identity() {
        SquareMatrix m;
        for (int i = 0; i < N; ++i) m(i, i) = 1.0;
        return m;
    }

    static constexpr int dim() { return N; }

    cplx& operator()(int r, int c) { return a_[r * N + c]; }
    const cplx& operator()(int r, int c) const { return a_[r * N + c]; }

    SquareMatrix operator+(const SquareMatrix& o) const {
        SquareMatrix m;
        for (int i = 0; i < N * N; ++i) m.a_[i] = a_[i] + o.a_[i];
        return m;
    }

    SquareMatrix operator-(const SquareMatrix& o) const {
        SquareMatrix m;
        for (int i = 0; i < N * N; ++i) m.a_[i] = a_[i] - o.a_[i];
        return m;
    }

    SquareMatrix operator*(const SquareMatrix& o) const {
        SquareMatrix m;
        for (int r = 0; r < N; ++r)
            for (int k = 0; k < N; ++k) {
                const cplx v = (*this)(r, k);
                if (v == cplx{}) continue;
                for (int c = 0; c < N; ++c) m(r, c) += v * o(k, c);
            }
        return m;
    }

    friend SquareMatrix operator*(cplx s, const SquareMatrix& m) {
        SquareMatrix out;
        for (int i = 0; i < N * N; ++i) out.a_[i] = s * m.a_[i];
        return out;
    }

    SquareMatrix adjoint() const {
        SquareMatrix m;
        for (int r = 0; r < N; ++r)
            for (int c = 0; c < N; ++c) m(c, r) = std::conj((*this)(r, c));
        return m;
    }

    cplx trace() const {
        cplx t = 0.0;
        for (int i = 0; i < N; ++i) t += (*this)(i, i);
        return t;
    }

    double max_abs() const {
        double m = 0.0;
        for (const cplx& v : a_) m = std::max(m, std::abs(v));
        return m;
    }

private:
    std::array<cplx, N * N> a_{};
};

using Mat2 = SquareMatrix<2>;
using Mat4 = SquareMatrix<4>;

using Vec4 = std::array<cplx, 4>;

template <int N>
double max_abs_diff(const SquareMatrix<N>& a, const SquareMatrix<N>& b) {
    return (a - b).max_abs();
}

/// Kronecker product, ancilla factor first: basis order |a s> with a the
/// ancilla (1H) bit and s the system (13C) bit.
inline Mat4 kron(const Mat2& a, const Mat2& b) {
    Mat4 m;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l)
                    m(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
    return m;
}

template <int N>
bool hermitian_check(const SquareMatrix<N>& m, double tol = kDefaultTol) {
    return max_abs_diff(m, m.adjoint()) <= tol;
}

template <int N>
bool is_unitary(const SquareMatrix<N>& u, double tol = kUnitaryTol) {
    return max_abs_diff(u.adjoint() * u, SquareMatrix<N>::identity()) <= tol;
}

/// Distance 1 - |Tr(u^t v)|/dim in [0, 1]; zero exactly when u and v agree up
/// to a global phase. Both inputs must be unitary.
template <int N>
double gp_distance(const SquareMatrix<N>& u, const SquareMatrix<N>& v) {
    if (!is_unitary(u) || !is_unitary(v))
        throw std::invalid_argument("gp_distance: inputs must be unitary");
    return 1.0 - std::abs((u.adjoint() * v).trace()) / N;
}

inline Vec4 operator*(const Mat4& m, const Vec4& v) {
    Vec4 out{};
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) out[r] += m(r, c) * v[c];
    return out;
}

inline cplx inner(const Vec4& a, const Vec4& b) {
    cplx s = 0.0;
    for (int i = 0; i < 4; ++i) s += std::conj(a[i]) * b[i];
    return s;
}

inline double norm(const Vec4& v) { return std::sqrt(std::real(inner(v, v))); }

inline Mat4 outer(const Vec4& a, const Vec4& b) {
    Mat4 m;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) m(r, c) = a[r] * std::conj(b[c]);
    return m;
}

/// Eigenvalues of a Hermitian matrix by cyclic complex Jacobi rotations,
/// ascending order. Plenty for 4x4; not meant for anything bigger.
template <int N>
std::array<double, N> hermitian_eigenvalues(SquareMatrix<N> m, double tol = 1e-14) {
    if (!hermitian_check(m, 1e-9))
        throw std::invalid_argument("hermitian_eigenvalues: matrix is not Hermitian");
    for (int sweep = 0; sweep < 60; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < N; ++p)
            for (int q = p + 1; q < N; ++q) off = std::max(off, std::abs(m(p, q)));
        if (off <= tol) break;
        for (int p = 0; p < N; ++p) {
            for (int q = p + 1; q < N; ++q) {
                const cplx apq = m(p, q);
                if (std::abs(apq) <= tol) continue;
                // Unitary 2x2 rotation annihilating (p,q): phase out apq, then
                // a real Jacobi rotation.
                const double app = std::real(m(p, p));
                const double aqq = std::real(m(q, q));
                const cplx phase = apq / std::abs(apq);
                const double theta = 0.5 * std::atan2(2.0 * std::abs(apq), aqq - app);
                const double c = std::cos(theta);
                const cplx s = std::sin(theta) * phase;
                SquareMatrix<N> r = SquareMatrix<N>::identity();
                r(p, p) = c;
                r(p, q) = s;
                r(q, p) = -std::conj(s);
                r(q, q) = c;
                m = r.adjoint() * m * r;
            }
        }
    }
    std::array<double, N> ev{};
    for (int i = 0; i < N; ++i) ev[i] = std::real(m(i, i));
    std::sort(ev.begin(), ev.end());
    return ev;
}

template <int N>
double min_eigenvalue(const SquareMatrix<N>& m) {
    return hermitian_eigenvalues(m).front();
}

}  // namespace qdc
