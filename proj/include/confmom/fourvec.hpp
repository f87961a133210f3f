#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>

// Minkowski four-vector and small fixed-size matrix helpers.
// Metric convention throughout: g = diag(+1, -1, -1, -1).

namespace confmom {

struct FourMomentum {
    double q0 = 0.0;
    double q1 = 0.0;
    double q2 = 0.0;
    double q3 = 0.0;

    double& operator[](std::size_t i) { return (&q0)[i]; }
    double operator[](std::size_t i) const { return (&q0)[i]; }
};

inline FourMomentum operator+(const FourMomentum& a, const FourMomentum& b) {
    return {a.q0 + b.q0, a.q1 + b.q1, a.q2 + b.q2, a.q3 + b.q3};
}

inline FourMomentum operator-(const FourMomentum& a, const FourMomentum& b) {
    return {a.q0 - b.q0, a.q1 - b.q1, a.q2 - b.q2, a.q3 - b.q3};
}

inline FourMomentum operator*(double c, const FourMomentum& a) {
    return {c * a.q0, c * a.q1, c * a.q2, c * a.q3};
}

inline FourMomentum operator-(const FourMomentum& a) { return -1.0 * a; }

// q.p with metric (+,-,-,-); the single Minkowski product used everywhere.
inline double minkowski_dot(const FourMomentum& a, const FourMomentum& b) {
    return a.q0 * b.q0 - a.q1 * b.q1 - a.q2 * b.q2 - a.q3 * b.q3;
}

inline double minkowski_sq(const FourMomentum& q) { return minkowski_dot(q, q); }

// Euclidean sum of squares, used only for tolerance scales.
inline double euclidean_sq(const FourMomentum& q) {
    return q.q0 * q.q0 + q.q1 * q.q1 + q.q2 * q.q2 + q.q3 * q.q3;
}

inline double max_abs_component(const FourMomentum& q) {
    return std::max(std::max(std::abs(q.q0), std::abs(q.q1)),
                    std::max(std::abs(q.q2), std::abs(q.q3)));
}

using Mat4 = std::array<std::array<double, 4>, 4>;

inline Mat4 mat4_identity() {
    Mat4 m{};
    for (int i = 0; i < 4; ++i) m[i][i] = 1.0;
    return m;
}

inline Mat4 mat4_zero() { return Mat4{}; }

// diag(+1,-1,-1,-1)
inline Mat4 minkowski_metric() {
    Mat4 g{};
    g[0][0] = 1.0;
    g[1][1] = g[2][2] = g[3][3] = -1.0;
    return g;
}

inline Mat4 mat4_mul(const Mat4& a, const Mat4& b) {
    Mat4 r{};
    for (int i = 0; i < 4; ++i)
        for (int k = 0; k < 4; ++k) {
            const double aik = a[i][k];
            for (int j = 0; j < 4; ++j) r[i][j] += aik * b[k][j];
        }
    return r;
}

inline Mat4 mat4_transpose(const Mat4& a) {
    Mat4 r{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r[i][j] = a[j][i];
    return r;
}

inline FourMomentum mat4_apply(const Mat4& m, const FourMomentum& q) {
    FourMomentum r;
    for (int i = 0; i < 4; ++i) {
        double s = 0.0;
        for (int j = 0; j < 4; ++j) s += m[i][j] * q[j];
        r[i] = s;
    }
    return r;
}

inline double mat4_max_abs(const Mat4& m) {
    double v = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) v = std::max(v, std::abs(m[i][j]));
    return v;
}

}  // namespace confmom
