#include "confmom/cone.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace confmom {

double cone_dot(const ConeVector& a, const ConeVector& b) {
    return a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3] + a[4] * b[4] - a[5] * b[5];
}

double cone_euclidean_sq(const ConeVector& k) {
    double s = 0.0;
    for (double v : k.k) s += v * v;
    return s;
}

bool is_on_cone(const ConeVector& k, double tol) {
    return std::abs(cone_residual(k)) <= tol * cone_euclidean_sq(k) + 1e-300;
}

Mat6 mat6_identity() {
    Mat6 m{};
    for (int i = 0; i < 6; ++i) m[i][i] = 1.0;
    return m;
}

Mat6 eta6_metric() {
    Mat6 m{};
    m[0][0] = 1.0;
    m[1][1] = m[2][2] = m[3][3] = -1.0;
    m[4][4] = 1.0;
    m[5][5] = -1.0;
    return m;
}

Mat6 mat6_mul(const Mat6& a, const Mat6& b) {
    Mat6 r{};
    for (int i = 0; i < 6; ++i)
        for (int k = 0; k < 6; ++k) {
            const double aik = a[i][k];
            for (int j = 0; j < 6; ++j) r[i][j] += aik * b[k][j];
        }
    return r;
}

ConeVector mat6_apply(const Mat6& m, const ConeVector& k) {
    ConeVector r;
    for (int i = 0; i < 6; ++i) {
        double s = 0.0;
        for (int j = 0; j < 6; ++j) s += m[i][j] * k[j];
        r[i] = s;
    }
    return r;
}

namespace {

double mat6_max_abs(const Mat6& m) {
    double v = 0.0;
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) v = std::max(v, std::abs(m[i][j]));
    return v;
}

Mat6 mat6_transpose(const Mat6& a) {
    Mat6 r{};
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) r[i][j] = a[j][i];
    return r;
}

}  // namespace

SixRotation::SixRotation(const Mat6& matrix) : matrix_(matrix) {
    const Mat6 eta = eta6_metric();
    const Mat6 res = mat6_mul(mat6_transpose(matrix_), mat6_mul(eta, matrix_));
    double worst = 0.0;
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) worst = std::max(worst, std::abs(res[i][j] - eta[i][j]));
    const double scale = std::max(1.0, mat6_max_abs(matrix_));
    if (worst > kOrthogonalityTol * scale * scale)
        throw std::invalid_argument("6x6 matrix fails G^T eta G = eta within 1e-12");
}

ConeVector lift(const FourMomentum& q, double kplus, const ScaleM& M) {
    if (kplus == 0.0 || !std::isfinite(kplus))
        throw std::invalid_argument("lift requires kplus != 0");
    const double kminus = -minkowski_sq(q) * kplus / M.sq();
    ConeVector k;
    for (int i = 0; i < 4; ++i) k[i] = kplus * q[i];
    k[4] = 0.5 * M.value() * (kplus + kminus);
    k[5] = 0.5 * M.value() * (kplus - kminus);
    return k;
}

FourMomentum project(const ConeVector& k, const ScaleM& M) {
    const double denom = k[4] + k[5];
    const double scale = std::sqrt(cone_euclidean_sq(k));
    if (std::abs(denom) <= 1e-12 * std::max(scale, 1e-300))
        throw ProjectiveInfinity("cone vector with kappa_5 + kappa_6 = 0 projects to infinity");
    const double f = M.value() / denom;
    return {f * k[0], f * k[1], f * k[2], f * k[3]};
}

namespace {

// Translation in the (k_mu, k+, k-) basis.  Preservation of the quadratic
// form k_mu k^mu + M^2 k+ k- fixes the shift of k- given
// k_mu' = k_mu + h_mu k+ and k+' = k+:
//   k-' = k- - (2 h.k + h^2 k+) / M^2.
Mat6 translation_pm_basis(const FourMomentum& h, const ScaleM& M) {
    Mat6 m = mat6_identity();
    const double m2 = M.sq();
    for (int i = 0; i < 4; ++i) m[i][4] = h[i];
    // row for k-': -(2/M^2) g h contracted against the contravariant k_mu block
    m[5][0] = -2.0 * h.q0 / m2;
    m[5][1] = 2.0 * h.q1 / m2;
    m[5][2] = 2.0 * h.q2 / m2;
    m[5][3] = 2.0 * h.q3 / m2;
    m[5][4] = -minkowski_sq(h) / m2;
    return m;
}

// Change of basis (k_mu, k5, k6) -> (k_mu, k+, k-) and back.
Mat6 basis_to_pm(const ScaleM& M) {
    Mat6 c = mat6_identity();
    const double inv = 1.0 / M.value();
    c[4][4] = inv;
    c[4][5] = inv;
    c[5][4] = inv;
    c[5][5] = -inv;
    return c;
}

Mat6 basis_from_pm(const ScaleM& M) {
    Mat6 c = mat6_identity();
    const double half = 0.5 * M.value();
    c[4][4] = half;
    c[4][5] = half;
    c[5][4] = half;
    c[5][5] = -half;
    return c;
}

Mat6 translation_matrix(const FourMomentum& h, const ScaleM& M) {
    return mat6_mul(basis_from_pm(M), mat6_mul(translation_pm_basis(h, M), basis_to_pm(M)));
}

Mat6 inversion_matrix() {
    Mat6 m = mat6_identity();
    m[5][5] = -1.0;
    return m;
}

}  // namespace

SixRotation rotation_matrix(const ConformalElement& e, const ScaleM& M) {
    struct Visitor {
        const ScaleM& M;
        Mat6 operator()(const Translation& t) const { return translation_matrix(t.h, M); }
        Mat6 operator()(const Lorentz& l) const {
            Mat6 m = mat6_identity();
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) m[i][j] = l.matrix()[i][j];
            return m;
        }
        Mat6 operator()(const Dilatation& d) const {
            // k+ -> e^-lambda k+, k- -> e^lambda k- reproduces q -> e^lambda q.
            Mat6 m = mat6_identity();
            const double ch = std::cosh(d.lambda);
            const double sh = std::sinh(d.lambda);
            m[4][4] = ch;
            m[4][5] = -sh;
            m[5][4] = -sh;
            m[5][5] = ch;
            return m;
        }
        Mat6 operator()(const Inversion&) const { return inversion_matrix(); }
        Mat6 operator()(const SpecialConformal& k) const {
            const Mat6 inv = inversion_matrix();
            return mat6_mul(inv, mat6_mul(translation_matrix(k.hbar, M), inv));
        }
    };
    return SixRotation(std::visit(Visitor{M}, e));
}

SixRotation rotation_matrix(const ConformalWord& w, const ScaleM& M) {
    Mat6 g = mat6_identity();
    for (const auto& e : w.elements) g = mat6_mul(g, rotation_matrix(e, M).matrix());
    return SixRotation(g);
}

}  // namespace confmom
