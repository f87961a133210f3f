#pragma once

#include <array>

#include "confmom/conformal.hpp"
#include "confmom/fourvec.hpp"

// Dirac cone realization: every conformal element acts as a linear
// pseudo-rotation of a six-vector (k0, k1, k2, k3, k5, k6) with metric
// eta6 = diag(+1,-1,-1,-1,+1,-1) on the null cone k.k = 0. Four-momenta are
// recovered projectively through q = M k_mu / (k5 + k6).
//
// The identical construction works in coordinate space with a length
// parameter in place of 1/M; only the momentum form is instantiated here.

namespace confmom {

struct ConeVector {
    // component order: k0, k1, k2, k3, k5, k6
    std::array<double, 6> k{};

    double& operator[](std::size_t i) { return k[i]; }
    double operator[](std::size_t i) const { return k[i]; }

    double kplus(const ScaleM& M) const { return (k[4] + k[5]) / M.value(); }
    double kminus(const ScaleM& M) const { return (k[4] - k[5]) / M.value(); }
};

// eta6-contraction k.k' = k0 k0' - k.k' (spatial) + k5 k5' - k6 k6'
double cone_dot(const ConeVector& a, const ConeVector& b);
inline double cone_residual(const ConeVector& k) { return cone_dot(k, k); }
double cone_euclidean_sq(const ConeVector& k);

inline constexpr double kConeTol = 1e-12;
bool is_on_cone(const ConeVector& k, double tol = kConeTol);

using Mat6 = std::array<std::array<double, 6>, 6>;

Mat6 mat6_identity();
Mat6 mat6_mul(const Mat6& a, const Mat6& b);
ConeVector mat6_apply(const Mat6& m, const ConeVector& k);
Mat6 eta6_metric();

// 6x6 pseudo-rotation, validated G^T eta6 G = eta6 to 1e-12 at construction.
class SixRotation {
  public:
    explicit SixRotation(const Mat6& matrix);
    const Mat6& matrix() const { return matrix_; }

    static constexpr double kOrthogonalityTol = 1e-12;

  private:
    Mat6 matrix_;
};

// Lift q to the cone at projective scale kplus != 0; k_mu = kplus q_mu and
// kminus = -q^2 kplus / M^2 is forced by the cone condition.
ConeVector lift(const FourMomentum& q, double kplus, const ScaleM& M);

// q_mu = M k_mu / (k5 + k6); homogeneous of degree zero. Throws
// ProjectiveInfinity when k5 + k6 vanishes within tolerance (images of
// q^2 = infinity).
FourMomentum project(const ConeVector& k, const ScaleM& M);

// The pseudo-rotation realizing a conformal element:
//   inversion   reflection of k6
//   rotation    block Lorentz + identity on (5,6)
//   dilatation  hyperbolic rotation in the (5,6) plane, kplus -> e^-lambda kplus
//   translation kmu' = kmu + h mu kplus, kplus fixed, kminus shifted so the
//               quadratic form is preserved
//   special     product of the inversion/translation/inversion factors
SixRotation rotation_matrix(const ConformalElement& e, const ScaleM& M);

// Product of per-element matrices in word order (right factor acts first).
SixRotation rotation_matrix(const ConformalWord& w, const ScaleM& M);

}  // namespace confmom
