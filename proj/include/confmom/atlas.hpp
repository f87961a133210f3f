#pragma once

#include <string>

#include "confmom/conformal.hpp"
#include "confmom/fourvec.hpp"

// Region atlas of the two de Sitter hyperboloids
//   internal: q^2 + q5^2 =  M^2   (regions I, III)
//   external: q^2 - q5^2 = -M^2   (regions II, IV)
// partitioned by q^2:
//   I:  0 <= q^2 <= M^2     II: q^2 > M^2
//   III: q^2 < -M^2         IV: -M^2 <= q^2 < 0
// q^2 = 0 belongs to region I (massless spectrum); inversion exchanges
// I <-> II and III <-> IV.

namespace confmom {

enum class Region { I, II, III, IV };
enum class Branch { internal, external };

std::string region_name(Region r);
std::string branch_name(Branch b);

// Canonical branch a region lives on in the atlas partition.
Branch branch_of(Region r);

// Total over all real q^2; boundary conventions as listed above.
Region classify(double q_sq, const ScaleM& M);

inline constexpr double kShellTol = 1e-10;

// Point of the atlas. q5 is canonicalized nonnegative (no operation
// distinguishes its sign). The shell residual and region label are validated
// at construction; a branch/region mismatch against the canonical atlas
// association is representable (translations can produce one).
class HyperboloidPoint {
  public:
    HyperboloidPoint(const FourMomentum& q, double q5, Branch branch, Region region,
                     const ScaleM& M);

    const FourMomentum& q() const { return q_; }
    double q5() const { return q5_; }
    double q5_sq() const { return q5_ * q5_; }
    Branch branch() const { return branch_; }
    Region region() const { return region_; }
    const ScaleM& M() const { return M_; }
    double q_sq() const { return minkowski_sq(q_); }

    // q^2 + q5^2 - M^2 (internal) or q^2 - q5^2 + M^2 (external)
    double shell_residual() const;

  private:
    FourMomentum q_;
    double q5_;
    Branch branch_;
    Region region_;
    ScaleM M_;
};

// Canonical attachment: region from classify, branch from the region,
// q5 = sqrt(M^2 - q^2) internal / sqrt(M^2 + q^2) external. The radicand is
// nonnegative in every region.
HyperboloidPoint attach(const FourMomentum& q, const ScaleM& M);

// q -> -M^2 q / q^2 with canonical re-attachment. Involution; swaps
// I <-> II and III <-> IV away from the |q^2| = M^2 boundary.
HyperboloidPoint invert_point(const HyperboloidPoint& p);

// Scale parameter with q^2 = +-M^2 e^{-2 lambda} (+ for I/II, - for III/IV).
// Diverges at q^2 = 0.
double lambda_of(const HyperboloidPoint& p);

// Reconstructs the point of given lambda in a region, with the representative
// momentum (sqrt(|q^2|),0,0,0) for q^2 > 0 and (0,sqrt(|q^2|),0,0) for
// q^2 < 0. Throws std::domain_error when lambda is out of the region's range.
HyperboloidPoint point_of_lambda(double lambda, Region region, const ScaleM& M);

struct ShiftResult {
    HyperboloidPoint point;
    // set when the shifted q5^2 would have been negative on the original
    // branch and the point was re-attached on the other branch
    bool branch_flipped = false;
};

// q' = q + h with q5^2' = q5^2 -+ (2 h.q + h^2) (- internal, + external); the
// branch shell value is preserved exactly. The region label is re-classified;
// compensating a branch transition is left to the caller.
ShiftResult translate_on_shell(const HyperboloidPoint& p, const FourMomentum& h);

// q' = q - e A with q5^2' re-imposed from the branch shell condition, which
// keeps q^2' +- q5^2' invariant.
ShiftResult gauge_shift(const HyperboloidPoint& p, const FourMomentum& A, double e_charge);

}  // namespace confmom
