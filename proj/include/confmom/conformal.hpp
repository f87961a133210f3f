#pragma once

#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "confmom/errors.hpp"
#include "confmom/fourvec.hpp"

// Momentum-space conformal group acting on off-shell four-momenta:
//   translation   q' = q + h
//   rotation      q' = L q                (L^T g L = g)
//   dilatation    q' = e^lambda q
//   inversion     q' = -M^2 q / q^2
//   special       q' = (q - hbar q^2/M^2) / (1 - 2 q.hbar/M^2 + hbar^2 q^2/M^4)
// All maps are pure functions of immutable values.

namespace confmom {

// Strictly positive conformal-breaking scale (natural units; MeV by convention).
class ScaleM {
  public:
    explicit ScaleM(double value);
    double value() const { return value_; }
    double sq() const { return value_ * value_; }

  private:
    double value_;
};

// Scale dimension of a scalar field in the scale-invariant case. Recorded for
// reference only; no momentum map depends on it.
inline constexpr double scale_dimension_scalar = -3.0;

struct Translation {
    FourMomentum h;
};

// Finite Lorentz matrix, validated L^T g L = g to 1e-12 at construction.
class Lorentz {
  public:
    explicit Lorentz(const Mat4& matrix);
    const Mat4& matrix() const { return matrix_; }

    static constexpr double kOrthogonalityTol = 1e-12;

  private:
    Mat4 matrix_;
};

Lorentz lorentz_boost(int axis, double rapidity);   // axis in {1,2,3}
Lorentz lorentz_rotation(int axis, double angle);   // rotation about spatial axis

struct Dilatation {
    double lambda = 0.0;
};

struct Inversion {};

struct SpecialConformal {
    FourMomentum hbar;
};

using ConformalElement =
    std::variant<Translation, Lorentz, Dilatation, Inversion, SpecialConformal>;

std::string element_kind_name(const ConformalElement& e);

// Composition container; elements are applied right-to-left, so a word reads
// like an operator product: {A, B, C} acts as A(B(C(q))). Empty word = identity.
struct ConformalWord {
    std::vector<ConformalElement> elements;
};

// Relative tolerance below which q^2 counts as lightlike for inversion
// purposes, measured against the Euclidean size of q and M.
inline constexpr double kLightlikeTol = 1e-12;

bool is_lightlike(const FourMomentum& q, const ScaleM& M, double tol = kLightlikeTol);

// q -> -M^2 q / q^2. Throws LightlikeInversion at q^2 = 0 within tolerance.
FourMomentum invert_momentum(const FourMomentum& q, const ScaleM& M);

FourMomentum apply(const ConformalElement& e, const FourMomentum& q, const ScaleM& M);

// Right-to-left fold of apply; domain failures are rethrown with the step
// index of the offending element attached.
FourMomentum apply_word(const ConformalWord& w, const FourMomentum& q, const ScaleM& M);

ConformalElement inverse_element(const ConformalElement& e);

// I e I conjugation: translations and special conformal elements swap,
// dilatations flip sign, rotations and the inversion itself are fixed.
ConformalElement conjugate_by_inversion(const ConformalElement& e);

// First-order variation of the group action at the identity,
//   dq^mu = dh^mu + (g dLambda)^mu_nu q^nu + dlambda q^mu
//           + (2 (q.dhbar) q^mu - q^2 dhbar^mu) / M^2,
// with dLambda antisymmetric in its lower indices (checked to 1e-12). Each
// term is the derivative of the matching finite one-parameter family.
FourMomentum infinitesimal_variation(const FourMomentum& q, const FourMomentum& dh,
                                     const Mat4& dLambda, double dlambda,
                                     const FourMomentum& dhbar, const ScaleM& M);

struct InvariantSplit {
    double invariant = 0.0;
    double anti_invariant = 0.0;
};

// f(q) = f_inv(q) + f_anti(q) with f_inv(q) = (f(q) + f(qI))/2 invariant under
// q -> qI = -M^2 q/q^2. Throws LightlikeInversion when q^2 = 0.
InvariantSplit invariant_split(const std::function<double(const FourMomentum&)>& f,
                               const FourMomentum& q, const ScaleM& M);

}  // namespace confmom
