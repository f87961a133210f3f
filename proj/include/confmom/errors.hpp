#pragma once

#include <stdexcept>
#include <string>

namespace confmom {

// Domain failures of the transformation maps. A step index is attached when
// the failure happened inside a composition word.
class DomainViolation : public std::runtime_error {
  public:
    explicit DomainViolation(const std::string& msg) : std::runtime_error(msg) {}

    int word_step() const { return word_step_; }
    bool in_word() const { return word_step_ >= 0; }
    void set_word_step(int step) { word_step_ = step; }

  private:
    int word_step_ = -1;
};

// Inversion requested with q^2 = 0 within tolerance (boundary mapped to infinity).
class LightlikeInversion : public DomainViolation {
  public:
    explicit LightlikeInversion(const std::string& msg) : DomainViolation(msg) {}
};

// Vanishing denominator of the special conformal closed form.
class SingularSpecialConformal : public DomainViolation {
  public:
    explicit SingularSpecialConformal(const std::string& msg) : DomainViolation(msg) {}
};

// Cone vector with kappa_5 + kappa_6 = 0 has no finite four-momentum image.
class ProjectiveInfinity : public DomainViolation {
  public:
    explicit ProjectiveInfinity(const std::string& msg) : DomainViolation(msg) {}
};

// The fifth-coordinate integrator exceeded its overflow guard.
class StepDiverged : public DomainViolation {
  public:
    explicit StepDiverged(const std::string& msg) : DomainViolation(msg) {}
};

// q5 = -M*eta pole of the source inversion.
class ResonantPole : public DomainViolation {
  public:
    explicit ResonantPole(const std::string& msg) : DomainViolation(msg) {}
};

// |pi| > f_pi: the chi(pi) quadratic has no real root.
class NoRealBranch : public DomainViolation {
  public:
    explicit NoRealBranch(const std::string& msg) : DomainViolation(msg) {}
};

// |pi| -> 0 singularity of the sigma-model interaction Lagrangian.
class PionPole : public DomainViolation {
  public:
    explicit PionPole(const std::string& msg) : DomainViolation(msg) {}
};

}  // namespace confmom
