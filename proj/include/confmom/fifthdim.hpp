#pragma once

#include <complex>
#include <functional>
#include <iosfwd>
#include <vector>

#include "confmom/atlas.hpp"
#include "confmom/conformal.hpp"

// Fifth-coordinate constraint dynamics. The first-order condition
//   (i/M) d phi / dx5 = eta_a phi + l_a(phi, x5)
// is integrated as an ODE along x5; the 4D source attached to an interaction
// term l is
//   j_a = (-1)^{a-1} M^2 ((i/M) d/dx5 + eta_a) l_a,
// which for a plane wave l ~ e^{-i q5 x5} reduces to the momentum-space
// factor j = (-1)^{a-1} M (q5 + M eta_a) l.

namespace confmom {

using Complex = std::complex<double>;

// Branch data; eta is derived, never stored.
struct BranchSpec {
    Branch branch = Branch::internal;
    double m = 0.0;  // mass, >= 0
    ScaleM M;

    BranchSpec(Branch b, double mass, const ScaleM& scale);

    // +1 for the internal branch, -1 for the external one
    double sign() const { return branch == Branch::internal ? 1.0 : -1.0; }
};

// eta_inr = sqrt(|1 - m^2/M^2|), eta_ext = sqrt(1 + m^2/M^2)
double eta(const BranchSpec& spec);

// Uniform x5 grid whose anchor t5 is a grid point.
struct FifthGrid {
    double x5_min = 0.0;
    double step = 0.0;
    int n = 0;
    int anchor_index = 0;

    double x5(int i) const { return x5_min + step * i; }
    double anchor() const { return x5(anchor_index); }

    // n points centered on t5 spanning [t5 - half_range, t5 + half_range];
    // defaults cover 10/M on each side with 2048 points.
    static FifthGrid centered(double t5, const ScaleM& M, int n = 2048,
                              double half_range_over_M = 10.0);
};

struct FifthProfile {
    FifthGrid grid;
    std::vector<Complex> values;

    Complex at_anchor() const { return values.at(grid.anchor_index); }
};

using InteractionFn = std::function<Complex(Complex phi, double x5)>;

// Integrates the constraint from the anchor in both directions with
// classical 4th-order steps. Throws StepDiverged when |phi| exceeds the
// overflow guard (nonlinear l can blow up at finite x5).
FifthProfile solve_constraint(const BranchSpec& spec, Complex boundary_value,
                              const InteractionFn& l_fn, const FifthGrid& grid,
                              double overflow_guard = 1e12);

enum class DerivativeMethod {
    stencil4,  // centered 4th-order interior, one-sided 4th-order edges
    spectral,  // FFT derivative; requires a power-of-two periodic grid
};

std::vector<Complex> differentiate(const std::vector<Complex>& f, double step,
                                   DerivativeMethod method);

// j = (-1)^{a-1} M^2 ((i/M) d5 + eta) l sampled on l's grid.
FifthProfile source_from_l(const BranchSpec& spec, const FifthProfile& l,
                           DerivativeMethod method = DerivativeMethod::stencil4);

// Plane-wave form of the same map: amplitude multiplier for l ~ e^{-i q5 x5}.
Complex source_from_plane_wave(const BranchSpec& spec, Complex l_amplitude, double q5);

// Inverse of the plane-wave map. Throws ResonantPole at q5 = -M eta.
Complex l_from_source(Complex j_amplitude, double q5, const BranchSpec& spec);

// Momentum-space support datum (q, q5) with an amplitude. Carries data only;
// shell membership is validated by check_shell_support.
struct SpectralMode {
    FourMomentum q;
    double q5 = 0.0;
    Complex amplitude;
    Branch branch = Branch::internal;
};

// On-shell constructor through the atlas (q5 and branch from attach).
SpectralMode make_on_shell_mode(const FourMomentum& q, Complex amplitude, const ScaleM& M);

struct ShellSupportEntry {
    std::size_t index = 0;
    double shell_residual = 0.0;  // q^2 +- q5^2 -+ M^2 for the mode's branch
    bool shell_ok = false;
    bool window_ok = false;  // q^2 lies in a region belonging to the branch
    bool pass = false;
};

struct ShellSupportReport {
    std::vector<ShellSupportEntry> entries;
    double max_residual = 0.0;
    bool all_pass = true;
};

ShellSupportReport check_shell_support(const std::vector<SpectralMode>& modes,
                                       const ScaleM& M, double tol = 1e-10);

// CSV serialization of a profile, columns x5,re,im with full round-trip
// precision, and its inverse.
void write_profile_csv(const FifthProfile& profile, std::ostream& out);
FifthProfile read_profile_csv(std::istream& in);

struct FourDimReduction {
    Complex Phi;
    Complex J;
};

// Phi = phi_inr(t5) + phi_ext(t5), J likewise; the profiles must share the
// anchor.
FourDimReduction reduce_to_4d(const FifthProfile& phi1, const FifthProfile& phi2,
                              const FifthProfile& j1, const FifthProfile& j2);

}  // namespace confmom
