#pragma once

#include <complex>
#include <string>
#include <vector>

#include "confmom/errors.hpp"
#include "confmom/fifthdim.hpp"

// The three explicit symmetry-breaking models built on the fifth-coordinate
// constraint: interaction terms l, derived 4D sources j, interaction
// Lagrangians, stationary structure and mass coefficients. Every model's
// L_INT and j change sign between the internal and external branches.

namespace confmom {

// ---------------------------------------------------------------- phi^4 ----

struct Phi4Params {
    double g = 0.0;  // coupling, nonzero for stationary-point searches
    BranchSpec spec;

    Phi4Params(double coupling, const BranchSpec& branch_spec);
};

double phi4_l(double phi, const Phi4Params& p);
double phi4_source(double phi, const Phi4Params& p);
double phi4_L_int(double phi, const Phi4Params& p);

enum class StationaryClass { minimum, maximum, degenerate };

struct StationaryPoint {
    double location = 0.0;
    double second_derivative = 0.0;
    StationaryClass cls = StationaryClass::degenerate;
};

struct Phi4StationaryReport {
    std::vector<StationaryPoint> stationary;  // roots of dL/dphi
    std::vector<double> lagrangian_zeros;     // roots of L itself
    // The nonzero Lagrangian zero is sometimes quoted as the location of the
    // extremum; the derivative actually vanishes at -3 eta / (2 g). Both are
    // returned so neither reading is silently corrected.
    double derivative_root = 0.0;         // -3 eta / (2 g), from root-finding
    double conventional_location = 0.0;   // -2 eta / g, the nonzero L zero
    std::string note;
};

// Bracketed root-finding on dL/dphi and on L; classification by the sign of
// the numeric second derivative.
Phi4StationaryReport phi4_stationary_points(const Phi4Params& p);

// ------------------------------------------------------- nonlinear sigma ----

struct SigmaParams {
    double f_pi = 93.0;  // MeV
    BranchSpec spec;

    SigmaParams(double f_pi_value, const BranchSpec& branch_spec);
};

struct PionVector {
    double a = 0.0, b = 0.0, c = 0.0;
};

inline double pion_norm_sq(const PionVector& v) { return v.a * v.a + v.b * v.b + v.c * v.c; }
inline double pion_norm(const PionVector& v) { return std::sqrt(pion_norm_sq(v)); }
PionVector pion_scale(double s, const PionVector& v);

// pi = chi / (1 + chi^2 / 4 f^2)
PionVector sigma_chi_to_pi(const PionVector& chi, const SigmaParams& p);

// Inverse change of variables; the root with chi -> pi as pi -> 0. Throws
// NoRealBranch when |pi| > f_pi.
PionVector sigma_pi_to_chi(const PionVector& pi, const SigmaParams& p);

enum class SigmaBranchSign { positive, negative };

// sigma = +-sqrt(f^2 - pi^2); the positive (vacuum-connected) branch is the
// default, the negative branch is exposed for exploration only.
double sigma_of_pi(const PionVector& pi, const SigmaParams& p,
                   SigmaBranchSign sign = SigmaBranchSign::positive);

// (pi^2 + sigma^2 - f^2)^2 for off-circle pairs.
double sigma_chir_penalty(const PionVector& pi, double sigma, const SigmaParams& p);

// L_INT = -(-1)^{a-1} M^2 (f sigma + sigma^2/2 + f (f+sigma)^2/(f-sigma));
// the last term is evaluated as f (f+sigma)^3 / pi^2, which also exposes the
// pi -> 0 pole. Throws PionPole at pi = 0 and NoRealBranch for |pi| > f.
double sigma_L_int(const PionVector& pi, const SigmaParams& p);

// Gradient of sigma_L_int:
// j^alpha = (-1)^{a-1} M^2 ((f+sigma)/sigma) [1 + f (3f-sigma)/(f-sigma)^2] pi^alpha
PionVector sigma_source(const PionVector& pi, const SigmaParams& p);

struct SigmaSeriesFit {
    double c_const = 0.0;  // expected -9/2 f^2
    double c_inv = 0.0;    // expected  8 f^4
    double c_2 = 0.0;      // expected -1
    double c_4 = 0.0;      // expected -1/(4 f^2)
    double max_residual = 0.0;
    double condition = 0.0;
};

// Least-squares fit of L_INT / ((-1)^{a-1} (-M^2)) against {1, 1/pi^2, pi^2,
// pi^4} on |pi| in [0.05 f, 0.3 f] (log-spaced samples). Throws on an
// ill-conditioned design matrix.
SigmaSeriesFit sigma_series_coefficients(const SigmaParams& p);

// Signed pi^2 mass coefficient read from the series fit: +2 M^2 on the
// external branch (so M = m_pi / sqrt 2), -2 M^2 on the internal one.
double pion_mass_sq(Branch branch, const ScaleM& M, double f_pi = 93.0);

// ----------------------------------------------------------------- higgs ----

struct HiggsParams {
    double f = 0.0;  // > 0
    BranchSpec spec;

    HiggsParams(double coupling, const BranchSpec& branch_spec);

    // vev of the shifted-field convention: 3M/f on the internal branch, 0 on
    // the external one.
    double vev() const;
};

double higgs_l(double phi, const HiggsParams& p);
double higgs_source(double phi, const HiggsParams& p);
double higgs_L_int(double phi, const HiggsParams& p);

// Shifted interaction Lagrangian
//   L(phi') = (-1)^{a-1} [ -(f M / 4) |u|^3 + (f^2/16) u^4 ],
//   u = (phi' + vev) / 2,
// u being the doublet-component combination the shifted form is written in.
double higgs_L_int_shifted(double phi_prime, const HiggsParams& p);

// u value for a given phi'.
double higgs_shifted_argument(double phi_prime, const HiggsParams& p);

enum class HiggsForm { unshifted, shifted };

struct HiggsStationaryReport {
    std::vector<StationaryPoint> stationary;  // in phi (unshifted) or phi' (shifted)
    std::vector<double> lagrangian_zeros;     // unshifted form only
    double u_star = 0.0;                      // shifted form: stationary value of u
    std::string note;
};

HiggsStationaryReport higgs_stationary_points(const HiggsParams& p, HiggsForm form);

// Rescaling between the working shifted field phi' and the canonically
// normalized real scalar H = phi'/sqrt(2): mass^2 = 2 * d^2L/dphi'^2.
inline constexpr double kHiggsCurvatureToMassSq = 2.0;

struct HiggsMassReport {
    double raw_curvature = 0.0;  // numeric d^2 L_shifted / dphi'^2 at the minimum
    double normalization = kHiggsCurvatureToMassSq;
    double mass_sq = 0.0;  // normalization * raw_curvature, target 9 M^2 / 8
    double u_star = 0.0;
};

HiggsMassReport higgs_mass_report(const HiggsParams& p);

// Internal branch only (the positive-curvature side).
double higgs_mass_sq(const HiggsParams& p);

// --------------------------------------------- gauge-translation source ----

// Plane-wave gauge mode with polarization; the four-vector analogue of a
// SpectralMode.
struct GaugeMode {
    FourMomentum k;
    double k5 = 0.0;
    FourMomentum polarization;
    Complex amplitude{1.0, 0.0};
};

// Momentum-space source of the gauge-translated scalar,
//   j = ie d.(A phi) + ie A.d phi - e^2 A.A phi,
// for plane waves: one output mode at q+k from the derivative terms with
// amplitude e ((q+k).pol + q.pol) and one at q+2k from the quadratic term
// with amplitude -e^2 (pol.pol). Output modes are generally off shell.
std::vector<SpectralMode> sed_source(const SpectralMode& phi_mode, const GaugeMode& A_mode,
                                     double e_charge);

}  // namespace confmom
