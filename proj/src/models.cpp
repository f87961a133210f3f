#include "confmom/models.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace confmom {

namespace {

// Bisection on a bracketing interval; the callers guarantee a sign change.
template <typename Fn>
double bisect(Fn&& fn, double lo, double hi) {
    double flo = fn(lo);
    double fhi = fn(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0))
        throw std::invalid_argument("root bracket does not change sign");
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = fn(mid);
        if (fm == 0.0 || 0.5 * std::abs(hi - lo) < 1e-16 * (1.0 + std::abs(mid))) return mid;
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

// Richardson-extrapolated central second derivative.
template <typename Fn>
double second_derivative(Fn&& fn, double x) {
    const double h = 1e-4 * (1.0 + std::abs(x));
    auto d2 = [&](double step) {
        return (fn(x + step) - 2.0 * fn(x) + fn(x - step)) / (step * step);
    };
    const double coarse = d2(h);
    const double fine = d2(0.5 * h);
    return (4.0 * fine - coarse) / 3.0;
}

StationaryClass classify_curvature(double d2, double scale) {
    if (std::abs(d2) <= 1e-6 * scale) return StationaryClass::degenerate;
    return d2 > 0.0 ? StationaryClass::minimum : StationaryClass::maximum;
}

}  // namespace

// ---------------------------------------------------------------- phi^4 ----

Phi4Params::Phi4Params(double coupling, const BranchSpec& branch_spec)
    : g(coupling), spec(branch_spec) {}

double phi4_l(double phi, const Phi4Params& p) { return p.g * phi * phi; }

double phi4_source(double phi, const Phi4Params& p) {
    const double eta_a = eta(p.spec);
    return p.spec.sign() * p.spec.M.sq() *
           (3.0 * p.g * eta_a * phi * phi + 2.0 * p.g * p.g * phi * phi * phi);
}

double phi4_L_int(double phi, const Phi4Params& p) {
    const double eta_a = eta(p.spec);
    const double phi3 = phi * phi * phi;
    return p.spec.sign() * p.spec.M.sq() * (p.g * eta_a * phi3 + 0.5 * p.g * p.g * phi3 * phi);
}

Phi4StationaryReport phi4_stationary_points(const Phi4Params& p) {
    if (p.g == 0.0) throw std::invalid_argument("stationary search needs g != 0");
    const double eta_a = eta(p.spec);
    Phi4StationaryReport report;

    auto dL = [&](double phi) { return phi4_source(phi, p); };
    auto L = [&](double phi) { return phi4_L_int(phi, p); };
    const double curvature_scale = std::abs(p.spec.M.sq() * p.g * eta_a) + p.spec.M.sq() * p.g * p.g;

    // phi = 0: double root of the derivative, curvature vanishes.
    report.stationary.push_back({0.0, 0.0, StationaryClass::degenerate});
    report.lagrangian_zeros.push_back(0.0);

    if (eta_a > 0.0) {
        const double lo = -3.0 * eta_a / p.g;
        const double hi = -0.5 * eta_a / p.g;
        const double root = bisect(dL, std::min(lo, hi), std::max(lo, hi));
        const double d2 = second_derivative(L, root);
        report.stationary.push_back({root, d2, classify_curvature(d2, curvature_scale)});
        report.derivative_root = root;

        const double zlo = -3.0 * eta_a / p.g;
        const double zhi = -1.0 * eta_a / p.g;
        const double zero = bisect(L, std::min(zlo, zhi), std::max(zlo, zhi));
        report.lagrangian_zeros.push_back(zero);
        report.conventional_location = zero;
        report.note =
            "the nonzero zero crossing of L (-2 eta/g) is sometimes quoted as its "
            "extremum; the derivative vanishes at -3 eta/(2g) instead";
    }
    return report;
}

// ------------------------------------------------------- nonlinear sigma ----

SigmaParams::SigmaParams(double f_pi_value, const BranchSpec& branch_spec)
    : f_pi(f_pi_value), spec(branch_spec) {
    if (!(f_pi > 0.0)) throw std::invalid_argument("f_pi must be positive");
}

PionVector pion_scale(double s, const PionVector& v) { return {s * v.a, s * v.b, s * v.c}; }

PionVector sigma_chi_to_pi(const PionVector& chi, const SigmaParams& p) {
    const double s = 1.0 / (1.0 + pion_norm_sq(chi) / (4.0 * p.f_pi * p.f_pi));
    return pion_scale(s, chi);
}

PionVector sigma_pi_to_chi(const PionVector& pi, const SigmaParams& p) {
    const double r = pion_norm(pi);
    if (r == 0.0) return {};
    if (r > p.f_pi) {
        std::ostringstream os;
        os << "no real chi branch for |pi| = " << r << " > f_pi = " << p.f_pi;
        throw NoRealBranch(os.str());
    }
    // minus root of (r/4f^2) c^2 - c + r = 0 written cancellation-free
    const double disc = std::sqrt(std::max(0.0, 1.0 - (r / p.f_pi) * (r / p.f_pi)));
    const double c = 2.0 * r / (1.0 + disc);
    return pion_scale(c / r, pi);
}

double sigma_of_pi(const PionVector& pi, const SigmaParams& p, SigmaBranchSign sign) {
    const double rad = p.f_pi * p.f_pi - pion_norm_sq(pi);
    if (rad < 0.0) {
        std::ostringstream os;
        os << "sigma undefined for |pi| = " << pion_norm(pi) << " > f_pi = " << p.f_pi;
        throw NoRealBranch(os.str());
    }
    const double s = std::sqrt(rad);
    return sign == SigmaBranchSign::positive ? s : -s;
}

double sigma_chir_penalty(const PionVector& pi, double sigma, const SigmaParams& p) {
    const double d = pion_norm_sq(pi) + sigma * sigma - p.f_pi * p.f_pi;
    return d * d;
}

namespace {

void require_off_pole(const PionVector& pi, const SigmaParams& p) {
    if (pion_norm_sq(pi) < 1e-24 * p.f_pi * p.f_pi)
        throw PionPole("sigma-model interaction diverges as |pi| -> 0");
}

}  // namespace

double sigma_L_int(const PionVector& pi, const SigmaParams& p) {
    require_off_pole(pi, p);
    const double f = p.f_pi;
    const double sigma = sigma_of_pi(pi, p);
    // f (f+sigma)^2/(f-sigma) = f (f+sigma)^3 / pi^2, avoiding the f-sigma
    // cancellation at small |pi|
    const double fs = f + sigma;
    const double last = f * fs * fs * fs / pion_norm_sq(pi);
    return -p.spec.sign() * p.spec.M.sq() * (f * sigma + 0.5 * sigma * sigma + last);
}

PionVector sigma_source(const PionVector& pi, const SigmaParams& p) {
    require_off_pole(pi, p);
    const double f = p.f_pi;
    const double sigma = sigma_of_pi(pi, p);
    if (sigma < 1e-12 * f)
        throw DomainViolation("sigma source has a 1/sigma pole at the chiral edge |pi| = f_pi");
    // (f - sigma) = pi^2 / (f + sigma), same cancellation-free form
    const double fminus = pion_norm_sq(pi) / (f + sigma);
    const double bracket = 1.0 + f * (3.0 * f - sigma) / (fminus * fminus);
    const double factor = p.spec.sign() * p.spec.M.sq() * ((f + sigma) / sigma) * bracket;
    return pion_scale(factor, pi);
}

namespace {

// Solve the KxK normal equations N c = b by Gauss-Jordan elimination with
// partial pivoting; returns the solution and a 1-norm condition estimate via
// the explicit inverse.
template <std::size_t K>
struct SmallSolve {
    std::array<double, K> solution{};
    double condition = 0.0;
};

template <std::size_t K>
SmallSolve<K> solve_normal(std::array<std::array<double, K>, K> N, std::array<double, K> b) {
    std::array<std::array<double, 2 * K>, K> aug{};
    for (std::size_t i = 0; i < K; ++i) {
        for (std::size_t j = 0; j < K; ++j) aug[i][j] = N[i][j];
        aug[i][K + i] = 1.0;
    }
    std::array<double, K> rhs = b;
    for (std::size_t col = 0; col < K; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < K; ++r)
            if (std::abs(aug[r][col]) > std::abs(aug[piv][col])) piv = r;
        if (std::abs(aug[piv][col]) < 1e-300)
            throw std::runtime_error("singular normal matrix in series fit");
        std::swap(aug[col], aug[piv]);
        std::swap(rhs[col], rhs[piv]);
        const double inv = 1.0 / aug[col][col];
        for (std::size_t j = 0; j < 2 * K; ++j) aug[col][j] *= inv;
        rhs[col] *= inv;
        for (std::size_t r = 0; r < K; ++r) {
            if (r == col) continue;
            const double m = aug[r][col];
            if (m == 0.0) continue;
            for (std::size_t j = 0; j < 2 * K; ++j) aug[r][j] -= m * aug[col][j];
            rhs[r] -= m * rhs[col];
        }
    }
    double norm_n = 0.0, norm_inv = 0.0;
    for (std::size_t j = 0; j < K; ++j) {
        double cn = 0.0, ci = 0.0;
        for (std::size_t i = 0; i < K; ++i) {
            cn += std::abs(N[i][j]);
            ci += std::abs(aug[i][K + j]);
        }
        norm_n = std::max(norm_n, cn);
        norm_inv = std::max(norm_inv, ci);
    }
    SmallSolve<K> out;
    out.solution = rhs;
    out.condition = norm_n * norm_inv;
    return out;
}

}  // namespace

SigmaSeriesFit sigma_series_coefficients(const SigmaParams& p) {
    const double f = p.f_pi;
    constexpr std::size_t K = 6;  // {1, 1/t, t, t^2} + two deflation terms
    const int npts = 96;

    // dimensionless variable t = pi^2 / f^2 over |pi| in [0.05 f, 0.3 f]
    std::vector<double> ts(npts);
    for (int i = 0; i < npts; ++i) {
        const double r = 0.05 + (0.3 - 0.05) * static_cast<double>(i) / (npts - 1);
        ts[i] = r * r;
    }

    // t^3 and t^4 act as nuisance terms: the Laurent series continues beyond
    // t^2, and without them its tail biases the reported coefficients.
    auto raw_basis = [](double t, std::size_t j) {
        switch (j) {
            case 0: return 1.0;
            case 1: return 1.0 / t;
            case 2: return t;
            case 3: return t * t;
            case 4: return t * t * t;
            default: return t * t * t * t;
        }
    };

    std::array<double, K> col_norm{};
    for (std::size_t j = 0; j < K; ++j) {
        double s = 0.0;
        for (double t : ts) s += raw_basis(t, j) * raw_basis(t, j);
        col_norm[j] = std::sqrt(s);
    }

    // data: L_INT / ((-1)^{a-1} (-M^2) f^2) as a function of t
    const double denom = -p.spec.sign() * p.spec.M.sq() * f * f;
    std::vector<double> data(npts);
    std::array<std::array<double, K>, K> N{};
    std::array<double, K> rhs{};
    for (int i = 0; i < npts; ++i) {
        const PionVector pi{f * std::sqrt(ts[i]), 0.0, 0.0};
        data[i] = sigma_L_int(pi, p) / denom;
        for (std::size_t a = 0; a < K; ++a) {
            const double ba = raw_basis(ts[i], a) / col_norm[a];
            rhs[a] += ba * data[i];
            for (std::size_t b = 0; b < K; ++b)
                N[a][b] += ba * raw_basis(ts[i], b) / col_norm[b];
        }
    }
    const SmallSolve<K> sol = solve_normal<K>(N, rhs);
    if (sol.condition > 1e12)
        throw std::runtime_error("series fit design matrix is ill-conditioned");

    std::array<double, K> coef{};  // coefficients of the raw t-basis
    for (std::size_t j = 0; j < K; ++j) coef[j] = sol.solution[j] / col_norm[j];

    SigmaSeriesFit fit;
    fit.condition = sol.condition;
    for (int i = 0; i < npts; ++i) {
        double model = 0.0;
        for (std::size_t j = 0; j < K; ++j) model += coef[j] * raw_basis(ts[i], j);
        // residual in the fitted-variable units (f_pi^2 scale)
        fit.max_residual = std::max(fit.max_residual, std::abs(model - data[i]) * f * f);
    }
    fit.c_const = coef[0] * f * f;
    fit.c_inv = coef[1] * f * f * f * f;
    fit.c_2 = coef[2];
    fit.c_4 = coef[3] / (f * f);
    return fit;
}

double pion_mass_sq(Branch branch, const ScaleM& M, double f_pi) {
    const SigmaParams params(f_pi, BranchSpec(branch, 0.0, M));
    const SigmaSeriesFit fit = sigma_series_coefficients(params);
    // pi^2 coefficient of L_INT is -(-1)^{a-1} M^2 c_2; the mass term reads
    // L = -(m^2/2) pi^2 + ...
    const double sign = branch == Branch::internal ? 1.0 : -1.0;
    return sign * 2.0 * M.sq() * fit.c_2;
}

// ----------------------------------------------------------------- higgs ----

HiggsParams::HiggsParams(double coupling, const BranchSpec& branch_spec)
    : f(coupling), spec(branch_spec) {
    if (!(f > 0.0)) throw std::invalid_argument("higgs coupling f must be positive");
}

double HiggsParams::vev() const {
    return spec.branch == Branch::internal ? 3.0 * spec.M.value() / f : 0.0;
}

double higgs_l(double phi, const HiggsParams& p) {
    return -(p.f / p.spec.M.value()) * phi * std::abs(phi);
}

double higgs_source(double phi, const HiggsParams& p) {
    return p.spec.sign() *
           (-3.0 * p.f * p.spec.M.value() * phi * std::abs(phi) + 2.0 * p.f * p.f * phi * phi * phi);
}

double higgs_L_int(double phi, const HiggsParams& p) {
    const double phi2 = phi * phi;
    return p.spec.sign() *
           (-p.f * p.spec.M.value() * phi2 * std::abs(phi) + 0.5 * p.f * p.f * phi2 * phi2);
}

double higgs_shifted_argument(double phi_prime, const HiggsParams& p) {
    return 0.5 * (phi_prime + p.vev());
}

double higgs_L_int_shifted(double phi_prime, const HiggsParams& p) {
    const double u = higgs_shifted_argument(phi_prime, p);
    const double u2 = u * u;
    return p.spec.sign() * (-(p.f * p.spec.M.value() / 4.0) * u2 * std::abs(u) +
                            (p.f * p.f / 16.0) * u2 * u2);
}

HiggsStationaryReport higgs_stationary_points(const HiggsParams& p, HiggsForm form) {
    const double M = p.spec.M.value();
    HiggsStationaryReport report;
    const double curvature_scale = M * M;

    if (form == HiggsForm::unshifted) {
        auto dL = [&](double phi) { return higgs_source(phi, p); };
        auto L = [&](double phi) { return higgs_L_int(phi, p); };
        report.stationary.push_back({0.0, 0.0, StationaryClass::degenerate});
        report.lagrangian_zeros.push_back(0.0);
        for (double s : {1.0, -1.0}) {
            const double root = bisect(dL, s * M / p.f, s * 2.0 * M / p.f);
            const double d2 = second_derivative(L, root);
            report.stationary.push_back({root, d2, classify_curvature(d2, curvature_scale)});
            report.lagrangian_zeros.push_back(bisect(L, s * 1.5 * M / p.f, s * 3.0 * M / p.f));
        }
        report.note =
            "numeric classification confirms minima of the internal L at +-3M/(2f) with "
            "zeros at 0 and +-2M/f; the source used here is the exact gradient of L "
            "(quoted variants differ by an overall M^2 normalization)";
        return report;
    }

    auto L = [&](double phi_prime) { return higgs_L_int_shifted(phi_prime, p); };
    auto dL = [&](double phi_prime) {
        const double u = higgs_shifted_argument(phi_prime, p);
        // d/dphi' = (1/2) d/du
        return 0.5 * p.spec.sign() *
               (-(3.0 * p.f * M / 4.0) * u * std::abs(u) + (p.f * p.f / 4.0) * u * u * u);
    };
    // degenerate stationary point where u = 0
    report.stationary.push_back({-p.vev(), 0.0, StationaryClass::degenerate});
    for (double s : {1.0, -1.0}) {
        // u in (2M/f, 4M/f) brackets |u*| = 3M/f; phi' = 2u - vev
        const double lo = 2.0 * (s * 2.0 * M / p.f) - p.vev();
        const double hi = 2.0 * (s * 4.0 * M / p.f) - p.vev();
        const double root = bisect(dL, std::min(lo, hi), std::max(lo, hi));
        const double d2 = second_derivative(L, root);
        report.stationary.push_back({root, d2, classify_curvature(d2, curvature_scale)});
        if (s > 0.0) report.u_star = higgs_shifted_argument(root, p);
    }
    report.note = "numeric classification confirms minima of the shifted internal L at "
                  "|u| = 3M/f";
    return report;
}

HiggsMassReport higgs_mass_report(const HiggsParams& p) {
    if (p.spec.branch != Branch::internal)
        throw std::invalid_argument("higgs mass extraction is defined on the internal branch");
    const HiggsStationaryReport stat = higgs_stationary_points(p, HiggsForm::shifted);
    double phi_star = 0.0;
    bool found = false;
    for (const auto& s : stat.stationary) {
        if (s.cls == StationaryClass::minimum &&
            higgs_shifted_argument(s.location, p) > 0.0) {
            phi_star = s.location;
            found = true;
        }
    }
    if (!found) throw std::runtime_error("no positive-u minimum of the shifted Lagrangian");
    auto L = [&](double phi_prime) { return higgs_L_int_shifted(phi_prime, p); };
    HiggsMassReport report;
    report.raw_curvature = second_derivative(L, phi_star);
    report.mass_sq = kHiggsCurvatureToMassSq * report.raw_curvature;
    report.u_star = higgs_shifted_argument(phi_star, p);
    return report;
}

double higgs_mass_sq(const HiggsParams& p) { return higgs_mass_report(p).mass_sq; }

// --------------------------------------------- gauge-translation source ----

std::vector<SpectralMode> sed_source(const SpectralMode& phi_mode, const GaugeMode& A_mode,
                                     double e_charge) {
    if (e_charge == 0.0) return {};
    const FourMomentum& q = phi_mode.q;
    const FourMomentum& k = A_mode.k;
    const FourMomentum& pol = A_mode.polarization;

    // ie d.(A phi) + ie A.d phi: derivatives become -i momentum contractions
    const Complex linear_amp = e_charge * A_mode.amplitude * phi_mode.amplitude *
                               (minkowski_dot(q + k, pol) + minkowski_dot(q, pol));
    const Complex quad_amp = -e_charge * e_charge * minkowski_sq(pol) * A_mode.amplitude *
                             A_mode.amplitude * phi_mode.amplitude;

    const bool zero_k = k.q0 == 0.0 && k.q1 == 0.0 && k.q2 == 0.0 && k.q3 == 0.0 &&
                        A_mode.k5 == 0.0;
    std::vector<SpectralMode> out;
    if (zero_k) {
        out.push_back({q, phi_mode.q5, linear_amp + quad_amp, phi_mode.branch});
        return out;
    }
    out.push_back({q + k, phi_mode.q5 + A_mode.k5, linear_amp, phi_mode.branch});
    out.push_back(
        {q + 2.0 * k, phi_mode.q5 + 2.0 * A_mode.k5, quad_amp, phi_mode.branch});
    return out;
}

}  // namespace confmom
