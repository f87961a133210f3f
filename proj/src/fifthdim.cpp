#include "confmom/fifthdim.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace confmom {

BranchSpec::BranchSpec(Branch b, double mass, const ScaleM& scale)
    : branch(b), m(mass), M(scale) {
    if (mass < 0.0 || !std::isfinite(mass))
        throw std::invalid_argument("BranchSpec mass must be finite and >= 0");
}

double eta(const BranchSpec& spec) {
    const double r = spec.m * spec.m / spec.M.sq();
    return spec.branch == Branch::internal ? std::sqrt(std::abs(1.0 - r))
                                           : std::sqrt(1.0 + r);
}

FifthGrid FifthGrid::centered(double t5, const ScaleM& M, int n, double half_range_over_M) {
    if (n < 5) throw std::invalid_argument("grid needs at least 5 points");
    if (!(half_range_over_M > 0.0))
        throw std::invalid_argument("grid half range must be positive");
    const double half = half_range_over_M / M.value();
    FifthGrid g;
    g.n = n;
    g.step = 2.0 * half / (n - 1);
    // t5 is always a grid point; for even n the window is asymmetric by one step
    g.anchor_index = (n - 1) / 2;
    g.x5_min = t5 - g.step * g.anchor_index;
    return g;
}

namespace {

// d phi / dx5 = -i M (eta phi + l(phi, x5))
Complex constraint_rhs(const BranchSpec& spec, double eta_a, const InteractionFn& l_fn,
                       Complex phi, double x5) {
    const Complex inter = l_fn ? l_fn(phi, x5) : Complex(0.0, 0.0);
    return Complex(0.0, -spec.M.value()) * (eta_a * phi + inter);
}

Complex rk4_step(const BranchSpec& spec, double eta_a, const InteractionFn& l_fn,
                 Complex phi, double x5, double h) {
    const Complex k1 = constraint_rhs(spec, eta_a, l_fn, phi, x5);
    const Complex k2 = constraint_rhs(spec, eta_a, l_fn, phi + 0.5 * h * k1, x5 + 0.5 * h);
    const Complex k3 = constraint_rhs(spec, eta_a, l_fn, phi + 0.5 * h * k2, x5 + 0.5 * h);
    const Complex k4 = constraint_rhs(spec, eta_a, l_fn, phi + h * k3, x5 + h);
    return phi + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

}  // namespace

FifthProfile solve_constraint(const BranchSpec& spec, Complex boundary_value,
                              const InteractionFn& l_fn, const FifthGrid& grid,
                              double overflow_guard) {
    const double eta_a = eta(spec);
    FifthProfile out;
    out.grid = grid;
    out.values.assign(grid.n, Complex(0.0, 0.0));
    out.values[grid.anchor_index] = boundary_value;

    auto advance = [&](int from, int to) {
        const int dir = to > from ? 1 : -1;
        Complex phi = out.values[from];
        for (int i = from; i != to; i += dir) {
            phi = rk4_step(spec, eta_a, l_fn, phi, grid.x5(i), dir * grid.step);
            if (!std::isfinite(phi.real()) || !std::isfinite(phi.imag()) ||
                std::abs(phi) > overflow_guard) {
                std::ostringstream os;
                os << "constraint solution diverged near x5 = " << grid.x5(i + dir);
                throw StepDiverged(os.str());
            }
            out.values[i + dir] = phi;
        }
    };
    advance(grid.anchor_index, grid.n - 1);
    advance(grid.anchor_index, 0);
    return out;
}

namespace {

// In-place iterative radix-2 FFT (sign = -1 forward, +1 inverse, unscaled).
void fft_radix2(std::vector<Complex>& a, int sign) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = sign * 2.0 * M_PI / static_cast<double>(len);
        const Complex wl(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            Complex w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                const Complex u = a[i + k];
                const Complex v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wl;
            }
        }
    }
}

std::vector<Complex> spectral_derivative(const std::vector<Complex>& f, double step) {
    const std::size_t n = f.size();
    if (n == 0 || (n & (n - 1)) != 0)
        throw std::invalid_argument("spectral derivative needs a power-of-two grid");
    std::vector<Complex> a = f;
    fft_radix2(a, -1);
    const double dk = 2.0 * M_PI / (step * static_cast<double>(n));
    for (std::size_t j = 0; j < n; ++j) {
        const double freq = j <= n / 2 ? static_cast<double>(j)
                                       : static_cast<double>(j) - static_cast<double>(n);
        // Nyquist mode has no well-defined first derivative; zero it.
        const double k = (j == n / 2) ? 0.0 : freq * dk;
        a[j] *= Complex(0.0, k);
    }
    fft_radix2(a, +1);
    const double inv_n = 1.0 / static_cast<double>(n);
    for (auto& v : a) v *= inv_n;
    return a;
}

std::vector<Complex> stencil_derivative(const std::vector<Complex>& f, double step) {
    const int n = static_cast<int>(f.size());
    if (n < 5) throw std::invalid_argument("stencil derivative needs at least 5 points");
    std::vector<Complex> d(n);
    const double inv12h = 1.0 / (12.0 * step);
    d[0] = (-25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] - 3.0 * f[4]) * inv12h;
    d[1] = (-3.0 * f[0] - 10.0 * f[1] + 18.0 * f[2] - 6.0 * f[3] + f[4]) * inv12h;
    for (int i = 2; i < n - 2; ++i)
        d[i] = (-f[i + 2] + 8.0 * f[i + 1] - 8.0 * f[i - 1] + f[i - 2]) * inv12h;
    d[n - 2] = (3.0 * f[n - 1] + 10.0 * f[n - 2] - 18.0 * f[n - 3] + 6.0 * f[n - 4] -
                f[n - 5]) *
               inv12h;
    d[n - 1] = (25.0 * f[n - 1] - 48.0 * f[n - 2] + 36.0 * f[n - 3] - 16.0 * f[n - 4] +
                3.0 * f[n - 5]) *
               inv12h;
    return d;
}

}  // namespace

std::vector<Complex> differentiate(const std::vector<Complex>& f, double step,
                                   DerivativeMethod method) {
    return method == DerivativeMethod::spectral ? spectral_derivative(f, step)
                                                : stencil_derivative(f, step);
}

FifthProfile source_from_l(const BranchSpec& spec, const FifthProfile& l,
                           DerivativeMethod method) {
    const double eta_a = eta(spec);
    const double m2 = spec.M.sq();
    const Complex i_over_m(0.0, 1.0 / spec.M.value());
    const std::vector<Complex> dl = differentiate(l.values, l.grid.step, method);
    FifthProfile j;
    j.grid = l.grid;
    j.values.resize(l.values.size());
    for (std::size_t i = 0; i < l.values.size(); ++i)
        j.values[i] = spec.sign() * m2 * (i_over_m * dl[i] + eta_a * l.values[i]);
    return j;
}

Complex source_from_plane_wave(const BranchSpec& spec, Complex l_amplitude, double q5) {
    return spec.sign() * spec.M.value() * (q5 + spec.M.value() * eta(spec)) * l_amplitude;
}

Complex l_from_source(Complex j_amplitude, double q5, const BranchSpec& spec) {
    const double pole = spec.M.value() * (q5 + spec.M.value() * eta(spec));
    const double scale = spec.M.value() * (std::abs(q5) + spec.M.value() * eta(spec));
    if (std::abs(pole) <= 1e-12 * std::max(scale, spec.M.sq())) {
        std::ostringstream os;
        os << "source inversion at the q5 = -M eta pole (q5 = " << q5 << ")";
        throw ResonantPole(os.str());
    }
    return spec.sign() * j_amplitude / pole;
}

SpectralMode make_on_shell_mode(const FourMomentum& q, Complex amplitude, const ScaleM& M) {
    const HyperboloidPoint p = attach(q, M);
    return SpectralMode{q, p.q5(), amplitude, p.branch()};
}

ShellSupportReport check_shell_support(const std::vector<SpectralMode>& modes,
                                       const ScaleM& M, double tol) {
    ShellSupportReport report;
    report.entries.reserve(modes.size());
    for (std::size_t i = 0; i < modes.size(); ++i) {
        const SpectralMode& mode = modes[i];
        const double qs = minkowski_sq(mode.q);
        const double q5s = mode.q5 * mode.q5;
        ShellSupportEntry e;
        e.index = i;
        e.shell_residual = mode.branch == Branch::internal ? qs + q5s - M.sq()
                                                           : qs - q5s + M.sq();
        e.shell_ok = std::abs(e.shell_residual) <= tol * M.sq();
        e.window_ok = branch_of(classify(qs, M)) == mode.branch;
        e.pass = e.shell_ok && e.window_ok;
        report.max_residual = std::max(report.max_residual, std::abs(e.shell_residual));
        report.all_pass = report.all_pass && e.pass;
        report.entries.push_back(e);
    }
    return report;
}

void write_profile_csv(const FifthProfile& profile, std::ostream& out) {
    out << "x5,re,im\n";
    char buf[128];
    for (int i = 0; i < profile.grid.n; ++i) {
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g\n", profile.grid.x5(i),
                      profile.values[i].real(), profile.values[i].imag());
        out << buf;
    }
}

FifthProfile read_profile_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != "x5,re,im")
        throw std::invalid_argument("profile CSV must start with the x5,re,im header");
    std::vector<double> xs;
    std::vector<Complex> vals;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        double x5 = 0.0, re = 0.0, im = 0.0;
        if (std::sscanf(line.c_str(), "%lg,%lg,%lg", &x5, &re, &im) != 3)
            throw std::invalid_argument("bad profile CSV row: " + line);
        xs.push_back(x5);
        vals.push_back(Complex(re, im));
    }
    if (xs.size() < 2) throw std::invalid_argument("profile CSV needs at least two rows");
    FifthProfile out;
    out.grid.n = static_cast<int>(xs.size());
    out.grid.x5_min = xs.front();
    out.grid.step = (xs.back() - xs.front()) / (xs.size() - 1);
    if (!(out.grid.step > 0.0))
        throw std::invalid_argument("profile CSV grid must be strictly increasing");
    out.grid.anchor_index = 0;
    for (std::size_t i = 1; i < xs.size(); ++i) {
        if (std::abs(xs[i] - (xs.front() + out.grid.step * i)) >
            1e-9 * (std::abs(xs[i]) + out.grid.step))
            throw std::invalid_argument("profile CSV grid is not uniform");
    }
    out.values = std::move(vals);
    return out;
}

FourDimReduction reduce_to_4d(const FifthProfile& phi1, const FifthProfile& phi2,
                              const FifthProfile& j1, const FifthProfile& j2) {
    const double t5 = phi1.grid.anchor();
    for (const FifthProfile* p : {&phi2, &j1, &j2}) {
        if (std::abs(p->grid.anchor() - t5) > 1e-12 * (1.0 + std::abs(t5)))
            throw std::invalid_argument("profiles must share the boundary anchor t5");
    }
    return {phi1.at_anchor() + phi2.at_anchor(), j1.at_anchor() + j2.at_anchor()};
}

}  // namespace confmom
