#include "confmom/modes.hpp"

#include <cmath>
#include <stdexcept>

namespace confmom {

namespace {

double omega_of(const Vec3& k, double mass) { return std::sqrt(dot(k, k) + mass * mass); }

bool near_integer(double v, double tol) { return std::abs(v - std::round(v)) <= tol; }

}  // namespace

BoxGrid::BoxGrid(double length, int points_per_axis) : L(length), N(points_per_axis) {
    if (!(length > 0.0)) throw std::invalid_argument("box length must be positive");
    if (N < 16 || N % 2 != 0)
        throw std::invalid_argument("box grid needs an even N >= 16");
}

double BoxGrid::momentum_unit() const { return 2.0 * M_PI / L; }

Vec3 BoxGrid::lattice_momentum(int nx, int ny, int nz) const {
    const double u = momentum_unit();
    return {u * nx, u * ny, u * nz};
}

bool BoxGrid::on_lattice(const Vec3& k, double tol) const {
    const double u = momentum_unit();
    return near_integer(k.x / u, tol) && near_integer(k.y / u, tol) && near_integer(k.z / u, tol);
}

PlaneMode PlaneMode::on_shell(const Vec3& p_spatial, double mass, Complex amplitude,
                              const FourMomentum& h) {
    PlaneMode m;
    m.p = {omega_of(p_spatial, mass), p_spatial.x, p_spatial.y, p_spatial.z};
    m.mass = mass;
    m.h = h;
    m.amplitude = amplitude;
    return m;
}

Complex PlaneMode::value(const Vec3& x, double x0) const {
    const double phase = -(frequency() * x0 - dot(wave_vector(), x));
    return amplitude * Complex(std::cos(phase), std::sin(phase));
}

Complex PlaneMode::d_dt(const Vec3& x, double x0) const {
    return Complex(0.0, -frequency()) * value(x, x0);
}

FieldSlice::FieldSlice(const BoxGrid& g, double time)
    : grid(g), x0(time), values(g.size(), Complex(0.0, 0.0)),
      dvalues_dt(g.size(), Complex(0.0, 0.0)) {}

namespace {

template <typename Fn>
void for_each_site(const BoxGrid& grid, Fn&& fn) {
    const double a = grid.spacing();
    std::size_t idx = 0;
    for (int ix = 0; ix < grid.N; ++ix)
        for (int iy = 0; iy < grid.N; ++iy)
            for (int iz = 0; iz < grid.N; ++iz, ++idx)
                fn(idx, Vec3{a * ix, a * iy, a * iz});
}

void accumulate_mode(FieldSlice& slice, const PlaneMode& mode, bool add_conjugate) {
    for_each_site(slice.grid, [&](std::size_t idx, const Vec3& x) {
        const Complex v = mode.value(x, slice.x0);
        const Complex dv = mode.d_dt(x, slice.x0);
        slice.values[idx] += v;
        slice.dvalues_dt[idx] += dv;
        if (add_conjugate) {
            slice.values[idx] += std::conj(v);
            slice.dvalues_dt[idx] += std::conj(dv);
        }
    });
}

}  // namespace

FieldSlice sample_charged(const std::vector<PlaneMode>& modes, const BoxGrid& grid,
                          double x0) {
    FieldSlice slice(grid, x0);
    for (const auto& m : modes) accumulate_mode(slice, m, false);
    return slice;
}

FieldSlice sample_neutral(const std::vector<PlaneMode>& modes, const BoxGrid& grid,
                          double x0) {
    FieldSlice slice(grid, x0);
    for (const auto& m : modes) accumulate_mode(slice, m, true);
    return slice;
}

namespace {

void require_on_grid(const BoxGrid& grid, const PlaneMode& m) {
    if (!grid.on_lattice(m.wave_vector()))
        throw std::invalid_argument("mode momentum is off this grid's lattice");
}

Complex quadrature_pairing(const BoxGrid& grid, double x0, const PlaneMode& f,
                           const PlaneMode& g, bool conjugate_first) {
    require_on_grid(grid, f);
    require_on_grid(grid, g);
    Complex sum(0.0, 0.0);
    for_each_site(grid, [&](std::size_t, const Vec3& x) {
        Complex fv = f.value(x, x0);
        Complex fd = f.d_dt(x, x0);
        if (conjugate_first) {
            fv = std::conj(fv);
            fd = std::conj(fd);
        }
        sum += fv * g.d_dt(x, x0) - fd * g.value(x, x0);
    });
    return Complex(0.0, 1.0) * sum * grid.cell();
}

}  // namespace

Complex kg_inner_product(const PlaneMode& f, const PlaneMode& g, const BoxGrid& grid,
                         double x0) {
    return quadrature_pairing(grid, x0, f, g, true);
}

Complex kg_pairing_unconjugated(const PlaneMode& f, const PlaneMode& g, const BoxGrid& grid,
                                double x0) {
    return quadrature_pairing(grid, x0, f, g, false);
}

Complex project_onto(const FieldSlice& field, const PlaneMode& kernel) {
    require_on_grid(field.grid, kernel);
    const double norm = 2.0 * kernel.frequency() * field.grid.volume();
    if (std::abs(norm) < 1e-300)
        throw std::invalid_argument("projection kernel has vanishing frequency");
    Complex sum(0.0, 0.0);
    for_each_site(field.grid, [&](std::size_t idx, const Vec3& x) {
        const Complex kv = std::conj(kernel.value(x, field.x0));
        const Complex kd = std::conj(kernel.d_dt(x, field.x0));
        sum += kv * field.dvalues_dt[idx] - kd * field.values[idx];
    });
    return Complex(0.0, 1.0) * sum * field.grid.cell() / norm;
}

Complex extract_coefficient(const FieldSlice& field, const FourMomentum& p, double mass) {
    PlaneMode kernel = PlaneMode::on_shell({p.q1, p.q2, p.q3}, mass, Complex(1.0, 0.0));
    return project_onto(field, kernel);
}

namespace {

void require_lattice_shift(const BoxGrid& grid, const FourMomentum& h) {
    if (!grid.on_lattice({h.q1, h.q2, h.q3}))
        throw std::invalid_argument("spatial part of the shift is off the momentum lattice");
}

// Shifted mode in the label convention of the normalization pairings:
// spatial p-h, frequency p0-h0.
PlaneMode shifted_charged_mode(const PlaneMode& m, const FourMomentum& h) {
    PlaneMode out = m;
    out.h = h;
    return out;
}

// Neutral shift: the pair (k, omega(k)) relabels to (k-h, omega(k-h) - h0),
// keeping the frequency an even function of the spatial momentum.
PlaneMode shifted_neutral_mode(const PlaneMode& m, const FourMomentum& h) {
    const Vec3 k{m.p.q1 - h.q1, m.p.q2 - h.q2, m.p.q3 - h.q3};
    PlaneMode out;
    out.mass = m.mass;
    out.amplitude = m.amplitude;
    out.p = {omega_of(k, m.mass), k.x, k.y, k.z};
    out.h = {h.q0, 0.0, 0.0, 0.0};
    return out;
}

}  // namespace

FieldSlice translated_neutral_slice(const std::vector<PlaneMode>& field_modes,
                                    const FourMomentum& h, const BoxGrid& grid, double x0) {
    require_lattice_shift(grid, h);
    std::vector<PlaneMode> shifted;
    shifted.reserve(field_modes.size());
    for (const auto& m : field_modes) shifted.push_back(shifted_neutral_mode(m, h));
    return sample_neutral(shifted, grid, x0);
}

Complex translate_and_extract(const std::vector<PlaneMode>& field_modes,
                              const FourMomentum& h, const FourMomentum& p, double mass,
                              const BoxGrid& grid, double x0, FieldKind kind) {
    require_lattice_shift(grid, h);
    if (kind == FieldKind::charged) {
        std::vector<PlaneMode> shifted;
        shifted.reserve(field_modes.size());
        for (const auto& m : field_modes) shifted.push_back(shifted_charged_mode(m, h));
        const FieldSlice slice = sample_charged(shifted, grid, x0);
        PlaneMode kernel = PlaneMode::on_shell({p.q1, p.q2, p.q3}, mass, Complex(1.0, 0.0), h);
        return project_onto(slice, kernel);
    }
    const FieldSlice slice = translated_neutral_slice(field_modes, h, grid, x0);
    PlaneMode probe = PlaneMode::on_shell({p.q1, p.q2, p.q3}, mass, Complex(1.0, 0.0));
    PlaneMode kernel = shifted_neutral_mode(probe, h);
    return project_onto(slice, kernel);
}

}  // namespace confmom
