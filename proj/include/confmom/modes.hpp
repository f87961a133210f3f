#pragma once

#include <array>
#include <complex>
#include <vector>

#include "confmom/fourvec.hpp"

// Box-regularized Klein-Gordon mode machinery. The continuum delta^3 is
// realized as L^3 times a Kronecker delta on the discrete momentum lattice
// 2 pi n / L, which makes the normalization pairings exactly testable:
//   i int f*_{p-h} d0<-> f_{p-h} d3x = 2 (p0 - h0) L^3
// on the diagonal, zero for distinct lattice momenta, and the un-conjugated
// pairing vanishes identically.
//
// Operator content is reduced throughout to c-number mode amplitudes with
// unit wave-function renormalization; a charged field is a positive-frequency
// superposition, a neutral one the hermitian combination.

namespace confmom {

using Complex = std::complex<double>;

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;
};

inline Vec3 operator+(const Vec3& a, const Vec3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline Vec3 operator-(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

// Periodic cubic sampling box: N points per axis, spacing L/N, momenta
// restricted to multiples of 2 pi / L.
struct BoxGrid {
    double L = 0.0;
    int N = 0;

    BoxGrid(double length, int points_per_axis);

    double spacing() const { return L / N; }
    double volume() const { return L * L * L; }
    double cell() const { return spacing() * spacing() * spacing(); }
    std::size_t size() const { return static_cast<std::size_t>(N) * N * N; }
    double momentum_unit() const;  // 2 pi / L

    Vec3 lattice_momentum(int nx, int ny, int nz) const;
    bool on_lattice(const Vec3& k, double tol = 1e-9) const;
};

// Positive-frequency plane-wave mode labeled by an on-shell four-momentum p
// (p0 = omega_p) and an optional four-momentum shift h. The mode function is
//   u(x) = amplitude * exp(-i [(p0 - h0) x0 - (p - h).x]),
// the shifted label convention of the normalization pairings.
struct PlaneMode {
    FourMomentum p;  // on-shell: p0 = sqrt(|p|^2 + m^2)
    double mass = 0.0;
    FourMomentum h;  // shift; zero by default
    Complex amplitude{1.0, 0.0};

    static PlaneMode on_shell(const Vec3& p_spatial, double mass, Complex amplitude,
                              const FourMomentum& h = {});

    double frequency() const { return p.q0 - h.q0; }
    Vec3 wave_vector() const { return {p.q1 - h.q1, p.q2 - h.q2, p.q3 - h.q3}; }

    Complex value(const Vec3& x, double x0) const;
    Complex d_dt(const Vec3& x, double x0) const;
};

// Sampled c-number field data on a time slice: values and their x0-derivative.
struct FieldSlice {
    BoxGrid grid;
    double x0 = 0.0;
    std::vector<Complex> values;
    std::vector<Complex> dvalues_dt;

    explicit FieldSlice(const BoxGrid& g, double time = 0.0);
};

// Samples sum of modes (charged field: the positive-frequency part alone).
FieldSlice sample_charged(const std::vector<PlaneMode>& modes, const BoxGrid& grid,
                          double x0);

// Samples the hermitian combination sum_k [ mode_k + conj(mode_k) ].
FieldSlice sample_neutral(const std::vector<PlaneMode>& modes, const BoxGrid& grid,
                          double x0);

// i int f*(x) d0<-> g(x) d3x by trapezoidal quadrature over the periodic box
// (X d0<-> Y = X dY/dt - dX/dt Y).
Complex kg_inner_product(const PlaneMode& f, const PlaneMode& g, const BoxGrid& grid,
                         double x0);

// Same pairing without conjugating the first argument; vanishes on the
// lattice for time-only shifts.
Complex kg_pairing_unconjugated(const PlaneMode& f, const PlaneMode& g, const BoxGrid& grid,
                                double x0);

// KG projection of sampled field data onto the kernel mode, normalized by the
// kernel's diagonal pairing 2 (freq) L^3; recovers the mode amplitude of the
// matching lattice component.
Complex project_onto(const FieldSlice& field, const PlaneMode& kernel);

// Coefficient of the unshifted on-shell mode p in the field.
Complex extract_coefficient(const FieldSlice& field, const FourMomentum& p, double mass);

enum class FieldKind { charged, neutral };

// Builds the four-momentum-translated field from its mode content, samples
// it, and extracts the coefficient at the shifted label:
//   charged: field' = e^{ihx} field; mode p keeps spatial p-h, frequency
//            p0-h0.
//   neutral: each frequency part is shifted oppositely (the field stays
//            hermitian); the shifted mode at spatial k = p-h carries
//            frequency omega(k) - h0, so conjugate lattice pairs still
//            cancel in the projection.
// Equals extract_coefficient of the original field at p. Throws
// std::invalid_argument when the spatial part of h is off-lattice.
Complex translate_and_extract(const std::vector<PlaneMode>& field_modes,
                              const FourMomentum& h, const FourMomentum& p, double mass,
                              const BoxGrid& grid, double x0, FieldKind kind);

// The translated neutral field's samples (hermiticity checks).
FieldSlice translated_neutral_slice(const std::vector<PlaneMode>& field_modes,
                                    const FourMomentum& h, const BoxGrid& grid, double x0);

}  // namespace confmom
