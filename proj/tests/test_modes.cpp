#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "confmom/modes.hpp"
#include "confmom/verify.hpp"

using namespace confmom;

TEST_CASE("box grid validation and lattice membership") {
    CHECK_THROWS_AS(BoxGrid(2.0, 15), std::invalid_argument);
    CHECK_THROWS_AS(BoxGrid(2.0, 8), std::invalid_argument);
    CHECK_THROWS_AS(BoxGrid(-1.0, 16), std::invalid_argument);
    const BoxGrid grid(2.0 * M_PI, 16);
    CHECK(grid.momentum_unit() == doctest::Approx(1.0));
    CHECK(grid.on_lattice({2.0, -1.0, 0.0}));
    CHECK(!grid.on_lattice({0.5, 0.0, 0.0}));
}

TEST_CASE("diagonal KG pairing reproduces the box normalization") {
    const BoxGrid grid(2.0 * M_PI, 16);
    const double L3 = grid.volume();
    const double mass = 1.0;
    // rest mode: 2 L^3
    const PlaneMode rest = PlaneMode::on_shell({}, mass, Complex(1.0, 0.0));
    CHECK(kg_inner_product(rest, rest, grid, 0.0).real() ==
          doctest::Approx(2.0 * L3).epsilon(1e-12));
    // shifted frequency: 2 (p0 - h0) L^3
    const FourMomentum h{0.3, 0.0, 0.0, 0.0};
    const PlaneMode shifted =
        PlaneMode::on_shell(grid.lattice_momentum(2, 0, -1), mass, Complex(1.0, 0.0), h);
    const Complex ip = kg_inner_product(shifted, shifted, grid, 0.8);
    CHECK(ip.real() == doctest::Approx(2.0 * shifted.frequency() * L3).epsilon(1e-12));
    CHECK(std::abs(ip.imag()) < 1e-10 * L3);
}

TEST_CASE("distinct lattice momenta are orthogonal") {
    const BoxGrid grid(2.0 * M_PI, 16);
    const double mass = 0.7;
    const PlaneMode a = PlaneMode::on_shell(grid.lattice_momentum(1, 2, 0), mass, {1.0, 0.0});
    const PlaneMode b = PlaneMode::on_shell(grid.lattice_momentum(-1, 2, 3), mass, {1.0, 0.0});
    const double scale = 2.0 * a.frequency() * grid.volume();
    CHECK(std::abs(kg_inner_product(a, b, grid, 0.31)) < 1e-10 * scale);
}

TEST_CASE("un-conjugated pairings vanish for every lattice pair") {
    const BoxGrid grid(2.0 * M_PI, 16);
    const double mass = 1.0;
    const FourMomentum h{0.41, 0.0, 0.0, 0.0};
    for (int n1 = -2; n1 <= 2; ++n1)
        for (int n2 = -2; n2 <= 2; ++n2) {
            const PlaneMode f =
                PlaneMode::on_shell(grid.lattice_momentum(n1, 0, 1), mass, {1.0, 0.0}, h);
            const PlaneMode g =
                PlaneMode::on_shell(grid.lattice_momentum(n2, 0, -1), mass, {1.0, 0.0}, h);
            const double scale = 2.0 * f.frequency() * grid.volume();
            CHECK(std::abs(kg_pairing_unconjugated(f, g, grid, 0.5)) < 1e-10 * scale);
        }
}

TEST_CASE("coefficient extraction is the orthonormal projection") {
    const BoxGrid grid(2.0 * M_PI, 16);
    const double mass = 1.0;
    const Complex c1(0.7, -1.1), c2(-0.3, 0.2);
    const PlaneMode m1 = PlaneMode::on_shell(grid.lattice_momentum(1, 0, 2), mass, c1);
    const PlaneMode m2 = PlaneMode::on_shell(grid.lattice_momentum(-2, 1, 0), mass, c2);
    const FieldSlice slice = sample_charged({m1, m2}, grid, 0.4);
    CHECK(std::abs(extract_coefficient(slice, m1.p, mass) - c1) < 1e-10);
    CHECK(std::abs(extract_coefficient(slice, m2.p, mass) - c2) < 1e-10);
    const FieldSlice empty(grid, 0.0);
    CHECK(std::abs(extract_coefficient(empty, m1.p, mass)) < 1e-14);
    // neutral sampling keeps real fields extractable too
    const FieldSlice real_slice = sample_neutral({m1}, grid, 0.4);
    CHECK(std::abs(extract_coefficient(real_slice, m1.p, mass) - c1) < 1e-10);
}

TEST_CASE("translation leaves extracted coefficients invariant") {
    const BoxGrid grid(2.0 * M_PI, 16);
    const double mass = 1.0;
    verify::Rng rng(61);
    std::vector<PlaneMode> field = {
        PlaneMode::on_shell(grid.lattice_momentum(1, 0, 0), mass, {0.9, 0.4}),
        PlaneMode::on_shell(grid.lattice_momentum(0, -2, 1), mass, {-0.2, 1.3}),
        PlaneMode::on_shell(grid.lattice_momentum(2, 1, -1), mass, {0.5, -0.6}),
    };
    const FourMomentum h{0.27, grid.momentum_unit(), 0.0, -grid.momentum_unit()};
    for (const auto& m : field) {
        const Complex charged =
            translate_and_extract(field, h, m.p, mass, grid, 0.9, FieldKind::charged);
        CHECK(std::abs(charged - m.amplitude) < 1e-10);
        const Complex neutral =
            translate_and_extract(field, h, m.p, mass, grid, 0.9, FieldKind::neutral);
        CHECK(std::abs(neutral - m.amplitude) < 1e-10);
    }
    // h = 0 reduces to plain extraction
    const Complex plain =
        translate_and_extract(field, {}, field[0].p, mass, grid, 0.9, FieldKind::charged);
    CHECK(std::abs(plain - field[0].amplitude) < 1e-10);
}

TEST_CASE("translated neutral field stays hermitian") {
    const BoxGrid grid(2.0 * M_PI, 16);
    const double mass = 1.0;
    const std::vector<PlaneMode> field = {
        PlaneMode::on_shell(grid.lattice_momentum(1, -1, 0), mass, {0.4, 0.9}),
        PlaneMode::on_shell(grid.lattice_momentum(0, 2, 1), mass, {-1.2, 0.3}),
    };
    const FourMomentum h{0.27, grid.momentum_unit(), 0.0, 0.0};
    const FieldSlice shifted = translated_neutral_slice(field, h, grid, 0.61);
    for (const auto& v : shifted.values) CHECK(std::abs(v.imag()) < 1e-12);
}

TEST_CASE("off-lattice spatial shifts are rejected") {
    const BoxGrid grid(2.0 * M_PI, 16);
    const std::vector<PlaneMode> field = {PlaneMode::on_shell({}, 1.0, {1.0, 0.0})};
    const FourMomentum off{0.0, 0.5 * grid.momentum_unit(), 0.0, 0.0};
    CHECK_THROWS_AS(
        translate_and_extract(field, off, {1.0, 0, 0, 0}, 1.0, grid, 0.0, FieldKind::charged),
        std::invalid_argument);
}
