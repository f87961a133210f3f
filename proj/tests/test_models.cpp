#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "confmom/models.hpp"
#include "confmom/verify.hpp"

using namespace confmom;

namespace {

// 4th-order central difference; exact through quartic polynomials
template <typename Fn>
double gradient4(Fn&& fn, double x, double h) {
    return (fn(x - 2 * h) - 8.0 * fn(x - h) + 8.0 * fn(x + h) - fn(x + 2 * h)) / (12.0 * h);
}

}  // namespace

TEST_CASE("phi4 evaluators and their gradient relation") {
    const ScaleM M(1.0);
    const Phi4Params p(0.8, BranchSpec(Branch::internal, 0.3, M));
    CHECK(phi4_l(0.0, p) == 0.0);
    CHECK(phi4_source(0.0, p) == 0.0);
    CHECK(phi4_L_int(0.0, p) == 0.0);
    CHECK(phi4_l(2.0, p) == doctest::Approx(0.8 * 4.0));

    verify::Rng rng(71);
    for (int i = 0; i < 100; ++i) {
        const double phi = verify::uniform(rng, -2.0, 2.0);
        const double grad = gradient4([&](double x) { return phi4_L_int(x, p); }, phi, 1e-3);
        const double src = phi4_source(phi, p);
        CHECK(std::abs(grad - src) <= 1e-8 * std::max(1.0, std::abs(src)));
    }

    // massless start: the two branches are exact mirrors
    const Phi4Params inr(1.2, BranchSpec(Branch::internal, 0.0, M));
    const Phi4Params ext(1.2, BranchSpec(Branch::external, 0.0, M));
    for (double phi : {-1.7, -0.4, 0.3, 2.1}) {
        CHECK(phi4_L_int(phi, inr) == doctest::Approx(-phi4_L_int(phi, ext)).epsilon(1e-14));
        CHECK(phi4_source(phi, inr) == doctest::Approx(-phi4_source(phi, ext)).epsilon(1e-14));
    }
}

TEST_CASE("phi4 stationary structure") {
    const ScaleM M(1.0);
    const Phi4Params p(1.0, BranchSpec(Branch::internal, 0.0, M));  // eta = 1
    const Phi4StationaryReport rep = phi4_stationary_points(p);
    CHECK(rep.derivative_root == doctest::Approx(-1.5).epsilon(1e-10));
    CHECK(rep.conventional_location == doctest::Approx(-2.0).epsilon(1e-10));
    CHECK(!rep.note.empty());
    bool has_zero_origin = false, has_degenerate_origin = false;
    for (double z : rep.lagrangian_zeros)
        if (z == 0.0) has_zero_origin = true;
    for (const auto& s : rep.stationary)
        if (s.location == 0.0 && s.cls == StationaryClass::degenerate)
            has_degenerate_origin = true;
    CHECK(has_zero_origin);
    CHECK(has_degenerate_origin);
    // the nonzero stationary point of the internal L is a local minimum
    for (const auto& s : rep.stationary)
        if (s.location != 0.0) CHECK(s.cls == StationaryClass::minimum);

    // doubling g halves the nonzero stationary point
    const Phi4Params doubled(2.0, BranchSpec(Branch::internal, 0.0, M));
    CHECK(phi4_stationary_points(doubled).derivative_root ==
          doctest::Approx(-0.75).epsilon(1e-10));
    CHECK_THROWS_AS(phi4_stationary_points(Phi4Params(0.0, p.spec)), std::invalid_argument);
}

TEST_CASE("chi-pi change of variables") {
    const ScaleM M(1.0);
    const SigmaParams p(93.0, BranchSpec(Branch::internal, 0.0, M));
    CHECK(pion_norm(sigma_chi_to_pi({0, 0, 0}, p)) == 0.0);
    CHECK(pion_norm(sigma_pi_to_chi({0, 0, 0}, p)) == 0.0);
    // |chi| = 2 f halves
    const PionVector chi{2.0 * p.f_pi, 0.0, 0.0};
    CHECK(sigma_chi_to_pi(chi, p).a == doctest::Approx(p.f_pi).epsilon(1e-13));
    CHECK_THROWS_AS(sigma_pi_to_chi({1.5 * p.f_pi, 0, 0}, p), NoRealBranch);

    verify::Rng rng(81);
    for (int i = 0; i < 200; ++i) {
        PionVector pi{verify::uniform(rng, -1, 1), verify::uniform(rng, -1, 1),
                      verify::uniform(rng, -1, 1)};
        pi = pion_scale(verify::uniform(rng, 0.01, 0.9) * p.f_pi / pion_norm(pi), pi);
        const PionVector back = sigma_chi_to_pi(sigma_pi_to_chi(pi, p), p);
        CHECK(std::abs(back.a - pi.a) < 1e-12 * p.f_pi);
        CHECK(std::abs(back.b - pi.b) < 1e-12 * p.f_pi);
        CHECK(std::abs(back.c - pi.c) < 1e-12 * p.f_pi);
    }
}

TEST_CASE("sigma field and chiral circle") {
    const ScaleM M(1.0);
    const SigmaParams p(93.0, BranchSpec(Branch::internal, 0.0, M));
    CHECK(sigma_of_pi({0, 0, 0}, p) == p.f_pi);
    CHECK(sigma_of_pi({p.f_pi, 0, 0}, p) == 0.0);
    CHECK(sigma_of_pi({0, 0, 0}, p, SigmaBranchSign::negative) == -p.f_pi);
    CHECK_THROWS_AS(sigma_of_pi({2 * p.f_pi, 0, 0}, p), NoRealBranch);
    // on-circle pairs have penalty at rounding level (sigma^2 re-rounds)
    CHECK(sigma_chir_penalty({30, 0, 0}, sigma_of_pi({30, 0, 0}, p), p) <
          1e-20 * std::pow(p.f_pi, 4));
    // quartic growth of the penalty off the circle
    const PionVector pi{40, 10, 0};
    const double d1 = sigma_chir_penalty(pi, sigma_of_pi(pi, p) + 5.0, p);
    const double base1 = 2.0 * sigma_of_pi(pi, p) * 5.0 + 25.0;
    CHECK(d1 == doctest::Approx(base1 * base1).epsilon(1e-12));
    const double d2 = sigma_chir_penalty(pi, sigma_of_pi(pi, p) + 10.0, p);
    const double base2 = 2.0 * sigma_of_pi(pi, p) * 10.0 + 100.0;
    CHECK(d2 == doctest::Approx(base2 * base2).epsilon(1e-12));
}

TEST_CASE("sigma interaction Lagrangian and source") {
    const ScaleM M(1.0);
    const SigmaParams p(93.0, BranchSpec(Branch::internal, 0.0, M));
    const SigmaParams pext(93.0, BranchSpec(Branch::external, 0.0, M));
    CHECK_THROWS_AS(sigma_L_int({0, 0, 0}, p), PionPole);
    CHECK_THROWS_AS(sigma_source({0, 0, 0}, p), PionPole);

    verify::Rng rng(91);
    for (int i = 0; i < 100; ++i) {
        PionVector pi{verify::uniform(rng, -1, 1), verify::uniform(rng, -1, 1),
                      verify::uniform(rng, -1, 1)};
        pi = pion_scale(verify::uniform(rng, 0.1, 0.9) * p.f_pi / pion_norm(pi), pi);
        // branch antisymmetry
        CHECK(sigma_L_int(pi, p) == doctest::Approx(-sigma_L_int(pi, pext))
                                        .epsilon(1e-12)
                                        .scale(std::abs(sigma_L_int(pi, p))));
        // componentwise gradient check
        const PionVector src = sigma_source(pi, p);
        const double h = 1e-4;
        double worst = 0.0;
        for (int axis = 0; axis < 3; ++axis) {
            auto L_along = [&](double x) {
                PionVector moved = pi;
                (axis == 0 ? moved.a : axis == 1 ? moved.b : moved.c) = x;
                return sigma_L_int(moved, p);
            };
            const double base = axis == 0 ? pi.a : axis == 1 ? pi.b : pi.c;
            const double grad = gradient4(L_along, base, h);
            const double want = axis == 0 ? src.a : axis == 1 ? src.b : src.c;
            worst = std::max(worst, std::abs(grad - want) /
                                        std::max(std::abs(want), M.sq() * p.f_pi));
        }
        CHECK(worst < 1e-6);
    }

    // sigma = 0 substitution at the chiral edge
    const double limit = -M.sq() * p.f_pi * p.f_pi;
    CHECK(sigma_L_int({p.f_pi, 0, 0}, p) == doctest::Approx(limit).epsilon(1e-12));
}

TEST_CASE("sigma series fit reproduces the Laurent coefficients") {
    const ScaleM M(1.0);
    for (Branch b : {Branch::internal, Branch::external}) {
        const SigmaParams p(93.0, BranchSpec(b, 0.0, M));
        const SigmaSeriesFit fit = sigma_series_coefficients(p);
        const double f2 = p.f_pi * p.f_pi;
        CHECK(std::abs(fit.c_inv / (f2 * f2) - 8.0) < 8.0 * 1e-4);
        CHECK(std::abs(fit.c_const / f2 + 4.5) < 4.5 * 1e-4);
        CHECK(std::abs(fit.c_2 + 1.0) < 1e-4);
        CHECK(std::abs(fit.c_4 * 4.0 * f2 + 1.0) < 1e-3);
        CHECK(fit.max_residual <= 1e-6 * M.sq() * f2);
        CHECK(fit.condition < 1e12);
    }
}

TEST_CASE("pion mass coefficients") {
    const ScaleM M(1.0);
    CHECK(pion_mass_sq(Branch::external, M) == doctest::Approx(2.0).epsilon(2e-4));
    CHECK(pion_mass_sq(Branch::internal, M) == doctest::Approx(-2.0).epsilon(2e-4));
    // M = m_pi / sqrt(2) round-trips through the fit
    const double m_pi = 138.0;
    const ScaleM Mf(m_pi / std::sqrt(2.0));
    CHECK(Mf.value() == doctest::Approx(97.5807358).epsilon(1e-6));
    CHECK(std::sqrt(pion_mass_sq(Branch::external, Mf)) ==
          doctest::Approx(m_pi).epsilon(1e-3));
    // both coefficients vanish with M
    const ScaleM tiny(1e-5);
    CHECK(std::abs(pion_mass_sq(Branch::external, tiny)) < 1e-9);
}

TEST_CASE("higgs evaluators and gradient relation") {
    const ScaleM M(1.0);
    const HiggsParams p(1.0, BranchSpec(Branch::internal, 0.0, M));
    const HiggsParams ext(1.0, BranchSpec(Branch::external, 0.0, M));
    CHECK(higgs_l(0.0, p) == 0.0);
    CHECK(higgs_source(0.0, p) == 0.0);
    CHECK(higgs_L_int(0.0, p) == 0.0);
    CHECK(p.vev() == doctest::Approx(3.0));
    CHECK(ext.vev() == 0.0);

    verify::Rng rng(101);
    for (int i = 0; i < 100; ++i) {
        double phi = verify::uniform(rng, 0.05, 2.5);
        if (i % 2) phi = -phi;
        const double grad = gradient4([&](double x) { return higgs_L_int(x, p); }, phi,
                                      1e-4 * std::min(1.0, std::abs(phi)));
        const double src = higgs_source(phi, p);
        CHECK(std::abs(grad - src) <= 1e-8 * std::max(1.0, std::abs(src)));
        CHECK(higgs_L_int(phi, p) == doctest::Approx(-higgs_L_int(phi, ext)).epsilon(1e-14));
    }
}

TEST_CASE("higgs stationary structure and mass") {
    const ScaleM M(1.0);
    const HiggsParams p(1.0, BranchSpec(Branch::internal, 0.0, M));
    const HiggsStationaryReport un = higgs_stationary_points(p, HiggsForm::unshifted);
    double pos_stat = 0.0, pos_zero = 0.0;
    for (const auto& s : un.stationary)
        if (s.location > 0.1) {
            pos_stat = s.location;
            CHECK(s.cls == StationaryClass::minimum);
        }
    for (double z : un.lagrangian_zeros)
        if (z > 0.1) pos_zero = z;
    CHECK(pos_stat == doctest::Approx(1.5).epsilon(1e-10));   // 3M/2f
    CHECK(pos_zero == doctest::Approx(2.0).epsilon(1e-10));   // 2M/f

    const HiggsStationaryReport sh = higgs_stationary_points(p, HiggsForm::shifted);
    CHECK(sh.u_star == doctest::Approx(3.0).epsilon(1e-10));  // 3M/f
    const HiggsParams f2(2.0, BranchSpec(Branch::internal, 0.0, M));
    CHECK(higgs_stationary_points(f2, HiggsForm::shifted).u_star ==
          doctest::Approx(1.5).epsilon(1e-10));

    const HiggsMassReport mass = higgs_mass_report(p);
    CHECK(mass.raw_curvature == doctest::Approx(9.0 / 16.0).epsilon(1e-6));
    CHECK(mass.normalization == 2.0);
    CHECK(std::abs(mass.mass_sq - 9.0 / 8.0) < 1e-6);
    // dimensional scaling
    const ScaleM M2(2.5);
    const HiggsParams scaled(1.7, BranchSpec(Branch::internal, 0.0, M2));
    CHECK(higgs_mass_sq(scaled) == doctest::Approx(9.0 * M2.sq() / 8.0).epsilon(1e-6));
    CHECK_THROWS_AS(higgs_mass_sq(HiggsParams(1.0, BranchSpec(Branch::external, 0.0, M))),
                    std::invalid_argument);
}

TEST_CASE("gauge-translation source modes") {
    const ScaleM M(1.0);
    const SpectralMode phi = make_on_shell_mode({0.4, 0.1, 0, 0}, Complex(2.0, 0.0), M);
    const GaugeMode A{{0.2, 0.1, -0.3, 0.0}, 0.05, {0.0, 1.0, 0.5, 0.0}, Complex(0.7, 0.0)};
    CHECK(sed_source(phi, A, 0.0).empty());

    // constant gauge field: a single output at q with 2e(A.q) - e^2 A.A
    const GaugeMode constant{{}, 0.0, {0.3, 0.2, 0.0, 0.1}, Complex(1.0, 0.0)};
    const auto merged = sed_source(phi, constant, 0.5);
    REQUIRE(merged.size() == 1);
    const double aq = minkowski_dot(constant.polarization, phi.q);
    const double a2 = minkowski_sq(constant.polarization);
    const Complex want = (2.0 * 0.5 * aq - 0.25 * a2) * phi.amplitude;
    CHECK(std::abs(merged[0].amplitude - want) < 1e-13);

    // momentum bookkeeping: outputs at q+k and q+2k
    const auto out = sed_source(phi, A, 0.5);
    REQUIRE(out.size() == 2);
    CHECK(out[0].q.q0 == doctest::Approx(phi.q.q0 + A.k.q0));
    CHECK(out[1].q.q1 == doctest::Approx(phi.q.q1 + 2.0 * A.k.q1));
    CHECK(out[0].q5 == doctest::Approx(phi.q5 + A.k5));
    CHECK(out[1].q5 == doctest::Approx(phi.q5 + 2.0 * A.k5));
}
