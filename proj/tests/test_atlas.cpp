#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "confmom/atlas.hpp"
#include "confmom/verify.hpp"

using namespace confmom;

TEST_CASE("region partition with the printed boundary conventions") {
    const ScaleM M(1.0);
    CHECK(classify(0.5, M) == Region::I);
    CHECK(classify(2.0, M) == Region::II);
    CHECK(classify(-2.0, M) == Region::III);
    CHECK(classify(-0.5, M) == Region::IV);
    CHECK(classify(0.0, M) == Region::I);   // massless spectrum belongs to I
    CHECK(classify(1.0, M) == Region::I);   // closed at q^2 = M^2
    CHECK(classify(-1.0, M) == Region::IV); // closed at q^2 = -M^2
    CHECK(branch_of(Region::I) == Branch::internal);
    CHECK(branch_of(Region::II) == Branch::external);
    CHECK(branch_of(Region::III) == Branch::internal);
    CHECK(branch_of(Region::IV) == Branch::external);
}

TEST_CASE("attach puts points on their shell") {
    const ScaleM M(1.0);
    const HyperboloidPoint a = attach({0.5, 0, 0, 0}, M);
    CHECK(a.region() == Region::I);
    CHECK(a.q5_sq() == doctest::Approx(0.75).epsilon(1e-14));
    const HyperboloidPoint b = attach({2.0, 1.0, 0, 0}, M);  // q^2 = 3
    CHECK(b.region() == Region::II);
    CHECK(b.q5_sq() == doctest::Approx(4.0).epsilon(1e-13));
    const HyperboloidPoint c = attach({1.0, 1.0, 0, 0}, M);  // q^2 = 0
    CHECK(c.q5() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(a.shell_residual()) < 1e-14);
}

TEST_CASE("point constructor enforces its invariants") {
    const ScaleM M(1.0);
    CHECK_THROWS_AS(HyperboloidPoint({0.5, 0, 0, 0}, -0.1, Branch::internal, Region::I, M),
                    std::invalid_argument);
    CHECK_THROWS_AS(HyperboloidPoint({0.5, 0, 0, 0}, 0.2, Branch::internal, Region::I, M),
                    std::invalid_argument);  // shell violated
    CHECK_THROWS_AS(
        HyperboloidPoint({0.5, 0, 0, 0}, std::sqrt(0.75), Branch::internal, Region::II, M),
        std::invalid_argument);  // wrong region label
}

TEST_CASE("inversion swaps dual regions and is an involution") {
    const ScaleM M(1.0);
    const HyperboloidPoint p = attach({0.5, 0, 0, 0}, M);  // q^2 = 1/4
    const HyperboloidPoint pi = invert_point(p);
    CHECK(pi.region() == Region::II);
    CHECK(pi.q_sq() == doctest::Approx(4.0).epsilon(1e-13));
    // boundary magnitude maps to itself
    const HyperboloidPoint edge = attach({1.0, 0, 0, 0}, M);
    CHECK(invert_point(edge).q_sq() == doctest::Approx(1.0).epsilon(1e-13));

    verify::Rng rng(9);
    for (int i = 0; i < 1000; ++i) {
        const HyperboloidPoint r = attach(verify::random_offcone_momentum(rng, M), M);
        const HyperboloidPoint ri = invert_point(r);
        CHECK(ri.q_sq() * r.q_sq() == doctest::Approx(M.sq() * M.sq()).epsilon(1e-10));
        CHECK(ri.branch() != r.branch());
        const HyperboloidPoint back = invert_point(ri);
        CHECK(max_abs_component(back.q() - r.q()) < 1e-10 * max_abs_component(r.q()));
    }
}

TEST_CASE("lambda parameterizes each region") {
    const ScaleM M(1.0);
    const HyperboloidPoint row1 = point_of_lambda(std::log(2.0), Region::I, M);
    CHECK(row1.q_sq() == doctest::Approx(0.25).epsilon(1e-13));
    CHECK(row1.q5_sq() == doctest::Approx(0.75).epsilon(1e-13));
    const HyperboloidPoint two = attach({std::sqrt(2.0), 0, 0, 0}, M);  // region II
    CHECK(lambda_of(two) == doctest::Approx(-0.5 * std::log(2.0)).epsilon(1e-13));
    CHECK(point_of_lambda(0.0, Region::I, M).q_sq() == doctest::Approx(1.0));
    CHECK(point_of_lambda(0.0, Region::IV, M).q_sq() == doctest::Approx(-1.0));
    CHECK_THROWS_AS(point_of_lambda(-0.3, Region::I, M), std::domain_error);
    CHECK_THROWS_AS(lambda_of(attach({1.0, 1.0, 0, 0}, M)), LightlikeInversion);

    for (double lambda : {-9.5, -2.0, -0.1, 0.2, 4.0, 9.5}) {
        const Region tl = lambda >= 0.0 ? Region::I : Region::II;
        const Region sl = lambda >= 0.0 ? Region::IV : Region::III;
        CHECK(lambda_of(point_of_lambda(lambda, tl, M)) ==
              doctest::Approx(lambda).epsilon(1e-12));
        CHECK(lambda_of(point_of_lambda(lambda, sl, M)) ==
              doctest::Approx(lambda).epsilon(1e-12));
    }
}

TEST_CASE("translation preserves the shell form") {
    const ScaleM M(1.0);
    const HyperboloidPoint p = attach({0.5, 0, 0, 0}, M);
    const ShiftResult same = translate_on_shell(p, {});
    CHECK(same.point.q5() == p.q5());
    CHECK(!same.branch_flipped);

    const ShiftResult moved = translate_on_shell(p, {0.25, 0, 0, 0});
    CHECK(moved.point.q_sq() == doctest::Approx(9.0 / 16.0).epsilon(1e-14));
    CHECK(moved.point.q5_sq() == doctest::Approx(7.0 / 16.0).epsilon(1e-14));
    CHECK(moved.point.q_sq() + moved.point.q5_sq() == doctest::Approx(1.0).epsilon(1e-14));

    // pushing past q^2 = M^2 flips to the external branch and flags it
    const ShiftResult flipped = translate_on_shell(p, {1.0, 0, 0, 0});
    CHECK(flipped.branch_flipped);
    CHECK(flipped.point.branch() == Branch::external);
    CHECK(flipped.point.region() == Region::II);

    verify::Rng rng(13);
    for (int i = 0; i < 1000; ++i) {
        const HyperboloidPoint r = attach(verify::random_momentum(rng), M);
        const ShiftResult s = translate_on_shell(r, verify::random_momentum(rng, -1, 1));
        CHECK(std::abs(s.point.shell_residual()) <= 1e-10 * M.sq());
    }
}

TEST_CASE("gauge shift is a translation by -eA") {
    const ScaleM M(1.0);
    const HyperboloidPoint p = attach({0.5, 0.2, 0, 0}, M);
    const ShiftResult same = gauge_shift(p, {0.4, 0.1, 0, 0}, 0.0);
    CHECK(max_abs_component(same.point.q() - p.q()) == 0.0);

    // eA = q maps to the origin of region I with q5 = M
    const ShiftResult origin = gauge_shift(p, p.q(), 1.0);
    CHECK(origin.point.region() == Region::I);
    CHECK(origin.point.q5() == doctest::Approx(1.0).epsilon(1e-13));

    verify::Rng rng(19);
    for (int i = 0; i < 1000; ++i) {
        const HyperboloidPoint r = attach(verify::random_momentum(rng), M);
        const ShiftResult s = gauge_shift(r, verify::random_momentum(rng, -1, 1),
                                          verify::uniform(rng, -1.5, 1.5));
        CHECK(std::abs(s.point.shell_residual()) <= 1e-10 * M.sq());
    }
}

TEST_CASE("large M confines points to regions I and IV") {
    verify::Rng rng(21);
    for (int i = 0; i < 200; ++i) {
        const FourMomentum q = verify::random_momentum(rng);
        const double qs = minkowski_sq(q);
        if (std::abs(qs) < 1e-10) continue;
        const ScaleM big(1.5 * std::sqrt(std::abs(qs)) + 1.0);
        const Region r = attach(q, big).region();
        CHECK((r == Region::I || r == Region::IV));
    }
}

TEST_CASE("dilatation shifts lambda additively in the timelike regions") {
    const ScaleM M(1.0);
    const HyperboloidPoint p = attach({0.8, 0.1, 0, 0}, M);
    const double delta = 0.37;
    const HyperboloidPoint moved = attach(apply(Dilatation{delta}, p.q(), M), M);
    CHECK(lambda_of(moved) == doctest::Approx(lambda_of(p) - delta).epsilon(1e-12));
}
