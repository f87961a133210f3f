#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "confmom/cone.hpp"
#include "confmom/verify.hpp"

using namespace confmom;

namespace {
double rel(const FourMomentum& a, const FourMomentum& b) {
    return max_abs_component(a - b) /
           std::max(1e-30, std::max(max_abs_component(a), max_abs_component(b)));
}
}  // namespace

TEST_CASE("lift of the origin splits the scale evenly") {
    const ScaleM M(1.0);
    const ConeVector k = lift({0, 0, 0, 0}, 1.0, M);
    CHECK(k[0] == 0.0);
    CHECK(k[4] == doctest::Approx(0.5));  // kappa_5 = M/2
    CHECK(k[5] == doctest::Approx(0.5));  // kappa_6 = M/2
    CHECK(cone_residual(k) == 0.0);
}

TEST_CASE("lift rejects a vanishing projective scale") {
    const ScaleM M(1.0);
    CHECK_THROWS_AS(lift({1, 0, 0, 0}, 0.0, M), std::invalid_argument);
}

TEST_CASE("lifted vectors sit on the cone and project back") {
    const ScaleM M(0.7);
    verify::Rng rng(3);
    for (int i = 0; i < 1000; ++i) {
        const FourMomentum q = verify::random_momentum(rng);
        const double kplus = verify::uniform(rng, 0.1, 3.0);
        const ConeVector k = lift(q, kplus, M);
        CHECK(std::abs(cone_residual(k)) <= 1e-12 * cone_euclidean_sq(k));
        CHECK(minkowski_sq(q) ==
              doctest::Approx(-M.sq() * k.kminus(M) / k.kplus(M)).epsilon(1e-12));
        CHECK(rel(project(k, M), q) < 1e-12);
    }
    // round trip at unit scale and homogeneity
    const FourMomentum q{1.1, -0.4, 0.2, 0.9};
    const ConeVector k = lift(q, 2.5, M);
    ConeVector k3 = k;
    for (auto& v : k3.k) v *= 3.0;
    CHECK(rel(project(k, M), q) < 1e-13);
    CHECK(rel(project(k3, M), q) < 1e-13);
}

TEST_CASE("projective infinity is rejected") {
    const ScaleM M(1.0);
    ConeVector k{};
    k[0] = 1.0;
    k[1] = 1.0;  // lightlike 4-part
    k[4] = 1.0;
    k[5] = -1.0;  // kappa_5 + kappa_6 = 0
    CHECK(std::abs(cone_residual(k)) < 1e-14);
    CHECK_THROWS_AS(project(k, M), ProjectiveInfinity);
}

TEST_CASE("inversion matrix is the kappa_6 reflection") {
    const ScaleM M(1.0);
    const Mat6 g = rotation_matrix(ConformalElement{Inversion{}}, M).matrix();
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) {
            const double want = i == j ? (i == 5 ? -1.0 : 1.0) : 0.0;
            CHECK(g[i][j] == want);
        }
    const Mat6 sq = mat6_mul(g, g);
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) CHECK(sq[i][j] == (i == j ? 1.0 : 0.0));
}

TEST_CASE("six-rotation construction validates pseudo-orthogonality") {
    Mat6 bad = mat6_identity();
    bad[0][0] = 2.0;
    CHECK_THROWS_AS(SixRotation{bad}, std::invalid_argument);
}

TEST_CASE("equivariance ties the 6D and 4D pictures together") {
    const ScaleM M(1.0);
    verify::Rng rng(17);
    for (int kind = 0; kind < 5; ++kind) {
        int done = 0;
        while (done < 200) {
            const ConformalElement e = verify::random_element(kind, rng);
            const FourMomentum q = verify::random_offcone_momentum(rng, M);
            try {
                const FourMomentum direct = apply(e, q, M);
                if (max_abs_component(direct) > 1e4) continue;
                const ConeVector moved =
                    mat6_apply(rotation_matrix(e, M).matrix(), lift(q, 1.0, M));
                CHECK(rel(project(moved, M), direct) < 1e-9);
                CHECK(std::abs(cone_residual(moved)) <=
                      1e-10 * cone_euclidean_sq(lift(q, 1.0, M)));
                ++done;
            } catch (const DomainViolation&) {
            }
        }
    }
}

TEST_CASE("dilatation scales kappa_plus by exp(-lambda)") {
    const ScaleM M(1.0);
    const double lambda = 0.6;
    const ConeVector k = lift({0.8, 0.1, 0.0, 0.3}, 1.0, M);
    const ConeVector moved =
        mat6_apply(rotation_matrix(ConformalElement{Dilatation{lambda}}, M).matrix(), k);
    CHECK(moved.kplus(M) == doctest::Approx(std::exp(-lambda) * k.kplus(M)).epsilon(1e-13));
    CHECK(moved[0] == doctest::Approx(k[0]).epsilon(1e-13));
}

TEST_CASE("word matrices multiply in composition order") {
    const ScaleM M(1.0);
    verify::Rng rng(29);
    const ConformalWord w{{Dilatation{0.3}, Translation{{0.2, -0.1, 0.4, 0.0}}, Inversion{}}};
    const Mat6 whole = rotation_matrix(w, M).matrix();
    Mat6 prod = mat6_identity();
    for (const auto& e : w.elements) prod = mat6_mul(prod, rotation_matrix(e, M).matrix());
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) CHECK(whole[i][j] == doctest::Approx(prod[i][j]).epsilon(1e-14));

    int done = 0;
    while (done < 50) {
        const FourMomentum q = verify::random_offcone_momentum(rng, M);
        try {
            const FourMomentum direct = apply_word(w, q, M);
            if (max_abs_component(direct) > 1e4) continue;
            CHECK(rel(project(mat6_apply(whole, lift(q, 1.0, M)), M), direct) < 1e-8);
            ++done;
        } catch (const DomainViolation&) {
        }
    }
}
