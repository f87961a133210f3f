#include "confmom/verify.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>
#include <stdexcept>

#include "confmom/atlas.hpp"
#include "confmom/fifthdim.hpp"
#include "confmom/models.hpp"
#include "confmom/modes.hpp"

namespace confmom::verify {

void Checker::residual(const std::string& name, double value, double tol) {
    ++result_.checks;
    result_.max_residual = std::max(result_.max_residual, std::abs(value));
    if (!(std::abs(value) <= tol)) {
        ++result_.failures;
        std::ostringstream os;
        os << name << ": residual " << value << " exceeds " << tol;
        result_.failure_notes.push_back(os.str());
    }
}

void Checker::require(const std::string& name, bool ok) {
    ++result_.checks;
    if (!ok) {
        ++result_.failures;
        result_.failure_notes.push_back(name + ": predicate failed");
    }
}

double uniform(Rng& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

FourMomentum random_momentum(Rng& rng, double lo, double hi) {
    return {uniform(rng, lo, hi), uniform(rng, lo, hi), uniform(rng, lo, hi),
            uniform(rng, lo, hi)};
}

FourMomentum random_offcone_momentum(Rng& rng, const ScaleM& M) {
    for (int attempt = 0; attempt < 1000; ++attempt) {
        const FourMomentum q = random_momentum(rng);
        const double qs = std::abs(minkowski_sq(q));
        if (qs > 0.05 * M.sq() && std::abs(qs - M.sq()) > 0.05 * M.sq()) return q;
    }
    throw std::runtime_error("failed to sample an off-cone momentum");
}

Lorentz random_lorentz(Rng& rng) {
    const Lorentz b1 = lorentz_boost(1, uniform(rng, -0.8, 0.8));
    const Lorentz r = lorentz_rotation(3, uniform(rng, -3.0, 3.0));
    const Lorentz b2 = lorentz_boost(2, uniform(rng, -0.8, 0.8));
    return Lorentz(mat4_mul(b1.matrix(), mat4_mul(r.matrix(), b2.matrix())));
}

ConformalElement random_element(int kind, Rng& rng) {
    switch (kind) {
        case 0: return Translation{random_momentum(rng, -1.0, 1.0)};
        case 1: return random_lorentz(rng);
        case 2: return Dilatation{uniform(rng, -1.0, 1.0)};
        case 3: return Inversion{};
        default: return SpecialConformal{random_momentum(rng, -0.3, 0.3)};
    }
}

namespace {

double rel_diff(const FourMomentum& a, const FourMomentum& b) {
    const double scale = std::max({1e-30, max_abs_component(a), max_abs_component(b)});
    return max_abs_component(a - b) / scale;
}

double rel_diff(double a, double b) {
    return std::abs(a - b) / std::max({1e-300, std::abs(a), std::abs(b)});
}

// true when applying e to q stays clear of lightlike/singular loci, so the
// randomized identities sample only interior points
bool element_safe_at(const ConformalElement& e, const FourMomentum& q, const ScaleM& M) {
    try {
        const FourMomentum out = apply(e, q, M);
        return !is_lightlike(out, M, 1e-6) && !is_lightlike(q, M, 1e-6) &&
               max_abs_component(out) < 1e4;
    } catch (const DomainViolation&) {
        return false;
    }
}

}  // namespace

// ------------------------------------------------------------------ group ----

SuiteResult run_group_suite(std::uint64_t seed) {
    SuiteResult result;
    result.suite = "group";
    Checker check(result);
    Rng rng(seed);
    const ScaleM M(1.0);

    // inverse round trips
    for (int i = 0; i < 200; ++i) {
        const FourMomentum q = random_offcone_momentum(rng, M);
        for (int kind : {0, 1, 2, 3}) {
            const ConformalElement e = random_element(kind, rng);
            if (!element_safe_at(e, q, M)) continue;
            const FourMomentum back = apply(inverse_element(e), apply(e, q, M), M);
            check.residual("inverse round trip " + element_kind_name(e), rel_diff(back, q),
                           1e-10);
        }
    }

    // special conformal closed form vs the composed product
    int done = 0;
    while (done < 1000) {
        const FourMomentum q = random_offcone_momentum(rng, M);
        const SpecialConformal k{random_momentum(rng, -0.3, 0.3)};
        const ConformalWord word{{Inversion{}, Translation{k.hbar}, Inversion{}}};
        try {
            const FourMomentum direct = apply(k, q, M);
            const FourMomentum composed = apply_word(word, q, M);
            if (max_abs_component(direct) > 1e4) continue;
            check.residual("special conformal = I T I", rel_diff(direct, composed), 1e-10);
            ++done;
        } catch (const DomainViolation&) {
            continue;
        }
    }

    // inversion conjugation of the four families, and its involution
    for (int i = 0; i < 100; ++i) {
        for (int kind : {0, 1, 2, 4}) {
            const ConformalElement e = random_element(kind, rng);
            const FourMomentum q = random_offcone_momentum(rng, M);
            const ConformalWord word{{Inversion{}, e, Inversion{}}};
            try {
                const FourMomentum lhs = apply(conjugate_by_inversion(e), q, M);
                const FourMomentum rhs = apply_word(word, q, M);
                if (max_abs_component(lhs) > 1e4) continue;
                check.residual("conjugation " + element_kind_name(e), rel_diff(lhs, rhs),
                               1e-10);
                const FourMomentum twice =
                    apply(conjugate_by_inversion(conjugate_by_inversion(e)), q, M);
                check.residual("conjugation involution", rel_diff(twice, apply(e, q, M)),
                               1e-10);
            } catch (const DomainViolation&) {
                continue;
            }
        }
    }

    // infinitesimal variation vs Richardson-extrapolated finite differences
    for (int i = 0; i < 50; ++i) {
        const FourMomentum q = random_offcone_momentum(rng, M);
        const double eps = 1e-4;
        auto richardson = [&](auto&& family) {
            const FourMomentum d1 = (1.0 / eps) * (family(eps) - q);
            const FourMomentum d2 = (2.0 / eps) * (family(0.5 * eps) - q);
            return 2.0 * d2 - d1;
        };

        const FourMomentum dir = random_momentum(rng, -1.0, 1.0);
        {
            auto fam = [&](double t) { return apply(Translation{t * dir}, q, M); };
            const FourMomentum exact =
                infinitesimal_variation(q, dir, mat4_zero(), 0.0, {}, M);
            check.residual("variation translation", rel_diff(richardson(fam), exact), 1e-6);
        }
        {
            Mat4 a = mat4_zero();  // boost generator in the (0,1) plane
            a[0][1] = 1.0;
            a[1][0] = -1.0;
            auto fam = [&](double t) { return apply(lorentz_boost(1, t), q, M); };
            const FourMomentum exact = infinitesimal_variation(q, {}, a, 0.0, {}, M);
            check.residual("variation lorentz", rel_diff(richardson(fam), exact), 1e-6);
        }
        {
            auto fam = [&](double t) { return apply(Dilatation{t}, q, M); };
            const FourMomentum exact = infinitesimal_variation(q, {}, mat4_zero(), 1.0, {}, M);
            check.residual("variation dilatation", rel_diff(richardson(fam), exact), 1e-6);
        }
        {
            auto fam = [&](double t) { return apply(SpecialConformal{t * dir}, q, M); };
            const FourMomentum exact =
                infinitesimal_variation(q, {}, mat4_zero(), 0.0, dir, M);
            check.residual("variation special", rel_diff(richardson(fam), exact), 1e-6);
        }
    }

    // zero variation and pure-scale direction
    {
        const FourMomentum q{1.3, 0.2, -0.7, 0.4};
        const FourMomentum zero = infinitesimal_variation(q, {}, mat4_zero(), 0.0, {}, M);
        check.residual("variation zero", max_abs_component(zero), 0.0);
        const FourMomentum scale = infinitesimal_variation(q, {}, mat4_zero(), 0.25, {}, M);
        check.residual("variation scale", rel_diff(scale, 0.25 * q), 1e-14);
    }

    // invariant split
    for (int i = 0; i < 100; ++i) {
        const FourMomentum q = random_offcone_momentum(rng, M);
        auto poly = [&](const FourMomentum& v) {
            return v.q0 * v.q0 - 0.3 * v.q1 * v.q3 + 0.7 * v.q2 + 1.1;
        };
        const InvariantSplit split = invariant_split(poly, q, M);
        check.residual("split sum", rel_diff(split.invariant + split.anti_invariant, poly(q)),
                       1e-12);
        const FourMomentum qi = invert_momentum(q, M);
        const InvariantSplit at_image = invariant_split(poly, qi, M);
        check.residual("split invariance", rel_diff(split.invariant, at_image.invariant),
                       1e-10);
    }
    {
        // fixed point of the inversion: q^2 = -M^2 maps to itself
        const FourMomentum q{0.0, 1.0, 0.0, 0.0};
        const InvariantSplit split =
            invariant_split([](const FourMomentum& v) { return minkowski_sq(v); }, q, M);
        check.residual("split fixed point", split.anti_invariant, 1e-14);
        const InvariantSplit constant =
            invariant_split([](const FourMomentum&) { return 4.5; }, q, M);
        check.residual("split constant", constant.anti_invariant, 0.0);
        check.residual("split constant value", constant.invariant - 4.5, 0.0);
    }

    return result;
}

// ------------------------------------------------------------------- cone ----

SuiteResult run_cone_suite(std::uint64_t seed) {
    SuiteResult result;
    result.suite = "cone";
    Checker check(result);
    Rng rng(seed);
    const ScaleM M(1.0);

    // lift residuals and round trips
    for (int i = 0; i < 1000; ++i) {
        const FourMomentum q = random_momentum(rng);
        const double kplus = uniform(rng, 0.2, 3.0) * (uniform(rng, 0.0, 1.0) < 0.5 ? -1 : 1);
        const ConeVector k = lift(q, kplus, M);
        check.residual("cone residual of lift", cone_residual(k) / cone_euclidean_sq(k),
                       1e-12);
        check.residual("q^2 = -M^2 k-/k+",
                       rel_diff(minkowski_sq(q), -M.sq() * k.kminus(M) / k.kplus(M)), 1e-12);
        const FourMomentum back = project(k, M);
        check.residual("project(lift) round trip", rel_diff(back, q), 1e-12);
        const ConeVector k3{{3.0 * k[0], 3.0 * k[1], 3.0 * k[2], 3.0 * k[3], 3.0 * k[4],
                             3.0 * k[5]}};
        check.residual("projective homogeneity", rel_diff(project(k3, M), q), 1e-12);
    }

    // pseudo-orthogonality and cone preservation per element kind
    const Mat6 eta = eta6_metric();
    for (int kind = 0; kind < 5; ++kind) {
        for (int i = 0; i < 50; ++i) {
            const ConformalElement e = random_element(kind, rng);
            const SixRotation g = rotation_matrix(e, M);
            const Mat6 gm = g.matrix();
            Mat6 gtg{};
            for (int r = 0; r < 6; ++r)
                for (int c = 0; c < 6; ++c) {
                    double s = 0.0;
                    for (int a = 0; a < 6; ++a)
                        for (int b = 0; b < 6; ++b) s += gm[a][r] * eta[a][b] * gm[b][c];
                    gtg[r][c] = s;
                }
            double worst = 0.0;
            for (int r = 0; r < 6; ++r)
                for (int c = 0; c < 6; ++c) worst = std::max(worst, std::abs(gtg[r][c] - eta[r][c]));
            check.residual("pseudo-orthogonality " + element_kind_name(e), worst, 1e-12);

            const ConeVector k = lift(random_momentum(rng), uniform(rng, 0.3, 2.0), M);
            const ConeVector gk = mat6_apply(gm, k);
            check.residual("cone preservation " + element_kind_name(e),
                           cone_residual(gk) / cone_euclidean_sq(k), 1e-10);
        }
    }

    // equivariance: project(G lift(q)) = apply(e, q), 1000 samples per kind
    for (int kind = 0; kind < 5; ++kind) {
        int done = 0;
        while (done < 1000) {
            const ConformalElement e = random_element(kind, rng);
            const FourMomentum q = random_offcone_momentum(rng, M);
            if (!element_safe_at(e, q, M)) continue;
            try {
                const FourMomentum direct = apply(e, q, M);
                const ConeVector gk = mat6_apply(rotation_matrix(e, M).matrix(), lift(q, 1.0, M));
                const FourMomentum through_cone = project(gk, M);
                check.residual("equivariance " + element_kind_name(e),
                               rel_diff(direct, through_cone), 1e-9);
                ++done;
            } catch (const DomainViolation&) {
                continue;
            }
        }
    }

    // homomorphism on words
    for (int i = 0; i < 100; ++i) {
        ConformalWord word;
        for (int j = 0; j < 3; ++j)
            word.elements.push_back(random_element(static_cast<int>(rng() % 5), rng));
        Mat6 prod = mat6_identity();
        for (const auto& e : word.elements) prod = mat6_mul(prod, rotation_matrix(e, M).matrix());
        const Mat6 whole = rotation_matrix(word, M).matrix();
        double worst = 0.0;
        for (int r = 0; r < 6; ++r)
            for (int c = 0; c < 6; ++c) worst = std::max(worst, std::abs(prod[r][c] - whole[r][c]));
        check.residual("word matrix product", worst, 1e-12);

        const FourMomentum q = random_offcone_momentum(rng, M);
        try {
            const FourMomentum direct = apply_word(word, q, M);
            if (max_abs_component(direct) > 1e4 || is_lightlike(direct, M, 1e-8)) continue;
            const FourMomentum through = project(mat6_apply(whole, lift(q, 1.0, M)), M);
            check.residual("word equivariance", rel_diff(direct, through), 1e-8);
        } catch (const DomainViolation&) {
            continue;
        }
    }

    // inversion matrix squared is exactly the identity
    {
        const Mat6 inv = rotation_matrix(ConformalElement{Inversion{}}, M).matrix();
        const Mat6 sq = mat6_mul(inv, inv);
        double worst = 0.0;
        for (int r = 0; r < 6; ++r)
            for (int c = 0; c < 6; ++c)
                worst = std::max(worst, std::abs(sq[r][c] - (r == c ? 1.0 : 0.0)));
        check.residual("inversion squared", worst, 0.0);
    }

    return result;
}

// ------------------------------------------------------------------ atlas ----

SuiteResult run_atlas_suite(std::uint64_t seed) {
    SuiteResult result;
    result.suite = "atlas";
    Checker check(result);
    Rng rng(seed);
    const ScaleM M(1.0);

    // Table 1 probes, interior and boundary
    check.require("classify M^2/2", classify(0.5, M) == Region::I);
    check.require("classify 2M^2", classify(2.0, M) == Region::II);
    check.require("classify -2M^2", classify(-2.0, M) == Region::III);
    check.require("classify -M^2/2", classify(-0.5, M) == Region::IV);
    check.require("classify 0", classify(0.0, M) == Region::I);
    check.require("classify M^2", classify(1.0, M) == Region::I);
    check.require("classify -M^2", classify(-1.0, M) == Region::IV);
    check.require("classify large", classify(1e9, M) == Region::II);

    // attach shell values
    {
        const HyperboloidPoint p = attach({0.5, 0.0, 0.0, 0.0}, M);
        check.residual("attach region I q5^2", p.q5_sq() - 0.75, 1e-15);
        const HyperboloidPoint p2 = attach({2.0, 1.0, 0.0, 0.0}, M);  // q^2 = 3
        check.require("attach region II", p2.region() == Region::II);
        check.residual("attach region II q5^2", p2.q5_sq() - 4.0, 1e-12);
        const HyperboloidPoint p0 = attach({1.0, 1.0, 0.0, 0.0}, M);  // q^2 = 0
        check.residual("attach q^2=0 gives q5=M", p0.q5() - 1.0, 1e-15);
    }

    // inversion duality
    int done = 0;
    while (done < 1000) {
        const FourMomentum q = random_offcone_momentum(rng, M);
        const HyperboloidPoint p = attach(q, M);
        const HyperboloidPoint pi = invert_point(p);
        check.residual("q'^2 q^2 = M^4", rel_diff(pi.q_sq() * p.q_sq(), M.sq() * M.sq()),
                       1e-10);
        const bool swap_ok =
            (p.region() == Region::I && pi.region() == Region::II) ||
            (p.region() == Region::II && pi.region() == Region::I) ||
            (p.region() == Region::III && pi.region() == Region::IV) ||
            (p.region() == Region::IV && pi.region() == Region::III);
        check.require("region swap", swap_ok);
        check.require("branch flip", pi.branch() != p.branch());
        const HyperboloidPoint back = invert_point(pi);
        check.residual("inversion involution", rel_diff(back.q(), p.q()), 1e-10);
        ++done;
    }

    // lambda relations
    {
        const HyperboloidPoint row1 = point_of_lambda(std::log(2.0), Region::I, M);
        check.residual("table-2 row I q^2", row1.q_sq() - 0.25, 1e-12);
        check.residual("table-2 row I q5^2", row1.q5_sq() - 0.75, 1e-12);
        const HyperboloidPoint row2 = attach({std::sqrt(2.0), 0.0, 0.0, 0.0}, M);
        check.residual("table-2 row II lambda", lambda_of(row2) + 0.5 * std::log(2.0), 1e-12);
        const HyperboloidPoint boundary = point_of_lambda(0.0, Region::I, M);
        check.residual("lambda 0 boundary", boundary.q_sq() - M.sq(), 1e-15);
    }
    for (int i = 0; i < 200; ++i) {
        const double lambda = uniform(rng, -10.0, 10.0);
        const Region region = lambda >= 0.0 ? (i % 2 ? Region::I : Region::IV)
                                            : (i % 2 ? Region::II : Region::III);
        const HyperboloidPoint p = point_of_lambda(lambda, region, M);
        check.residual("lambda round trip", lambda_of(p) - lambda, 1e-12);
    }
    for (int i = 0; i < 100; ++i) {
        // dilatation compatibility: lambda' = lambda - delta in regions I/II
        const FourMomentum q = random_offcone_momentum(rng, M);
        if (minkowski_sq(q) <= 0.0) continue;
        const double delta = uniform(rng, -0.5, 0.5);
        const HyperboloidPoint p = attach(q, M);
        const HyperboloidPoint moved = attach(apply(Dilatation{delta}, q, M), M);
        check.residual("dilatation lambda shift", lambda_of(moved) - (lambda_of(p) - delta),
                       1e-10);
    }

    // translations and gauge shifts preserve the shell form
    for (int i = 0; i < 1000; ++i) {
        const HyperboloidPoint p = attach(random_momentum(rng), M);
        const FourMomentum h = random_momentum(rng, -1.0, 1.0);
        const ShiftResult moved = translate_on_shell(p, h);
        check.residual("translate shell residual", moved.point.shell_residual() / M.sq(),
                       1e-10);
        check.residual("translate q'", rel_diff(moved.point.q(), p.q() + h), 1e-15);

        const FourMomentum A = random_momentum(rng, -1.0, 1.0);
        const double e_charge = uniform(rng, -1.5, 1.5);
        const ShiftResult gauged = gauge_shift(p, A, e_charge);
        check.residual("gauge shell residual", gauged.point.shell_residual() / M.sq(), 1e-10);
    }
    {
        const HyperboloidPoint p = attach({0.5, 0.2, 0.0, 0.0}, M);
        const ShiftResult same = translate_on_shell(p, {});
        check.residual("translate identity", rel_diff(same.point.q(), p.q()), 0.0);
        check.require("translate identity flag", !same.branch_flipped);
        const ShiftResult zero_charge = gauge_shift(p, {0.3, 0.1, 0.0, 0.0}, 0.0);
        check.residual("gauge identity", rel_diff(zero_charge.point.q(), p.q()), 0.0);
        // eA = q maps to the origin of region I
        const ShiftResult origin = gauge_shift(p, p.q(), 1.0);
        check.require("gauge to origin region", origin.point.region() == Region::I);
        check.residual("gauge to origin q5", origin.point.q5() - M.value(), 1e-12);
    }

    // worked translation example on the internal branch
    {
        const HyperboloidPoint p = attach({0.5, 0.0, 0.0, 0.0}, M);
        const ShiftResult moved = translate_on_shell(p, {0.25, 0.0, 0.0, 0.0});
        check.residual("worked example q'^2", moved.point.q_sq() - 9.0 / 16.0, 1e-15);
        check.residual("worked example q5'^2", moved.point.q5_sq() - 7.0 / 16.0, 1e-15);
    }

    // large-M limit collapses to regions I and IV
    for (int i = 0; i < 100; ++i) {
        const FourMomentum q = random_momentum(rng);
        const double qs = minkowski_sq(q);
        if (std::abs(qs) < 1e-12) continue;
        const ScaleM big(std::sqrt(std::abs(qs)) * 1.5 + 1.0);
        const Region r = attach(q, big).region();
        check.require("large-M region", r == Region::I || r == Region::IV);
    }

    return result;
}

// --------------------------------------------------------------- fifthdim ----

SuiteResult run_fifthdim_suite(std::uint64_t seed) {
    SuiteResult result;
    result.suite = "fifthdim";
    Checker check(result);
    Rng rng(seed);
    const ScaleM M(1.0);

    // eta values
    {
        check.residual("eta massless internal", eta(BranchSpec(Branch::internal, 0.0, M)) - 1.0,
                       1e-15);
        check.residual("eta massless external", eta(BranchSpec(Branch::external, 0.0, M)) - 1.0,
                       1e-15);
        check.residual("eta m=M internal", eta(BranchSpec(Branch::internal, 1.0, M)), 1e-15);
        check.residual("eta m=M external",
                       eta(BranchSpec(Branch::external, 1.0, M)) - std::sqrt(2.0), 1e-15);
        check.residual("eta m=sqrt3 M internal",
                       eta(BranchSpec(Branch::internal, std::sqrt(3.0), M)) - std::sqrt(2.0),
                       1e-15);
        double prev = 0.0;
        bool monotone = true;
        for (int i = 0; i <= 50; ++i) {
            const double m = 0.1 * i;
            const double e = eta(BranchSpec(Branch::external, m, M));
            if (i > 0 && e <= prev) monotone = false;
            prev = e;
        }
        check.require("eta external monotone", monotone);
    }

    // free solution matches the integrating-factor closed form
    for (Branch b : {Branch::internal, Branch::external}) {
        const BranchSpec spec(b, 0.4, M);
        const double eta_a = eta(spec);
        const FifthGrid grid = FifthGrid::centered(0.0, M);
        const Complex phi0(0.8, -0.3);
        const FifthProfile sol = solve_constraint(spec, phi0, nullptr, grid);
        double worst = 0.0;
        for (int i = 0; i < grid.n; ++i) {
            const double x5 = grid.x5(i);
            const Complex exact =
                phi0 * std::exp(Complex(0.0, -M.value() * eta_a * x5));
            worst = std::max(worst, std::abs(sol.values[i] - exact));
        }
        check.residual("free solution", worst, 1e-8);
    }

    // interior defect of the first-order constraint via finite differences
    {
        const BranchSpec spec(Branch::internal, 0.0, M);
        const FifthGrid grid = FifthGrid::centered(0.0, M);
        const double g = 0.1;
        auto l_fn = [g](Complex phi, double) { return g * phi * phi; };
        const FifthProfile sol = solve_constraint(spec, Complex(0.5, 0.0), l_fn, grid);
        const std::vector<Complex> dphi =
            differentiate(sol.values, grid.step, DerivativeMethod::stencil4);
        double max_phi = 0.0;
        for (const auto& v : sol.values) max_phi = std::max(max_phi, std::abs(v));
        double worst = 0.0;
        const Complex i_over_m(0.0, 1.0 / M.value());
        for (int i = 2; i < grid.n - 2; ++i) {
            const Complex defect =
                i_over_m * dphi[i] - sol.values[i] - l_fn(sol.values[i], grid.x5(i));
            worst = std::max(worst, std::abs(defect));
        }
        check.residual("constraint defect", worst / max_phi, 1e-6);
    }

    // first-order perturbation for small quadratic coupling
    {
        const BranchSpec spec(Branch::internal, 0.0, M);  // eta = 1
        const FifthGrid grid = FifthGrid::centered(0.0, M, 2048, 2.0);
        const double g = 1e-3;
        auto l_fn = [g](Complex phi, double) { return g * phi * phi; };
        const FifthProfile sol = solve_constraint(spec, Complex(1.0, 0.0), l_fn, grid);
        double worst = 0.0;
        for (int i = 0; i < grid.n; ++i) {
            const double x5 = grid.x5(i);
            const Complex e1 = std::exp(Complex(0.0, -x5));
            const Complex e2 = std::exp(Complex(0.0, -2.0 * x5));
            const Complex first_order = e1 + g * (e2 - e1);
            worst = std::max(worst, std::abs(sol.values[i] - first_order));
        }
        check.residual("perturbative solution", worst, 10.0 * g * g);
    }

    // divergence guard: eta = 0 Riccati blow-up
    {
        const BranchSpec spec(Branch::internal, 1.0, M);  // m = M, eta = 0
        const FifthGrid grid = FifthGrid::centered(0.0, M, 2048, 10.0);
        auto l_fn = [](Complex phi, double) { return Complex(0.0, 1.0) * phi * phi; };
        bool threw = false;
        try {
            solve_constraint(spec, Complex(1.0, 0.0), l_fn, grid, 1e6);
        } catch (const StepDiverged&) {
            threw = true;
        }
        check.require("divergence guard", threw);
    }

    // plane-wave source map, both derivative routes, and the inverse
    for (Branch b : {Branch::internal, Branch::external}) {
        const BranchSpec spec(b, 0.3, M);
        const double eta_a = eta(spec);
        const FifthGrid grid = FifthGrid::centered(0.0, M, 2048, M_PI * 4.0);
        // q5 on the periodic lattice of the grid so the spectral route is exact
        const double period = grid.step * grid.n;
        const double q5 = 2.0 * M_PI * 12.0 / period;
        FifthProfile l;
        l.grid = grid;
        l.values.resize(grid.n);
        for (int i = 0; i < grid.n; ++i)
            l.values[i] = std::exp(Complex(0.0, -q5 * grid.x5(i)));
        const Complex factor = source_from_plane_wave(spec, Complex(1.0, 0.0), q5);
        for (DerivativeMethod method :
             {DerivativeMethod::spectral, DerivativeMethod::stencil4}) {
            const FifthProfile j = source_from_l(spec, l, method);
            double worst = 0.0;
            const int margin = method == DerivativeMethod::stencil4 ? 2 : 0;
            for (int i = margin; i < grid.n - margin; ++i)
                worst = std::max(worst, std::abs(j.values[i] - factor * l.values[i]));
            check.residual(method == DerivativeMethod::spectral ? "plane-wave source spectral"
                                                                : "plane-wave source stencil",
                           worst, 1e-6);
        }
        for (int i = 0; i < 50; ++i) {
            double q5r = uniform(rng, -3.0, 3.0);
            if (std::abs(q5r + M.value() * eta_a) < 0.1) continue;
            const Complex amp(uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0));
            const Complex round =
                l_from_source(source_from_plane_wave(spec, amp, q5r), q5r, spec);
            check.residual("l-j round trip", std::abs(round - amp), 1e-12);
        }
        check.residual("plane-wave q5=M eta factor",
                       std::abs(source_from_plane_wave(spec, Complex(1.0, 0.0), M.value() * eta_a) -
                                spec.sign() * 2.0 * M.sq() * eta_a),
                       1e-12);
        bool threw = false;
        try {
            l_from_source(Complex(1.0, 0.0), -M.value() * eta_a, spec);
        } catch (const ResonantPole&) {
            threw = true;
        }
        check.require("resonant pole", threw);
    }

    // shell-support report
    {
        std::vector<SpectralMode> modes;
        for (int i = 0; i < 100; ++i)
            modes.push_back(make_on_shell_mode(random_momentum(rng), Complex(1.0, 0.0), M));
        const ShellSupportReport ok = check_shell_support(modes, M);
        check.require("on-shell modes pass", ok.all_pass);
        check.residual("on-shell max residual", ok.max_residual / M.sq(), 1e-10);

        const SpectralMode good = make_on_shell_mode({0.5, 0.5, 0.0, 0.0}, Complex(1.0, 0.0), M);
        SpectralMode claimed_internal{{1.5, 0.3, 0.0, 0.0}, 0.0, Complex(1.0, 0.0),
                                      Branch::internal};  // q^2 = 2.16 M^2
        claimed_internal.q5 = std::sqrt(claimed_internal.q.q0);  // arbitrary
        const ShellSupportReport bad = check_shell_support({good, claimed_internal}, M);
        check.require("off-window mode flagged", !bad.all_pass);
        check.require("off-window entry", !bad.entries[1].window_ok);
        check.require("good entry passes", bad.entries[0].pass);
    }

    // consistency chain: the shell operator annihilates sources built from
    // on-shell modes
    for (int i = 0; i < 100; ++i) {
        const SpectralMode mode =
            make_on_shell_mode(random_offcone_momentum(rng, M), Complex(0.7, 0.1), M);
        const BranchSpec spec(mode.branch, 0.0, M);
        const Complex j_amp = source_from_plane_wave(spec, mode.amplitude, mode.q5);
        const double shell = mode.branch == Branch::internal
                                 ? minkowski_sq(mode.q) + mode.q5 * mode.q5 - M.sq()
                                 : minkowski_sq(mode.q) - mode.q5 * mode.q5 + M.sq();
        check.residual("shell operator annihilates source", std::abs(shell * j_amp) / M.sq(),
                       1e-10);
    }

    // applying M^2((i/M) d5 + eta) to the first-order defect reproduces the
    // negative of the second-order defect
    {
        const BranchSpec spec(Branch::external, 0.7, M);
        const double eta_a = eta(spec);
        const FifthGrid grid = FifthGrid::centered(0.0, M, 2048, 3.0);
        FifthProfile phi, l;
        phi.grid = l.grid = grid;
        phi.values.resize(grid.n);
        l.values.resize(grid.n);
        for (int i = 0; i < grid.n; ++i) {
            const double x = grid.x5(i);
            phi.values[i] = std::exp(-0.3 * x * x) * std::exp(Complex(0.0, -0.8 * x));
            l.values[i] = 0.2 * std::exp(-0.2 * x * x) * std::exp(Complex(0.0, 0.5 * x));
        }
        const Complex i_over_m(0.0, 1.0 / M.value());
        const auto dphi = differentiate(phi.values, grid.step, DerivativeMethod::stencil4);
        FifthProfile defect1;
        defect1.grid = grid;
        defect1.values.resize(grid.n);
        for (int i = 0; i < grid.n; ++i)
            defect1.values[i] = i_over_m * dphi[i] - eta_a * phi.values[i] - l.values[i];
        // lhs = M^2((i/M) d5 + eta) defect1
        const auto ddef = differentiate(defect1.values, grid.step, DerivativeMethod::stencil4);
        const auto d2phi = differentiate(dphi, grid.step, DerivativeMethod::stencil4);
        const auto dl = differentiate(l.values, grid.step, DerivativeMethod::stencil4);
        double worst = 0.0;
        for (int i = 4; i < grid.n - 4; ++i) {
            const Complex lhs =
                M.sq() * (i_over_m * ddef[i] + eta_a * defect1.values[i]);
            const Complex defect2 = d2phi[i] + M.sq() * eta_a * eta_a * phi.values[i] +
                                    M.sq() * (i_over_m * dl[i] + eta_a * l.values[i]);
            worst = std::max(worst, std::abs(lhs + defect2));
        }
        check.residual("first/second order compatibility", worst, 1e-5);
    }

    // 4D reduction
    {
        const FifthGrid grid = FifthGrid::centered(0.0, M);
        const BranchSpec inr(Branch::internal, 0.5, M);
        const BranchSpec ext(Branch::external, 0.5, M);
        FifthProfile zero;
        zero.grid = grid;
        zero.values.assign(grid.n, Complex(0.0, 0.0));
        const FifthProfile phi1 = solve_constraint(inr, Complex(0.3, 0.4), nullptr, grid);
        const FourDimReduction only_first = reduce_to_4d(phi1, zero, zero, zero);
        check.residual("reduction single branch", std::abs(only_first.Phi - Complex(0.3, 0.4)),
                       1e-14);

        // sourced plane waves: (-q^2 + m^2) Phi = J per branch
        const double m = 0.5;
        const FourMomentum q{1.3, 0.4, 0.2, 0.1};
        const double qs = minkowski_sq(q);
        FifthProfile p1, p2, j1, j2;
        p1.grid = p2.grid = j1.grid = j2.grid = grid;
        p1.values.assign(grid.n, Complex(0.0, 0.0));
        p2.values.assign(grid.n, Complex(0.0, 0.0));
        j1.values.assign(grid.n, Complex(0.0, 0.0));
        j2.values.assign(grid.n, Complex(0.0, 0.0));
        const Complex a1(0.8, -0.2), a2(0.1, 0.5);
        for (int i = 0; i < grid.n; ++i) {
            const double x5 = grid.x5(i);
            const double q51 = std::sqrt(std::max(0.0, M.sq() - qs));
            const double q52 = std::sqrt(std::max(0.0, M.sq() + qs));
            p1.values[i] = a1 * std::exp(Complex(0.0, -q51 * x5));
            p2.values[i] = a2 * std::exp(Complex(0.0, -q52 * x5));
            j1.values[i] = (-qs + m * m) * p1.values[i];
            j2.values[i] = (-qs + m * m) * p2.values[i];
        }
        const FourDimReduction red = reduce_to_4d(p1, p2, j1, j2);
        check.residual("reduction KG residual",
                       std::abs((-qs + m * m) * red.Phi - red.J), 1e-8);
    }

    return result;
}

// ------------------------------------------------------------------ modes ----

SuiteResult run_modes_suite(std::uint64_t seed) {
    SuiteResult result;
    result.suite = "modes";
    Checker check(result);
    Rng rng(seed);
    const BoxGrid grid(2.0 * M_PI, 16);
    const double mass = 1.0;
    const double L3 = grid.volume();

    auto random_lattice_vec = [&](int max_n) {
        auto pick = [&]() { return static_cast<int>(rng() % (2 * max_n + 1)) - max_n; };
        return grid.lattice_momentum(pick(), pick(), pick());
    };

    // diagonal normalization 2 (p0 - h0) L^3, time-only and full shifts
    for (int i = 0; i < 20; ++i) {
        const Vec3 p = random_lattice_vec(3);
        const double h0 = uniform(rng, -0.4, 0.4);
        const Vec3 hs = (i % 2) ? random_lattice_vec(1) : Vec3{};
        const FourMomentum h{h0, hs.x, hs.y, hs.z};
        const PlaneMode f = PlaneMode::on_shell(p, mass, Complex(1.0, 0.0), h);
        const Complex ip = kg_inner_product(f, f, grid, 0.37);
        const double expected = 2.0 * f.frequency() * L3;
        check.residual("diagonal normalization", std::abs(ip - expected) / std::abs(expected),
                       1e-10);
    }
    {
        // rest mode: 2 L^3
        const PlaneMode f = PlaneMode::on_shell({}, mass, Complex(1.0, 0.0));
        check.residual("rest mode normalization",
                       std::abs(kg_inner_product(f, f, grid, 0.0) - 2.0 * L3) / (2.0 * L3),
                       1e-12);
    }

    // orthogonality of distinct lattice momenta
    for (int i = 0; i < 20; ++i) {
        const Vec3 p1 = random_lattice_vec(3);
        Vec3 p2 = random_lattice_vec(3);
        if (std::abs(p1.x - p2.x) + std::abs(p1.y - p2.y) + std::abs(p1.z - p2.z) < 1e-12)
            p2.x += grid.momentum_unit();
        const double h0 = uniform(rng, -0.4, 0.4);
        const FourMomentum h{h0, 0.0, 0.0, 0.0};
        const PlaneMode f = PlaneMode::on_shell(p1, mass, Complex(1.0, 0.0), h);
        const PlaneMode g = PlaneMode::on_shell(p2, mass, Complex(1.0, 0.0), h);
        const double scale = 2.0 * std::abs(f.frequency()) * L3;
        check.residual("lattice orthogonality",
                       std::abs(kg_inner_product(f, g, grid, 0.11)) / scale, 1e-10);
    }

    // the un-conjugated pairing vanishes for every lattice pair (time shifts)
    for (int i = 0; i < 20; ++i) {
        const Vec3 p1 = random_lattice_vec(2);
        const Vec3 p2 = (i % 4 == 0) ? p1 : random_lattice_vec(2);
        const double h0 = (i % 2) ? uniform(rng, -0.4, 0.4) : 0.0;
        const FourMomentum h{h0, 0.0, 0.0, 0.0};
        const PlaneMode f = PlaneMode::on_shell(p1, mass, Complex(1.0, 0.0), h);
        const PlaneMode g = PlaneMode::on_shell(p2, mass, Complex(1.0, 0.0), h);
        const double scale = 2.0 * std::abs(f.frequency()) * L3;
        check.residual("conjugate-pair vanishing",
                       std::abs(kg_pairing_unconjugated(f, g, grid, 0.23)) / scale, 1e-10);
    }

    // coefficient extraction: single mode, superposition, zero field
    {
        const Complex c(0.7, -1.1);
        const PlaneMode m1 = PlaneMode::on_shell(grid.lattice_momentum(1, 0, 2), mass, c);
        const FieldSlice slice = sample_charged({m1}, grid, 0.4);
        const Complex got = extract_coefficient(slice, m1.p, mass);
        check.residual("single-mode extraction", std::abs(got - c), 1e-10);

        const Complex c2(-0.3, 0.2);
        const PlaneMode m2 = PlaneMode::on_shell(grid.lattice_momentum(-2, 1, 0), mass, c2);
        const FieldSlice two = sample_charged({m1, m2}, grid, 0.4);
        check.residual("superposition extraction 1",
                       std::abs(extract_coefficient(two, m1.p, mass) - c), 1e-10);
        check.residual("superposition extraction 2",
                       std::abs(extract_coefficient(two, m2.p, mass) - c2), 1e-10);

        const FieldSlice empty(grid, 0.0);
        check.residual("zero-field extraction",
                       std::abs(extract_coefficient(empty, m1.p, mass)), 1e-14);
    }

    // translation invariance of extracted coefficients, charged and neutral
    for (int i = 0; i < 8; ++i) {
        std::vector<PlaneMode> field;
        std::vector<Complex> amps;
        std::vector<FourMomentum> labels;
        for (int j = 0; j < 3; ++j) {
            const Vec3 pj = random_lattice_vec(2);
            bool dup = false;
            for (const auto& m : field)
                if (std::abs(m.p.q1 - pj.x) + std::abs(m.p.q2 - pj.y) +
                        std::abs(m.p.q3 - pj.z) <
                    1e-9)
                    dup = true;
            if (dup) continue;
            const Complex amp(uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0));
            field.push_back(PlaneMode::on_shell(pj, mass, amp));
            amps.push_back(amp);
            labels.push_back(field.back().p);
        }
        const Vec3 hs = random_lattice_vec(1);
        const FourMomentum h{uniform(rng, -0.3, 0.3), hs.x, hs.y, hs.z};
        const double x0 = uniform(rng, -1.0, 1.0);
        for (std::size_t j = 0; j < field.size(); ++j) {
            const Complex charged = translate_and_extract(field, h, labels[j], mass, grid, x0,
                                                          FieldKind::charged);
            check.residual("charged translation invariance", std::abs(charged - amps[j]),
                           1e-10);
            const Complex neutral = translate_and_extract(field, h, labels[j], mass, grid, x0,
                                                          FieldKind::neutral);
            check.residual("neutral translation invariance", std::abs(neutral - amps[j]),
                           1e-10);
        }
    }

    // hermiticity of the translated neutral field
    {
        std::vector<PlaneMode> field;
        field.push_back(
            PlaneMode::on_shell(grid.lattice_momentum(1, -1, 0), mass, Complex(0.4, 0.9)));
        field.push_back(
            PlaneMode::on_shell(grid.lattice_momentum(0, 2, 1), mass, Complex(-1.2, 0.3)));
        const FourMomentum h{0.27, grid.momentum_unit(), 0.0, 0.0};
        const FieldSlice shifted = translated_neutral_slice(field, h, grid, 0.61);
        double worst = 0.0;
        for (const auto& v : shifted.values) worst = std::max(worst, std::abs(v.imag()));
        check.residual("translated neutral field stays real", worst, 1e-12);
    }

    // off-lattice shift is rejected
    {
        bool threw = false;
        try {
            translate_and_extract({PlaneMode::on_shell({}, mass, Complex(1.0, 0.0))},
                                  {0.0, 0.5 * grid.momentum_unit(), 0.0, 0.0}, {mass, 0, 0, 0},
                                  mass, grid, 0.0, FieldKind::charged);
        } catch (const std::invalid_argument&) {
            threw = true;
        }
        check.require("off-lattice shift rejected", threw);
    }

    return result;
}

// ----------------------------------------------------------------- models ----

SuiteResult run_models_suite(std::uint64_t seed) {
    SuiteResult result;
    result.suite = "models";
    Checker check(result);
    Rng rng(seed);
    const ScaleM M(1.0);

    auto num_gradient = [](auto&& fn, double x) {
        const double h = 1e-5 * (1.0 + std::abs(x));
        return (fn(x + h) - fn(x - h)) / (2.0 * h);
    };

    // phi^4: gradient, antisymmetry, stationary structure
    {
        const Phi4Params inr(0.8, BranchSpec(Branch::internal, 0.3, M));
        // branch antisymmetry is pointwise at equal eta, i.e. for the
        // massless start where eta_inr = eta_ext = 1
        const Phi4Params inr0(0.8, BranchSpec(Branch::internal, 0.0, M));
        const Phi4Params ext0(0.8, BranchSpec(Branch::external, 0.0, M));
        for (int i = 0; i < 100; ++i) {
            const double phi = uniform(rng, -2.0, 2.0);
            const double grad = num_gradient([&](double x) { return phi4_L_int(x, inr); }, phi);
            const double src = phi4_source(phi, inr);
            check.residual("phi4 gradient = source",
                           std::abs(grad - src) / std::max(1.0, std::abs(src)), 1e-6);
            check.residual("phi4 branch antisymmetry L",
                           phi4_L_int(phi, inr0) + phi4_L_int(phi, ext0), 1e-12);
            check.residual("phi4 branch antisymmetry j",
                           phi4_source(phi, inr0) + phi4_source(phi, ext0), 1e-12);
        }
        check.residual("phi4 zero field", std::abs(phi4_l(0.0, inr)) +
                                              std::abs(phi4_source(0.0, inr)) +
                                              std::abs(phi4_L_int(0.0, inr)),
                       0.0);

        const Phi4Params unit(1.0, BranchSpec(Branch::internal, 0.0, M));  // eta = 1
        const Phi4StationaryReport rep = phi4_stationary_points(unit);
        check.residual("phi4 stationary -1.5", rep.derivative_root + 1.5, 1e-10);
        check.residual("phi4 L zero -2", rep.conventional_location + 2.0, 1e-10);
        const Phi4Params doubled(2.0, BranchSpec(Branch::internal, 0.0, M));
        check.residual("phi4 stationary halves with g",
                       phi4_stationary_points(doubled).derivative_root + 0.75, 1e-10);
    }

    // sigma model: change of variables, chiral circle, gradient, series
    {
        const SigmaParams p(93.0, BranchSpec(Branch::internal, 0.0, M));
        const SigmaParams pext(93.0, BranchSpec(Branch::external, 0.0, M));
        for (int i = 0; i < 100; ++i) {
            PionVector pi{uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0),
                          uniform(rng, -1.0, 1.0)};
            const double target = uniform(rng, 0.05, 0.9) * p.f_pi;
            pi = pion_scale(target / pion_norm(pi), pi);
            const PionVector chi = sigma_pi_to_chi(pi, p);
            const PionVector back = sigma_chi_to_pi(chi, p);
            check.residual("chi-pi round trip",
                           std::abs(back.a - pi.a) + std::abs(back.b - pi.b) +
                               std::abs(back.c - pi.c),
                           1e-12 * p.f_pi);
            // constraint residual chi - pi - chi^2 pi / 4 f^2
            const double c2 = pion_norm_sq(chi);
            const double resid = std::abs(chi.a - pi.a - c2 * pi.a / (4 * p.f_pi * p.f_pi)) +
                                 std::abs(chi.b - pi.b - c2 * pi.b / (4 * p.f_pi * p.f_pi)) +
                                 std::abs(chi.c - pi.c - c2 * pi.c / (4 * p.f_pi * p.f_pi));
            check.residual("interpolating-field constraint", resid, 1e-12 * p.f_pi);
            check.residual("chiral circle",
                           sigma_chir_penalty(pi, sigma_of_pi(pi, p), p), 1e-18 * std::pow(p.f_pi, 4));
        }
        {
            const PionVector pi{0.0, 0.0, 0.0};
            check.residual("sigma at pi=0", sigma_of_pi(pi, p) - p.f_pi, 0.0);
            const PionVector edge{p.f_pi, 0.0, 0.0};
            check.residual("sigma at |pi|=f", sigma_of_pi(edge, p), 1e-12);
            const PionVector half{2.0 * p.f_pi, 0.0, 0.0};
            bool threw = false;
            try {
                sigma_pi_to_chi(half, p);
            } catch (const NoRealBranch&) {
                threw = true;
            }
            check.require("no real branch beyond f_pi", threw);
            // |chi| = 2 f maps to pi = chi/2
            const PionVector chi{2.0 * p.f_pi, 0.0, 0.0};
            check.residual("chi=2f halves", sigma_chi_to_pi(chi, p).a - p.f_pi, 1e-12 * p.f_pi);
        }
        for (int i = 0; i < 100; ++i) {
            const double r = uniform(rng, 0.1, 0.9) * p.f_pi;
            PionVector pi{uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0),
                          uniform(rng, -1.0, 1.0)};
            pi = pion_scale(r / pion_norm(pi), pi);
            const PionVector src = sigma_source(pi, p);
            const double h = 1e-6 * p.f_pi;
            for (int axis = 0; axis < 3; ++axis) {
                PionVector up = pi, dn = pi;
                (&up.a)[axis] += h;
                (&dn.a)[axis] -= h;
                const double grad = (sigma_L_int(up, p) - sigma_L_int(dn, p)) / (2.0 * h);
                const double want = (&src.a)[axis];
                check.residual("sigma gradient = source",
                               std::abs(grad - want) / std::max(std::abs(want), M.sq() * p.f_pi),
                               1e-6);
            }
            check.residual("sigma branch antisymmetry",
                           (sigma_L_int(pi, p) + sigma_L_int(pi, pext)) /
                               (M.sq() * p.f_pi * p.f_pi),
                           1e-12);
        }
        {
            // |pi| = f_pi: sigma = 0 and L takes the value -(+1) M^2 f^2 on
            // the internal branch; the approach is linear in sigma
            const PionVector edge_pi{p.f_pi, 0.0, 0.0};
            const double limit = -p.spec.sign() * M.sq() * p.f_pi * p.f_pi;
            check.residual("sigma L at the chiral edge",
                           (sigma_L_int(edge_pi, p) - limit) / std::abs(limit), 1e-12);
            const PionVector near_edge{0.999999 * p.f_pi, 0.0, 0.0};
            const double sigma_near = sigma_of_pi(near_edge, p);
            check.require("sigma L edge approach",
                          std::abs(sigma_L_int(near_edge, p) - limit) <
                              std::abs(limit) * 5.0 * sigma_near / p.f_pi);
            bool threw = false;
            try {
                sigma_L_int({0.0, 0.0, 0.0}, p);
            } catch (const PionPole&) {
                threw = true;
            }
            check.require("pion pole", threw);
        }
        const SigmaSeriesFit fit = sigma_series_coefficients(p);
        const double f2 = p.f_pi * p.f_pi;
        check.residual("series c_const", (fit.c_const + 4.5 * f2) / (4.5 * f2), 1e-4);
        check.residual("series c_inv", (fit.c_inv - 8.0 * f2 * f2) / (8.0 * f2 * f2), 1e-4);
        check.residual("series c_2", fit.c_2 + 1.0, 1e-4);
        check.residual("series c_4", (fit.c_4 + 0.25 / f2) * 4.0 * f2, 1e-3);
        check.require("series window residual", fit.max_residual <= 1e-6 * M.sq() * f2);

        check.residual("pion mass external",
                       pion_mass_sq(Branch::external, M) / (2.0 * M.sq()) - 1.0, 2e-4);
        check.residual("pion mass internal",
                       pion_mass_sq(Branch::internal, M) / (-2.0 * M.sq()) - 1.0, 2e-4);
        const double m_pi = 138.0;
        const ScaleM fitted(m_pi / std::sqrt(2.0));
        check.residual("m_pi round trip",
                       std::sqrt(pion_mass_sq(Branch::external, fitted)) / m_pi - 1.0, 1e-3);
        const ScaleM tiny(1e-6);
        check.residual("massless limit", pion_mass_sq(Branch::external, tiny), 1e-11);
    }

    // higgs sector
    {
        const HiggsParams inr(1.0, BranchSpec(Branch::internal, 0.0, M));
        const HiggsParams ext(1.0, BranchSpec(Branch::external, 0.0, M));
        for (int i = 0; i < 100; ++i) {
            double phi = uniform(rng, -2.5, 2.5);
            if (std::abs(phi) < 1e-3) phi = 0.5;  // |phi| kink breaks the FD stencil at 0
            const double grad = num_gradient([&](double x) { return higgs_L_int(x, inr); }, phi);
            const double src = higgs_source(phi, inr);
            check.residual("higgs gradient = source",
                           std::abs(grad - src) / std::max(1.0, std::abs(src)), 1e-6);
            check.residual("higgs branch antisymmetry",
                           higgs_L_int(phi, inr) + higgs_L_int(phi, ext), 1e-12);
        }
        check.residual("higgs zero field", std::abs(higgs_l(0.0, inr)) +
                                               std::abs(higgs_source(0.0, inr)) +
                                               std::abs(higgs_L_int(0.0, inr)),
                       0.0);

        const HiggsStationaryReport un = higgs_stationary_points(inr, HiggsForm::unshifted);
        double pos_stat = 0.0, pos_zero = 0.0;
        for (const auto& s : un.stationary)
            if (s.location > 0.1) pos_stat = s.location;
        for (double z : un.lagrangian_zeros)
            if (z > 0.1) pos_zero = z;
        check.residual("higgs unshifted stationary 3M/2f", pos_stat - 1.5, 1e-10);
        check.residual("higgs unshifted zero 2M/f", pos_zero - 2.0, 1e-10);

        const HiggsStationaryReport sh = higgs_stationary_points(inr, HiggsForm::shifted);
        check.residual("higgs shifted u*", sh.u_star - 3.0, 1e-10);
        const HiggsParams f2(2.0, BranchSpec(Branch::internal, 0.0, M));
        check.residual("higgs shifted u* f=2",
                       higgs_stationary_points(f2, HiggsForm::shifted).u_star - 1.5, 1e-10);

        const HiggsMassReport mass = higgs_mass_report(inr);
        check.residual("higgs raw curvature 9M^2/16", mass.raw_curvature - 9.0 / 16.0, 1e-7);
        check.residual("higgs mass 9M^2/8", mass.mass_sq - 9.0 / 8.0, 1e-6);
        const ScaleM M3(3.0);
        const HiggsParams scaled(1.0, BranchSpec(Branch::internal, 0.0, M3));
        check.residual("higgs mass scales as M^2",
                       higgs_mass_sq(scaled) / (9.0 * M3.sq() / 8.0) - 1.0, 1e-6);
    }

    // constraint-compatibility chains against the fifth-coordinate solver
    {
        // phi^4: solve (i/M) d5 phi = eta phi + g phi^2 and compare the
        // numerically derived source with the closed form
        const Phi4Params p(0.1, BranchSpec(Branch::internal, 0.0, M));
        const double g = p.g;
        const FifthGrid grid = FifthGrid::centered(0.0, M);
        auto l_fn = [g](Complex phi, double) { return g * phi * phi; };
        const FifthProfile phi = solve_constraint(p.spec, Complex(0.5, 0.0), l_fn, grid);
        FifthProfile l;
        l.grid = grid;
        l.values.resize(grid.n);
        for (int i = 0; i < grid.n; ++i) l.values[i] = g * phi.values[i] * phi.values[i];
        const FifthProfile j = source_from_l(p.spec, l);
        const double eta_a = eta(p.spec);
        double worst = 0.0;
        for (int i = 0; i < grid.n; ++i) {
            const Complex v = phi.values[i];
            const Complex closed =
                p.spec.sign() * M.sq() *
                (3.0 * g * eta_a * v * v + 2.0 * g * g * v * v * v);
            worst = std::max(worst,
                             std::abs(j.values[i] - closed) / std::max(1e-6, std::abs(closed)));
        }
        check.residual("phi4 source chain", worst, 1e-6);

        // higgs: same chain on a short window where the phase stays off the
        // sqrt branch cut
        const HiggsParams hp(0.4, BranchSpec(Branch::internal, 0.0, M));
        const FifthGrid short_grid = FifthGrid::centered(0.0, M, 2048, 1.2);
        auto hl = [&](Complex phi_c, double) {
            return -(hp.f / M.value()) * phi_c * std::sqrt(phi_c * phi_c);
        };
        const FifthProfile hphi = solve_constraint(hp.spec, Complex(0.6, 0.0), hl, short_grid);
        FifthProfile hl_prof;
        hl_prof.grid = short_grid;
        hl_prof.values.resize(short_grid.n);
        for (int i = 0; i < short_grid.n; ++i) hl_prof.values[i] = hl(hphi.values[i], 0.0);
        const FifthProfile hj = source_from_l(hp.spec, hl_prof);
        double hworst = 0.0;
        for (int i = 0; i < short_grid.n; ++i) {
            const Complex v = hphi.values[i];
            const Complex root = std::sqrt(v * v);
            const Complex closed = hp.spec.sign() * (-3.0 * hp.f * M.value() * v * root +
                                                     2.0 * hp.f * hp.f * v * v * v);
            hworst = std::max(hworst,
                              std::abs(hj.values[i] - closed) / std::max(1e-6, std::abs(closed)));
        }
        check.residual("higgs source chain", hworst, 1e-5);

        // sigma model at a fixed plane-wave chi configuration: l is a plane
        // wave at 3 q5 and the numeric source matches the momentum-space factor
        const SigmaParams sp(93.0, BranchSpec(Branch::internal, 0.0, M));
        const FifthGrid sgrid = FifthGrid::centered(0.0, M, 2048, M_PI * 4.0);
        const double period = sgrid.step * sgrid.n;
        const double q5 = 2.0 * M_PI * 8.0 / period;
        const double pi_amp = 20.0;
        FifthProfile l_sigma;
        l_sigma.grid = sgrid;
        l_sigma.values.resize(sgrid.n);
        for (int i = 0; i < sgrid.n; ++i) {
            const Complex pi_wave = pi_amp * std::exp(Complex(0.0, -q5 * sgrid.x5(i)));
            const Complex chi = (q5 / M.value()) * pi_wave;  // (i/M) d5 of the wave
            l_sigma.values[i] = chi * chi * pi_wave / (4.0 * sp.f_pi * sp.f_pi);
        }
        const FifthProfile j_sigma = source_from_l(sp.spec, l_sigma);
        const Complex factor = source_from_plane_wave(sp.spec, Complex(1.0, 0.0), 3.0 * q5);
        double sworst = 0.0;
        for (int i = 2; i < sgrid.n - 2; ++i)
            sworst = std::max(sworst, std::abs(j_sigma.values[i] - factor * l_sigma.values[i]) /
                                          std::abs(factor * l_sigma.values[i]));
        check.residual("sigma fixed-chi chain", sworst, 1e-6);
    }

    // gauge-translation source
    {
        const SpectralMode phi = make_on_shell_mode({0.4, 0.1, 0.0, 0.0}, Complex(1.0, 0.0), M);
        const GaugeMode A{{0.2, 0.1, -0.3, 0.0}, 0.05, {0.0, 1.0, 0.5, 0.0}, Complex(0.7, 0.0)};
        check.require("sed zero charge", sed_source(phi, A, 0.0).empty());

        const GaugeMode constant{{}, 0.0, {0.3, 0.2, 0.0, 0.1}, Complex(1.0, 0.0)};
        const auto combined = sed_source(phi, constant, 0.5);
        check.require("sed constant single mode", combined.size() == 1);
        const double aq = minkowski_dot(constant.polarization, phi.q);
        const double a2 = minkowski_sq(constant.polarization);
        check.residual("sed constant amplitude",
                       std::abs(combined[0].amplitude - (2.0 * 0.5 * aq - 0.25 * a2)), 1e-12);

        const auto two = sed_source(phi, A, 0.5);
        check.require("sed two output modes", two.size() == 2);
        check.residual("sed momentum q+k", rel_diff(two[0].q, phi.q + A.k), 1e-15);
        check.residual("sed momentum q+2k", rel_diff(two[1].q, phi.q + 2.0 * A.k), 1e-15);
        check.residual("sed q5 bookkeeping",
                       std::abs(two[0].q5 - (phi.q5 + A.k5)) +
                           std::abs(two[1].q5 - (phi.q5 + 2.0 * A.k5)),
                       1e-15);
    }

    return result;
}

// ----------------------------------------------------------- sigma series ----

SuiteResult run_sigma_series_suite() {
    SuiteResult result;
    result.suite = "sigma-series";
    Checker check(result);
    const ScaleM M(1.0);
    const SigmaParams p(93.0, BranchSpec(Branch::external, 0.0, M));
    const SigmaSeriesFit fit = sigma_series_coefficients(p);
    const double f2 = p.f_pi * p.f_pi;
    check.residual("c_const vs -9/2 f^2", (fit.c_const + 4.5 * f2) / (4.5 * f2), 1e-4);
    check.residual("c_inv vs 8 f^4", (fit.c_inv - 8.0 * f2 * f2) / (8.0 * f2 * f2), 1e-4);
    check.residual("c_2 vs -1", fit.c_2 + 1.0, 1e-4);
    check.residual("c_4 vs -1/(4 f^2)", (fit.c_4 + 0.25 / f2) * 4.0 * f2, 1e-3);
    check.require("fit well conditioned", fit.condition < 1e12);
    return result;
}

std::vector<std::string> suite_names() {
    return {"group", "cone", "atlas", "fifthdim", "modes", "models", "sigma-series"};
}

SuiteResult run_suite(const std::string& name, std::uint64_t seed) {
    if (name == "group") return run_group_suite(seed);
    if (name == "cone") return run_cone_suite(seed);
    if (name == "atlas") return run_atlas_suite(seed);
    if (name == "fifthdim") return run_fifthdim_suite(seed);
    if (name == "modes") return run_modes_suite(seed);
    if (name == "models") return run_models_suite(seed);
    if (name == "sigma-series") return run_sigma_series_suite();
    throw std::invalid_argument("unknown suite: " + name);
}

std::vector<SuiteResult> run_all(std::uint64_t seed) {
    std::vector<SuiteResult> out;
    for (const auto& name : suite_names()) out.push_back(run_suite(name, seed));
    return out;
}

}  // namespace confmom::verify
