#include "confmom/conformal.hpp"

#include <cmath>
#include <sstream>

namespace confmom {

ScaleM::ScaleM(double value) : value_(value) {
    if (!(value > 0.0) || !std::isfinite(value))
        throw std::invalid_argument("ScaleM must be finite and strictly positive");
}

Lorentz::Lorentz(const Mat4& matrix) : matrix_(matrix) {
    const Mat4 g = minkowski_metric();
    const Mat4 res = mat4_mul(mat4_transpose(matrix_), mat4_mul(g, matrix_));
    double worst = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) worst = std::max(worst, std::abs(res[i][j] - g[i][j]));
    const double scale = std::max(1.0, mat4_max_abs(matrix_));
    if (worst > kOrthogonalityTol * scale * scale)
        throw std::invalid_argument("Lorentz matrix fails L^T g L = g within 1e-12");
}

Lorentz lorentz_boost(int axis, double rapidity) {
    if (axis < 1 || axis > 3) throw std::invalid_argument("boost axis must be 1, 2 or 3");
    Mat4 m = mat4_identity();
    const double ch = std::cosh(rapidity);
    const double sh = std::sinh(rapidity);
    m[0][0] = ch;
    m[0][axis] = sh;
    m[axis][0] = sh;
    m[axis][axis] = ch;
    return Lorentz(m);
}

Lorentz lorentz_rotation(int axis, double angle) {
    if (axis < 1 || axis > 3) throw std::invalid_argument("rotation axis must be 1, 2 or 3");
    const int a = axis == 1 ? 2 : 1;
    const int b = axis == 3 ? 2 : 3;
    Mat4 m = mat4_identity();
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    m[a][a] = c;
    m[a][b] = -s;
    m[b][a] = s;
    m[b][b] = c;
    return Lorentz(m);
}

std::string element_kind_name(const ConformalElement& e) {
    struct Visitor {
        std::string operator()(const Translation&) const { return "translation"; }
        std::string operator()(const Lorentz&) const { return "lorentz"; }
        std::string operator()(const Dilatation&) const { return "dilatation"; }
        std::string operator()(const Inversion&) const { return "inversion"; }
        std::string operator()(const SpecialConformal&) const { return "special_conformal"; }
    };
    return std::visit(Visitor{}, e);
}

bool is_lightlike(const FourMomentum& q, const ScaleM& M, double tol) {
    return std::abs(minkowski_sq(q)) < tol * (euclidean_sq(q) + M.sq());
}

FourMomentum invert_momentum(const FourMomentum& q, const ScaleM& M) {
    if (is_lightlike(q, M)) {
        std::ostringstream os;
        os << "inversion at lightlike momentum (q^2 = " << minkowski_sq(q) << ")";
        throw LightlikeInversion(os.str());
    }
    return (-M.sq() / minkowski_sq(q)) * q;
}

namespace {

FourMomentum apply_special_conformal(const FourMomentum& q, const FourMomentum& hbar,
                                     const ScaleM& M) {
    // same domain as the defining I T I product
    if (is_lightlike(q, M))
        throw LightlikeInversion("special conformal map at lightlike momentum");
    const double m2 = M.sq();
    const double qsq = minkowski_sq(q);
    const double qh = minkowski_dot(q, hbar);
    const double hsq = minkowski_sq(hbar);
    const double den = 1.0 - 2.0 * qh / m2 + hsq * qsq / (m2 * m2);
    const double scale = 1.0 + std::abs(2.0 * qh / m2) + std::abs(hsq * qsq / (m2 * m2));
    if (std::abs(den) < 1e-12 * scale)
        throw SingularSpecialConformal("special conformal denominator vanishes");
    return (1.0 / den) * (q - (qsq / m2) * hbar);
}

}  // namespace

FourMomentum apply(const ConformalElement& e, const FourMomentum& q, const ScaleM& M) {
    struct Visitor {
        const FourMomentum& q;
        const ScaleM& M;
        FourMomentum operator()(const Translation& t) const { return q + t.h; }
        FourMomentum operator()(const Lorentz& l) const { return mat4_apply(l.matrix(), q); }
        FourMomentum operator()(const Dilatation& d) const { return std::exp(d.lambda) * q; }
        FourMomentum operator()(const Inversion&) const { return invert_momentum(q, M); }
        FourMomentum operator()(const SpecialConformal& k) const {
            return apply_special_conformal(q, k.hbar, M);
        }
    };
    return std::visit(Visitor{q, M}, e);
}

FourMomentum apply_word(const ConformalWord& w, const FourMomentum& q, const ScaleM& M) {
    FourMomentum cur = q;
    for (std::size_t i = w.elements.size(); i-- > 0;) {
        try {
            cur = apply(w.elements[i], cur, M);
        } catch (DomainViolation& err) {
            err.set_word_step(static_cast<int>(i));
            throw;
        }
    }
    return cur;
}

ConformalElement inverse_element(const ConformalElement& e) {
    struct Visitor {
        ConformalElement operator()(const Translation& t) const {
            return Translation{-t.h};
        }
        ConformalElement operator()(const Lorentz& l) const {
            // inverse of a pseudo-orthogonal matrix: g L^T g
            const Mat4 g = minkowski_metric();
            return Lorentz(mat4_mul(g, mat4_mul(mat4_transpose(l.matrix()), g)));
        }
        ConformalElement operator()(const Dilatation& d) const {
            return Dilatation{-d.lambda};
        }
        ConformalElement operator()(const Inversion&) const { return Inversion{}; }
        ConformalElement operator()(const SpecialConformal& k) const {
            return SpecialConformal{-k.hbar};
        }
    };
    return std::visit(Visitor{}, e);
}

ConformalElement conjugate_by_inversion(const ConformalElement& e) {
    struct Visitor {
        ConformalElement operator()(const Translation& t) const {
            return SpecialConformal{t.h};
        }
        ConformalElement operator()(const Lorentz& l) const { return l; }
        ConformalElement operator()(const Dilatation& d) const { return Dilatation{-d.lambda}; }
        ConformalElement operator()(const Inversion& i) const { return i; }
        ConformalElement operator()(const SpecialConformal& k) const {
            return Translation{k.hbar};
        }
    };
    return std::visit(Visitor{}, e);
}

FourMomentum infinitesimal_variation(const FourMomentum& q, const FourMomentum& dh,
                                     const Mat4& dLambda, double dlambda,
                                     const FourMomentum& dhbar, const ScaleM& M) {
    double asym = 0.0;
    double scale = 1.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            asym = std::max(asym, std::abs(dLambda[i][j] + dLambda[j][i]));
            scale = std::max(scale, std::abs(dLambda[i][j]));
        }
    if (asym > 1e-12 * scale)
        throw std::invalid_argument("dLambda must be antisymmetric");

    // dLambda carries lower indices; acting on contravariant components
    // requires one metric factor: dq = (g dLambda) q.
    const FourMomentum rot = mat4_apply(mat4_mul(minkowski_metric(), dLambda), q);
    const double qsq = minkowski_sq(q);
    const double qdh = minkowski_dot(q, dhbar);
    // first-order expansion of the special conformal closed form; dhbar is
    // the parameter of the finite map
    const FourMomentum special = (1.0 / M.sq()) * ((2.0 * qdh) * q - qsq * dhbar);
    return dh + rot + dlambda * q + special;
}

InvariantSplit invariant_split(const std::function<double(const FourMomentum&)>& f,
                               const FourMomentum& q, const ScaleM& M) {
    const FourMomentum qi = invert_momentum(q, M);
    const double fq = f(q);
    const double fqi = f(qi);
    return {0.5 * (fq + fqi), 0.5 * (fq - fqi)};
}

}  // namespace confmom
