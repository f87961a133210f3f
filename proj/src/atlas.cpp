#include "confmom/atlas.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace confmom {

std::string region_name(Region r) {
    switch (r) {
        case Region::I: return "I";
        case Region::II: return "II";
        case Region::III: return "III";
        case Region::IV: return "IV";
    }
    return "?";
}

std::string branch_name(Branch b) {
    return b == Branch::internal ? "internal" : "external";
}

Branch branch_of(Region r) {
    return (r == Region::I || r == Region::III) ? Branch::internal : Branch::external;
}

Region classify(double q_sq, const ScaleM& M) {
    const double m2 = M.sq();
    if (q_sq >= 0.0) return q_sq <= m2 ? Region::I : Region::II;
    return q_sq < -m2 ? Region::III : Region::IV;
}

HyperboloidPoint::HyperboloidPoint(const FourMomentum& q, double q5, Branch branch,
                                   Region region, const ScaleM& M)
    : q_(q), q5_(q5), branch_(branch), region_(region), M_(M) {
    if (q5_ < 0.0) throw std::invalid_argument("q5 must be nonnegative");
    const double scale = M_.sq() + std::abs(q_sq()) + q5_ * q5_;
    if (std::abs(shell_residual()) > kShellTol * scale)
        throw std::invalid_argument("point violates its branch shell condition");
    if (classify(q_sq(), M_) != region_)
        throw std::invalid_argument("region label inconsistent with q^2");
}

double HyperboloidPoint::shell_residual() const {
    const double qs = q_sq();
    const double q5s = q5_ * q5_;
    return branch_ == Branch::internal ? qs + q5s - M_.sq() : qs - q5s + M_.sq();
}

HyperboloidPoint attach(const FourMomentum& q, const ScaleM& M) {
    const double qs = minkowski_sq(q);
    const Region region = classify(qs, M);
    const Branch branch = branch_of(region);
    const double rad = branch == Branch::internal ? M.sq() - qs : M.sq() + qs;
    // roundoff can leave a tiny negative radicand on the region boundaries
    const double q5 = std::sqrt(std::max(rad, 0.0));
    return HyperboloidPoint(q, q5, branch, region, M);
}

HyperboloidPoint invert_point(const HyperboloidPoint& p) {
    return attach(invert_momentum(p.q(), p.M()), p.M());
}

double lambda_of(const HyperboloidPoint& p) {
    const double qs = p.q_sq();
    if (is_lightlike(p.q(), p.M()))
        throw LightlikeInversion("lambda undefined at q^2 = 0");
    const double ratio = std::abs(qs) / p.M().sq();
    return -0.5 * std::log(ratio);
}

HyperboloidPoint point_of_lambda(double lambda, Region region, const ScaleM& M) {
    const double mag = M.sq() * std::exp(-2.0 * lambda);
    const bool timelike = (region == Region::I || region == Region::II);
    const double q_sq = timelike ? mag : -mag;
    if (classify(q_sq, M) != region) {
        std::ostringstream os;
        os << "lambda = " << lambda << " lies outside region " << region_name(region);
        throw std::domain_error(os.str());
    }
    const double r = std::sqrt(mag);
    const FourMomentum q = timelike ? FourMomentum{r, 0.0, 0.0, 0.0}
                                    : FourMomentum{0.0, r, 0.0, 0.0};
    return attach(q, M);
}

namespace {

ShiftResult reshell(const HyperboloidPoint& p, const FourMomentum& q_new) {
    const double shift = minkowski_sq(q_new) - p.q_sq();  // 2 h.q + h^2
    double q5_sq = p.branch() == Branch::internal ? p.q5_sq() - shift : p.q5_sq() + shift;
    Branch branch = p.branch();
    bool flipped = false;
    if (q5_sq < 0.0) {
        branch = branch == Branch::internal ? Branch::external : Branch::internal;
        q5_sq = branch == Branch::internal ? p.M().sq() - minkowski_sq(q_new)
                                           : p.M().sq() + minkowski_sq(q_new);
        flipped = true;
    }
    const Region region = classify(minkowski_sq(q_new), p.M());
    return {HyperboloidPoint(q_new, std::sqrt(std::max(q5_sq, 0.0)), branch, region, p.M()),
            flipped};
}

}  // namespace

ShiftResult translate_on_shell(const HyperboloidPoint& p, const FourMomentum& h) {
    return reshell(p, p.q() + h);
}

ShiftResult gauge_shift(const HyperboloidPoint& p, const FourMomentum& A, double e_charge) {
    return reshell(p, p.q() - e_charge * A);
}

}  // namespace confmom
