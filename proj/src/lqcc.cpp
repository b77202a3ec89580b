#include "entconc/lqcc.hpp"

#include <cmath>
#include <sstream>

#include "entconc/errors.hpp"

namespace entconc {

LocalFilter::LocalFilter(double mu, double a, const Vector3& m) : mu_(mu), a_(a), m_(m) {
    if (!(mu > 0.0)) throw Error(ErrorKind::InvalidState, "filter mu must be positive");
    if (!(a >= 0.0 && a <= 1.0)) throw Error(ErrorKind::InvalidState, "filter a must lie in [0, 1]");
    if (std::abs(m.norm() - 1.0) > kPhysicalTol)
        throw Error(ErrorKind::InvalidState, "filter direction must be a unit vector");
    if (mu * (1.0 + a) > 1.0 + kPhysicalTol) {
        std::ostringstream os;
        os << "filter is not physical: largest singular value " << mu * (1.0 + a);
        throw Error(ErrorKind::InvalidState, os.str());
    }
}

LocalFilter LocalFilter::normalized(double a, const Vector3& m) {
    const double n = m.norm();
    if (!(n > 0.0)) {
        if (a != 0.0) throw Error(ErrorKind::InvalidState, "zero filter direction with a > 0");
        return identity();
    }
    return LocalFilter(1.0 / (1.0 + a), a, m / n);
}

Matrix2c FilterSvdForm::reconstruct() const {
    Eigen::Vector2cd d(1.0, alpha_side);
    return scale * u_post * d.asDiagonal() * u_pre;
}

Matrix2c filter_matrix(const LocalFilter& f) {
    Matrix2c out = Matrix2c::Identity();
    for (int i = 0; i < 3; ++i) out += f.a() * f.m()(i) * pauli::sigma(i);
    return f.mu() * out;
}

Eigen::Vector2d singular_values(const Matrix2c& op) {
    Eigen::JacobiSVD<Matrix2c> svd(op);
    return svd.singularValues();
}

FilterSvdForm svd_normal_form(const Matrix2c& op) {
    Eigen::JacobiSVD<Matrix2c> svd(op, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Eigen::Vector2d s = svd.singularValues();
    if (!(s(0) > 0.0)) throw Error(ErrorKind::ZeroOperator, "operator is the zero matrix");
    FilterSvdForm out;
    out.scale = s(0);
    out.alpha_side = s(1) / s(0);
    out.u_post = svd.matrixU();
    out.u_pre = svd.matrixV().adjoint();
    return out;
}

namespace {

void check_factor(const Matrix2c& m, const char* name) {
    const double smax = singular_values(m)(0);
    if (!(smax > 0.0)) throw Error(ErrorKind::InvalidState, std::string(name) + " factor is the zero matrix");
    if (smax > 1.0 + kPhysicalTol) {
        std::ostringstream os;
        os << name << " factor violates A^dag A <= I (largest singular value " << smax << ")";
        throw Error(ErrorKind::InvalidState, os.str());
    }
}

Matrix2c unit_norm(const Matrix2c& m) {
    const double smax = singular_values(m)(0);
    if (!(smax > 0.0)) throw Error(ErrorKind::ZeroOperator, "cannot normalize the zero matrix");
    return m / smax;
}

}  // namespace

LqccOperator::LqccOperator(const Matrix2c& a_op, const Matrix2c& b_op) : a_(a_op), b_(b_op) {
    check_factor(a_, "Alice");
    check_factor(b_, "Bob");
}

LqccOperator LqccOperator::normalized(const Matrix2c& a_op, const Matrix2c& b_op) {
    return LqccOperator(unit_norm(a_op), unit_norm(b_op));
}

LqccOperator LqccOperator::from_filters(const LocalFilter& fa, const LocalFilter& fb) {
    return LqccOperator(filter_matrix(fa), filter_matrix(fb));
}

LqccOperator LqccOperator::identity() { return LqccOperator(Matrix2c::Identity(), Matrix2c::Identity()); }

ApplyResult apply(const LqccOperator& op, const DensityMatrix& rho) {
    const Matrix4c k = op.product();
    Matrix4c out = k * rho.matrix() * k.adjoint();
    const double t = out.trace().real();
    if (!(t > kAnnihilatedTrace)) {
        std::ostringstream os;
        os << "filter annihilates the state (trace " << t << ")";
        throw Error(ErrorKind::Annihilated, os.str());
    }
    out /= t;
    return {DensityMatrix::from_matrix(0.5 * (out + out.adjoint())), t};
}

double success_probability(const PauliForm& rho, const LocalFilter& fa, const LocalFilter& fb) {
    // Tr((A^2 x B^2) rho) with A^2 = mu^2 ((1 + a^2) I + 2a m.sigma).
    const double a = fa.a();
    const double b = fb.a();
    const double mu2 = fa.mu() * fa.mu();
    const double nu2 = fb.mu() * fb.mu();
    const double bracket = (1.0 + a * a) * (1.0 + b * b) + 2.0 * a * (1.0 + b * b) * fa.m().dot(rho.alpha) +
                           2.0 * b * (1.0 + a * a) * fb.m().dot(rho.beta) +
                           4.0 * a * b * fa.m().dot(rho.R * fb.m());
    return mu2 * nu2 * bracket;
}

double lambda_scaling_factor(const PauliForm& rho, const LocalFilter& fa, const LocalFilter& fb) {
    const double t = success_probability(rho, fa, fb);
    if (!(t > kAnnihilatedTrace)) throw Error(ErrorKind::ZeroProbability, "success probability vanishes");
    const double a = fa.a();
    const double b = fb.a();
    return fa.mu() * fa.mu() * fb.mu() * fb.mu() * (1.0 - a * a) * (1.0 - b * b) / t;
}

double lambda_scaling_factor(const LqccOperator& op, const DensityMatrix& rho) {
    const Matrix4c k = op.product();
    const double t = (k * rho.matrix() * k.adjoint()).trace().real();
    if (!(t > kAnnihilatedTrace)) throw Error(ErrorKind::ZeroProbability, "success probability vanishes");
    return std::abs(op.a_op().determinant()) * std::abs(op.b_op().determinant()) / t;
}

bool is_invertible(const LqccOperator& op) {
    return singular_values(op.a_op())(1) > kInvertibleFloor && singular_values(op.b_op())(1) > kInvertibleFloor;
}

LqccOperator compose(const LqccOperator& second, const LqccOperator& first) {
    return LqccOperator(second.a_op() * first.a_op(), second.b_op() * first.b_op());
}

}  // namespace entconc
