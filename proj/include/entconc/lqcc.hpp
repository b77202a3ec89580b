#pragma once

// Local filtering operations A x B acting as
//   rho -> (A x B) rho (A x B)^dag / t,  t = Tr((A x B) rho (A x B)^dag).

#include "entconc/qstate.hpp"

namespace entconc {

inline constexpr double kPhysicalTol = 1e-12;
inline constexpr double kInvertibleFloor = 1e-10;
inline constexpr double kAnnihilatedTrace = 1e-14;

// Hermitian filtration mu (I + a m.sigma).
class LocalFilter {
public:
    // Throws InvalidState if mu <= 0, a outside [0, 1], |m| != 1 or mu (1 + a) > 1.
    LocalFilter(double mu, double a, const Vector3& m);

    // Largest physical filter along (a, m): mu = 1 / (1 + a). `m` is normalized
    // here; a zero direction is allowed only together with a = 0.
    static LocalFilter normalized(double a, const Vector3& m);
    static LocalFilter identity() { return LocalFilter(1.0, 0.0, Vector3::UnitZ()); }

    double mu() const noexcept { return mu_; }
    double a() const noexcept { return a_; }
    const Vector3& m() const noexcept { return m_; }

private:
    double mu_;
    double a_;
    Vector3 m_;
};

// op = scale * u_post * diag(1, alpha_side) * u_pre.
// scale is the largest singular value (in (0, 1] for physical operators).
struct FilterSvdForm {
    Matrix2c u_pre = Matrix2c::Identity();
    double alpha_side = 1.0;
    Matrix2c u_post = Matrix2c::Identity();
    double scale = 1.0;

    Matrix2c reconstruct() const;
};

class LqccOperator {
public:
    // Throws InvalidState if either factor is zero or has a singular value above 1 + 1e-12.
    LqccOperator(const Matrix2c& a_op, const Matrix2c& b_op);

    // Divides each factor by its largest singular value. Rescaling never changes
    // the filtered state, only the success probability.
    static LqccOperator normalized(const Matrix2c& a_op, const Matrix2c& b_op);
    static LqccOperator from_filters(const LocalFilter& fa, const LocalFilter& fb);
    static LqccOperator identity();

    const Matrix2c& a_op() const noexcept { return a_; }
    const Matrix2c& b_op() const noexcept { return b_; }
    Matrix4c product() const { return kron(a_, b_); }

private:
    Matrix2c a_;
    Matrix2c b_;
};

struct ApplyResult {
    DensityMatrix state;
    double probability;
};

Matrix2c filter_matrix(const LocalFilter& f);

// Throws Error(ZeroOperator) for the zero matrix.
FilterSvdForm svd_normal_form(const Matrix2c& op);

Eigen::Vector2d singular_values(const Matrix2c& op);

// Throws Error(Annihilated) if the unnormalized trace is <= 1e-14.
ApplyResult apply(const LqccOperator& op, const DensityMatrix& rho);

// Closed-form success probability of the Hermitian filter pair.
double success_probability(const PauliForm& rho, const LocalFilter& fa, const LocalFilter& fb);

// mu^2 nu^2 (1 - a^2)(1 - b^2) / t, the factor multiplying every lambda_i.
// Throws Error(ZeroProbability) if t <= 1e-14.
double lambda_scaling_factor(const PauliForm& rho, const LocalFilter& fa, const LocalFilter& fb);

// Matrix-form counterpart: |det A|^2 |det B|^2 / t.
double lambda_scaling_factor(const LqccOperator& op, const DensityMatrix& rho);

bool is_invertible(const LqccOperator& op);

// Applying `first` then `second` equals applying compose(second, first).
LqccOperator compose(const LqccOperator& second, const LqccOperator& first);

}  // namespace entconc
