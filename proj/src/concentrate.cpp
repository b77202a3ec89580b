#include "entconc/concentrate.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <sstream>

namespace entconc {

namespace {

double bloch_residual(const DensityMatrix& rho) {
    const PauliForm p = to_pauli(rho);
    return std::max(p.alpha.norm(), p.beta.norm());
}

// (2 rho_side)^(-1/2); NaN entries if the marginal is singular.
Matrix2c marginal_whitening(const Matrix2c& reduced) {
    Eigen::SelfAdjointEigenSolver<Matrix2c> es(0.5 * (reduced + reduced.adjoint()));
    Eigen::Vector2d w = es.eigenvalues();
    for (int i = 0; i < 2; ++i) w(i) = 1.0 / std::sqrt(2.0 * w(i));
    return es.eigenvectors() * w.asDiagonal() * es.eigenvectors().adjoint();
}

// Unnormalized one-sided filter; the state is renormalized so the scale of x is irrelevant.
DensityMatrix filter_one_side(const DensityMatrix& rho, const Matrix2c& x, Side side) {
    const Matrix4c k = side == Side::Alice ? kron(x, Matrix2c::Identity()) : kron(Matrix2c::Identity(), x);
    Matrix4c out = k * rho.matrix() * k.adjoint();
    out /= out.trace().real();
    return DensityMatrix::from_matrix(0.5 * (out + out.adjoint()));
}

double largest_singular_value(const Matrix2c& m) { return singular_values(m)(0); }

}  // namespace

NoConvergence::NoConvergence(ConcentrationResult best)
    : Error(ErrorKind::NoConvergence,
            [&] {
                std::ostringstream os;
                os << "residual " << best.residual << " after " << best.iterations << " iterations";
                return os.str();
            }()),
      best_(std::move(best)) {}

LqccOperator improvement_step(const DensityMatrix& rho, double step) {
    if (!(step > 0.0 && step < 1.0)) throw Error(ErrorKind::InvalidState, "step must lie in (0, 1)");
    if (concurrence(rho) <= kEntanglementFloor) throw Error(ErrorKind::NotEntangled, "state has zero concurrence");
    const PauliForm p = to_pauli(rho);
    auto side_filter = [step](const Vector3& bloch) {
        if (bloch.norm() < 1e-12) return LocalFilter::identity();
        return LocalFilter::normalized(step, -bloch);
    };
    return LqccOperator::from_filters(side_filter(p.alpha), side_filter(p.beta));
}

ConcentrationResult concentrate(const DensityMatrix& rho, double tol, int max_iter) {
    SolverOptions opts;
    opts.tol = tol;
    opts.max_iter = max_iter;
    return concentrate(rho, opts);
}

ConcentrationResult concentrate(const DensityMatrix& rho, const SolverOptions& opts) {
    if (!(opts.tol > 0.0)) throw Error(ErrorKind::InvalidState, "tolerance must be positive");
    if (opts.max_iter < 0) throw Error(ErrorKind::InvalidState, "max_iter must be non-negative");
    if (concurrence(rho) <= kEntanglementFloor) throw Error(ErrorKind::NotEntangled, "state has zero concurrence");

    ConcentrationResult res;
    res.eof_in = eof(rho);

    Matrix2c cum_a = Matrix2c::Identity();
    Matrix2c cum_b = Matrix2c::Identity();
    DensityMatrix current = rho;
    if (opts.initial) {
        if (!is_invertible(*opts.initial))
            throw Error(ErrorKind::InvalidState, "initial filter must be invertible");
        current = apply(*opts.initial, rho).state;
        cum_a = opts.initial->a_op();
        cum_b = opts.initial->b_op();
    }
    res.eof_history.push_back(eof(current));

    const std::array<Side, 2> order = opts.first_side == Side::Alice ? std::array{Side::Alice, Side::Bob}
                                                                      : std::array{Side::Bob, Side::Alice};
    double residual = bloch_residual(current);
    int it = 0;
    bool finite = true;
    while (residual > opts.tol && it < opts.max_iter && finite) {
        for (const Side side : order) {
            const Matrix2c x = marginal_whitening(reduced_state(current, side));
            if (!x.allFinite()) {
                finite = false;
                break;
            }
            current = filter_one_side(current, x, side);
            Matrix2c& cum = side == Side::Alice ? cum_a : cum_b;
            cum = x * cum;
            cum /= largest_singular_value(cum);
            res.eof_history.push_back(eof(current));
        }
        ++it;
        residual = bloch_residual(current);
    }

    // The output is the iterate itself. Re-applying an ill-conditioned
    // cumulative filter to rho can leave a Bloch residual of ~eps * cond^2.
    const LqccOperator optimal = LqccOperator::normalized(cum_a, cum_b);
    res.filter_a = optimal.a_op();
    res.filter_b = optimal.b_op();
    res.output = current;
    res.probability = apply(optimal, rho).probability;
    res.eof_max = eof(current);
    res.iterations = it;
    res.residual = residual;

    if (!(res.residual <= opts.tol)) throw NoConvergence(std::move(res));
    return res;
}

Matrix2c unitary_from_rotation(const Matrix3& rot) {
    const Eigen::Quaterniond q(rot);
    const cplx I(0.0, 1.0);
    return q.w() * Matrix2c::Identity() -
           I * (q.x() * pauli::sigma(0) + q.y() * pauli::sigma(1) + q.z() * pauli::sigma(2));
}

Matrix3 rotation_from_unitary(const Matrix2c& u) {
    Matrix3 rot;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            rot(j, i) = 0.5 * (pauli::sigma(j) * u * pauli::sigma(i) * u.adjoint()).trace().real();
    return rot;
}

BellDiagonalForm canonicalize_bell(const DensityMatrix& rho, double tol) {
    const PauliForm p = to_pauli(rho);
    if (p.alpha.norm() > tol || p.beta.norm() > tol) {
        std::ostringstream os;
        os << "local Bloch vectors |alpha| = " << p.alpha.norm() << ", |beta| = " << p.beta.norm()
           << " exceed tolerance " << tol;
        throw Error(ErrorKind::NotBellDiagonal, os.str());
    }

    // R = U diag(s) V^T with U, V in SO(3); then U^T R V = diag(s).
    Eigen::JacobiSVD<Matrix3> svd(p.R, Eigen::ComputeFullU | Eigen::ComputeFullV);
    Matrix3 u = svd.matrixU();
    Matrix3 v = svd.matrixV();
    Vector3 s = svd.singularValues();
    if (u.determinant() < 0.0) {
        u.col(2) *= -1.0;
        s(2) *= -1.0;
    }
    if (v.determinant() < 0.0) {
        v.col(2) *= -1.0;
        s(2) *= -1.0;
    }
    Matrix3 rot_a = u.transpose();
    Matrix3 rot_b = v.transpose();

    // A pi rotation about axis k on Alice's side negates the other two entries.
    auto flip_pair = [&](int i, int j) {
        Matrix3 d = Matrix3::Identity();
        d(i, i) = -1.0;
        d(j, j) = -1.0;
        rot_a = d * rot_a;
        s(i) = -s(i);
        s(j) = -s(j);
    };
    std::vector<int> pos;
    for (int i = 0; i < 3; ++i)
        if (s(i) > 0.0) pos.push_back(i);
    if (pos.size() >= 2) {
        flip_pair(pos[0], pos[1]);
        pos.erase(pos.begin(), pos.begin() + 2);
    }
    if (pos.size() == 1) {
        const int k = pos[0];
        int zero = -1;
        for (int i = 0; i < 3; ++i)
            if (i != k && s(i) == 0.0) zero = i;
        if (zero >= 0) {
            flip_pair(k, zero);
        } else {
            // Odd number of positives and no zero: only the all-positive form is reachable.
            const int i = (k + 1) % 3;
            const int j = (k + 2) % 3;
            flip_pair(i, j);
        }
    }

    // Same signed permutation on both sides reorders the diagonal.
    std::array<int, 3> idx{0, 1, 2};
    std::sort(idx.begin(), idx.end(), [&](int x, int y) { return s(x) < s(y); });
    Matrix3 perm = Matrix3::Zero();
    for (int i = 0; i < 3; ++i) perm(i, idx[static_cast<std::size_t>(i)]) = 1.0;
    if (perm.determinant() < 0.0) perm.col(0) *= -1.0;
    rot_a = perm * rot_a;
    rot_b = perm * rot_b;

    BellDiagonalForm out;
    for (int i = 0; i < 3; ++i) out.r(i) = s(idx[static_cast<std::size_t>(i)]);
    out.u_a = unitary_from_rotation(rot_a);
    out.u_b = unitary_from_rotation(rot_b);
    return out;
}

Eigen::Vector4d bell_eigenvalues(const Vector3& r) {
    return 0.25 * Eigen::Vector4d(1.0 - r(0) - r(1) - r(2), 1.0 - r(0) + r(1) + r(2), 1.0 + r(0) - r(1) + r(2),
                                  1.0 + r(0) + r(1) - r(2));
}

Vector3 r_from_invariants(const LocalInvariants& c) {
    // lambda_1 = (1 - r1 - r2 - r3)/4 and lambda_i = (1 + s_i . r)/4 for the
    // canonical entangled ordering; c_i lambda_1 = lambda_i is linear in r.
    const std::array<Vector3, 3> signs{Vector3(-1.0, 1.0, 1.0), Vector3(1.0, -1.0, 1.0), Vector3(1.0, 1.0, -1.0)};
    const std::array<double, 3> ratios{c.c2, c.c3, c.c4};
    Matrix3 a;
    Vector3 b;
    for (std::size_t i = 0; i < 3; ++i) {
        a.row(static_cast<int>(i)) = -(ratios[i] * Vector3::Ones() + signs[i]).transpose();
        b(static_cast<int>(i)) = 1.0 - ratios[i];
    }
    Eigen::FullPivLU<Matrix3> lu(a);
    if (!lu.isInvertible()) throw Error(ErrorKind::Inconsistent, "ratio equations are singular");
    const Vector3 r = lu.solve(b);
    if ((a * r - b).norm() > 1e-10) throw Error(ErrorKind::Inconsistent, "ratio equations have no accurate solution");

    const Eigen::Vector4d ev = bell_eigenvalues(r);
    if (ev.minCoeff() < -1e-10) throw Error(ErrorKind::Inconsistent, "solution is not a positive state");
    if (r.maxCoeff() > 1e-10) throw Error(ErrorKind::Inconsistent, "solution has positive correlation entries");
    if (r(0) > r(1) + 1e-10 || r(1) > r(2) + 1e-10) throw Error(ErrorKind::Inconsistent, "solution is not ordered");
    if (-0.5 * (1.0 + r.sum()) <= kEntanglementFloor)
        throw Error(ErrorKind::Inconsistent, "ratios describe a separable state");
    return r;
}

double max_extractable_entanglement(const DensityMatrix& rho) {
    const LambdaSpectrum l = lambda_spectrum(rho);
    if (concurrence(l) <= kEntanglementFloor) return 0.0;
    return eof(bell_diagonal(r_from_invariants(invariants(l))));
}

}  // namespace entconc
