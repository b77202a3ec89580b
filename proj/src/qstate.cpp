#include "entconc/qstate.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "entconc/errors.hpp"

namespace entconc {

namespace pauli {

const Matrix2c& identity() {
    static const Matrix2c id = Matrix2c::Identity();
    return id;
}

const Matrix2c& sigma(int i) {
    static const std::array<Matrix2c, 3> s = [] {
        const cplx I(0.0, 1.0);
        std::array<Matrix2c, 3> out;
        out[0] << 0.0, 1.0, 1.0, 0.0;
        out[1] << 0.0, -I, I, 0.0;
        out[2] << 1.0, 0.0, 0.0, -1.0;
        return out;
    }();
    return s.at(static_cast<std::size_t>(i));
}

}  // namespace pauli

Matrix4c kron(const Matrix2c& a, const Matrix2c& b) {
    Matrix4c out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
    return out;
}

DensityMatrix DensityMatrix::from_matrix(const Matrix4c& m) { return from_matrix(m, kPsdTol); }

DensityMatrix DensityMatrix::from_matrix(const Matrix4c& m, double psd_tol) {
    if (!m.allFinite()) throw Error(ErrorKind::InvalidState, "non-finite entries");
    const double herm = (m - m.adjoint()).cwiseAbs().maxCoeff();
    if (herm > kHermitianTol) {
        std::ostringstream os;
        os << "not Hermitian (max |rho - rho^dag| = " << herm << ")";
        throw Error(ErrorKind::InvalidState, os.str());
    }
    const cplx tr = m.trace();
    if (std::abs(tr - 1.0) > kTraceTol) {
        std::ostringstream os;
        os << "trace " << tr << " differs from 1";
        throw Error(ErrorKind::InvalidState, os.str());
    }
    // Exact Hermitian part so downstream eigensolvers see a symmetric input.
    const Matrix4c h = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix4c> es(h, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -psd_tol) {
        std::ostringstream os;
        os << "not positive semidefinite (min eigenvalue " << es.eigenvalues().minCoeff() << ")";
        throw Error(ErrorKind::InvalidState, os.str());
    }
    return DensityMatrix(h);
}

DensityMatrix DensityMatrix::maximally_mixed() { return DensityMatrix(Matrix4c::Identity() / 4.0); }

Eigen::Vector4d DensityMatrix::eigenvalues() const {
    Eigen::SelfAdjointEigenSolver<Matrix4c> es(m_, Eigen::EigenvaluesOnly);
    return es.eigenvalues();
}

double DensityMatrix::purity() const { return (m_ * m_).trace().real(); }

PureState::PureState(const Vector4c& amplitudes) : amps_(amplitudes) {
    if (std::abs(amps_.norm() - 1.0) > 1e-12)
        throw Error(ErrorKind::InvalidState, "pure state amplitudes are not unit norm");
}

PureState PureState::normalized(const Vector4c& amplitudes) {
    const double n = amplitudes.norm();
    if (!(n > 0.0)) throw Error(ErrorKind::InvalidState, "zero amplitude vector");
    return PureState(amplitudes / n);
}

DensityMatrix PureState::density() const {
    return DensityMatrix::from_matrix(amps_ * amps_.adjoint());
}

PauliForm to_pauli(const DensityMatrix& rho) {
    const Matrix4c& m = rho.matrix();
    PauliForm p;
    for (int i = 0; i < 3; ++i) {
        p.alpha(i) = (m * kron(pauli::sigma(i), pauli::identity())).trace().real();
        p.beta(i) = (m * kron(pauli::identity(), pauli::sigma(i))).trace().real();
        for (int j = 0; j < 3; ++j)
            p.R(i, j) = (m * kron(pauli::sigma(i), pauli::sigma(j))).trace().real();
    }
    return p;
}

Matrix4c pauli_to_matrix(const PauliForm& p) {
    Matrix4c m = Matrix4c::Identity();
    for (int i = 0; i < 3; ++i) {
        m += p.alpha(i) * kron(pauli::sigma(i), pauli::identity());
        m += p.beta(i) * kron(pauli::identity(), pauli::sigma(i));
        for (int j = 0; j < 3; ++j) m += p.R(i, j) * kron(pauli::sigma(i), pauli::sigma(j));
    }
    return m / 4.0;
}

DensityMatrix from_pauli(const PauliForm& p) {
    const Matrix4c m = pauli_to_matrix(p);
    Eigen::SelfAdjointEigenSolver<Matrix4c> es(m, Eigen::EigenvaluesOnly);
    const double lo = es.eigenvalues().minCoeff();
    if (lo < -kReconstructPsdTol) {
        std::ostringstream os;
        os << "reconstructed matrix has eigenvalue " << lo;
        throw Error(ErrorKind::NotPositive, os.str());
    }
    return DensityMatrix::from_matrix(m, kReconstructPsdTol);
}

Matrix2c partial_trace(const Matrix4c& m, Side keep) {
    Matrix2c out = Matrix2c::Zero();
    // index = 2 * alice + bob
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                out(i, j) += keep == Side::Alice ? m(2 * i + k, 2 * j + k) : m(2 * k + i, 2 * k + j);
    return out;
}

Matrix2c reduced_state(const DensityMatrix& rho, Side side) { return partial_trace(rho.matrix(), side); }

namespace {

Eigen::MatrixXcd gaussian_matrix(int rows, int cols, std::mt19937_64& gen) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::MatrixXcd g(rows, cols);
    for (int c = 0; c < cols; ++c)
        for (int r = 0; r < rows; ++r) {
            const double re = normal(gen);
            const double im = normal(gen);
            g(r, c) = cplx(re, im);
        }
    return g;
}

}  // namespace

DensityMatrix random_state(int rank, std::uint64_t seed) {
    if (rank < 1 || rank > 4) throw Error(ErrorKind::BadRank, "rank must be in 1..4, got " + std::to_string(rank));
    std::mt19937_64 gen(seed);
    // Columns of g are the ancilla components of a Gaussian vector in C^4 x C^rank.
    const Eigen::MatrixXcd g = gaussian_matrix(4, rank, gen);
    Matrix4c m = g * g.adjoint();
    m /= m.trace().real();
    return DensityMatrix::from_matrix(0.5 * (m + m.adjoint()));
}

PureState random_pure_state(std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    const Eigen::MatrixXcd g = gaussian_matrix(4, 1, gen);
    return PureState::normalized(g.col(0));
}

DensityMatrix mix(const DensityMatrix& a, const DensityMatrix& b, double p) {
    if (p < 0.0 || p > 1.0) throw Error(ErrorKind::InvalidState, "mixing weight outside [0, 1]");
    return DensityMatrix::from_matrix(p * a.matrix() + (1.0 - p) * b.matrix());
}

DensityMatrix bell_diagonal(const Vector3& r) {
    PauliForm p;
    p.R = r.asDiagonal();
    return from_pauli(p);
}

}  // namespace entconc
