#pragma once

// Two-qubit states in the product basis |00>, |01>, |10>, |11>.
// Alice's qubit is the left tensor factor throughout the library.

#include <array>
#include <complex>
#include <cstdint>

#include <Eigen/Dense>

namespace entconc {

using cplx = std::complex<double>;
using Matrix2c = Eigen::Matrix2cd;
using Matrix4c = Eigen::Matrix4cd;
using Vector4c = Eigen::Vector4cd;
using Vector3 = Eigen::Vector3d;
using Matrix3 = Eigen::Matrix3d;

enum class Side { Alice, Bob };

namespace pauli {
// Standard convention, sigma_2 = [[0, -i], [i, 0]].
const Matrix2c& identity();
const Matrix2c& sigma(int i);  // i in {0, 1, 2} for sigma_1..sigma_3
}  // namespace pauli

Matrix4c kron(const Matrix2c& a, const Matrix2c& b);

// Validation tolerances for the matrix representation.
inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kTraceTol = 1e-12;
inline constexpr double kPsdTol = 1e-12;
inline constexpr double kReconstructPsdTol = 1e-10;

// Hermitian, unit-trace, positive semidefinite 4x4 matrix.
class DensityMatrix {
public:
    // Validates against the tolerances above, throws Error(InvalidState).
    static DensityMatrix from_matrix(const Matrix4c& m);
    // Same checks with a custom floor on the smallest eigenvalue.
    static DensityMatrix from_matrix(const Matrix4c& m, double psd_tol);

    static DensityMatrix maximally_mixed();

    const Matrix4c& matrix() const noexcept { return m_; }
    cplx operator()(int r, int c) const { return m_(r, c); }

    Eigen::Vector4d eigenvalues() const;
    double purity() const;

private:
    explicit DensityMatrix(const Matrix4c& m) : m_(m) {}
    Matrix4c m_;
};

class PureState {
public:
    // Throws InvalidState unless the norm is 1 to 1e-12.
    explicit PureState(const Vector4c& amplitudes);
    // Normalizes the input; throws InvalidState for a zero vector.
    static PureState normalized(const Vector4c& amplitudes);

    const Vector4c& amplitudes() const noexcept { return amps_; }
    DensityMatrix density() const;

private:
    Vector4c amps_;
};

// rho = 1/4 (I + alpha.sigma x I + I x beta.sigma + R_ij sigma_i x sigma_j)
struct PauliForm {
    Vector3 alpha = Vector3::Zero();
    Vector3 beta = Vector3::Zero();
    Matrix3 R = Matrix3::Zero();
};

PauliForm to_pauli(const DensityMatrix& rho);
// Throws Error(NotPositive) if the reconstruction has an eigenvalue below -1e-10.
DensityMatrix from_pauli(const PauliForm& p);
// Reconstruction without the positivity check.
Matrix4c pauli_to_matrix(const PauliForm& p);

Matrix2c reduced_state(const DensityMatrix& rho, Side side);
Matrix2c partial_trace(const Matrix4c& m, Side keep);

// Uniform pure state on C^4 x C^rank with the ancilla traced out.
// Deterministic for a given seed; throws Error(BadRank) outside 1..4.
DensityMatrix random_state(int rank, std::uint64_t seed);
PureState random_pure_state(std::uint64_t seed);

// Convex mixture p*a + (1-p)*b.
DensityMatrix mix(const DensityMatrix& a, const DensityMatrix& b, double p);

// Bell-diagonal form 1/4 (I + sum_i r_i sigma_i x sigma_i).
DensityMatrix bell_diagonal(const Vector3& r);

}  // namespace entconc
