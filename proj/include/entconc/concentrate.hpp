#pragma once

// Optimal single-copy concentration: drive an entangled two-qubit state with
// invertible local filters to the Bell-diagonal state of maximal EOF.

#include <optional>
#include <vector>

#include "entconc/errors.hpp"
#include "entconc/lqcc.hpp"
#include "entconc/wootters.hpp"

namespace entconc {

// Concurrence at or below this is treated as separable.
inline constexpr double kEntanglementFloor = 1e-12;

// 1/4 (I + sum r_i sigma_i x sigma_i) with r_1 <= r_2 <= r_3 of uniform sign,
// reached from the input by conjugation with u_a x u_b.
struct BellDiagonalForm {
    Vector3 r = Vector3::Zero();
    Matrix2c u_a = Matrix2c::Identity();
    Matrix2c u_b = Matrix2c::Identity();
};

struct ConcentrationResult {
    Matrix2c filter_a = Matrix2c::Identity();  // largest singular value 1
    Matrix2c filter_b = Matrix2c::Identity();
    DensityMatrix output = DensityMatrix::maximally_mixed();
    double probability = 1.0;
    double eof_in = 0.0;
    double eof_max = 0.0;
    int iterations = 0;
    // max(|alpha|, |beta|) of the output.
    double residual = 0.0;
    // EOF of every intermediate iterate (after each one-sided filter), starting with the input.
    std::vector<double> eof_history;
};

struct SolverOptions {
    double tol = 1e-12;
    int max_iter = 10000;
    // Which side is filtered first in each sweep.
    Side first_side = Side::Alice;
    // Invertible filter applied before the iteration starts; the result does
    // not depend on it up to local unitaries.
    std::optional<LqccOperator> initial;
};

// Thrown by concentrate() when the residual stays above tol. Carries the best iterate.
class NoConvergence : public Error {
public:
    explicit NoConvergence(ConcentrationResult best);
    const ConcentrationResult& best() const noexcept { return best_; }

private:
    ConcentrationResult best_;
};

// Hermitian filter pair with a = b = step along -alpha/|alpha| and -beta/|beta|
// (identity on a side whose Bloch vector vanishes). Filters use mu = 1/(1 + step).
// Throws Error(NotEntangled) for separable input.
LqccOperator improvement_step(const DensityMatrix& rho, double step);

// Alternating fixed-point iteration: filter Alice with (2 rho_A)^(-1/2), then Bob
// with (2 rho_B)^(-1/2), until both Bloch vectors are below tol.
ConcentrationResult concentrate(const DensityMatrix& rho, const SolverOptions& opts = {});
ConcentrationResult concentrate(const DensityMatrix& rho, double tol, int max_iter);

// Requires |alpha|, |beta| <= tol, else Error(NotBellDiagonal).
BellDiagonalForm canonicalize_bell(const DensityMatrix& rho, double tol = 1e-10);

// The four Bell-diagonal eigenvalues, in the order
// (1 - r1 - r2 - r3, 1 - r1 + r2 + r3, 1 + r1 - r2 + r3, 1 + r1 + r2 - r3) / 4.
Eigen::Vector4d bell_eigenvalues(const Vector3& r);

// Inverts the ratio equations for the canonical Bell-diagonal state.
// Throws Error(Inconsistent) when the system is singular or the solution is
// not an entangled state in canonical order.
Vector3 r_from_invariants(const LocalInvariants& c);

// EOF of the unique Bell-diagonal state reachable from rho; 0 for separable rho.
double max_extractable_entanglement(const DensityMatrix& rho);

// SU(2) element u with u (v.sigma) u^dag = (rot v).sigma.
Matrix2c unitary_from_rotation(const Matrix3& rot);
Matrix3 rotation_from_unitary(const Matrix2c& u);

}  // namespace entconc
