#pragma once

#include <array>

#include "entconc/qstate.hpp"

namespace entconc {

// Positive square roots of the eigenvalues of rho * spin_flip(rho),
// sorted descending.
struct LambdaSpectrum {
    std::array<double, 4> lambdas{};

    double operator[](std::size_t i) const { return lambdas[i]; }
    double sum() const { return lambdas[0] + lambdas[1] + lambdas[2] + lambdas[3]; }
};

// c_i = lambda_i / lambda_1. Unchanged by invertible local filtering.
struct LocalInvariants {
    double c2 = 0.0;
    double c3 = 0.0;
    double c4 = 0.0;
};

// Eigenvalues of rho used to form sqrt(rho) are clamped to zero when they lie
// in [-kClampTol, 0); anything more negative is an internal error.
inline constexpr double kClampTol = 1e-10;
inline constexpr double kDegenerateLambda = 1e-12;

// (sigma_2 x sigma_2) rho* (sigma_2 x sigma_2), conjugation in the product basis.
Matrix4c spin_flip(const DensityMatrix& rho);
Matrix4c spin_flip(const Matrix4c& m);

LambdaSpectrum lambda_spectrum(const DensityMatrix& rho);

double concurrence(const LambdaSpectrum& l);
double concurrence(const DensityMatrix& rho);

// Binary entropy in bits, H(0) = H(1) = 0.
double binary_entropy(double p);
double eof_from_concurrence(double c);
double eof(const DensityMatrix& rho);

// Throws Error(DegenerateSpectrum) if lambda_1 <= 1e-12.
LocalInvariants invariants(const LambdaSpectrum& l);
LocalInvariants invariants(const DensityMatrix& rho);

}  // namespace entconc
