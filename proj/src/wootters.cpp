#include "entconc/wootters.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include "entconc/errors.hpp"

namespace entconc {

namespace {

constexpr double kSqrtFloor = 8.0 * std::numeric_limits<double>::epsilon();

const Matrix4c& yy() {
    static const Matrix4c m = kron(pauli::sigma(1), pauli::sigma(1));
    return m;
}

Matrix4c psd_sqrt(const Matrix4c& m) {
    Eigen::SelfAdjointEigenSolver<Matrix4c> es(m);
    Eigen::Vector4d w = es.eigenvalues();
    for (int i = 0; i < 4; ++i) {
        if (w(i) < -kClampTol) {
            std::ostringstream os;
            os << "eigenvalue " << w(i) << " below clamp tolerance";
            throw Error(ErrorKind::Internal, os.str());
        }
        // Eigenvalues at the rounding floor are zero; keeping them would inject
        // O(sqrt(eps)) noise into the null space of sqrt(rho).
        w(i) = w(i) > kSqrtFloor ? std::sqrt(w(i)) : 0.0;
    }
    return es.eigenvectors() * w.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

Matrix4c spin_flip(const Matrix4c& m) { return yy() * m.conjugate() * yy(); }

Matrix4c spin_flip(const DensityMatrix& rho) { return spin_flip(rho.matrix()); }

LambdaSpectrum lambda_spectrum(const DensityMatrix& rho) {
    // sqrt(rho) rho~ sqrt(rho) = (sqrt(rho) sqrt(rho~)) (sqrt(rho) sqrt(rho~))^dag, so the
    // lambdas are the singular values of sqrt(rho) sqrt(rho~). Working with singular
    // values avoids squaring small lambdas below machine precision.
    const Matrix4c s = psd_sqrt(rho.matrix());
    const Matrix4c st = spin_flip(s);
    Eigen::JacobiSVD<Matrix4c> svd(s * st);
    LambdaSpectrum out;
    for (int i = 0; i < 4; ++i) out.lambdas[static_cast<std::size_t>(i)] = svd.singularValues()(i);
    std::sort(out.lambdas.begin(), out.lambdas.end(), std::greater<>());
    return out;
}

double concurrence(const LambdaSpectrum& l) { return std::max(0.0, l[0] - l[1] - l[2] - l[3]); }

double concurrence(const DensityMatrix& rho) { return concurrence(lambda_spectrum(rho)); }

double binary_entropy(double p) {
    auto term = [](double x) { return x > 0.0 ? -x * std::log2(x) : 0.0; };
    return term(p) + term(1.0 - p);
}

double eof_from_concurrence(double c) {
    c = std::clamp(c, 0.0, 1.0);
    return binary_entropy(0.5 * (1.0 + std::sqrt(1.0 - c * c)));
}

double eof(const DensityMatrix& rho) { return eof_from_concurrence(concurrence(rho)); }

LocalInvariants invariants(const LambdaSpectrum& l) {
    if (l[0] <= kDegenerateLambda) {
        std::ostringstream os;
        os << "lambda_1 = " << l[0] << " too small for invariant ratios";
        throw Error(ErrorKind::DegenerateSpectrum, os.str());
    }
    return {l[1] / l[0], l[2] / l[0], l[3] / l[0]};
}

LocalInvariants invariants(const DensityMatrix& rho) { return invariants(lambda_spectrum(rho)); }

}  // namespace entconc
