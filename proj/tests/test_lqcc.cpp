#include <doctest.h>

#include <cmath>
#include <random>

#include "entconc/errors.hpp"
#include "entconc/lqcc.hpp"
#include "entconc/wootters.hpp"
#include "reference.hpp"

using namespace entconc;

namespace {

template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
    return m.cwiseAbs().maxCoeff();
}

ErrorKind kind_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected an entconc::Error");
    return ErrorKind::Internal;
}

LocalFilter random_filter(std::mt19937_64& gen, double a_max = 1.0) {
    std::uniform_real_distribution<double> u(0.0, a_max);
    return LocalFilter::normalized(u(gen), reference::random_direction(gen));
}

Matrix2c diag2(double x, double y) {
    Matrix2c m = Matrix2c::Zero();
    m(0, 0) = x;
    m(1, 1) = y;
    return m;
}

}  // namespace

TEST_CASE("filter_matrix examples") {
    CHECK(max_abs(filter_matrix(LocalFilter(1.0, 0.0, Vector3::UnitZ())) - Matrix2c::Identity()) < 1e-15);
    CHECK(max_abs(filter_matrix(LocalFilter(0.75, 1.0 / 3.0, Vector3::UnitZ())) - diag2(1.0, 0.5)) < 1e-15);

    const Matrix2c proj = filter_matrix(LocalFilter(0.5, 1.0, Vector3::UnitZ()));
    CHECK(max_abs(proj - diag2(1.0, 0.0)) < 1e-15);
    CHECK(singular_values(proj)(1) == 0.0);
}

TEST_CASE("local filter validation") {
    CHECK(kind_of([] { LocalFilter(1.0, 0.5, Vector3::UnitZ()); }) == ErrorKind::InvalidState);
    CHECK(kind_of([] { LocalFilter(0.5, 1.5, Vector3::UnitZ()); }) == ErrorKind::InvalidState);
    CHECK(kind_of([] { LocalFilter(0.5, 0.5, Vector3(1, 1, 0)); }) == ErrorKind::InvalidState);
    CHECK(kind_of([] { LocalFilter(0.0, 0.5, Vector3::UnitZ()); }) == ErrorKind::InvalidState);

    const LocalFilter f = LocalFilter::normalized(0.6, Vector3(0, 3, 4));
    CHECK(f.mu() == doctest::Approx(1.0 / 1.6));
    CHECK((f.m() - Vector3(0, 0.6, 0.8)).norm() < 1e-15);
    CHECK(singular_values(filter_matrix(f))(0) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("svd_normal_form examples") {
    const FilterSvdForm id = svd_normal_form(Matrix2c::Identity());
    CHECK(id.scale == doctest::Approx(1.0));
    CHECK(id.alpha_side == doctest::Approx(1.0));
    CHECK(max_abs(id.reconstruct() - Matrix2c::Identity()) < 1e-12);

    const FilterSvdForm d = svd_normal_form(diag2(1.0, 0.5));
    CHECK(d.scale == doctest::Approx(1.0));
    CHECK(d.alpha_side == doctest::Approx(0.5));

    const Matrix2c h = 0.5 * (Matrix2c::Identity() + pauli::sigma(0));
    const FilterSvdForm p = svd_normal_form(h);
    CHECK(p.scale == doctest::Approx(1.0));
    CHECK(std::abs(p.alpha_side) < 1e-15);
    CHECK(max_abs(p.reconstruct() - h) < 1e-12);
    // Hadamard-like: the leading singular vector is (1, 1)/sqrt(2) up to phase.
    CHECK(std::abs(std::abs(p.u_post(0, 0)) - 1.0 / std::sqrt(2.0)) < 1e-12);

    CHECK(kind_of([] { svd_normal_form(Matrix2c::Zero()); }) == ErrorKind::ZeroOperator);
}

TEST_CASE("property: svd_normal_form reconstructs random operators") {
    std::mt19937_64 gen(5);
    std::normal_distribution<double> n(0.0, 1.0);
    for (int i = 0; i < 500; ++i) {
        Matrix2c m;
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c) m(r, c) = cplx(n(gen), n(gen));
        const FilterSvdForm f = svd_normal_form(m);
        CHECK(max_abs(f.reconstruct() - m) < 1e-12);
        CHECK(max_abs(f.u_pre * f.u_pre.adjoint() - Matrix2c::Identity()) < 1e-12);
        CHECK(max_abs(f.u_post * f.u_post.adjoint() - Matrix2c::Identity()) < 1e-12);
        CHECK(f.alpha_side >= 0.0);
        CHECK(f.alpha_side <= 1.0);
    }
}

TEST_CASE("apply examples") {
    const DensityMatrix rho = random_state(4, 21);
    const ApplyResult same = apply(LqccOperator::identity(), rho);
    CHECK(same.probability == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(max_abs(same.state.matrix() - rho.matrix()) < 1e-14);

    const DensityMatrix phi = DensityMatrix::from_matrix(reference::projector(reference::phi_plus()));
    const ApplyResult proj = apply(LqccOperator(diag2(1.0, 0.0), Matrix2c::Identity()), phi);
    Matrix4c zz = Matrix4c::Zero();
    zz(0, 0) = 1.0;
    CHECK(std::abs(proj.probability - 0.5) < 1e-15);
    CHECK(max_abs(proj.state.matrix() - zz) < 1e-15);

    const LocalFilter fa(0.75, 1.0 / 3.0, Vector3::UnitZ());
    const ApplyResult mm = apply(LqccOperator::from_filters(fa, LocalFilter::identity()), DensityMatrix::maximally_mixed());
    CHECK(std::abs(mm.probability - 0.625) < 1e-15);
}

TEST_CASE("apply reports annihilation") {
    Matrix4c zz = Matrix4c::Zero();
    zz(0, 0) = 1.0;
    const LqccOperator kill(diag2(0.0, 1.0), Matrix2c::Identity());
    CHECK(kind_of([&] { apply(kill, DensityMatrix::from_matrix(zz)); }) == ErrorKind::Annihilated);
}

TEST_CASE("operator validation and normalization") {
    CHECK(kind_of([] { LqccOperator(2.0 * Matrix2c::Identity(), Matrix2c::Identity()); }) == ErrorKind::InvalidState);
    CHECK(kind_of([] { LqccOperator(Matrix2c::Zero(), Matrix2c::Identity()); }) == ErrorKind::InvalidState);

    // Rescaling the operator changes the probability but not the state.
    const DensityMatrix rho = random_state(4, 2);
    Matrix2c big;
    big << 3.0, cplx(0.0, 1.0), 0.5, 2.0;
    const LqccOperator n = LqccOperator::normalized(big, 4.0 * Matrix2c::Identity());
    CHECK(singular_values(n.a_op())(0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(singular_values(n.b_op())(0) == doctest::Approx(1.0).epsilon(1e-14));
    const LqccOperator half(0.5 * n.a_op(), n.b_op());
    const ApplyResult full = apply(n, rho);
    const ApplyResult scaled = apply(half, rho);
    CHECK(max_abs(full.state.matrix() - scaled.state.matrix()) < 1e-13);
    CHECK(scaled.probability == doctest::Approx(0.25 * full.probability).epsilon(1e-13));
}

TEST_CASE("success_probability examples") {
    const PauliForm mixed{};
    CHECK(success_probability(mixed, LocalFilter::identity(), LocalFilter::identity()) == doctest::Approx(1.0));

    const LocalFilter fa(0.6, 0.4, Vector3::UnitX());
    const LocalFilter fb(0.5, 0.7, Vector3::UnitY());
    const double expect = 0.36 * 0.25 * (1.0 + 0.16) * (1.0 + 0.49);
    CHECK(std::abs(success_probability(mixed, fa, fb) - expect) < 1e-15);
}

TEST_CASE("property: closed-form probability equals the filtered trace") {
    // Fixes the pairing of Alice's filter direction with Alice's Bloch vector.
    std::mt19937_64 gen(11);
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        const DensityMatrix rho = random_state(static_cast<int>(seed % 4) + 1, seed);
        const LocalFilter fa = random_filter(gen);
        const LocalFilter fb = random_filter(gen);
        const double closed = success_probability(to_pauli(rho), fa, fb);
        const double direct = reference::filtered_trace(rho.matrix(), filter_matrix(fa), filter_matrix(fb));
        CHECK(std::abs(closed - direct) < 1e-10);
        if (direct > 1e-14) {
            CHECK(std::abs(closed - apply(LqccOperator::from_filters(fa, fb), rho).probability) < 1e-10);
        }
    }
}

TEST_CASE("lambda_scaling_factor examples") {
    const PauliForm p = to_pauli(random_state(4, 8));
    CHECK(lambda_scaling_factor(p, LocalFilter::identity(), LocalFilter::identity()) == doctest::Approx(1.0));
    CHECK(lambda_scaling_factor(p, LocalFilter(0.5, 1.0, Vector3::UnitZ()), LocalFilter::identity()) == 0.0);

    // Projectors on orthogonal supports of |00><00| leave nothing behind.
    PauliForm zz;
    zz.alpha = Vector3::UnitZ();
    zz.beta = Vector3::UnitZ();
    zz.R(2, 2) = 1.0;
    const LocalFilter kill(0.5, 1.0, -Vector3::UnitZ());
    CHECK(kind_of([&] { lambda_scaling_factor(zz, kill, LocalFilter::identity()); }) == ErrorKind::ZeroProbability);
}

TEST_CASE("property: lambdas scale by the closed-form factor") {
    std::mt19937_64 gen(12);
    for (std::uint64_t seed = 0; seed < 500; ++seed) {
        const DensityMatrix rho = random_state(4, seed);
        const LocalFilter fa = random_filter(gen, 0.95);
        const LocalFilter fb = random_filter(gen, 0.95);
        const double factor = lambda_scaling_factor(to_pauli(rho), fa, fb);
        const LambdaSpectrum before = lambda_spectrum(rho);
        const LambdaSpectrum after = lambda_spectrum(apply(LqccOperator::from_filters(fa, fb), rho).state);
        for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(after[i] - factor * before[i]) < 1e-8);
    }
}

TEST_CASE("property: concurrence scaling law and ratio invariance") {
    std::mt19937_64 gen(13);
    int positive = 0;
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        const DensityMatrix rho = random_state(static_cast<int>(seed % 4) + 1, seed);
        const LocalFilter fa = random_filter(gen);
        const LocalFilter fb = random_filter(gen);
        const double t = success_probability(to_pauli(rho), fa, fb);
        if (t <= 1e-6) continue;
        const DensityMatrix out = apply(LqccOperator::from_filters(fa, fb), rho).state;
        const double c_in = concurrence(rho);
        positive += c_in > 0.0 ? 1 : 0;
        CHECK(std::abs(concurrence(out) - lambda_scaling_factor(to_pauli(rho), fa, fb) * c_in) < 1e-8);
    }
    CHECK(positive > 100);

    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        const DensityMatrix rho = random_state(4, seed);
        const LocalFilter fa = random_filter(gen, 0.9);
        const LocalFilter fb = random_filter(gen, 0.9);
        const LocalInvariants before = invariants(rho);
        const LocalInvariants after = invariants(apply(LqccOperator::from_filters(fa, fb), rho).state);
        CHECK(std::abs(before.c2 - after.c2) < 1e-8);
        CHECK(std::abs(before.c3 - after.c3) < 1e-8);
        CHECK(std::abs(before.c4 - after.c4) < 1e-8);
    }
}

TEST_CASE("matrix-form scaling factor agrees with the Hermitian closed form") {
    std::mt19937_64 gen(14);
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const DensityMatrix rho = random_state(4, seed);
        const LocalFilter fa = random_filter(gen, 0.9);
        const LocalFilter fb = random_filter(gen, 0.9);
        const double closed = lambda_scaling_factor(to_pauli(rho), fa, fb);
        const double general = lambda_scaling_factor(LqccOperator::from_filters(fa, fb), rho);
        CHECK(std::abs(closed - general) < 1e-10 * std::max(1.0, closed));
    }
}

TEST_CASE("property: composition of filters") {
    std::mt19937_64 gen(15);
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        const DensityMatrix rho = random_state(4, seed);
        const LqccOperator op1(reference::random_unitary(gen) * filter_matrix(random_filter(gen, 0.8)),
                               filter_matrix(random_filter(gen, 0.8)));
        const LqccOperator op2(filter_matrix(random_filter(gen, 0.8)),
                               reference::random_unitary(gen) * filter_matrix(random_filter(gen, 0.8)));
        const ApplyResult first = apply(op1, rho);
        const ApplyResult second = apply(op2, first.state);
        const ApplyResult both = apply(compose(op2, op1), rho);
        CHECK(max_abs(second.state.matrix() - both.state.matrix()) < 1e-10);
        CHECK(std::abs(first.probability * second.probability - both.probability) < 1e-10);
    }
}

TEST_CASE("property: local unitaries preserve lambdas, concurrence and EOF") {
    std::mt19937_64 gen(16);
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        const DensityMatrix rho = random_state(static_cast<int>(seed % 4) + 1, seed);
        const LqccOperator u(reference::random_unitary(gen), reference::random_unitary(gen));
        const ApplyResult r = apply(u, rho);
        CHECK(std::abs(r.probability - 1.0) < 1e-12);
        const LambdaSpectrum a = lambda_spectrum(rho);
        const LambdaSpectrum b = lambda_spectrum(r.state);
        for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(a[i] - b[i]) < 1e-10);
        CHECK(std::abs(concurrence(rho) - concurrence(r.state)) < 1e-10);
        CHECK(std::abs(eof(rho) - eof(r.state)) < 1e-10);
    }
}

TEST_CASE("is_invertible examples") {
    CHECK(is_invertible(LqccOperator::identity()));
    CHECK_FALSE(is_invertible(LqccOperator(diag2(1.0, 0.0), Matrix2c::Identity())));
    CHECK_FALSE(is_invertible(LqccOperator(Matrix2c::Identity(), diag2(1.0, 1e-12))));
    CHECK(is_invertible(LqccOperator(Matrix2c::Identity(), diag2(1.0, 1e-9))));
}
