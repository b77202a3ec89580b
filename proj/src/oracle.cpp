#include "entconc/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <random>

#include "entconc/errors.hpp"
#include "entconc/wootters.hpp"

namespace entconc {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

constexpr std::size_t kGridSteps = 10;

// Runs `kernel(i)` for i in [0, n) and stores the results by index; the reduction
// happens afterwards in index order, so the execution mode never changes a report.
// An exception from any trial is rethrown after the loop (lowest index first).
template <typename Outcome, typename Kernel>
std::vector<Outcome> run_trials(std::size_t n, Execution exec, Kernel&& kernel) {
    std::vector<Outcome> out(n);
    std::vector<std::exception_ptr> errors(n);
    auto body = [&](std::size_t i) {
        try {
            out[i] = kernel(i);
        } catch (...) {
            errors[i] = std::current_exception();
        }
    };
    const auto count = static_cast<std::ptrdiff_t>(n);
    if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic, 64)
        for (std::ptrdiff_t i = 0; i < count; ++i) body(static_cast<std::size_t>(i));
    } else {
        for (std::ptrdiff_t i = 0; i < count; ++i) body(static_cast<std::size_t>(i));
    }
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
    return out;
}

struct EofOutcome {
    bool valid = false;
    double eof = 0.0;
};

struct CheckOutcome {
    bool counted = false;
    double measured = 0.0;
    double predicted = 0.0;
};

FilterParams random_params(std::uint64_t seed, std::size_t trial) {
    TrialRng rng(seed, trial);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    FilterParams p;
    p.a = unit(rng);
    p.m = random_unit_vector(rng);
    p.b = unit(rng);
    p.n = random_unit_vector(rng);
    return p;
}

Matrix2c random_invertible_factor(TrialRng& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Matrix2c g;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            const double re = normal(rng);
            const double im = normal(rng);
            g(i, j) = cplx(re, im);
        }
    return g / singular_values(g)(0);
}

// Writes the unnormalized filtered state to `out` and returns its trace.
double filtered_trace(const Matrix4c& k, const DensityMatrix& rho, Matrix4c& out) {
    out = k * rho.matrix() * k.adjoint();
    return out.trace().real();
}

DensityMatrix normalize_filtered(const Matrix4c& out, double t) {
    const Matrix4c m = out / t;
    return DensityMatrix::from_matrix(0.5 * (m + m.adjoint()));
}

}  // namespace

TrialRng::TrialRng(std::uint64_t seed, std::uint64_t trial) : state_(mix64(seed ^ mix64(trial + kGolden))) {}

TrialRng::result_type TrialRng::operator()() {
    state_ += kGolden;
    return mix64(state_);
}

Vector3 random_unit_vector(TrialRng& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Vector3 v;
    do {
        const double x = normal(rng);
        const double y = normal(rng);
        const double z = normal(rng);
        v = Vector3(x, y, z);
    } while (v.norm() < 1e-12);
    return v.normalized();
}

LqccOperator FilterParams::to_operator() const {
    return LqccOperator::from_filters(LocalFilter::normalized(a, m), LocalFilter::normalized(b, n));
}

const std::vector<Vector3>& sphere_net() {
    static const std::vector<Vector3> net = [] {
        std::vector<Vector3> v;
        for (int x = -1; x <= 1; ++x)
            for (int y = -1; y <= 1; ++y)
                for (int z = -1; z <= 1; ++z)
                    if (x != 0 || y != 0 || z != 0) v.push_back(Vector3(x, y, z).normalized());
        return v;
    }();
    return net;
}

std::size_t grid_size() {
    const std::size_t net = sphere_net().size();
    return kGridSteps * kGridSteps * net * net;
}

FilterParams grid_point(std::size_t index) {
    const auto& net = sphere_net();
    const std::size_t n_net = net.size();
    FilterParams p;
    p.n = net[index % n_net];
    index /= n_net;
    p.m = net[index % n_net];
    index /= n_net;
    p.b = 0.1 * static_cast<double>(index % kGridSteps);
    index /= kGridSteps;
    p.a = 0.1 * static_cast<double>(index % kGridSteps);
    return p;
}

SearchReport search_max_eof(const DensityMatrix& rho, std::size_t samples, std::uint64_t seed,
                            std::optional<double> bound, Execution exec) {
    const std::size_t total = samples + grid_size();
    auto params_of = [&](std::size_t i) { return i < samples ? random_params(seed, i) : grid_point(i - samples); };

    const auto outcomes = run_trials<EofOutcome>(total, exec, [&](std::size_t i) {
        const LqccOperator op = params_of(i).to_operator();
        Matrix4c out;
        const double t = filtered_trace(op.product(), rho, out);
        if (!(t > kSearchMinProbability)) return EofOutcome{};
        return EofOutcome{true, eof(normalize_filtered(out, t))};
    });

    SearchReport report;
    bool have_best = false;
    for (std::size_t i = 0; i < total; ++i) {
        const EofOutcome& o = outcomes[i];
        if (!o.valid) continue;
        ++report.samples;
        if (!have_best || o.eof > report.best_eof) {
            have_best = true;
            report.best_eof = o.eof;
            report.best_filters = params_of(i);
        }
        if (bound && o.eof > *bound + kMaximalityTol) {
            const LqccOperator op = params_of(i).to_operator();
            report.violations.push_back({i, op.a_op(), op.b_op(), o.eof, *bound, o.eof - *bound});
        }
    }
    return report;
}

SearchReport check_invariance(const DensityMatrix& rho, std::span<const LqccOperator> filters, Execution exec) {
    const LocalInvariants base = invariants(rho);
    const auto outcomes = run_trials<CheckOutcome>(filters.size(), exec, [&](std::size_t i) {
        const LqccOperator& op = filters[i];
        if (singular_values(op.a_op())(1) < kInvertibleSampleFloor ||
            singular_values(op.b_op())(1) < kInvertibleSampleFloor)
            return CheckOutcome{};
        const LocalInvariants c = invariants(apply(op, rho).state);
        const std::array<double, 3> got{c.c2, c.c3, c.c4};
        const std::array<double, 3> want{base.c2, base.c3, base.c4};
        std::size_t worst = 0;
        for (std::size_t k = 1; k < 3; ++k)
            if (std::abs(got[k] - want[k]) > std::abs(got[worst] - want[worst])) worst = k;
        return CheckOutcome{true, got[worst], want[worst]};
    });

    SearchReport report;
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
        const CheckOutcome& o = outcomes[i];
        if (!o.counted) continue;
        ++report.samples;
        const double d = std::abs(o.measured - o.predicted);
        if (d > kInvarianceTol)
            report.violations.push_back({i, filters[i].a_op(), filters[i].b_op(), o.measured, o.predicted, d});
    }
    return report;
}

SearchReport check_invariance(const DensityMatrix& rho, std::size_t trials, std::uint64_t seed, Execution exec) {
    std::vector<LqccOperator> filters;
    filters.reserve(trials);
    for (std::size_t i = 0; i < trials; ++i) {
        TrialRng rng(seed, i);
        // Redraw until the pair clears the floor so that `trials` pairs are actually counted.
        for (;;) {
            const Matrix2c a = random_invertible_factor(rng);
            const Matrix2c b = random_invertible_factor(rng);
            if (singular_values(a)(1) >= kInvertibleSampleFloor && singular_values(b)(1) >= kInvertibleSampleFloor) {
                filters.emplace_back(a, b);
                break;
            }
        }
    }
    return check_invariance(rho, std::span<const LqccOperator>(filters), exec);
}

SearchReport check_scaling(const DensityMatrix& rho, std::span<const FilterParams> filters, Execution exec) {
    const PauliForm pauli = to_pauli(rho);
    const double c_in = concurrence(rho);
    const auto outcomes = run_trials<CheckOutcome>(filters.size(), exec, [&](std::size_t i) {
        const FilterParams& p = filters[i];
        const LocalFilter fa = LocalFilter::normalized(p.a, p.m);
        const LocalFilter fb = LocalFilter::normalized(p.b, p.n);
        Matrix4c out;
        const double t = filtered_trace(LqccOperator::from_filters(fa, fb).product(), rho, out);
        if (!(t > kScalingMinProbability)) return CheckOutcome{};
        const double measured = concurrence(normalize_filtered(out, t));
        const double predicted = lambda_scaling_factor(pauli, fa, fb) * c_in;
        return CheckOutcome{true, measured, predicted};
    });

    SearchReport report;
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
        const CheckOutcome& o = outcomes[i];
        if (!o.counted) continue;
        ++report.samples;
        const double d = std::abs(o.measured - o.predicted);
        if (d > kScalingTol) {
            const LqccOperator op = filters[i].to_operator();
            report.violations.push_back({i, op.a_op(), op.b_op(), o.measured, o.predicted, d});
        }
    }
    return report;
}

SearchReport check_scaling(const DensityMatrix& rho, std::size_t trials, std::uint64_t seed, Execution exec) {
    std::vector<FilterParams> filters;
    filters.reserve(trials);
    for (std::size_t i = 0; i < trials; ++i) filters.push_back(random_params(seed, i));
    return check_scaling(rho, std::span<const FilterParams>(filters), exec);
}

}  // namespace entconc
