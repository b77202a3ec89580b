#pragma once

// Brute-force checks that do not go through the concentration solver.
//
// Every routine evaluates independent trials. Trial k draws its randomness
// from a generator seeded by (seed, k) only, so the serial kernel and the
// OpenMP kernel produce identical reports.

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "entconc/lqcc.hpp"

namespace entconc {

enum class Execution { Serial, Parallel };

// Hermitian filter pair in the largest physical normalization mu = 1/(1 + a).
struct FilterParams {
    double a = 0.0;
    Vector3 m = Vector3::UnitZ();
    double b = 0.0;
    Vector3 n = Vector3::UnitZ();

    LqccOperator to_operator() const;
};

struct Violation {
    std::size_t trial = 0;
    Matrix2c filter_a = Matrix2c::Identity();
    Matrix2c filter_b = Matrix2c::Identity();
    double measured = 0.0;
    double predicted = 0.0;
    double discrepancy = 0.0;
};

struct SearchReport {
    double best_eof = 0.0;
    FilterParams best_filters;
    std::size_t samples = 0;  // trials actually evaluated
    std::vector<Violation> violations;

    bool passed() const noexcept { return violations.empty(); }
};

inline constexpr double kSearchMinProbability = 1e-9;
inline constexpr double kMaximalityTol = 1e-6;
inline constexpr double kInvarianceTol = 1e-8;
inline constexpr double kInvertibleSampleFloor = 0.05;
inline constexpr double kScalingMinProbability = 1e-6;
inline constexpr double kScalingTol = 1e-8;

// Counter-based generator: splitmix64 over (seed, trial).
class TrialRng {
public:
    using result_type = std::uint64_t;
    TrialRng(std::uint64_t seed, std::uint64_t trial);
    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~result_type{0}; }
    result_type operator()();

private:
    std::uint64_t state_;
};

Vector3 random_unit_vector(TrialRng& rng);

// The 26 directions of {-1, 0, 1}^3 \ {0}, normalized.
const std::vector<Vector3>& sphere_net();
// a, b over {0, 0.1, ..., 0.9} times sphere_net() on both sides.
std::size_t grid_size();
FilterParams grid_point(std::size_t index);

// `samples` random pairs (a, b uniform in [0, 1), m, n uniform on the sphere)
// followed by the full grid. With `bound`, every outcome whose EOF exceeds
// bound + 1e-6 is recorded as a violation.
SearchReport search_max_eof(const DensityMatrix& rho, std::size_t samples, std::uint64_t seed,
                            std::optional<double> bound = std::nullopt, Execution exec = Execution::Parallel);

// Random invertible pairs (smallest singular value >= 0.05, largest 1); any c_i
// drift beyond 1e-8 is a violation. Throws Error(DegenerateSpectrum) if lambda_1 vanishes.
SearchReport check_invariance(const DensityMatrix& rho, std::size_t trials, std::uint64_t seed,
                              Execution exec = Execution::Parallel);
SearchReport check_invariance(const DensityMatrix& rho, std::span<const LqccOperator> filters,
                              Execution exec = Execution::Parallel);

// Measured concurrence after random Hermitian pairs against the closed-form
// scaling law. Trials with success probability <= 1e-6 are skipped.
SearchReport check_scaling(const DensityMatrix& rho, std::size_t trials, std::uint64_t seed,
                           Execution exec = Execution::Parallel);
SearchReport check_scaling(const DensityMatrix& rho, std::span<const FilterParams> filters,
                           Execution exec = Execution::Parallel);

}  // namespace entconc
