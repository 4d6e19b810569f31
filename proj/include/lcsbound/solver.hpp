// solver.hpp -- iterate the operator from zero and extract feasible triplets

#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

#include "lcsbound/operator.hpp"

namespace lcsbound {

/// Raised before allocation when a computation would exceed its memory cap.
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr std::uint64_t kDefaultMemoryCap = std::uint64_t{4} << 30;

struct SolverConfig {
    Shape shape;
    int max_iterations = 0;
    int stagnation_window = 10;
    double stagnation_tol = 1e-7;
    std::uint64_t memory_cap_bytes = kDefaultMemoryCap;

    /// Default iteration budget for `shape` (see default_iterations()).
    static SolverConfig defaults(const Shape& shape);

    void validate() const;
};

/// 4 * 2^(l*d), clamped to [500, 5000].
int default_iterations(const Shape& shape);

/// Bytes held by the solver: d+1 iterates, the incumbent and one scratch.
std::uint64_t solver_memory_bytes(const Shape& shape);

struct HistoryEntry {
    int iteration = 0;
    double R = 0.0;
    double E = 0.0;
};

struct TripletResult {
    ValueVector u;
    double r = 0.0;
    double epsilon = 0.0;
    double bound = 0.0;  ///< d * (r - epsilon)
    int iterations_run = 0;
    std::vector<HistoryEntry> history;
};

struct Progress {
    int iteration;
    double R;
    double E;
    double bound;
    double seconds;
};

using ProgressFn = std::function<void(const Progress&)>;

/// Runs v_0 = ... = v_{d-1} = 0, v_i = F(v_{i-1}, ..., v_{i-d}) for
/// i = d..max_iterations.  At every step R = max(v_i - v_{i-1}) and
/// E = max(0, max gap) with the gap of feasibility_gap(v_i, R); the
/// incumbent (u, r, eps) is replaced whenever R - E >= r - eps.  Stops
/// early once the incumbent bound is positive and R - E has varied by less
/// than stagnation_tol over the last stagnation_window iterations.
TripletResult feasible_triplet(const SolverConfig& config,
                               const ProgressFn& progress = {});

/// True iff ||v_{n+1} - v_n - r||_inf <= eps / (2d) for every consecutive
/// pair of the window, which must hold exactly d+1 iterates.
bool check_convergence(std::span<const ValueVector> window, double r, double epsilon);

/// The exact iterates v_0..v_k for small instances (sigma^(l*d) <= 1e5,
/// k <= 100).
std::vector<ValueVector> iterate_trace(const Shape& shape, int k);

}  // namespace lcsbound
