#include "lcsbound/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

namespace lcsbound {

namespace {

double max_of(std::span<const double> x) {
    double m = -std::numeric_limits<double>::infinity();
    const auto n = static_cast<std::int64_t>(x.size());
#pragma omp parallel for reduction(max : m) schedule(static)
    for (std::int64_t k = 0; k < n; ++k) m = std::max(m, x[k]);
    return m;
}

double max_increment(std::span<const double> next, std::span<const double> prev) {
    double m = -std::numeric_limits<double>::infinity();
    const auto n = static_cast<std::int64_t>(next.size());
#pragma omp parallel for reduction(max : m) schedule(static)
    for (std::int64_t k = 0; k < n; ++k) m = std::max(m, next[k] - prev[k]);
    return m;
}

// R - E has stayed within `tol` over the last `window` steps.  Early
// transients can be flat too, so callers also require a positive bound.
bool stagnated(const std::vector<HistoryEntry>& history, int window, double tol) {
    const auto w = static_cast<std::size_t>(window);
    if (history.size() <= w) return false;
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (std::size_t k = history.size() - 1 - w; k < history.size(); ++k) {
        const double gap = history[k].R - history[k].E;
        lo = std::min(lo, gap);
        hi = std::max(hi, gap);
    }
    return hi - lo < tol;
}

}  // namespace

int default_iterations(const Shape& shape) {
    const int exponent = shape.l * shape.d;
    if (exponent >= 11) return 5000;
    return std::clamp(4 << exponent, 500, 5000);
}

std::uint64_t solver_memory_bytes(const Shape& shape) {
    return sizeof(double) * (static_cast<std::uint64_t>(shape.d) + 3) * shape.states();
}

SolverConfig SolverConfig::defaults(const Shape& shape) {
    SolverConfig c;
    c.shape = shape;
    c.max_iterations = default_iterations(shape);
    return c;
}

void SolverConfig::validate() const {
    Shape::checked(shape.sigma, shape.d, shape.l);
    if (max_iterations < shape.d) throw std::invalid_argument("max_iterations must be >= d");
    if (!(stagnation_tol > 0.0)) throw std::invalid_argument("stagnation_tol must be > 0");
    if (stagnation_window < 1) throw std::invalid_argument("stagnation_window must be >= 1");
}

TripletResult feasible_triplet(const SolverConfig& config, const ProgressFn& progress) {
    config.validate();
    const Shape& shape = config.shape;
    const std::uint64_t need = solver_memory_bytes(shape);
    if (need > config.memory_cap_bytes) {
        throw ResourceError("state space needs " + std::to_string(need) +
                            " bytes, above the memory cap of " +
                            std::to_string(config.memory_cap_bytes));
    }

    const auto start = std::chrono::steady_clock::now();
    const OperatorContext op(shape);
    const int d = shape.d;
    const std::size_t ring = static_cast<std::size_t>(d) + 1;

    // v_i lives in iterates[i % (d+1)]; the d most recent plus the new one.
    std::vector<std::vector<double>> iterates(ring, std::vector<double>(shape.states(), 0.0));
    std::vector<double> gap(shape.states());
    std::vector<std::span<const double>> args(static_cast<std::size_t>(d));

    TripletResult result;
    result.u = ValueVector::zeros(shape);

    int i = d;
    for (; i <= config.max_iterations; ++i) {
        for (int j = 0; j < d; ++j) args[j] = iterates[(i - 1 - j) % ring];
        auto& next = iterates[i % ring];
        op.apply(args, {}, next);

        const double R = max_increment(next, iterates[(i - 1) % ring]);
        feasibility_gap(op, next, R, gap);
        const double E = std::max(0.0, max_of(gap));
        result.history.push_back({i, R, E});

        if (R - E >= result.r - result.epsilon) {
            result.u.values = next;
            result.r = R;
            result.epsilon = E;
        }

        if (progress) {
            const double secs = std::chrono::duration<double>(
                                    std::chrono::steady_clock::now() - start).count();
            progress({i, R, E, static_cast<double>(d) * (R - E), secs});
        }

        if (result.r - result.epsilon > 0.0 &&
            stagnated(result.history, config.stagnation_window, config.stagnation_tol)) {
            ++i;
            break;
        }
    }
    result.iterations_run = i - 1;
    result.bound = static_cast<double>(d) * (result.r - result.epsilon);
    return result;
}

bool check_convergence(std::span<const ValueVector> window, double r, double epsilon) {
    if (window.empty()) throw std::invalid_argument("empty convergence window");
    const int d = window.front().shape.d;
    if (window.size() != static_cast<std::size_t>(d) + 1) {
        throw std::invalid_argument("convergence window must hold d+1 iterates");
    }
    const double limit = epsilon / (2.0 * d);
    for (std::size_t n = 0; n + 1 < window.size(); ++n) {
        const auto& a = window[n].values;
        const auto& b = window[n + 1].values;
        if (a.size() != b.size()) throw std::invalid_argument("iterate dimension mismatch");
        for (std::size_t k = 0; k < a.size(); ++k) {
            if (std::abs(b[k] - a[k] - r) > limit) return false;
        }
    }
    return true;
}

std::vector<ValueVector> iterate_trace(const Shape& shape, int k) {
    const Shape s = Shape::checked(shape.sigma, shape.d, shape.l);
    if (s.states() > 100000) throw ResourceError("trace limited to sigma^(l*d) <= 1e5");
    if (k < 0 || k > 100) throw std::invalid_argument("trace length must be in [0, 100]");
    const OperatorContext op(s);
    std::vector<ValueVector> trace;
    trace.reserve(static_cast<std::size_t>(k) + 1);
    for (int i = 0; i <= k; ++i) {
        if (i < s.d) {
            trace.push_back(ValueVector::zeros(s));
            continue;
        }
        std::vector<ValueVector> args;
        for (int j = 1; j <= s.d; ++j) args.push_back(trace[i - j]);
        trace.push_back(op.apply_F(args));
    }
    return trace;
}

}  // namespace lcsbound
