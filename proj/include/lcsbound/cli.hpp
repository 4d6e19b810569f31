// cli.hpp -- command-line front end (library part, so it can be tested)

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "lcsbound/certificate.hpp"
#include "lcsbound/solver.hpp"

namespace lcsbound::cli {

enum ExitCode : int {
    kSuccess = 0,
    kVerificationFailed = 1,
    kUsageError = 2,
    kResourceGuard = 3,
};

/// Environment variable holding the default worker count.
inline constexpr const char* kThreadsEnv = "LCSBOUND_THREADS";

/// Result of solving one (sigma, d, l) and re-verifying the certificate.
struct BoundRun {
    TripletResult triplet;
    Certificate certificate;
    VerificationReport report;
};

/// Runs the solver, packs the incumbent into a certificate and verifies it
/// with a fresh operator.  Progress lines go to `progress` when non-null.
BoundRun compute_bound(const Shape& shape, int max_iterations, std::uint64_t memory_cap,
                       std::ostream* progress);

/// Entry point shared by the executable and the tests.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace lcsbound::cli
