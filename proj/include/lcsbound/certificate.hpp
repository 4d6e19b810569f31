// certificate.hpp -- feasible-triplet certificates: files, verification, bounds

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include "lcsbound/operator.hpp"

namespace lcsbound {

/// Published bounds on the two-word binary constant, used as literals.
struct KnownConstants {
    static constexpr double lueker_upper_2_2 = 0.826280;
    static constexpr double lueker_lower_2_2 = 0.788071;
};

/// A triplet (u, r, epsilon) claimed feasible for F of the given shape.
/// If it is, the constant for (sigma, d) is at least d * (r - epsilon).
struct Certificate {
    Shape shape;
    double r = 0.0;
    double epsilon = 0.0;
    ValueVector u;
    std::string provenance;

    double bound() const { return static_cast<double>(shape.d) * (r - epsilon); }

    /// Throws std::invalid_argument on a header/vector mismatch, negative
    /// epsilon or non-finite entries.
    void validate() const;

    bool operator==(const Certificate&) const = default;
};

struct VerificationReport {
    bool passed = false;
    bool certified = false;         ///< checked with slack 0
    double max_violation = 0.0;     ///< max_A (gap[A] - epsilon)
    std::uint64_t worst_index = 0;  ///< coordinate attaining max_violation
    double bound = 0.0;
};

/// Recomputes gap = u + d r - F(u + (d-1)r, ..., u) with a freshly built
/// operator and passes iff max_A (gap[A] - epsilon) <= slack.  A nonzero
/// slack yields a report that is not certified.
VerificationReport verify(const Certificate& cert, double slack = 0.0);

/// 1/sigma: a single repeated character already achieves this rate.
double simple_bound(int sigma);

struct SteeleReport {
    int d = 0;
    double bound = 0.0;
    double threshold = 0.0;  ///< U^(d-1), U the published upper bound
    bool strictly_greater = false;
    bool via_simple_bound = false;  ///< threshold < 1/2 <= constant
};

/// Compares a verified binary-alphabet certificate against U^(d-1).
/// Throws std::invalid_argument for sigma != 2 and std::runtime_error if
/// the certificate fails verification.
SteeleReport steele_check(const Certificate& cert);

/// U^(d-1) for the published U.
double steele_threshold(int d);

class CertificateFormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Text format "cs-cert 1": magic line (optionally followed by a space and
/// a one-line provenance note), a header line with sigma, d, l, r and
/// epsilon, a line with the entry count and the CRC-32 of the payload
/// bytes, then one entry per line in index order.  Reals use 17
/// significant digits.
void write_certificate(const Certificate& cert, std::ostream& out);
void write_certificate(const Certificate& cert, const std::filesystem::path& path);

Certificate read_certificate(std::istream& in);
Certificate read_certificate(const std::filesystem::path& path);

/// Floors x at `decimals` places so a printed bound never exceeds the
/// computed one.
std::string format_truncated(double x, int decimals = 6);

/// %.17g, which round-trips every double.
std::string format_exact(double x);

}  // namespace lcsbound
