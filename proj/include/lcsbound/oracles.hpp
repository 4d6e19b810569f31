// oracles.hpp -- exact and sampled reference quantities for LCS of d words

#pragma once

#include <cstdint>
#include <vector>

#include "lcsbound/strings.hpp"

namespace lcsbound {

inline constexpr std::uint64_t kDefaultDpCap = std::uint64_t{1} << 30;

/// d >= 2 words of arbitrary (possibly different) lengths.
struct LcsInstance {
    int sigma = 2;
    std::vector<Word> words;

    void validate() const;
};

struct McEstimate {
    double mean = 0.0;    ///< of L / n
    double std_error = 0.0;  ///< standard error of the mean
    std::uint64_t samples = 0;
    int n = 0;
    int sigma = 0;
    int d = 0;
};

/// Length of a longest common subsequence of all words.  Keeps two
/// (d-1)-dimensional slabs of the DP table; throws ResourceError if they
/// would exceed `memory_cap` bytes.
int lcs(const LcsInstance& instance, std::uint64_t memory_cap = kDefaultDpCap);

/// Longest common subsequence of prefixes whose lengths sum to n, read off
/// one full DP table as the max over cells with index sum n.
int diagonal_lcs(const LcsInstance& instance, int n,
                 std::uint64_t memory_cap = kDefaultDpCap);

/// E[max over i_1+...+i_d = n of L(A_1 X_1[1..i_1], ..., A_d X_d[1..i_d])]
/// for uniform random X_j of length n, by enumerating all sigma^(d n)
/// suffix assignments.  `max_work` caps enumerated DP cells.
double exhaustive_w(const TupleState& state, int n, std::uint64_t max_work = 200'000'000);

/// All-state vector of exhaustive_w at fixed n, in encode() order.
std::vector<double> exhaustive_w_vector(const Shape& shape, int n);

/// Mean and standard error of L / n over `samples` draws of d uniform
/// words of length n.  Sample s is generated from its own stream seeded by
/// (seed, s), so the result does not depend on the thread count.
McEstimate mc_estimate(int sigma, int d, int n, std::uint64_t samples, std::uint64_t seed);

/// Exact E[L] / n by enumerating all sigma^(d n) word tuples.
McEstimate exact_mean(int sigma, int d, int n);

/// SplitMix64: 64-bit state, used for all sampling.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, bound) by the high half of a 64x64 product.
    std::uint32_t below(std::uint32_t bound) {
        return static_cast<std::uint32_t>(
            (static_cast<unsigned __int128>(next()) * bound) >> 64);
    }

private:
    std::uint64_t state_;
};

/// Seed of sample `index` in a run with master seed `seed`.
std::uint64_t sample_seed(std::uint64_t seed, std::uint64_t index);

Word random_word(SplitMix64& rng, int sigma, int length);

}  // namespace lcsbound
