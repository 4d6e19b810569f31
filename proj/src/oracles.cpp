#include "lcsbound/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "lcsbound/solver.hpp"

namespace lcsbound {

namespace {

using Cell = std::uint32_t;

std::uint64_t product_of_extents(const std::vector<Word>& words, std::size_t from,
                                 std::uint64_t limit) {
    std::uint64_t n = 1;
    for (std::size_t j = from; j < words.size(); ++j) {
        const std::uint64_t e = words[j].size() + 1;
        if (n > limit / e) return limit + 1;
        n *= e;
    }
    return n;
}

int lcs_two(const Word& a, const Word& b) {
    std::vector<Cell> prev(b.size() + 1, 0), cur(b.size() + 1, 0);
    for (std::size_t i = 1; i <= a.size(); ++i) {
        const Symbol ca = a[i - 1];
        for (std::size_t j = 1; j <= b.size(); ++j) {
            cur[j] = ca == b[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
        }
        std::swap(prev, cur);
    }
    return static_cast<int>(prev[b.size()]);
}

// Fills one layer (fixed index i0 >= 1 along word 0) of the DP over the
// remaining d-1 words.  `below` is the layer i0-1.
void fill_layer(const std::vector<Word>& words, Symbol c0, const std::vector<std::uint64_t>& st,
                const Cell* below, Cell* layer, std::uint64_t size) {
    const std::size_t d = words.size();
    std::uint64_t diag_step = 0;
    for (std::size_t j = 1; j < d; ++j) diag_step += st[j];
    std::vector<std::size_t> idx(d, 0);
    for (std::uint64_t off = 0; off < size; ++off) {
        bool boundary = false;
        bool match = true;
        for (std::size_t j = 1; j < d; ++j) {
            if (idx[j] == 0) {
                boundary = true;
                break;
            }
            match = match && words[j][idx[j] - 1] == c0;
        }
        if (boundary) {
            layer[off] = 0;
        } else if (match) {
            layer[off] = below[off - diag_step] + 1;
        } else {
            Cell best = below[off];
            for (std::size_t j = 1; j < d; ++j) best = std::max(best, layer[off - st[j]]);
            layer[off] = best;
        }
        for (std::size_t j = d - 1; j >= 1; --j) {
            if (++idx[j] <= words[j].size()) break;
            idx[j] = 0;
        }
    }
}

std::vector<std::uint64_t> layer_strides(const std::vector<Word>& words) {
    const std::size_t d = words.size();
    std::vector<std::uint64_t> st(d, 1);
    for (std::size_t j = d - 1; j >= 1; --j) {
        st[j - 1] = st[j] * (words[j].size() + 1);
    }
    return st;  // st[0] is the layer size
}

// Full DP table, word 0 most significant.
std::vector<Cell> full_table(const std::vector<Word>& words) {
    const auto st = layer_strides(words);
    const std::uint64_t layer = st[0];
    std::vector<Cell> table(layer * (words[0].size() + 1), 0);
    for (std::size_t i0 = 1; i0 <= words[0].size(); ++i0) {
        fill_layer(words, words[0][i0 - 1], st, table.data() + (i0 - 1) * layer,
                   table.data() + i0 * layer, layer);
    }
    return table;
}

// Max of table cells (i_0, ..., i_{d-1}) with i_j >= lo and
// sum_j (i_j - lo) = n.
int max_on_diagonal(const std::vector<Cell>& table, const std::vector<Word>& words,
                    std::size_t lo, int n) {
    const std::size_t d = words.size();
    Cell best = 0;
    std::vector<std::size_t> idx(d, 0);
    for (std::uint64_t off = 0; off < table.size(); ++off) {
        long long sum = 0;
        bool ok = true;
        for (std::size_t j = 0; j < d; ++j) {
            if (idx[j] < lo) {
                ok = false;
                break;
            }
            sum += static_cast<long long>(idx[j] - lo);
        }
        if (ok && sum == n) best = std::max(best, table[off]);
        for (std::size_t j = d; j-- > 0;) {
            if (++idx[j] <= words[j].size()) break;
            idx[j] = 0;
        }
    }
    return static_cast<int>(best);
}

void check_words(const std::vector<Word>& words, int sigma) {
    if (sigma < 2) throw std::invalid_argument("alphabet size must be >= 2");
    if (words.size() < 2) throw std::invalid_argument("need at least two words");
    for (const auto& w : words) {
        for (Symbol c : w) {
            if (c < 0 || c >= sigma) throw std::invalid_argument("character outside alphabet");
        }
    }
}

}  // namespace

void LcsInstance::validate() const { check_words(words, sigma); }

int lcs(const LcsInstance& instance, std::uint64_t memory_cap) {
    instance.validate();
    const auto& words = instance.words;
    for (const auto& w : words) {
        if (w.empty()) return 0;
    }
    const std::uint64_t limit = memory_cap / (2 * sizeof(Cell));
    const std::uint64_t layer = product_of_extents(words, 1, limit);
    if (layer > limit) throw ResourceError("LCS table exceeds the memory cap");
    if (words.size() == 2) return lcs_two(words[0], words[1]);

    const auto st = layer_strides(words);
    std::vector<Cell> below(layer, 0), cur(layer, 0);
    for (std::size_t i0 = 1; i0 <= words[0].size(); ++i0) {
        fill_layer(words, words[0][i0 - 1], st, below.data(), cur.data(), layer);
        std::swap(below, cur);
    }
    return static_cast<int>(below[layer - 1]);
}

int diagonal_lcs(const LcsInstance& instance, int n, std::uint64_t memory_cap) {
    instance.validate();
    long long total = 0;
    for (const auto& w : instance.words) total += static_cast<long long>(w.size());
    if (n < 0 || n > total) throw std::invalid_argument("diagonal index outside [0, sum of lengths]");
    const std::uint64_t limit = memory_cap / sizeof(Cell);
    if (product_of_extents(instance.words, 0, limit) > limit) {
        throw ResourceError("diagonal LCS table exceeds the memory cap");
    }
    const auto table = full_table(instance.words);
    return max_on_diagonal(table, instance.words, 0, n);
}

double exhaustive_w(const TupleState& state, int n, std::uint64_t max_work) {
    const Shape& s = state.shape();
    if (n < 0) throw std::invalid_argument("n must be >= 0");
    std::uint64_t assignments = 0;
    if (!checked_pow(static_cast<std::uint64_t>(s.sigma), s.d * n, max_work, assignments)) {
        throw ResourceError("exhaustive enumeration over budget");
    }
    std::uint64_t cells = 0;
    if (!checked_pow(static_cast<std::uint64_t>(s.l + n + 1), s.d, max_work, cells) ||
        cells > max_work / assignments) {
        throw ResourceError("exhaustive enumeration over budget");
    }

    std::vector<Word> words = state.words();
    for (auto& w : words) w.resize(static_cast<std::size_t>(s.l + n), 0);
    std::uint64_t total = 0;
    for (std::uint64_t t = 0; t < assignments; ++t) {
        std::uint64_t rem = t;
        for (int j = s.d - 1; j >= 0; --j) {
            for (int p = s.l + n - 1; p >= s.l; --p) {
                words[j][p] = static_cast<Symbol>(rem % s.sigma);
                rem /= s.sigma;
            }
        }
        const auto table = full_table(words);
        total += static_cast<std::uint64_t>(
            max_on_diagonal(table, words, static_cast<std::size_t>(s.l), n));
    }
    return static_cast<double>(total) / static_cast<double>(assignments);
}

std::vector<double> exhaustive_w_vector(const Shape& shape, int n) {
    const Shape s = Shape::checked(shape.sigma, shape.d, shape.l);
    std::vector<double> w(s.states());
    for (std::uint64_t k = 0; k < w.size(); ++k) w[k] = exhaustive_w(decode(k, s), n);
    return w;
}

std::uint64_t sample_seed(std::uint64_t seed, std::uint64_t index) {
    SplitMix64 mix(index);
    return SplitMix64(seed ^ mix.next()).next();
}

Word random_word(SplitMix64& rng, int sigma, int length) {
    Word w(static_cast<std::size_t>(length));
    for (auto& c : w) c = static_cast<Symbol>(rng.below(static_cast<std::uint32_t>(sigma)));
    return w;
}

McEstimate mc_estimate(int sigma, int d, int n, std::uint64_t samples, std::uint64_t seed) {
    if (sigma < 2 || d < 2) throw std::invalid_argument("need sigma >= 2 and d >= 2");
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    if (samples < 1) throw std::invalid_argument("need at least one sample");
    std::uint64_t layer = 0;
    if (!checked_pow(static_cast<std::uint64_t>(n) + 1, d - 1,
                     kDefaultDpCap / (2 * sizeof(Cell)), layer)) {
        throw ResourceError("LCS table exceeds the memory cap");
    }
    std::vector<double> ratio(samples);
    const auto count = static_cast<std::int64_t>(samples);
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t s = 0; s < count; ++s) {
        SplitMix64 rng(sample_seed(seed, static_cast<std::uint64_t>(s)));
        LcsInstance inst{sigma, {}};
        for (int j = 0; j < d; ++j) inst.words.push_back(random_word(rng, sigma, n));
        ratio[s] = static_cast<double>(lcs(inst)) / n;
    }
    McEstimate est;
    est.samples = samples;
    est.n = n;
    est.sigma = sigma;
    est.d = d;
    est.mean = std::accumulate(ratio.begin(), ratio.end(), 0.0) / static_cast<double>(samples);
    if (samples > 1) {
        double ss = 0.0;
        for (double x : ratio) ss += (x - est.mean) * (x - est.mean);
        est.std_error = std::sqrt(ss / static_cast<double>(samples - 1) /
                                  static_cast<double>(samples));
    }
    return est;
}

McEstimate exact_mean(int sigma, int d, int n) {
    if (sigma < 2 || d < 2) throw std::invalid_argument("need sigma >= 2 and d >= 2");
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    std::uint64_t tuples = 0;
    if (!checked_pow(static_cast<std::uint64_t>(sigma), d * n, 50'000'000, tuples)) {
        throw ResourceError("exhaustive enumeration over budget");
    }
    LcsInstance inst{sigma, std::vector<Word>(static_cast<std::size_t>(d),
                                              Word(static_cast<std::size_t>(n), 0))};
    std::uint64_t total = 0;
    for (std::uint64_t t = 0; t < tuples; ++t) {
        std::uint64_t rem = t;
        for (auto& w : inst.words) {
            for (auto& c : w) {
                c = static_cast<Symbol>(rem % sigma);
                rem /= sigma;
            }
        }
        total += static_cast<std::uint64_t>(lcs(inst));
    }
    McEstimate est;
    est.samples = tuples;
    est.n = n;
    est.sigma = sigma;
    est.d = d;
    est.mean = static_cast<double>(total) / static_cast<double>(tuples) / n;
    return est;
}

}  // namespace lcsbound
