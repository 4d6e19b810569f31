#include "lcsbound/operator.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace lcsbound {

namespace {

// Words per tuple are bounded so per-coordinate scratch fits on the stack.
constexpr int kMaxWords = 64;

struct Decoded {
    std::array<Symbol, kMaxWords> heads;
    std::array<std::int64_t, kMaxWords> shift;  // index delta of T(A_j)0
};

// Visits the sources of branch z at a decoded coordinate in increasing
// index order.  Returns |N_z(A)|.
template <class Visit>
inline int sweep_branch(std::uint64_t index, const Decoded& dec, Symbol z,
                        int d, int sigma, const std::uint64_t* strides,
                        Visit&& visit) {
    std::array<std::uint64_t, kMaxWords> sel;
    std::int64_t base = static_cast<std::int64_t>(index);
    int m = 0;
    for (int j = 0; j < d; ++j) {
        if (dec.heads[j] != z) {
            base += dec.shift[j];
            sel[m++] = strides[j];
        }
    }
    if (m == 0) return 0;
    std::uint64_t idx = static_cast<std::uint64_t>(base);
    if (m == 1) {
        for (int c = 0; c < sigma; ++c, idx += sel[0]) visit(idx);
        return 1;
    }
    std::array<int, kMaxWords> digit{};
    for (;;) {
        visit(idx);
        int p = m - 1;
        while (p >= 0 && digit[p] == sigma - 1) {
            digit[p] = 0;
            idx -= static_cast<std::uint64_t>(sigma - 1) * sel[p];
            --p;
        }
        if (p < 0) break;
        ++digit[p];
        idx += sel[p];
    }
    return m;
}

inline void decode_coordinate(std::uint64_t index, int d, int sigma,
                              std::uint64_t words, std::uint64_t rest,
                              const std::uint64_t* strides, Decoded& dec) {
    std::uint64_t rem = index;
    for (int j = d - 1; j >= 0; --j) {
        const std::uint64_t code = rem % words;
        rem /= words;
        dec.heads[j] = static_cast<Symbol>(code / rest);
        const std::uint64_t shifted = (code % rest) * static_cast<std::uint64_t>(sigma);
        dec.shift[j] = (static_cast<std::int64_t>(shifted) - static_cast<std::int64_t>(code)) *
                       static_cast<std::int64_t>(strides[j]);
    }
}

}  // namespace

ValueVector ValueVector::zeros(const Shape& shape) {
    return constant(shape, 0.0);
}

ValueVector ValueVector::constant(const Shape& shape, double value) {
    return ValueVector{shape, std::vector<double>(shape.states(), value)};
}

bool ValueVector::all_finite() const {
    for (double x : values) {
        if (!std::isfinite(x)) return false;
    }
    return true;
}

OperatorContext::OperatorContext(Shape shape)
    : shape_(Shape::checked(shape.sigma, shape.d, shape.l)) {
    if (shape_.d > kMaxWords) throw std::invalid_argument("too many words per tuple");
    states_ = shape_.states();
    words_ = shape_.words();
    rest_ = words_ / static_cast<std::uint64_t>(shape_.sigma);
    strides_.assign(static_cast<std::size_t>(shape_.d), 1);
    for (int j = shape_.d - 2; j >= 0; --j) strides_[j] = strides_[j + 1] * words_;
    inv_pow_.resize(static_cast<std::size_t>(shape_.d) + 1);
    double p = 1.0;
    for (int m = 0; m <= shape_.d; ++m) {
        inv_pow_[m] = 1.0 / p;
        p *= shape_.sigma;
    }
    b_ = ValueVector::zeros(shape_);
    for (std::uint64_t k = 0; k < states_; ++k) {
        std::uint64_t rem = k;
        const std::uint64_t h0 = (rem % words_) / rest_;
        bool equal = true;
        for (int j = 1; j < shape_.d && equal; ++j) {
            rem /= words_;
            equal = (rem % words_) / rest_ == h0;
        }
        b_[k] = equal ? 1.0 : 0.0;
    }
}

void OperatorContext::apply(std::span<const std::span<const double>> args,
                            std::span<const double> offsets,
                            std::span<double> out) const {
    const int d = shape_.d;
    if (args.size() != static_cast<std::size_t>(d)) {
        throw std::invalid_argument("F takes exactly d argument vectors");
    }
    for (const auto& a : args) {
        if (a.size() != states_) throw std::invalid_argument("argument dimension mismatch");
    }
    if (!offsets.empty() && offsets.size() != static_cast<std::size_t>(d)) {
        throw std::invalid_argument("offsets must be empty or hold d entries");
    }
    if (out.size() != states_) throw std::invalid_argument("output dimension mismatch");

    std::array<const double*, kMaxWords + 1> src{};
    std::array<double, kMaxWords + 1> off{};
    for (int j = 0; j < d; ++j) {
        src[j + 1] = args[j].data();
        off[j + 1] = offsets.empty() ? 0.0 : offsets[j];
    }
    const int sigma = shape_.sigma;
    const std::uint64_t* strides = strides_.data();
    const double* inv = inv_pow_.data();
    const double* bv = b_.values.data();
    double* dst = out.data();
    const auto n = static_cast<std::int64_t>(states_);
    const std::uint64_t words = words_;
    const std::uint64_t rest = rest_;

#pragma omp parallel for schedule(static)
    for (std::int64_t kk = 0; kk < n; ++kk) {
        const auto k = static_cast<std::uint64_t>(kk);
        Decoded dec;
        decode_coordinate(k, d, sigma, words, rest, strides, dec);
        double best = -std::numeric_limits<double>::infinity();
        for (Symbol z = 0; z < sigma; ++z) {
            int m = 0;
            for (int j = 0; j < d; ++j) m += dec.heads[j] != z;
            if (m == 0) continue;
            const double* v = src[m];
            double sum = 0.0;
            sweep_branch(k, dec, z, d, sigma, strides,
                         [&](std::uint64_t idx) { sum += v[idx]; });
            const double branch = sum * inv[m] + off[m];
            if (branch > best) best = branch;
        }
        dst[k] = bv[k] + best;
    }
}

void OperatorContext::check_args(std::span<const ValueVector> args) const {
    if (args.size() != static_cast<std::size_t>(shape_.d)) {
        throw std::invalid_argument("F takes exactly d argument vectors");
    }
    for (const auto& a : args) {
        if (!(a.shape == shape_) || a.size() != states_) {
            throw std::invalid_argument("argument dimension mismatch");
        }
    }
}

ValueVector OperatorContext::apply_F(std::span<const ValueVector> args) const {
    check_args(args);
    std::vector<std::span<const double>> views;
    views.reserve(args.size());
    for (const auto& a : args) views.push_back(a.view());
    ValueVector out = ValueVector::zeros(shape_);
    apply(views, {}, out.values);
    return out;
}

ValueVector OperatorContext::apply_Fz(Symbol z, std::span<const ValueVector> args) const {
    check_args(args);
    if (z < 0 || z >= shape_.sigma) throw std::invalid_argument("character outside alphabet");
    ValueVector out = ValueVector::zeros(shape_);
    const int d = shape_.d;
    for (std::uint64_t k = 0; k < states_; ++k) {
        Decoded dec;
        decode_coordinate(k, d, shape_.sigma, words_, rest_, strides_.data(), dec);
        int m = 0;
        for (int j = 0; j < d; ++j) m += dec.heads[j] != z;
        if (m == 0) continue;
        const auto& v = args[m - 1].values;
        double sum = 0.0;
        sweep_branch(k, dec, z, d, shape_.sigma, strides_.data(),
                     [&](std::uint64_t idx) { sum += v[idx]; });
        out[k] = sum * inv_pow_[m];
    }
    return out;
}

std::uint64_t OperatorContext::count_incidences(Symbol z, int i) const {
    if (i < 1 || i > shape_.d) throw std::invalid_argument("piece index outside 1..d");
    if (z < 0 || z >= shape_.sigma) throw std::invalid_argument("character outside alphabet");
    std::uint64_t count = 0;
    for (std::uint64_t k = 0; k < states_; ++k) {
        Decoded dec;
        decode_coordinate(k, shape_.d, shape_.sigma, words_, rest_, strides_.data(), dec);
        int m = 0;
        for (int j = 0; j < shape_.d; ++j) m += dec.heads[j] != z;
        if (m != i) continue;
        sweep_branch(k, dec, z, shape_.d, shape_.sigma, strides_.data(),
                     [&](std::uint64_t) { ++count; });
    }
    return count;
}

BranchRow OperatorContext::branch_row(std::uint64_t index, Symbol z) const {
    if (index >= states_) throw std::out_of_range("tuple index out of range");
    if (z < 0 || z >= shape_.sigma) throw std::invalid_argument("character outside alphabet");
    Decoded dec;
    decode_coordinate(index, shape_.d, shape_.sigma, words_, rest_, strides_.data(), dec);
    BranchRow row;
    row.z = z;
    row.slot = sweep_branch(index, dec, z, shape_.d, shape_.sigma, strides_.data(),
                            [&](std::uint64_t idx) { row.sources.push_back(idx); });
    row.weight = row.slot == 0 ? 0.0 : inv_pow_[row.slot];
    return row;
}

void feasibility_gap(const OperatorContext& op, std::span<const double> u,
                     double r, std::span<double> gap) {
    const int d = op.shape().d;
    if (u.size() != gap.size()) throw std::invalid_argument("gap dimension mismatch");
    std::vector<std::span<const double>> args(static_cast<std::size_t>(d), u);
    std::vector<double> offsets(static_cast<std::size_t>(d));
    for (int j = 0; j < d; ++j) offsets[j] = static_cast<double>(d - 1 - j) * r;
    op.apply(args, offsets, gap);
    const double shift = static_cast<double>(d) * r;
    const auto n = static_cast<std::int64_t>(u.size());
#pragma omp parallel for schedule(static)
    for (std::int64_t k = 0; k < n; ++k) gap[k] = (u[k] + shift) - gap[k];
}

std::uint64_t fz_nonzero_count(int sigma, int d, int l, int i) {
    if (i < 1 || i > d) throw std::invalid_argument("piece index outside 1..d");
    Shape::checked(sigma, d, l);
    std::uint64_t binom = 1;
    for (int k = 1; k <= i; ++k) binom = binom * static_cast<std::uint64_t>(d - i + k) / k;
    std::uint64_t n = binom;
    const auto s = static_cast<std::uint64_t>(sigma);
    for (int k = 0; k < (l - 1) * d; ++k) n *= s;
    for (int k = 0; k < i; ++k) n *= (s - 1) * s;
    return n;
}

}  // namespace lcsbound
