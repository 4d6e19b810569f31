// operator.hpp -- the averaging lower-bound operator on tuple-indexed vectors

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "lcsbound/strings.hpp"

namespace lcsbound {

/// Dense real vector with one entry per tuple state, in encode() order.
struct ValueVector {
    Shape shape;
    std::vector<double> values;

    static ValueVector zeros(const Shape& shape);
    static ValueVector constant(const Shape& shape, double value);

    std::size_t size() const { return values.size(); }
    double& operator[](std::uint64_t i) { return values[i]; }
    double operator[](std::uint64_t i) const { return values[i]; }
    std::span<const double> view() const { return values; }

    bool all_finite() const;

    bool operator==(const ValueVector&) const = default;
};

/// One retained branch of F at a coordinate: an equal-weight average of
/// argument vector `slot` (1-based: number of characters consumed) over
/// `sources`.
struct BranchRow {
    Symbol z = 0;
    int slot = 0;
    double weight = 0.0;
    std::vector<std::uint64_t> sources;  // increasing order
};

/// Immutable (sigma, d, l) configuration plus the indicator vector b of
/// tuples whose words all share their head.  Applies
///
///     F(v_1, ..., v_d)[A] = b[A] + max_z F_z(v_1, ..., v_d)[A]
///
/// without materializing any matrix.  The max ranges only over the z for
/// which at least one word of A does not start with z; for sigma >= 2 that
/// set is never empty.  Within a branch, source entries are summed in
/// increasing index order and multiplied by 1/sigma^|N_z(A)|, so every
/// caller evaluating F on the same inputs gets bit-identical results.
class OperatorContext {
public:
    explicit OperatorContext(Shape shape);

    const Shape& shape() const { return shape_; }
    const ValueVector& b() const { return b_; }

    /// Matrix-free F.  `args[j]` is the vector with j+1 characters consumed
    /// and `offsets[j]` is added to every entry of that argument (empty
    /// span: no offsets).  `out` must not alias any argument.
    void apply(std::span<const std::span<const double>> args,
               std::span<const double> offsets, std::span<double> out) const;

    ValueVector apply_F(std::span<const ValueVector> args) const;

    /// A single linear piece F_z; coordinates with N_z(A) empty get 0.
    ValueVector apply_Fz(Symbol z, std::span<const ValueVector> args) const;

    /// Counts the (coordinate, source) incidences visited by the sweep for
    /// the piece F_{z,i}, i.e. over coordinates with |N_z(A)| = i.
    std::uint64_t count_incidences(Symbol z, int i) const;

    /// The branch of coordinate `index` for character `z`; slot 0 and no
    /// sources when every word starts with z.
    BranchRow branch_row(std::uint64_t index, Symbol z) const;

private:
    void check_args(std::span<const ValueVector> args) const;

    Shape shape_;
    std::uint64_t states_ = 0;
    std::uint64_t words_ = 0;
    std::uint64_t rest_ = 0;                // sigma^(l-1)
    std::vector<std::uint64_t> strides_;    // stride of word j in the tuple index
    std::vector<double> inv_pow_;           // 1 / sigma^m, m = 0..d
    ValueVector b_;
};

/// Writes gap[A] = u[A] + d*r - F(u + (d-1)r, ..., u + r, u)[A].  The
/// triplet (u, r, eps) is feasible exactly when max_A gap[A] <= eps.
void feasibility_gap(const OperatorContext& op, std::span<const double> u,
                     double r, std::span<double> gap);

/// C(d,i) * sigma^((l-1)d) * (sigma-1)^i * sigma^i: nonzero entries of the
/// 0-1 matrix of F_{z,i}.
std::uint64_t fz_nonzero_count(int sigma, int d, int l, int i);

}  // namespace lcsbound
