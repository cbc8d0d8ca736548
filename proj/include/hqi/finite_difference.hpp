#pragma once

#include "hqi/banded.hpp"

#include <Eigen/Dense>

#include <optional>
#include <span>
#include <vector>

namespace hqi {

/**
 * First-derivative weights on arbitrary distinct nodes: the unique w with
 * sum_i w_i q(nodes_i) = q'(target) for every polynomial q of degree
 * <= nodes.size() - 1. Computed from the derivatives of the Lagrange basis,
 * which avoids forming a Vandermonde system.
 */
std::vector<double> fd_weights(std::span<const double> nodes, double target);

/// Which node window a row of the operator uses.
struct FDStencil {
    long first = 0;  ///< first node index (periodic: unwrapped, may be < 0 or >= N)
    int count = 0;   ///< number of nodes, l + 1 (l + 2 for the averaged centre row of odd l)
};

/**
 * Banded first-derivative operator Gamma^(l) on a grid x_0..x_N.
 *
 * Rows follow the l-step scheme with l1 = floor(l/2) left neighbours: rows
 * n < l1 use x_0..x_l, interior rows x_{n-l1}..x_{n-l1+l}, and rows near the
 * right end x_{N-l}..x_N. To make the operator antisymmetric under reversal of a
 * symmetric grid, every row in the right half is built as the negated mirror
 * of the corresponding left-half row on the reflected grid. For odd l the
 * centre row (N even) averages both biased stencils.
 *
 * A periodic operator acts on the N distinct nodes of one period; every row
 * uses x_{n-l1}..x_{n+l2} taken cyclically.
 */
class FDOperator {
public:
    FDOperator() = default;

    int order() const { return order_; }
    int l1() const { return order_ / 2; }
    int l2() const { return order_ - order_ / 2; }
    bool periodic() const { return periodic_; }
    double period() const { return period_; }
    bool uniform() const { return uniform_; }
    std::span<const double> nodes() const { return nodes_; }
    int size() const { return static_cast<int>(nodes_.size()); }
    const BandedMatrix& matrix() const { return gamma_; }
    FDStencil stencil(int row) const { return stencils_[row]; }

    /// y = Gamma x on strided vectors of length size().
    void apply(const double* x, std::ptrdiff_t xs, double* y, std::ptrdiff_t ys) const
    {
        gamma_.apply(x, xs, y, ys);
    }

private:
    friend FDOperator build_gamma(std::span<const double>, int, bool, std::optional<double>, bool);

    int order_ = 0;
    bool periodic_ = false;
    bool uniform_ = false;
    double period_ = 0.0;
    std::vector<double> nodes_;
    std::vector<FDStencil> stencils_;
    BandedMatrix gamma_;
};

/**
 * Builds Gamma^(l). Non-periodic grids pass x_0..x_N (N >= l). Periodic grids
 * pass the N distinct nodes of one period plus the period (N >= l + 1).
 * Uniform grids take a fast path that computes each distinct stencil once;
 * allow_uniform_path = false forces the general per-row construction.
 */
FDOperator build_gamma(std::span<const double> grid, int l, bool periodic = false,
                       std::optional<double> period = std::nullopt, bool allow_uniform_path = true);

/// Column-wise application: each of the p columns of values is differentiated.
Eigen::MatrixXd apply_gamma(const FDOperator& op, const Eigen::MatrixXd& values);

}  // namespace hqi
