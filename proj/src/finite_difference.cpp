#include "hqi/finite_difference.hpp"

#include "hqi/error.hpp"

#include <cmath>
#include <map>
#include <utility>

namespace hqi {

std::vector<double> fd_weights(std::span<const double> nodes, double target)
{
    const int n = static_cast<int>(nodes.size());
    require(n >= 2, "fd_weights: at least two nodes are required");
    for(int i = 0; i < n; ++i) {
        require(std::isfinite(nodes[i]), "fd_weights: nodes must be finite");
        for(int j = 0; j < i; ++j)
            require(nodes[i] != nodes[j], "fd_weights: duplicate nodes");
    }
    // w_k = L_k'(t) = sum_{m != k} 1/(x_k - x_m) prod_{j != k,m} (t - x_j)/(x_k - x_j)
    std::vector<double> w(n, 0.0);
    for(int k = 0; k < n; ++k) {
        double s = 0.0;
        for(int m = 0; m < n; ++m) {
            if(m == k)
                continue;
            double prod = 1.0 / (nodes[k] - nodes[m]);
            for(int j = 0; j < n; ++j)
                if(j != k && j != m)
                    prod *= (target - nodes[j]) / (nodes[k] - nodes[j]);
            s += prod;
        }
        w[k] = s;
    }
    // a node at the target takes minus the sum of the others (exact on constants)
    for(int k = 0; k < n; ++k)
        if(nodes[k] == target) {
            double s = 0.0;
            for(int m = 0; m < n; ++m)
                if(m != k)
                    s += w[m];
            w[k] = -s;
        }
    return w;
}

namespace {

// Node window of row n in the plain l-step scheme.
long plain_first(int n, int N, int l)
{
    const int l1 = l / 2, l2 = l - l1;
    if(n < l1)
        return 0;
    if(n <= N - l2)
        return n - l1;
    return N - l;
}

// Weights for the nodes at offsets rel[k] = x_k - x_target.
std::vector<double> weights_at(const std::vector<double>& rel)
{
    return fd_weights(rel, 0.0);
}

}  // namespace

FDOperator build_gamma(std::span<const double> grid, int l, bool periodic, std::optional<double> period,
                       bool allow_uniform_path)
{
    require(l >= 1, "finite difference order l must be >= 1");
    for(size_t i = 1; i < grid.size(); ++i)
        require(grid[i] > grid[i - 1], "finite difference grid must be strictly increasing");

    FDOperator op;
    op.order_ = l;
    op.periodic_ = periodic;
    op.nodes_.assign(grid.begin(), grid.end());
    const int rows = static_cast<int>(grid.size());

    if(periodic) {
        require(period.has_value(), "periodic finite differences need a period");
        const double T = *period;
        require(rows >= l + 1, "periodic grid needs at least l + 1 nodes per period");
        require(grid.back() < grid.front() + T, "periodic grid must lie within one period");
        op.period_ = T;
        const double h = T / rows;
        bool uniform = true;
        for(int i = 1; i <= rows && uniform; ++i) {
            const double hi = (i < rows ? grid[i] : grid[0] + T) - grid[i - 1];
            uniform = std::abs(hi - h) <= 1e-12 * h;
        }
        op.uniform_ = uniform && allow_uniform_path;

        // x_c - x_n for an unwrapped index c, without forming x_c itself
        auto offset = [&](long c, int n) {
            long q = c / rows, r = c % rows;
            if(r < 0) {
                r += rows;
                --q;
            }
            return (grid[r] - grid[n]) + q * T;
        };
        op.gamma_ = BandedMatrix(rows, rows, l + 1, true);
        op.stencils_.resize(rows);
        std::vector<double> cached;
        for(int n = 0; n < rows; ++n) {
            const long first = n - l / 2;
            std::vector<double> w;
            if(op.uniform_ && !cached.empty()) {
                w = cached;
            } else {
                std::vector<double> rel(l + 1);
                for(int k = 0; k <= l; ++k)
                    rel[k] = op.uniform_ ? static_cast<double>(first + k - n) * h
                                         : offset(first + k, n);
                w = weights_at(rel);
                if(op.uniform_)
                    cached = w;
            }
            op.gamma_.set_first(n, first);
            std::copy(w.begin(), w.end(), op.gamma_.row(n).begin());
            op.stencils_[n] = {first, l + 1};
        }
        return op;
    }

    const int N = rows - 1;
    require(N >= l, "finite difference grid too small: need N >= l (N = " + std::to_string(N)
                        + ", l = " + std::to_string(l) + ")");
    const double h = (grid.back() - grid.front()) / N;
    bool uniform = true;
    for(int i = 1; i <= N && uniform; ++i)
        uniform = std::abs((grid[i] - grid[i - 1]) - h) <= 1e-12 * h;
    op.uniform_ = uniform && allow_uniform_path;

    const bool centre_avg = (l % 2 == 1) && (N % 2 == 0);
    const int width = centre_avg ? l + 2 : l + 1;
    op.gamma_ = BandedMatrix(rows, rows, width, false);
    op.stencils_.resize(rows);

    // uniform grids: weights depend only on (first - n, mirrored)
    std::map<std::pair<long, bool>, std::vector<double>> cache;

    // weights of row n on nodes first..first+l (left half, plain scheme)
    auto left_row = [&](int n, long first) {
        const auto key = std::make_pair(first - n, false);
        if(op.uniform_)
            if(auto it = cache.find(key); it != cache.end())
                return it->second;
        std::vector<double> rel(l + 1);
        for(int k = 0; k <= l; ++k)
            rel[k] = op.uniform_ ? static_cast<double>(first + k - n) * h : grid[first + k] - grid[n];
        auto w = weights_at(rel);
        if(op.uniform_)
            cache.emplace(key, w);
        return w;
    };
    // row n of the right half: negated mirror of row m = N - n on the reflected grid
    // y_k = -x_{N-k}; returns weights on nodes N - first_m - l .. N - first_m
    auto mirrored_row = [&](int n, long first_m) {
        const int m = N - n;
        const auto key = std::make_pair(first_m - m, true);
        if(op.uniform_)
            if(auto it = cache.find(key); it != cache.end())
                return it->second;
        std::vector<double> rel(l + 1);
        for(int k = 0; k <= l; ++k) {
            const long c = N - first_m - k;  // original index of reflected node first_m + k
            rel[k] = op.uniform_ ? static_cast<double>(n - c) * h : grid[n] - grid[c];
        }
        const auto wr = weights_at(rel);
        std::vector<double> w(l + 1);
        for(int k = 0; k <= l; ++k)
            w[l - k] = -wr[k];
        if(op.uniform_)
            cache.emplace(key, w);
        return w;
    };

    for(int n = 0; n <= N; ++n) {
        std::vector<double> w;
        long first;
        int count = l + 1;
        if(2 * n < N) {
            first = plain_first(n, N, l);
            w = left_row(n, first);
        } else if(2 * n > N) {
            const long first_m = plain_first(N - n, N, l);
            first = N - first_m - l;
            w = mirrored_row(n, first_m);
        } else if(!centre_avg) {
            first = plain_first(n, N, l);
            w = left_row(n, first);
        } else {
            // odd l, centre row: average of the two biased stencils
            const long fl = plain_first(n, N, l);
            const long fm = plain_first(N - n, N, l);
            const long fr = N - fm - l;
            const auto wl = left_row(n, fl);
            const auto wr = mirrored_row(n, fm);
            first = std::min(fl, fr);
            count = l + 2;
            w.assign(l + 2, 0.0);
            for(int k = 0; k <= l; ++k) {
                w[fl - first + k] += 0.5 * wl[k];
                w[fr - first + k] += 0.5 * wr[k];
            }
        }
        op.stencils_[n] = {first, count};
        // pad to the common width, keeping the row inside [0, N]
        long start = first;
        if(start + width > rows)
            start = rows - width;
        op.gamma_.set_first(n, start);
        auto row = op.gamma_.row(n);
        for(int k = 0; k < count; ++k)
            row[first - start + k] = w[k];
    }
    return op;
}

Eigen::MatrixXd apply_gamma(const FDOperator& op, const Eigen::MatrixXd& values)
{
    if(values.rows() != op.size())
        throw ConstraintError("apply_gamma: expected " + std::to_string(op.size()) + " rows, got "
                              + std::to_string(values.rows()));
    Eigen::MatrixXd out(values.rows(), values.cols());
    for(Eigen::Index c = 0; c < values.cols(); ++c)
        op.apply(values.col(c).data(), 1, out.col(c).data(), 1);
    return out;
}

}  // namespace hqi
