#pragma once

#include "hqi/banded.hpp"
#include "hqi/finite_difference.hpp"
#include "hqi/knots.hpp"
#include "hqi/spline.hpp"

#include <Eigen/Dense>

#include <optional>
#include <span>
#include <vector>

namespace hqi {

/// Step indices for the h-scaling of the derivative weights. 0 selects ceil(d/2).
struct QIOptions {
    int k1 = 0;
    int k2 = 0;
};

/**
 * Functional weights of one spline coefficient:
 *   mu_i(f) = sum_q alpha[q] f(x_{s+q}) - sum_q w[q] f'(x_{s+q}),  q = 0..d-1,
 * with w = hhat * beta. Index i is 0-based (classical index j = i - d).
 */
struct LocalWeights {
    long first_node = 0;  ///< s; periodic windows are unwrapped and may start below 0
    std::vector<double> alpha;
    std::vector<double> w;
    double hhat = 0.0;

    std::vector<double> beta() const;
};

/**
 * Solves the local 2d x 2d system for coefficient i.
 *
 * The d window nodes are x_0..x_{d-1} for the first d coefficients,
 * x_{N-d+1}..x_N for the last d, and x_{i-d+1}..x_i otherwise. The 2d - 1
 * B-splines that live on the window give exactness rows mu_i(B_m) = delta_im.
 * These leave a one-dimensional family of solutions (shifted by the linear
 * relation between values and slopes of every spline on the window); the
 * closing row selects the member orthogonal to that relation, i.e. the
 * minimum-norm weights in window-scaled coordinates.
 */
LocalWeights local_weights(const KnotVector& kv, int i, QIOptions opts = {});

/// Banded Â (alpha) and ĤB̂ (w) for the whole spline space.
class QIWeights {
public:
    QIWeights() = default;
    QIWeights(const KnotVector& kv, QIOptions opts = {});

    int degree() const { return degree_; }
    int k1() const { return k1_; }
    int k2() const { return k2_; }
    bool periodic() const { return alpha_.cyclic(); }
    /// Spline coefficients produced, N + d (periodic: N).
    int size() const { return alpha_.rows(); }
    /// Data nodes consumed, N + 1 (periodic: N).
    int nodes() const { return alpha_.cols(); }

    const BandedMatrix& alpha() const { return alpha_; }
    const BandedMatrix& derivative_weights() const { return hb_; }
    std::span<const double> hhat() const { return hhat_; }

    Eigen::MatrixXd A_hat() const { return alpha_.dense(); }
    Eigen::MatrixXd H_hat() const;
    Eigen::MatrixXd B_hat() const;

    /// c = Â f - ĤB̂ f' on strided vectors.
    void apply(const double* f, std::ptrdiff_t fs, const double* fp, std::ptrdiff_t fps, double* c,
               std::ptrdiff_t cs) const;

private:
    int degree_ = 0, k1_ = 0, k2_ = 0;
    BandedMatrix alpha_, hb_;
    std::vector<double> hhat_;
};

/// Data nodes of a knot vector: the N + 1 breakpoints, or the N distinct ones when periodic.
std::vector<double> data_nodes(const KnotVector& kv);

/**
 * One axis of a (tensor-product) quasi-interpolant: the QI weights plus,
 * for the approximate-derivative variant, the finite-difference operator on
 * the data nodes.
 */
class AxisOperator {
public:
    AxisOperator() = default;
    /// fd_order = 0 builds a Hermite-only operator.
    AxisOperator(KnotVector kv, int fd_order, QIOptions opts = {});

    const KnotVector& knots() const { return kv_; }
    const QIWeights& weights() const { return qi_; }
    const FDOperator* fd() const { return fd_ ? &*fd_ : nullptr; }
    int data_size() const { return qi_.nodes(); }
    int coef_size() const { return qi_.size(); }

    void hermite_line(const double* f, std::ptrdiff_t fs, const double* fp, std::ptrdiff_t fps, double* c,
                      std::ptrdiff_t cs) const
    {
        qi_.apply(f, fs, fp, fps, c, cs);
    }
    /// Approximate variant; scratch holds data_size() doubles.
    void approx_line(const double* f, std::ptrdiff_t fs, double* c, std::ptrdiff_t cs, double* scratch) const;

    /// Dense Â - ĤB̂Γ (needs an FD operator).
    Eigen::MatrixXd dense_approx() const;

private:
    KnotVector kv_;
    QIWeights qi_;
    std::optional<FDOperator> fd_;
};

/// Hermite samples; values and derivatives are row-major (node, component).
struct HermiteData {
    std::vector<double> nodes;
    std::vector<double> values;
    std::vector<double> derivatives;
    int dim = 1;
};

/// l = d + 1 for odd d, d + 2 for even d.
int default_fd_order(int degree);

/**
 * Hermite quasi-interpolant of degree d on the data nodes. Periodic data pass
 * x_0..x_N (period x_N - x_0) and N or N + 1 rows; a trailing seam row is dropped.
 */
SplineCurve qi_hermite(const HermiteData& data, int degree, bool periodic = false, QIOptions opts = {});

/// Approximate-derivative quasi-interpolant: f' from Γ^(l), then the Hermite formula.
/// l = 0 selects default_fd_order(degree).
SplineCurve qi_approx(std::span<const double> nodes, std::span<const double> values, int degree, int l = 0,
                      bool periodic = false, int dim = 1);

/// log2(e_k / e_{k+1}) per refinement step (scaled by log2(N_{k+1}/N_k) for non-dyadic steps).
std::vector<double> estimate_order(std::span<const double> errors, std::span<const int> Ns);

}  // namespace hqi
