#include "hqi/reference.hpp"

#include "hqi/error.hpp"

namespace hqi::reference {

namespace {

using Eigen::MatrixXd;

AxisOperator axis(const std::vector<double>& nodes, int degree, int order, bool periodic, double period)
{
    return AxisOperator(axis_knots(nodes, degree, periodic, period),
                        order == 0 ? default_fd_order(degree) : order);
}

MatrixXd as_matrix(const std::vector<double>& v, int rows, int cols)
{
    require(v.size() == static_cast<size_t>(rows) * cols, "grid size mismatch");
    return Eigen::Map<const MatrixXd>(v.data(), rows, cols);
}

std::vector<double> flatten(const MatrixXd& m) { return std::vector<double>(m.data(), m.data() + m.size()); }

}  // namespace

MatrixXd approx_matrix(const AxisOperator& op) { return op.dense_approx(); }

std::vector<double> qi2d_approx(const GridSample2D& g, std::array<int, 2> degrees, std::array<int, 2> orders)
{
    const auto ax = axis(g.axes[0], degrees[0], orders[0], g.periodic[0], g.period[0]);
    const auto ay = axis(g.axes[1], degrees[1], orders[1], g.periodic[1], g.period[1]);
    const auto s = g.shape();
    const MatrixXd F = as_matrix(g.values, s[0], s[1]);
    const MatrixXd C = approx_matrix(ax) * F * approx_matrix(ay).transpose();
    return flatten(C);
}

std::vector<double> qi2d_hermite(const GridSample2D& g, std::array<int, 2> degrees)
{
    const auto ax = AxisOperator(axis_knots(g.axes[0], degrees[0], g.periodic[0], g.period[0]), 0);
    const auto ay = AxisOperator(axis_knots(g.axes[1], degrees[1], g.periodic[1], g.period[1]), 0);
    const auto s = g.shape();
    const MatrixXd F = as_matrix(g.values, s[0], s[1]);
    const MatrixXd Fx = as_matrix(g.fx, s[0], s[1]);
    const MatrixXd Fy = as_matrix(g.fy, s[0], s[1]);
    const MatrixXd Fxy = as_matrix(g.fxy, s[0], s[1]);
    const MatrixXd Ax = ax.weights().A_hat(), HBx = ax.weights().derivative_weights().dense();
    const MatrixXd Ay = ay.weights().A_hat(), HBy = ay.weights().derivative_weights().dense();
    const MatrixXd C = (Ax * F - HBx * Fx) * Ay.transpose() - (Ax * Fy - HBx * Fxy) * HBy.transpose();
    return flatten(C);
}

std::vector<double> qi2d_approx_full_path(const GridSample2D& g, std::array<int, 2> degrees,
                                          std::array<int, 2> orders)
{
    const auto ax = axis(g.axes[0], degrees[0], orders[0], g.periodic[0], g.period[0]);
    const auto ay = axis(g.axes[1], degrees[1], orders[1], g.periodic[1], g.period[1]);
    const auto s = g.shape();
    const MatrixXd F = as_matrix(g.values, s[0], s[1]);
    const MatrixXd Wx = approx_matrix(ax);
    const MatrixXd Gy = ay.fd()->matrix().dense();
    const MatrixXd D = Wx * F;
    const MatrixXd Dp = Wx * (F * Gy.transpose());
    const MatrixXd C = D * ay.weights().A_hat().transpose() - Dp * ay.weights().derivative_weights().dense().transpose();
    return flatten(C);
}

std::vector<double> qi2d_approx_y_first(const GridSample2D& g, std::array<int, 2> degrees, std::array<int, 2> orders)
{
    const auto ax = axis(g.axes[0], degrees[0], orders[0], g.periodic[0], g.period[0]);
    const auto ay = axis(g.axes[1], degrees[1], orders[1], g.periodic[1], g.period[1]);
    const auto s = g.shape();
    const MatrixXd F = as_matrix(g.values, s[0], s[1]);
    const MatrixXd E = F * approx_matrix(ay).transpose();
    return flatten(approx_matrix(ax) * E);
}

std::vector<double> qi3d_nested(const GridSample3D& g, std::array<int, 3> degrees, std::array<int, 3> orders)
{
    std::array<KnotVector, 3> kv;
    for(int a = 0; a < 3; ++a)
        kv[a] = axis_knots(g.axes[a], degrees[a], g.periodic[a], g.period[a]);
    auto s = g.shape();
    std::array<long, 3> ext{s[0], s[1], s[2]};
    std::vector<double> cur = g.values;
    for(int m = 0; m < 3; ++m) {
        const auto nodes = kv[m].breakpoints();
        const long n_out = kv[m].num_coefficients();
        std::array<long, 3> out_ext = ext;
        out_ext[m] = n_out;
        std::vector<double> next(static_cast<size_t>(out_ext[0] * out_ext[1] * out_ext[2]));
        const int l = orders[m] == 0 ? default_fd_order(degrees[m]) : orders[m];
        // iterate over all lines along mode m
        std::array<long, 3> idx{0, 0, 0};
        const int m1 = (m + 1) % 3, m2 = (m + 2) % 3;
        for(idx[m2] = 0; idx[m2] < ext[m2]; ++idx[m2])
            for(idx[m1] = 0; idx[m1] < ext[m1]; ++idx[m1]) {
                std::vector<double> line(ext[m]);
                for(idx[m] = 0; idx[m] < ext[m]; ++idx[m])
                    line[idx[m]] = cur[idx[0] + ext[0] * (idx[1] + ext[1] * idx[2])];
                const auto curve = hqi::qi_approx(nodes, line, degrees[m], l, g.periodic[m]);
                auto o = idx;
                for(o[m] = 0; o[m] < n_out; ++o[m])
                    next[o[0] + out_ext[0] * (o[1] + out_ext[1] * o[2])] = curve.coefficient(static_cast<int>(o[m]));
            }
        cur = std::move(next);
        ext = out_ext;
    }
    return cur;
}

}  // namespace hqi::reference
