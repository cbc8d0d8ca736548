#include "hqi/qi_tensor.hpp"

#include "hqi/error.hpp"

namespace hqi {

KnotVector axis_knots(const std::vector<double>& nodes, int degree, bool periodic, double period)
{
    if(!periodic)
        return KnotVector(degree, nodes, false);
    require(period > 0.0, "a periodic axis needs a positive period");
    require(!nodes.empty() && nodes.back() < nodes.front() + period,
            "periodic axis samples must lie inside one period (no seam duplicate)");
    auto b = nodes;
    b.push_back(nodes.front() + period);
    return KnotVector(degree, std::move(b), true);
}

namespace {

template <size_t R>
std::array<AxisOperator, R> make_axes(const std::array<std::vector<double>, R>& axes, const std::array<bool, R>& per,
                                      const std::array<double, R>& period, const std::array<int, R>& degrees,
                                      const std::array<int, R>& orders)
{
    std::array<AxisOperator, R> ops;
    for(size_t a = 0; a < R; ++a) {
        const int l = orders[a] == 0 ? default_fd_order(degrees[a]) : orders[a];
        ops[a] = AxisOperator(axis_knots(axes[a], degrees[a], per[a], period[a]), l);
    }
    return ops;
}

template <size_t R>
void check_values(const std::array<int, R>& shape, const std::vector<double>& v, const char* what)
{
    size_t n = 1;
    for(int e : shape)
        n *= e;
    require(v.size() == n, std::string(what) + ": expected " + std::to_string(n) + " samples, got "
                               + std::to_string(v.size()));
}

}  // namespace

SplineSurface qi2d_hermite(const GridSample2D& g, std::array<int, 2> degrees, Exec exec)
{
    const auto shape = g.shape();
    check_values(shape, g.values, "values");
    require(!g.fx.empty() && !g.fy.empty() && !g.fxy.empty(),
            "Hermite surface fitting needs the f_x, f_y and f_xy grids");
    check_values(shape, g.fx, "f_x");
    check_values(shape, g.fy, "f_y");
    check_values(shape, g.fxy, "f_xy");

    std::array<AxisOperator, 2> ops;
    for(int a = 0; a < 2; ++a)
        ops[a] = AxisOperator(axis_knots(g.axes[a], degrees[a], g.periodic[a], g.period[a]), 0);
    const std::vector<int> sh{shape[0], shape[1]};
    const Tensor f(sh, g.values), fx(sh, g.fx), fy(sh, g.fy), fxy(sh, g.fxy);
    const Tensor d = apply_hermite(f, fx, ops[0], 0, exec);
    const Tensor dp = apply_hermite(fy, fxy, ops[0], 0, exec);
    Tensor c = apply_hermite(d, dp, ops[1], 1, exec);
    return SplineSurface(ops[0].knots(), ops[1].knots(), std::move(c.values()));
}

SplineSurface qi2d_approx(const GridSample2D& g, std::array<int, 2> degrees, std::array<int, 2> orders, Exec exec)
{
    const auto shape = g.shape();
    check_values(shape, g.values, "values");
    const auto ops = make_axes<2>(g.axes, g.periodic, g.period, degrees, orders);
    const Tensor f({shape[0], shape[1]}, g.values);
    const Tensor d = apply_approx(f, ops[0], 0, exec);
    Tensor c = apply_approx(d, ops[1], 1, exec);
    return SplineSurface(ops[0].knots(), ops[1].knots(), std::move(c.values()));
}

SplineVolume qi3d_approx(const GridSample3D& g, std::array<int, 3> degrees, std::array<int, 3> orders, Exec exec)
{
    const auto shape = g.shape();
    check_values(shape, g.values, "values");
    const auto ops = make_axes<3>(g.axes, g.periodic, g.period, degrees, orders);
    Tensor t({shape[0], shape[1], shape[2]}, g.values);
    for(int m = 0; m < 3; ++m)
        t = apply_approx(t, ops[m], m, exec);
    return SplineVolume(ops[0].knots(), ops[1].knots(), ops[2].knots(), std::move(t.values()));
}

SplineSurface qi2d_polar(GridSample2D g, std::array<int, 2> degrees, std::array<int, 2> orders, double period,
                         Exec exec)
{
    g.periodic = {false, true};
    g.period = {0.0, period};
    return qi2d_approx(g, degrees, orders, exec);
}

}  // namespace hqi
