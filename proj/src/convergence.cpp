#include "hqi/convergence.hpp"

#include "hqi/error.hpp"
#include "hqi/qi_tensor.hpp"
#include "hqi/test_functions.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

namespace hqi {

namespace {

double median_seconds(int reps, const std::function<void()>& fit)
{
    std::vector<double> t;
    for(int r = 0; r < std::max(1, reps); ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        fit();
        t.push_back(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    }
    std::sort(t.begin(), t.end());
    return t[t.size() / 2];
}

std::vector<double> axis_nodes(const TestFunction& f, int axis, int N, const ConvergenceOptions& o)
{
    return o.nonuniform ? graded_mesh(f.lower[axis], f.upper[axis], N, o.grading)
                        : linspace(f.lower[axis], f.upper[axis], N + 1);
}

ConvergenceRow run_1d(const TestFunction& f, int N, const ConvergenceOptions& o)
{
    const auto nodes = axis_nodes(f, 0, N, o);
    HermiteData h;
    h.nodes = nodes;
    for(double x : nodes) {
        h.values.push_back(f.value({x, 0, 0}, {0, 0, 0}));
        if(o.hermite)
            h.derivatives.push_back(f.value({x, 0, 0}, {1, 0, 0}));
    }
    SplineCurve s;
    ConvergenceRow row;
    row.N = N;
    row.seconds = median_seconds(o.reps, [&] {
        s = o.hermite ? qi_hermite(h, o.degree) : qi_approx(h.nodes, h.values, o.degree, o.fd_order);
    });
    const int m = o.samples > 0 ? o.samples : 1000;
    const auto pts = linspace(f.lower[0], f.upper[0], m);
    for(double x : pts)
        row.error = std::max(row.error, std::abs(s(x) - f(x)));
    return row;
}

ConvergenceRow run_2d(const TestFunction& f, int N, const ConvergenceOptions& o)
{
    GridSample2D g;
    g.axes = {axis_nodes(f, 0, N, o), axis_nodes(f, 1, N, o)};
    const size_t n0 = g.axes[0].size(), n1 = g.axes[1].size();
    auto sample = [&](std::array<int, 3> ord) {
        std::vector<double> v(n0 * n1);
        for(size_t j = 0; j < n1; ++j)
            for(size_t i = 0; i < n0; ++i)
                v[i + n0 * j] = f.value({g.axes[0][i], g.axes[1][j], 0}, ord);
        return v;
    };
    g.values = sample({0, 0, 0});
    if(o.hermite) {
        g.fx = sample({1, 0, 0});
        g.fy = sample({0, 1, 0});
        g.fxy = sample({1, 1, 0});
    }
    SplineSurface s;
    ConvergenceRow row;
    row.N = N;
    const int d = o.degree, l = o.fd_order;
    row.seconds = median_seconds(o.reps, [&] {
        s = o.hermite ? qi2d_hermite(g, {d, d}, o.exec) : qi2d_approx(g, {d, d}, {l, l}, o.exec);
    });
    const int m = o.samples > 0 ? o.samples : 101;
    const auto px = linspace(f.lower[0], f.upper[0], m), py = linspace(f.lower[1], f.upper[1], m);
    double err = 0.0;
#pragma omp parallel for reduction(max : err) schedule(static) if(o.exec == Exec::parallel)
    for(int j = 0; j < m; ++j)
        for(int i = 0; i < m; ++i)
            err = std::max(err, std::abs(s.eval(px[i], py[j]) - f(px[i], py[j])));
    row.error = err;
    return row;
}

ConvergenceRow run_3d(const TestFunction& f, int N, const ConvergenceOptions& o)
{
    require(!o.hermite, "3D fits support the approximate-derivative variant only");
    GridSample3D g;
    g.axes = {axis_nodes(f, 0, N, o), axis_nodes(f, 1, N, o), axis_nodes(f, 2, N, o)};
    const size_t n0 = g.axes[0].size(), n1 = g.axes[1].size(), n2 = g.axes[2].size();
    g.values.resize(n0 * n1 * n2);
    for(size_t k = 0; k < n2; ++k)
        for(size_t j = 0; j < n1; ++j)
            for(size_t i = 0; i < n0; ++i)
                g.values[i + n0 * (j + n1 * k)] = f(g.axes[0][i], g.axes[1][j], g.axes[2][k]);
    SplineVolume s;
    ConvergenceRow row;
    row.N = N;
    const int d = o.degree, l = o.fd_order;
    row.seconds = median_seconds(o.reps, [&] { s = qi3d_approx(g, {d, d, d}, {l, l, l}, o.exec); });
    g.values.clear();
    g.values.shrink_to_fit();
    const int m = o.samples > 0 ? o.samples : 101;
    std::array<std::vector<double>, 3> p;
    for(int a = 0; a < 3; ++a)
        p[a] = linspace(f.lower[a], f.upper[a], m);
    double err = 0.0;
#pragma omp parallel for reduction(max : err) schedule(static) if(o.exec == Exec::parallel)
    for(int k = 0; k < m; ++k)
        for(int j = 0; j < m; ++j)
            for(int i = 0; i < m; ++i)
                err = std::max(err, std::abs(s.eval(p[0][i], p[1][j], p[2][k]) - f(p[0][i], p[1][j], p[2][k])));
    row.error = err;
    return row;
}

}  // namespace

std::vector<ConvergenceRow> run_convergence(const ConvergenceOptions& o)
{
    const TestFunction& f = builtin_function(o.function);
    require(!o.Ns.empty(), "convergence study needs at least one N");
    std::vector<ConvergenceRow> rows;
    for(int N : o.Ns) {
        require(N >= 1, "N must be positive");
        if(f.dims == 1)
            rows.push_back(run_1d(f, N, o));
        else if(f.dims == 2)
            rows.push_back(run_2d(f, N, o));
        else
            rows.push_back(run_3d(f, N, o));
    }
    for(size_t k = 1; k < rows.size(); ++k) {
        const auto& a = rows[k - 1];
        const auto& b = rows[k];
        if(a.error > 0 && b.error > 0 && b.N > a.N)
            rows[k].order = std::log(a.error / b.error) / std::log(static_cast<double>(b.N) / a.N);
    }
    return rows;
}

std::string format_convergence_csv(const std::vector<ConvergenceRow>& rows)
{
    std::string out = "N,error,order,time\n";
    for(const auto& r : rows) {
        out += std::to_string(r.N) + "," + format_double(r.error) + ",";
        if(r.order)
            out += format_double(*r.order);
        out += "," + format_double(r.seconds) + "\n";
    }
    return out;
}

double fitted_slope(const std::vector<ConvergenceRow>& rows)
{
    require(rows.size() >= 2, "slope fit needs at least two rows");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(rows.size());
    for(const auto& r : rows) {
        require(r.error > 0, "slope fit needs positive errors");
        const double x = std::log(static_cast<double>(r.N)), y = -std::log(r.error);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

Metrics compute_metrics(const AnySpline& s, const GridFile& ref)
{
    const int dims = domain_dim(s), p = value_dim(s);
    require(ref.dims == dims, "reference grid has " + std::to_string(ref.dims) + " dimensions, spline has "
                                  + std::to_string(dims));
    require(ref.components == p, "reference grid has " + std::to_string(ref.components)
                                     + " components, spline has " + std::to_string(p));
    std::array<int, 3> ext{1, 1, 1};
    for(int a = 0; a < dims; ++a)
        ext[a] = static_cast<int>(ref.axes[a].size());
    std::vector<double> point(dims), val(p);
    std::vector<int> orders(dims, 0);
    double sum2 = 0.0, lo = std::numeric_limits<double>::infinity(), hi = -lo;
    Metrics m;
    size_t count = 0;
    for(int k = 0; k < ext[2]; ++k)
        for(int j = 0; j < ext[1]; ++j)
            for(int i = 0; i < ext[0]; ++i) {
                const std::array<int, 3> idx{i, j, k};
                for(int a = 0; a < dims; ++a)
                    point[a] = ref.axes[a][idx[a]];
                evaluate(s, point, orders, val);
                const size_t base = (i + static_cast<size_t>(ext[0]) * (j + static_cast<size_t>(ext[1]) * k)) * p;
                for(int c = 0; c < p; ++c) {
                    const double r = ref.values[base + c];
                    const double e = val[c] - r;
                    m.max_err = std::max(m.max_err, std::abs(e));
                    sum2 += e * e;
                    lo = std::min(lo, r);
                    hi = std::max(hi, r);
                    ++count;
                }
            }
    m.rmse = std::sqrt(sum2 / static_cast<double>(count));
    if(hi > lo)
        m.nrmse = m.rmse / (hi - lo);
    return m;
}

}  // namespace hqi
