#include "checks.hpp"
#include "oracles.hpp"

#include "hqi/convergence.hpp"
#include "hqi/error.hpp"
#include "hqi/qi1d.hpp"
#include "hqi/qi_tensor.hpp"
#include "hqi/reference.hpp"
#include "hqi/test_functions.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace hqi;
using checks::Mesh;

namespace {

Eigen::MatrixXd random_matrix(int r, int c, uint64_t seed)
{
    const auto v = checks::random_values(static_cast<size_t>(r) * c, seed);
    return Eigen::Map<const Eigen::MatrixXd>(v.data(), r, c);
}

double max_diff(std::span<const double> a, std::span<const double> b)
{
    REQUIRE(a.size() == b.size());
    double m = 0.0;
    for(size_t i = 0; i < a.size(); ++i)
        m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

std::vector<double> vec(std::span<const double> s) { return {s.begin(), s.end()}; }

GridSample2D sample(const TestFunction& f, const std::vector<double>& xs, const std::vector<double>& ys, bool partials)
{
    GridSample2D g;
    g.axes = {xs, ys};
    for(double y : ys)
        for(double x : xs) {
            g.values.push_back(f.value({x, y, 0}, {0, 0, 0}));
            if(partials) {
                g.fx.push_back(f.value({x, y, 0}, {1, 0, 0}));
                g.fy.push_back(f.value({x, y, 0}, {0, 1, 0}));
                g.fxy.push_back(f.value({x, y, 0}, {1, 1, 0}));
            }
        }
    return g;
}

double franke_error(int N, int d)
{
    const auto& f = builtin_function("franke");
    const auto s = qi2d_approx(sample(f, linspace(0, 1, N + 1), linspace(0, 1, N + 1), false), {d, d});
    double e = 0.0;
    for(double y : linspace(0, 1, 101))
        for(double x : linspace(0, 1, 101))
            e = std::max(e, std::abs(s.eval(x, y) - f(x, y)));
    return e;
}

double franke_slope(int d)
{
    ConvergenceOptions o;
    o.function = "franke";
    o.degree = d;
    o.reps = 1;
    auto rows = run_convergence(o);
    std::erase_if(rows, [](const ConvergenceRow& r) { return r.error < 1e-13; });
    REQUIRE(rows.size() >= 3);
    rows.erase(rows.begin(), rows.end() - 3);
    return fitted_slope(rows);
}

// (1 + rho) exp(sin theta): linear in rho, so every error comes from the theta direction
double polar_error(int n_theta, int d)
{
    const double T = 2 * std::numbers::pi;
    GridSample2D g;
    g.axes[0] = linspace(0, 1, 9);
    g.axes[1] = linspace(0, T, n_theta + 1);
    g.axes[1].pop_back();
    for(double t : g.axes[1])
        for(double r : g.axes[0])
            g.values.push_back((1 + r) * std::exp(std::sin(t)));
    const auto s = qi2d_polar(g, {d, d}, {0, 0}, T);
    double e = 0.0;
    for(double t : linspace(0, T, 301))
        for(double r : linspace(0, 1, 7))
            e = std::max(e, std::abs(s.eval(r, t) - (1 + r) * std::exp(std::sin(t))));
    return e;
}

}  // namespace

TEST_SUITE("qi_tensor")
{
    TEST_CASE("n-mode product")
    {
        const Tensor x({4, 3, 2}, checks::random_values(24, 1));
        for(int mode = 0; mode < 3; ++mode) {
            const Tensor same = n_mode_product(x, Eigen::MatrixXd::Identity(x.extent(mode), x.extent(mode)), mode);
            CHECK(same.values() == x.values());
            const Eigen::MatrixXd a = random_matrix(5, x.extent(mode), 10 + mode);
            const Tensor y = n_mode_product(x, a, mode);
            const auto want = oracle::mode_product(x.values(), {4, 3, 2}, a, mode);
            CHECK(y.extent(mode) == 5);
            CHECK(max_diff(y.values(), want) <= 1e-14);
        }
        // two modes: the first-mode product is the matrix product
        const Tensor m({4, 3}, checks::random_values(12, 2));
        const Eigen::MatrixXd a = random_matrix(2, 4, 3);
        const Eigen::MatrixXd want = a * Eigen::Map<const Eigen::MatrixXd>(m.data(), 4, 3);
        const Tensor y = n_mode_product(m, a, 0);
        CHECK(max_diff(y.values(), std::span<const double>(want.data(), want.size())) <= 1e-14);

        const Eigen::MatrixXd b = random_matrix(6, 3, 4);
        const Eigen::MatrixXd a4 = random_matrix(7, 4, 5);
        const Tensor ab = n_mode_product(n_mode_product(x, a4, 0), b, 1);
        const Tensor ba = n_mode_product(n_mode_product(x, b, 1), a4, 0);
        CHECK(max_diff(ab.values(), ba.values()) <= 1e-13);

        CHECK_THROWS_AS(n_mode_product(x, random_matrix(2, 5, 6), 0), ConstraintError);
    }

    TEST_CASE("Hermite surface of a constant")
    {
        GridSample2D g;
        g.axes = {checks::make_mesh(Mesh::random, 0, 1, 7, 1), checks::make_mesh(Mesh::random, 0, 2, 9, 2)};
        const size_t n = 8 * 10;
        g.values.assign(n, 2.5);
        g.fx.assign(n, 0.0);
        g.fy.assign(n, 0.0);
        g.fxy.assign(n, 0.0);
        const auto s = qi2d_hermite(g, {3, 2});
        for(double c : s.coefficients())
            CHECK(c == doctest::Approx(2.5).epsilon(1e-13));
    }

    TEST_CASE("Hermite surface reproduces separable splines")
    {
        for(int dx = 1; dx <= 4; ++dx)
            for(int dy = 1; dy <= 4; ++dy) {
                const KnotVector kx(dx, checks::make_mesh(Mesh::random, -1, 1, 9, dx));
                const KnotVector ky(dy, checks::make_mesh(Mesh::random, 0, 2, 7, 10 + dy));
                const auto u = checks::random_spline(kx, 3 * dx), v = checks::random_spline(ky, 5 * dy);
                GridSample2D g;
                g.axes[0].assign(kx.breakpoints().begin(), kx.breakpoints().end());
                g.axes[1].assign(ky.breakpoints().begin(), ky.breakpoints().end());
                for(double y : g.axes[1])
                    for(double x : g.axes[0]) {
                        g.values.push_back(u(x) * v(y));
                        g.fx.push_back(u(x, 1) * v(y));
                        g.fy.push_back(u(x) * v(y, 1));
                        g.fxy.push_back(u(x, 1) * v(y, 1));
                    }
                const auto s = qi2d_hermite(g, {dx, dy});
                REQUIRE(s.shape() == std::array<int, 2>{u.size(), v.size()});
                double worst = 0.0, scale = 1.0;
                for(int q = 0; q < v.size(); ++q)
                    for(int p = 0; p < u.size(); ++p) {
                        const double want = u.coefficient(p) * v.coefficient(q);
                        worst = std::max(worst, std::abs(s.coefficient(p, q) - want));
                        scale = std::max(scale, std::abs(want));
                    }
                CAPTURE(dx);
                CAPTURE(dy);
                CHECK(worst / scale <= 1e-9);
            }
    }

    TEST_CASE("Hermite surface reproduces xy")
    {
        for(int d = 1; d <= 5; ++d) {
            GridSample2D g;
            g.axes = {checks::make_mesh(Mesh::random, -1, 2, d + 3, d), checks::make_mesh(Mesh::uniform, 0, 1, d + 1, 0)};
            for(double y : g.axes[1])
                for(double x : g.axes[0]) {
                    g.values.push_back(x * y);
                    g.fx.push_back(y);
                    g.fy.push_back(x);
                    g.fxy.push_back(1.0);
                }
            const auto s = qi2d_hermite(g, {d, d});
            for(double y : linspace(0, 1, 13))
                for(double x : linspace(-1, 2, 17))
                    CHECK(std::abs(s.eval(x, y) - x * y) <= 1e-10);
        }
    }

    TEST_CASE("Hermite preconditions")
    {
        GridSample2D g;
        g.axes = {linspace(0, 1, 5), linspace(0, 1, 5)};
        g.values.assign(25, 1.0);
        CHECK_THROWS_AS(qi2d_hermite(g, {3, 3}), ConstraintError);
        g.fx.assign(25, 0.0);
        CHECK_THROWS_AS(qi2d_hermite(g, {3, 3}), ConstraintError);
        g.fy.assign(25, 0.0);
        g.fxy.assign(25, 0.0);
        CHECK_NOTHROW(qi2d_hermite(g, {3, 3}));
        CHECK_THROWS_AS(qi2d_hermite(g, {5, 3}), ConstraintError);
        g.values.pop_back();
        CHECK_THROWS_AS(qi2d_hermite(g, {3, 3}), ConstraintError);
    }

    TEST_CASE("approximate surface and volume of a constant")
    {
        GridSample2D g;
        g.axes = {checks::make_mesh(Mesh::random, 0, 1, 9, 4), linspace(0, 1, 12)};
        g.values.assign(10 * 12, -0.75);
        const auto s = qi2d_approx(g, {3, 2});
        for(double c : s.coefficients())
            CHECK(c == doctest::Approx(-0.75).epsilon(1e-12));

        GridSample3D v;
        v.axes = {linspace(0, 1, 7), checks::make_mesh(Mesh::random, 0, 1, 7, 5), linspace(0, 1, 6)};
        v.values.assign(7 * 8 * 6, 4.0);
        const auto vol = qi3d_approx(v, {3, 3, 2});
        for(double c : vol.coefficients())
            CHECK(c == doctest::Approx(4.0).epsilon(1e-12));
    }

    TEST_CASE("approximate surface: coefficient path, axis order, dense form")
    {
        uint64_t seed = 100;
        for(auto nodes : {std::array<int, 2>{8, 9}, {13, 21}, {32, 17}, {32, 32}})
            for(auto d : {std::array<int, 2>{3, 3}, {2, 5}, {1, 4}}) {
                const std::array<int, 2> l{default_fd_order(d[0]), default_fd_order(d[1])};
                if(nodes[0] - 1 < std::max(d[0], l[0]) || nodes[1] - 1 < std::max(d[1], l[1]))
                    continue;
                CAPTURE(nodes[0]);
                CAPTURE(nodes[1]);
                CHECK(checks::eq19_paths(nodes, d, l, ++seed) <= 1e-10);
                CHECK(checks::axis_order(nodes, d, l, ++seed) <= 1e-10);
                CHECK(checks::matrix_vs_nmode(nodes, d, l, ++seed) <= 1e-12);
            }
    }

    TEST_CASE("volume against nested 1D fits")
    {
        CHECK(checks::nested_3d({12, 12, 12}, {3, 3, 3}, 1) <= 1e-10);
        CHECK(checks::nested_3d({9, 12, 8}, {2, 3, 1}, 2) <= 1e-10);
        CHECK(checks::nested_3d({12, 12, 12}, {3, 2, 3}, 3, true) <= 1e-10);
    }

    TEST_CASE("volume preconditions")
    {
        GridSample3D v;
        v.axes = {linspace(0, 1, 5), linspace(0, 1, 5), linspace(0, 1, 4)};
        v.values.assign(100, 1.0);
        // three intervals along z: enough for d = 3 but not for the default l = 4
        CHECK_THROWS_AS(qi3d_approx(v, {3, 3, 3}), ConstraintError);
        CHECK_NOTHROW(qi3d_approx(v, {3, 3, 3}, {0, 0, 2}));
        CHECK_THROWS_AS(qi3d_approx(v, {3, 3, 4}, {0, 0, 2}), ConstraintError);
        v.values.pop_back();
        CHECK_THROWS_AS(qi3d_approx(v, {3, 3, 3}, {0, 0, 2}), ConstraintError);
    }

    TEST_CASE("polar surfaces")
    {
        for(int d = 1; d <= 5; ++d)
            for(int N : {2 * d + 2, 24}) {
                CAPTURE(d);
                CHECK(checks::seam_polar(d, N) <= 1e-10);
            }

        // constant in theta: every theta column of coefficients agrees
        const double T = 2 * std::numbers::pi;
        GridSample2D g;
        g.axes[0] = linspace(0, 1, 10);
        g.axes[1] = linspace(0, T, 17);
        g.axes[1].pop_back();
        for(size_t j = 0; j < g.axes[1].size(); ++j)
            for(double r : g.axes[0])
                g.values.push_back(std::exp(r));
        const auto s = qi2d_polar(g, {3, 3}, {0, 0}, T);
        CHECK(s.shape()[1] == 16);
        for(int q = 1; q < s.shape()[1]; ++q)
            for(int p = 0; p < s.shape()[0]; ++p)
                CHECK(std::abs(s.coefficient(p, q) - s.coefficient(p, 0)) <= 1e-13);

        GridSample2D bad = g;
        bad.axes[1].push_back(T);
        bad.values.insert(bad.values.end(), g.axes[0].size(), 1.0);
        CHECK_THROWS_AS(qi2d_polar(bad, {3, 3}, {0, 0}, T), ConstraintError);
    }

    TEST_CASE("polar order under theta refinement")
    {
        for(int d : {2, 3}) {
            const std::vector<double> e{polar_error(32, d), polar_error(64, d), polar_error(128, d)};
            const auto o = estimate_order(e, std::vector<int>{32, 64, 128});
            CAPTURE(d);
            CHECK(std::abs(o.back() - (d + 1)) <= 0.5);
        }
    }

    TEST_CASE("parallel and serial kernels give identical bits")
    {
        const auto& f = builtin_function("franke");
        const auto xs = checks::make_mesh(Mesh::random, 0, 1, 40, 7), ys = linspace(0, 1, 33);
        const auto g = sample(f, xs, ys, true);
        CHECK(vec(qi2d_approx(g, {3, 3}, {0, 0}, Exec::serial).coefficients())
              == vec(qi2d_approx(g, {3, 3}, {0, 0}, Exec::parallel).coefficients()));
        CHECK(vec(qi2d_hermite(g, {3, 2}, Exec::serial).coefficients())
              == vec(qi2d_hermite(g, {3, 2}, Exec::parallel).coefficients()));

        GridSample3D v;
        v.axes = {linspace(0, 1, 20), xs, linspace(0, 1, 18)};
        v.values = checks::random_values(20 * 41 * 18, 8);
        CHECK(vec(qi3d_approx(v, {3, 2, 5}, {0, 0, 0}, Exec::serial).coefficients())
              == vec(qi3d_approx(v, {3, 2, 5}, {0, 0, 0}, Exec::parallel).coefficients()));

        GridSample2D p;
        p.axes[0] = linspace(0, 1, 20);
        p.axes[1] = linspace(0, 1, 31);
        p.axes[1].pop_back();
        p.values = checks::random_values(20 * 30, 9);
        CHECK(vec(qi2d_polar(p, {3, 3}, {0, 0}, 1.0, Exec::serial).coefficients())
              == vec(qi2d_polar(p, {3, 3}, {0, 0}, 1.0, Exec::parallel).coefficients()));
    }

    TEST_CASE("dense reference agrees with the pipeline")
    {
        const auto& f = builtin_function("franke");
        const auto g = sample(f, checks::make_mesh(Mesh::random, 0, 1, 14, 3), linspace(0, 1, 11), true);
        const auto c = vec(qi2d_approx(g, {3, 2}).coefficients());
        CHECK(max_diff(c, reference::qi2d_approx(g, {3, 2}, {0, 0})) <= 1e-12);
        const auto h = vec(qi2d_hermite(g, {3, 2}).coefficients());
        CHECK(max_diff(h, reference::qi2d_hermite(g, {3, 2})) <= 1e-12);
    }

    TEST_CASE("Franke magnitudes and rates")
    {
        // 1.8e-3 at N = 16 for bicubics
        const double e16 = franke_error(16, 3);
        CHECK(std::abs(e16 / 1.8e-3 - 1.0) <= 0.1);
    }

    // slope over the last three dyadic sizes whose error is above roundoff
    TEST_CASE("Franke rate for bicubics") { CHECK(std::abs(franke_slope(3) - 4.0) <= 0.5); }
    TEST_CASE("Franke rate for biquintics") { CHECK(std::abs(franke_slope(5) - 6.0) <= 0.5); }
}
