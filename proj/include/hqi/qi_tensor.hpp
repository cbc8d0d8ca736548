#pragma once

#include "hqi/spline.hpp"
#include "hqi/tensor.hpp"

#include <array>
#include <vector>

namespace hqi {

/**
 * Samples on a rectilinear grid. values(i, j) = f(x_i, y_j), x index fastest.
 * A periodic axis lists the samples of one period without the seam duplicate
 * and sets its period; non-periodic axes list x_0..x_N.
 */
struct GridSample2D {
    std::array<std::vector<double>, 2> axes;
    std::array<bool, 2> periodic{false, false};
    std::array<double, 2> period{0.0, 0.0};
    std::vector<double> values;
    /// Hermite path only: all three present or all empty.
    std::vector<double> fx, fy, fxy;

    std::array<int, 2> shape() const
    {
        return {static_cast<int>(axes[0].size()), static_cast<int>(axes[1].size())};
    }
};

struct GridSample3D {
    std::array<std::vector<double>, 3> axes;
    std::array<bool, 3> periodic{false, false, false};
    std::array<double, 3> period{0.0, 0.0, 0.0};
    std::vector<double> values;

    std::array<int, 3> shape() const
    {
        return {static_cast<int>(axes[0].size()), static_cast<int>(axes[1].size()),
                static_cast<int>(axes[2].size())};
    }
};

/// Knot vector for one sampled axis (periodic axes append the seam x_0 + T).
KnotVector axis_knots(const std::vector<double>& nodes, int degree, bool periodic, double period);

/// x-fits of (F, F_x) and (F_y, F_xy), then y-fits of (D, D').
SplineSurface qi2d_hermite(const GridSample2D& g, std::array<int, 2> degrees, Exec exec = Exec::parallel);

/**
 * C = (Â_x - Ĥ_xB̂_xΓ_x) F (Â_y - Ĥ_yB̂_yΓ_y)^T. The x-fits give D; the y-fits
 * differentiate D along y, i.e. D' = D Γ_y^T, instead of differentiating F.
 * An order of 0 selects the default for the axis degree.
 */
SplineSurface qi2d_approx(const GridSample2D& g, std::array<int, 2> degrees, std::array<int, 2> orders = {0, 0},
                          Exec exec = Exec::parallel);

/// C = F x_1 W_x x_2 W_y x_3 W_z with W = Â - ĤB̂Γ per axis.
SplineVolume qi3d_approx(const GridSample3D& g, std::array<int, 3> degrees, std::array<int, 3> orders = {0, 0, 0},
                         Exec exec = Exec::parallel);

/**
 * Surface over polar data f(rho, theta): periodic in theta with period T.
 * The theta samples must lie inside one period starting at theta_0.
 */
SplineSurface qi2d_polar(GridSample2D g, std::array<int, 2> degrees, std::array<int, 2> orders, double period,
                         Exec exec = Exec::parallel);

}  // namespace hqi
