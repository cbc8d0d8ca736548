#pragma once

#include "hqi/qi_tensor.hpp"

#include <Eigen/Dense>

// Serial dense formulations of the tensor fits. They assemble the full
// operator matrices and are meant for tests and benchmarks only.
namespace hqi::reference {

/// W = Â - ĤB̂Γ for one axis, (N + d) x (N + 1).
Eigen::MatrixXd approx_matrix(const AxisOperator& op);

/// C = W_x F W_y^T, returned x-fastest.
std::vector<double> qi2d_approx(const GridSample2D& g, std::array<int, 2> degrees, std::array<int, 2> orders);

/// C = (Â_x F - ĤB̂_x F_x) Â_y^T - (Â_x F_y - ĤB̂_x F_xy) ĤB̂_y^T.
std::vector<double> qi2d_hermite(const GridSample2D& g, std::array<int, 2> degrees);

/// D' from the data: F_y = F Γ_y^T, then x-fits of (F_y, Γ_x F_y); finally y-fits of (D, D').
std::vector<double> qi2d_approx_full_path(const GridSample2D& g, std::array<int, 2> degrees,
                                          std::array<int, 2> orders);

/// y-fits first, then x-fits.
std::vector<double> qi2d_approx_y_first(const GridSample2D& g, std::array<int, 2> degrees, std::array<int, 2> orders);

/// Nested loops of 1D qi_approx along x, then y, then z.
std::vector<double> qi3d_nested(const GridSample3D& g, std::array<int, 3> degrees, std::array<int, 3> orders);

}  // namespace hqi::reference
