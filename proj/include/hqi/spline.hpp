#pragma once

#include "hqi/knots.hpp"

#include <array>
#include <span>
#include <vector>

namespace hqi {

/**
 * Vector-valued spline curve s(x) = sum_i c_i B_i(x) with c_i in R^p.
 *
 * Coefficients are stored row-major, one row of p components per basis
 * function: c[i * p + k]. There are kv.num_coefficients() rows.
 */
class SplineCurve {
public:
    SplineCurve() = default;
    SplineCurve(KnotVector kv, std::vector<double> coefficients, int dim = 1);

    const KnotVector& knots() const { return kv_; }
    int dim() const { return dim_; }
    int size() const { return kv_.num_coefficients(); }
    std::span<const double> coefficients() const { return coef_; }
    double coefficient(int i, int k = 0) const { return coef_[static_cast<size_t>(i) * dim_ + k]; }

    /// s^(deriv)(x), one value per component.
    std::vector<double> eval(double x, int deriv = 0) const;
    void eval(double x, int deriv, std::span<double> out) const;
    /// Scalar shortcut for dim() == 1.
    double operator()(double x, int deriv = 0) const;

    /// Exact integral of each component over [x0, x1] (both inside [a, b]).
    std::vector<double> integral(double x0, double x1) const;

private:
    KnotVector kv_;
    std::vector<double> coef_;
    int dim_ = 1;
};

/// Tensor-product surface. Coefficient (p, q) lives at c[p + n1 * q] (x index fastest).
class SplineSurface {
public:
    SplineSurface() = default;
    SplineSurface(KnotVector kx, KnotVector ky, std::vector<double> coefficients);

    const KnotVector& knots(int axis) const { return axis == 0 ? kx_ : ky_; }
    std::array<int, 2> shape() const { return {kx_.num_coefficients(), ky_.num_coefficients()}; }
    std::span<const double> coefficients() const { return coef_; }
    double coefficient(int p, int q) const { return coef_[p + static_cast<size_t>(shape()[0]) * q]; }

    double eval(double x, double y, int dx = 0, int dy = 0) const;

private:
    KnotVector kx_, ky_;
    std::vector<double> coef_;
};

/// Tensor-product volume. Coefficient (p, q, r) lives at c[p + n1 * (q + n2 * r)].
class SplineVolume {
public:
    SplineVolume() = default;
    SplineVolume(KnotVector kx, KnotVector ky, KnotVector kz, std::vector<double> coefficients);

    const KnotVector& knots(int axis) const { return k_[axis]; }
    std::array<int, 3> shape() const
    {
        return {k_[0].num_coefficients(), k_[1].num_coefficients(), k_[2].num_coefficients()};
    }
    std::span<const double> coefficients() const { return coef_; }

    double eval(double x, double y, double z, std::array<int, 3> orders = {0, 0, 0}) const;

private:
    std::array<KnotVector, 3> k_;
    std::vector<double> coef_;
};

}  // namespace hqi
