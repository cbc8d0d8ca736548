#pragma once

#include "hqi/qi1d.hpp"

#include <Eigen/Dense>

#include <vector>

namespace hqi {

/// Execution policy for the per-line kernels. Both produce identical bits.
enum class Exec { serial, parallel };

/// Dense tensor of rank 1..3, first index fastest.
class Tensor {
public:
    Tensor() = default;
    explicit Tensor(std::vector<int> shape, double fill = 0.0);
    Tensor(std::vector<int> shape, std::vector<double> data);

    int rank() const { return static_cast<int>(shape_.size()); }
    int extent(int mode) const { return shape_[mode]; }
    const std::vector<int>& shape() const { return shape_; }
    size_t size() const { return data_.size(); }
    /// Distance between neighbours along `mode`.
    long stride(int mode) const;

    double* data() { return data_.data(); }
    const double* data() const { return data_.data(); }
    std::vector<double>& values() { return data_; }
    const std::vector<double>& values() const { return data_; }

    double& operator()(int i, int j = 0, int k = 0) { return data_[index(i, j, k)]; }
    double operator()(int i, int j = 0, int k = 0) const { return data_[index(i, j, k)]; }

private:
    size_t index(int i, int j, int k) const
    {
        const size_t n0 = shape_[0], n1 = rank() > 1 ? shape_[1] : 1;
        return i + n0 * (j + n1 * static_cast<size_t>(k));
    }

    std::vector<int> shape_;
    std::vector<double> data_;
};

/// Y = X x_mode A: the mode unfolding is multiplied by A (dense, straightforward loops).
Tensor n_mode_product(const Tensor& x, const Eigen::MatrixXd& a, int mode);

/// Approximate-derivative QI along one mode: every line f becomes (Â - ĤB̂Γ) f.
Tensor apply_approx(const Tensor& f, const AxisOperator& op, int mode, Exec exec = Exec::parallel);

/// Hermite QI along one mode: every line pair (f, f') becomes Â f - ĤB̂ f'.
Tensor apply_hermite(const Tensor& f, const Tensor& fp, const AxisOperator& op, int mode,
                     Exec exec = Exec::parallel);

/// Γ along one mode.
Tensor apply_fd(const Tensor& f, const FDOperator& op, int mode, Exec exec = Exec::parallel);

}  // namespace hqi
