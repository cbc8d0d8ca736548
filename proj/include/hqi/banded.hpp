#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <span>
#include <vector>

namespace hqi {

/**
 * Row-banded matrix: row r stores `width` consecutive entries starting at
 * column first(r). A cyclic matrix resolves columns modulo cols(), so a row
 * may wrap past either end.
 */
class BandedMatrix {
public:
    BandedMatrix() = default;
    BandedMatrix(int rows, int cols, int width, bool cyclic = false)
        : rows_(rows), cols_(cols), width_(width), cyclic_(cyclic),
          first_(rows, 0), w_(static_cast<size_t>(rows) * width, 0.0)
    {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    int width() const { return width_; }
    bool cyclic() const { return cyclic_; }

    long first(int r) const { return first_[r]; }
    void set_first(int r, long c) { first_[r] = c; }
    std::span<double> row(int r) { return {&w_[static_cast<size_t>(r) * width_], static_cast<size_t>(width_)}; }
    std::span<const double> row(int r) const
    {
        return {&w_[static_cast<size_t>(r) * width_], static_cast<size_t>(width_)};
    }
    /// Resolved column of entry k in row r.
    int column(int r, int k) const
    {
        long c = first_[r] + k;
        if(cyclic_) {
            c %= cols_;
            if(c < 0)
                c += cols_;
        }
        return static_cast<int>(c);
    }

    /// y = A x on strided vectors.
    void apply(const double* x, std::ptrdiff_t xs, double* y, std::ptrdiff_t ys) const
    {
        for(int r = 0; r < rows_; ++r) {
            const double* w = &w_[static_cast<size_t>(r) * width_];
            double s = 0.0;
            if(!cyclic_ || (first_[r] >= 0 && first_[r] + width_ <= cols_)) {
                const double* xr = x + first_[r] * xs;
                for(int k = 0; k < width_; ++k)
                    s += w[k] * xr[k * xs];
            } else {
                for(int k = 0; k < width_; ++k)
                    s += w[k] * x[column(r, k) * xs];
            }
            y[r * ys] = s;
        }
    }

    Eigen::MatrixXd dense() const
    {
        Eigen::MatrixXd m = Eigen::MatrixXd::Zero(rows_, cols_);
        for(int r = 0; r < rows_; ++r)
            for(int k = 0; k < width_; ++k)
                m(r, column(r, k)) += w_[static_cast<size_t>(r) * width_ + k];
        return m;
    }

private:
    int rows_ = 0, cols_ = 0, width_ = 0;
    bool cyclic_ = false;
    std::vector<long> first_;
    std::vector<double> w_;
};

}  // namespace hqi
