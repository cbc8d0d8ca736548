#include "hqi/tensor.hpp"

#include "hqi/error.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace hqi {

Tensor::Tensor(std::vector<int> shape, double fill) : shape_(std::move(shape))
{
    require(!shape_.empty() && shape_.size() <= 3, "tensor rank must be 1, 2 or 3");
    size_t n = 1;
    for(int e : shape_) {
        require(e >= 1, "tensor extents must be positive");
        n *= e;
    }
    data_.assign(n, fill);
}

Tensor::Tensor(std::vector<int> shape, std::vector<double> data) : Tensor(std::move(shape))
{
    require(data.size() == data_.size(), "tensor data size " + std::to_string(data.size())
                                             + " does not match its shape (" + std::to_string(data_.size()) + ")");
    data_ = std::move(data);
}

long Tensor::stride(int mode) const
{
    long s = 1;
    for(int m = 0; m < mode; ++m)
        s *= shape_[m];
    return s;
}

Tensor n_mode_product(const Tensor& x, const Eigen::MatrixXd& a, int mode)
{
    require(mode >= 0 && mode < x.rank(), "n-mode product: mode out of range");
    require(a.cols() == x.extent(mode), "n-mode product: matrix has " + std::to_string(a.cols())
                                            + " columns, tensor extent is " + std::to_string(x.extent(mode)));
    auto shape = x.shape();
    shape[mode] = static_cast<int>(a.rows());
    Tensor y(shape);
    const long inner = x.stride(mode);
    const long outer = static_cast<long>(x.size()) / (inner * x.extent(mode));
    const long n = x.extent(mode), r = a.rows();
    for(long o = 0; o < outer; ++o)
        for(long i = 0; i < r; ++i)
            for(long j = 0; j < inner; ++j) {
                double s = 0.0;
                for(long k = 0; k < n; ++k)
                    s += a(i, k) * x.data()[j + inner * (k + n * o)];
                y.data()[j + inner * (i + r * o)] = s;
            }
    return y;
}

namespace {

constexpr long kBlock = 32;

// Runs line(in0, in1, out, scratch) on every mode line; inputs and outputs are
// contiguous. Mode-0 lines are used in place; lines along other modes are
// gathered in blocks of kBlock into a line-major buffer and scattered back.
using LineFn = std::function<void(const double*, const double*, double*, double*)>;

void for_each_line(const Tensor& in0, const Tensor* in1, Tensor& out, int mode, long scratch_len, Exec exec,
                   const LineFn& line)
{
    const long n_in = in0.extent(mode), n_out = out.extent(mode);
    const long inner = in0.stride(mode);
    const long outer = static_cast<long>(in0.size()) / (inner * n_in);
    const double* a = in0.data();
    const double* b = in1 ? in1->data() : nullptr;
    double* c = out.data();

    if(inner == 1) {
#pragma omp parallel if(exec == Exec::parallel)
        {
            std::vector<double> scratch(std::max(1L, scratch_len));
#pragma omp for schedule(static)
            for(long o = 0; o < outer; ++o)
                line(a + o * n_in, b ? b + o * n_in : nullptr, c + o * n_out, scratch.data());
        }
        return;
    }

    const long blocks = (inner + kBlock - 1) / kBlock;
    const long tasks = outer * blocks;
#pragma omp parallel if(exec == Exec::parallel)
    {
        std::vector<double> buf_a(kBlock * n_in), buf_b(b ? kBlock * n_in : 0), buf_c(kBlock * n_out);
        std::vector<double> scratch(std::max(1L, scratch_len));
#pragma omp for schedule(static)
        for(long t = 0; t < tasks; ++t) {
            const long o = t / blocks, j0 = (t % blocks) * kBlock;
            const long nb = std::min(kBlock, inner - j0);
            const double* sa = a + j0 + inner * n_in * o;
            for(long k = 0; k < n_in; ++k)
                for(long j = 0; j < nb; ++j)
                    buf_a[j * n_in + k] = sa[k * inner + j];
            if(b) {
                const double* sb = b + j0 + inner * n_in * o;
                for(long k = 0; k < n_in; ++k)
                    for(long j = 0; j < nb; ++j)
                        buf_b[j * n_in + k] = sb[k * inner + j];
            }
            for(long j = 0; j < nb; ++j)
                line(&buf_a[j * n_in], b ? &buf_b[j * n_in] : nullptr, &buf_c[j * n_out], scratch.data());
            double* dc = c + j0 + inner * n_out * o;
            for(long k = 0; k < n_out; ++k)
                for(long j = 0; j < nb; ++j)
                    dc[k * inner + j] = buf_c[j * n_out + k];
        }
    }
}

Tensor output_like(const Tensor& f, int mode, int extent)
{
    auto shape = f.shape();
    shape[mode] = extent;
    return Tensor(shape);
}

void check_mode(const Tensor& f, int mode, int expected, const char* what)
{
    require(mode >= 0 && mode < f.rank(), std::string(what) + ": mode out of range");
    require(f.extent(mode) == expected, std::string(what) + ": tensor extent " + std::to_string(f.extent(mode))
                                            + " along mode " + std::to_string(mode) + ", operator expects "
                                            + std::to_string(expected));
}

}  // namespace

Tensor apply_approx(const Tensor& f, const AxisOperator& op, int mode, Exec exec)
{
    check_mode(f, mode, op.data_size(), "approximate quasi-interpolation");
    require(op.fd() != nullptr, "approximate quasi-interpolation needs a finite difference order");
    Tensor out = output_like(f, mode, op.coef_size());
    for_each_line(f, nullptr, out, mode, op.data_size(), exec,
                  [&](const double* x, const double*, double* c, double* s) { op.approx_line(x, 1, c, 1, s); });
    return out;
}

Tensor apply_hermite(const Tensor& f, const Tensor& fp, const AxisOperator& op, int mode, Exec exec)
{
    check_mode(f, mode, op.data_size(), "Hermite quasi-interpolation");
    require(fp.shape() == f.shape(), "Hermite quasi-interpolation: derivative grid shape differs from values");
    Tensor out = output_like(f, mode, op.coef_size());
    for_each_line(f, &fp, out, mode, 0, exec, [&](const double* x, const double* xp, double* c, double*) {
        op.hermite_line(x, 1, xp, 1, c, 1);
    });
    return out;
}

Tensor apply_fd(const Tensor& f, const FDOperator& op, int mode, Exec exec)
{
    check_mode(f, mode, op.size(), "finite differences");
    Tensor out = output_like(f, mode, op.size());
    for_each_line(f, nullptr, out, mode, 0, exec,
                  [&](const double* x, const double*, double* y, double*) { op.apply(x, 1, y, 1); });
    return out;
}

}  // namespace hqi
