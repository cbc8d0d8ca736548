#include "hqi/spline.hpp"

#include "hqi/basis.hpp"
#include "hqi/error.hpp"

#include <algorithm>
#include <array>
#include <string>

namespace hqi {

namespace {

using Scratch = std::array<double, kMaxDegree + 2>;

void check_order(int order)
{
    require(order >= 0, "derivative order must be >= 0");
}

void check_coefficients(size_t got, size_t want, const char* what)
{
    if(got != want)
        throw ConstraintError(std::string(what) + ": expected " + std::to_string(want)
                              + " coefficients, got " + std::to_string(got));
}

}  // namespace

// ------- SplineCurve ------- //

SplineCurve::SplineCurve(KnotVector kv, std::vector<double> coefficients, int dim)
    : kv_(std::move(kv)), coef_(std::move(coefficients)), dim_(dim)
{
    require(dim_ >= 1, "curve dimension must be >= 1");
    check_coefficients(coef_.size(), static_cast<size_t>(kv_.num_coefficients()) * dim_, "SplineCurve");
}

void SplineCurve::eval(double x, int deriv, std::span<double> out) const
{
    check_order(deriv);
    const double xl = kv_.locate(x);
    const int d = kv_.degree();
    const int k = find_span(kv_.knots(), d, xl);
    Scratch b;
    basis_derivs(kv_.knots(), d, k, xl, deriv, b);
    std::fill(out.begin(), out.begin() + dim_, 0.0);
    for(int j = 0; j <= d; ++j) {
        const double* c = &coef_[static_cast<size_t>(kv_.coefficient_index(k - d + j)) * dim_];
        for(int m = 0; m < dim_; ++m)
            out[m] += b[j] * c[m];
    }
}

std::vector<double> SplineCurve::eval(double x, int deriv) const
{
    std::vector<double> out(dim_);
    eval(x, deriv, out);
    return out;
}

double SplineCurve::operator()(double x, int deriv) const
{
    require(dim_ == 1, "scalar evaluation of a vector-valued curve");
    double v;
    eval(x, deriv, std::span<double>(&v, 1));
    return v;
}

std::vector<double> SplineCurve::integral(double x0, double x1) const
{
    const double a = kv_.lower(), b = kv_.upper();
    require(x0 >= a && x0 <= b && x1 >= a && x1 <= b, "integration limits outside the spline domain");
    const int d = kv_.degree();
    const auto t = kv_.knots();
    const int n = kv_.num_basis();

    // antiderivative: degree d+1 on [t_0, t, t_last], C_k = sum_{i<k} c_i (t_{i+d+1} - t_i) / (d+1)
    std::vector<double> tt(t.size() + 2);
    tt.front() = t.front();
    std::copy(t.begin(), t.end(), tt.begin() + 1);
    tt.back() = t.back();
    std::vector<double> C(static_cast<size_t>(n + 1) * dim_, 0.0);
    for(int k = 1; k <= n; ++k) {
        const int i = k - 1;
        const double scale = (t[i + d + 1] - t[i]) / (d + 1);
        const double* c = &coef_[static_cast<size_t>(kv_.coefficient_index(i)) * dim_];
        for(int m = 0; m < dim_; ++m)
            C[k * dim_ + m] = C[(k - 1) * dim_ + m] + scale * c[m];
    }

    auto antiderivative = [&](double x, std::vector<double>& out) {
        const int k = find_span(tt, d + 1, x);
        Scratch bv;
        basis_derivs(tt, d + 1, k, x, 0, bv);
        for(int j = 0; j <= d + 1; ++j)
            for(int m = 0; m < dim_; ++m)
                out[m] += bv[j] * C[static_cast<size_t>(k - d - 1 + j) * dim_ + m];
    };
    std::vector<double> s0(dim_, 0.0), s1(dim_, 0.0);
    antiderivative(x0, s0);
    antiderivative(x1, s1);
    for(int m = 0; m < dim_; ++m)
        s1[m] -= s0[m];
    return s1;
}

// ------- SplineSurface ------- //

SplineSurface::SplineSurface(KnotVector kx, KnotVector ky, std::vector<double> coefficients)
    : kx_(std::move(kx)), ky_(std::move(ky)), coef_(std::move(coefficients))
{
    check_coefficients(coef_.size(),
                       static_cast<size_t>(kx_.num_coefficients()) * ky_.num_coefficients(),
                       "SplineSurface");
}

double SplineSurface::eval(double x, double y, int dx, int dy) const
{
    check_order(dx);
    check_order(dy);
    const double xl = kx_.locate(x), yl = ky_.locate(y);
    const int px = kx_.degree(), py = ky_.degree();
    const int kx = find_span(kx_.knots(), px, xl);
    const int ky = find_span(ky_.knots(), py, yl);
    Scratch bx, by;
    basis_derivs(kx_.knots(), px, kx, xl, dx, bx);
    basis_derivs(ky_.knots(), py, ky, yl, dy, by);
    const size_t n1 = kx_.num_coefficients();
    std::array<size_t, kMaxDegree + 1> col;
    for(int i = 0; i <= px; ++i)
        col[i] = kx_.coefficient_index(kx - px + i);
    double s = 0.0;
    for(int j = 0; j <= py; ++j) {
        const double* row = &coef_[n1 * ky_.coefficient_index(ky - py + j)];
        double r = 0.0;
        for(int i = 0; i <= px; ++i)
            r += bx[i] * row[col[i]];
        s += by[j] * r;
    }
    return s;
}

// ------- SplineVolume ------- //

SplineVolume::SplineVolume(KnotVector kx, KnotVector ky, KnotVector kz, std::vector<double> coefficients)
    : k_{std::move(kx), std::move(ky), std::move(kz)}, coef_(std::move(coefficients))
{
    const auto s = shape();
    check_coefficients(coef_.size(), static_cast<size_t>(s[0]) * s[1] * s[2], "SplineVolume");
}

double SplineVolume::eval(double x, double y, double z, std::array<int, 3> orders) const
{
    const std::array<double, 3> pt{x, y, z};
    std::array<Scratch, 3> b;
    std::array<std::array<size_t, kMaxDegree + 1>, 3> idx;
    for(int a = 0; a < 3; ++a) {
        check_order(orders[a]);
        const double xl = k_[a].locate(pt[a]);
        const int p = k_[a].degree();
        const int k = find_span(k_[a].knots(), p, xl);
        basis_derivs(k_[a].knots(), p, k, xl, orders[a], b[a]);
        for(int i = 0; i <= p; ++i)
            idx[a][i] = k_[a].coefficient_index(k - p + i);
    }
    const auto s = shape();
    const size_t n1 = s[0], n12 = static_cast<size_t>(s[0]) * s[1];
    const int p0 = k_[0].degree(), p1 = k_[1].degree(), p2 = k_[2].degree();
    double v = 0.0;
    for(int r = 0; r <= p2; ++r) {
        double vq = 0.0;
        for(int q = 0; q <= p1; ++q) {
            const double* line = &coef_[n12 * idx[2][r] + n1 * idx[1][q]];
            double vp = 0.0;
            for(int p = 0; p <= p0; ++p)
                vp += b[0][p] * line[idx[0][p]];
            vq += b[1][q] * vp;
        }
        v += b[2][r] * vq;
    }
    return v;
}

}  // namespace hqi
