#include "hqi/basis.hpp"

#include "hqi/error.hpp"

#include <algorithm>
#include <array>

namespace hqi {

int find_span(std::span<const double> t, int p, double x)
{
    const int n = static_cast<int>(t.size()) - p - 1;
    if(x >= t[n]) {
        int k = n - 1;
        while(k > p && t[k] == t[k + 1])
            --k;
        return k;
    }
    const auto it = std::upper_bound(t.begin() + p, t.begin() + n + 1, x);
    return static_cast<int>(it - t.begin()) - 1;
}

void basis_derivs(std::span<const double> t, int p, int k, double x, int deriv, std::span<double> out)
{
    constexpr int M = kMaxDegree + 2;  // +1 for antiderivatives
    if(deriv > p) {
        std::fill(out.begin(), out.begin() + p + 1, 0.0);
        return;
    }
    // ndu: upper triangle holds basis values of increasing degree,
    // lower triangle the knot differences used by the derivative recurrence
    std::array<std::array<double, M>, M> ndu;
    std::array<double, M> left, right;
    ndu[0][0] = 1.0;
    for(int j = 1; j <= p; ++j) {
        left[j] = x - t[k + 1 - j];
        right[j] = t[k + j] - x;
        double saved = 0.0;
        for(int r = 0; r < j; ++r) {
            ndu[j][r] = right[r + 1] + left[j - r];
            const double temp = ndu[r][j - 1] / ndu[j][r];
            ndu[r][j] = saved + right[r + 1] * temp;
            saved = left[j - r] * temp;
        }
        ndu[j][j] = saved;
    }
    if(deriv == 0) {
        for(int j = 0; j <= p; ++j)
            out[j] = ndu[j][p];
        return;
    }

    std::array<std::array<double, M>, 2> a;
    for(int r = 0; r <= p; ++r) {
        int s1 = 0, s2 = 1;
        a[0][0] = 1.0;
        double d = 0.0;
        for(int kk = 1; kk <= deriv; ++kk) {
            d = 0.0;
            const int rk = r - kk, pk = p - kk;
            if(r >= kk) {
                a[s2][0] = a[s1][0] / ndu[pk + 1][rk];
                d = a[s2][0] * ndu[rk][pk];
            }
            const int j1 = rk >= -1 ? 1 : -rk;
            const int j2 = (r - 1 <= pk) ? kk - 1 : p - r;
            for(int j = j1; j <= j2; ++j) {
                a[s2][j] = (a[s1][j] - a[s1][j - 1]) / ndu[pk + 1][rk + j];
                d += a[s2][j] * ndu[rk + j][pk];
            }
            if(r <= pk) {
                a[s2][kk] = -a[s1][kk - 1] / ndu[pk + 1][r];
                d += a[s2][kk] * ndu[r][pk];
            }
            std::swap(s1, s2);
        }
        out[r] = d;
    }
    double factor = 1.0;
    for(int j = p; j > p - deriv; --j)
        factor *= j;
    for(int j = 0; j <= p; ++j)
        out[j] *= factor;
}

BasisValues basis_eval(const KnotVector& kv, double x, int deriv_order)
{
    require(deriv_order >= 0, "derivative order must be >= 0");
    const double xl = kv.locate(x);
    const int d = kv.degree();
    const int k = find_span(kv.knots(), d, xl);
    BasisValues res;
    res.first = k - d;
    res.values.resize(d + 1);
    basis_derivs(kv.knots(), d, k, xl, deriv_order, res.values);
    return res;
}

}  // namespace hqi
