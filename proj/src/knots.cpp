#include "hqi/knots.hpp"

#include "hqi/basis.hpp"
#include "hqi/error.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace hqi {

namespace {

bool is_uniform(const std::vector<double>& x)
{
    const int n = static_cast<int>(x.size()) - 1;
    const double h = (x.back() - x.front()) / n;
    for(int i = 1; i <= n; ++i)
        if(std::abs((x[i] - x[i - 1]) - h) > 1e-12 * h)
            return false;
    return true;
}

}  // namespace

KnotVector::KnotVector(int degree, std::vector<double> breakpoints, bool periodic)
    : degree_(degree), periodic_(periodic), breaks_(std::move(breakpoints))
{
    require(degree_ >= 1, "degree must be >= 1");
    require(degree_ <= kMaxDegree, "degree must be <= " + std::to_string(kMaxDegree));
    require(breaks_.size() >= 2, "at least two breakpoints are required");
    for(size_t i = 0; i < breaks_.size(); ++i) {
        require(std::isfinite(breaks_[i]), "breakpoints must be finite");
        if(i > 0)
            require(breaks_[i] > breaks_[i - 1], "breakpoints must be strictly increasing");
    }
    const int n = intervals();
    if(!periodic_)
        require(n >= degree_, "too few breakpoints: need N >= degree (N = "
                + std::to_string(n) + ", degree = " + std::to_string(degree_) + ")");
    uniform_ = is_uniform(breaks_);

    knots_.resize(n + 2 * degree_ + 1);
    for(int i = -degree_; i <= n + degree_; ++i) {
        double t;
        if(i >= 0 && i <= n)
            t = breaks_[i];
        else if(periodic_)
            t = periodic_break(i);
        else
            t = i < 0 ? breaks_.front() : breaks_.back();
        knots_[i + degree_] = t;
    }
}

double KnotVector::periodic_break(long i) const
{
    const long n = intervals();
    long q = i / n, r = i % n;
    if(r < 0) {
        r += n;
        --q;
    }
    if(q == 0)
        return breaks_[r];
    // x_r + q T, anchored at the nearer end to keep rounding symmetric
    return q > 0 ? breaks_[r] + q * period() : breaks_[r] - (-q) * period();
}

double KnotVector::locate(double x) const
{
    const double a = lower(), b = upper();
    if(x >= a && x <= b)
        return x;
    if(periodic_ && std::isfinite(x)) {
        const double T = b - a;
        double y = a + std::fmod(x - a, T);
        if(y < a)
            y += T;
        if(y >= b)
            y = a;
        return y;
    }
    std::ostringstream os;
    os.precision(17);
    os << "evaluation point " << x << " outside the spline domain [" << a << ", " << b << "]";
    throw ConstraintError(os.str());
}

int KnotVector::find_span(double x) const
{
    return hqi::find_span(knots_, degree_, locate(x));
}

KnotVector make_knots(int degree, std::span<const double> breakpoints, bool periodic)
{
    return KnotVector(degree, std::vector<double>(breakpoints.begin(), breakpoints.end()), periodic);
}

std::vector<double> linspace(double a, double b, int count)
{
    require(count >= 2, "linspace needs at least two points");
    std::vector<double> x(count);
    const int n = count - 1;
    for(int i = 0; i <= n; ++i)
        x[i] = i == n ? b : a + (b - a) * (static_cast<double>(i) / n);
    return x;
}

}  // namespace hqi
