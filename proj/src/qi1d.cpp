#include "hqi/qi1d.hpp"

#include "hqi/basis.hpp"
#include "hqi/error.hpp"

#include <algorithm>
#include <cmath>

namespace hqi {

namespace {

int default_k(int d) { return (d + 1) / 2; }

// Extended knot tau_k (k may run past either end; clamped vectors repeat the endpoint).
double extended_knot(const KnotVector& kv, long k)
{
    const int d = kv.degree();
    if(kv.periodic())
        return kv.periodic_break(k - d);
    const auto t = kv.knots();
    return t[std::clamp<long>(k, 0, static_cast<long>(t.size()) - 1)];
}

long window_start(const KnotVector& kv, int i)
{
    const int d = kv.degree(), N = kv.intervals();
    if(kv.periodic())
        return i - d + 1;
    return std::clamp(i - d + 1, 0, N - d + 1);
}

double hhat_for(const KnotVector& kv, int i, int k1, int k2)
{
    const int d = kv.degree(), N = kv.intervals();
    const int ii = i + 1;  // 1-based coefficient index
    long step;
    if(kv.periodic())
        step = k1 + ii - d;
    else if(ii <= d)
        step = k1;
    else if(ii <= N)
        step = k1 + ii - d;
    else
        step = N - k2;
    if(kv.periodic()) {
        // h_i = x_i - x_{i-1} continued periodically
        return kv.periodic_break(step) - kv.periodic_break(step - 1);
    }
    step = std::clamp<long>(step, 1, N);
    return kv.step(static_cast<int>(step));
}

void check_periodic_size(const KnotVector& kv)
{
    if(kv.periodic())
        require(kv.intervals() >= 2 * kv.degree() - 1,
                "periodic quasi-interpolation needs N >= 2d - 1 (N = " + std::to_string(kv.intervals())
                    + ", d = " + std::to_string(kv.degree()) + ")");
}

}  // namespace

std::vector<double> LocalWeights::beta() const
{
    std::vector<double> b(w.size());
    for(size_t k = 0; k < w.size(); ++k)
        b[k] = w[k] / hhat;
    return b;
}

LocalWeights local_weights(const KnotVector& kv, int i, QIOptions opts)
{
    const int d = kv.degree();
    require(i >= 0 && i < kv.num_coefficients(), "coefficient index out of range");
    check_periodic_size(kv);
    const int k1 = opts.k1 > 0 ? opts.k1 : default_k(d);
    const int k2 = opts.k2 > 0 ? opts.k2 : default_k(d);
    require(k1 <= d && k2 <= d, "k1 and k2 must not exceed the degree");

    LocalWeights lw;
    lw.first_node = window_start(kv, i);
    lw.hhat = hhat_for(kv, i, k1, k2);
    if(d == 1) {
        // hat functions: the coefficient is the nodal value
        lw.alpha = {1.0};
        lw.w = {0.0};
        return lw;
    }

    const long s = lw.first_node;
    // local knots tau_{s..s+3d}: B-splines s..s+2d-2 live on the window x_s..x_{s+d-1}
    std::vector<double> lt(3 * d + 1);
    for(int k = 0; k <= 3 * d; ++k)
        lt[k] = extended_knot(kv, s + k);
    const double L = lt[2 * d - 1] - lt[d];
    const int nb = 2 * d - 1;

    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(2 * d, nb);
    std::array<double, kMaxDegree + 2> val, der;
    for(int q = 0; q < d; ++q) {
        const double x = lt[d + q];
        const int k = find_span(std::span<const double>(lt).first(2 * d + 1 + d), d, x);
        basis_derivs(lt, d, k, x, 0, val);
        basis_derivs(lt, d, k, x, 1, der);
        for(int r = 0; r <= d; ++r) {
            const int m = k - d + r;
            if(m < 0 || m >= nb)
                continue;
            M(q, m) = val[r];
            M(d + q, m) = -L * der[r];
        }
    }

    // closing row: orthogonal complement of the column space of M
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(M);
    const Eigen::MatrixXd Q = qr.householderQ();
    Eigen::MatrixXd S(2 * d, 2 * d);
    S.topRows(nb) = M.transpose();
    S.row(nb) = Q.col(2 * d - 1).transpose();
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(2 * d);
    rhs(i - s) = 1.0;
    const Eigen::VectorXd lambda = S.partialPivLu().solve(rhs);
    if(!lambda.allFinite() || (S * lambda - rhs).norm() > 1e-8)
        throw ConstraintError("singular local quasi-interpolation system (degenerate knot geometry)");

    lw.alpha.resize(d);
    lw.w.resize(d);
    for(int q = 0; q < d; ++q) {
        lw.alpha[q] = lambda(q);
        lw.w[q] = lambda(d + q) * L;
    }
    return lw;
}

// ------- QIWeights ------- //

QIWeights::QIWeights(const KnotVector& kv, QIOptions opts) : degree_(kv.degree())
{
    check_periodic_size(kv);
    const int d = degree_;
    k1_ = opts.k1 > 0 ? opts.k1 : default_k(d);
    k2_ = opts.k2 > 0 ? opts.k2 : default_k(d);
    const int n = kv.num_coefficients();
    const int m = kv.periodic() ? kv.intervals() : kv.intervals() + 1;
    alpha_ = BandedMatrix(n, m, d, kv.periodic());
    hb_ = BandedMatrix(n, m, d, kv.periodic());
    hhat_.resize(n);

    // on uniform meshes every window clear of the clamped ends has the same weights
    const int N = kv.intervals();
    auto cacheable = [&](int i) {
        if(!kv.uniform())
            return false;
        if(kv.periodic())
            return true;
        const long s = window_start(kv, i);
        return s >= d && s <= N - 2 * d;
    };
    std::optional<LocalWeights> cached;
    for(int i = 0; i < n; ++i) {
        LocalWeights lw;
        if(cacheable(i) && cached) {
            lw = *cached;
            lw.first_node = window_start(kv, i);
            lw.hhat = hhat_for(kv, i, k1_, k2_);
        } else {
            lw = local_weights(kv, i, opts);
            if(cacheable(i))
                cached = lw;
        }
        alpha_.set_first(i, lw.first_node);
        hb_.set_first(i, lw.first_node);
        std::copy(lw.alpha.begin(), lw.alpha.end(), alpha_.row(i).begin());
        std::copy(lw.w.begin(), lw.w.end(), hb_.row(i).begin());
        hhat_[i] = lw.hhat;
    }
}

Eigen::MatrixXd QIWeights::H_hat() const
{
    return Eigen::VectorXd::Map(hhat_.data(), static_cast<Eigen::Index>(hhat_.size())).asDiagonal();
}

Eigen::MatrixXd QIWeights::B_hat() const
{
    Eigen::MatrixXd b = hb_.dense();
    for(Eigen::Index r = 0; r < b.rows(); ++r)
        b.row(r) /= hhat_[r];
    return b;
}

void QIWeights::apply(const double* f, std::ptrdiff_t fs, const double* fp, std::ptrdiff_t fps, double* c,
                      std::ptrdiff_t cs) const
{
    const int n = size(), d = degree_, m = nodes();
    for(int i = 0; i < n; ++i) {
        const auto a = alpha_.row(i);
        const auto w = hb_.row(i);
        const long s = alpha_.first(i);
        double acc = 0.0;
        if(s >= 0 && s + d <= m) {
            for(int q = 0; q < d; ++q)
                acc += a[q] * f[(s + q) * fs] - w[q] * fp[(s + q) * fps];
        } else {
            for(int q = 0; q < d; ++q) {
                const int col = alpha_.column(i, q);
                acc += a[q] * f[col * fs] - w[q] * fp[col * fps];
            }
        }
        c[i * cs] = acc;
    }
}

// ------- AxisOperator ------- //

std::vector<double> data_nodes(const KnotVector& kv)
{
    const auto b = kv.breakpoints();
    return std::vector<double>(b.begin(), kv.periodic() ? b.end() - 1 : b.end());
}

AxisOperator::AxisOperator(KnotVector kv, int fd_order, QIOptions opts) : kv_(std::move(kv)), qi_(kv_, opts)
{
    require(fd_order >= 0, "finite difference order must be >= 0");
    if(fd_order > 0) {
        const auto nodes = data_nodes(kv_);
        fd_ = build_gamma(nodes, fd_order, kv_.periodic(),
                          kv_.periodic() ? std::optional<double>(kv_.period()) : std::nullopt);
    }
}

void AxisOperator::approx_line(const double* f, std::ptrdiff_t fs, double* c, std::ptrdiff_t cs,
                               double* scratch) const
{
    require(fd_.has_value(), "approximate quasi-interpolation needs a finite difference order");
    fd_->apply(f, fs, scratch, 1);
    qi_.apply(f, fs, scratch, 1, c, cs);
}

Eigen::MatrixXd AxisOperator::dense_approx() const
{
    require(fd_.has_value(), "approximate quasi-interpolation needs a finite difference order");
    return qi_.A_hat() - qi_.derivative_weights().dense() * fd_->matrix().dense();
}

// ------- 1D front-ends ------- //

int default_fd_order(int degree) { return degree % 2 == 1 ? degree + 1 : degree + 2; }

namespace {

// Rows of a periodic or plain data block, validated against the knot vector.
size_t expected_rows(const KnotVector& kv, size_t given, size_t dim, const char* what)
{
    const size_t m = static_cast<size_t>(kv.periodic() ? kv.intervals() : kv.intervals() + 1);
    if(given == m * dim)
        return m;
    if(kv.periodic() && given == (m + 1) * dim)
        return m;  // trailing seam row dropped
    throw ConstraintError(std::string(what) + ": expected " + std::to_string(m * dim) + " entries, got "
                          + std::to_string(given));
}

}  // namespace

SplineCurve qi_hermite(const HermiteData& data, int degree, bool periodic, QIOptions opts)
{
    require(data.dim >= 1, "data dimension must be >= 1");
    require(!data.derivatives.empty(), "Hermite quasi-interpolation needs derivative values");
    KnotVector kv(degree, data.nodes, periodic);
    if(periodic)
        check_periodic_size(kv);
    const size_t p = data.dim;
    expected_rows(kv, data.values.size(), p, "values");
    expected_rows(kv, data.derivatives.size(), p, "derivatives");

    QIWeights qi(kv, opts);
    std::vector<double> c(static_cast<size_t>(qi.size()) * p);
    for(size_t k = 0; k < p; ++k)
        qi.apply(data.values.data() + k, p, data.derivatives.data() + k, p, c.data() + k, p);
    return SplineCurve(std::move(kv), std::move(c), data.dim);
}

SplineCurve qi_approx(std::span<const double> nodes, std::span<const double> values, int degree, int l,
                      bool periodic, int dim)
{
    require(dim >= 1, "data dimension must be >= 1");
    if(l == 0)
        l = degree >= 1 ? default_fd_order(degree) : 1;
    KnotVector kv(degree, std::vector<double>(nodes.begin(), nodes.end()), periodic);
    expected_rows(kv, values.size(), dim, "values");
    AxisOperator op(std::move(kv), l);
    const size_t p = dim;
    std::vector<double> c(static_cast<size_t>(op.coef_size()) * p);
    std::vector<double> scratch(op.data_size());
    for(size_t k = 0; k < p; ++k)
        op.approx_line(values.data() + k, p, c.data() + k, p, scratch.data());
    return SplineCurve(op.knots(), std::move(c), dim);
}

std::vector<double> estimate_order(std::span<const double> errors, std::span<const int> Ns)
{
    require(errors.size() == Ns.size(), "estimate_order: errors and N lists differ in length");
    std::vector<double> out;
    for(size_t k = 0; k + 1 < errors.size(); ++k) {
        require(errors[k] > 0 && errors[k + 1] > 0, "estimate_order: errors must be positive");
        require(Ns[k + 1] > Ns[k], "estimate_order: N must increase");
        out.push_back(std::log(errors[k] / errors[k + 1]) / std::log(static_cast<double>(Ns[k + 1]) / Ns[k]));
    }
    return out;
}

}  // namespace hqi
