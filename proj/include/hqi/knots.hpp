#pragma once

#include <span>
#include <vector>

namespace hqi {

/// Highest supported spline degree. Evaluation uses fixed-size scratch tables.
inline constexpr int kMaxDegree = 15;

/**
 * Extended knot vector of a degree-d spline space on breakpoints x_0 < ... < x_N.
 *
 * The extended sequence has N + 2d + 1 entries with the breakpoints stored at
 * positions d..d+N. Non-periodic vectors are clamped (d extra copies of each
 * endpoint). Periodic vectors continue the breakpoints by translates of the
 * period T = x_N - x_0, so the space has N distinct basis functions and the
 * N + d B-splines over the extended sequence wrap onto them cyclically.
 *
 * Basis numbering is 0-based: B-spline i is supported on [knots[i], knots[i+d+1]].
 * In the classical -d..N-1 numbering this is B_{i-d}.
 */
class KnotVector {
public:
    KnotVector() = default;
    KnotVector(int degree, std::vector<double> breakpoints, bool periodic = false);

    int degree() const { return degree_; }
    bool periodic() const { return periodic_; }
    /// Number of breakpoint intervals N.
    int intervals() const { return static_cast<int>(breaks_.size()) - 1; }
    std::span<const double> breakpoints() const { return breaks_; }
    std::span<const double> knots() const { return knots_; }

    /// B-splines over the extended sequence, N + d.
    int num_basis() const { return intervals() + degree_; }
    /// Independent coefficients: N + d, or N when periodic.
    int num_coefficients() const { return periodic_ ? intervals() : num_basis(); }
    /// Maps an extended basis index onto its coefficient slot.
    int coefficient_index(int basis_index) const
    {
        return periodic_ ? basis_index % intervals() : basis_index;
    }

    double lower() const { return breaks_.front(); }
    double upper() const { return breaks_.back(); }
    double period() const { return upper() - lower(); }
    /// h_i = x_i - x_{i-1}, i = 1..N.
    double step(int i) const { return breaks_[i] - breaks_[i - 1]; }
    /// True when all steps agree to 1e-12 relative.
    bool uniform() const { return uniform_; }

    /// Breakpoint x_i continued periodically for any integer i (periodic vectors only).
    double periodic_break(long i) const;

    /// Brings x into [a, b]: identity when already inside; periodic vectors wrap,
    /// non-periodic vectors throw ConstraintError.
    double locate(double x) const;

    /// Index k with knots[k] <= x < knots[k+1], the last span closed at b.
    /// Throws ConstraintError when x (after periodic wrapping) is outside [a, b].
    int find_span(double x) const;

private:
    int degree_ = 0;
    bool periodic_ = false;
    bool uniform_ = false;
    std::vector<double> breaks_;
    std::vector<double> knots_;
};

/// Builds the clamped (or periodic) extended knot vector.
KnotVector make_knots(int degree, std::span<const double> breakpoints, bool periodic = false);

/// N + 1 equally spaced breakpoints on [a, b].
std::vector<double> linspace(double a, double b, int count);

}  // namespace hqi
