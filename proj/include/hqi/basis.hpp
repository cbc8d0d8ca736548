#pragma once

#include "hqi/knots.hpp"

#include <span>
#include <vector>

namespace hqi {

// ------- routines on a raw, non-decreasing knot array ------- //
//
// A degree-p array t of length n + p + 1 defines n B-splines; the evaluation
// domain is [t[p], t[n]].

/// Span index k in [p, n-1] with t[k] <= x < t[k+1]; x == t[n] maps to the last
/// non-empty span. x is assumed to be inside the domain.
int find_span(std::span<const double> t, int p, double x);

/**
 * Computes the deriv-th derivative of the p+1 B-splines that are non-zero on
 * span k at x, i.e. B_{k-p}, ..., B_k, via the Cox-de Boor triangle and the
 * standard derivative recurrence. out must hold p+1 entries. Derivatives of
 * order > p are zero.
 */
void basis_derivs(std::span<const double> t, int p, int k, double x, int deriv, std::span<double> out);

// ------- KnotVector front-end ------- //

struct BasisValues {
    /// Extended index of the first active B-spline (periodic: before wrapping).
    int first = 0;
    std::vector<double> values;
};

/// The d+1 non-zero B-splines (or their derivatives) at x. Throws
/// ConstraintError when x lies outside [a, b] of a non-periodic vector.
BasisValues basis_eval(const KnotVector& kv, double x, int deriv_order = 0);

}  // namespace hqi
