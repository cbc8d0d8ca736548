#pragma once

#include "hqi/spline.hpp"

#include <string>
#include <variant>
#include <vector>

namespace hqi {

using AnySpline = std::variant<SplineCurve, SplineSurface, SplineVolume>;

/// Number of independent variables: 1, 2 or 3.
int domain_dim(const AnySpline& s);
/// Components per evaluation (curves may be vector valued).
int value_dim(const AnySpline& s);
const KnotVector& axis_knots_of(const AnySpline& s, int axis);

/// Evaluates at one point with per-axis derivative orders; out holds value_dim() entries.
void evaluate(const AnySpline& s, std::span<const double> point, std::span<const int> orders, std::span<double> out);

/**
 * JSON form:
 *   {"format_version": 1, "degrees": [...], "knots": [[...], ...], "periodic": [...],
 *    "shape": [...], "coefficients": [...]}
 * knots are the extended sequences; coefficients are flattened row-major
 * (last index fastest). Curves use shape [n, p]. Doubles are printed in
 * shortest round-trip form, so a write/read cycle is exact.
 */
std::string to_json(const AnySpline& s);
/// Throws ParseError on malformed input.
AnySpline from_json(const std::string& text);

void write_spline(const std::string& path, const AnySpline& s);
AnySpline read_spline(const std::string& path);

}  // namespace hqi
