#pragma once

#include "hqi/grid_io.hpp"
#include "hqi/serialize.hpp"
#include "hqi/tensor.hpp"

#include <optional>
#include <string>
#include <vector>

namespace hqi {

struct ConvergenceOptions {
    std::string function = "f1";
    int degree = 3;
    int fd_order = 0;  ///< 0: default for the degree
    std::vector<int> Ns{16, 32, 64, 128, 256, 512, 1024};
    bool hermite = false;
    bool nonuniform = false;
    double grading = 2.0;  ///< tanh grading parameter of the non-uniform mesh
    int reps = 5;          ///< timing: median over this many fits
    int samples = 0;       ///< error points per axis; 0 selects 1000 (1D) or 101
    Exec exec = Exec::parallel;
};

struct ConvergenceRow {
    int N = 0;
    double error = 0.0;
    std::optional<double> order;
    double seconds = 0.0;
};

/// Fits the builtin at every N and measures the max error on a uniform evaluation grid.
std::vector<ConvergenceRow> run_convergence(const ConvergenceOptions& opts);

/// "N,error,order,time" header plus one line per row; the first order is empty.
std::string format_convergence_csv(const std::vector<ConvergenceRow>& rows);

/// Least-squares slope of -log(error) against log(N).
double fitted_slope(const std::vector<ConvergenceRow>& rows);

struct Metrics {
    double max_err = 0.0;
    double rmse = 0.0;
    std::optional<double> nrmse;  ///< empty when the reference range is zero
};

/// Compares a spline with reference samples at the grid points (first component only for curves).
Metrics compute_metrics(const AnySpline& s, const GridFile& ref);

}  // namespace hqi
