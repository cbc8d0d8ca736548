#include "cli.hpp"

#include "hqi/convergence.hpp"
#include "hqi/error.hpp"
#include "hqi/grid_io.hpp"
#include "hqi/qi_tensor.hpp"
#include "hqi/serialize.hpp"
#include "hqi/test_functions.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

namespace hqi::cli {

namespace {

struct FitArgs {
    std::string input, output;
    std::vector<int> degrees{3};
    std::vector<int> orders{0};
    bool hermite = false;
    std::vector<std::string> periodic;
    bool serial = false;
};

struct EvalArgs {
    std::string spline, points, output;
    std::vector<std::string> grid;
    std::vector<double> at;
    std::vector<int> deriv;
};

struct ConvArgs {
    ConvergenceOptions opts;
    std::string output;
    bool serial = false;
};

struct MetricsArgs {
    std::string spline, reference;
};

template <class T>
std::vector<T> per_axis(const std::vector<T>& v, int dims, const char* what)
{
    if(v.size() == 1)
        return std::vector<T>(dims, v[0]);
    require(static_cast<int>(v.size()) == dims, std::string(what) + ": give one value or one per axis ("
                                                   + std::to_string(dims) + ")");
    return v;
}

int axis_id(const std::string& s)
{
    if(s == "x" || s == "0")
        return 0;
    if(s == "y" || s == "1")
        return 1;
    if(s == "z" || s == "2")
        return 2;
    throw ParseError("unknown axis '" + s + "' (use x, y, z or 0, 1, 2)");
}

std::string join_shape(const std::vector<int>& v)
{
    std::string s;
    for(size_t k = 0; k < v.size(); ++k)
        s += (k ? "x" : "") + std::to_string(v[k]);
    return s;
}

const std::vector<double>& block(const GridFile& g, const std::string& name)
{
    if(!g.has(name))
        throw ConstraintError("--hermite needs the derivative block '" + name + "' in the grid file");
    return g.derivatives.at(name);
}

int cmd_fit(const FitArgs& a, std::ostream& out)
{
    GridFile g = read_grid(a.input);
    for(const auto& p : a.periodic) {
        const int ax = axis_id(p);
        require(ax < g.dims, "periodic axis " + p + " does not exist in a " + std::to_string(g.dims) + "D grid");
        g.periodic[ax] = true;
    }
    const auto d = per_axis(a.degrees, g.dims, "--degree");
    const auto l = per_axis(a.orders, g.dims, "--fd-order");
    const Exec exec = a.serial ? Exec::serial : Exec::parallel;
    require(g.components == 1 || g.dims == 1, "vector-valued samples are supported for 1D grids only");

    const auto t0 = std::chrono::steady_clock::now();
    AnySpline s;
    if(g.dims == 1) {
        const KnotVector kv = axis_knots(g.axes[0], d[0], g.periodic[0], g.period[0]);
        const std::vector<double> nodes(kv.breakpoints().begin(), kv.breakpoints().end());
        if(a.hermite)
            s = qi_hermite({nodes, g.values, block(g, "x"), g.components}, d[0], g.periodic[0]);
        else
            s = qi_approx(nodes, g.values, d[0], l[0], g.periodic[0], g.components);
    } else if(g.dims == 2) {
        GridSample2D s2;
        s2.axes = {g.axes[0], g.axes[1]};
        s2.periodic = {g.periodic[0], g.periodic[1]};
        s2.period = {g.period[0], g.period[1]};
        s2.values = g.values;
        if(a.hermite) {
            s2.fx = block(g, "x");
            s2.fy = block(g, "y");
            s2.fxy = block(g, "xy");
            s = qi2d_hermite(s2, {d[0], d[1]}, exec);
        } else {
            s = qi2d_approx(s2, {d[0], d[1]}, {l[0], l[1]}, exec);
        }
    } else {
        require(!a.hermite, "3D fits support the approximate-derivative variant only");
        GridSample3D s3;
        s3.axes = {g.axes[0], g.axes[1], g.axes[2]};
        s3.periodic = {g.periodic[0], g.periodic[1], g.periodic[2]};
        s3.period = {g.period[0], g.period[1], g.period[2]};
        s3.values = g.values;
        s = qi3d_approx(s3, {d[0], d[1], d[2]}, {l[0], l[1], l[2]}, exec);
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_spline(a.output, s);

    std::vector<int> knots, shape;
    for(int ax = 0; ax < domain_dim(s); ++ax) {
        const auto& kv = axis_knots_of(s, ax);
        knots.push_back(static_cast<int>(kv.knots().size()));
        shape.push_back(kv.num_coefficients());
    }
    if(domain_dim(s) == 1)
        shape.push_back(value_dim(s));
    out << "knots: " << join_shape(knots) << "\n";
    out << "coefficients: " << join_shape(shape) << "\n";
    out << "fit time: " << format_double(secs) << " s\n";
    return kOk;
}

// Query points, point-major.
std::vector<double> query_points(const EvalArgs& a, int dims)
{
    int sources = !a.points.empty() + !a.grid.empty() + !a.at.empty();
    if(sources != 1)
        throw ParseError("give exactly one of --points, --grid or --at");
    std::vector<double> pts;
    if(!a.at.empty()) {
        if(a.at.size() % dims != 0)
            throw ParseError("--at needs a multiple of " + std::to_string(dims) + " coordinates");
        return a.at;
    }
    if(!a.grid.empty()) {
        if(static_cast<int>(a.grid.size()) != dims)
            throw ParseError("--grid needs one a:b:n spec per axis (" + std::to_string(dims) + ")");
        std::vector<std::vector<double>> ax;
        for(const auto& spec : a.grid) {
            double lo = 0, hi = 0;
            int n = 0;
            char c1 = 0, c2 = 0;
            std::istringstream ss(spec);
            if(!(ss >> lo >> c1 >> hi >> c2 >> n) || c1 != ':' || c2 != ':' || n < 1 || !ss.eof())
                throw ParseError("bad --grid spec '" + spec + "' (expected a:b:n)");
            ax.push_back(n == 1 ? std::vector<double>{lo} : linspace(lo, hi, n));
        }
        std::array<size_t, 3> ext{1, 1, 1};
        for(int k = 0; k < dims; ++k)
            ext[k] = ax[k].size();
        for(size_t k = 0; k < ext[2]; ++k)
            for(size_t j = 0; j < ext[1]; ++j)
                for(size_t i = 0; i < ext[0]; ++i) {
                    const std::array<size_t, 3> idx{i, j, k};
                    for(int m = 0; m < dims; ++m)
                        pts.push_back(ax[m][idx[m]]);
                }
        return pts;
    }
    std::ifstream in(a.points);
    if(!in)
        throw ParseError("cannot open " + a.points);
    std::string line;
    int lineno = 0;
    while(std::getline(in, line)) {
        ++lineno;
        if(line.empty() || line[0] == '#')
            continue;
        for(char& c : line)
            if(c == ',')
                c = ' ';
        std::istringstream ss(line);
        double v;
        int count = 0;
        while(ss >> v) {
            pts.push_back(v);
            ++count;
        }
        if(!ss.eof() || count != dims)
            throw ParseError(a.points + ":" + std::to_string(lineno) + ": expected " + std::to_string(dims)
                             + " coordinates");
    }
    return pts;
}

int cmd_eval(const EvalArgs& a, std::ostream& out)
{
    const AnySpline s = read_spline(a.spline);
    const int dims = domain_dim(s), vd = value_dim(s);
    std::vector<int> orders = a.deriv.empty() ? std::vector<int>(dims, 0) : per_axis(a.deriv, dims, "--deriv");
    for(int o : orders)
        require(o >= 0, "derivative orders must be >= 0");
    const auto pts = query_points(a, dims);
    const size_t n = pts.size() / dims;

    std::vector<std::string> bad;
    size_t n_bad = 0;
    for(size_t k = 0; k < n; ++k) {
        bool inside = true;
        for(int m = 0; m < dims; ++m) {
            const auto& kv = axis_knots_of(s, m);
            const double x = pts[k * dims + m];
            if(!std::isfinite(x) || (!kv.periodic() && (x < kv.lower() || x > kv.upper())))
                inside = false;
        }
        if(!inside) {
            ++n_bad;
            if(bad.size() < 10) {
                std::string p = "(";
                for(int m = 0; m < dims; ++m)
                    p += (m ? "," : "") + format_double(pts[k * dims + m]);
                bad.push_back(p + ")");
            }
        }
    }
    if(n_bad) {
        std::string msg = std::to_string(n_bad) + " query point(s) outside the spline domain:";
        for(const auto& b : bad)
            msg += " " + b;
        if(n_bad > bad.size())
            msg += " ...";
        throw ConstraintError(msg);
    }

    std::ostringstream csv;
    static const char* names[] = {"x", "y", "z"};
    for(int m = 0; m < dims; ++m)
        csv << names[m] << ",";
    if(vd == 1)
        csv << "value\n";
    else
        for(int c = 0; c < vd; ++c)
            csv << "value" << c << (c + 1 < vd ? "," : "\n");
    std::vector<double> val(vd);
    for(size_t k = 0; k < n; ++k) {
        evaluate(s, std::span<const double>(&pts[k * dims], dims), orders, val);
        for(int m = 0; m < dims; ++m)
            csv << format_double(pts[k * dims + m]) << ",";
        for(int c = 0; c < vd; ++c)
            csv << format_double(val[c]) << (c + 1 < vd ? "," : "\n");
    }
    if(a.output.empty()) {
        out << csv.str();
    } else {
        std::ofstream f(a.output);
        if(!(f << csv.str()))
            throw ParseError("cannot write " + a.output);
    }
    return kOk;
}

int cmd_convergence(ConvArgs a, std::ostream& out)
{
    a.opts.exec = a.serial ? Exec::serial : Exec::parallel;
    const auto rows = run_convergence(a.opts);
    const auto csv = format_convergence_csv(rows);
    if(a.output.empty()) {
        out << csv;
    } else {
        std::ofstream f(a.output);
        if(!(f << csv))
            throw ParseError("cannot write " + a.output);
    }
    return kOk;
}

int cmd_metrics(const MetricsArgs& a, std::ostream& out)
{
    const AnySpline s = read_spline(a.spline);
    const GridFile ref = read_grid(a.reference);
    const Metrics m = compute_metrics(s, ref);
    out << "max_err,rmse,nrmse\n";
    out << format_double(m.max_err) << "," << format_double(m.rmse) << ","
        << (m.nrmse ? format_double(*m.nrmse) : std::string("undefined")) << "\n";
    if(!m.nrmse)
        out << "# nrmse undefined: the reference range is zero\n";
    return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Hermite B-spline quasi-interpolation"};
    app.require_subcommand(1);

    FitArgs fa;
    auto* fit = app.add_subcommand("fit", "fit a spline to a grid file and write its JSON form");
    fit->add_option("input", fa.input, "grid file")->required();
    fit->add_option("-o,--output", fa.output, "spline JSON output")->required();
    fit->add_option("-d,--degree", fa.degrees, "degree, one value or one per axis")->delimiter(',');
    fit->add_option("-l,--fd-order", fa.orders, "finite difference order (0: d+1 odd d, d+2 even d)")
        ->delimiter(',');
    fit->add_flag("--hermite", fa.hermite, "use the derivative blocks of the grid file");
    fit->add_option("--periodic", fa.periodic, "axes to treat as periodic (x, y, z)")->delimiter(',');
    fit->add_flag("--serial", fa.serial, "disable threading");

    EvalArgs ea;
    auto* ev = app.add_subcommand("eval", "evaluate a spline, CSV to stdout or a file");
    ev->add_option("spline", ea.spline, "spline JSON")->required();
    ev->add_option("--points", ea.points, "CSV file, one point per line");
    ev->add_option("--grid", ea.grid, "a:b:n per axis (n points)");
    ev->add_option("--at", ea.at, "coordinates of one or more points")->delimiter(',');
    ev->add_option("--deriv", ea.deriv, "derivative order per axis")->delimiter(',');
    ev->add_option("-o,--output", ea.output, "CSV output file");

    ConvArgs ca;
    auto* conv = app.add_subcommand("convergence", "convergence study on a builtin function");
    std::string names;
    for(const auto& n : builtin_names())
        names += (names.empty() ? "" : ", ") + n;
    conv->add_option("function", ca.opts.function, names)->required();
    conv->add_option("-d,--degree", ca.opts.degree, "spline degree");
    conv->add_option("-l,--fd-order", ca.opts.fd_order, "finite difference order (0: default)");
    conv->add_option("-N,--sizes", ca.opts.Ns, "numbers of intervals")->delimiter(',');
    conv->add_flag("--hermite", ca.opts.hermite, "use exact derivatives");
    conv->add_flag("--nonuniform", ca.opts.nonuniform, "graded mesh clustered at both ends");
    conv->add_option("--grading", ca.opts.grading, "tanh grading parameter of --nonuniform")
        ->check(CLI::NonNegativeNumber);
    conv->add_option("--reps", ca.opts.reps, "fits per N; the median time is reported")->check(CLI::PositiveNumber);
    conv->add_option("--samples", ca.opts.samples, "error points per axis (0: 1000 in 1D, 101 otherwise)");
    conv->add_flag("--serial", ca.serial, "disable threading");
    conv->add_option("-o,--output", ca.output, "CSV output file");

    MetricsArgs ma;
    auto* met = app.add_subcommand("metrics", "max error, RMSE and NRMSE against a reference grid");
    met->add_option("spline", ma.spline, "spline JSON")->required();
    met->add_option("reference", ma.reference, "reference grid file")->required();

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch(const CLI::ParseError& e) {
        const int rc = app.exit(e, out, err);
        return rc == 0 ? kOk : kBadInput;
    }

    try {
        if(*fit)
            return cmd_fit(fa, out);
        if(*ev)
            return cmd_eval(ea, out);
        if(*conv)
            return cmd_convergence(ca, out);
        return cmd_metrics(ma, out);
    } catch(const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kBadInput;
    } catch(const ConstraintError& e) {
        err << "error: " << e.what() << "\n";
        return kConstraint;
    } catch(const Error& e) {
        err << "error: " << e.what() << "\n";
        return kBadInput;
    } catch(const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kFailure;
    }
}

}  // namespace hqi::cli
