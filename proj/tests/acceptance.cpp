// Acceptance runner: one PASS/FAIL line per criterion, details indented below.
// Tolerances are fixed here and nowhere else.

#include "checks.hpp"
#include "cli.hpp"

#include "hqi/convergence.hpp"
#include "hqi/grid_io.hpp"
#include "hqi/qi1d.hpp"
#include "hqi/qi_tensor.hpp"
#include "hqi/serialize.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

namespace fs = std::filesystem;

namespace {

// curve: f1, d = 3, l = 4
constexpr double kCurveOrderTarget = 4.0;
constexpr double kCurveOrderTol = 0.7;
constexpr int kCurveOrderFromN = 128;
constexpr double kCurveMaxErr1024 = 2e-8;
constexpr double kCurveSeconds = 5.0;

// surface: Franke, d = 3, l = 4
constexpr double kSurfaceOrderTarget = 3.9;
constexpr double kSurfaceOrderTol = 0.5;
constexpr double kSurfaceMaxErr1024 = 4e-10;
constexpr double kSurfaceSeconds = 30.0;

// volume: ball, d = 2..5, N = 128 -> 256
constexpr double kVolumeOrders[4] = {2.8, 5.4, 4.9, 6.2};
constexpr double kVolumeOrderTol = 1.0;
constexpr double kVolumeMaxErrD5 = 5e-9;
constexpr double kVolumeSeconds = 180.0;

constexpr double kPropertySeconds = 60.0;

// Order sweeps: slope d + 1 +- 0.6 over the last three rows above the rounding floor
constexpr double kSweepSlopeTol = 0.6;
constexpr double kSweepFloor = 1e-13;
constexpr int kSweepRows = 3;
constexpr double kSweepGrading = 2.0;

struct Row {
    int N = 0;
    double error = 0.0;
    std::optional<double> order;
};

struct Run {
    int code = 0;
    std::string out, err;
    double seconds = 0.0;
};

Run cli(const std::vector<std::string>& args)
{
    std::ostringstream out, err;
    const auto t0 = std::chrono::steady_clock::now();
    Run r;
    r.code = hqi::cli::run(args, out, err);
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::vector<Row> parse_csv(const std::string& text)
{
    std::istringstream in(text);
    std::string line;
    std::getline(in, line);
    if(line != "N,error,order,time")
        return {};
    std::vector<Row> rows;
    while(std::getline(in, line)) {
        std::istringstream ls(line);
        std::string n, e, o;
        std::getline(ls, n, ',');
        std::getline(ls, e, ',');
        std::getline(ls, o, ',');
        Row r;
        r.N = std::stoi(n);
        r.error = std::stod(e);
        if(!o.empty())
            r.order = std::stod(o);
        rows.push_back(r);
    }
    return rows;
}

std::string fmt(double x, int prec = 3)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", prec, x);
    return buf;
}

struct Criterion {
    explicit Criterion(std::string n) : name(std::move(n)) {}
    std::string name;
    bool pass = true;
    std::vector<std::string> notes;
    void check(bool ok, const std::string& note)
    {
        pass = pass && ok;
        notes.push_back((ok ? "ok   " : "FAIL ") + note);
    }
};

int failures = 0;

void report(const Criterion& c)
{
    std::cout << (c.pass ? "PASS " : "FAIL ") << c.name << "\n";
    for(const auto& n : c.notes)
        std::cout << "    " << n << "\n";
    std::cout.flush();
    failures += c.pass ? 0 : 1;
}

std::vector<Row> convergence(Criterion& c, std::vector<std::string> args, double* seconds = nullptr)
{
    args.insert(args.begin(), "convergence");
    args.insert(args.end(), {"--reps", "1"});
    const Run r = cli(args);
    if(seconds)
        *seconds += r.seconds;
    auto rows = parse_csv(r.out);
    c.check(r.code == 0 && !rows.empty(), "cmd_convergence " + args[1] + " emitted a CSV table (exit "
                                              + std::to_string(r.code) + ")");
    return rows;
}

void curve()
{
    Criterion c{"Curve: f1, d=3, l=4, orders for N>=128 in 4+-0.7, error(1024) <= 2e-8, < 5 s"};
    double seconds = 0.0;
    for(bool hermite : {true, false}) {
        std::vector<std::string> args{"f1", "-d", "3", "-N", "16,32,64,128,256,512,1024"};
        if(hermite)
            args.push_back("--hermite");
        else
            args.insert(args.end(), {"-l", "4"});
        const auto rows = convergence(c, args, &seconds);
        const std::string tag = hermite ? "Hermite" : "approx ";
        for(const auto& r : rows) {
            if(r.N >= kCurveOrderFromN && r.order)
                c.check(std::abs(*r.order - kCurveOrderTarget) <= kCurveOrderTol,
                        tag + " N=" + std::to_string(r.N) + " error " + fmt(r.error) + " order " + fmt(*r.order));
            if(r.N == 1024)
                c.check(r.error <= kCurveMaxErr1024, tag + " error(1024) " + fmt(r.error) + " <= 2e-8");
        }
    }
    c.check(seconds < kCurveSeconds, "runtime " + fmt(seconds) + " s");
    report(c);
}

void surface()
{
    Criterion c{"Surface: Franke, d=3, l=4, order(1024) in 3.9+-0.5, error(1024) <= 4e-10, < 30 s"};
    double seconds = 0.0;
    const auto rows = convergence(c, {"franke", "-d", "3", "-l", "4", "-N", "16,32,64,128,256,512,1024"}, &seconds);
    for(const auto& r : rows)
        if(r.N == 1024) {
            c.check(r.order && std::abs(*r.order - kSurfaceOrderTarget) <= kSurfaceOrderTol,
                    "order(1024) " + (r.order ? fmt(*r.order) : std::string("missing")));
            c.check(r.error <= kSurfaceMaxErr1024, "error(1024) " + fmt(r.error));
        }
    if(!rows.empty())
        c.notes.push_back("     error(16) " + fmt(rows.front().error));
    c.check(seconds < kSurfaceSeconds, "runtime " + fmt(seconds) + " s");
    report(c);
}

void volume()
{
    Criterion c{"Volume: ball3d, d=2..5, N=128->256 orders within 2.8,5.4,4.9,6.2 +-1.0, d=5 error(256) <= 5e-9, < 3 min"};
    double seconds = 0.0;
    for(int d = 2; d <= 5; ++d) {
        const auto rows = convergence(c, {"ball3d", "-d", std::to_string(d), "-N", "128,256"}, &seconds);
        if(rows.size() != 2 || !rows[1].order) {
            c.check(false, "d=" + std::to_string(d) + " produced no order");
            continue;
        }
        const double want = kVolumeOrders[d - 2];
        c.check(std::abs(*rows[1].order - want) <= kVolumeOrderTol,
                "d=" + std::to_string(d) + " errors " + fmt(rows[0].error) + " -> " + fmt(rows[1].error) + " order "
                    + fmt(*rows[1].order) + " (target " + fmt(want) + ")");
        if(d == 5)
            c.check(rows[1].error <= kVolumeMaxErrD5, "d=5 error(256) " + fmt(rows[1].error));
    }
    c.check(seconds < kVolumeSeconds, "runtime " + fmt(seconds) + " s");
    report(c);
}

void properties()
{
    Criterion c{"Property suite: reproduction, FD exactness, D' path, axis order, 3D nested, seam, h-split, < 60 s"};
    const auto t0 = std::chrono::steady_clock::now();
    const auto results = hqi::checks::property_suite();
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    for(const auto& r : results)
        c.check(r.pass(), r.name + ": worst " + fmt(r.worst) + " (tol " + fmt(r.tol) + ")");
    c.check(seconds < kPropertySeconds, "runtime " + fmt(seconds) + " s");
    report(c);
}

void sweeps()
{
    Criterion c{"Order sweeps: sin on [0,2pi] and f2 on the graded mesh, d=2..5, slope d+1+-0.6"};
    for(const std::string fn : {"sin", "f2"})
        for(int d = 2; d <= 5; ++d)
            for(bool hermite : {true, false}) {
                std::vector<std::string> args{fn, "-d", std::to_string(d), "-N", "16,32,64,128,256,512,1024"};
                if(hermite)
                    args.push_back("--hermite");
                if(fn == "f2")
                    args.insert(args.end(), {"--nonuniform", "--grading", fmt(kSweepGrading)});
                const auto rows = convergence(c, args);
                std::vector<hqi::ConvergenceRow> kept;
                for(const auto& r : rows)
                    if(r.error >= kSweepFloor) {
                        hqi::ConvergenceRow k;
                        k.N = r.N;
                        k.error = r.error;
                        kept.push_back(k);
                    }
                if(kept.size() > static_cast<size_t>(kSweepRows))
                    kept.erase(kept.begin(), kept.end() - kSweepRows);
                const std::string tag = fn + " d=" + std::to_string(d) + (hermite ? " Hermite" : " approx ");
                if(kept.size() < 2) {
                    c.check(false, tag + ": too few rows above the rounding floor");
                    continue;
                }
                const double slope = hqi::fitted_slope(kept);
                c.check(std::abs(slope - (d + 1)) <= kSweepSlopeTol,
                        tag + " slope " + fmt(slope) + " over N=" + std::to_string(kept.front().N) + ".."
                            + std::to_string(kept.back().N));
            }
    report(c);
}

void cli_contract()
{
    Criterion c{"CLI contract: bit-exact serialization round-trip, exit codes 0/2/3, convergence CSV"};
    const fs::path dir = fs::temp_directory_path() / ("hqi_acceptance_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    auto path = [&](const std::string& name) { return (dir / name).string(); };

    // fit -> JSON -> read -> eval agrees bit for bit with the in-memory spline, 1D to 3D
    {
        hqi::HermiteData h;
        h.nodes = hqi::linspace(0.0, 2.0, 21);
        for(double x : h.nodes)
            h.values.push_back(std::sin(3 * x) + x * x);
        const hqi::AnySpline s1 = hqi::qi_approx(h.nodes, h.values, 4);
        hqi::GridSample2D g2;
        g2.axes = {hqi::linspace(0, 1, 13), hqi::linspace(-1, 1, 9)};
        for(double y : g2.axes[1])
            for(double x : g2.axes[0])
                g2.values.push_back(std::exp(x * y) + std::numbers::pi * x);
        const hqi::AnySpline s2 = hqi::qi2d_approx(g2, {3, 2});
        hqi::GridSample3D g3;
        g3.axes = {hqi::linspace(0, 1, 8), hqi::linspace(0, 1, 9), hqi::linspace(0, 2, 7)};
        g3.periodic[2] = true;
        g3.period[2] = 2.0 * 7 / 6;
        for(size_t k = 0; k < 7; ++k)
            for(double y : g3.axes[1])
                for(double x : g3.axes[0])
                    g3.values.push_back(std::cos(x + 2 * y) / 3.0 + static_cast<double>(k) / 7.0);
        const hqi::AnySpline s3 = hqi::qi3d_approx(g3, {2, 3, 3});
        bool exact = true;
        for(const auto* s : {&s1, &s2, &s3}) {
            hqi::write_spline(path("s.json"), *s);
            const auto back = hqi::read_spline(path("s.json"));
            exact = exact && hqi::to_json(back) == hqi::to_json(*s);
            const int dd = hqi::domain_dim(*s);
            std::vector<double> p(dd), a(1), b(1);
            std::vector<int> ord(dd, 0);
            for(int k = 0; k < 200; ++k) {
                for(int ax = 0; ax < dd; ++ax) {
                    const auto& kv = hqi::axis_knots_of(*s, ax);
                    p[ax] = kv.lower() + (kv.upper() - kv.lower()) * ((k * (ax + 3)) % 200) / 199.0;
                }
                ord[0] = k % 2;
                hqi::evaluate(*s, p, ord, a);
                hqi::evaluate(back, p, ord, b);
                exact = exact && a[0] == b[0];
            }
        }
        c.check(exact, "write/read/eval bit-exact for curve, surface and volume");
    }

    // CLI path: fit a cubic sample, eval at the nodes through the file round-trip
    {
        std::ofstream(path("cubic.csv")) << "#{\"dims\":1,\"axes\":[{\"uniform\":[-1,2,12]}]}\n";
        std::ofstream out(path("cubic.csv"), std::ios::app);
        std::vector<double> xs = hqi::linspace(-1, 2, 13);
        for(double x : xs)
            out << hqi::format_double(0.5 * x * x * x - x + 0.25) << "\n";
        out.close();
        const Run fit = cli({"fit", path("cubic.csv"), "-o", path("cubic.json"), "-d", "3"});
        const Run ev = cli({"eval", path("cubic.json"), "--grid", "-1:2:13"});
        double worst = 0.0;
        std::istringstream in(ev.out);
        std::string line;
        std::getline(in, line);
        size_t n = 0;
        while(std::getline(in, line)) {
            const double x = std::stod(line.substr(0, line.find(',')));
            const double v = std::stod(line.substr(line.find(',') + 1));
            worst = std::max(worst, std::abs(v - (0.5 * x * x * x - x + 0.25)));
            ++n;
        }
        c.check(fit.code == 0 && ev.code == 0 && n == 13 && worst <= 1e-10,
                "fit -> eval reproduces a cubic at the nodes, worst " + fmt(worst));
    }

    // exit codes
    {
        std::ofstream(path("bad.csv")) << "#{\"dims\":1,\"axes\":[{\"uniform\":[0,1,4]}]}\n1,2,3\n";
        std::ofstream(path("bad.json")) << "{\"format_version\": 1, \"degrees\": [3";
        std::ofstream(path("small.csv")) << "#{\"dims\":1,\"axes\":[{\"uniform\":[0,1,2]}]}\n1,2,3\n";
        struct Case {
            std::vector<std::string> args;
            int want;
            std::string what;
        };
        const std::vector<Case> cases{
            {{"fit", path("cubic.csv"), "-o", path("ok.json")}, 0, "fit succeeds"},
            {{"eval", path("cubic.json"), "--at", "0.5"}, 0, "eval succeeds"},
            {{"metrics", path("cubic.json"), path("cubic.csv")}, 0, "metrics succeeds"},
            {{"convergence", "sin", "-N", "8,16", "--reps", "1"}, 0, "convergence succeeds"},
            {{"fit", path("missing.csv"), "-o", path("x.json")}, 2, "fit on a missing file"},
            {{"fit", path("bad.csv"), "-o", path("x.json")}, 2, "fit on a short payload"},
            {{"eval", path("bad.json"), "--at", "0.5"}, 2, "eval on truncated JSON"},
            {{"metrics", path("bad.json"), path("cubic.csv")}, 2, "metrics on truncated JSON"},
            {{"fit", "--no-such-flag"}, 2, "unknown flag"},
            {{"convergence", "nosuch"}, 2, "unknown builtin"},
            {{"fit", path("small.csv"), "-o", path("x.json"), "-d", "3"}, 3, "fit with N < d"},
            {{"fit", path("cubic.csv"), "-o", path("x.json"), "-d", "0"}, 3, "fit with degree 0"},
            {{"eval", path("cubic.json"), "--at", "7"}, 3, "eval outside the domain"},
            {{"convergence", "ball3d", "--hermite", "-N", "4"}, 3, "3D Hermite convergence"},
        };
        for(const auto& k : cases) {
            const Run r = cli(k.args);
            c.check(r.code == k.want, k.what + ": exit " + std::to_string(r.code) + " (want " + std::to_string(k.want)
                                          + ")");
        }
    }

    // convergence CSV shape
    {
        const Run r = cli({"convergence", "franke", "-N", "8,16,32", "--reps", "1"});
        const auto rows = parse_csv(r.out);
        c.check(r.code == 0 && rows.size() == 3 && !rows[0].order && rows[1].order && rows[2].order,
                "convergence CSV has header N,error,order,time and one row per N");
    }
    fs::remove_all(dir);
    report(c);
}

}  // namespace

int main(int argc, char** argv)
{
    const std::vector<std::string> all{"curve", "surface", "volume", "properties", "sweeps", "cli"};
    std::vector<std::string> pick(argv + 1, argv + argc);
    if(pick.empty())
        pick = all;
    const std::vector<std::pair<std::string, std::function<void()>>> steps{
        {"curve", curve}, {"surface", surface}, {"volume", volume},
        {"properties", properties}, {"sweeps", sweeps}, {"cli", cli_contract}};
    for(const auto& [name, fn] : steps)
        if(std::find(pick.begin(), pick.end(), name) != pick.end())
            fn();
    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << "\n";
    return failures == 0 ? 0 : 1;
}
