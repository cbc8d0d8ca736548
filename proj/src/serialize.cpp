#include "hqi/serialize.hpp"

#include "hqi/error.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>

namespace hqi {

using nlohmann::json;

int domain_dim(const AnySpline& s) { return static_cast<int>(s.index()) + 1; }

int value_dim(const AnySpline& s)
{
    if(auto c = std::get_if<SplineCurve>(&s))
        return c->dim();
    return 1;
}

const KnotVector& axis_knots_of(const AnySpline& s, int axis)
{
    return std::visit(
        [axis](const auto& sp) -> const KnotVector& {
            if constexpr(std::is_same_v<std::decay_t<decltype(sp)>, SplineCurve>)
                return sp.knots();
            else
                return sp.knots(axis);
        },
        s);
}

void evaluate(const AnySpline& s, std::span<const double> point, std::span<const int> orders, std::span<double> out)
{
    const int n = domain_dim(s);
    require(static_cast<int>(point.size()) == n && static_cast<int>(orders.size()) == n,
            "point has " + std::to_string(point.size()) + " coordinates, spline has " + std::to_string(n));
    require(static_cast<int>(out.size()) >= value_dim(s), "output buffer too small");
    switch(s.index()) {
    case 0:
        std::get<SplineCurve>(s).eval(point[0], orders[0], out);
        break;
    case 1:
        out[0] = std::get<SplineSurface>(s).eval(point[0], point[1], orders[0], orders[1]);
        break;
    default:
        out[0] = std::get<SplineVolume>(s).eval(point[0], point[1], point[2], {orders[0], orders[1], orders[2]});
    }
}

namespace {

void put_axis(json& j, const KnotVector& kv)
{
    j["degrees"].push_back(kv.degree());
    j["knots"].push_back(std::vector<double>(kv.knots().begin(), kv.knots().end()));
    j["periodic"].push_back(kv.periodic());
}

void check_finite(std::span<const double> v)
{
    for(double x : v)
        require(std::isfinite(x), "cannot serialize non-finite coefficients");
}

KnotVector get_axis(const json& j, size_t a)
{
    const int d = j.at("degrees").at(a).get<int>();
    const auto t = j.at("knots").at(a).get<std::vector<double>>();
    const bool periodic = j.at("periodic").at(a).get<bool>();
    if(d < 1 || t.size() < static_cast<size_t>(2 * d + 2))
        throw ParseError("axis " + std::to_string(a) + ": knot vector too short for degree " + std::to_string(d));
    std::vector<double> breaks(t.begin() + d, t.end() - d);
    KnotVector kv(d, std::move(breaks), periodic);
    const auto k = kv.knots();
    if(!std::equal(k.begin(), k.end(), t.begin(), t.end()))
        throw ParseError("axis " + std::to_string(a) + ": auxiliary knots do not match the "
                         + std::string(periodic ? "periodic" : "clamped") + " construction");
    return kv;
}

}  // namespace

std::string to_json(const AnySpline& s)
{
    json j;
    j["format_version"] = 1;
    j["degrees"] = json::array();
    j["knots"] = json::array();
    j["periodic"] = json::array();
    std::vector<double> flat;
    std::vector<int> shape;
    if(auto c = std::get_if<SplineCurve>(&s)) {
        put_axis(j, c->knots());
        shape = {c->size(), c->dim()};
        flat.assign(c->coefficients().begin(), c->coefficients().end());
    } else if(auto sf = std::get_if<SplineSurface>(&s)) {
        put_axis(j, sf->knots(0));
        put_axis(j, sf->knots(1));
        const auto sh = sf->shape();
        shape = {sh[0], sh[1]};
        flat.reserve(static_cast<size_t>(sh[0]) * sh[1]);
        for(int p = 0; p < sh[0]; ++p)
            for(int q = 0; q < sh[1]; ++q)
                flat.push_back(sf->coefficient(p, q));
    } else {
        const auto& v = std::get<SplineVolume>(s);
        for(int a = 0; a < 3; ++a)
            put_axis(j, v.knots(a));
        const auto sh = v.shape();
        shape = {sh[0], sh[1], sh[2]};
        const auto c = v.coefficients();
        flat.reserve(c.size());
        for(int p = 0; p < sh[0]; ++p)
            for(int q = 0; q < sh[1]; ++q)
                for(int r = 0; r < sh[2]; ++r)
                    flat.push_back(c[p + static_cast<size_t>(sh[0]) * (q + static_cast<size_t>(sh[1]) * r)]);
    }
    check_finite(flat);
    j["shape"] = shape;
    j["coefficients"] = flat;
    return j.dump();
}

AnySpline from_json(const std::string& text)
{
    json j;
    try {
        j = json::parse(text);
    } catch(const json::exception& e) {
        throw ParseError(std::string("spline JSON: ") + e.what());
    }
    try {
        const int version = j.at("format_version").get<int>();
        if(version != 1)
            throw ParseError("spline JSON: unsupported format_version " + std::to_string(version));
        const size_t dims = j.at("degrees").size();
        if(dims < 1 || dims > 3 || j.at("knots").size() != dims || j.at("periodic").size() != dims)
            throw ParseError("spline JSON: degrees, knots and periodic must list 1 to 3 axes");
        const auto shape = j.at("shape").get<std::vector<int>>();
        const auto flat = j.at("coefficients").get<std::vector<double>>();
        if(shape.size() != (dims == 1 ? 2 : dims))
            throw ParseError("spline JSON: shape has the wrong length");
        size_t total = 1;
        for(int e : shape) {
            if(e < 1)
                throw ParseError("spline JSON: shape entries must be positive");
            total *= e;
        }
        if(flat.size() != total)
            throw ParseError("spline JSON: coefficient count " + std::to_string(flat.size())
                             + " does not match shape (" + std::to_string(total) + ")");

        std::vector<KnotVector> kv;
        for(size_t a = 0; a < dims; ++a)
            kv.push_back(get_axis(j, a));
        for(size_t a = 0; a < dims; ++a)
            if(shape[a] != kv[a].num_coefficients())
                throw ParseError("spline JSON: shape does not match the knot vector of axis " + std::to_string(a));

        if(dims == 1)
            return SplineCurve(kv[0], flat, shape[1]);
        if(dims == 2) {
            std::vector<double> c(total);
            for(int p = 0; p < shape[0]; ++p)
                for(int q = 0; q < shape[1]; ++q)
                    c[p + static_cast<size_t>(shape[0]) * q] = flat[static_cast<size_t>(p) * shape[1] + q];
            return SplineSurface(kv[0], kv[1], std::move(c));
        }
        std::vector<double> c(total);
        size_t k = 0;
        for(int p = 0; p < shape[0]; ++p)
            for(int q = 0; q < shape[1]; ++q)
                for(int r = 0; r < shape[2]; ++r)
                    c[p + static_cast<size_t>(shape[0]) * (q + static_cast<size_t>(shape[1]) * r)] = flat[k++];
        return SplineVolume(kv[0], kv[1], kv[2], std::move(c));
    } catch(const json::exception& e) {
        throw ParseError(std::string("spline JSON: ") + e.what());
    } catch(const ConstraintError& e) {
        throw ParseError(std::string("spline JSON: ") + e.what());
    }
}

void write_spline(const std::string& path, const AnySpline& s)
{
    std::ofstream out(path);
    if(!out)
        throw ParseError("cannot open " + path + " for writing");
    out << to_json(s) << '\n';
    if(!out)
        throw ParseError("failed writing " + path);
}

AnySpline read_spline(const std::string& path)
{
    std::ifstream in(path);
    if(!in)
        throw ParseError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return from_json(ss.str());
}

}  // namespace hqi
