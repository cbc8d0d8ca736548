#include "hqi/c_api.h"

#include "hqi/error.hpp"
#include "hqi/qi_tensor.hpp"
#include "hqi/serialize.hpp"

#include <cstring>
#include <new>
#include <optional>
#include <string>

struct hqi_spline {
    std::optional<hqi::AnySpline> spline;
};

namespace {

thread_local std::string last_error;

template <class F>
int guarded(F&& f)
{
    try {
        f();
        last_error.clear();
        return HQI_OK;
    } catch(const hqi::ParseError& e) {
        last_error = e.what();
        return HQI_PARSE_ERROR;
    } catch(const hqi::ConstraintError& e) {
        last_error = e.what();
        return HQI_CONSTRAINT_ERROR;
    } catch(const std::exception& e) {
        last_error = e.what();
        return HQI_ERROR;
    } catch(...) {
        last_error = "unknown error";
        return HQI_ERROR;
    }
}

void need(const void* p, const char* what)
{
    if(!p)
        throw hqi::ConstraintError(std::string(what) + " must not be NULL");
}

std::vector<double> copy(const double* p, size_t n) { return std::vector<double>(p, p + n); }

}  // namespace

extern "C" {

const char* hqi_last_error(void) { return last_error.c_str(); }

hqi_spline* hqi_create(void) { return new(std::nothrow) hqi_spline; }

void hqi_release(hqi_spline* s) { delete s; }

int hqi_fit_1d(hqi_spline* s, const double* nodes, size_t n_nodes, const double* values, const double* derivatives,
               size_t n_values, int dim, int degree, int fd_order, int periodic)
{
    return guarded([&] {
        need(s, "handle");
        need(nodes, "nodes");
        need(values, "values");
        hqi::require(dim >= 1, "dim must be >= 1");
        const size_t total = n_values * static_cast<size_t>(dim);
        if(derivatives) {
            hqi::HermiteData h{copy(nodes, n_nodes), copy(values, total), copy(derivatives, total), dim};
            s->spline = hqi::qi_hermite(h, degree, periodic != 0);
        } else {
            s->spline = hqi::qi_approx(std::span<const double>(nodes, n_nodes), std::span<const double>(values, total),
                                       degree, fd_order, periodic != 0, dim);
        }
    });
}

int hqi_fit_2d(hqi_spline* s, const double* x, size_t nx, const double* y, size_t ny, const double* values,
               const double* fx, const double* fy, const double* fxy, const int degrees[2], const int fd_orders[2],
               const int periodic[2], const double period[2])
{
    return guarded([&] {
        need(s, "handle");
        need(x, "x");
        need(y, "y");
        need(values, "values");
        need(degrees, "degrees");
        hqi::GridSample2D g;
        g.axes = {copy(x, nx), copy(y, ny)};
        const size_t n = nx * ny;
        g.values = copy(values, n);
        for(int a = 0; a < 2; ++a) {
            g.periodic[a] = periodic && periodic[a] != 0;
            g.period[a] = period ? period[a] : 0.0;
        }
        const bool hermite = fx || fy || fxy;
        if(hermite) {
            hqi::require(fx && fy && fxy, "Hermite surface fitting needs all of fx, fy and fxy");
            g.fx = copy(fx, n);
            g.fy = copy(fy, n);
            g.fxy = copy(fxy, n);
            s->spline = hqi::qi2d_hermite(g, {degrees[0], degrees[1]});
        } else {
            const std::array<int, 2> l{fd_orders ? fd_orders[0] : 0, fd_orders ? fd_orders[1] : 0};
            s->spline = hqi::qi2d_approx(g, {degrees[0], degrees[1]}, l);
        }
    });
}

int hqi_fit_3d(hqi_spline* s, const double* x, size_t nx, const double* y, size_t ny, const double* z, size_t nz,
               const double* values, const int degrees[3], const int fd_orders[3], const int periodic[3],
               const double period[3])
{
    return guarded([&] {
        need(s, "handle");
        need(x, "x");
        need(y, "y");
        need(z, "z");
        need(values, "values");
        need(degrees, "degrees");
        hqi::GridSample3D g;
        g.axes = {copy(x, nx), copy(y, ny), copy(z, nz)};
        g.values = copy(values, nx * ny * nz);
        std::array<int, 3> l{0, 0, 0};
        for(int a = 0; a < 3; ++a) {
            g.periodic[a] = periodic && periodic[a] != 0;
            g.period[a] = period ? period[a] : 0.0;
            if(fd_orders)
                l[a] = fd_orders[a];
        }
        s->spline = hqi::qi3d_approx(g, {degrees[0], degrees[1], degrees[2]}, l);
    });
}

int hqi_domain_dim(const hqi_spline* s) { return s && s->spline ? hqi::domain_dim(*s->spline) : 0; }

int hqi_value_dim(const hqi_spline* s) { return s && s->spline ? hqi::value_dim(*s->spline) : 0; }

int hqi_eval(const hqi_spline* s, const double* points, size_t n_points, const int* orders, double* out)
{
    return guarded([&] {
        need(s, "handle");
        hqi::require(s->spline.has_value(), "spline handle is empty");
        need(points, "points");
        need(out, "out");
        const auto& sp = *s->spline;
        const size_t dd = hqi::domain_dim(sp), vd = hqi::value_dim(sp);
        std::vector<int> ord(dd, 0);
        if(orders)
            ord.assign(orders, orders + dd);
        for(size_t k = 0; k < n_points; ++k)
            hqi::evaluate(sp, std::span<const double>(points + k * dd, dd), ord, std::span<double>(out + k * vd, vd));
    });
}

int hqi_serialize(const hqi_spline* s, char* buffer, size_t capacity, size_t* needed)
{
    return guarded([&] {
        need(s, "handle");
        hqi::require(s->spline.has_value(), "spline handle is empty");
        const std::string json = hqi::to_json(*s->spline);
        if(needed)
            *needed = json.size() + 1;
        if(buffer && capacity >= json.size() + 1)
            std::memcpy(buffer, json.c_str(), json.size() + 1);
        else if(buffer)
            throw hqi::ConstraintError("buffer too small: " + std::to_string(json.size() + 1) + " bytes needed");
    });
}

int hqi_deserialize(hqi_spline* s, const char* json, size_t length)
{
    return guarded([&] {
        need(s, "handle");
        need(json, "json");
        s->spline = hqi::from_json(std::string(json, length));
    });
}

}  // extern "C"
