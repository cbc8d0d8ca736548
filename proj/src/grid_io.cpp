#include "hqi/grid_io.hpp"

#include "hqi/error.hpp"
#include "hqi/knots.hpp"

#include <json.hpp>

#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>

namespace hqi {

using nlohmann::json;

size_t GridFile::points() const
{
    size_t n = 1;
    for(const auto& a : axes)
        n *= a.size();
    return n;
}

std::string format_double(double x)
{
    char buf[32];
    auto r = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, r.ptr);
}

namespace {

std::vector<double> read_numbers(std::string_view s)
{
    std::vector<double> out;
    size_t i = 0;
    while(i < s.size()) {
        const char ch = s[i];
        if(ch == ',' || ch == ' ' || ch == '\t' || ch == '\r' || ch == '\n') {
            ++i;
            continue;
        }
        size_t j = i;
        while(j < s.size() && s[j] != ',' && s[j] != ' ' && s[j] != '\t' && s[j] != '\r' && s[j] != '\n')
            ++j;
        std::string_view tok = s.substr(i, j - i);
        if(!tok.empty() && tok[0] == '+')
            tok.remove_prefix(1);
        double v = 0.0;
        auto r = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if(r.ec != std::errc() || r.ptr != tok.data() + tok.size())
            throw ParseError("grid payload: cannot parse '" + std::string(s.substr(i, j - i)) + "' as a number");
        out.push_back(v);
        i = j;
    }
    return out;
}

struct Header {
    GridFile g;
    Encoding enc = Encoding::csv;
};

Header parse_header(const std::string& line)
{
    if(line.empty() || line[0] != '#')
        throw ParseError("grid file must start with a '#' JSON header line");
    json h;
    try {
        h = json::parse(line.substr(1));
    } catch(const json::exception& e) {
        throw ParseError(std::string("grid header: ") + e.what());
    }
    Header out;
    GridFile& g = out.g;
    try {
        g.dims = h.at("dims").get<int>();
        if(g.dims < 1 || g.dims > 3)
            throw ParseError("grid header: dims must be 1, 2 or 3");
        const auto& axes = h.at("axes");
        if(!axes.is_array() || axes.size() != static_cast<size_t>(g.dims))
            throw ParseError("grid header: axes must list one entry per dimension");
        g.periodic = h.value("periodic", std::vector<bool>(g.dims, false));
        g.period = h.value("period", std::vector<double>(g.dims, 0.0));
        if(g.periodic.size() != static_cast<size_t>(g.dims) || g.period.size() != static_cast<size_t>(g.dims))
            throw ParseError("grid header: periodic and period must have one entry per dimension");
        for(int a = 0; a < g.dims; ++a) {
            const auto& ax = axes[a];
            std::vector<double> nodes;
            if(ax.contains("nodes")) {
                nodes = ax.at("nodes").get<std::vector<double>>();
            } else if(ax.contains("uniform")) {
                const auto u = ax.at("uniform");
                if(!u.is_array() || u.size() != 3)
                    throw ParseError("grid header: uniform axis needs [a, b, n]");
                const double lo = u[0].get<double>(), hi = u[1].get<double>();
                const int n = u[2].get<int>();
                if(n < 1 || !(hi > lo))
                    throw ParseError("grid header: uniform axis needs a < b and n >= 1");
                nodes = linspace(lo, hi, n + 1);
                if(g.periodic[a]) {
                    nodes.pop_back();
                    if(g.period[a] == 0.0)
                        g.period[a] = hi - lo;
                }
            } else {
                throw ParseError("grid header: axis " + std::to_string(a) + " needs 'nodes' or 'uniform'");
            }
            if(nodes.empty())
                throw ParseError("grid header: axis " + std::to_string(a) + " is empty");
            for(double x : nodes)
                if(!std::isfinite(x))
                    throw ParseError("grid header: non-finite node on axis " + std::to_string(a));
            g.axes.push_back(std::move(nodes));
        }
        g.components = h.value("components", 1);
        if(g.components < 1)
            throw ParseError("grid header: components must be >= 1");
        g.derivative_order = h.value("derivatives", std::vector<std::string>{});
        const auto enc = h.value("encoding", std::string("csv"));
        if(enc == "csv")
            out.enc = Encoding::csv;
        else if(enc == "binary")
            out.enc = Encoding::binary;
        else
            throw ParseError("grid header: unknown encoding '" + enc + "'");
    } catch(const json::exception& e) {
        throw ParseError(std::string("grid header: ") + e.what());
    }
    return out;
}

void distribute(GridFile& g, const std::vector<double>& flat)
{
    const size_t block = g.points() * g.components;
    const size_t blocks = 1 + g.derivative_order.size();
    if(flat.size() != block * blocks)
        throw ParseError("grid payload: expected " + std::to_string(block * blocks) + " numbers ("
                         + std::to_string(blocks) + " block(s) of " + std::to_string(block) + "), got "
                         + std::to_string(flat.size()));
    for(double v : flat)
        if(!std::isfinite(v))
            throw ParseError("grid payload: non-finite sample");
    g.values.assign(flat.begin(), flat.begin() + block);
    for(size_t k = 0; k < g.derivative_order.size(); ++k)
        g.derivatives[g.derivative_order[k]].assign(flat.begin() + (k + 1) * block, flat.begin() + (k + 2) * block);
}

json header_json(const GridFile& g, Encoding enc)
{
    json h;
    h["dims"] = g.dims;
    h["axes"] = json::array();
    for(const auto& a : g.axes)
        h["axes"].push_back({{"nodes", a}});
    std::vector<bool> per = g.periodic;
    per.resize(g.dims, false);
    std::vector<double> period = g.period;
    period.resize(g.dims, 0.0);
    h["periodic"] = per;
    h["period"] = period;
    h["components"] = g.components;
    h["derivatives"] = g.derivative_order;
    h["encoding"] = enc == Encoding::csv ? "csv" : "binary";
    return h;
}

void check_consistent(const GridFile& g)
{
    require(g.dims >= 1 && g.dims <= 3 && g.axes.size() == static_cast<size_t>(g.dims),
            "grid: axes do not match dims");
    const size_t block = g.points() * g.components;
    require(g.values.size() == block, "grid: value block has the wrong size");
    for(const auto& name : g.derivative_order)
        require(g.has(name) && g.derivatives.at(name).size() == block, "grid: derivative block '" + name + "' is missing or has the wrong size");
}

}  // namespace

GridFile parse_grid(const std::string& text)
{
    const auto nl = text.find('\n');
    auto h = parse_header(text.substr(0, nl));
    if(h.enc == Encoding::binary) {
        const size_t start = nl == std::string::npos ? text.size() : nl + 1;
        const size_t bytes = text.size() - start;
        if(bytes % 8 != 0)
            throw ParseError("grid payload: binary size is not a multiple of 8 bytes");
        std::vector<double> flat(bytes / 8);
        std::memcpy(flat.data(), text.data() + start, bytes);
        if constexpr(std::endian::native == std::endian::big)
            for(auto& v : flat) {
                auto u = std::bit_cast<uint64_t>(v);
                u = __builtin_bswap64(u);
                v = std::bit_cast<double>(u);
            }
        distribute(h.g, flat);
    } else {
        std::string_view body = nl == std::string::npos ? std::string_view() : std::string_view(text).substr(nl + 1);
        distribute(h.g, read_numbers(body));
    }
    return h.g;
}

GridFile read_grid(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if(!in)
        throw ParseError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_grid(ss.str());
}

std::string format_grid_csv(const GridFile& g)
{
    check_consistent(g);
    std::string out = "#" + header_json(g, Encoding::csv).dump() + "\n";
    // one x-line (1D: one node) per text line
    const size_t row = g.dims == 1 ? static_cast<size_t>(g.components) : g.axes[0].size();
    auto emit = [&](const std::vector<double>& v) {
        for(size_t i = 0; i < v.size(); ++i) {
            out += format_double(v[i]);
            out += (i + 1) % row == 0 ? '\n' : ',';
        }
    };
    emit(g.values);
    for(const auto& name : g.derivative_order)
        emit(g.derivatives.at(name));
    return out;
}

void write_grid(const std::string& path, const GridFile& g, Encoding enc)
{
    std::ofstream out(path, std::ios::binary);
    if(!out)
        throw ParseError("cannot open " + path + " for writing");
    if(enc == Encoding::csv) {
        out << format_grid_csv(g);
    } else {
        check_consistent(g);
        out << "#" << header_json(g, Encoding::binary).dump() << "\n";
        auto emit = [&](const std::vector<double>& v) {
            for(double x : v) {
                if constexpr(std::endian::native == std::endian::big)
                    x = std::bit_cast<double>(__builtin_bswap64(std::bit_cast<uint64_t>(x)));
                out.write(reinterpret_cast<const char*>(&x), sizeof x);
            }
        };
        emit(g.values);
        for(const auto& name : g.derivative_order)
            emit(g.derivatives.at(name));
    }
    if(!out)
        throw ParseError("failed writing " + path);
}

}  // namespace hqi
