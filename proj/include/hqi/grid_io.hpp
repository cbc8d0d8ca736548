#pragma once

#include <map>
#include <string>
#include <vector>

namespace hqi {

enum class Encoding { csv, binary };

/**
 * Gridded samples as read from or written to a grid file.
 *
 * The file starts with one line `#{json header}`:
 *   dims        1..3
 *   axes        per axis either {"nodes": [...]} or {"uniform": [a, b, n]}
 *               (n intervals; a periodic uniform axis has n samples and period b - a)
 *   periodic    per-axis flags (default false)
 *   period      per-axis periods, needed for periodic axes given by nodes
 *   components  values per grid point (default 1, > 1 only in 1D)
 *   derivatives names of the derivative blocks that follow the values, e.g. ["x"]
 *               or ["x", "y", "xy"]
 *   encoding    "csv" (default) or "binary"
 * The payload holds the value block and then each derivative block, all with
 * the x index fastest (components fastest of all). CSV payloads may spread the
 * numbers over lines freely; binary payloads are little-endian float64.
 */
struct GridFile {
    int dims = 1;
    std::vector<std::vector<double>> axes;
    std::vector<bool> periodic;
    std::vector<double> period;
    int components = 1;
    std::vector<double> values;
    std::map<std::string, std::vector<double>> derivatives;
    /// Derivative block order in the file.
    std::vector<std::string> derivative_order;

    size_t points() const;
    bool has(const std::string& name) const { return derivatives.count(name) > 0; }
};

/// Throws ParseError on malformed headers, short payloads or non-finite samples.
GridFile read_grid(const std::string& path);
GridFile parse_grid(const std::string& text);
void write_grid(const std::string& path, const GridFile& g, Encoding enc = Encoding::csv);
std::string format_grid_csv(const GridFile& g);

/// Shortest decimal form that parses back to the same double.
std::string format_double(double x);

}  // namespace hqi
