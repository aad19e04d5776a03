// Raster scans of the shape disk.
#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "c3b/coords.hpp"
#include "c3b/hill.hpp"

namespace c3b {

enum class CellClass : std::uint8_t { Outside, Boundary, Empty, Caps, Ring, Full };
std::string to_string(CellClass c);
CellClass cell_class_from_string(const std::string& s);

// Cell (i, j) has pixel centre w1 = -1 + (2i+1)/N, w2 = -1 + (2j+1)/N and is
// stored at index j * N + i.
struct ShapeScan {
    int N = 0;
    double nu = 0.0;
    BodySystem system;
    std::vector<CellClass> cells;
    // Boundary cells only: class of the collinear circle approached along the
    // cell's polar angle (exactly along a collision angle for the nearest cell).
    std::vector<std::int8_t> boundary_limit;

    CellClass at(int i, int j) const { return cells[static_cast<std::size_t>(j) * N + i]; }
};

double pixel_center(int i, int N);

ShapeScan scan_disk(const BodySystem& sys, double nu, int N);
// Single-threaded reference implementation; output is identical to scan_disk.
ShapeScan scan_disk_serial(const BodySystem& sys, double nu, int N);

struct ValueGrid {
    int N = 0;
    int axis = 1;
    bool chi_psi = false;  // if set, i indexes psi in [0, 2 pi) and j indexes chi in [0, pi/2]
    std::vector<double> values;  // NaN outside the disk

    double at(int i, int j) const { return values[static_cast<std::size_t>(j) * N + i]; }
    std::array<double, 2> coords(int i, int j) const;
};

ValueGrid contour_grid(const BodySystem& sys, int k, int N, bool chi_psi);
ValueGrid contour_grid_serial(const BodySystem& sys, int k, int N, bool chi_psi);

std::string render_ppm(const ShapeScan& scan);
std::string render_csv(const ShapeScan& scan);
std::string render_ppm(const ValueGrid& grid);
std::string render_csv(const ValueGrid& grid);

// Topology of the superlevel set {class >= k} for one threshold k. Islands and
// holes are 4-connected interior components of the set and of its complement
// that stay clear of the Boundary band; whatever reaches the band is described
// by the contact arcs of the limit classes instead. Both pieces are stable at
// finite resolution, unlike slivers that run within a pixel of the band.
struct LevelTopology {
    int islands = 0;
    int holes = 0;
    int arcs_above = 0;  // runs of Boundary cells with limit >= k; a full circle is one run
    int arcs_below = 0;

    bool operator==(const LevelTopology&) const = default;
};

struct Census {
    std::array<int, 4> components{};    // 4-connected interior components, indexed by OrientationClass
    std::array<int, 4> contact_arcs{};  // runs of Boundary cells, in angular order, whose limit is the class
    std::array<bool, 4> touches{};      // contact_arcs > 0
    std::array<LevelTopology, 3> levels{};  // thresholds Caps, Ring, Full

    bool operator==(const Census&) const = default;
    // The resolution-stable part: level topologies and boundary touches.
    bool same_topology(const Census& o) const { return levels == o.levels && touches == o.touches; }
};

Census component_census(const ShapeScan& scan);
std::string to_string(const Census& c);

}  // namespace c3b
