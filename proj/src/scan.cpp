#include "c3b/scan.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

namespace c3b {

namespace {

constexpr double kPi = std::numbers::pi;

// Depth below the collinear circle at which Boundary cells probe the limit class.
constexpr double kLimitDepth = 1e-9;

std::string fmt12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

CellClass to_cell(OrientationClass c) { return static_cast<CellClass>(static_cast<int>(c) + 2); }

OrientationClass limit_class(const BodySystem& sys, double nu, double angle) {
    double r = 1.0 - kLimitDepth;
    double V = potential_on_disk(sys, r * std::cos(angle), r * std::sin(angle));
    double M1 = 0.5 * (1.0 - r * r) / (1.0 + r);
    return orientation_class(V, M1, nu);
}

CellClass classify_cell(const BodySystem& sys, double nu, int N, int i, int j) {
    double w1 = pixel_center(i, N), w2 = pixel_center(j, N);
    double r2 = w1 * w1 + w2 * w2;
    if (r2 >= 1.0) return CellClass::Outside;
    if (1.0 - std::sqrt(r2) < 2.0 / N) return CellClass::Boundary;
    return to_cell(orientation_class(sys, nu, Shape(w1, w2)));
}

void fill_boundary_limits(ShapeScan& s) {
    struct Cell {
        double angle;
        std::size_t idx;
    };
    std::vector<Cell> band;
    for (int j = 0; j < s.N; ++j)
        for (int i = 0; i < s.N; ++i) {
            std::size_t idx = static_cast<std::size_t>(j) * s.N + i;
            if (s.cells[idx] == CellClass::Boundary)
                band.push_back({std::atan2(pixel_center(j, s.N), pixel_center(i, s.N)), idx});
        }
    for (const auto& c : band) s.boundary_limit[c.idx] = static_cast<std::int8_t>(limit_class(s.system, s.nu, c.angle));
    if (band.empty()) return;
    CollisionAngles ca = collision_angles(s.system);
    for (double psi : {ca.psi12, ca.psi23, ca.psi13}) {
        const Cell* best = &band.front();
        double bd = 1e300;
        for (const auto& c : band) {
            double d = std::abs(std::remainder(c.angle - psi, 2.0 * kPi));
            if (d < bd) {
                bd = d;
                best = &c;
            }
        }
        s.boundary_limit[best->idx] = static_cast<std::int8_t>(limit_class(s.system, s.nu, psi));
    }
}

ShapeScan scan_impl(const BodySystem& sys, double nu, int N, bool parallel) {
    if (N < 2) throw PreconditionError("scan resolution must be at least 2");
    sys.validate();
    ShapeScan s;
    s.N = N;
    s.nu = nu;
    s.system = sys;
    s.cells.assign(static_cast<std::size_t>(N) * N, CellClass::Outside);
    s.boundary_limit.assign(s.cells.size(), -1);
#pragma omp parallel for schedule(static) if (parallel)
    for (int j = 0; j < N; ++j)
        for (int i = 0; i < N; ++i) s.cells[static_cast<std::size_t>(j) * N + i] = classify_cell(sys, nu, N, i, j);
    fill_boundary_limits(s);
    return s;
}

double grid_value(const BodySystem& sys, int k, int N, bool chi_psi, int i, int j) {
    double w1, w2, M1;
    if (chi_psi) {
        double psi = 2.0 * kPi * (i + 0.5) / N;
        double chi = 0.5 * kPi * (j + 0.5) / N;
        w1 = std::cos(chi) * std::cos(psi);
        w2 = std::cos(chi) * std::sin(psi);
        double sh = std::sin(0.5 * chi);
        M1 = sh * sh;
    } else {
        w1 = pixel_center(i, N);
        w2 = pixel_center(j, N);
        double r2 = w1 * w1 + w2 * w2;
        if (r2 >= 1.0) return std::numeric_limits<double>::quiet_NaN();
        M1 = 0.5 * (1.0 - r2) / (1.0 + std::sqrt(r2));
    }
    double Mk = k == 1 ? M1 : (k == 2 ? 1.0 - M1 : 1.0);
    return std::sqrt(Mk) * potential_on_disk(sys, w1, w2);
}

ValueGrid grid_impl(const BodySystem& sys, int k, int N, bool chi_psi, bool parallel) {
    if (N < 2) throw PreconditionError("grid resolution must be at least 2");
    if (k < 1 || k > 3) throw PreconditionError("axis k must be 1, 2 or 3");
    ValueGrid g;
    g.N = N;
    g.axis = k;
    g.chi_psi = chi_psi;
    g.values.assign(static_cast<std::size_t>(N) * N, 0.0);
#pragma omp parallel for schedule(static) if (parallel)
    for (int j = 0; j < N; ++j)
        for (int i = 0; i < N; ++i) g.values[static_cast<std::size_t>(j) * N + i] = grid_value(sys, k, N, chi_psi, i, j);
    return g;
}

}  // namespace

std::string to_string(CellClass c) {
    switch (c) {
        case CellClass::Outside: return "Outside";
        case CellClass::Boundary: return "Boundary";
        case CellClass::Empty: return "Empty";
        case CellClass::Caps: return "Caps";
        case CellClass::Ring: return "Ring";
        case CellClass::Full: return "Full";
    }
    return "?";
}

CellClass cell_class_from_string(const std::string& s) {
    for (int c = 0; c <= static_cast<int>(CellClass::Full); ++c)
        if (to_string(static_cast<CellClass>(c)) == s) return static_cast<CellClass>(c);
    throw PreconditionError("unknown cell class: " + s);
}

double pixel_center(int i, int N) { return -1.0 + (2.0 * i + 1.0) / N; }

ShapeScan scan_disk(const BodySystem& sys, double nu, int N) { return scan_impl(sys, nu, N, true); }
ShapeScan scan_disk_serial(const BodySystem& sys, double nu, int N) { return scan_impl(sys, nu, N, false); }

std::array<double, 2> ValueGrid::coords(int i, int j) const {
    if (chi_psi) return {2.0 * kPi * (i + 0.5) / N, 0.5 * kPi * (j + 0.5) / N};
    return {pixel_center(i, N), pixel_center(j, N)};
}

ValueGrid contour_grid(const BodySystem& sys, int k, int N, bool chi_psi) { return grid_impl(sys, k, N, chi_psi, true); }
ValueGrid contour_grid_serial(const BodySystem& sys, int k, int N, bool chi_psi) {
    return grid_impl(sys, k, N, chi_psi, false);
}

namespace {

std::string ppm_header(int N) { return "P6\n" + std::to_string(N) + " " + std::to_string(N) + "\n255\n"; }

// Image rows run top to bottom, so row 0 is the largest w2.
template <class Pixel>
std::string ppm_body(int N, Pixel pixel) {
    std::string out = ppm_header(N);
    out.reserve(out.size() + 3 * static_cast<std::size_t>(N) * N);
    for (int row = 0; row < N; ++row) {
        int j = N - 1 - row;
        for (int i = 0; i < N; ++i) {
            std::array<unsigned char, 3> rgb = pixel(i, j);
            out.append(reinterpret_cast<const char*>(rgb.data()), 3);
        }
    }
    return out;
}

}  // namespace

std::string render_ppm(const ShapeScan& scan) {
    static constexpr std::array<std::array<unsigned char, 3>, 6> palette{{
        {255, 255, 255},  // Outside
        {0, 0, 0},        // Boundary
        {80, 80, 80},     // Empty
        {40, 80, 220},    // Caps
        {220, 50, 50},    // Ring
        {40, 170, 70},    // Full
    }};
    return ppm_body(scan.N, [&](int i, int j) { return palette[static_cast<int>(scan.at(i, j))]; });
}

std::string render_csv(const ShapeScan& scan) {
    std::string out = "w1,w2,class\n";
    for (int j = 0; j < scan.N; ++j)
        for (int i = 0; i < scan.N; ++i)
            out += fmt12(pixel_center(i, scan.N)) + "," + fmt12(pixel_center(j, scan.N)) + "," +
                   to_string(scan.at(i, j)) + "\n";
    return out;
}

std::string render_ppm(const ValueGrid& grid) {
    // Grey levels over the finite range; NaN cells white, -inf black, +inf white.
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (double v : grid.values)
        if (std::isfinite(v)) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    double span = hi > lo ? hi - lo : 1.0;
    return ppm_body(grid.N, [&](int i, int j) -> std::array<unsigned char, 3> {
        double v = grid.at(i, j);
        if (std::isnan(v)) return {255, 255, 255};
        double t = std::isfinite(v) ? (v - lo) / span : (v > 0 ? 1.0 : 0.0);
        auto g = static_cast<unsigned char>(std::lround(30.0 + 200.0 * t));
        return {g, g, g};
    });
}

std::string render_csv(const ValueGrid& grid) {
    std::string out = grid.chi_psi ? "psi,chi,value\n" : "w1,w2,value\n";
    for (int j = 0; j < grid.N; ++j)
        for (int i = 0; i < grid.N; ++i) {
            double v = grid.at(i, j);
            if (std::isnan(v)) continue;
            auto c = grid.coords(i, j);
            out += fmt12(c[0]) + "," + fmt12(c[1]) + "," + (std::isinf(v) ? (v > 0 ? "inf" : "-inf") : fmt12(v)) + "\n";
        }
    return out;
}

namespace {

// Labels 4-connected components of the interior cells selected by pred; the
// callback receives whether each component is adjacent to the band or the edge.
template <class Pred, class OnComponent>
void interior_components(const ShapeScan& scan, Pred pred, OnComponent on_component) {
    const int N = scan.N;
    auto interior = [&](int idx) {
        CellClass c = scan.cells[idx];
        return c != CellClass::Outside && c != CellClass::Boundary;
    };
    std::vector<char> seen(scan.cells.size(), 0);
    std::vector<int> stack;
    for (int start = 0; start < N * N; ++start) {
        if (seen[start] || !interior(start) || !pred(scan.cells[start])) continue;
        bool reaches_band = false;
        seen[start] = 1;
        stack.assign(1, start);
        while (!stack.empty()) {
            int idx = stack.back();
            stack.pop_back();
            int i = idx % N, j = idx / N;
            const int nb[4][2] = {{i - 1, j}, {i + 1, j}, {i, j - 1}, {i, j + 1}};
            for (const auto& n : nb) {
                if (n[0] < 0 || n[0] >= N || n[1] < 0 || n[1] >= N) {
                    reaches_band = true;
                    continue;
                }
                int k = n[1] * N + n[0];
                if (!interior(k)) {
                    reaches_band = true;
                    continue;
                }
                if (!seen[k] && pred(scan.cells[k])) {
                    seen[k] = 1;
                    stack.push_back(k);
                }
            }
        }
        on_component(scan.cells[start], reaches_band);
    }
}

// Number of maximal runs of true values on a cycle; an all-true cycle is one run.
int cyclic_runs(const std::vector<bool>& v) {
    if (v.empty()) return 0;
    if (std::all_of(v.begin(), v.end(), [](bool x) { return x; })) return 1;
    int runs = 0;
    for (std::size_t n = 0; n < v.size(); ++n)
        if (v[n] && !v[(n + v.size() - 1) % v.size()]) ++runs;
    return runs;
}

}  // namespace

Census component_census(const ShapeScan& scan) {
    Census c;
    const int N = scan.N;
    for (int k = 0; k < 4; ++k) {
        CellClass cls = static_cast<CellClass>(k + 2);
        interior_components(
            scan, [cls](CellClass x) { return x == cls; }, [&](CellClass, bool) { ++c.components[k]; });
    }
    for (int k = 1; k <= 3; ++k) {
        LevelTopology& t = c.levels[k - 1];
        auto above = [k](CellClass x) { return static_cast<int>(x) - 2 >= k; };
        interior_components(scan, above, [&](CellClass, bool band) { t.islands += !band; });
        interior_components(
            scan, [&](CellClass x) { return !above(x); }, [&](CellClass, bool band) { t.holes += !band; });
    }

    struct Cell {
        double angle;
        int limit;
    };
    std::vector<Cell> band;
    for (int j = 0; j < N; ++j)
        for (int i = 0; i < N; ++i) {
            std::size_t idx = static_cast<std::size_t>(j) * N + i;
            if (scan.cells[idx] == CellClass::Boundary)
                band.push_back({std::atan2(pixel_center(j, N), pixel_center(i, N)), scan.boundary_limit[idx]});
        }
    std::sort(band.begin(), band.end(), [](const Cell& a, const Cell& b) { return a.angle < b.angle; });
    std::vector<bool> mask(band.size());
    for (int k = 0; k < 4; ++k) {
        for (std::size_t n = 0; n < band.size(); ++n) mask[n] = band[n].limit == k;
        c.contact_arcs[k] = cyclic_runs(mask);
        c.touches[k] = c.contact_arcs[k] > 0;
    }
    for (int k = 1; k <= 3; ++k) {
        for (std::size_t n = 0; n < band.size(); ++n) mask[n] = band[n].limit >= k;
        c.levels[k - 1].arcs_above = cyclic_runs(mask);
        mask.flip();
        c.levels[k - 1].arcs_below = cyclic_runs(mask);
    }
    return c;
}

std::string to_string(const Census& c) {
    std::string out;
    for (int k = 0; k < 4; ++k) {
        if (k) out += " ";
        out += to_string(static_cast<OrientationClass>(k)) + "=" + std::to_string(c.components[k]) + "/" +
               std::to_string(c.contact_arcs[k]);
    }
    static constexpr const char* names[3] = {"Caps", "Ring", "Full"};
    for (int k = 0; k < 3; ++k) {
        const LevelTopology& t = c.levels[k];
        out += std::string(" >=") + names[k] + "=" + std::to_string(t.islands) + "," + std::to_string(t.holes) + "," +
               std::to_string(t.arcs_above) + "," + std::to_string(t.arcs_below);
    }
    return out;
}

}  // namespace c3b
