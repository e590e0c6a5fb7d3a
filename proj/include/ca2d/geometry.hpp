#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ca2d/grid.hpp"
#include "ca2d/lyapunov.hpp"

namespace ca2d {

using Cell = std::pair<long, long>;

// Explicit finite set of lattice coordinates, sorted by (i, j).
class CellSet {
public:
    CellSet() = default;
    explicit CellSet(std::vector<Cell> cells);

    size_t size() const { return cells_.size(); }
    const std::vector<Cell>& cells() const { return cells_; }
    bool contains(long i, long j) const;

    // CSV with header "i,j"; when area >= 0, a trailing "# area=<int>" line.
    std::string to_csv(long area = -1) const;

private:
    std::vector<Cell> cells_;
};

// Points of the almost line at angle theta through `anchor` for parameter
// indices k_min..k_max: the continuous line (angle measured from the
// vertical axis, direction (sin theta, cos theta)) is swept at step 1/8 and
// integer parts are emitted, consecutively deduplicated. Index 0 is the
// anchor itself.
std::vector<Cell> almost_line(double theta, Cell anchor, long k_min, long k_max);

// Half-plane with boundary perpendicular to u(theta) = (cos theta, sin theta)
// through `anchor`, nonpositive side (boundary inclusive):
//     <cell - anchor, u(theta)> <= 0.
bool half_plane_contains(double theta, Cell anchor, Cell cell);

// G_n(theta) = (ceil(sqrt(2) n cos), ceil(sqrt(2) n sin)) on [0, pi],
// (0, 0) on (pi, 2pi].
Cell g_n(double theta, int n);

// Vertices P_k = G_nF(2 pi k / n) + G_n(2 pi k / n), k = 0..n, taken from the
// profile's anchors. The profile must be sampled at those angles.
std::vector<Cell> surface_vertices(int n, const DirectionProfile& profile);

// Lyapunov exponent surface T_n: cells z with |z| <= |P_k| for the grid angle
// theta_k nearest to the direction of z, plus the origin.
CellSet surface_T(int n, const DirectionProfile& profile);

// Surface of common behaviour T_n*: intersection of the n+1 half-planes
// anchored at the P_k, clipped to the rectangle R_n before counting (the
// unclipped intersection is unbounded to the lower-left).
CellSet surface_T_star(int n, const DirectionProfile& profile);

// Unclipped membership predicate for T_n* (all half-plane constraints).
bool t_star_contains(int n, const DirectionProfile& profile, Cell cell);

struct TDoubleStarResult {
    CellSet cells;  // T_n** = T_n intersect T_n*
    double ratio;   // |T_n**| / |T_n*|
};
TDoubleStarResult surface_T_dstar(int n, const DirectionProfile& profile);

// Rectangle R_n = [-Lambda_n(pi), Lambda_n(0)+n] x [-Lambda_n(3pi/2),
// Lambda_n(pi/2)+n]; `area` is the continuous product
// (Lambda(0)+Lambda(pi)+n)(Lambda(pi/2)+Lambda(3pi/2)+n).
struct RectangleSurface {
    CellSet cells;
    LatticeRect rect;
    long area = 0;
};
RectangleSurface surface_R(int n, const DirectionProfile& profile);

// Shoelace area and perimeter of the closed polygon through the P_k.
double polygon_area(const std::vector<Cell>& vertices);
double polygon_perimeter(const std::vector<Cell>& vertices);

} // namespace ca2d
