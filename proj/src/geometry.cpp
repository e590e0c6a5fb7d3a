#include "ca2d/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ca2d/errors.hpp"

namespace ca2d {

namespace {

constexpr double kEps = 1e-9;
const double kPi = std::acos(-1.0);

double ceil_snapped(double x) {
    double r = std::round(x);
    if (std::abs(x - r) < kEps) return r;
    return std::ceil(x);
}

double norm(const Cell& c) { return std::hypot(static_cast<double>(c.first), static_cast<double>(c.second)); }

} // namespace

CellSet::CellSet(std::vector<Cell> cells) : cells_(std::move(cells)) {
    std::sort(cells_.begin(), cells_.end());
    cells_.erase(std::unique(cells_.begin(), cells_.end()), cells_.end());
}

bool CellSet::contains(long i, long j) const {
    return std::binary_search(cells_.begin(), cells_.end(), Cell{i, j});
}

std::string CellSet::to_csv(long area) const {
    std::ostringstream os;
    os << "i,j\n";
    for (const auto& [i, j] : cells_) os << i << "," << j << "\n";
    if (area >= 0) os << "# area=" << area << "\n";
    return os.str();
}

std::vector<Cell> almost_line(double theta, Cell anchor, long k_min, long k_max) {
    if (k_min > k_max) throw domain_error("k_min must not exceed k_max");
    // Direction of a line making angle theta with the vertical axis.
    const double dx = dir_sin(theta), dy = dir_cos(theta);
    const double step = 0.125; // any step <= 1/2 yields the same point set

    auto emit_side = [&](double sgn) {
        std::vector<Cell> pts;
        Cell prev{anchor.first, anchor.second};
        pts.push_back(prev);
        double t = 0.0;
        // sweep far enough that |k_min|+|k_max|+1 distinct points exist
        size_t want = static_cast<size_t>(std::max(std::abs(k_min), std::abs(k_max))) + 1;
        while (pts.size() < want + 1) {
            t += step;
            double x = anchor.first + sgn * t * dx;
            double y = anchor.second + sgn * t * dy;
            Cell cur{static_cast<long>(std::floor(x + kEps)), static_cast<long>(std::floor(y + kEps))};
            if (cur != prev) {
                pts.push_back(cur);
                prev = cur;
            }
        }
        return pts;
    };

    std::vector<Cell> pos = emit_side(+1.0);
    std::vector<Cell> neg = emit_side(-1.0);
    std::vector<Cell> out;
    for (long k = k_min; k <= k_max; ++k) {
        if (k >= 0) out.push_back(pos[static_cast<size_t>(k)]);
        else out.push_back(neg[static_cast<size_t>(-k)]);
    }
    return out;
}

bool half_plane_contains(double theta, Cell anchor, Cell cell) {
    const double c = dir_cos(theta), s = dir_sin(theta);
    double dot = (cell.first - anchor.first) * c + (cell.second - anchor.second) * s;
    return dot <= kEps;
}

Cell g_n(double theta, int n) {
    if (theta < -kEps || theta > 2 * kPi + kEps) throw domain_error("angle must lie in [0, 2*pi]");
    if (theta <= kPi + 1e-12) {
        double f = std::sqrt(2.0) * n;
        return {static_cast<long>(ceil_snapped(f * dir_cos(theta))),
                static_cast<long>(ceil_snapped(f * dir_sin(theta)))};
    }
    return {0, 0};
}

std::vector<Cell> surface_vertices(int n, const DirectionProfile& profile) {
    if (n < 1) throw domain_error("surface index must be >= 1");
    std::vector<Cell> verts;
    verts.reserve(static_cast<size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) {
        double theta = 2.0 * kPi * k / n;
        size_t a = profile.index_of(theta); // throws on grid mismatch
        Cell gf = profile.anchor[a];
        Cell g = g_n(theta, n);
        verts.push_back({gf.first + g.first, gf.second + g.second});
    }
    return verts;
}

CellSet surface_T(int n, const DirectionProfile& profile) {
    std::vector<Cell> verts = surface_vertices(n, profile);
    std::vector<double> radii(verts.size());
    double rmax = 0.0;
    for (size_t k = 0; k < verts.size(); ++k) {
        radii[k] = norm(verts[k]);
        rmax = std::max(rmax, radii[k]);
    }
    long R = static_cast<long>(std::ceil(rmax)) + 1;
    std::vector<Cell> cells;
    cells.push_back({0, 0});
    for (long j = -R; j <= R; ++j)
        for (long i = -R; i <= R; ++i) {
            if (i == 0 && j == 0) continue;
            double theta = std::atan2(static_cast<double>(j), static_cast<double>(i));
            if (theta < 0) theta += 2 * kPi;
            size_t k = static_cast<size_t>(std::lround(theta * n / (2 * kPi)));
            if (std::hypot(static_cast<double>(i), static_cast<double>(j)) <= radii[k] + kEps)
                cells.push_back({i, j});
        }
    return CellSet(std::move(cells));
}

bool t_star_contains(int n, const DirectionProfile& profile, Cell cell) {
    std::vector<Cell> verts = surface_vertices(n, profile);
    for (int k = 0; k <= n; ++k) {
        double theta = 2.0 * kPi * k / n;
        if (!half_plane_contains(theta, verts[static_cast<size_t>(k)], cell)) return false;
    }
    return true;
}

namespace {

LatticeRect rect_R(int n, const DirectionProfile& profile) {
    const double pi = kPi;
    long l0 = std::lround(profile.lambda_n_at(0.0));
    long lpi = std::lround(profile.lambda_n_at(pi));
    long lp2 = std::lround(profile.lambda_n_at(pi / 2));
    long l3p2 = std::lround(profile.lambda_n_at(3 * pi / 2));
    return {-lpi, -l3p2, l0 + n, lp2 + n};
}

} // namespace

CellSet surface_T_star(int n, const DirectionProfile& profile) {
    std::vector<Cell> verts = surface_vertices(n, profile);
    std::vector<double> ux(verts.size()), uy(verts.size());
    for (int k = 0; k <= n; ++k) {
        double theta = 2.0 * kPi * k / n;
        ux[static_cast<size_t>(k)] = dir_cos(theta);
        uy[static_cast<size_t>(k)] = dir_sin(theta);
    }
    LatticeRect R = rect_R(n, profile);
    std::vector<Cell> cells;
    for (long j = R.j0; j <= R.j1; ++j)
        for (long i = R.i0; i <= R.i1; ++i) {
            bool inside = true;
            for (size_t k = 0; k < verts.size(); ++k) {
                double dot = (i - verts[k].first) * ux[k] + (j - verts[k].second) * uy[k];
                if (dot > kEps) { inside = false; break; }
            }
            if (inside) cells.push_back({i, j});
        }
    return CellSet(std::move(cells));
}

TDoubleStarResult surface_T_dstar(int n, const DirectionProfile& profile) {
    CellSet t = surface_T(n, profile);
    CellSet ts = surface_T_star(n, profile);
    std::vector<Cell> inter;
    std::set_intersection(t.cells().begin(), t.cells().end(),
                          ts.cells().begin(), ts.cells().end(), std::back_inserter(inter));
    TDoubleStarResult out{CellSet(std::move(inter)), 0.0};
    if (ts.size() == 0) throw domain_error("T_n* is empty");
    out.ratio = static_cast<double>(out.cells.size()) / static_cast<double>(ts.size());
    return out;
}

RectangleSurface surface_R(int n, const DirectionProfile& profile) {
    RectangleSurface out;
    out.rect = rect_R(n, profile);
    std::vector<Cell> cells;
    cells.reserve(static_cast<size_t>(out.rect.width() * out.rect.height()));
    for (long j = out.rect.j0; j <= out.rect.j1; ++j)
        for (long i = out.rect.i0; i <= out.rect.i1; ++i) cells.push_back({i, j});
    out.cells = CellSet(std::move(cells));
    long w = out.rect.i1 - out.rect.i0; // Lambda(0)+Lambda(pi)+n
    long h = out.rect.j1 - out.rect.j0;
    out.area = w * h;
    return out;
}

double polygon_area(const std::vector<Cell>& vertices) {
    double acc = 0.0;
    for (size_t k = 0; k < vertices.size(); ++k) {
        const Cell& a = vertices[k];
        const Cell& b = vertices[(k + 1) % vertices.size()];
        acc += static_cast<double>(a.first) * b.second - static_cast<double>(b.first) * a.second;
    }
    return std::abs(acc) / 2.0;
}

double polygon_perimeter(const std::vector<Cell>& vertices) {
    double acc = 0.0;
    for (size_t k = 0; k < vertices.size(); ++k) {
        const Cell& a = vertices[k];
        const Cell& b = vertices[(k + 1) % vertices.size()];
        acc += std::hypot(static_cast<double>(b.first - a.first), static_cast<double>(b.second - a.second));
    }
    return acc;
}

} // namespace ca2d
