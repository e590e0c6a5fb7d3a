#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ca2d/measure.hpp"
#include "ca2d/rule.hpp"

namespace ca2d {

enum class Boundary { shrink, periodic };
enum class Axis { horizontal, vertical };

// Inclusive lattice rectangle; empty when i0 > i1 or j0 > j1.
struct LatticeRect {
    long i0 = 0, j0 = 0, i1 = -1, j1 = -1;

    bool empty() const { return i0 > i1 || j0 > j1; }
    long width() const { return empty() ? 0 : i1 - i0 + 1; }
    long height() const { return empty() ? 0 : j1 - j0 + 1; }
    bool contains(long i, long j) const { return !empty() && i >= i0 && i <= i1 && j >= j0 && j <= j1; }

    LatticeRect shrunk(long by) const { return {i0 + by, j0 + by, i1 - by, j1 - by}; }
    LatticeRect intersect(const LatticeRect& o) const {
        return {std::max(i0, o.i0), std::max(j0, o.j0), std::min(i1, o.i1), std::min(j1, o.j1)};
    }
};

// A finite window of the infinite lattice. Window cell (ix, iy) holds the
// symbol at lattice coordinate (origin_i + ix, origin_j + iy); i is the
// horizontal axis, j the vertical one.
//
// Under the shrink boundary, valid_region marks the cells that provably
// equal the infinite-lattice evolution; it contracts by the rule radius on
// each side per step. Cells outside it hold deterministic but meaningless
// values (out-of-window reads are zero-filled). Under periodic the window
// wraps toroidally and valid_region stays the full window.
//
// Binary alphabets are stored bit-packed, 64 cells per word; general q uses
// one byte per cell. Values are immutable in the library API: every
// operation returns a fresh Configuration.
class Configuration {
public:
    Configuration() = default;
    Configuration(int q, long width, long height, long origin_i, long origin_j,
                  Boundary boundary);

    int q() const { return q_; }
    long width() const { return w_; }
    long height() const { return h_; }
    long origin_i() const { return origin_i_; }
    long origin_j() const { return origin_j_; }
    Boundary boundary() const { return boundary_; }
    const LatticeRect& valid_region() const { return valid_; }
    LatticeRect window() const { return {origin_i_, origin_j_, origin_i_ + w_ - 1, origin_j_ + h_ - 1}; }

    int get(long ix, long iy) const;                 // window-local
    void set(long ix, long iy, int v);               // window-local
    int at(long i, long j) const { return get(i - origin_i_, j - origin_j_); }
    void put(long i, long j, int v) { set(i - origin_i_, j - origin_j_, v); }

    void set_valid_region(const LatticeRect& r) { valid_ = r; }
    void set_origin(long i, long j);

    const uint64_t* packed_row(long iy) const { return &bits_[static_cast<size_t>(iy * wpr_)]; }
    void set_packed(std::vector<uint64_t> bits) { bits_ = std::move(bits); }
    long words_per_row() const { return wpr_; }
    bool packed() const { return q_ == 2; }

private:
    int q_ = 2;
    long w_ = 0, h_ = 0;
    long origin_i_ = 0, origin_j_ = 0;
    Boundary boundary_ = Boundary::shrink;
    LatticeRect valid_;
    long wpr_ = 0;                 // words per row when packed
    std::vector<uint64_t> bits_;   // q == 2
    std::vector<uint8_t> bytes_;   // q > 2
};

// Applies the rule synchronously `steps` times. Shrink: the valid region
// contracts by steps*radius per side and must stay nonempty. Periodic:
// toroidal wrap, valid region unchanged. Linear rules on q = 2 run
// word-parallel over the packed rows.
Configuration step(const Configuration& config, const RuleSpec& rule, int steps);

// sigma_1^m / sigma_2^m: content at (i,j) becomes x at (i+m, j) (resp. j+m).
// Implemented as an origin translation; O(1).
Configuration shift(const Configuration& config, Axis axis, long amount);

// i.i.d. window draw from the product measure. Cell (ix, iy) uses counter
// iy*width + ix of rand64(seed, stream, counter), so identical seeds give
// bit-identical windows on every platform.
Configuration sample_configuration(const MeasureSpec& measure, long width, long height,
                                   uint64_t seed, uint64_t stream = 0,
                                   long origin_i = 0, long origin_j = 0,
                                   Boundary boundary = Boundary::shrink);

// True when the two configurations agree on every cell of `region`, which
// must lie inside both valid regions.
bool agree_on(const Configuration& a, const Configuration& b, const LatticeRect& region);

// Text dump: "#ca2d w=<w> h=<h> q=<q> origin=(<i>,<j>)", one row per line,
// top row (largest j) first, symbols as base-q digits. A second comment line
// carries the valid region so round-trips preserve it.
std::string dump_configuration(const Configuration& config);
Configuration parse_configuration(const std::string& text);

} // namespace ca2d
