#include "ca2d/grid.hpp"

#include <algorithm>
#include <sstream>

#include "ca2d/errors.hpp"
#include "ca2d/rng.hpp"

namespace ca2d {

namespace {

int digit_value(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'z') return c - 'a' + 10;
    return -1;
}
char digit_char(int v) { return v < 10 ? char('0' + v) : char('a' + v - 10); }

long mod(long a, long m) {
    long r = a % m;
    return r < 0 ? r + m : r;
}

// Packed row shifted horizontally: dst bit b = src bit (b + di), zero-filled
// outside [0, w). Words beyond w*... in src are kept zero by invariant.
void shift_row(const uint64_t* src, uint64_t* dst, long nwords, long w, long di) {
    if (di == 0) {
        std::copy(src, src + nwords, dst);
        return;
    }
    if (di > 0) {
        long word_off = di / 64, bit_off = di % 64;
        for (long k = 0; k < nwords; ++k) {
            uint64_t lo = (k + word_off < nwords) ? src[k + word_off] : 0;
            uint64_t hi = (k + word_off + 1 < nwords) ? src[k + word_off + 1] : 0;
            dst[k] = bit_off == 0 ? lo : (lo >> bit_off) | (hi << (64 - bit_off));
        }
    } else {
        long s = -di;
        long word_off = s / 64, bit_off = s % 64;
        for (long k = nwords - 1; k >= 0; --k) {
            uint64_t lo = (k - word_off >= 0) ? src[k - word_off] : 0;
            uint64_t hi = (k - word_off - 1 >= 0) ? src[k - word_off - 1] : 0;
            dst[k] = bit_off == 0 ? lo : (lo << bit_off) | (hi >> (64 - bit_off));
        }
    }
    // clear bits >= w in the last word
    long tail = w % 64;
    if (tail) dst[nwords - 1] &= (uint64_t(1) << tail) - 1;
}

} // namespace

Configuration::Configuration(int q, long width, long height, long origin_i, long origin_j,
                             Boundary boundary)
    : q_(q), w_(width), h_(height), origin_i_(origin_i), origin_j_(origin_j),
      boundary_(boundary) {
    if (q < 2 || q > 36) throw domain_error("alphabet size must be in [2, 36]");
    if (width < 1 || height < 1) throw domain_error("window dimensions must be positive");
    valid_ = window();
    if (q_ == 2) {
        wpr_ = (w_ + 63) / 64;
        bits_.assign(static_cast<size_t>(wpr_ * h_), 0);
    } else {
        bytes_.assign(static_cast<size_t>(w_ * h_), 0);
    }
}

int Configuration::get(long ix, long iy) const {
    if (q_ == 2)
        return static_cast<int>((bits_[static_cast<size_t>(iy * wpr_ + ix / 64)] >> (ix % 64)) & 1u);
    return bytes_[static_cast<size_t>(iy * w_ + ix)];
}

void Configuration::set(long ix, long iy, int v) {
    if (q_ == 2) {
        uint64_t& word = bits_[static_cast<size_t>(iy * wpr_ + ix / 64)];
        uint64_t mask = uint64_t(1) << (ix % 64);
        word = v ? (word | mask) : (word & ~mask);
    } else {
        bytes_[static_cast<size_t>(iy * w_ + ix)] = static_cast<uint8_t>(v);
    }
}

void Configuration::set_origin(long i, long j) {
    long di = i - origin_i_, dj = j - origin_j_;
    origin_i_ = i;
    origin_j_ = j;
    valid_ = {valid_.i0 + di, valid_.j0 + dj, valid_.i1 + di, valid_.j1 + dj};
}

namespace {

// One synchronous update, generic path (any q, any rule kind, both boundaries).
Configuration step_generic(const Configuration& in, const RuleSpec& rule) {
    Configuration out = in;
    const int r = rule.radius;
    const int nb = rule.neighborhood();
    std::vector<uint8_t> nbhd(static_cast<size_t>(nb));
    const bool wrap = in.boundary() == Boundary::periodic;
    for (long iy = 0; iy < in.height(); ++iy) {
        for (long ix = 0; ix < in.width(); ++ix) {
            for (int dj = r; dj >= -r; --dj) {
                for (int di = -r; di <= r; ++di) {
                    long sx = ix + di, sy = iy + dj;
                    int v = 0;
                    if (wrap) {
                        v = in.get(mod(sx, in.width()), mod(sy, in.height()));
                    } else if (sx >= 0 && sx < in.width() && sy >= 0 && sy < in.height()) {
                        v = in.get(sx, sy);
                    }
                    nbhd[static_cast<size_t>(rule.pattern_pos(di, dj))] = static_cast<uint8_t>(v);
                }
            }
            out.set(ix, iy, apply_rule(rule, nbhd));
        }
    }
    return out;
}

// Word-parallel update for linear rules over q = 2 with the shrink boundary:
// the new grid is the XOR of one shifted copy per term.
Configuration step_packed_linear(const Configuration& in, const RuleSpec& rule) {
    Configuration out = in;
    const long wpr = in.words_per_row();
    const long h = in.height();
    std::vector<uint64_t> acc(static_cast<size_t>(wpr * h), 0);
    std::vector<uint64_t> row(static_cast<size_t>(wpr));
    for (const auto& t : rule.terms) {
        for (long iy = 0; iy < h; ++iy) {
            long sy = iy + t.dj;
            if (sy < 0 || sy >= h) continue; // zero rows contribute nothing
            shift_row(in.packed_row(sy), row.data(), wpr, in.width(), t.di);
            uint64_t* dst = &acc[static_cast<size_t>(iy * wpr)];
            for (long k = 0; k < wpr; ++k) dst[k] ^= row[k];
        }
    }
    out.set_packed(std::move(acc));
    return out;
}

} // namespace

Configuration step(const Configuration& config, const RuleSpec& rule, int steps) {
    if (steps < 0) throw domain_error("steps must be nonnegative");
    if (config.q() != rule.q) throw domain_error("configuration and rule alphabets differ");
    if (config.boundary() == Boundary::shrink) {
        LatticeRect target = config.valid_region().shrunk(static_cast<long>(steps) * rule.radius);
        if (target.empty() && steps > 0 && rule.radius > 0)
            throw domain_error("valid region exhausted after " + std::to_string(steps) + " steps");
    }
    Configuration cur = config;
    const bool fast = config.packed() && rule.is_linear() && config.boundary() == Boundary::shrink;
    for (int s = 0; s < steps; ++s) {
        cur = fast ? step_packed_linear(cur, rule) : step_generic(cur, rule);
        if (cur.boundary() == Boundary::shrink)
            cur.set_valid_region(cur.valid_region().shrunk(rule.radius));
    }
    return cur;
}

Configuration shift(const Configuration& config, Axis axis, long amount) {
    Configuration out = config;
    if (axis == Axis::horizontal)
        out.set_origin(config.origin_i() - amount, config.origin_j());
    else
        out.set_origin(config.origin_i(), config.origin_j() - amount);
    return out;
}

Configuration sample_configuration(const MeasureSpec& measure, long width, long height,
                                   uint64_t seed, uint64_t stream,
                                   long origin_i, long origin_j, Boundary boundary) {
    if (width < 1 || height < 1) throw domain_error("window dimensions must be positive");
    Configuration c(measure.q(), width, height, origin_i, origin_j, boundary);
    for (long iy = 0; iy < height; ++iy)
        for (long ix = 0; ix < width; ++ix) {
            uint64_t counter = static_cast<uint64_t>(iy) * static_cast<uint64_t>(width) +
                               static_cast<uint64_t>(ix);
            c.set(ix, iy, measure.draw(rand_unit(seed, stream, counter)));
        }
    return c;
}

bool agree_on(const Configuration& a, const Configuration& b, const LatticeRect& region) {
    if (region.empty()) return true;
    if (!a.valid_region().intersect(region).contains(region.i0, region.j0) ||
        !b.valid_region().intersect(region).contains(region.i0, region.j0))
        throw domain_error("comparison region outside a valid region");
    for (long j = region.j0; j <= region.j1; ++j)
        for (long i = region.i0; i <= region.i1; ++i)
            if (a.at(i, j) != b.at(i, j)) return false;
    return true;
}

std::string dump_configuration(const Configuration& config) {
    std::ostringstream os;
    os << "#ca2d w=" << config.width() << " h=" << config.height() << " q=" << config.q()
       << " origin=(" << config.origin_i() << "," << config.origin_j() << ")\n";
    const LatticeRect& v = config.valid_region();
    os << "# valid=(" << v.i0 << "," << v.j0 << ")..(" << v.i1 << "," << v.j1 << ") boundary="
       << (config.boundary() == Boundary::shrink ? "shrink" : "periodic") << "\n";
    for (long iy = config.height() - 1; iy >= 0; --iy) {
        for (long ix = 0; ix < config.width(); ++ix) os << digit_char(config.get(ix, iy));
        os << "\n";
    }
    return os.str();
}

Configuration parse_configuration(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    long w = -1, h = -1, oi = 0, oj = 0;
    int q = -1;
    LatticeRect valid;
    bool have_valid = false;
    Boundary boundary = Boundary::shrink;
    int lineno = 0;

    if (!std::getline(in, line)) throw parse_error("empty configuration dump");
    ++lineno;
    if (std::sscanf(line.c_str(), "#ca2d w=%ld h=%ld q=%d origin=(%ld,%ld)", &w, &h, &q, &oi, &oj) != 5)
        throw parse_error("malformed header, expected '#ca2d w=.. h=.. q=.. origin=(..,..)'", lineno);
    if (w < 1 || h < 1 || q < 2 || q > 36) throw parse_error("invalid dimensions or alphabet", lineno);

    std::vector<std::string> rows;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line[0] == '#') {
            long a, b, c, d;
            char bstr[16] = {0};
            if (std::sscanf(line.c_str(), "# valid=(%ld,%ld)..(%ld,%ld) boundary=%15s", &a, &b, &c, &d, bstr) == 5) {
                valid = {a, b, c, d};
                have_valid = true;
                boundary = std::string(bstr) == "periodic" ? Boundary::periodic : Boundary::shrink;
            }
            continue;
        }
        if (line.empty()) continue;
        if (static_cast<long>(line.size()) != w) throw parse_error("row width mismatch", lineno);
        rows.push_back(line);
    }
    if (static_cast<long>(rows.size()) != h) throw parse_error("expected " + std::to_string(h) + " rows");

    Configuration c(q, w, h, oi, oj, boundary);
    for (long k = 0; k < h; ++k) {
        long iy = h - 1 - k; // top row first in the dump
        for (long ix = 0; ix < w; ++ix) {
            int v = digit_value(rows[static_cast<size_t>(k)][static_cast<size_t>(ix)]);
            if (v < 0 || v >= q) throw parse_error("symbol outside alphabet in row " + std::to_string(k));
            c.set(ix, iy, v);
        }
    }
    if (have_valid) c.set_valid_region(valid);
    return c;
}

} // namespace ca2d
