#include "ca2d/lyapunov.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>
#include <thread>

#include "ca2d/errors.hpp"
#include "ca2d/grid.hpp"
#include "ca2d/rng.hpp"

namespace ca2d {

namespace {

constexpr double kSnap = 1e-12;
constexpr double kEps = 1e-9;

double snap(double x) { return std::abs(x) < kSnap ? 0.0 : x; }

// Ceiling with protection against values sitting epsilon above an integer.
double ceil_snapped(double x) {
    double r = std::round(x);
    if (std::abs(x - r) < kEps) return r;
    return std::ceil(x);
}

std::pair<long, long> ray_anchor(double lambda, double c, double s) {
    return {std::lround(lambda * c), std::lround(lambda * s)};
}

} // namespace

double dir_cos(double theta) { return snap(std::cos(theta)); }
double dir_sin(double theta) { return snap(std::sin(theta)); }

size_t DirectionProfile::index_of(double theta) const {
    auto it = std::lower_bound(angles.begin(), angles.end(), theta - 1e-9);
    if (it == angles.end() || std::abs(*it - theta) > 1e-9)
        throw domain_error("angle not present in profile grid");
    return static_cast<size_t>(it - angles.begin());
}

namespace {

// Prefix maxima of <w, u(theta)> over the composed supports, ceiled to the
// integer anchor-distance grid.
std::vector<double> extents_from_deps(const std::vector<OffsetPoly>& deps, double theta) {
    const double c = dir_cos(theta), s = dir_sin(theta);
    std::vector<double> out(deps.size());
    double prefix = 0.0;
    for (size_t k = 0; k < deps.size(); ++k) {
        for (const auto& [off, coeff] : deps[k]) {
            (void)coeff;
            prefix = std::max(prefix, off.first * c + off.second * s);
        }
        out[k] = ceil_snapped(prefix);
    }
    return out;
}

} // namespace

std::vector<double> exact_directional_extents(const RuleSpec& rule, double theta, int n) {
    if (!rule.is_linear()) throw domain_error("exact extents require a linear rule");
    return extents_from_deps(dependence_sets(rule, n), theta);
}

double exact_directional_extent(const RuleSpec& rule, double theta, int n) {
    return exact_directional_extents(rule, theta, n).back();
}

double sampled_extent(const RuleSpec& rule, double theta, int n, int samples,
                      long window_pad, uint64_t seed) {
    if (samples < 1) throw domain_error("need at least one sample");
    if (n < 1) throw domain_error("horizon must be >= 1");
    const double c = dir_cos(theta), s = dir_sin(theta);
    const long cap = static_cast<long>(std::ceil(rule.radius * n * std::sqrt(2.0))) + 1;
    const long H = cap + static_cast<long>(rule.radius) * n + window_pad + 2;
    if (2 * H + 1 > 4096) throw domain_error("sampling window exceeds the 4096-cell cap");
    const long side = 2 * H + 1;
    MeasureSpec uniform = MeasureSpec::make_uniform(rule.q);

    auto dot = [&](long i, long j) { return i * c + j * s; };

    for (long d = cap; d >= 0; --d) {
        for (int sidx = 0; sidx < samples; ++sidx) {
            Configuration x = sample_configuration(uniform, side, side,
                                                   seed, 2 * static_cast<uint64_t>(sidx),
                                                   -H, -H, Boundary::shrink);
            Configuration y = x;
            // re-randomize everything beyond anchor distance d along u(theta)
            bool differs = false;
            for (long iy = 0; iy < side; ++iy)
                for (long ix = 0; ix < side; ++ix) {
                    long i = ix - H, j = iy - H;
                    if (dot(i, j) > d + kEps) {
                        uint64_t counter = static_cast<uint64_t>(iy) * side + static_cast<uint64_t>(ix);
                        int v = uniform.draw(rand_unit(seed, 2 * static_cast<uint64_t>(sidx) + 1, counter));
                        if (v != y.get(ix, iy)) differs = true;
                        y.set(ix, iy, v);
                    }
                }
            if (!differs) continue;
            Configuration fx = x, fy = y;
            for (int k = 1; k <= n; ++k) {
                fx = step(fx, rule, 1);
                fy = step(fy, rule, 1);
                const LatticeRect v = fx.valid_region();
                bool witness = false;
                for (long j = v.j0; j <= v.j1 && !witness; ++j)
                    for (long i = v.i0; i <= v.i1; ++i) {
                        if (dot(i, j) > kEps) continue; // only inside W_(0,0)
                        if (fx.at(i, j) != fy.at(i, j)) { witness = true; break; }
                    }
                if (witness) return static_cast<double>(d + 1);
            }
        }
    }
    return 0.0;
}

namespace {

std::vector<double> make_angle_grid(int M) {
    if (M < 4) throw domain_error("angle count must be >= 4");
    std::set<double> grid;
    const double pi = std::acos(-1.0);
    for (int k = 0; k <= M; ++k) grid.insert(2.0 * pi * k / M);
    for (double card : {0.0, pi / 2, pi, 3 * pi / 2, 2 * pi}) {
        bool present = false;
        for (double g : grid)
            if (std::abs(g - card) < 1e-12) { present = true; break; }
        if (!present) grid.insert(card);
    }
    return {grid.begin(), grid.end()};
}

} // namespace

DirectionProfile profile(const RuleSpec& rule, int n, int angle_count,
                         ProfileStrategy strategy, int samples, uint64_t seed, int threads) {
    if (n < 1) throw domain_error("horizon must be >= 1");
    if (strategy == ProfileStrategy::exact && !rule.is_linear())
        throw domain_error("exact strategy requires a linear rule");
    DirectionProfile p;
    p.rule_name = rule.name;
    p.rule_hash = rule.hash();
    p.n = n;
    p.angles = make_angle_grid(angle_count);
    const size_t A = p.angles.size();
    p.lambda_n.resize(A);
    p.lambda_hat.resize(A);
    p.method.resize(A);
    p.anchor.resize(A);

    std::vector<OffsetPoly> deps;
    if (strategy == ProfileStrategy::exact) deps = dependence_sets(rule, n);

    auto fill_angle = [&](size_t a) {
        double theta = p.angles[a];
        double lam;
        if (strategy == ProfileStrategy::exact) {
            auto all = extents_from_deps(deps, theta);
            lam = all.back();
            p.method[a] = ExtentMethod::exact;
            if (n >= 2) {
                double lo = all[static_cast<size_t>(n / 2 - 1)];
                double hi = all[static_cast<size_t>((n + 1) / 2 - 1)];
                if (lam > lo + hi + 1e-9)
                    throw domain_error("subadditivity violated against the half-horizon profile");
            }
        } else {
            lam = sampled_extent(rule, theta, n, samples, 0, seed);
            p.method[a] = ExtentMethod::sampled_lower_bound;
        }
        p.lambda_n[a] = lam;
        p.lambda_hat[a] = lam / n;
        p.anchor[a] = ray_anchor(lam, dir_cos(theta), dir_sin(theta));
    };

    if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
    size_t nworkers = std::min<size_t>(std::max(threads, 1), A);
    if (nworkers <= 1) {
        for (size_t a = 0; a < A; ++a) fill_angle(a);
        return p;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(nworkers);
    for (size_t w = 0; w < nworkers; ++w)
        pool.emplace_back([&, w] {
            try {
                for (size_t a = w; a < A; a += nworkers) fill_angle(a);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    for (auto& t : pool) t.join();
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
    return p;
}

LipschitzReport lipschitz_check(const DirectionProfile& profile, int radius) {
    LipschitzReport rep;
    rep.bound_constant = 2.0 * (radius + 1);
    rep.slack = 4.0 * std::sqrt(2.0) / profile.n;
    rep.pass = true;
    for (size_t a = 0; a + 1 < profile.angles.size(); ++a) {
        double dtheta = profile.angles[a + 1] - profile.angles[a];
        if (dtheta < 1e-12) continue;
        double diff = std::abs(profile.lambda_hat[a + 1] - profile.lambda_hat[a]);
        rep.max_ratio = std::max(rep.max_ratio, diff / dtheta);
        double excess = diff - (rep.bound_constant * dtheta + rep.slack);
        rep.max_excess = std::max(rep.max_excess, excess);
        if (excess > 1e-9) rep.pass = false;
    }
    return rep;
}

ConvergenceReport convergence_check(const RuleSpec& rule, double theta,
                                    const std::vector<int>& horizons,
                                    std::optional<double> closed_form) {
    if (horizons.empty()) throw domain_error("need at least one horizon");
    ConvergenceReport rep;
    rep.theta = theta;
    rep.horizons = horizons;
    int n_max = *std::max_element(horizons.begin(), horizons.end());
    auto all = exact_directional_extents(rule, theta, n_max);
    double run = std::numeric_limits<double>::infinity();
    rep.monotone_ok = true;
    for (size_t i = 0; i < horizons.size(); ++i) {
        int n = horizons[i];
        if (n < 1) throw domain_error("horizons must be positive");
        double lh = all[static_cast<size_t>(n - 1)] / n;
        rep.lambda_hat.push_back(lh);
        double prev = run;
        run = std::min(run, lh);
        if (run > prev + 1e-12) rep.monotone_ok = false;
        rep.running_min.push_back(run);
        if (i > 0) rep.deltas.push_back(std::abs(lh - rep.lambda_hat[i - 1]));
    }
    rep.closed_form = closed_form;
    if (closed_form) rep.final_error = std::abs(rep.running_min.back() - *closed_form);
    return rep;
}

std::string profile_csv(const DirectionProfile& profile) {
    std::ostringstream os;
    os << "theta,lambda_n,lambda_hat,method,anchor_i,anchor_j\n";
    os.precision(12);
    for (size_t a = 0; a < profile.angles.size(); ++a) {
        os << profile.angles[a] << "," << profile.lambda_n[a] << "," << profile.lambda_hat[a]
           << "," << (profile.method[a] == ExtentMethod::exact ? "exact" : "sampled-lower-bound")
           << "," << profile.anchor[a].first << "," << profile.anchor[a].second << "\n";
    }
    return os.str();
}

} // namespace ca2d
