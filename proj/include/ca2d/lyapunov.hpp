#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ca2d/rule.hpp"

namespace ca2d {

enum class ExtentMethod { exact, sampled_lower_bound };
enum class ProfileStrategy { exact, sample };

// Snaps values within 1e-12 of zero so cardinal angles are exact.
double dir_cos(double theta);
double dir_sin(double theta);

// Directional extents Lambda_n(theta) sampled on an angle grid.
// lambda_n values are integers (anchor distances are searched on the unit
// lattice-distance grid); lambda_hat = lambda_n / n. anchors are the nearest
// lattice points to the ray at distance lambda_n.
struct DirectionProfile {
    std::string rule_name;
    uint64_t rule_hash = 0;
    int n = 0;
    std::vector<double> angles;    // sorted, [0, 2*pi], cardinals included
    std::vector<double> lambda_n;
    std::vector<double> lambda_hat;
    std::vector<ExtentMethod> method;
    std::vector<std::pair<long, long>> anchor; // G_nF(theta)

    size_t index_of(double theta) const; // throws domain_error when absent
    double lambda_hat_at(double theta) const { return lambda_hat[index_of(theta)]; }
    double lambda_n_at(double theta) const { return lambda_n[index_of(theta)]; }
};

// Directional extent of a linear rule, exact: the dependence sets D_k of the
// k-fold composed rule give max(0, max_k max_{w in D_k} <w, u(theta)>),
// rounded up to the next integer anchor distance. Perturbing offset w changes
// the output iff the composed coefficient there is nonzero, so this equals
// the worst case over all configurations.
double exact_directional_extent(const RuleSpec& rule, double theta, int n);

// All horizons 1..n in one pass (prefix maxima over k).
std::vector<double> exact_directional_extents(const RuleSpec& rule, double theta, int n);

// Certified lower bound on Lambda_n(theta) for arbitrary rules: samples
// configurations, re-randomizes the cells beyond anchor distance d, and
// scans d downward until some perturbation is seen inside the origin
// half-plane within n steps. Deterministic given the seed; never exceeds
// the exact value.
double sampled_extent(const RuleSpec& rule, double theta, int n, int samples,
                      long window_pad, uint64_t seed);

// Profile over the grid {2*pi*k/M} plus the forced cardinal angles.
// The exact strategy additionally checks subadditivity against the
// half-horizon profile. M >= 4. Angles are computed independently, so they
// are distributed over `threads` workers (<= 0 picks the hardware count);
// results are assembled in angle order and do not depend on scheduling.
DirectionProfile profile(const RuleSpec& rule, int n, int angle_count,
                         ProfileStrategy strategy, int samples = 32,
                         uint64_t seed = 0, int threads = 1);

// Lemma-style Lipschitz check: |lambda_hat(theta_{k+1}) - lambda_hat(theta_k)|
// <= 2(r+1) * dtheta + c/n with discretization slack c = 4*sqrt(2).
struct LipschitzReport {
    double bound_constant = 0;   // 2(r+1)
    double slack = 0;            // c/n actually used
    double max_ratio = 0;        // max |d lambda_hat| / dtheta observed
    double max_excess = 0;       // max (|d lambda_hat| - bound) over pairs
    bool pass = false;
};
LipschitzReport lipschitz_check(const DirectionProfile& profile, int radius);

// Lambda_n/n over increasing horizons at one angle; running minima are
// nonincreasing by subadditivity and converge to lambda(theta).
struct ConvergenceReport {
    double theta = 0;
    std::vector<int> horizons;
    std::vector<double> lambda_hat;
    std::vector<double> running_min;
    std::vector<double> deltas;        // |lambda_hat[i+1] - lambda_hat[i]|
    bool monotone_ok = false;          // running minima nonincreasing
    std::optional<double> closed_form; // caller-supplied limit, when known
    std::optional<double> final_error; // |last running_min - closed_form|
};
ConvergenceReport convergence_check(const RuleSpec& rule, double theta,
                                    const std::vector<int>& horizons,
                                    std::optional<double> closed_form = std::nullopt);

std::string profile_csv(const DirectionProfile& profile);

} // namespace ca2d
