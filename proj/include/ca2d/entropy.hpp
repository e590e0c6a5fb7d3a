#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ca2d/geometry.hpp"
#include "ca2d/grid.hpp"
#include "ca2d/measure.hpp"
#include "ca2d/rule.hpp"

namespace ca2d {

// -log mu(pattern) of the symbols of `config` on `cells`, in nats.
// Every cell must lie inside the valid region.
double pattern_log_prob(const MeasureSpec& measure, const Configuration& config,
                        const CellSet& cells);

enum class ShiftEntropyMethod { exact_product, empirical };

struct ShiftEntropyEstimate {
    double per_site_nats = 0;
    size_t cell_count = 0;
    ShiftEntropyMethod method = ShiftEntropyMethod::exact_product;
};

// Per-site entropy of the two-shift action. For product measures this is the
// marginal entropy, independent of the averaging set's shape.
ShiftEntropyEstimate shift_entropy(const MeasureSpec& measure, const CellSet& cells);

// Monte-Carlo mean of pattern_log_prob / |cells| over sampled windows.
ShiftEntropyEstimate shift_entropy_empirical(const MeasureSpec& measure, const CellSet& cells,
                                             int samples, uint64_t seed);

// Rank over Z_q (q prime) of the linear map from the initial window of side
// p + 2 r n (light-cone centered) to the concatenated central p x p patches
// of F^0..F^n. For the uniform measure, -log mu(alpha_p^{n,F}(x)) equals
// rank * log q for every x: the trajectory is a linear image of the window,
// and each fiber is a coset of the kernel.
int trajectory_rank(const RuleSpec& rule, int p, int n);

// rank(p, m) for m = 0..n in one incremental elimination.
std::vector<int> trajectory_ranks(const RuleSpec& rule, int p, int n);

enum class EntropyMethod { rank_exact, empirical };

struct EntropyEstimate {
    std::string rule_name;
    uint64_t rule_hash = 0;
    EntropyMethod method = EntropyMethod::rank_exact;
    int q = 2;
    int p_max = 0;
    int n_max = 0;
    // rank table, tables[p-1][m] = rank(p, m), m = 0..n_max (rank method)
    std::vector<std::vector<int>> ranks;
    std::vector<double> slopes_nats;       // h_mu(F, alpha_p), per p
    std::vector<bool> slope_stabilized;    // constant over the last 3 horizons
    std::vector<double> h_over_p;          // slopes_nats[p-1] / p
    double afe_nats = 0;                   // see below
    bool afe_stabilized = false;
    std::string units = "nats";
};

// AFE from the rank table. h_mu(F, alpha_p) is the stabilized horizon slope
// (rank(p, n) - rank(p, n-1)) * log q. The reported AFE is the stabilized
// increment of p -> h_mu(F, alpha_p): when that increment is constant over
// the last three p (exact for the additive examples, where the slopes are
// affine in p), it equals lim h_mu(F, alpha_p)/p. Otherwise the minimum of
// h/p over the computed range is reported and the estimate is flagged
// unstabilized.
EntropyEstimate afe_rank(const RuleSpec& rule, int p_max, int n_max);

struct EmpiricalEntropy {
    std::string rule_name;
    int p = 0, n = 0, samples = 0;
    uint64_t code_space = 0;
    bool undersampled = false;           // below 10x code-space coverage
    std::vector<double> horizon_nats;    // plug-in H of the first m+1 patches
    std::vector<double> horizon_nats_mm; // Miller-Madow corrected
    std::vector<double> step_slopes;     // H(m) - H(m-1)
};

// Plug-in entropy of the trajectory-code distribution: each sampled window
// is evolved n steps and its (n+1) central p x p patches are encoded as one
// code. Estimates a partition entropy, an upper-bound-biased proxy for the
// a.e. limit.
EmpiricalEntropy afe_empirical(const RuleSpec& rule, const MeasureSpec& measure,
                               int p, int n, int samples, uint64_t seed);

struct EpsilonDiagnosticRow {
    double epsilon = 0;
    int n = 0, p = 0, rank = 0;
    double value_nats = 0;   // rank * log q / ceil(eps * n^2)
    double tol_nats = 0;
    bool within_envelope = false; // value <= AFE + envelope
};

struct EpsilonDiagnostic {
    double afe_nats = 0;
    std::vector<EpsilonDiagnosticRow> rows;
    bool all_within = false;
};

// Prop-3 style diagnostic: rank(ceil(eps n), n) log q / ceil(eps n^2) over a
// grid, converging toward the AFE as eps -> 0, n -> infinity. The envelope
// tolerance (eps + 6/n) log q reflects the finite-size excess of the
// additive examples.
EpsilonDiagnostic afe_epsilon_diagnostic(const RuleSpec& rule,
                                         const std::vector<double>& epsilons,
                                         const std::vector<int>& horizons);

} // namespace ca2d
