#include "ca2d/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "ca2d/errors.hpp"
#include "ca2d/rng.hpp"

namespace ca2d {

namespace {

bool is_prime(int q) {
    if (q < 2) return false;
    for (int d = 2; d * d <= q; ++d)
        if (q % d == 0) return false;
    return true;
}

constexpr long kRankColumnCap = 20000;

// Online rank accumulator over GF(2), rows packed 64 columns per word.
class Gf2Rank {
public:
    explicit Gf2Rank(long cols) : words_((cols + 63) / 64) {}

    // Reduces `row` against the pivots and registers it when nonzero.
    void add_row(std::vector<uint64_t> row) {
        for (auto& [lead, pivot] : pivots_) {
            if ((row[static_cast<size_t>(lead / 64)] >> (lead % 64)) & 1u)
                for (size_t k = 0; k < row.size(); ++k) row[k] ^= pivot[k];
        }
        long lead = leading(row);
        if (lead >= 0) {
            pivots_.emplace_back(lead, std::move(row));
            ++rank_;
        }
    }

    int rank() const { return rank_; }
    long words() const { return words_; }

private:
    static long leading(const std::vector<uint64_t>& row) {
        for (size_t k = 0; k < row.size(); ++k)
            if (row[k]) return static_cast<long>(k) * 64 + std::countr_zero(row[k]);
        return -1;
    }

    long words_;
    int rank_ = 0;
    std::vector<std::pair<long, std::vector<uint64_t>>> pivots_;
};

// Online rank accumulator mod a prime q, one byte-sized value per column.
class ModqRank {
public:
    ModqRank(long cols, int q) : cols_(cols), q_(q) {}

    void add_row(std::vector<int> row) {
        for (auto& [lead, pivot] : pivots_) {
            int f = row[static_cast<size_t>(lead)];
            if (f != 0)
                for (long k = 0; k < cols_; ++k)
                    row[static_cast<size_t>(k)] =
                        ((row[static_cast<size_t>(k)] - f * pivot[static_cast<size_t>(k)]) % q_ + q_) % q_;
        }
        long lead = -1;
        for (long k = 0; k < cols_; ++k)
            if (row[static_cast<size_t>(k)] != 0) { lead = k; break; }
        if (lead >= 0) {
            int inv = mod_inverse(row[static_cast<size_t>(lead)]);
            for (long k = 0; k < cols_; ++k)
                row[static_cast<size_t>(k)] = row[static_cast<size_t>(k)] * inv % q_;
            pivots_.emplace_back(lead, std::move(row));
            ++rank_;
        }
    }

    int rank() const { return rank_; }

private:
    int mod_inverse(int a) const {
        int r = 1;
        for (int e = q_ - 2; e > 0; e >>= 1) { // q prime, Fermat
            if (e & 1) r = r * a % q_;
            a = a * a % q_;
        }
        return r;
    }

    long cols_;
    int q_;
    int rank_ = 0;
    std::vector<std::pair<long, std::vector<int>>> pivots_;
};

} // namespace

double pattern_log_prob(const MeasureSpec& measure, const Configuration& config,
                        const CellSet& cells) {
    double acc = 0.0;
    for (const auto& [i, j] : cells.cells()) {
        if (!config.valid_region().contains(i, j))
            throw domain_error("pattern cell outside the valid region");
        double w = measure.weights[static_cast<size_t>(config.at(i, j))];
        if (w <= 0.0) throw domain_error("pattern has measure zero");
        acc -= std::log(w);
    }
    return acc;
}

ShiftEntropyEstimate shift_entropy(const MeasureSpec& measure, const CellSet& cells) {
    if (cells.size() < 1) throw domain_error("averaging set must be nonempty");
    return {measure.entropy_per_site(), cells.size(), ShiftEntropyMethod::exact_product};
}

ShiftEntropyEstimate shift_entropy_empirical(const MeasureSpec& measure, const CellSet& cells,
                                             int samples, uint64_t seed) {
    if (cells.size() < 1) throw domain_error("averaging set must be nonempty");
    if (samples < 1) throw domain_error("need at least one sample");
    long i0 = cells.cells().front().first, i1 = i0, j0 = cells.cells().front().second, j1 = j0;
    for (const auto& [i, j] : cells.cells()) {
        i0 = std::min(i0, i); i1 = std::max(i1, i);
        j0 = std::min(j0, j); j1 = std::max(j1, j);
    }
    double acc = 0.0;
    for (int s = 0; s < samples; ++s) {
        Configuration c = sample_configuration(measure, i1 - i0 + 1, j1 - j0 + 1, seed,
                                               static_cast<uint64_t>(s), i0, j0);
        acc += pattern_log_prob(measure, c, cells);
    }
    return {acc / samples / static_cast<double>(cells.size()), cells.size(),
            ShiftEntropyMethod::empirical};
}

std::vector<int> trajectory_ranks(const RuleSpec& rule, int p, int n) {
    if (!rule.is_linear()) throw domain_error("rank method requires a linear rule");
    if (!is_prime(rule.q)) throw domain_error("rank method requires a prime alphabet size");
    if (p < 1 || n < 0) throw domain_error("need p >= 1 and n >= 0");
    const long L = p + 2L * rule.radius * n; // window side, light-cone padded
    const long cols = L * L;
    if (cols > kRankColumnCap) throw domain_error("rank matrix exceeds the 20000-column cap");
    const long off = static_cast<long>(rule.radius) * n; // window covers [-off, p-1+off]^2

    auto col_of = [&](long i, long j) { return (j + off) * L + (i + off); };

    std::vector<int> ranks;
    ranks.reserve(static_cast<size_t>(n) + 1);
    OffsetPoly poly{{{0, 0}, 1}};

    if (rule.q == 2) {
        Gf2Rank acc(cols);
        for (int k = 0; k <= n; ++k) {
            if (k > 0) poly = compose_step(poly, rule);
            for (int b = 0; b < p; ++b)
                for (int a = 0; a < p; ++a) {
                    std::vector<uint64_t> row(static_cast<size_t>(acc.words()), 0);
                    for (const auto& [w, c] : poly) {
                        (void)c;
                        long col = col_of(a + w.first, b + w.second);
                        row[static_cast<size_t>(col / 64)] ^= uint64_t(1) << (col % 64);
                    }
                    acc.add_row(std::move(row));
                }
            ranks.push_back(acc.rank());
        }
    } else {
        ModqRank acc(cols, rule.q);
        for (int k = 0; k <= n; ++k) {
            if (k > 0) poly = compose_step(poly, rule);
            for (int b = 0; b < p; ++b)
                for (int a = 0; a < p; ++a) {
                    std::vector<int> row(static_cast<size_t>(cols), 0);
                    for (const auto& [w, c] : poly)
                        row[static_cast<size_t>(col_of(a + w.first, b + w.second))] = c;
                    acc.add_row(std::move(row));
                }
            ranks.push_back(acc.rank());
        }
    }
    return ranks;
}

int trajectory_rank(const RuleSpec& rule, int p, int n) {
    return trajectory_ranks(rule, p, n).back();
}

EntropyEstimate afe_rank(const RuleSpec& rule, int p_max, int n_max) {
    if (p_max < 1 || n_max < 3) throw domain_error("need p_max >= 1 and n_max >= 3");
    EntropyEstimate est;
    est.rule_name = rule.name;
    est.rule_hash = rule.hash();
    est.method = EntropyMethod::rank_exact;
    est.q = rule.q;
    est.p_max = p_max;
    est.n_max = n_max;
    const double logq = std::log(static_cast<double>(rule.q));

    for (int p = 1; p <= p_max; ++p) {
        auto ranks = trajectory_ranks(rule, p, n_max);
        int d1 = ranks[static_cast<size_t>(n_max)] - ranks[static_cast<size_t>(n_max - 1)];
        int d2 = ranks[static_cast<size_t>(n_max - 1)] - ranks[static_cast<size_t>(n_max - 2)];
        int d3 = ranks[static_cast<size_t>(n_max - 2)] - ranks[static_cast<size_t>(n_max - 3)];
        est.ranks.push_back(std::move(ranks));
        est.slopes_nats.push_back(d1 * logq);
        est.slope_stabilized.push_back(d1 == d2 && d2 == d3);
        est.h_over_p.push_back(d1 * logq / p);
    }

    // Stabilized increment of p -> h_mu(F, alpha_p); equals lim h/p when the
    // slopes are affine in p from some point on.
    bool incr_ok = p_max >= 4;
    if (incr_ok) {
        double i1 = est.slopes_nats[static_cast<size_t>(p_max - 1)] - est.slopes_nats[static_cast<size_t>(p_max - 2)];
        double i2 = est.slopes_nats[static_cast<size_t>(p_max - 2)] - est.slopes_nats[static_cast<size_t>(p_max - 3)];
        double i3 = est.slopes_nats[static_cast<size_t>(p_max - 3)] - est.slopes_nats[static_cast<size_t>(p_max - 4)];
        incr_ok = std::abs(i1 - i2) < 1e-12 && std::abs(i2 - i3) < 1e-12;
        for (bool s : est.slope_stabilized) incr_ok = incr_ok && s;
        if (incr_ok) est.afe_nats = i1;
    }
    est.afe_stabilized = incr_ok;
    if (!incr_ok)
        est.afe_nats = *std::min_element(est.h_over_p.begin(), est.h_over_p.end());
    return est;
}

EmpiricalEntropy afe_empirical(const RuleSpec& rule, const MeasureSpec& measure,
                               int p, int n, int samples, uint64_t seed) {
    if (p < 1 || n < 0) throw domain_error("need p >= 1 and n >= 0");
    if (measure.q() != rule.q) throw domain_error("measure and rule alphabets differ");
    double bits = p * p * (n + 1) * std::log2(static_cast<double>(rule.q));
    if (bits > 24.0 + 1e-9) throw domain_error("trajectory code space exceeds 24 bits");
    EmpiricalEntropy out;
    out.rule_name = rule.name;
    out.p = p;
    out.n = n;
    out.samples = samples;
    out.code_space = 1;
    for (int i = 0; i < p * p * (n + 1); ++i) out.code_space *= static_cast<uint64_t>(rule.q);
    out.undersampled = static_cast<uint64_t>(samples) < 10 * out.code_space;
    if (samples < 1) throw domain_error("need at least one sample");

    const long off = static_cast<long>(rule.radius) * n;
    const long side = p + 2 * off;
    const uint64_t q = static_cast<uint64_t>(rule.q);

    std::vector<std::unordered_map<uint64_t, long>> counts(static_cast<size_t>(n) + 1);
    for (int s = 0; s < samples; ++s) {
        Configuration c = sample_configuration(measure, side, side, seed,
                                               static_cast<uint64_t>(s), -off, -off);
        uint64_t code = 0;
        for (int k = 0; k <= n; ++k) {
            if (k > 0) c = step(c, rule, 1);
            for (int b = 0; b < p; ++b)
                for (int a = 0; a < p; ++a)
                    code = code * q + static_cast<uint64_t>(c.at(a, b));
            ++counts[static_cast<size_t>(k)][code];
        }
    }

    for (int k = 0; k <= n; ++k) {
        double H = 0.0;
        const auto& hist = counts[static_cast<size_t>(k)];
        for (const auto& [code, cnt] : hist) {
            (void)code;
            double f = static_cast<double>(cnt) / samples;
            H -= f * std::log(f);
        }
        out.horizon_nats.push_back(H);
        out.horizon_nats_mm.push_back(H + (static_cast<double>(hist.size()) - 1.0) / (2.0 * samples));
        if (k > 0)
            out.step_slopes.push_back(out.horizon_nats_mm[static_cast<size_t>(k)] -
                                      out.horizon_nats_mm[static_cast<size_t>(k - 1)]);
    }
    return out;
}

EpsilonDiagnostic afe_epsilon_diagnostic(const RuleSpec& rule,
                                         const std::vector<double>& epsilons,
                                         const std::vector<int>& horizons) {
    if (epsilons.empty() || horizons.empty()) throw domain_error("diagnostic grid is empty");
    const double logq = std::log(static_cast<double>(rule.q));
    int max_p = 0;
    for (double e : epsilons)
        for (int n : horizons) {
            int p = static_cast<int>(std::ceil(e * n));
            if (p < 1) throw domain_error("ceil(eps*n) must be >= 1");
            max_p = std::max(max_p, p);
        }
    EpsilonDiagnostic out;
    out.afe_nats = afe_rank(rule, std::max(4, max_p), std::max(4, horizons.back())).afe_nats;
    out.all_within = true;
    for (double e : epsilons)
        for (int n : horizons) {
            EpsilonDiagnosticRow row;
            row.epsilon = e;
            row.n = n;
            row.p = static_cast<int>(std::ceil(e * n));
            row.rank = trajectory_rank(rule, row.p, n);
            double denom = std::ceil(e * n * n);
            row.value_nats = row.rank * logq / denom;
            row.tol_nats = (e + 6.0 / n) * logq + 1e-9;
            row.within_envelope = row.value_nats <= out.afe_nats + row.tol_nats;
            out.all_within = out.all_within && row.within_envelope;
            out.rows.push_back(row);
        }
    return out;
}

} // namespace ca2d
