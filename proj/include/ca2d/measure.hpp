#pragma once

#include <cmath>
#include <numeric>
#include <vector>

#include "ca2d/errors.hpp"

namespace ca2d {

// Product (Bernoulli) measure: i.i.d. cells with the given symbol weights.
struct MeasureSpec {
    std::vector<double> weights;
    bool uniform = false;

    int q() const { return static_cast<int>(weights.size()); }

    static MeasureSpec make_uniform(int q) {
        if (q < 2) throw domain_error("alphabet size must be >= 2");
        MeasureSpec m;
        m.weights.assign(static_cast<size_t>(q), 1.0 / q);
        m.uniform = true;
        return m;
    }

    static MeasureSpec from_weights(std::vector<double> w) {
        if (w.size() < 2) throw domain_error("need at least two weights");
        double sum = std::accumulate(w.begin(), w.end(), 0.0);
        for (double x : w)
            if (x < 0.0) throw domain_error("weights must be nonnegative");
        if (std::abs(sum - 1.0) > 1e-12) throw domain_error("weights must sum to 1");
        MeasureSpec m;
        m.weights = std::move(w);
        m.uniform = true;
        for (double x : m.weights)
            if (std::abs(x - m.weights[0]) > 1e-15) { m.uniform = false; break; }
        return m;
    }

    // Per-site marginal entropy in nats.
    double entropy_per_site() const {
        double h = 0.0;
        for (double w : weights)
            if (w > 0.0) h -= w * std::log(w);
        return h;
    }

    // Inverse-CDF draw from a uniform u in [0, 1).
    int draw(double u) const {
        double acc = 0.0;
        for (size_t s = 0; s + 1 < weights.size(); ++s) {
            acc += weights[s];
            if (u < acc) return static_cast<int>(s);
        }
        return static_cast<int>(weights.size()) - 1;
    }
};

} // namespace ca2d
