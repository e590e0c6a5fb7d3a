#pragma once

#include <string>
#include <vector>

#include "ca2d/entropy.hpp"
#include "ca2d/lyapunov.hpp"

namespace ca2d {

// Prop-4 style rectangle factor:
// (lambda_hat(0) + lambda_hat(pi) + 1) * (lambda_hat(pi/2) + lambda_hat(3pi/2) + 1).
double bound_rectangle(const DirectionProfile& profile);

struct IntegralBound {
    double value = 0;
    double quadrature_error = 0; // |value - value at half grid|
};

// Full-circle integral factor: trapezoid of lambda_hat^2/2 over [0, 2pi]
// plus sqrt(2) * trapezoid of lambda_hat over [0, pi] plus pi.
IntegralBound bound_integral(const DirectionProfile& profile);

struct QuadrantBound {
    double value = 0;        // the worked quadrant evaluation (see below)
    double value_sqrt2 = 0;  // same with the sqrt(2) coefficient kept
    double quadrature_error = 0;
};

// Quadrant-restricted factor. `value` follows the worked evaluation whose
// printed numbers are pi/8 + 1/4 + sqrt(2) + pi/2 for the diagonal additive
// rule and k^2(pi/8 + 1/4) + sqrt(2) k + pi/2 for its stride-k family:
//
//     integral_0^{pi/2} lambda_hat^2/2 + integral_0^{pi/2} lambda_hat + pi/2
//
// (for the diagonally symmetric rules the middle term equals the sqrt(2)-
// weighted integral over [0, pi/4]). `value_sqrt2` keeps the full-circle
// formula's sqrt(2) coefficient on [0, pi/2] instead; both are reported.
QuadrantBound bound_integral_quadrant(const DirectionProfile& profile);

struct BoundReport {
    std::string rule_name;
    uint64_t rule_hash = 0;
    int n = 0;
    int angle_count = 0;
    double lambda_cardinals[4] = {0, 0, 0, 0}; // lambda_hat at 0, pi/2, pi, 3pi/2
    double lambda_R = 0;
    double lambda_T = 0;
    double lambda_T_quadrant = 0;
    double lambda_T_quadrant_sqrt2 = 0;
    double quadrature_error = 0;
    double h_shift_nats = 0;
    double afe_nats = 0;
    bool afe_stabilized = true;
    double product_R = 0;          // h_shift * lambda_R
    double product_T = 0;
    double product_T_quadrant = 0;
    bool verdict_R = false;        // afe <= product_R
    bool verdict_T = false;
    bool verdict_T_quadrant = false;
    bool quadrant_below_rectangle = false; // informational
    bool all_pass = false;
};

// Assembles bounds, products and the AFE <= h_shift * factor verdicts.
// A failed verdict is reported as-is. Units must agree (nats).
BoundReport assemble_report(const EntropyEstimate& afe, const ShiftEntropyEstimate& shift,
                            const DirectionProfile& profile);

} // namespace ca2d
