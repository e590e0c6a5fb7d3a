#include "ca2d/bounds.hpp"

#include <cmath>

#include "ca2d/errors.hpp"

namespace ca2d {

namespace {

const double kPi = std::acos(-1.0);

// Trapezoid over the profile's (not necessarily uniform) angle grid,
// restricted to [lo, hi]; `stride` > 1 drops interior nodes for the
// grid-halving error estimate.
double trapezoid(const DirectionProfile& p, double lo, double hi,
                 double (*f)(double), size_t stride = 1) {
    std::vector<size_t> idx;
    for (size_t a = 0; a < p.angles.size(); ++a)
        if (p.angles[a] >= lo - 1e-9 && p.angles[a] <= hi + 1e-9) idx.push_back(a);
    std::vector<size_t> used;
    for (size_t k = 0; k < idx.size(); k += stride) used.push_back(idx[k]);
    if (used.empty() || used.back() != idx.back()) used.push_back(idx.back());
    double acc = 0.0;
    for (size_t k = 0; k + 1 < used.size(); ++k) {
        double x0 = p.angles[used[k]], x1 = p.angles[used[k + 1]];
        double y0 = f(p.lambda_hat[used[k]]), y1 = f(p.lambda_hat[used[k + 1]]);
        acc += (x1 - x0) * (y0 + y1) / 2.0;
    }
    return acc;
}

double f_sq_half(double v) { return v * v / 2.0; }
double f_id(double v) { return v; }

void require_cardinals(const DirectionProfile& p) {
    p.index_of(0.0);
    p.index_of(kPi / 2);
    p.index_of(kPi);
    p.index_of(3 * kPi / 2);
}

} // namespace

double bound_rectangle(const DirectionProfile& profile) {
    require_cardinals(profile);
    double l0 = profile.lambda_hat_at(0.0);
    double lpi = profile.lambda_hat_at(kPi);
    double lp2 = profile.lambda_hat_at(kPi / 2);
    double l3p2 = profile.lambda_hat_at(3 * kPi / 2);
    return (l0 + lpi + 1.0) * (lp2 + l3p2 + 1.0);
}

IntegralBound bound_integral(const DirectionProfile& profile) {
    if (profile.angles.size() < 17) throw domain_error("integral bound needs at least 16 angles");
    require_cardinals(profile);
    auto eval = [&](size_t stride) {
        return trapezoid(profile, 0.0, 2 * kPi, f_sq_half, stride) +
               std::sqrt(2.0) * trapezoid(profile, 0.0, kPi, f_id, stride) + kPi;
    };
    IntegralBound out;
    out.value = eval(1);
    out.quadrature_error = std::abs(out.value - eval(2));
    return out;
}

QuadrantBound bound_integral_quadrant(const DirectionProfile& profile) {
    if (profile.angles.size() < 17) throw domain_error("quadrant bound needs at least 16 angles");
    require_cardinals(profile);
    auto eval = [&](size_t stride) {
        return trapezoid(profile, 0.0, kPi / 2, f_sq_half, stride) +
               trapezoid(profile, 0.0, kPi / 2, f_id, stride) + kPi / 2;
    };
    QuadrantBound out;
    out.value = eval(1);
    out.value_sqrt2 = trapezoid(profile, 0.0, kPi / 2, f_sq_half, 1) +
                      std::sqrt(2.0) * trapezoid(profile, 0.0, kPi / 2, f_id, 1) + kPi / 2;
    out.quadrature_error = std::abs(out.value - eval(2));
    return out;
}

BoundReport assemble_report(const EntropyEstimate& afe, const ShiftEntropyEstimate& shift,
                            const DirectionProfile& profile) {
    if (afe.units != "nats") throw domain_error("entropy estimate units must be nats");
    BoundReport rep;
    rep.rule_name = profile.rule_name;
    rep.rule_hash = profile.rule_hash;
    if (afe.rule_hash != profile.rule_hash)
        throw domain_error("entropy estimate and profile come from different rules");
    rep.n = profile.n;
    rep.angle_count = static_cast<int>(profile.angles.size());
    rep.lambda_cardinals[0] = profile.lambda_hat_at(0.0);
    rep.lambda_cardinals[1] = profile.lambda_hat_at(kPi / 2);
    rep.lambda_cardinals[2] = profile.lambda_hat_at(kPi);
    rep.lambda_cardinals[3] = profile.lambda_hat_at(3 * kPi / 2);
    rep.lambda_R = bound_rectangle(profile);
    IntegralBound ib = bound_integral(profile);
    rep.lambda_T = ib.value;
    QuadrantBound qb = bound_integral_quadrant(profile);
    rep.lambda_T_quadrant = qb.value;
    rep.lambda_T_quadrant_sqrt2 = qb.value_sqrt2;
    rep.quadrature_error = std::max(ib.quadrature_error, qb.quadrature_error);
    rep.h_shift_nats = shift.per_site_nats;
    rep.afe_nats = afe.afe_nats;
    rep.afe_stabilized = afe.afe_stabilized;
    rep.product_R = rep.h_shift_nats * rep.lambda_R;
    rep.product_T = rep.h_shift_nats * rep.lambda_T;
    rep.product_T_quadrant = rep.h_shift_nats * rep.lambda_T_quadrant;
    const double tol = 1e-9;
    rep.verdict_R = rep.afe_nats <= rep.product_R + tol;
    rep.verdict_T = rep.afe_nats <= rep.product_T + tol;
    rep.verdict_T_quadrant = rep.afe_nats <= rep.product_T_quadrant + tol;
    rep.quadrant_below_rectangle = rep.lambda_T_quadrant <= rep.lambda_R + tol;
    rep.all_pass = rep.verdict_R && rep.verdict_T && rep.verdict_T_quadrant;
    return rep;
}

} // namespace ca2d
