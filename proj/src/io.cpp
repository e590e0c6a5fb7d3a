#include "ca2d/io.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

namespace ca2d {

namespace {

std::string hex64(uint64_t v) {
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << v;
    return os.str();
}

} // namespace

ordered_json entropy_to_json(const EntropyEstimate& est) {
    ordered_json j;
    j["rule"] = est.rule_name;
    j["rule_hash"] = hex64(est.rule_hash);
    j["method"] = est.method == EntropyMethod::rank_exact ? "rank" : "empirical";
    j["q"] = est.q;
    j["p_max"] = est.p_max;
    j["n_max"] = est.n_max;
    ordered_json table = ordered_json::array();
    for (int p = 1; p <= est.p_max; ++p)
        for (int m = 0; m <= est.n_max; ++m)
            table.push_back({{"p", p}, {"n", m}, {"rank", est.ranks[static_cast<size_t>(p - 1)][static_cast<size_t>(m)]}});
    j["table"] = table;
    j["slopes"] = est.slopes_nats;
    j["slopes_stabilized"] = est.slope_stabilized;
    j["h_over_p"] = est.h_over_p;
    j["afe_proxy"] = est.afe_nats;
    j["afe_stabilized"] = est.afe_stabilized;
    j["afe_in_log_q"] = est.afe_nats / std::log(static_cast<double>(est.q));
    j["units"] = est.units;
    return j;
}

std::string entropy_to_text(const EntropyEstimate& est) {
    std::ostringstream os;
    os << "rule: " << est.rule_name << "\n";
    os << "rule_hash: " << hex64(est.rule_hash) << "\n";
    os << "method: " << (est.method == EntropyMethod::rank_exact ? "rank" : "empirical") << "\n";
    os << "q: " << est.q << "\n";
    os << "units: nats (log q multiples in parentheses)\n";
    const double logq = std::log(static_cast<double>(est.q));
    os << "rank table (rows p = 1.." << est.p_max << ", cols n = 0.." << est.n_max << "):\n";
    for (int p = 1; p <= est.p_max; ++p) {
        os << "  p=" << p << ":";
        for (int m = 0; m <= est.n_max; ++m)
            os << " " << est.ranks[static_cast<size_t>(p - 1)][static_cast<size_t>(m)];
        os << "\n";
    }
    os << "slopes h(F,alpha_p):";
    for (double s : est.slopes_nats) os << " " << s;
    os << "\n(1/p) h(F,alpha_p):";
    for (double s : est.h_over_p) os << " " << s;
    os << "\nafe_proxy: " << est.afe_nats << " (" << est.afe_nats / logq << " log q)"
       << (est.afe_stabilized ? "" : "  [slope increments not stabilized]") << "\n";
    return os.str();
}

ordered_json empirical_to_json(const EmpiricalEntropy& est) {
    ordered_json j;
    j["rule"] = est.rule_name;
    j["method"] = "empirical";
    j["p"] = est.p;
    j["n"] = est.n;
    j["samples"] = est.samples;
    j["code_space"] = est.code_space;
    j["undersampled"] = est.undersampled;
    j["horizon_nats"] = est.horizon_nats;
    j["horizon_nats_miller_madow"] = est.horizon_nats_mm;
    j["step_slopes"] = est.step_slopes;
    j["units"] = "nats";
    return j;
}

std::string empirical_to_text(const EmpiricalEntropy& est) {
    std::ostringstream os;
    os << "rule: " << est.rule_name << "\n";
    os << "method: empirical plug-in (partition entropy proxy)\n";
    os << "p: " << est.p << "  n: " << est.n << "  samples: " << est.samples
       << "  code_space: " << est.code_space << "\n";
    if (est.undersampled) os << "warning: below 10x code-space coverage\n";
    os << "H per horizon (nats, Miller-Madow):";
    for (double h : est.horizon_nats_mm) os << " " << h;
    os << "\nstep slopes:";
    for (double s : est.step_slopes) os << " " << s;
    os << "\n";
    return os.str();
}

ordered_json bound_report_to_json(const BoundReport& rep) {
    ordered_json j;
    j["rule"] = rep.rule_name;
    j["rule_hash"] = hex64(rep.rule_hash);
    j["n"] = rep.n;
    j["M"] = rep.angle_count;
    j["lambda_cardinals"] = {rep.lambda_cardinals[0], rep.lambda_cardinals[1],
                             rep.lambda_cardinals[2], rep.lambda_cardinals[3]};
    j["lambda_R"] = rep.lambda_R;
    j["lambda_T"] = rep.lambda_T;
    j["lambda_T_quadrant"] = rep.lambda_T_quadrant;
    j["lambda_T_quadrant_sqrt2"] = rep.lambda_T_quadrant_sqrt2;
    j["quadrature_error"] = rep.quadrature_error;
    j["h_shift"] = rep.h_shift_nats;
    j["afe"] = rep.afe_nats;
    j["afe_stabilized"] = rep.afe_stabilized;
    j["products"] = {{"rectangle", rep.product_R},
                     {"integral", rep.product_T},
                     {"integral_quadrant", rep.product_T_quadrant}};
    j["verdicts"] = {{"afe_le_rectangle", rep.verdict_R},
                     {"afe_le_integral", rep.verdict_T},
                     {"afe_le_integral_quadrant", rep.verdict_T_quadrant}};
    j["quadrant_below_rectangle"] = rep.quadrant_below_rectangle;
    j["all_pass"] = rep.all_pass;
    return j;
}

std::string bound_report_to_text(const BoundReport& rep) {
    std::ostringstream os;
    os.precision(12);
    os << "rule: " << rep.rule_name << "\n";
    os << "rule_hash: " << hex64(rep.rule_hash) << "\n";
    os << "n: " << rep.n << "  angles: " << rep.angle_count << "\n";
    os << "lambda_hat at cardinals (0, pi/2, pi, 3pi/2): " << rep.lambda_cardinals[0] << " "
       << rep.lambda_cardinals[1] << " " << rep.lambda_cardinals[2] << " "
       << rep.lambda_cardinals[3] << "\n";
    os << "lambda_R: " << rep.lambda_R << "\n";
    os << "lambda_T: " << rep.lambda_T << "\n";
    os << "lambda_T_quadrant: " << rep.lambda_T_quadrant
       << "  (sqrt2-coefficient variant: " << rep.lambda_T_quadrant_sqrt2 << ")\n";
    os << "quadrature_error: " << rep.quadrature_error << "\n";
    os << "h_shift: " << rep.h_shift_nats << " nats\n";
    os << "afe: " << rep.afe_nats << " nats"
       << (rep.afe_stabilized ? "" : "  [not stabilized]") << "\n";
    auto verdict = [](bool v) { return v ? "pass" : "FAIL"; };
    os << "afe <= h_shift*lambda_R: " << rep.afe_nats << " <= " << rep.product_R << "  "
       << verdict(rep.verdict_R) << "\n";
    os << "afe <= h_shift*lambda_T: " << rep.afe_nats << " <= " << rep.product_T << "  "
       << verdict(rep.verdict_T) << "\n";
    os << "afe <= h_shift*lambda_T_quadrant: " << rep.afe_nats << " <= "
       << rep.product_T_quadrant << "  " << verdict(rep.verdict_T_quadrant) << "\n";
    os << "lambda_T_quadrant <= lambda_R: " << (rep.quadrant_below_rectangle ? "yes" : "no")
       << "\n";
    return os.str();
}

} // namespace ca2d
