#include "ca2d/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "ca2d/bounds.hpp"
#include "ca2d/entropy.hpp"
#include "ca2d/errors.hpp"
#include "ca2d/geometry.hpp"
#include "ca2d/grid.hpp"
#include "ca2d/io.hpp"
#include "ca2d/lyapunov.hpp"
#include "ca2d/version.hpp"

namespace ca2d::cli {

namespace {

struct RunConfig {
    std::string subcommand;
    std::string rule_source;
    int k = 1;
    int n = 64;
    int angles = 64;
    int p_max = 6;
    int n_max = 12;
    int p = 1;
    int samples = 64;
    uint64_t seed = 0;
    std::string strategy = "exact";
    std::string method = "rank";
    std::string boundary = "shrink";
    std::string random_dims;
    std::string in_path;
    std::string out_path;
    std::string format = "text";
    int steps = 1;
    std::string threads = "1"; // int or "auto"; never affects results

    int resolved_threads() const {
        if (threads == "auto") return 0;
        try {
            return std::max(1, std::stoi(threads));
        } catch (...) {
            throw parse_error("--threads expects an integer or 'auto'");
        }
    }
};

RuleSpec load_rule(const RunConfig& cfg) {
    const std::string& src = cfg.rule_source;
    if (src == "F1" || src == "F2" || src == "F3" || src == "Fk")
        return builtin_rule(src, cfg.k);
    std::ifstream in(src);
    if (!in) throw parse_error("cannot open rule file '" + src + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    RuleSpec rule = parse_rule(buf.str());
    auto slash = src.find_last_of('/');
    rule.name = slash == std::string::npos ? src : src.substr(slash + 1);
    return rule;
}

ordered_json config_json(const RunConfig& cfg) {
    ordered_json j;
    j["tool"] = "ca2d";
    j["version"] = CA2D_VERSION;
    j["subcommand"] = cfg.subcommand;
    j["rule"] = cfg.rule_source;
    if (cfg.rule_source == "Fk") j["k"] = cfg.k;
    j["n"] = cfg.n;
    j["angles"] = cfg.angles;
    j["p_max"] = cfg.p_max;
    j["n_max"] = cfg.n_max;
    j["samples"] = cfg.samples;
    j["seed"] = cfg.seed;
    j["strategy"] = cfg.strategy;
    j["format"] = cfg.format;
    return j;
}

std::string config_text(const RunConfig& cfg) {
    std::ostringstream os;
    os << "# ca2d " << CA2D_VERSION << " subcommand=" << cfg.subcommand
       << " rule=" << cfg.rule_source;
    if (cfg.rule_source == "Fk") os << " k=" << cfg.k;
    os << " n=" << cfg.n << " angles=" << cfg.angles << " p_max=" << cfg.p_max
       << " n_max=" << cfg.n_max << " samples=" << cfg.samples << " seed=" << cfg.seed
       << " strategy=" << cfg.strategy << "\n";
    return os.str();
}

void write_out(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw domain_error("cannot write to '" + path + "'");
    out << content;
}

int cmd_step(const RunConfig& cfg) {
    RuleSpec rule = load_rule(cfg);
    Configuration c;
    Boundary b = cfg.boundary == "periodic" ? Boundary::periodic : Boundary::shrink;
    if (!cfg.in_path.empty()) {
        std::ifstream in(cfg.in_path);
        if (!in) throw parse_error("cannot open configuration '" + cfg.in_path + "'");
        std::stringstream buf;
        buf << in.rdbuf();
        c = parse_configuration(buf.str());
    } else {
        long w = 0, h = 0;
        if (std::sscanf(cfg.random_dims.c_str(), "%ldx%ld", &w, &h) != 2 || w < 1 || h < 1)
            throw parse_error("--random expects <width>x<height>");
        c = sample_configuration(MeasureSpec::make_uniform(rule.q), w, h, cfg.seed, 0, 0, 0, b);
    }
    Configuration out = step(c, rule, cfg.steps);
    write_out(cfg.out_path, dump_configuration(out));
    return 0;
}

int cmd_lyapunov(const RunConfig& cfg) {
    RuleSpec rule = load_rule(cfg);
    ProfileStrategy strat = cfg.strategy == "sample" ? ProfileStrategy::sample
                                                     : ProfileStrategy::exact;
    DirectionProfile p = profile(rule, cfg.n, cfg.angles, strat, cfg.samples, cfg.seed,
                                 cfg.resolved_threads());
    write_out(cfg.out_path, config_text(cfg) + profile_csv(p));
    return 0;
}

int cmd_entropy(const RunConfig& cfg) {
    RuleSpec rule = load_rule(cfg);
    std::string body;
    if (cfg.method == "rank") {
        EntropyEstimate est = afe_rank(rule, cfg.p_max, cfg.n_max);
        if (cfg.format == "machine") {
            ordered_json j = entropy_to_json(est);
            j["config"] = config_json(cfg);
            body = j.dump(2) + "\n";
        } else {
            body = config_text(cfg) + entropy_to_text(est);
        }
    } else if (cfg.method == "empirical") {
        EmpiricalEntropy est = afe_empirical(rule, MeasureSpec::make_uniform(rule.q),
                                             cfg.p, cfg.n_max, cfg.samples, cfg.seed);
        if (cfg.format == "machine") {
            ordered_json j = empirical_to_json(est);
            j["config"] = config_json(cfg);
            body = j.dump(2) + "\n";
        } else {
            body = config_text(cfg) + empirical_to_text(est);
        }
    } else {
        throw parse_error("--method must be rank or empirical");
    }
    write_out(cfg.out_path, body);
    return 0;
}

BoundReport make_report(const RunConfig& cfg, DirectionProfile* profile_out) {
    RuleSpec rule = load_rule(cfg);
    DirectionProfile p = profile(rule, cfg.n, cfg.angles, ProfileStrategy::exact, cfg.samples,
                                 cfg.seed, cfg.resolved_threads());
    EntropyEstimate afe = afe_rank(rule, cfg.p_max, cfg.n_max);
    ShiftEntropyEstimate hs = shift_entropy(MeasureSpec::make_uniform(rule.q),
                                            surface_R(std::min(cfg.n, 16), p).cells);
    if (profile_out) *profile_out = p;
    return assemble_report(afe, hs, p);
}

int cmd_bound(const RunConfig& cfg) {
    RuleSpec rule = load_rule(cfg);
    DirectionProfile p = profile(rule, cfg.n, cfg.angles, ProfileStrategy::exact, cfg.samples,
                                 cfg.seed, cfg.resolved_threads());
    IntegralBound ib = bound_integral(p);
    QuadrantBound qb = bound_integral_quadrant(p);
    std::string body;
    if (cfg.format == "machine") {
        ordered_json j;
        j["rule"] = rule.name;
        j["n"] = cfg.n;
        j["M"] = static_cast<int>(p.angles.size());
        j["lambda_R"] = bound_rectangle(p);
        j["lambda_T"] = ib.value;
        j["lambda_T_quadrant"] = qb.value;
        j["lambda_T_quadrant_sqrt2"] = qb.value_sqrt2;
        j["quadrature_error"] = std::max(ib.quadrature_error, qb.quadrature_error);
        j["config"] = config_json(cfg);
        body = j.dump(2) + "\n";
    } else {
        std::ostringstream os;
        os.precision(12);
        os << config_text(cfg);
        os << "lambda_R: " << bound_rectangle(p) << "\n";
        os << "lambda_T: " << ib.value << "\n";
        os << "lambda_T_quadrant: " << qb.value << " (sqrt2 variant: " << qb.value_sqrt2 << ")\n";
        os << "quadrature_error: " << std::max(ib.quadrature_error, qb.quadrature_error) << "\n";
        body = os.str();
    }
    write_out(cfg.out_path, body);
    return 0;
}

int cmd_report(const RunConfig& cfg) {
    DirectionProfile p;
    BoundReport rep = make_report(cfg, &p);
    std::string body;
    if (cfg.format == "machine") {
        ordered_json j = bound_report_to_json(rep);
        j["config"] = config_json(cfg);
        body = j.dump(2) + "\n";
    } else {
        body = config_text(cfg) + bound_report_to_text(rep);
    }
    write_out(cfg.out_path, body);
    // plot-ready lambda curve next to the main output
    if (!cfg.out_path.empty()) {
        std::string stem = cfg.out_path;
        if (auto dot = stem.rfind('.'); dot != std::string::npos && dot > stem.rfind('/') + 1)
            stem = stem.substr(0, dot);
        std::ofstream plot(stem + "_profile.csv", std::ios::binary);
        plot << "theta,lambda_hat\n";
        plot.precision(12);
        for (size_t a = 0; a < p.angles.size(); ++a)
            plot << p.angles[a] << "," << p.lambda_hat[a] << "\n";
    }
    if (!rep.all_pass) {
        std::cerr << "verdict failure: ";
        if (!rep.verdict_R) std::cerr << "afe > h_shift*lambda_R ";
        if (!rep.verdict_T) std::cerr << "afe > h_shift*lambda_T ";
        if (!rep.verdict_T_quadrant) std::cerr << "afe > h_shift*lambda_T_quadrant";
        std::cerr << "\n";
        return 4;
    }
    return 0;
}

} // namespace

int run(const std::vector<std::string>& args) {
    CLI::App app{"two-dimensional cellular automata: directional exponents, entropy, bounds"};
    app.set_version_flag("--version", std::string("ca2d ") + CA2D_VERSION);
    app.require_subcommand(1);

    RunConfig cfg;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--rule", cfg.rule_source, "builtin name (F1, F2, F3, Fk) or rule file path")
            ->required();
        sub->add_option("--k", cfg.k, "stride for the Fk builtin");
        sub->add_option("--seed", cfg.seed, "PRNG seed (64-bit)");
        sub->add_option("--threads", cfg.threads, "worker threads, int or 'auto'; results do not depend on it");
        sub->add_option("--out", cfg.out_path, "output path (stdout when omitted)");
        sub->add_option("--format", cfg.format, "text | machine")
            ->check(CLI::IsMember({"text", "machine"}));
    };

    CLI::App* s_step = app.add_subcommand(
        "step", "evolve a window and dump it\n  example: ca2d step --rule F3 --random 64x64 --steps 10 --seed 1 --out s.txt");
    add_common(s_step);
    s_step->add_option("--random", cfg.random_dims, "sample a uniform random <w>x<h> window");
    s_step->add_option("--in", cfg.in_path, "read the initial window from a dump");
    s_step->add_option("--steps", cfg.steps, "number of synchronous updates");
    s_step->add_option("--boundary", cfg.boundary, "shrink | periodic")
        ->check(CLI::IsMember({"shrink", "periodic"}));

    CLI::App* s_lyap = app.add_subcommand(
        "lyapunov", "directional extent profile as CSV\n  example: ca2d lyapunov --rule F3 --n 64 --angles 64 --strategy exact --out prof.csv");
    add_common(s_lyap);
    s_lyap->add_option("--n", cfg.n, "iteration horizon");
    s_lyap->add_option("--angles", cfg.angles, "angle grid count M (grid 2*pi*k/M plus cardinals)");
    s_lyap->add_option("--strategy", cfg.strategy, "exact | sample")
        ->check(CLI::IsMember({"exact", "sample"}));
    s_lyap->add_option("--samples", cfg.samples, "samples per angle for --strategy sample");

    CLI::App* s_ent = app.add_subcommand(
        "entropy", "AFE estimate\n  example: ca2d entropy --rule F3 --method rank --p-max 6 --n-max 12");
    add_common(s_ent);
    s_ent->add_option("--method", cfg.method, "rank | empirical")
        ->check(CLI::IsMember({"rank", "empirical"}));
    s_ent->add_option("--p-max", cfg.p_max, "largest patch side for the rank method");
    s_ent->add_option("--n-max", cfg.n_max, "largest horizon");
    s_ent->add_option("--p", cfg.p, "patch side for the empirical method");
    s_ent->add_option("--samples", cfg.samples, "samples for the empirical method");

    CLI::App* s_bound = app.add_subcommand(
        "bound", "rectangle and integral factors only\n  example: ca2d bound --rule F3 --n 256 --angles 128");
    add_common(s_bound);
    s_bound->add_option("--n", cfg.n, "iteration horizon");
    s_bound->add_option("--angles", cfg.angles, "angle grid count");

    CLI::App* s_rep = app.add_subcommand(
        "report", "profile + entropy + bounds with verdicts\n  example: ca2d report --rule F3 --n 64 --angles 64 --p-max 6 --seed 7 --out rep.json --format machine");
    add_common(s_rep);
    s_rep->add_option("--n", cfg.n, "iteration horizon");
    s_rep->add_option("--angles", cfg.angles, "angle grid count");
    s_rep->add_option("--p-max", cfg.p_max, "largest patch side");
    s_rep->add_option("--n-max", cfg.n_max, "largest horizon for the rank table");

    std::vector<const char*> argv;
    argv.push_back("ca2d");
    for (const auto& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (s_step->parsed()) { cfg.subcommand = "step"; return cmd_step(cfg); }
        if (s_lyap->parsed()) { cfg.subcommand = "lyapunov"; return cmd_lyapunov(cfg); }
        if (s_ent->parsed()) { cfg.subcommand = "entropy"; return cmd_entropy(cfg); }
        if (s_bound->parsed()) { cfg.subcommand = "bound"; return cmd_bound(cfg); }
        if (s_rep->parsed()) { cfg.subcommand = "report"; return cmd_report(cfg); }
    } catch (const parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}

} // namespace ca2d::cli
