#include "ca2d/rule.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "ca2d/errors.hpp"

namespace ca2d {

namespace {

constexpr uint64_t kTableCap = 1u << 24;

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

int digit_value(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'z') return c - 'a' + 10;
    if (c >= 'A' && c <= 'Z') return c - 'A' + 10;
    return -1;
}

char digit_char(int v) { return v < 10 ? char('0' + v) : char('a' + v - 10); }

long parse_int(const std::string& s, int line, const char* what) {
    try {
        size_t pos = 0;
        long v = std::stol(s, &pos);
        if (pos != s.size()) throw parse_error(std::string("trailing characters after ") + what, line);
        return v;
    } catch (const parse_error&) {
        throw;
    } catch (...) {
        throw parse_error(std::string("expected integer for ") + what + ", got '" + s + "'", line);
    }
}

uint64_t pow_u64(uint64_t b, uint64_t e, uint64_t cap) {
    uint64_t r = 1;
    for (uint64_t i = 0; i < e; ++i) {
        if (r > cap / b + 1) return cap + 1;
        r *= b;
        if (r > cap) return cap + 1;
    }
    return r;
}

void normalize_terms(std::vector<LinearTerm>& terms, int q) {
    std::map<Offset, int> acc;
    for (const auto& t : terms) acc[{t.di, t.dj}] = (acc[{t.di, t.dj}] + t.coeff) % q;
    terms.clear();
    for (const auto& [off, c] : acc)
        if (c != 0) terms.push_back({off.first, off.second, c});
}

} // namespace

RuleSpec parse_rule(const std::string& text) {
    RuleSpec rule;
    bool have_alphabet = false, have_radius = false, have_type = false;
    std::vector<LinearTerm> terms;
    std::vector<int> table;    // -1 = unset
    uint64_t table_size = 0;

    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        std::string line = trim(raw);
        if (line.empty()) continue;

        size_t eq = line.find('=');
        if (eq == std::string::npos) throw parse_error("expected '<key> = <value>'", lineno);
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));

        if (key == "alphabet") {
            long q = parse_int(val, lineno, "alphabet");
            if (q < 2 || q > 36) throw parse_error("alphabet size must be in [2, 36]", lineno);
            rule.q = static_cast<int>(q);
            have_alphabet = true;
        } else if (key == "radius") {
            long r = parse_int(val, lineno, "radius");
            if (r < 0 || r > 64) throw parse_error("radius must be in [0, 64]", lineno);
            rule.radius = static_cast<int>(r);
            have_radius = true;
        } else if (key == "type") {
            if (val == "linear") rule.kind = RuleKind::linear;
            else if (val == "table") rule.kind = RuleKind::table;
            else throw parse_error("type must be 'linear' or 'table'", lineno);
            have_type = true;
            if (rule.kind == RuleKind::table) {
                if (!have_alphabet || !have_radius)
                    throw parse_error("alphabet and radius must precede 'type = table'", lineno);
                table_size = pow_u64(rule.q, static_cast<uint64_t>(rule.neighborhood()), kTableCap);
                if (table_size > kTableCap)
                    throw parse_error("table rule exceeds the 2^24 pattern cap", lineno);
                table.assign(table_size, -1);
            }
        } else if (key == "term") {
            if (!have_alphabet || !have_radius || !have_type)
                throw parse_error("alphabet, radius and type must precede terms", lineno);
            if (rule.kind != RuleKind::linear) throw parse_error("'term' is only valid for linear rules", lineno);
            size_t open = val.find('('), comma = val.find(','), close = val.find(')');
            if (open != 0 || comma == std::string::npos || close == std::string::npos || comma > close)
                throw parse_error("expected 'term = (<di>,<dj>) <coeff>'", lineno);
            long di = parse_int(trim(val.substr(1, comma - 1)), lineno, "di");
            long dj = parse_int(trim(val.substr(comma + 1, close - comma - 1)), lineno, "dj");
            long c = parse_int(trim(val.substr(close + 1)), lineno, "coefficient");
            if (std::abs(di) > rule.radius || std::abs(dj) > rule.radius)
                throw parse_error("term offset outside the rule radius", lineno);
            if (c < 0 || c >= rule.q)
                throw parse_error("coefficient must be in [0, alphabet)", lineno);
            terms.push_back({static_cast<int>(di), static_cast<int>(dj), static_cast<int>(c)});
        } else if (key == "map") {
            if (!have_type || rule.kind != RuleKind::table)
                throw parse_error("'map' is only valid after 'type = table'", lineno);
            std::istringstream pv(val);
            std::string pat, sym;
            if (!(pv >> pat >> sym) || sym.size() != 1)
                throw parse_error("expected 'map = <pattern> <symbol>'", lineno);
            if (pat.size() != static_cast<size_t>(rule.neighborhood()))
                throw parse_error("pattern must have (2r+1)^2 digits", lineno);
            uint64_t idx = 0;
            for (char ch : pat) {
                int d = digit_value(ch);
                if (d < 0 || d >= rule.q) throw parse_error("pattern digit outside alphabet", lineno);
                idx = idx * rule.q + static_cast<uint64_t>(d);
            }
            int s = digit_value(sym[0]);
            if (s < 0 || s >= rule.q) throw parse_error("symbol outside alphabet", lineno);
            table[idx] = s;
        } else {
            throw parse_error("unknown key '" + key + "'", lineno);
        }
    }

    if (!have_alphabet) throw parse_error("missing 'alphabet'");
    if (!have_radius) throw parse_error("missing 'radius'");
    if (!have_type) throw parse_error("missing 'type'");

    if (rule.kind == RuleKind::linear) {
        normalize_terms(terms, rule.q);
        rule.terms = std::move(terms);
    } else {
        size_t missing = static_cast<size_t>(std::count(table.begin(), table.end(), -1));
        if (missing > 0)
            throw parse_error("incomplete table: " + std::to_string(missing) + " of " +
                              std::to_string(table.size()) + " patterns unmapped");
        rule.table.assign(table.begin(), table.end());
    }
    return rule;
}

RuleSpec builtin_rule(const std::string& name, int k) {
    RuleSpec rule;
    rule.q = 2;
    rule.name = name;
    if (name == "F1") {
        rule.radius = 1;
        rule.terms = {{1, 0, 1}};
    } else if (name == "F2") {
        rule.radius = 1;
        rule.terms = {{-1, 0, 1}, {1, 0, 1}};
    } else if (name == "F3") {
        rule.radius = 1;
        rule.terms = {{0, 1, 1}, {1, 0, 1}};
    } else if (name == "Fk") {
        if (k < 1) throw domain_error("Fk requires k >= 1");
        rule.radius = k;
        rule.terms = {{0, k, 1}, {k, 0, 1}};
        rule.name = "Fk" + std::to_string(k);
    } else {
        throw domain_error("unknown builtin rule '" + name + "'");
    }
    std::sort(rule.terms.begin(), rule.terms.end(),
              [](const LinearTerm& a, const LinearTerm& b) {
                  return std::pair(a.di, a.dj) < std::pair(b.di, b.dj);
              });
    return rule;
}

RuleSpec rule_to_table(const RuleSpec& rule) {
    if (rule.kind == RuleKind::table) return rule;
    uint64_t size = pow_u64(rule.q, static_cast<uint64_t>(rule.neighborhood()), kTableCap);
    if (size > kTableCap) throw domain_error("rule too large to materialize as a table");
    RuleSpec out;
    out.q = rule.q;
    out.radius = rule.radius;
    out.kind = RuleKind::table;
    out.name = rule.name.empty() ? "table" : rule.name + "_table";
    out.table.resize(size);
    std::vector<uint8_t> nbhd(rule.neighborhood());
    for (uint64_t idx = 0; idx < size; ++idx) {
        uint64_t rest = idx;
        for (int pos = rule.neighborhood() - 1; pos >= 0; --pos) {
            nbhd[pos] = static_cast<uint8_t>(rest % rule.q);
            rest /= rule.q;
        }
        out.table[idx] = static_cast<uint8_t>(apply_rule(rule, nbhd));
    }
    return out;
}

int apply_rule(const RuleSpec& rule, const std::vector<uint8_t>& nbhd) {
    if (rule.kind == RuleKind::linear) {
        int acc = 0;
        for (const auto& t : rule.terms)
            acc = (acc + t.coeff * nbhd[rule.pattern_pos(t.di, t.dj)]) % rule.q;
        return acc;
    }
    uint64_t idx = 0;
    for (uint8_t s : nbhd) idx = idx * rule.q + s;
    return rule.table[idx];
}

OffsetPoly compose_step(const OffsetPoly& poly, const RuleSpec& rule) {
    if (!rule.is_linear()) throw domain_error("composition requires a linear rule");
    OffsetPoly out;
    for (const auto& [off, c] : poly) {
        for (const auto& t : rule.terms) {
            Offset key{off.first + t.di, off.second + t.dj};
            int v = (out[key] + c * t.coeff) % rule.q;
            if (v == 0) out.erase(key);
            else out[key] = v;
        }
    }
    return out;
}

std::vector<OffsetPoly> dependence_sets(const RuleSpec& rule, int n) {
    std::vector<OffsetPoly> out;
    out.reserve(static_cast<size_t>(n));
    OffsetPoly cur{{{0, 0}, 1}};
    for (int k = 1; k <= n; ++k) {
        cur = compose_step(cur, rule);
        out.push_back(cur);
    }
    return out;
}

std::string RuleSpec::canonical_text() const {
    std::ostringstream os;
    os << "alphabet = " << q << "\n";
    os << "radius = " << radius << "\n";
    os << "type = " << (kind == RuleKind::linear ? "linear" : "table") << "\n";
    if (kind == RuleKind::linear) {
        for (const auto& t : terms)
            os << "term = (" << t.di << "," << t.dj << ") " << t.coeff << "\n";
    } else {
        std::string pat(static_cast<size_t>(neighborhood()), '0');
        for (size_t idx = 0; idx < table.size(); ++idx) {
            uint64_t rest = idx;
            for (int pos = neighborhood() - 1; pos >= 0; --pos) {
                pat[static_cast<size_t>(pos)] = digit_char(static_cast<int>(rest % q));
                rest /= static_cast<uint64_t>(q);
            }
            os << "map = " << pat << " " << digit_char(table[idx]) << "\n";
        }
    }
    return os.str();
}

uint64_t RuleSpec::hash() const {
    // FNV-1a over the canonical serialization.
    uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : canonical_text()) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

} // namespace ca2d
