#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace ca2d {

using Offset = std::pair<int, int>; // lattice offset (di, dj)

enum class RuleKind { linear, table };

struct LinearTerm {
    int di = 0;
    int dj = 0;
    int coeff = 0; // in [1, q)
};

// A radius-r local rule over the alphabet {0, .., q-1}.
//
// Linear rules:  f(x)_(i,j) = sum coeff * x_(i+di, j+dj)  mod q.
// Table rules:   f looks up the (2r+1)^2 neighborhood, row-major with the
//                top row (dj = +r) first, most significant digit first.
struct RuleSpec {
    int q = 2;
    int radius = 0;
    RuleKind kind = RuleKind::linear;
    std::vector<LinearTerm> terms;  // sorted by (di, dj); coeff != 0
    std::vector<uint8_t> table;     // size q^((2r+1)^2) when kind == table
    std::string name;               // builtin name or file stem; informational

    bool is_linear() const { return kind == RuleKind::linear; }
    int neighborhood() const { return (2 * radius + 1) * (2 * radius + 1); }

    // Index of offset (di, dj) in the row-major top-first pattern order.
    int pattern_pos(int di, int dj) const {
        return (radius - dj) * (2 * radius + 1) + (di + radius);
    }

    std::string canonical_text() const;
    uint64_t hash() const;
};

// Parses the line-oriented rule-file grammar ('#' comments):
//   alphabet = <int>
//   radius   = <int>
//   type     = linear | table
//   term     = (<di>,<dj>) <coeff>      (linear; repeatable)
//   map      = <pattern> <symbol>       (table; repeatable)
// Zero-coefficient terms are dropped, duplicate offsets are summed mod q,
// and table rules must be total (rejected when q^((2r+1)^2) > 2^24).
RuleSpec parse_rule(const std::string& text);

// F1 = {(1,0):1}, F2 = {(-1,0):1,(1,0):1}, F3 = {(0,1):1,(1,0):1}, all r=1;
// Fk = {(k,0):1,(0,k):1} with radius k. All over q=2.
RuleSpec builtin_rule(const std::string& name, int k = 1);

// Materializes any rule as a table rule (same behavior). Rejected when the
// table would exceed the 2^24 pattern cap.
RuleSpec rule_to_table(const RuleSpec& rule);

// Applies the local rule to one neighborhood given as pattern-ordered symbols.
int apply_rule(const RuleSpec& rule, const std::vector<uint8_t>& nbhd);

// Coefficient map of the k-fold composed linear rule, exact mod q, so
// cancellations are honored (essential over Z_2).
using OffsetPoly = std::map<Offset, int>;
OffsetPoly compose_step(const OffsetPoly& poly, const RuleSpec& rule);

// Composed coefficient maps for steps 1..n (index 0 holds step 1).
std::vector<OffsetPoly> dependence_sets(const RuleSpec& rule, int n);

} // namespace ca2d
