#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace emdm::datalog {

enum class CmpOp { Eq, Ne, Lt, Le, Gt, Ge };

const char *cmp_op_text(CmpOp op);

/// A rule term: a variable (capitalized identifier) or an integer/text
/// constant. Datalog has no nulls; constants order integers before text.
struct Term {
    enum class Kind { Var, Int, Text };
    Kind kind = Kind::Var;
    std::string var;
    int64_t ival = 0;
    std::string sval;

    static Term variable(std::string v) { return {Kind::Var, std::move(v), 0, {}}; }
    static Term integer(int64_t i) { return {Kind::Int, {}, i, {}}; }
    static Term text(std::string s) { return {Kind::Text, {}, 0, std::move(s)}; }

    bool operator==(const Term &) const = default;
    std::string to_string() const;
};

struct Atom {
    std::string predicate;
    std::vector<Term> args;

    bool operator==(const Atom &) const = default;
    std::string to_string() const;
};

/// A body literal: positive atom, negated atom, or a comparison between terms.
struct Literal {
    enum class Kind { Positive, Negated, Compare };
    Kind kind = Kind::Positive;
    Atom atom;      // Positive / Negated
    Term lhs, rhs;  // Compare
    CmpOp op = CmpOp::Eq;

    bool operator==(const Literal &) const = default;
    std::string to_string() const;
};

struct Rule {
    Atom head;
    std::vector<Literal> body; // empty body = fact

    bool operator==(const Rule &) const = default;
    std::string to_string() const;
};

} // namespace emdm::datalog
