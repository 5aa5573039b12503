#include "emdm/value.hpp"

#include "emdm/errors.hpp"

#include <array>
#include <cstdio>
#include <regex>

namespace emdm {

const char *value_base_name(ValueBase b) {
    switch (b) {
    case ValueBase::Boolean: return "bool";
    case ValueBase::Integer: return "int";
    case ValueBase::Decimal: return "dec";
    case ValueBase::Text: return "text";
    case ValueBase::Date: return "date";
    }
    return "?";
}

std::optional<ValueBase> value_base_by_name(const std::string &name) {
    if (name == "bool") return ValueBase::Boolean;
    if (name == "int") return ValueBase::Integer;
    if (name == "dec") return ValueBase::Decimal;
    if (name == "text") return ValueBase::Text;
    if (name == "date") return ValueBase::Date;
    return std::nullopt;
}

bool is_iso_date(const std::string &s) {
    if (s.size() != 10 || s[4] != '-' || s[7] != '-') return false;
    for (size_t i : {0u, 1u, 2u, 3u, 5u, 6u, 8u, 9u})
        if (s[i] < '0' || s[i] > '9') return false;
    int month = (s[5] - '0') * 10 + (s[6] - '0');
    int day = (s[8] - '0') * 10 + (s[9] - '0');
    return month >= 1 && month <= 12 && day >= 1 && day <= 31;
}

Value Value::date(std::string iso) {
    if (!is_iso_date(iso))
        throw Error(Errc::Corrupt, "not an ISO date: " + iso);
    return Value(Kind::Date, false, 0, 0.0, std::move(iso));
}

bool Value::operator==(const Value &o) const {
    if (kind_ != o.kind_) return false;
    switch (kind_) {
    case Kind::Null: return true;
    case Kind::Boolean: return b_ == o.b_;
    case Kind::Integer:
    case Kind::Ref: return i_ == o.i_;
    case Kind::Decimal: return d_ == o.d_;
    case Kind::Text:
    case Kind::Date: return s_ == o.s_;
    }
    return false;
}

bool Value::operator<(const Value &o) const {
    if (kind_ != o.kind_) return static_cast<int>(kind_) < static_cast<int>(o.kind_);
    switch (kind_) {
    case Kind::Null: return false;
    case Kind::Boolean: return b_ < o.b_;
    case Kind::Integer:
    case Kind::Ref: return i_ < o.i_;
    case Kind::Decimal: return d_ < o.d_;
    case Kind::Text:
    case Kind::Date: return s_ < o.s_;
    }
    return false;
}

static std::string decimal_to_string(double d) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", d);
    // shortest form that round-trips
    for (int prec = 1; prec < 17; ++prec) {
        char probe[40];
        std::snprintf(probe, sizeof probe, "%.*g", prec, d);
        double back = 0;
        std::sscanf(probe, "%lf", &back);
        if (back == d) return probe;
    }
    return buf;
}

std::string Value::to_string() const {
    switch (kind_) {
    case Kind::Null: return "null";
    case Kind::Boolean: return b_ ? "true" : "false";
    case Kind::Integer: return std::to_string(i_);
    case Kind::Decimal: return decimal_to_string(d_);
    case Kind::Text: return "\"" + s_ + "\"";
    case Kind::Date: return s_;
    case Kind::Ref: return "@" + std::to_string(i_);
    }
    return "?";
}

static bool kind_matches_base(Value::Kind k, ValueBase b) {
    switch (b) {
    case ValueBase::Boolean: return k == Value::Kind::Boolean;
    case ValueBase::Integer: return k == Value::Kind::Integer;
    case ValueBase::Decimal: return k == Value::Kind::Decimal || k == Value::Kind::Integer;
    case ValueBase::Text: return k == Value::Kind::Text;
    case ValueBase::Date: return k == Value::Kind::Date;
    }
    return false;
}

// Numeric-aware comparison: Integer values are comparable against Decimal
// bounds and vice versa.
static int cmp_for_spec(const Value &a, const Value &b) {
    auto num = [](const Value &v) -> std::optional<double> {
        if (v.kind() == Value::Kind::Integer) return static_cast<double>(v.as_int());
        if (v.kind() == Value::Kind::Decimal) return v.as_decimal();
        return std::nullopt;
    };
    auto na = num(a), nb = num(b);
    if (na && nb) return *na < *nb ? -1 : (*na > *nb ? 1 : 0);
    if (a == b) return 0;
    return a < b ? -1 : 1;
}

std::optional<std::string> ValueTypeSpec::check(const Value &v) const {
    if (v.is_null()) return std::nullopt;
    if (!kind_matches_base(v.kind(), base))
        return "value " + v.to_string() + " is not of base type " + value_base_name(base);
    if (min && cmp_for_spec(v, *min) < 0)
        return "value " + v.to_string() + " below minimum " + min->to_string();
    if (max && cmp_for_spec(v, *max) > 0)
        return "value " + v.to_string() + " above maximum " + max->to_string();
    if (!enumeration.empty()) {
        bool found = false;
        for (const auto &e : enumeration)
            if (e == v || cmp_for_spec(e, v) == 0) { found = true; break; }
        if (!found)
            return "value " + v.to_string() + " not in enumeration";
    }
    if (pattern && v.kind() == Value::Kind::Text) {
        std::regex re(*pattern);
        if (!std::regex_match(v.as_text(), re))
            return "value " + v.to_string() + " does not match pattern \"" + *pattern + "\"";
    }
    return std::nullopt;
}

std::vector<std::string> ValueTypeSpec::self_defects() const {
    std::vector<std::string> out;
    if (min && max && cmp_for_spec(*min, *max) > 0)
        out.push_back("min exceeds max");
    if (min && !kind_matches_base(min->kind(), base))
        out.push_back("min literal does not conform to base");
    if (max && !kind_matches_base(max->kind(), base))
        out.push_back("max literal does not conform to base");
    for (const auto &e : enumeration)
        if (!kind_matches_base(e.kind(), base))
            out.push_back("enumeration value " + e.to_string() + " does not conform to base");
    if (pattern) {
        try {
            std::regex re(*pattern);
        } catch (const std::regex_error &) {
            out.push_back("invalid pattern \"" + *pattern + "\"");
        }
    }
    return out;
}

namespace {
struct Builtin {
    const char *name;
    ValueTypeSpec spec;
};
const std::array<Builtin, 6> &builtins() {
    static const std::array<Builtin, 6> table = {{
        {"BOOLE", {ValueBase::Boolean, {}, {}, {}, {}}},
        {"NAT", {ValueBase::Integer, Value::integer(0), {}, {}, {}}},
        {"INT", {ValueBase::Integer, {}, {}, {}, {}}},
        {"RAT", {ValueBase::Decimal, {}, {}, {}, {}}},
        {"TEXT", {ValueBase::Text, {}, {}, {}, {}}},
        {"DATE", {ValueBase::Date, {}, {}, {}, {}}},
    }};
    return table;
}
} // namespace

const ValueTypeSpec *builtin_value_type(const std::string &name) {
    for (const auto &b : builtins())
        if (name == b.name) return &b.spec;
    return nullptr;
}

std::vector<std::string> builtin_value_type_names() {
    std::vector<std::string> out;
    for (const auto &b : builtins()) out.push_back(b.name);
    return out;
}

const char *errc_name(Errc c) {
    switch (c) {
    case Errc::EmptyName: return "EmptyName";
    case Errc::DuplicateName: return "DuplicateName";
    case Errc::UnknownReference: return "UnknownReference";
    case Errc::AmbiguousReference: return "AmbiguousReference";
    case Errc::DependentsExist: return "DependentsExist";
    case Errc::UnknownConstraint: return "UnknownConstraint";
    case Errc::IllFormedCatalog: return "IllFormedCatalog";
    case Errc::IncoherentInput: return "IncoherentInput";
    case Errc::TooManyMappings: return "TooManyMappings";
    case Errc::NotStratified: return "NotStratified";
    case Errc::UnsupportedPattern: return "UnsupportedPattern";
    case Errc::UnsupportedVersion: return "UnsupportedVersion";
    case Errc::Corrupt: return "Corrupt";
    case Errc::Io: return "Io";
    }
    return "?";
}

} // namespace emdm
