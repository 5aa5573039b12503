#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace emdm {

enum class ValueBase { Boolean, Integer, Decimal, Text, Date };

const char *value_base_name(ValueBase b);
std::optional<ValueBase> value_base_by_name(const std::string &name);

/// A single cell value. Ref holds a surrogate row id of another set's row and
/// is only legal for structural-function columns and relationship roles.
class Value {
  public:
    enum class Kind { Null, Boolean, Integer, Decimal, Text, Date, Ref };

    Value() = default;

    static Value null() { return Value(); }
    static Value boolean(bool b) { return Value(Kind::Boolean, b, 0, 0.0, {}); }
    static Value integer(int64_t i) { return Value(Kind::Integer, false, i, 0.0, {}); }
    static Value decimal(double d) { return Value(Kind::Decimal, false, 0, d, {}); }
    static Value text(std::string s) { return Value(Kind::Text, false, 0, 0.0, std::move(s)); }
    static Value date(std::string iso); // validated yyyy-mm-dd; throws on bad shape
    static Value ref(int64_t id) { return Value(Kind::Ref, false, id, 0.0, {}); }

    Kind kind() const { return kind_; }
    bool is_null() const { return kind_ == Kind::Null; }

    bool as_bool() const { return b_; }
    int64_t as_int() const { return i_; }     // Integer and Ref payload
    double as_decimal() const { return d_; }
    const std::string &as_text() const { return s_; } // Text and Date payload

    bool operator==(const Value &o) const;
    bool operator<(const Value &o) const; // total order: kind rank, then payload

    /// Canonical display form, used in witnesses and reports.
    std::string to_string() const;

  private:
    Value(Kind k, bool b, int64_t i, double d, std::string s)
        : kind_(k), b_(b), i_(i), d_(d), s_(std::move(s)) {}

    Kind kind_ = Kind::Null;
    bool b_ = false;
    int64_t i_ = 0;
    double d_ = 0.0;
    std::string s_;
};

/// Checks a text is a plausible ISO date (yyyy-mm-dd with month/day range checks).
bool is_iso_date(const std::string &s);

/// Value-set domain: a base type narrowed by optional bounds, a finite
/// enumeration, or a text pattern.
struct ValueTypeSpec {
    ValueBase base = ValueBase::Text;
    std::optional<Value> min;
    std::optional<Value> max;
    std::vector<Value> enumeration;
    std::optional<std::string> pattern;

    bool operator==(const ValueTypeSpec &) const = default;

    /// Empty result when v conforms; otherwise the reason. Null always
    /// conforms (totality is a separate constraint).
    std::optional<std::string> check(const Value &v) const;

    /// Spec-level sanity: min<=max, enumeration members conform to base.
    std::vector<std::string> self_defects() const;
};

/// Builtin system value types (BOOLE, NAT, INT, RAT, TEXT, DATE), usable as
/// attribute codomains without being declared in the catalog.
const ValueTypeSpec *builtin_value_type(const std::string &name);
std::vector<std::string> builtin_value_type_names();

} // namespace emdm
