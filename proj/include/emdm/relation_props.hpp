#pragma once

#include "emdm/bitrel.hpp" // for oracle::Prop, the shared property vocabulary
#include "emdm/value.hpp"

#include <cstdint>
#include <set>
#include <string>
#include <vector>

namespace emdm {

/// A finite binary relation over Values with provenance: each pair remembers
/// the instance row that produced it, each carrier element its home row.
/// Pairs never contain Null components; null handling happens before
/// construction.
struct ValueRelation {
    struct Pair {
        Value a, b;
        int64_t src_row = -1;
        bool operator<(const Pair &o) const {
            if (!(a == o.a)) return a < o.a;
            if (!(b == o.b)) return b < o.b;
            return src_row < o.src_row;
        }
    };
    struct Element {
        Value v;
        int64_t src_row = -1;
    };

    std::vector<Pair> pairs;     // kept sorted, deduplicated on (a,b)
    std::vector<Element> carrier; // kept sorted by value

    void add_pair(Value a, Value b, int64_t src_row);
    void add_carrier(Value v, int64_t src_row);
    void finalize(); // sort + dedup
    bool has(const Value &a, const Value &b) const;

    /// Active domain: every value occurring in some pair, with provenance.
    std::vector<Element> active_domain() const;
};

/// One property violation with the falsifying values and their source rows.
struct RelViolation {
    std::string explanation;
    std::vector<int64_t> rows;  // provenance rows (deduped, may be empty)
    std::vector<Value> values;  // the offending values in order of mention
};

/// Witness-producing checks of the eleven pair-level properties. Carrier
/// semantics: Reflexive/Connected/Equivalence quantify over `carrier`; the
/// rest quantify over pairs only. Results are deterministic (sorted input
/// order) and capped.
std::vector<RelViolation> relation_violations(oracle::Prop p, const ValueRelation &r,
                                              size_t cap = 1000);

} // namespace emdm
