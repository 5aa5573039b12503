#pragma once

#include "emdm/catalog.hpp"
#include "emdm/instance.hpp"

#include <string>
#include <vector>

namespace emdm {

enum class ExecMode { Serial, Parallel };

struct WitnessCoord {
    std::string set;
    int64_t row = 0;
    std::vector<Value> values;
    bool operator==(const WitnessCoord &) const = default;
};

/// One implausibility certificate: the constraint, the rows/values falsifying
/// it, and a human explanation. Schema-level violations carry no witnesses.
struct Violation {
    std::string constraint;
    std::string ctype;
    std::vector<WitnessCoord> witnesses;
    std::string explanation;
    bool operator==(const Violation &) const = default;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool operator==(const ValidationReport &) const = default;
};

inline constexpr size_t kViolationCap = 1000;

/// Checks one declared constraint. Empty result iff satisfied. Throws
/// UnknownConstraint.
std::vector<Violation> check_constraint(const Catalog &catalog, const InstanceDB &db,
                                        const std::string &constraint_name);

/// Checks every declared constraint plus the two implicit relational ones
/// (domain, referential integrity) on every set. Deterministic order:
/// declaration order, then row id. Constraints may be checked concurrently;
/// the report is assembled in declaration order either way.
ValidationReport validate_instance(const Catalog &catalog, const InstanceDB &db,
                                   ExecMode mode = ExecMode::Parallel);

/// All subset-minimal combinations of a set's non-nonprime columns whose
/// concatenation is one-to-one on this instance (rows with a null component
/// exempt). Sorted by size, then lexicographically. Throws TooManyMappings
/// above 20 candidate columns.
std::vector<std::vector<std::string>> discover_keys(const Catalog &catalog,
                                                    const InstanceDB &db,
                                                    const std::string &set_name);

/// Walks a resolved mapping path from a row; Null when any step is null or
/// dangling.
Value walk_path(const Catalog &catalog, const InstanceDB &db, const std::string &set,
                const Row &row, const Path &path);

} // namespace emdm
