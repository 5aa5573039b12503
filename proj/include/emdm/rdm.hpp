#pragma once

#include "emdm/catalog.hpp"
#include "emdm/instance.hpp"

#include <optional>
#include <string>
#include <vector>

namespace emdm::rdm {

/// One structured constraint record behind an emitted statement; the built-in
/// interpreter evaluates exactly these, nothing more.
struct DdlRecord {
    enum class Kind { PrimaryKey, NotNull, Unique, Check, ForeignKey, Domain };
    Kind kind = Kind::NotNull;
    std::string table;
    std::string name; // emitted constraint name
    std::vector<std::string> columns;
    std::string ref_table;                 // ForeignKey
    std::optional<ValueTypeSpec> domain;   // Domain checks
    std::optional<HornClause> check;       // row-local CHECK clauses
};

struct CoverageEntry {
    std::string constraint;
    std::string ctype;
    bool relational = false;
    std::string statement; // emitted constraint name, or the engine-only reason
};

struct DdlScript {
    std::vector<std::string> statements;
    std::vector<CoverageEntry> coverage; // every declared constraint exactly once
    std::vector<DdlRecord> records;

    std::string text() const;
    int relational_count() const;
    int engine_only_count() const;
};

/// Generic-SQL translation: one table per entity/relationship set with
/// surrogate PK id; attributes become typed columns with CHECKs for
/// bounds/enumerations; structural functions and roles become FK columns (Key
/// Propagation Principle); totality NOT NULL, one-to-oneness UNIQUE, keys
/// composite UNIQUE, row-local object constraints CHECK; everything else is
/// coverage "engine-only". Throws IncoherentInput on incoherent catalogs.
DdlScript emit_ddl(const Catalog &catalog);

struct CoverageSummary {
    int relational_count = 0;
    int engine_only_count = 0;
    std::vector<CoverageEntry> detail;
};

/// The per-constraint relational/engine-only split, consistent with
/// emit_ddl's coverage.
CoverageSummary coverage_report(const Catalog &catalog);

/// Evaluates the emitted NOT NULL / UNIQUE / CHECK / FK / domain records over
/// an instance; one message per breach.
std::vector<std::string> interpret_ddl(const DdlScript &script, const Catalog &catalog,
                                       const InstanceDB &db);

} // namespace emdm::rdm
