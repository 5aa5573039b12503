#pragma once

#include "emdm/datalog_ast.hpp"
#include "emdm/errors.hpp"
#include "emdm/registry.hpp"
#include "emdm/value.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace emdm {

enum class SetKind { Entity, Relationship, Value, System, Computed };
enum class MappingKind { Attribute, StructuralFunction, System, Computed };

const char *set_kind_name(SetKind k);
const char *mapping_kind_name(MappingKind k);

/// One canonical Cartesian projection of a relationship-type set.
struct RelSort {
    std::string role;
    std::string target; // object set name
    bool operator==(const RelSort &) const = default;
};

struct SetDef {
    std::string name;
    SetKind kind = SetKind::Entity;
    std::vector<RelSort> rel_sorts;         // Relationship only, >= 2 entries
    std::optional<ValueTypeSpec> value_spec; // Value only
    std::string computed_formula;            // Computed only, opaque text

    bool operator==(const SetDef &) const = default;
};

struct MappingDef {
    std::string name;
    MappingKind kind = MappingKind::Attribute;
    std::string domain;
    std::string codomain;
    std::optional<Value> default_value;
    std::string computed_formula; // Computed only

    bool operator==(const MappingDef &) const = default;
};

/// Convenience view of a mapping's flag constraints; a flag is set iff the
/// matching constraint is declared or derivable by name match.
struct MappingFlags {
    bool total = false;
    bool one_to_one = false;
    bool onto = false;
    bool nonprime = false;
};

/// One step of a mapping path. After resolution the qualifier names the
/// step's domain set; roles of relationship sets resolve like mappings.
struct PathStep {
    std::string qualifier; // empty when written unqualified and unresolved
    std::string name;
    bool operator==(const PathStep &) const = default;
};

using Path = std::vector<PathStep>;

std::string path_to_string(const Path &p);

/// Closed-Horn-clause machinery for object constraints: literals over
/// comparisons of mapping paths and constants, at most one positive literal,
/// evaluated per row of the anchor set in three-valued logic.
struct HornTerm {
    bool is_path = false;
    Path path;
    Value constant;
    bool operator==(const HornTerm &) const = default;
    std::string to_string() const;
};

struct HornLiteral {
    bool positive = true;
    HornTerm lhs, rhs;
    datalog::CmpOp op = datalog::CmpOp::Eq;
    bool operator==(const HornLiteral &) const = default;
    std::string to_string() const;
};

struct HornClause {
    std::string anchor_set;
    std::vector<HornLiteral> literals;
    bool operator==(const HornClause &) const = default;
    std::string to_string() const;
};

struct ConstraintOperands {
    std::vector<std::string> sets;
    std::vector<Path> paths;
    std::optional<Value> default_value; // DefaultValue constraints
    std::optional<HornClause> clause;   // ObjectConstraint / FdGeneralizedCommutativity
    bool operator==(const ConstraintOperands &) const = default;
    std::string to_string() const;
};

enum class ConstraintOrigin { Declared, Derived };

struct ConstraintDef {
    std::string name;
    Ctype ctype = Ctype::ObjectConstraint;
    ConstraintOperands operands;
    ConstraintOrigin origin = ConstraintOrigin::Declared;
    std::string derived_by; // theorem name for derived constraints

    bool operator==(const ConstraintDef &) const = default;
};

struct DatalogProgramDef {
    std::string name;
    std::vector<datalog::Rule> rules;
    bool operator==(const DatalogProgramDef &) const = default;
};

/// A named E-R diagram: a selection of object sets to draw together.
struct DiagramDef {
    std::string name;
    std::vector<std::string> member_sets;
    bool operator==(const DiagramDef &) const = default;
};

/// The schema quadruple of one database: sets, mappings, constraints, and
/// Datalog programs, plus named diagrams. Immutable after load by convention;
/// all mutating operations either succeed or throw without partial effect.
class Catalog {
  public:
    Catalog() = default;
    explicit Catalog(std::string db_name);

    const std::string &db_name() const { return db_name_; }

    const std::vector<SetDef> &sets() const { return sets_; }
    const std::vector<MappingDef> &mappings() const { return mappings_; }
    const std::vector<ConstraintDef> &constraints() const { return constraints_; }
    const std::vector<DatalogProgramDef> &programs() const { return programs_; }
    const std::vector<DiagramDef> &diagrams() const { return diagrams_; }

    // Eager, validating mutators. Throw Error on contract violation.
    void add_set(SetDef def);
    void add_mapping(MappingDef def);
    void add_constraint(ConstraintDef def);
    void add_program(DatalogProgramDef def);
    void add_diagram(DiagramDef def);

    void remove_set(const std::string &name);
    void remove_mapping(const std::string &domain, const std::string &name);
    void remove_constraint(const std::string &name);
    void remove_program(const std::string &name);

    // Relaxed mutators used by the text parser: accept dangling references,
    // which validate() then reports as defects. Duplicate names still throw.
    void add_set_unchecked(SetDef def);
    void add_mapping_unchecked(MappingDef def);
    void add_constraint_unchecked(ConstraintDef def);

    const SetDef *find_set(const std::string &name) const;
    const MappingDef *find_mapping(const std::string &domain, const std::string &name) const;
    /// Unqualified lookup; AmbiguousReference when several sets declare the
    /// name, not-found as nullptr.
    const MappingDef *find_mapping_unqualified(const std::string &name) const;
    const ConstraintDef *find_constraint(const std::string &name) const;
    const DatalogProgramDef *find_program(const std::string &name) const;

    /// Role lookup: (relationship set, role name) -> target set name.
    const RelSort *find_role(const std::string &set, const std::string &role) const;

    /// A mapping-or-role column of a set: its name and codomain/target.
    struct Column {
        std::string name;
        std::string codomain;
        bool is_role = false;
        bool is_attribute = false; // codomain is a value type
        const MappingDef *mapping = nullptr;
    };
    /// All columns of a set in declaration order: roles first, then mappings.
    std::vector<Column> columns_of(const std::string &set) const;
    std::optional<Column> find_column(const std::string &set, const std::string &name) const;

    MappingFlags mapping_flags(const std::string &domain, const std::string &name) const;

    /// Resolves a possibly-unqualified path against this catalog. On success
    /// every step carries its domain set as qualifier. Failures are reported
    /// as defects appended to `defects` and the input is returned unchanged.
    Path resolve_path(const Path &p, std::vector<Defect> &defects,
                      const std::string &context) const;

    /// Full well-formedness check; empty list iff all catalog invariants hold.
    std::vector<Defect> validate() const;

    /// Value equality, insensitive to declaration order.
    bool operator==(const Catalog &o) const;

  private:
    void ensure_set_name_free(const std::string &name) const;
    void ensure_constraint_name_free(const std::string &name) const;

    std::string db_name_ = "db";
    std::vector<SetDef> sets_;
    std::vector<MappingDef> mappings_;
    std::vector<ConstraintDef> constraints_;
    std::vector<DatalogProgramDef> programs_;
    std::vector<DiagramDef> diagrams_;
};

/// Returns the codomain value spec of an attribute column: a user value set's
/// spec or a builtin system type. Null when the codomain is not value-typed.
const ValueTypeSpec *codomain_spec(const Catalog &c, const std::string &codomain);

/// Expected operand shape per constraint type, used by the parser and the
/// schema validator.
struct OperandShape {
    int set_count = 0;   // exact
    int path_min = 0;
    int path_max = 0;    // -1 = unbounded (keys)
    bool has_default = false;
    bool has_clause = false;
};
OperandShape operand_shape(Ctype t);

/// Disambiguates an abbreviation like "sym" by operand shape; nullopt when no
/// candidate fits.
std::optional<Ctype> resolve_ctype(const std::string &abbrev, const ConstraintOperands &ops,
                                   const Catalog &catalog);

} // namespace emdm
