#pragma once

#include "emdm/catalog.hpp"
#include "emdm/datalog.hpp"

#include <memory>
#include <string>
#include <vector>

namespace emdm::ra {

/// Comparison condition of a selection node: column vs column or column vs
/// constant.
struct Cond {
    std::string lhs;
    bool rhs_is_col = false;
    std::string rhs_col;
    datalog::Term rhs_const;
    datalog::CmpOp op = datalog::CmpOp::Eq;
};

/// Generalized projection item: a column passthrough or a constant.
struct ProjItem {
    bool is_col = true;
    std::string col;
    datalog::Term constant;
};

/// Relational-algebra expression tree. Leaves name predicates; during
/// semi-naive evaluation a leaf may read the delta or the previous iteration
/// of its predicate instead of the full current value.
struct Expr {
    enum class Kind { Leaf, Select, Project, Join, Union, Diff, Rename };
    enum class LeafRole { Full, Delta, Prev };

    Kind kind = Kind::Leaf;
    std::string relation; // Leaf
    LeafRole role = LeafRole::Full;
    std::vector<Cond> conds;        // Select
    std::vector<ProjItem> items;    // Project
    std::vector<std::string> renames; // Rename: positional column names
    std::vector<std::unique_ptr<Expr>> kids;
    std::vector<std::string> columns; // output column names

    std::unique_ptr<Expr> clone() const;
    std::string to_string() const;
};

/// One intensional predicate's equation: the union of its rules' expressions.
/// seminaive[i] holds rule i's delta-rewritten variants (empty for rules with
/// no recursive atom).
struct Equation {
    std::string predicate;
    std::vector<std::string> head_columns;
    std::vector<std::unique_ptr<Expr>> alternatives;
    std::vector<std::vector<std::unique_ptr<Expr>>> seminaive;
    std::vector<bool> recursive; // per alternative

    std::string to_string() const;
};

struct EquationSystem {
    datalog::ProgramInfo info;
    std::vector<Equation> equations; // grouped by strata, info.strata order

    const Equation *find(const std::string &pred) const;
    /// Canonical text form of the whole system, stratum by stratum.
    std::string to_string() const;
};

/// Compiles a checked program: one equation per intensional predicate, one
/// projection(selection(joins)) minus antijoins expression per rule. Throws
/// NotStratified.
EquationSystem compile_to_ra(const Catalog &catalog, const DatalogProgramDef &program);

} // namespace emdm::ra
