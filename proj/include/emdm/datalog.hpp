#pragma once

#include "emdm/catalog.hpp"
#include "emdm/datalog_ast.hpp"
#include "emdm/errors.hpp"

#include <map>
#include <string>
#include <vector>

namespace emdm::datalog {

struct PredicateDef {
    std::string name;
    int arity = 0;
    bool extensional = false;
    std::string binding; // object set backing an extensional predicate
    bool operator==(const PredicateDef &) const = default;
};

/// Predicate inventory and stratification of one program: extensional
/// predicates bind to object sets (columns id, roles..., mappings... in
/// declared order); intensional ones appear in rule heads. Strata order the
/// evaluation so negation only sees fully computed predicates.
struct ProgramInfo {
    std::map<std::string, PredicateDef> predicates;
    std::vector<std::vector<std::string>> strata; // evaluation order
};

/// Arity of the extensional predicate bound to an object set: 1 (id) + roles
/// + mappings.
int extensional_arity(const Catalog &catalog, const std::string &set_name);

/// Safety, arity, and stratification checks; defects are data.
std::vector<Defect> check_program(const Catalog &catalog, const DatalogProgramDef &program);

/// Computes predicates and strata. Throws NotStratified on recursion through
/// negation (check_program reports the same condition as a defect).
ProgramInfo analyze_program(const Catalog &catalog, const DatalogProgramDef &program);

} // namespace emdm::datalog
