#pragma once

#include "emdm/instance.hpp"
#include "emdm/ra.hpp"

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace emdm::dl {

/// Datalog values: integers order before text (variant index order).
using DlValue = std::variant<int64_t, std::string>;
using DlTuple = std::vector<DlValue>;
using TupleSet = std::set<DlTuple>;

std::string dl_value_text(const DlValue &v);

enum class EvalMode { Naive, SemiNaive };

struct EvalStats {
    int iterations = 0; // evaluation rounds executed, over all strata
    std::vector<size_t> tuples_per_iteration; // newly derived per round
    uint64_t join_work = 0; // sum of |L|*|R| over executed joins
};

struct EvalResult {
    std::map<std::string, TupleSet> relations; // intensional fixpoints, sorted
    EvalStats stats;
};

/// The extensional relation of one object set: one tuple (id, roles...,
/// mappings...) per row with no null among the bound columns.
TupleSet extensional_relation(const Catalog &catalog, const InstanceDB &db,
                              const std::string &set_name);

/// Least fixpoint of the compiled system, stratum by stratum.
EvalResult evaluate_system(const ra::EquationSystem &sys, const Catalog &catalog,
                           const InstanceDB &db, EvalMode mode);

/// Convenience: compile + evaluate.
EvalResult evaluate(const Catalog &catalog, const InstanceDB &db,
                    const DatalogProgramDef &program, EvalMode mode = EvalMode::SemiNaive);

struct IterationStats {
    int naive_iterations = 0;
    int seminaive_iterations = 0;
    std::vector<size_t> tuples_per_iteration; // semi-naive deltas
    uint64_t naive_work = 0;
    uint64_t seminaive_work = 0;
};

/// Runs both modes and reports the comparison; fixpoints are asserted equal.
IterationStats iteration_stats(const Catalog &catalog, const InstanceDB &db,
                               const DatalogProgramDef &program);

} // namespace emdm::dl
