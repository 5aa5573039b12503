#pragma once

#include "emdm/bitrel.hpp"
#include "emdm/catalog.hpp"
#include "emdm/theorems.hpp"

#include <cstdint>
#include <set>
#include <string>
#include <vector>

namespace emdm {

struct Incoherence {
    std::string theorem;
    std::vector<std::string> constraints;
    bool operator==(const Incoherence &) const = default;
};

struct Redundancy {
    std::string theorem;
    std::string removable;
    bool operator==(const Redundancy &) const = default;
};

struct AnalysisWarning {
    std::string message;
    std::vector<std::string> constraints;
    bool operator==(const AnalysisWarning &) const = default;
};

struct AnalysisReport {
    std::vector<ConstraintDef> derived;
    std::vector<Incoherence> incoherences;
    std::vector<Redundancy> redundancies;
    std::vector<AnalysisWarning> warnings;
};

/// Fixpoint of the derivation theorems, applied in order; derived constraints
/// are appended with origin=derived. Idempotent and monotone.
Catalog closure(const Catalog &c, AnalysisReport *report = nullptr,
                const TheoremBase &base = TheoremBase::builtin());

/// Semantic image of the closure: one "<ctype>|<operand signature>" entry per
/// constraint, names and origins erased. Two constraint sets are equivalent
/// covers iff their signatures coincide.
std::set<std::string> closure_signature(const Catalog &c,
                                        const TheoremBase &base = TheoremBase::builtin());

/// Applies closure internally, then matches every incoherence pattern and
/// additionally probes each pair-level constraint group for small-carrier
/// satisfiability: pattern-less unsatisfiable groups are still reported, and
/// groups satisfiable only by the empty relation become warnings.
AnalysisReport detect_incoherence(const Catalog &c,
                                  const TheoremBase &base = TheoremBase::builtin());

/// Removes declared constraints implied by the closure of the others,
/// scanning in declaration order to a fixpoint. Preserves the closure.
/// Throws IncoherentInput.
Catalog minimize(const Catalog &c, std::vector<Redundancy> *removed = nullptr,
                 const TheoremBase &base = TheoremBase::builtin());

struct Certificate {
    std::string theorem;
    bool certified = false;
    std::string method;          // "relations" or "dedicated"
    uint64_t models_checked = 0;
    std::string counterexample;  // non-empty iff !certified
};

/// Exhaustive model checking of one pair-level theorem over all binary
/// relations on carriers of size 1..max_carrier. Throws UnsupportedPattern
/// for non-pair shapes (those are certified by certify_all's dedicated
/// enumerations).
Certificate oracle_certify(const Theorem &t, int max_carrier = 4,
                           oracle::ExecMode mode = oracle::ExecMode::Serial);

/// Certifies an entire base: relation enumeration for pair theorems,
/// dedicated small-instance enumerations for the rest.
std::vector<Certificate> certify_all(const TheoremBase &base = TheoremBase::builtin(),
                                     int max_carrier = 4,
                                     oracle::ExecMode mode = oracle::ExecMode::Serial);

} // namespace emdm
