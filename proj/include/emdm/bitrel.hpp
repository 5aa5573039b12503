#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace emdm::oracle {

/// The eleven pair-level relation properties.
enum class Prop {
    Reflexive,
    Irreflexive,
    Symmetric,
    Asymmetric,
    Transitive,
    Intransitive,
    Euclidean,
    InEuclidean,
    Equivalence,
    Acyclic,
    Connected,
};

inline constexpr int kPropCount = 11;

const char *prop_name(Prop p);
std::optional<Prop> prop_by_name(const std::string &name);

/// A binary relation over the carrier {0..n-1}, n <= 8, with pair (x,y)
/// stored at bit x*n+y.
struct BitRel {
    int n = 0;
    uint64_t bits = 0;

    bool has(int x, int y) const { return bits >> (x * n + y) & 1; }
    BitRel with(int x, int y) const { return {n, bits | (uint64_t(1) << (x * n + y))}; }
    bool empty() const { return bits == 0; }
    std::string to_string() const;
};

/// Quantifier-expansion evaluation: plain universally-quantified loops over
/// the carrier, one clause per property definition. This is the reference
/// route; the instance validator implements the same semantics independently.
bool holds(Prop p, const BitRel &r);

bool holds_all(std::span<const Prop> ps, const BitRel &r);

enum class ExecMode { Serial, Parallel };

/// Result of an exhaustive enumeration over all relations on carriers
/// 1..max_n. `bits`/`carrier` describe the first hit in enumeration order
/// (carrier ascending, relation mask ascending); `checked` counts relations
/// inspected across all carriers.
struct SearchResult {
    bool found = false;
    int carrier = 0;
    uint64_t bits = 0;
    uint64_t checked = 0;
};

/// First relation satisfying every premise but violating the conclusion.
SearchResult find_implication_counterexample(std::span<const Prop> premises, Prop conclusion,
                                             int max_n, ExecMode mode);

/// First relation satisfying all properties (a model). nonempty_only skips
/// the empty relation — the degenerate-model probe.
SearchResult find_model(std::span<const Prop> props, int max_n, ExecMode mode,
                        bool nonempty_only = false);

} // namespace emdm::oracle
