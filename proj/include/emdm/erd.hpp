#pragma once

#include "emdm/catalog.hpp"

#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace emdm {

/// The E-R diagram graph over object sets: one directed edge per structural
/// function and per relationship role (relationship node -> role target).
/// Attributes are leaf ellipses and take no part in cycle analysis.
struct ErdEdge {
    int id = 0;
    std::string name; // mapping name or "REL.role"
    std::string from; // domain node
    std::string to;   // codomain node
    bool operator==(const ErdEdge &) const = default;
};

struct ErdGraph {
    std::vector<std::string> nodes;
    std::vector<ErdEdge> edges;
};

enum class CycleClass { Autofunction, Commutative, Circular, General };
const char *cycle_class_name(CycleClass c);

enum class NodeRole { Source, Destination, Intermediate };
const char *node_role_name(NodeRole r);

/// One elementary cycle in canonical form: the lexicographically least
/// rotation/reflection of its edge-id sequence. node_seq[i] and
/// node_seq[i+1] are the endpoints of edges[i].
struct CycleReport {
    std::vector<int> edge_ids;
    std::vector<std::string> node_seq; // length = edge count
    std::map<std::string, NodeRole> roles;
    CycleClass classification = CycleClass::General;
    int length() const { return static_cast<int>(edge_ids.size()); }
};

struct CycleEnumeration {
    std::vector<CycleReport> cycles;
    bool truncated = false;
};

ErdGraph build_graph(const Catalog &catalog);

/// All elementary cycles of the underlying undirected multigraph, each once,
/// deterministic order (length, then edge ids). Caps at max_cycles with the
/// truncated flag set.
CycleEnumeration enumerate_cycles(const ErdGraph &graph, size_t max_cycles = 10000);

/// Candidate constraint types per cycle class: commutativity pair for
/// commutative cycles, the seven local types for circular ones, generalized
/// commutativity for general ones, the eleven autofunction types for
/// self-loops. Suggestions only.
std::vector<Ctype> suggest_cycle_constraints(const CycleReport &cycle);

/// Directed arcs recovered from a classified cycle: for a commutative cycle
/// the two source->destination paths (splitting at its unique source and
/// destination), for a circular or length-1 cycle the single composed loop —
/// the compound autofunction the local diagram constraints speak about. Every
/// returned edge id is traversed in its forward direction, so compositions
/// are well typed. Empty for general cycles.
std::vector<std::vector<int>> cycle_arcs(const ErdGraph &graph, const CycleReport &cycle);

/// Graphviz text: entities as boxes, relationships as diamonds, attributes as
/// ellipses, structural functions and roles as arrows. Deterministic.
std::string export_dot(const Catalog &catalog);

} // namespace emdm
