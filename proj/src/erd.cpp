#include "emdm/erd.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace emdm {

const char *cycle_class_name(CycleClass c) {
    switch (c) {
    case CycleClass::Autofunction: return "autofunction";
    case CycleClass::Commutative: return "commutative";
    case CycleClass::Circular: return "circular";
    case CycleClass::General: return "general";
    }
    return "?";
}

const char *node_role_name(NodeRole r) {
    switch (r) {
    case NodeRole::Source: return "source";
    case NodeRole::Destination: return "destination";
    case NodeRole::Intermediate: return "intermediate";
    }
    return "?";
}

ErdGraph build_graph(const Catalog &catalog) {
    ErdGraph g;
    for (const auto &s : catalog.sets())
        if (s.kind == SetKind::Entity || s.kind == SetKind::Relationship ||
            s.kind == SetKind::Computed)
            g.nodes.push_back(s.name);
    int id = 0;
    for (const auto &s : catalog.sets())
        for (const auto &rs : s.rel_sorts)
            g.edges.push_back({id++, s.name + "." + rs.role, s.name, rs.target});
    for (const auto &m : catalog.mappings())
        if (m.kind == MappingKind::StructuralFunction)
            g.edges.push_back({id++, m.name, m.domain, m.codomain});
    return g;
}

namespace {

/// Canonical form of a cyclic edge-id sequence: the lexicographically least
/// among all rotations of the sequence and of its reversal.
std::vector<int> canonical_rotation(const std::vector<int> &seq) {
    auto best = seq;
    auto consider = [&](std::vector<int> v) {
        for (size_t r = 0; r < v.size(); ++r) {
            std::rotate(v.begin(), v.begin() + 1, v.end());
            if (v < best) best = v;
        }
    };
    consider(seq);
    std::vector<int> rev(seq.rbegin(), seq.rend());
    consider(rev);
    return best;
}

struct Enumerator {
    const ErdGraph &g;
    size_t max_cycles;
    std::map<std::string, int> node_index;
    // incidence: node -> (edge index, other endpoint)
    std::map<std::string, std::vector<std::pair<int, std::string>>> adj;
    std::set<std::vector<int>> seen; // canonical edge-id sets
    std::vector<CycleReport> out;
    bool truncated = false;

    explicit Enumerator(const ErdGraph &graph, size_t cap) : g(graph), max_cycles(cap) {
        for (size_t i = 0; i < g.nodes.size(); ++i)
            node_index[g.nodes[i]] = static_cast<int>(i);
        for (const auto &e : g.edges) {
            if (e.from == e.to) continue; // self-loops handled separately
            adj[e.from].push_back({e.id, e.to});
            adj[e.to].push_back({e.id, e.from});
        }
    }

    bool emit(const std::vector<int> &edge_ids, const std::vector<std::string> &nodes) {
        if (out.size() >= max_cycles) {
            truncated = true;
            return false;
        }
        std::vector<int> key = edge_ids;
        std::sort(key.begin(), key.end());
        if (!seen.insert(key).second) return true;
        CycleReport r;
        r.edge_ids = edge_ids;
        r.node_seq = nodes;
        canonicalize(r);
        classify(r);
        out.push_back(std::move(r));
        return true;
    }

    void canonicalize(CycleReport &r) {
        std::vector<int> canon = canonical_rotation(r.edge_ids);
        if (canon == r.edge_ids) return;
        // realign node_seq with the canonical edge order: find the edge
        // sequence orientation/rotation that matches
        const size_t n = r.edge_ids.size();
        for (int rev = 0; rev < 2; ++rev) {
            std::vector<int> ids = r.edge_ids;
            std::vector<std::string> nodes = r.node_seq;
            if (rev) {
                std::reverse(ids.begin(), ids.end());
                std::reverse(nodes.begin(), nodes.end());
                std::rotate(nodes.begin(), nodes.end() - 1, nodes.end());
            }
            for (size_t rot = 0; rot < n; ++rot) {
                if (ids == canon) {
                    r.edge_ids = ids;
                    r.node_seq = nodes;
                    return;
                }
                std::rotate(ids.begin(), ids.begin() + 1, ids.end());
                std::rotate(nodes.begin(), nodes.begin() + 1, nodes.end());
            }
        }
    }

    void classify(CycleReport &r) {
        const size_t n = r.edge_ids.size();
        if (n == 1) {
            r.classification = CycleClass::Autofunction;
            r.roles[r.node_seq[0]] = NodeRole::Intermediate;
            return;
        }
        int sources = 0, destinations = 0;
        for (size_t i = 0; i < n; ++i) {
            const std::string &node = r.node_seq[i];
            const ErdEdge &before = g.edges[r.edge_ids[(i + n - 1) % n]];
            const ErdEdge &after = g.edges[r.edge_ids[i]];
            bool out_before = before.from == node;
            bool out_after = after.from == node;
            NodeRole role = NodeRole::Intermediate;
            if (out_before && out_after) role = NodeRole::Source;
            else if (!out_before && !out_after) role = NodeRole::Destination;
            r.roles[node] = role;
            sources += role == NodeRole::Source;
            destinations += role == NodeRole::Destination;
        }
        if (sources == 0 && destinations == 0) r.classification = CycleClass::Circular;
        else if (sources == 1 && destinations == 1) r.classification = CycleClass::Commutative;
        else r.classification = CycleClass::General;
    }

    void run() {
        // length-1: each self-loop edge is one cycle
        for (const auto &e : g.edges)
            if (e.from == e.to)
                if (!emit({e.id}, {e.from})) return;

        // DFS from each start node; only nodes with index >= start are
        // visited, so each cycle is found from its least node exactly once
        std::vector<std::string> order = g.nodes;
        std::sort(order.begin(), order.end(),
                  [&](const std::string &a, const std::string &b) {
                      return node_index[a] < node_index[b];
                  });
        for (const auto &start : order)
            if (!dfs_from(start)) return;
    }

    std::vector<std::string> path_nodes;
    std::vector<int> path_edges;
    std::set<std::string> on_path;

    bool dfs_from(const std::string &start) {
        path_nodes = {start};
        path_edges.clear();
        on_path = {start};
        return extend(start, start);
    }

    bool extend(const std::string &start, const std::string &cur) {
        auto it = adj.find(cur);
        if (it == adj.end()) return true;
        for (const auto &[eid, nxt] : it->second) {
            if (!path_edges.empty() && eid == path_edges.back()) continue; // no U-turn on same edge
            if (nxt == start) {
                if (path_edges.size() >= 1) { // closing edge makes length >= 2
                    path_edges.push_back(eid);
                    if (!emit(path_edges, path_nodes)) return false;
                    path_edges.pop_back();
                }
                continue;
            }
            if (on_path.count(nxt)) continue;
            if (node_index[nxt] < node_index[start]) continue;
            path_edges.push_back(eid);
            path_nodes.push_back(nxt);
            on_path.insert(nxt);
            bool go_on = extend(start, nxt);
            on_path.erase(nxt);
            path_nodes.pop_back();
            path_edges.pop_back();
            if (!go_on) return false;
        }
        return true;
    }
};

} // namespace

CycleEnumeration enumerate_cycles(const ErdGraph &graph, size_t max_cycles) {
    Enumerator e(graph, max_cycles);
    e.run();
    std::sort(e.out.begin(), e.out.end(), [](const CycleReport &a, const CycleReport &b) {
        if (a.edge_ids.size() != b.edge_ids.size())
            return a.edge_ids.size() < b.edge_ids.size();
        return a.edge_ids < b.edge_ids;
    });
    return {std::move(e.out), e.truncated};
}

std::vector<Ctype> suggest_cycle_constraints(const CycleReport &cycle) {
    switch (cycle.classification) {
    case CycleClass::Commutative:
        return {Ctype::FdCommutativity, Ctype::FdAntiCommutativity};
    case CycleClass::Circular:
        return {Ctype::FdLocalCommutativity, Ctype::FdLocalAntiCommutativity,
                Ctype::FdLocalAcyclicity,    Ctype::FdLocalSymmetry,
                Ctype::FdLocalAsymmetry,     Ctype::FdLocalIdempotency,
                Ctype::FdLocalAntiIdempotency};
    case CycleClass::General:
        return {Ctype::FdGeneralizedCommutativity};
    case CycleClass::Autofunction:
        return {Ctype::AfReflexivity,      Ctype::AfIrreflexivity,
                Ctype::AfNullReflexivity,  Ctype::AfSymmetry,
                Ctype::AfAsymmetry,        Ctype::AfNullSymmetry,
                Ctype::AfIdempotency,      Ctype::AfAntiIdempotency,
                Ctype::AfNullIdempotency,  Ctype::AfAcyclicity,
                Ctype::AfCanonicalSurjectivity};
    }
    return {};
}

std::vector<std::vector<int>> cycle_arcs(const ErdGraph &graph, const CycleReport &cycle) {
    const size_t n = cycle.edge_ids.size();
    if (cycle.classification == CycleClass::Autofunction) return {{cycle.edge_ids[0]}};
    if (cycle.classification == CycleClass::General) return {};

    // edge i sits between node_seq[i] and node_seq[(i+1)%n]; forward means
    // the edge's domain is node_seq[i]
    auto forward = [&](size_t i) { return graph.edges[cycle.edge_ids[i]].from == cycle.node_seq[i]; };

    if (cycle.classification == CycleClass::Circular) {
        // all intermediate: edges share one rotational orientation
        std::vector<int> loop;
        if (forward(0)) {
            loop = cycle.edge_ids;
        } else {
            for (size_t i = n; i-- > 0;) loop.push_back(cycle.edge_ids[i]);
        }
        return {loop};
    }

    // commutative: walk from the source in both rotational directions until
    // the destination
    size_t src = 0;
    for (size_t i = 0; i < n; ++i)
        if (cycle.roles.at(cycle.node_seq[i]) == NodeRole::Source) src = i;
    std::vector<int> clockwise, counter;
    for (size_t i = src; cycle.roles.at(cycle.node_seq[i]) != NodeRole::Destination;) {
        clockwise.push_back(cycle.edge_ids[i]);
        i = (i + 1) % n;
    }
    for (size_t i = src; cycle.roles.at(cycle.node_seq[i]) != NodeRole::Destination;) {
        size_t prev = (i + n - 1) % n;
        counter.push_back(cycle.edge_ids[prev]);
        i = prev;
    }
    return {clockwise, counter};
}

std::string export_dot(const Catalog &catalog) {
    std::ostringstream out;
    out << "digraph erd {\n";
    out << "  rankdir=LR;\n";

    std::vector<const SetDef *> objs;
    for (const auto &s : catalog.sets())
        if (s.kind != SetKind::Value) objs.push_back(&s);
    std::sort(objs.begin(), objs.end(),
              [](const SetDef *a, const SetDef *b) { return a->name < b->name; });
    for (const SetDef *s : objs) {
        const char *shape = s->kind == SetKind::Relationship ? "diamond" : "box";
        out << "  \"" << s->name << "\" [shape=" << shape << "];\n";
    }

    std::vector<const MappingDef *> attrs;
    for (const auto &m : catalog.mappings())
        if (m.kind == MappingKind::Attribute) attrs.push_back(&m);
    std::sort(attrs.begin(), attrs.end(), [](const MappingDef *a, const MappingDef *b) {
        return std::tie(a->domain, a->name) < std::tie(b->domain, b->name);
    });
    for (const MappingDef *m : attrs) {
        std::string node = m->domain + "." + m->name;
        out << "  \"" << node << "\" [shape=ellipse, label=\"" << m->name << "\"];\n";
        out << "  \"" << m->domain << "\" -> \"" << node << "\" [dir=none];\n";
    }

    for (const ErdEdge &e : build_graph(catalog).edges)
        out << "  \"" << e.from << "\" -> \"" << e.to << "\" [label=\"" << e.name << "\"];\n";

    out << "}\n";
    return out.str();
}

} // namespace emdm
