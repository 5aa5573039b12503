#include "emdm/relation_props.hpp"

#include <algorithm>
#include <map>

namespace emdm {

void ValueRelation::add_pair(Value a, Value b, int64_t src_row) {
    pairs.push_back({std::move(a), std::move(b), src_row});
}

void ValueRelation::add_carrier(Value v, int64_t src_row) {
    carrier.push_back({std::move(v), src_row});
}

void ValueRelation::finalize() {
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end(),
                            [](const Pair &x, const Pair &y) {
                                return x.a == y.a && x.b == y.b;
                            }),
                pairs.end());
    std::sort(carrier.begin(), carrier.end(),
              [](const Element &x, const Element &y) { return x.v < y.v; });
    carrier.erase(std::unique(carrier.begin(), carrier.end(),
                              [](const Element &x, const Element &y) { return x.v == y.v; }),
                  carrier.end());
}

bool ValueRelation::has(const Value &a, const Value &b) const {
    auto it = std::lower_bound(pairs.begin(), pairs.end(), Pair{a, b, INT64_MIN});
    return it != pairs.end() && it->a == a && it->b == b;
}

std::vector<ValueRelation::Element> ValueRelation::active_domain() const {
    std::vector<Element> out;
    for (const auto &p : pairs) {
        out.push_back({p.a, p.src_row});
        out.push_back({p.b, p.src_row});
    }
    std::sort(out.begin(), out.end(),
              [](const Element &x, const Element &y) { return x.v < y.v; });
    out.erase(std::unique(out.begin(), out.end(),
                          [](const Element &x, const Element &y) { return x.v == y.v; }),
              out.end());
    return out;
}

namespace {

using Pair = ValueRelation::Pair;

struct Collector {
    std::vector<RelViolation> out;
    size_t cap;
    bool full() const { return out.size() >= cap; }
    void add(std::string expl, std::vector<int64_t> rows, std::vector<Value> vals) {
        if (full()) return;
        std::sort(rows.begin(), rows.end());
        rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
        rows.erase(std::remove(rows.begin(), rows.end(), int64_t(-1)), rows.end());
        out.push_back({std::move(expl), std::move(rows), std::move(vals)});
    }
};

// pairs grouped by first component, preserving sorted order
std::map<Value, std::vector<Pair>> by_first(const ValueRelation &r) {
    std::map<Value, std::vector<Pair>> idx;
    for (const auto &p : r.pairs) idx[p.a].push_back(p);
    return idx;
}

void check_reflexive(const ValueRelation &r, Collector &c) {
    for (const auto &e : r.carrier) {
        if (c.full()) break;
        if (!r.has(e.v, e.v))
            c.add("reflexivity: (" + e.v.to_string() + "," + e.v.to_string() + ") missing",
                  {e.src_row}, {e.v});
    }
}

void check_irreflexive(const ValueRelation &r, Collector &c) {
    for (const auto &p : r.pairs) {
        if (c.full()) break;
        if (p.a == p.b)
            c.add("irreflexivity: (" + p.a.to_string() + "," + p.a.to_string() + ") present",
                  {p.src_row}, {p.a});
    }
}

void check_symmetric(const ValueRelation &r, Collector &c) {
    for (const auto &p : r.pairs) {
        if (c.full()) break;
        if (!r.has(p.b, p.a))
            c.add("symmetry: (" + p.a.to_string() + "," + p.b.to_string() + ") present but (" +
                      p.b.to_string() + "," + p.a.to_string() + ") missing",
                  {p.src_row}, {p.a, p.b});
    }
}

void check_asymmetric(const ValueRelation &r, Collector &c) {
    for (const auto &p : r.pairs) {
        if (c.full()) break;
        bool report = p.a < p.b || p.a == p.b; // once per unordered pair
        if (report && r.has(p.b, p.a))
            c.add("asymmetry: both (" + p.a.to_string() + "," + p.b.to_string() + ") and (" +
                      p.b.to_string() + "," + p.a.to_string() + ") present",
                  {p.src_row}, {p.a, p.b});
    }
}

void check_transitive(const ValueRelation &r, Collector &c, bool expect_absent) {
    auto idx = by_first(r);
    for (const auto &p : r.pairs) {
        if (c.full()) return;
        auto it = idx.find(p.b);
        if (it == idx.end()) continue;
        for (const auto &q : it->second) {
            if (c.full()) return;
            bool closed = r.has(p.a, q.b);
            if (!expect_absent && !closed)
                c.add("transitivity: (" + p.a.to_string() + "," + p.b.to_string() + "),(" +
                          p.b.to_string() + "," + q.b.to_string() + ") present but (" +
                          p.a.to_string() + "," + q.b.to_string() + ") missing",
                      {p.src_row, q.src_row}, {p.a, p.b, q.b});
            if (expect_absent && closed)
                c.add("intransitivity: (" + p.a.to_string() + "," + p.b.to_string() + "),(" +
                          p.b.to_string() + "," + q.b.to_string() + ") and (" + p.a.to_string() +
                          "," + q.b.to_string() + ") all present",
                      {p.src_row, q.src_row}, {p.a, p.b, q.b});
        }
    }
}

void check_euclidean(const ValueRelation &r, Collector &c, bool expect_absent) {
    auto idx = by_first(r);
    for (const auto &[x, ps] : idx) {
        for (const auto &p : ps) {
            for (const auto &q : ps) {
                if (c.full()) return;
                bool closed = r.has(p.b, q.b);
                if (!expect_absent && !closed)
                    c.add("Euclideanity: (" + x.to_string() + "," + p.b.to_string() + "),(" +
                              x.to_string() + "," + q.b.to_string() + ") present but (" +
                              p.b.to_string() + "," + q.b.to_string() + ") missing",
                          {p.src_row, q.src_row}, {x, p.b, q.b});
                if (expect_absent && closed)
                    c.add("inEuclideanity: (" + x.to_string() + "," + p.b.to_string() + "),(" +
                              x.to_string() + "," + q.b.to_string() + ") and (" +
                              p.b.to_string() + "," + q.b.to_string() + ") all present",
                          {p.src_row, q.src_row}, {x, p.b, q.b});
            }
        }
    }
}

void check_acyclic(const ValueRelation &r, Collector &c) {
    // iterative DFS over the directed pair graph; reports the first cycle
    // reached from each yet-unvisited start, in sorted value order
    auto idx = by_first(r);
    std::map<Value, int> state; // 0 unseen, 1 on stack, 2 done
    for (const auto &start : idx) {
        if (c.full()) return;
        if (state[start.first] != 0) continue;
        std::vector<std::pair<Value, size_t>> stack{{start.first, 0}};
        std::vector<Value> path{start.first};
        state[start.first] = 1;
        while (!stack.empty()) {
            auto &[v, next] = stack.back();
            auto it = idx.find(v);
            if (it == idx.end() || next >= it->second.size()) {
                state[v] = 2;
                stack.pop_back();
                path.pop_back();
                continue;
            }
            const Pair &edge = it->second[next++];
            int s = state.count(edge.b) ? state[edge.b] : 0;
            if (s == 1) {
                // cycle: suffix of path from edge.b; cite every edge's source row
                std::vector<Value> cyc;
                auto pos = std::find_if(path.begin(), path.end(),
                                        [&](const Value &x) { return x == edge.b; });
                for (auto jt = pos; jt != path.end(); ++jt) cyc.push_back(*jt);
                std::vector<int64_t> rows{edge.src_row};
                for (size_t i = 0; i + 1 < cyc.size(); ++i) {
                    auto at = std::lower_bound(r.pairs.begin(), r.pairs.end(),
                                               Pair{cyc[i], cyc[i + 1], INT64_MIN});
                    if (at != r.pairs.end() && at->a == cyc[i] && at->b == cyc[i + 1])
                        rows.push_back(at->src_row);
                }
                std::string text = "acyclicity: cycle";
                for (const auto &x : cyc) text += " " + x.to_string();
                c.add(text, std::move(rows), std::move(cyc));
                if (c.full()) return;
            } else if (s == 0) {
                state[edge.b] = 1;
                stack.push_back({edge.b, 0});
                path.push_back(edge.b);
            }
        }
    }
}

void check_connected(const ValueRelation &r, Collector &c) {
    for (size_t i = 0; i < r.carrier.size(); ++i) {
        for (size_t j = i + 1; j < r.carrier.size(); ++j) {
            if (c.full()) return;
            const auto &x = r.carrier[i];
            const auto &y = r.carrier[j];
            if (!r.has(x.v, y.v) && !r.has(y.v, x.v))
                c.add("connectivity: neither (" + x.v.to_string() + "," + y.v.to_string() +
                          ") nor (" + y.v.to_string() + "," + x.v.to_string() + ") present",
                      {x.src_row, y.src_row}, {x.v, y.v});
        }
    }
}

} // namespace

std::vector<RelViolation> relation_violations(oracle::Prop p, const ValueRelation &r,
                                              size_t cap) {
    Collector c{{}, cap};
    using oracle::Prop;
    switch (p) {
    case Prop::Reflexive: check_reflexive(r, c); break;
    case Prop::Irreflexive: check_irreflexive(r, c); break;
    case Prop::Symmetric: check_symmetric(r, c); break;
    case Prop::Asymmetric: check_asymmetric(r, c); break;
    case Prop::Transitive: check_transitive(r, c, false); break;
    case Prop::Intransitive: check_transitive(r, c, true); break;
    case Prop::Euclidean: check_euclidean(r, c, false); break;
    case Prop::InEuclidean: check_euclidean(r, c, true); break;
    case Prop::Equivalence:
        check_reflexive(r, c);
        check_symmetric(r, c);
        check_transitive(r, c, false);
        break;
    case Prop::Acyclic: check_acyclic(r, c); break;
    case Prop::Connected: check_connected(r, c); break;
    }
    return std::move(c.out);
}

} // namespace emdm
