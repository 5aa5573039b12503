#include "emdm/datalog.hpp"

#include <algorithm>
#include <set>

namespace emdm::datalog {

int extensional_arity(const Catalog &catalog, const std::string &set_name) {
    return 1 + static_cast<int>(catalog.columns_of(set_name).size());
}

namespace {

struct PredUse {
    std::map<std::string, int> arity;      // first seen arity
    std::set<std::string> heads;           // predicates with a rule head
    std::set<std::string> bodies;          // predicates used in bodies
};

PredUse collect(const DatalogProgramDef &p) {
    PredUse u;
    auto see = [&](const Atom &a) {
        if (!u.arity.count(a.predicate))
            u.arity[a.predicate] = static_cast<int>(a.args.size());
    };
    for (const auto &r : p.rules) {
        see(r.head);
        u.heads.insert(r.head.predicate);
        for (const auto &l : r.body)
            if (l.kind != Literal::Kind::Compare) {
                see(l.atom);
                u.bodies.insert(l.atom.predicate);
            }
    }
    return u;
}

/// Tarjan SCC over the predicate dependency graph (head -> body predicates).
struct Scc {
    std::map<std::string, std::vector<std::pair<std::string, bool>>> dep; // (target, negated)
    std::map<std::string, int> index, low, comp;
    std::vector<std::string> stack;
    std::set<std::string> on_stack;
    int counter = 0, comps = 0;
    std::vector<std::vector<std::string>> components; // in completion order

    void visit(const std::string &v) {
        index[v] = low[v] = counter++;
        stack.push_back(v);
        on_stack.insert(v);
        for (const auto &[w, neg] : dep[v]) {
            if (!index.count(w)) {
                visit(w);
                low[v] = std::min(low[v], low[w]);
            } else if (on_stack.count(w)) {
                low[v] = std::min(low[v], index[w]);
            }
        }
        if (low[v] == index[v]) {
            std::vector<std::string> scc;
            while (true) {
                std::string w = stack.back();
                stack.pop_back();
                on_stack.erase(w);
                comp[w] = comps;
                scc.push_back(w);
                if (w == v) break;
            }
            std::sort(scc.begin(), scc.end());
            components.push_back(std::move(scc));
            ++comps;
        }
    }

    void run() {
        std::vector<std::string> nodes;
        for (const auto &[v, _] : dep) nodes.push_back(v);
        std::sort(nodes.begin(), nodes.end());
        for (const auto &v : nodes)
            if (!index.count(v)) visit(v);
    }
};

} // namespace

std::vector<Defect> check_program(const Catalog &catalog, const DatalogProgramDef &program) {
    std::vector<Defect> out;
    PredUse use = collect(program);

    // predicate roles and arities
    for (const auto &[name, arity] : use.arity) {
        bool bound = catalog.find_set(name) != nullptr;
        if (bound) {
            if (use.heads.count(name))
                out.push_back({"ExtensionalHead", name,
                               "predicate is bound to object set " + name +
                                   " and cannot appear in a rule head"});
            int expect = extensional_arity(catalog, name);
            if (arity != expect)
                out.push_back({"ArityMismatch", name,
                               "object set " + name + " binds arity " +
                                   std::to_string(expect) + ", used with " +
                                   std::to_string(arity)});
        } else if (!use.heads.count(name)) {
            out.push_back({"UnknownReference", name,
                           "predicate is neither an object set nor defined by any rule"});
        }
    }
    // consistent arity across uses
    for (const auto &r : program.rules) {
        auto check_atom = [&](const Atom &a) {
            auto it = use.arity.find(a.predicate);
            if (it != use.arity.end() &&
                it->second != static_cast<int>(a.args.size()))
                out.push_back({"ArityMismatch", a.predicate,
                               "used with arity " + std::to_string(a.args.size()) + " and " +
                                   std::to_string(it->second)});
        };
        check_atom(r.head);
        for (const auto &l : r.body)
            if (l.kind != Literal::Kind::Compare) check_atom(l.atom);
    }

    // safety: every head variable and every variable of a negated or
    // comparison literal occurs in some positive body atom
    for (const auto &r : program.rules) {
        std::set<std::string> positive_vars;
        for (const auto &l : r.body)
            if (l.kind == Literal::Kind::Positive)
                for (const auto &t : l.atom.args)
                    if (t.kind == Term::Kind::Var) positive_vars.insert(t.var);
        auto need = [&](const Term &t, const std::string &where) {
            if (t.kind == Term::Kind::Var && !positive_vars.count(t.var))
                out.push_back({"UnsafeRule", r.to_string(),
                               "variable " + t.var + " in " + where +
                                   " is not bound by a positive body atom"});
        };
        for (const auto &t : r.head.args) need(t, "the head");
        for (const auto &l : r.body) {
            if (l.kind == Literal::Kind::Negated)
                for (const auto &t : l.atom.args) need(t, "a negated atom");
            if (l.kind == Literal::Kind::Compare) {
                need(l.lhs, "a comparison");
                need(l.rhs, "a comparison");
            }
        }
    }

    // stratification: no negative edge inside a strongly connected component
    Scc scc;
    for (const auto &r : program.rules) {
        auto &edges = scc.dep[r.head.predicate];
        for (const auto &l : r.body)
            if (l.kind != Literal::Kind::Compare)
                edges.push_back({l.atom.predicate, l.kind == Literal::Kind::Negated});
        for (const auto &l : r.body)
            if (l.kind != Literal::Kind::Compare && !scc.dep.count(l.atom.predicate))
                scc.dep[l.atom.predicate];
    }
    scc.run();
    for (const auto &r : program.rules)
        for (const auto &l : r.body)
            if (l.kind == Literal::Kind::Negated &&
                scc.comp[r.head.predicate] == scc.comp[l.atom.predicate])
                out.push_back({"NotStratified", r.to_string(),
                               "negation of " + l.atom.predicate +
                                   " inside its own recursive component"});
    return out;
}

ProgramInfo analyze_program(const Catalog &catalog, const DatalogProgramDef &program) {
    for (const auto &d : check_program(catalog, program))
        if (d.kind == "NotStratified")
            throw Error(Errc::NotStratified, d.subject + ": " + d.message);

    ProgramInfo info;
    PredUse use = collect(program);
    for (const auto &[name, arity] : use.arity) {
        PredicateDef def;
        def.name = name;
        def.arity = arity;
        def.extensional = catalog.find_set(name) != nullptr;
        if (def.extensional) {
            def.binding = name;
            def.arity = extensional_arity(catalog, name);
        }
        info.predicates[name] = std::move(def);
    }

    Scc scc;
    for (const auto &r : program.rules) {
        auto &edges = scc.dep[r.head.predicate];
        for (const auto &l : r.body)
            if (l.kind != Literal::Kind::Compare)
                edges.push_back({l.atom.predicate, l.kind == Literal::Kind::Negated});
        for (const auto &l : r.body)
            if (l.kind != Literal::Kind::Compare && !scc.dep.count(l.atom.predicate))
                scc.dep[l.atom.predicate];
    }
    scc.run();
    // Tarjan completion order is a reverse topological order of the
    // condensation, which is exactly the evaluation order: dependencies first
    for (const auto &component : scc.components) {
        std::vector<std::string> stratum;
        for (const auto &p : component)
            if (info.predicates.count(p) && !info.predicates[p].extensional)
                stratum.push_back(p);
        if (!stratum.empty()) info.strata.push_back(std::move(stratum));
    }
    return info;
}

} // namespace emdm::datalog
