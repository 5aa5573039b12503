#include "emdm/dl_eval.hpp"

#include <algorithm>
#include <cstdio>

namespace emdm::dl {

using ra::Expr;

std::string dl_value_text(const DlValue &v) {
    if (std::holds_alternative<int64_t>(v)) return std::to_string(std::get<int64_t>(v));
    return std::get<std::string>(v);
}

namespace {

std::string decimal_text(double d) {
    for (int prec = 1; prec < 17; ++prec) {
        char probe[40];
        std::snprintf(probe, sizeof probe, "%.*g", prec, d);
        double back = 0;
        std::sscanf(probe, "%lf", &back);
        if (back == d) return probe;
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", d);
    return buf;
}

// Datalog has no nulls and two constant kinds; other bases map into them.
std::optional<DlValue> to_dl(const Value &v) {
    switch (v.kind()) {
    case Value::Kind::Null: return std::nullopt;
    case Value::Kind::Boolean: return DlValue{static_cast<int64_t>(v.as_bool() ? 1 : 0)};
    case Value::Kind::Integer:
    case Value::Kind::Ref: return DlValue{v.as_int()};
    case Value::Kind::Decimal: return DlValue{decimal_text(v.as_decimal())};
    case Value::Kind::Text:
    case Value::Kind::Date: return DlValue{v.as_text()};
    }
    return std::nullopt;
}

DlValue term_value(const datalog::Term &t) {
    if (t.kind == datalog::Term::Kind::Int) return t.ival;
    return t.sval;
}

struct Relation {
    std::vector<std::string> columns;
    TupleSet rows;
};

struct Env {
    const Catalog &catalog;
    const InstanceDB &db;
    std::map<std::string, TupleSet> full;  // current intensional values
    std::map<std::string, TupleSet> delta; // last deltas
    std::map<std::string, TupleSet> prev;  // previous-iteration values
    uint64_t join_work = 0;

    const TupleSet *lookup(const std::string &pred, Expr::LeafRole role) {
        switch (role) {
        case Expr::LeafRole::Delta: {
            auto it = delta.find(pred);
            return it != delta.end() ? &it->second : nullptr;
        }
        case Expr::LeafRole::Prev: {
            auto it = prev.find(pred);
            if (it != prev.end()) return &it->second;
            [[fallthrough]];
        }
        case Expr::LeafRole::Full: {
            auto it = full.find(pred);
            return it != full.end() ? &it->second : nullptr;
        }
        }
        return nullptr;
    }
};

bool cmp_values(const DlValue &a, const DlValue &b, datalog::CmpOp op) {
    switch (op) {
    case datalog::CmpOp::Eq: return a == b;
    case datalog::CmpOp::Ne: return a != b;
    case datalog::CmpOp::Lt: return a < b;
    case datalog::CmpOp::Le: return a <= b;
    case datalog::CmpOp::Gt: return a > b;
    case datalog::CmpOp::Ge: return a >= b;
    }
    return false;
}

size_t col_index(const std::vector<std::string> &cols, const std::string &name) {
    for (size_t i = 0; i < cols.size(); ++i)
        if (cols[i] == name) return i;
    return cols.size();
}

Relation eval(const Expr *e, Env &env) {
    switch (e->kind) {
    case Expr::Kind::Leaf: {
        Relation r;
        r.columns = e->columns;
        if (e->relation.empty()) { // unit relation for fact rules
            r.rows.insert(DlTuple{});
            return r;
        }
        if (env.catalog.find_set(e->relation)) {
            r.rows = extensional_relation(env.catalog, env.db, e->relation);
            return r;
        }
        if (const TupleSet *t = env.lookup(e->relation, e->role)) r.rows = *t;
        return r;
    }
    case Expr::Kind::Rename: {
        Relation in = eval(e->kids[0].get(), env);
        return {e->renames, std::move(in.rows)};
    }
    case Expr::Kind::Select: {
        Relation in = eval(e->kids[0].get(), env);
        Relation out;
        out.columns = in.columns;
        for (const auto &row : in.rows) {
            bool keep = true;
            for (const auto &c : e->conds) {
                size_t li = col_index(in.columns, c.lhs);
                DlValue rhs = c.rhs_is_col ? row[col_index(in.columns, c.rhs_col)]
                                           : term_value(c.rhs_const);
                if (li >= row.size() || !cmp_values(row[li], rhs, c.op)) {
                    keep = false;
                    break;
                }
            }
            if (keep) out.rows.insert(row);
        }
        return out;
    }
    case Expr::Kind::Project: {
        Relation in = eval(e->kids[0].get(), env);
        Relation out;
        out.columns = e->columns;
        std::vector<size_t> idx;
        for (const auto &it : e->items)
            idx.push_back(it.is_col ? col_index(in.columns, it.col) : SIZE_MAX);
        for (const auto &row : in.rows) {
            DlTuple t;
            for (size_t i = 0; i < e->items.size(); ++i)
                t.push_back(idx[i] == SIZE_MAX ? term_value(e->items[i].constant)
                                               : row[idx[i]]);
            out.rows.insert(std::move(t));
        }
        return out;
    }
    case Expr::Kind::Join: {
        Relation l = eval(e->kids[0].get(), env);
        Relation r = eval(e->kids[1].get(), env);
        env.join_work += static_cast<uint64_t>(l.rows.size()) * r.rows.size();
        Relation out;
        out.columns = e->columns;
        // shared columns join by name; right-only columns append
        std::vector<std::pair<size_t, size_t>> match; // (left idx, right idx)
        std::vector<size_t> right_extra;
        for (size_t i = 0; i < r.columns.size(); ++i) {
            size_t li = col_index(l.columns, r.columns[i]);
            if (li < l.columns.size()) match.push_back({li, i});
            else right_extra.push_back(i);
        }
        for (const auto &lt : l.rows)
            for (const auto &rt : r.rows) {
                bool ok = true;
                for (auto [li, ri] : match)
                    if (!(lt[li] == rt[ri])) { ok = false; break; }
                if (!ok) continue;
                DlTuple t = lt;
                for (size_t ri : right_extra) t.push_back(rt[ri]);
                out.rows.insert(std::move(t));
            }
        return out;
    }
    case Expr::Kind::Union: {
        Relation l = eval(e->kids[0].get(), env);
        Relation r = eval(e->kids[1].get(), env);
        for (const auto &t : r.rows) l.rows.insert(t);
        return l;
    }
    case Expr::Kind::Diff: {
        // antijoin: drop left rows whose projection onto the right columns
        // appears on the right
        Relation l = eval(e->kids[0].get(), env);
        Relation r = eval(e->kids[1].get(), env);
        std::vector<size_t> idx;
        for (const auto &c : r.columns) idx.push_back(col_index(l.columns, c));
        Relation out;
        out.columns = l.columns;
        for (const auto &t : l.rows) {
            DlTuple key;
            for (size_t i : idx) key.push_back(t[i]);
            if (!r.rows.count(key)) out.rows.insert(t);
        }
        return out;
    }
    }
    return {};
}

} // namespace

TupleSet extensional_relation(const Catalog &catalog, const InstanceDB &db,
                              const std::string &set_name) {
    TupleSet out;
    const SetInstance *si = db.find(set_name);
    if (!si) return out;
    auto cols = catalog.columns_of(set_name);
    for (const auto &row : si->rows) {
        DlTuple t;
        t.push_back(row.id);
        bool ok = true;
        for (const auto &col : cols) {
            auto v = to_dl(row.get(col.name));
            if (!v) { ok = false; break; }
            t.push_back(std::move(*v));
        }
        if (ok) out.insert(std::move(t));
    }
    return out;
}

EvalResult evaluate_system(const ra::EquationSystem &sys, const Catalog &catalog,
                           const InstanceDB &db, EvalMode mode) {
    Env env{catalog, db, {}, {}, {}, 0};
    EvalStats stats;

    for (const auto &stratum : sys.info.strata) {
        std::vector<const ra::Equation *> eqs;
        for (const auto &p : stratum) eqs.push_back(sys.find(p));

        for (const auto *eq : eqs) env.full[eq->predicate]; // ensure present

        bool stratum_recursive = false;
        for (const auto *eq : eqs)
            for (bool r : eq->recursive) stratum_recursive = stratum_recursive || r;

        if (mode == EvalMode::Naive) {
            while (true) {
                ++stats.iterations;
                size_t fresh = 0;
                std::map<std::string, TupleSet> next;
                for (const auto *eq : eqs) {
                    TupleSet result;
                    for (const auto &alt : eq->alternatives) {
                        Relation r = eval(alt.get(), env);
                        for (auto &t : r.rows) result.insert(t);
                    }
                    fresh += result.size() - [&] {
                        size_t both = 0;
                        for (const auto &t : result)
                            if (env.full[eq->predicate].count(t)) ++both;
                        return both;
                    }();
                    next[eq->predicate] = std::move(result);
                }
                bool changed = false;
                for (const auto *eq : eqs) {
                    if (next[eq->predicate] != env.full[eq->predicate]) changed = true;
                    env.full[eq->predicate] = std::move(next[eq->predicate]);
                }
                stats.tuples_per_iteration.push_back(fresh);
                if (!changed || !stratum_recursive) break; // one pass settles non-recursive strata
            }
        } else {
            // round 1: plain alternatives against empty in-stratum predicates
            ++stats.iterations;
            size_t first = 0;
            for (const auto *eq : eqs) {
                TupleSet init;
                for (const auto &alt : eq->alternatives) {
                    Relation r = eval(alt.get(), env);
                    for (auto &t : r.rows) init.insert(t);
                }
                first += init.size();
                env.delta[eq->predicate] = init;
                env.prev[eq->predicate] = {};
                env.full[eq->predicate] = std::move(init);
            }
            stats.tuples_per_iteration.push_back(first);
            while (stratum_recursive) {
                bool any_delta = false;
                for (const auto *eq : eqs)
                    any_delta = any_delta || !env.delta[eq->predicate].empty();
                if (!any_delta) break;
                ++stats.iterations;
                size_t fresh = 0;
                std::map<std::string, TupleSet> new_delta;
                for (const auto *eq : eqs) {
                    TupleSet derived;
                    for (const auto &variants : eq->seminaive)
                        for (const auto &v : variants) {
                            Relation r = eval(v.get(), env);
                            for (auto &t : r.rows) derived.insert(t);
                        }
                    TupleSet d;
                    for (const auto &t : derived)
                        if (!env.full[eq->predicate].count(t)) d.insert(t);
                    fresh += d.size();
                    new_delta[eq->predicate] = std::move(d);
                }
                for (const auto *eq : eqs) {
                    env.prev[eq->predicate] = env.full[eq->predicate];
                    for (const auto &t : new_delta[eq->predicate])
                        env.full[eq->predicate].insert(t);
                    env.delta[eq->predicate] = std::move(new_delta[eq->predicate]);
                }
                stats.tuples_per_iteration.push_back(fresh);
                if (fresh == 0) break;
            }
            for (const auto *eq : eqs) {
                env.delta.erase(eq->predicate);
                env.prev.erase(eq->predicate);
            }
        }
    }

    EvalResult res;
    stats.join_work = env.join_work;
    res.stats = stats;
    res.relations = std::move(env.full);
    return res;
}

EvalResult evaluate(const Catalog &catalog, const InstanceDB &db,
                    const DatalogProgramDef &program, EvalMode mode) {
    ra::EquationSystem sys = ra::compile_to_ra(catalog, program);
    return evaluate_system(sys, catalog, db, mode);
}

IterationStats iteration_stats(const Catalog &catalog, const InstanceDB &db,
                               const DatalogProgramDef &program) {
    ra::EquationSystem sys = ra::compile_to_ra(catalog, program);
    EvalResult naive = evaluate_system(sys, catalog, db, EvalMode::Naive);
    EvalResult semi = evaluate_system(sys, catalog, db, EvalMode::SemiNaive);
    IterationStats st;
    st.naive_iterations = naive.stats.iterations;
    st.seminaive_iterations = semi.stats.iterations;
    st.tuples_per_iteration = semi.stats.tuples_per_iteration;
    st.naive_work = naive.stats.join_work;
    st.seminaive_work = semi.stats.join_work;
    return st;
}

} // namespace emdm::dl
