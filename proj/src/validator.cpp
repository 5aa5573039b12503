#include "emdm/validator.hpp"

#include "emdm/relation_props.hpp"

#include <algorithm>
#include <map>
#include <set>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace emdm {

using oracle::Prop;

Value walk_path(const Catalog &catalog, const InstanceDB &db, const std::string &set,
                const Row &row, const Path &path) {
    const Row *cur = &row;
    std::string cur_set = set;
    for (size_t i = 0; i < path.size(); ++i) {
        const Value &v = cur->get(path[i].name);
        if (v.is_null()) return Value::null();
        if (i + 1 == path.size()) return v;
        if (v.kind() != Value::Kind::Ref) return Value::null();
        auto col = catalog.find_column(cur_set, path[i].name);
        if (!col) return Value::null();
        const SetInstance *next = db.find(col->codomain);
        const Row *next_row = next ? next->find(v.as_int()) : nullptr;
        if (!next_row) return Value::null(); // dangling ref: refint reports it
        cur = next_row;
        cur_set = col->codomain;
    }
    return Value::null();
}

namespace {

struct Ctx {
    const Catalog &catalog;
    const InstanceDB &db;
    const ConstraintDef &k;
    std::vector<Violation> out;
    bool truncated = false;

    void add(std::vector<WitnessCoord> w, std::string expl) {
        if (out.size() >= kViolationCap) {
            truncated = true;
            return;
        }
        out.push_back({k.name, ctype_info(k.ctype).name, std::move(w), std::move(expl)});
    }

    const SetInstance &inst(const std::string &set) const {
        static const SetInstance kEmpty;
        const SetInstance *si = db.find(set);
        return si ? *si : kEmpty;
    }

    std::string src_set_of_path(const Path &p) const {
        return p.empty() ? "" : p.front().qualifier;
    }

    Path resolved(const Path &p) const {
        if (!p.empty() && !p.front().qualifier.empty()) return p;
        std::vector<Defect> sink;
        return catalog.resolve_path(p, sink, k.name);
    }
};

// --- general set -----------------------------------------------------------

std::set<int64_t> id_set(const Ctx &c, const std::string &set) {
    std::set<int64_t> out;
    for (const auto &r : c.inst(set).rows) out.insert(r.id);
    return out;
}

void check_inclusion_of(Ctx &c, const std::string &sub, const std::string &super) {
    auto sup = id_set(c, super);
    for (const auto &r : c.inst(sub).rows)
        if (!sup.count(r.id))
            c.add({{sub, r.id, {}}},
                  "inclusion: row " + std::to_string(r.id) + " of " + sub + " missing from " +
                      super);
}

void check_disjoint_of(Ctx &c, const std::string &s, const std::string &t) {
    auto ts = id_set(c, t);
    for (const auto &r : c.inst(s).rows)
        if (ts.count(r.id))
            c.add({{s, r.id, {}}, {t, r.id, {}}},
                  "disjointness: row " + std::to_string(r.id) + " in both " + s + " and " + t);
}

void check_union_of(Ctx &c, const std::string &u, const std::string &s, const std::string &t) {
    auto ss = id_set(c, s);
    auto ts = id_set(c, t);
    auto us = id_set(c, u);
    for (const auto &r : c.inst(u).rows)
        if (!ss.count(r.id) && !ts.count(r.id))
            c.add({{u, r.id, {}}},
                  "union: row " + std::to_string(r.id) + " of " + u + " in neither " + s +
                      " nor " + t);
    for (const std::string &part : {s, t})
        for (const auto &r : c.inst(part).rows)
            if (!us.count(r.id))
                c.add({{part, r.id, {}}},
                      "union: row " + std::to_string(r.id) + " of " + part + " missing from " +
                          u);
}

void check_general_set(Ctx &c) {
    const auto &sets = c.k.operands.sets;
    switch (c.k.ctype) {
    case Ctype::Inclusion: check_inclusion_of(c, sets[0], sets[1]); break;
    case Ctype::SetEquality:
        check_inclusion_of(c, sets[0], sets[1]);
        check_inclusion_of(c, sets[1], sets[0]);
        break;
    case Ctype::Disjointness: check_disjoint_of(c, sets[0], sets[1]); break;
    case Ctype::SetUnion: check_union_of(c, sets[0], sets[1], sets[2]); break;
    case Ctype::DirectSum:
        check_union_of(c, sets[0], sets[1], sets[2]);
        check_disjoint_of(c, sets[1], sets[2]);
        break;
    default: break;
    }
}

// --- relation-backed families ----------------------------------------------

void emit_relation_violations(Ctx &c, Prop p, const ValueRelation &r,
                              const std::string &witness_set) {
    for (auto &v : relation_violations(p, r, kViolationCap)) {
        std::vector<WitnessCoord> ws;
        for (int64_t row : v.rows) ws.push_back({witness_set, row, {}});
        if (ws.empty()) ws.push_back({witness_set, 0, {}});
        // offending values ride on the first coordinate only; long cycle
        // witnesses would otherwise square the report size
        ws.front().values = std::move(v.values);
        c.add(std::move(ws), std::move(v.explanation));
    }
}

/// Dyadic relation over a relationship set with two roles into S; pairs from
/// rows (null roles skipped), carrier = the full declared instance of S.
void check_dyadic(Ctx &c, Prop p) {
    const std::string &dset = c.k.operands.sets[0];
    const SetDef *sd = c.catalog.find_set(dset);
    if (!sd || sd->rel_sorts.size() != 2 ||
        sd->rel_sorts[0].target != sd->rel_sorts[1].target)
        return; // schema defect, not ours
    const std::string target = sd->rel_sorts[0].target;
    ValueRelation r;
    for (const auto &row : c.inst(dset).rows) {
        const Value &a = row.get(sd->rel_sorts[0].role);
        const Value &b = row.get(sd->rel_sorts[1].role);
        if (a.is_null() || b.is_null()) continue;
        r.add_pair(a, b, row.id);
    }
    for (const auto &row : c.inst(target).rows)
        r.add_carrier(Value::ref(row.id), row.id);
    r.finalize();
    emit_relation_violations(c, p, r, dset);
}

// --- general mapping ---------------------------------------------------------

void check_totality(Ctx &c, const Path &f) {
    const std::string src = c.src_set_of_path(f);
    for (const auto &row : c.inst(src).rows)
        if (walk_path(c.catalog, c.db, src, row, f).is_null())
            c.add({{src, row.id, {}}},
                  "totality: " + path_to_string(f) + " is null at row " + std::to_string(row.id));
}

void check_one_to_one(Ctx &c, const Path &f) {
    const std::string src = c.src_set_of_path(f);
    std::map<Value, std::vector<int64_t>> groups;
    for (const auto &row : c.inst(src).rows) {
        Value v = walk_path(c.catalog, c.db, src, row, f);
        if (!v.is_null()) groups[v].push_back(row.id);
    }
    for (const auto &[v, rows] : groups) {
        if (rows.size() < 2) continue;
        std::vector<WitnessCoord> ws;
        for (int64_t id : rows) ws.push_back({src, id, {v}});
        c.add(std::move(ws),
              "one-to-oneness: value " + v.to_string() + " shared by " +
                  std::to_string(rows.size()) + " rows");
    }
}

void check_onto(Ctx &c, const Path &f) {
    const std::string src = c.src_set_of_path(f);
    // resolve codomain of the last step
    const PathStep &last = f.back();
    std::string codomain;
    if (const MappingDef *m = c.catalog.find_mapping(last.qualifier, last.name))
        codomain = m->codomain;
    else if (const RelSort *r = c.catalog.find_role(last.qualifier, last.name))
        codomain = r->target;
    std::set<Value> image;
    for (const auto &row : c.inst(src).rows) {
        Value v = walk_path(c.catalog, c.db, src, row, f);
        if (!v.is_null()) image.insert(v);
    }
    for (const auto &row : c.inst(codomain).rows)
        if (!image.count(Value::ref(row.id)))
            c.add({{codomain, row.id, {}}},
                  "ontoness: row " + std::to_string(row.id) + " of " + codomain +
                      " not reached by " + path_to_string(f));
}

bool key_components_cover(const std::vector<Path> &key, const Path &f) {
    for (const auto &p : key)
        if (p == f) return true;
    return false;
}

void check_nonprime(Ctx &c, const Path &f) {
    for (const auto &other : c.catalog.constraints()) {
        bool is_key = other.ctype == Ctype::Key || other.ctype == Ctype::OneToOneness ||
                      other.ctype == Ctype::Bijectivity;
        if (!is_key) continue;
        if (key_components_cover(other.operands.paths, f))
            c.add({},
                  "nonprimeness: " + path_to_string(f) + " is a component of declared key " +
                      other.name);
    }
}

void check_default(Ctx &c, const Path &f) {
    if (!c.k.operands.default_value) return;
    const PathStep &last = f.back();
    const MappingDef *m = c.catalog.find_mapping(last.qualifier, last.name);
    if (!m) return;
    if (const ValueTypeSpec *spec = codomain_spec(c.catalog, m->codomain))
        if (auto reason = spec->check(*c.k.operands.default_value))
            c.add({}, "default value: " + *reason);
}

// --- autofunction semantics over a (possibly composed) path h : A -> A -------

struct AfView {
    const Ctx &c;
    std::string set;
    Path h;
    // apply h to the row with the given id
    Value apply(int64_t id) const {
        const Row *row = c.inst(set).find(id);
        if (!row) return Value::null();
        return walk_path(c.catalog, c.db, set, *row, h);
    }
    /// graph of h restricted to non-null images
    ValueRelation graph() const {
        ValueRelation r;
        for (const auto &row : c.inst(set).rows) {
            Value v = apply(row.id);
            if (!v.is_null()) r.add_pair(Value::ref(row.id), v, row.id);
            r.add_carrier(Value::ref(row.id), row.id);
        }
        r.finalize();
        return r;
    }
};

void check_autofunction(Ctx &c, Ctype t, const Path &h) {
    AfView f{c, c.src_set_of_path(h), h};
    const std::string &A = f.set;
    auto fails = [&](int64_t id, const std::string &what, const Value &got) {
        c.add({{A, id, {got}}},
              what + " at row " + std::to_string(id) + " of " + A + ": " +
                  path_to_string(h) + " gives " + got.to_string());
    };
    switch (t) {
    case Ctype::AfReflexivity:
    case Ctype::FdLocalCommutativity:
        for (const auto &row : c.inst(A).rows) {
            Value v = f.apply(row.id);
            if (!(v == Value::ref(row.id))) fails(row.id, "reflexivity violated", v);
        }
        break;
    case Ctype::AfIrreflexivity:
    case Ctype::FdLocalAntiCommutativity:
        for (const auto &row : c.inst(A).rows) {
            Value v = f.apply(row.id);
            if (v == Value::ref(row.id)) fails(row.id, "irreflexivity violated", v);
        }
        break;
    case Ctype::AfSymmetry:
    case Ctype::FdLocalSymmetry:
        for (const auto &row : c.inst(A).rows) {
            Value v = f.apply(row.id);
            Value vv = v.kind() == Value::Kind::Ref ? f.apply(v.as_int()) : Value::null();
            if (!(vv == Value::ref(row.id)))
                c.add({{A, row.id, {v, vv}}},
                      "symmetry violated at row " + std::to_string(row.id) + ": f(f(x)) = " +
                          vv.to_string() + " differs from x");
        }
        break;
    case Ctype::AfIdempotency:
    case Ctype::FdLocalIdempotency:
        for (const auto &row : c.inst(A).rows) {
            Value v = f.apply(row.id);
            Value vv = v.kind() == Value::Kind::Ref ? f.apply(v.as_int()) : Value::null();
            if (v.is_null() || !(vv == v))
                c.add({{A, row.id, {v, vv}}},
                      "idempotency violated at row " + std::to_string(row.id) + ": f(f(x)) = " +
                          vv.to_string() + " differs from f(x) = " + v.to_string());
        }
        break;
    case Ctype::AfAntiIdempotency:
    case Ctype::FdLocalAntiIdempotency:
        for (const auto &row : c.inst(A).rows) {
            Value v = f.apply(row.id);
            if (v.is_null()) continue; // distinct nulls never collide
            Value vv = v.kind() == Value::Kind::Ref ? f.apply(v.as_int()) : Value::null();
            if (vv == v)
                c.add({{A, row.id, {v}}},
                      "anti-idempotency violated at row " + std::to_string(row.id) +
                          ": f(f(x)) equals f(x) = " + v.to_string());
        }
        break;
    case Ctype::AfNullReflexivity: {
        for (const auto &row : c.inst(A).rows) {
            Value v = f.apply(row.id);
            if (!v.is_null() && !(v == Value::ref(row.id)))
                fails(row.id, "null-reflexivity violated", v);
        }
        break;
    }
    case Ctype::AfNullSymmetry:
        emit_relation_violations(c, Prop::Symmetric, f.graph(), A);
        break;
    case Ctype::AfNullIdempotency: {
        // relation idempotency of the non-null graph: f(x)=y implies f(y)=y
        for (const auto &row : c.inst(A).rows) {
            Value v = f.apply(row.id);
            if (v.kind() != Value::Kind::Ref) continue;
            Value vv = f.apply(v.as_int());
            if (!(vv == v))
                c.add({{A, row.id, {v, vv}}},
                      "null-idempotency violated at row " + std::to_string(row.id) +
                          ": f(" + v.to_string() + ") = " + vv.to_string());
        }
        break;
    }
    case Ctype::AfAsymmetry:
    case Ctype::FdLocalAsymmetry:
        emit_relation_violations(c, Prop::Asymmetric, f.graph(), A);
        break;
    case Ctype::AfAcyclicity:
    case Ctype::FdLocalAcyclicity:
        emit_relation_violations(c, Prop::Acyclic, f.graph(), A);
        break;
    case Ctype::AfCanonicalSurjectivity: {
        std::set<Value> image;
        for (const auto &row : c.inst(A).rows) {
            Value v = f.apply(row.id);
            if (!v.is_null()) image.insert(v);
        }
        for (const auto &row : c.inst(A).rows)
            if (!image.count(Value::ref(row.id)))
                c.add({{A, row.id, {}}},
                      "canonical surjectivity: row " + std::to_string(row.id) +
                          " not in the image of " + path_to_string(h));
        break;
    }
    default: break;
    }
}

// --- HBFP ---------------------------------------------------------------------

/// Pairs (f(x), g(x)) for non-null rows; carrier = active domain.
ValueRelation hbfp_relation(Ctx &c, const Path &f, const Path &g,
                            std::vector<int64_t> *null_rows) {
    const std::string src = c.src_set_of_path(f);
    ValueRelation r;
    for (const auto &row : c.inst(src).rows) {
        Value fv = walk_path(c.catalog, c.db, src, row, f);
        Value gv = walk_path(c.catalog, c.db, src, row, g);
        if (fv.is_null() || gv.is_null()) {
            if (null_rows) null_rows->push_back(row.id);
            continue;
        }
        r.add_pair(fv, gv, row.id);
    }
    r.finalize();
    for (const auto &e : r.active_domain()) r.add_carrier(e.v, e.src_row);
    r.finalize();
    return r;
}

void check_hbfp(Ctx &c, Ctype t) {
    const Path f = c.resolved(c.k.operands.paths[0]);
    const Path g = c.resolved(c.k.operands.paths[1]);
    const std::string src = c.src_set_of_path(f);

    // plain variants of properties that have a null-prefixed sibling fail on
    // any row whose product value is incomplete
    bool strict_nulls = t == Ctype::HbfpSymmetry || t == Ctype::HbfpTransitivity ||
                        t == Ctype::HbfpEuclideanity || t == Ctype::HbfpEquivalence;
    std::vector<int64_t> null_rows;
    ValueRelation r = hbfp_relation(c, f, g, &null_rows);
    if (strict_nulls)
        for (int64_t id : null_rows)
            c.add({{src, id, {}}},
                  ctype_info(t).name + std::string(": row ") + std::to_string(id) +
                      " has a null product component");

    switch (t) {
    case Ctype::HbfpIrreflexivity: emit_relation_violations(c, Prop::Irreflexive, r, src); break;
    case Ctype::HbfpNullReflexivity: emit_relation_violations(c, Prop::Reflexive, r, src); break;
    case Ctype::HbfpSymmetry:
    case Ctype::HbfpNullSymmetry: emit_relation_violations(c, Prop::Symmetric, r, src); break;
    case Ctype::HbfpAsymmetry: emit_relation_violations(c, Prop::Asymmetric, r, src); break;
    case Ctype::HbfpTransitivity:
    case Ctype::HbfpNullTransitivity:
        emit_relation_violations(c, Prop::Transitive, r, src);
        break;
    case Ctype::HbfpIntransitivity:
        emit_relation_violations(c, Prop::Intransitive, r, src);
        break;
    case Ctype::HbfpEuclideanity:
    case Ctype::HbfpNullEuclideanity:
        emit_relation_violations(c, Prop::Euclidean, r, src);
        break;
    case Ctype::HbfpInEuclideanity:
        emit_relation_violations(c, Prop::InEuclidean, r, src);
        break;
    case Ctype::HbfpEquivalence: emit_relation_violations(c, Prop::Equivalence, r, src); break;
    case Ctype::HbfpAcyclicity: emit_relation_violations(c, Prop::Acyclic, r, src); break;
    case Ctype::HbfpConnectivity: emit_relation_violations(c, Prop::Connected, r, src); break;
    default: break;
    }
}

// --- function products ---------------------------------------------------------

void check_key(Ctx &c) {
    std::vector<Path> comps;
    for (const auto &p : c.k.operands.paths) comps.push_back(c.resolved(p));
    const std::string src = c.src_set_of_path(comps[0]);

    // minimality: no proper subset may itself be declared as a key
    for (const auto &other : c.catalog.constraints()) {
        if (other.name == c.k.name) continue;
        bool is_key = other.ctype == Ctype::Key || other.ctype == Ctype::OneToOneness ||
                      other.ctype == Ctype::Bijectivity;
        if (!is_key) continue;
        std::vector<Path> theirs;
        for (const auto &p : other.operands.paths) theirs.push_back(c.resolved(p));
        if (theirs.size() >= comps.size()) continue;
        bool subset = true;
        for (const auto &p : theirs) subset = subset && key_components_cover(comps, p);
        if (subset)
            c.add({}, "key not minimal: proper subset declared as key by " + other.name);
    }

    std::map<std::vector<Value>, std::vector<int64_t>> groups;
    for (const auto &row : c.inst(src).rows) {
        std::vector<Value> tuple;
        bool any_null = false;
        for (const auto &p : comps) {
            Value v = walk_path(c.catalog, c.db, src, row, p);
            any_null = any_null || v.is_null();
            tuple.push_back(std::move(v));
        }
        if (!any_null) groups[tuple].push_back(row.id);
    }
    for (const auto &[tuple, rows] : groups) {
        if (rows.size() < 2) continue;
        std::vector<WitnessCoord> ws;
        for (int64_t id : rows) ws.push_back({src, id, tuple});
        std::string text = "key violated: rows";
        for (int64_t id : rows) text += " " + std::to_string(id);
        text += " share";
        for (const auto &v : tuple) text += " " + v.to_string();
        c.add(std::move(ws), std::move(text));
    }
}

void check_existence(Ctx &c, bool must_exist) {
    const Path f = c.resolved(c.k.operands.paths[0]);
    const Path g = c.resolved(c.k.operands.paths[1]);
    const std::string src = c.src_set_of_path(f);
    for (const auto &row : c.inst(src).rows) {
        Value gv = walk_path(c.catalog, c.db, src, row, g);
        if (gv.is_null()) continue;
        Value fv = walk_path(c.catalog, c.db, src, row, f);
        if (must_exist && fv.is_null())
            c.add({{src, row.id, {gv}}},
                  "existence: " + path_to_string(g) + " present but " + path_to_string(f) +
                      " null at row " + std::to_string(row.id));
        if (!must_exist && !fv.is_null())
            c.add({{src, row.id, {fv, gv}}},
                  "nonexistence: both " + path_to_string(f) + " and " + path_to_string(g) +
                      " present at row " + std::to_string(row.id));
    }
}

// --- diagrams -------------------------------------------------------------------

void check_commutativity(Ctx &c, bool anti) {
    const Path p = c.resolved(c.k.operands.paths[0]);
    const Path q = c.resolved(c.k.operands.paths[1]);
    const std::string src = c.src_set_of_path(p);
    for (const auto &row : c.inst(src).rows) {
        Value pv = walk_path(c.catalog, c.db, src, row, p);
        Value qv = walk_path(c.catalog, c.db, src, row, q);
        bool equal = !pv.is_null() && !qv.is_null() && pv == qv;
        if (!anti && !equal)
            c.add({{src, row.id, {pv, qv}}},
                  "commutativity violated at row " + std::to_string(row.id) + ": " +
                      path_to_string(p) + " = " + pv.to_string() + ", " + path_to_string(q) +
                      " = " + qv.to_string());
        if (anti && equal)
            c.add({{src, row.id, {pv}}},
                  "anti-commutativity violated at row " + std::to_string(row.id) +
                      ": both paths give " + pv.to_string());
    }
}

// --- object constraints (closed Horn clauses, three-valued) ----------------------

enum class Tri { False, Unknown, True };

Tri eval_atom(Ctx &c, const Row &row, const std::string &anchor, const HornLiteral &lit) {
    auto term_value = [&](const HornTerm &t) -> std::pair<Value, bool> {
        if (!t.is_path) return {t.constant, true};
        Path p = t.path;
        if (!p.empty() && p.front().qualifier.empty()) p.front().qualifier = anchor;
        p = c.resolved(p);
        Value v = walk_path(c.catalog, c.db, anchor, row, p);
        return {v, !v.is_null()};
    };
    auto [lv, lok] = term_value(lit.lhs);
    auto [rv, rok] = term_value(lit.rhs);
    if (!lok || !rok) return Tri::Unknown;
    bool numeric = (lv.kind() == Value::Kind::Integer || lv.kind() == Value::Kind::Decimal) &&
                   (rv.kind() == Value::Kind::Integer || rv.kind() == Value::Kind::Decimal);
    auto as_num = [](const Value &v) {
        return v.kind() == Value::Kind::Integer ? static_cast<double>(v.as_int())
                                                : v.as_decimal();
    };
    bool eq, lt;
    if (numeric) {
        eq = as_num(lv) == as_num(rv);
        lt = as_num(lv) < as_num(rv);
    } else if (lv.kind() == rv.kind()) {
        eq = lv == rv;
        lt = lv < rv;
    } else {
        // incomparable kinds: equality decided, order unknown
        if (lit.op == datalog::CmpOp::Eq) return Tri::False;
        if (lit.op == datalog::CmpOp::Ne) return Tri::True;
        return Tri::Unknown;
    }
    bool res = false;
    switch (lit.op) {
    case datalog::CmpOp::Eq: res = eq; break;
    case datalog::CmpOp::Ne: res = !eq; break;
    case datalog::CmpOp::Lt: res = lt; break;
    case datalog::CmpOp::Le: res = lt || eq; break;
    case datalog::CmpOp::Gt: res = !lt && !eq; break;
    case datalog::CmpOp::Ge: res = !lt; break;
    }
    return res ? Tri::True : Tri::False;
}

void check_horn(Ctx &c) {
    if (!c.k.operands.clause) return;
    const HornClause &cl = *c.k.operands.clause;
    for (const auto &row : c.inst(cl.anchor_set).rows) {
        Tri clause = Tri::False;
        for (const auto &lit : cl.literals) {
            Tri a = eval_atom(c, row, cl.anchor_set, lit);
            if (!lit.positive)
                a = a == Tri::True ? Tri::False : (a == Tri::False ? Tri::True : Tri::Unknown);
            if (a == Tri::True) { clause = Tri::True; break; }
            if (a == Tri::Unknown) clause = Tri::Unknown;
        }
        if (clause == Tri::False)
            c.add({{cl.anchor_set, row.id, {}}},
                  "object constraint false at row " + std::to_string(row.id) + ": " +
                      cl.to_string());
    }
}

std::vector<Violation> run_constraint(const Catalog &catalog, const InstanceDB &db,
                                      const ConstraintDef &k) {
    Ctx c{catalog, db, k, {}, false};
    {
        // operand shape is a schema-level invariant; a malformed constraint is
        // validate_schema's to report, not ours to crash on
        OperandShape sh = operand_shape(k.ctype);
        int np = static_cast<int>(k.operands.paths.size());
        if (static_cast<int>(k.operands.sets.size()) != sh.set_count || np < sh.path_min ||
            (sh.path_max >= 0 && np > sh.path_max) ||
            sh.has_clause != k.operands.clause.has_value())
            return {};
    }
    switch (ctype_info(k.ctype).subcategory) {
    case Csubcategory::GeneralSet: check_general_set(c); break;
    case Csubcategory::DyadicRelation: {
        static const std::map<Ctype, Prop> kMap = {
            {Ctype::DrReflexivity, Prop::Reflexive},
            {Ctype::DrIrreflexivity, Prop::Irreflexive},
            {Ctype::DrSymmetry, Prop::Symmetric},
            {Ctype::DrAsymmetry, Prop::Asymmetric},
            {Ctype::DrTransitivity, Prop::Transitive},
            {Ctype::DrIntransitivity, Prop::Intransitive},
            {Ctype::DrEuclideanity, Prop::Euclidean},
            {Ctype::DrInEuclideanity, Prop::InEuclidean},
            {Ctype::DrEquivalence, Prop::Equivalence},
            {Ctype::DrAcyclicity, Prop::Acyclic},
            {Ctype::DrConnectivity, Prop::Connected},
        };
        check_dyadic(c, kMap.at(k.ctype));
        break;
    }
    case Csubcategory::GeneralMapping: {
        Path f = c.resolved(k.operands.paths[0]);
        switch (k.ctype) {
        case Ctype::Totality: check_totality(c, f); break;
        case Ctype::OneToOneness: check_one_to_one(c, f); break;
        case Ctype::Ontoness: check_onto(c, f); break;
        case Ctype::Bijectivity:
            check_one_to_one(c, f);
            check_onto(c, f);
            break;
        case Ctype::Nonprimeness: check_nonprime(c, f); break;
        case Ctype::DefaultValue: check_default(c, f); break;
        default: break;
        }
        break;
    }
    case Csubcategory::Autofunction:
        check_autofunction(c, k.ctype, c.resolved(k.operands.paths[0]));
        break;
    case Csubcategory::HomogeneousBinaryFunctionProduct: check_hbfp(c, k.ctype); break;
    case Csubcategory::GeneralFunctionProduct:
        if (k.ctype == Ctype::Key)
            check_key(c);
        else
            check_existence(c, k.ctype == Ctype::Existence);
        break;
    case Csubcategory::FunctionDiagram:
        if (k.ctype == Ctype::FdCommutativity || k.ctype == Ctype::FdAntiCommutativity)
            check_commutativity(c, k.ctype == Ctype::FdAntiCommutativity);
        else if (k.ctype == Ctype::FdGeneralizedCommutativity)
            check_horn(c);
        else
            check_autofunction(c, k.ctype, c.resolved(k.operands.paths[0]));
        break;
    case Csubcategory::Object: check_horn(c); break;
    case Csubcategory::Relational: break; // implicit, never declared
    }
    if (c.truncated)
        c.out.push_back({k.name, ctype_info(k.ctype).name, {},
                         "truncated after " + std::to_string(kViolationCap) + " violations"});
    return std::move(c.out);
}

// --- implicit relational checks ---------------------------------------------------

void implicit_domain(const Catalog &catalog, const InstanceDB &db,
                     std::vector<Violation> &out) {
    for (const auto &s : catalog.sets()) {
        const SetInstance *si = db.find(s.name);
        if (!si) continue;
        auto cols = catalog.columns_of(s.name);
        for (const auto &row : si->rows) {
            for (const auto &[cname, v] : row.values) {
                if (v.is_null()) continue;
                auto col = std::find_if(cols.begin(), cols.end(),
                                        [&](const auto &c) { return c.name == cname; });
                if (col == cols.end()) {
                    out.push_back({"domain", "rel_domain", {{s.name, row.id, {v}}},
                                   "unknown column " + cname + " on " + s.name});
                    continue;
                }
                if (!col->is_attribute) continue;
                const ValueTypeSpec *spec = codomain_spec(catalog, col->codomain);
                if (!spec) continue;
                if (auto reason = spec->check(v))
                    out.push_back({"domain", "rel_domain", {{s.name, row.id, {v}}},
                                   s.name + "." + cname + ": " + *reason});
            }
        }
    }
}

void implicit_refint(const Catalog &catalog, const InstanceDB &db,
                     std::vector<Violation> &out) {
    for (const auto &s : catalog.sets()) {
        const SetInstance *si = db.find(s.name);
        if (!si) continue;
        for (const auto &col : catalog.columns_of(s.name)) {
            if (col.is_attribute) continue;
            const SetInstance *target = db.find(col.codomain);
            for (const auto &row : si->rows) {
                const Value &v = row.get(col.name);
                if (v.is_null()) continue;
                if (v.kind() != Value::Kind::Ref) {
                    out.push_back({"refint", "rel_referential_integrity",
                                   {{s.name, row.id, {v}}},
                                   s.name + "." + col.name + ": not a reference value"});
                    continue;
                }
                if (!target || !target->has_id(v.as_int()))
                    out.push_back({"refint", "rel_referential_integrity",
                                   {{s.name, row.id, {v}}},
                                   s.name + "." + col.name + ": dangling reference " +
                                       v.to_string() + " into " + col.codomain});
            }
        }
    }
}

} // namespace

std::vector<Violation> check_constraint(const Catalog &catalog, const InstanceDB &db,
                                        const std::string &constraint_name) {
    const ConstraintDef *k = catalog.find_constraint(constraint_name);
    if (!k) throw Error(Errc::UnknownConstraint, constraint_name);
    return run_constraint(catalog, db, *k);
}

ValidationReport validate_instance(const Catalog &catalog, const InstanceDB &db,
                                   ExecMode mode) {
    const auto &ks = catalog.constraints();
    std::vector<std::vector<Violation>> slots(ks.size());
#ifdef _OPENMP
    if (mode == ExecMode::Parallel) {
#pragma omp parallel for schedule(dynamic)
        for (size_t i = 0; i < ks.size(); ++i)
            slots[i] = run_constraint(catalog, db, ks[i]);
    } else
#endif
    {
        (void)mode;
        for (size_t i = 0; i < ks.size(); ++i)
            slots[i] = run_constraint(catalog, db, ks[i]);
    }
    ValidationReport report;
    for (auto &s : slots)
        for (auto &v : s) report.violations.push_back(std::move(v));
    implicit_domain(catalog, db, report.violations);
    implicit_refint(catalog, db, report.violations);
    return report;
}

std::vector<std::vector<std::string>> discover_keys(const Catalog &catalog,
                                                    const InstanceDB &db,
                                                    const std::string &set_name) {
    if (!catalog.find_set(set_name))
        throw Error(Errc::UnknownReference, "no set named " + set_name);
    std::vector<std::string> candidates;
    for (const auto &col : catalog.columns_of(set_name)) {
        MappingFlags flags = catalog.mapping_flags(set_name, col.name);
        if (!flags.nonprime) candidates.push_back(col.name);
    }
    if (candidates.size() > 20)
        throw Error(Errc::TooManyMappings,
                    set_name + " has " + std::to_string(candidates.size()) +
                        " candidate columns (limit 20)");

    const SetInstance *si = db.find(set_name);
    static const SetInstance kEmpty;
    if (!si) si = &kEmpty;

    auto unique_on = [&](const std::vector<size_t> &subset) {
        std::set<std::vector<Value>> seen;
        for (const auto &row : si->rows) {
            std::vector<Value> tuple;
            bool any_null = false;
            for (size_t i : subset) {
                const Value &v = row.get(candidates[i]);
                any_null = any_null || v.is_null();
                tuple.push_back(v);
            }
            if (any_null) continue;
            if (!seen.insert(tuple).second) return false;
        }
        return true;
    };

    std::vector<std::vector<size_t>> keys;
    auto has_sub_key = [&](const std::vector<size_t> &subset) {
        for (const auto &k : keys)
            if (std::includes(subset.begin(), subset.end(), k.begin(), k.end())) return true;
        return false;
    };

    const size_t n = candidates.size();
    // subsets in (size, lexicographic) order
    std::vector<size_t> idx;
    auto dfs = [&](auto &&self, size_t start, size_t want) -> void {
        if (idx.size() == want) {
            if (!has_sub_key(idx) && unique_on(idx)) keys.push_back(idx);
            return;
        }
        for (size_t i = start; i < n; ++i) {
            idx.push_back(i);
            self(self, i + 1, want);
            idx.pop_back();
        }
    };
    for (size_t size = 1; size <= n; ++size) dfs(dfs, 0, size);

    std::vector<std::vector<std::string>> out;
    for (const auto &k : keys) {
        std::vector<std::string> names;
        for (size_t i : k) names.push_back(candidates[i]);
        std::sort(names.begin(), names.end());
        out.push_back(std::move(names));
    }
    std::sort(out.begin(), out.end(), [](const auto &a, const auto &b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    return out;
}

} // namespace emdm
