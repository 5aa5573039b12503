#include "emdm/store.hpp"

#include "emdm/analysis.hpp"
#include "emdm/datalog.hpp"
#include "emdm/theorems.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace emdm::store {

using nlohmann::json;

namespace {

json value_to_json(const Value &v) {
    json j;
    switch (v.kind()) {
    case Value::Kind::Null: j["k"] = "null"; break;
    case Value::Kind::Boolean: j["k"] = "bool"; j["v"] = v.as_bool(); break;
    case Value::Kind::Integer: j["k"] = "int"; j["v"] = v.as_int(); break;
    case Value::Kind::Decimal: j["k"] = "dec"; j["v"] = v.as_decimal(); break;
    case Value::Kind::Text: j["k"] = "text"; j["v"] = v.as_text(); break;
    case Value::Kind::Date: j["k"] = "date"; j["v"] = v.as_text(); break;
    case Value::Kind::Ref: j["k"] = "ref"; j["v"] = v.as_int(); break;
    }
    return j;
}

Value value_from_json(const json &j) {
    std::string k = j.at("k").get<std::string>();
    if (k == "null") return Value::null();
    if (k == "bool") return Value::boolean(j.at("v").get<bool>());
    if (k == "int") return Value::integer(j.at("v").get<int64_t>());
    if (k == "dec") return Value::decimal(j.at("v").get<double>());
    if (k == "text") return Value::text(j.at("v").get<std::string>());
    if (k == "date") return Value::date(j.at("v").get<std::string>());
    if (k == "ref") return Value::ref(j.at("v").get<int64_t>());
    throw Error(Errc::Corrupt, "unknown value kind " + k);
}

json path_to_json(const Path &p) {
    json arr = json::array();
    for (const auto &s : p) arr.push_back({{"q", s.qualifier}, {"n", s.name}});
    return arr;
}

Path path_from_json(const json &j) {
    Path p;
    for (const auto &s : j) p.push_back({s.at("q").get<std::string>(), s.at("n").get<std::string>()});
    return p;
}

json clause_to_json(const HornClause &cl) {
    json j;
    j["anchor"] = cl.anchor_set;
    json lits = json::array();
    for (const auto &lit : cl.literals) {
        json l;
        l["positive"] = lit.positive;
        l["op"] = datalog::cmp_op_text(lit.op);
        auto term = [&](const HornTerm &t) {
            json tj;
            tj["path"] = t.is_path;
            if (t.is_path) tj["p"] = path_to_json(t.path);
            else tj["c"] = value_to_json(t.constant);
            return tj;
        };
        l["lhs"] = term(lit.lhs);
        l["rhs"] = term(lit.rhs);
        lits.push_back(std::move(l));
    }
    j["literals"] = std::move(lits);
    return j;
}

datalog::CmpOp cmp_from_text(const std::string &s) {
    if (s == "=") return datalog::CmpOp::Eq;
    if (s == "!=") return datalog::CmpOp::Ne;
    if (s == "<") return datalog::CmpOp::Lt;
    if (s == "<=") return datalog::CmpOp::Le;
    if (s == ">") return datalog::CmpOp::Gt;
    if (s == ">=") return datalog::CmpOp::Ge;
    throw Error(Errc::Corrupt, "unknown comparison " + s);
}

HornClause clause_from_json(const json &j) {
    HornClause cl;
    cl.anchor_set = j.at("anchor").get<std::string>();
    for (const auto &l : j.at("literals")) {
        HornLiteral lit;
        lit.positive = l.at("positive").get<bool>();
        lit.op = cmp_from_text(l.at("op").get<std::string>());
        auto term = [&](const json &tj) {
            HornTerm t;
            t.is_path = tj.at("path").get<bool>();
            if (t.is_path) t.path = path_from_json(tj.at("p"));
            else t.constant = value_from_json(tj.at("c"));
            return t;
        };
        lit.lhs = term(l.at("lhs"));
        lit.rhs = term(l.at("rhs"));
        cl.literals.push_back(std::move(lit));
    }
    return cl;
}

json spec_to_json(const ValueTypeSpec &s) {
    json j;
    j["base"] = value_base_name(s.base);
    if (s.min) j["min"] = value_to_json(*s.min);
    if (s.max) j["max"] = value_to_json(*s.max);
    if (!s.enumeration.empty()) {
        json e = json::array();
        for (const auto &v : s.enumeration) e.push_back(value_to_json(v));
        j["enum"] = std::move(e);
    }
    if (s.pattern) j["pattern"] = *s.pattern;
    return j;
}

ValueTypeSpec spec_from_json(const json &j) {
    ValueTypeSpec s;
    auto b = value_base_by_name(j.at("base").get<std::string>());
    if (!b) throw Error(Errc::Corrupt, "unknown base type");
    s.base = *b;
    if (j.contains("min")) s.min = value_from_json(j["min"]);
    if (j.contains("max")) s.max = value_from_json(j["max"]);
    if (j.contains("enum"))
        for (const auto &v : j["enum"]) s.enumeration.push_back(value_from_json(v));
    if (j.contains("pattern")) s.pattern = j["pattern"].get<std::string>();
    return s;
}

json term_to_json(const datalog::Term &t) {
    json j;
    switch (t.kind) {
    case datalog::Term::Kind::Var: j["k"] = "var"; j["v"] = t.var; break;
    case datalog::Term::Kind::Int: j["k"] = "int"; j["v"] = t.ival; break;
    case datalog::Term::Kind::Text: j["k"] = "text"; j["v"] = t.sval; break;
    }
    return j;
}

datalog::Term term_from_json(const json &j) {
    std::string k = j.at("k").get<std::string>();
    if (k == "var") return datalog::Term::variable(j.at("v").get<std::string>());
    if (k == "int") return datalog::Term::integer(j.at("v").get<int64_t>());
    if (k == "text") return datalog::Term::text(j.at("v").get<std::string>());
    throw Error(Errc::Corrupt, "unknown term kind " + k);
}

json atom_to_json(const datalog::Atom &a) {
    json j;
    j["p"] = a.predicate;
    json args = json::array();
    for (const auto &t : a.args) args.push_back(term_to_json(t));
    j["args"] = std::move(args);
    return j;
}

datalog::Atom atom_from_json(const json &j) {
    datalog::Atom a;
    a.predicate = j.at("p").get<std::string>();
    for (const auto &t : j.at("args")) a.args.push_back(term_from_json(t));
    return a;
}

} // namespace

std::string catalog_to_json_text(const Catalog &c) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["db_name"] = c.db_name();

    json sets = json::array();
    for (const auto &s : c.sets()) {
        json e;
        e["name"] = s.name;
        e["kind"] = set_kind_name(s.kind);
        if (!s.rel_sorts.empty()) {
            json roles = json::array();
            for (const auto &rs : s.rel_sorts)
                roles.push_back({{"role", rs.role}, {"target", rs.target}});
            e["rel_sorts"] = std::move(roles);
        }
        if (s.value_spec) e["value_spec"] = spec_to_json(*s.value_spec);
        if (!s.computed_formula.empty()) e["formula"] = s.computed_formula;
        sets.push_back(std::move(e));
    }
    j["sets"] = std::move(sets);

    json maps = json::array();
    for (const auto &m : c.mappings()) {
        json e;
        e["name"] = m.name;
        e["kind"] = mapping_kind_name(m.kind);
        e["domain"] = m.domain;
        e["codomain"] = m.codomain;
        if (m.default_value) e["default"] = value_to_json(*m.default_value);
        if (!m.computed_formula.empty()) e["formula"] = m.computed_formula;
        maps.push_back(std::move(e));
    }
    j["mappings"] = std::move(maps);

    json cons = json::array();
    for (const auto &k : c.constraints()) {
        json e;
        e["name"] = k.name;
        e["ctype"] = ctype_info(k.ctype).name;
        e["origin"] = k.origin == ConstraintOrigin::Declared ? "declared" : "derived";
        if (!k.derived_by.empty()) e["derived_by"] = k.derived_by;
        if (!k.operands.sets.empty()) e["sets"] = k.operands.sets;
        if (!k.operands.paths.empty()) {
            json ps = json::array();
            for (const auto &p : k.operands.paths) ps.push_back(path_to_json(p));
            e["paths"] = std::move(ps);
        }
        if (k.operands.default_value) e["default"] = value_to_json(*k.operands.default_value);
        if (k.operands.clause) e["clause"] = clause_to_json(*k.operands.clause);
        cons.push_back(std::move(e));
    }
    j["constraints"] = std::move(cons);

    json progs = json::array();
    for (const auto &p : c.programs()) {
        json e;
        e["name"] = p.name;
        json rules = json::array();
        for (const auto &r : p.rules) {
            json rj;
            rj["head"] = atom_to_json(r.head);
            json body = json::array();
            for (const auto &l : r.body) {
                json lj;
                switch (l.kind) {
                case datalog::Literal::Kind::Positive:
                    lj["k"] = "pos";
                    lj["atom"] = atom_to_json(l.atom);
                    break;
                case datalog::Literal::Kind::Negated:
                    lj["k"] = "neg";
                    lj["atom"] = atom_to_json(l.atom);
                    break;
                case datalog::Literal::Kind::Compare:
                    lj["k"] = "cmp";
                    lj["op"] = datalog::cmp_op_text(l.op);
                    lj["lhs"] = term_to_json(l.lhs);
                    lj["rhs"] = term_to_json(l.rhs);
                    break;
                }
                body.push_back(std::move(lj));
            }
            rj["body"] = std::move(body);
            rules.push_back(std::move(rj));
        }
        e["rules"] = std::move(rules);
        progs.push_back(std::move(e));
    }
    j["programs"] = std::move(progs);

    json diags = json::array();
    for (const auto &d : c.diagrams())
        diags.push_back({{"name", d.name}, {"members", d.member_sets}});
    j["diagrams"] = std::move(diags);

    return j.dump(2) + "\n";
}

Catalog catalog_from_json_text(const std::string &text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error &e) {
        throw Error(Errc::Corrupt,
                    "catalog JSON broken at byte " + std::to_string(e.byte) + ": " + e.what());
    }
    if (!j.is_object() || !j.contains("schema_version"))
        throw Error(Errc::Corrupt, "catalog JSON lacks schema_version");
    int version = j["schema_version"].get<int>();
    if (version > kSchemaVersion)
        throw Error(Errc::UnsupportedVersion,
                    "file version " + std::to_string(version) + " exceeds supported " +
                        std::to_string(kSchemaVersion));
    try {
        Catalog c(j.at("db_name").get<std::string>());
        for (const auto &e : j.at("sets")) {
            SetDef s;
            s.name = e.at("name").get<std::string>();
            std::string kind = e.at("kind").get<std::string>();
            if (kind == "entity") s.kind = SetKind::Entity;
            else if (kind == "relationship") s.kind = SetKind::Relationship;
            else if (kind == "value") s.kind = SetKind::Value;
            else if (kind == "computed") s.kind = SetKind::Computed;
            else if (kind == "system") s.kind = SetKind::System;
            else throw Error(Errc::Corrupt, "unknown set kind " + kind);
            if (e.contains("rel_sorts"))
                for (const auto &r : e["rel_sorts"])
                    s.rel_sorts.push_back({r.at("role").get<std::string>(),
                                           r.at("target").get<std::string>()});
            if (e.contains("value_spec")) s.value_spec = spec_from_json(e["value_spec"]);
            if (e.contains("formula")) s.computed_formula = e["formula"].get<std::string>();
            c.add_set_unchecked(std::move(s));
        }
        for (const auto &e : j.at("mappings")) {
            MappingDef m;
            m.name = e.at("name").get<std::string>();
            std::string kind = e.at("kind").get<std::string>();
            if (kind == "attribute") m.kind = MappingKind::Attribute;
            else if (kind == "structural") m.kind = MappingKind::StructuralFunction;
            else if (kind == "computed") m.kind = MappingKind::Computed;
            else if (kind == "system") m.kind = MappingKind::System;
            else throw Error(Errc::Corrupt, "unknown mapping kind " + kind);
            m.domain = e.at("domain").get<std::string>();
            m.codomain = e.at("codomain").get<std::string>();
            if (e.contains("default")) m.default_value = value_from_json(e["default"]);
            if (e.contains("formula")) m.computed_formula = e["formula"].get<std::string>();
            c.add_mapping_unchecked(std::move(m));
        }
        for (const auto &e : j.at("constraints")) {
            ConstraintDef k;
            k.name = e.at("name").get<std::string>();
            auto t = ctype_by_name(e.at("ctype").get<std::string>());
            if (!t) throw Error(Errc::Corrupt, "unknown constraint type");
            k.ctype = *t;
            k.origin = e.at("origin").get<std::string>() == "derived"
                           ? ConstraintOrigin::Derived
                           : ConstraintOrigin::Declared;
            if (e.contains("derived_by")) k.derived_by = e["derived_by"].get<std::string>();
            if (e.contains("sets"))
                for (const auto &s : e["sets"]) k.operands.sets.push_back(s.get<std::string>());
            if (e.contains("paths"))
                for (const auto &p : e["paths"]) k.operands.paths.push_back(path_from_json(p));
            if (e.contains("default")) k.operands.default_value = value_from_json(e["default"]);
            if (e.contains("clause")) k.operands.clause = clause_from_json(e["clause"]);
            c.add_constraint_unchecked(std::move(k));
        }
        for (const auto &e : j.at("programs")) {
            DatalogProgramDef p;
            p.name = e.at("name").get<std::string>();
            for (const auto &rj : e.at("rules")) {
                datalog::Rule r;
                r.head = atom_from_json(rj.at("head"));
                for (const auto &lj : rj.at("body")) {
                    datalog::Literal l;
                    std::string k = lj.at("k").get<std::string>();
                    if (k == "pos") {
                        l.kind = datalog::Literal::Kind::Positive;
                        l.atom = atom_from_json(lj.at("atom"));
                    } else if (k == "neg") {
                        l.kind = datalog::Literal::Kind::Negated;
                        l.atom = atom_from_json(lj.at("atom"));
                    } else if (k == "cmp") {
                        l.kind = datalog::Literal::Kind::Compare;
                        l.op = cmp_from_text(lj.at("op").get<std::string>());
                        l.lhs = term_from_json(lj.at("lhs"));
                        l.rhs = term_from_json(lj.at("rhs"));
                    } else {
                        throw Error(Errc::Corrupt, "unknown literal kind " + k);
                    }
                    r.body.push_back(std::move(l));
                }
                p.rules.push_back(std::move(r));
            }
            c.add_program(std::move(p));
        }
        for (const auto &e : j.at("diagrams")) {
            DiagramDef d;
            d.name = e.at("name").get<std::string>();
            for (const auto &m : e.at("members")) d.member_sets.push_back(m.get<std::string>());
            c.add_diagram(std::move(d));
        }
        return c;
    } catch (const json::exception &e) {
        throw Error(Errc::Corrupt, std::string("catalog JSON malformed: ") + e.what());
    }
}

void save_catalog(const Catalog &catalog, const std::string &path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(Errc::Io, "cannot write " + path);
    out << catalog_to_json_text(catalog);
    if (!out) throw Error(Errc::Io, "write failed for " + path);
}

Catalog load_catalog(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::Io, "cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return catalog_from_json_text(buf.str());
}

// ---------------------------------------------------------------------------
// Meta-schema and reflection

namespace {

Catalog build_meta_schema() {
    Catalog c("meta");
    auto entity = [&](const std::string &name) {
        c.add_set({name, SetKind::Entity, {}, {}, {}});
    };
    for (const char *name :
         {"SETS", "FUNCTIONS", "REL_SORTS", "CONSTRAINTSET", "CONSTRAINT_TYPES",
          "CONSTRAINT_CATEGS", "CONSTRAINT_SUBCATEGS", "IMPLICATIONS", "THEOREMS", "PROGRAMS",
          "PREDICATES", "INF_RULES", "DIAGRAMS"})
        entity(name);

    auto attr = [&](const std::string &set, const std::string &name,
                    const std::string &type) {
        c.add_mapping({name, MappingKind::Attribute, set, type, {}, {}});
    };
    auto fn = [&](const std::string &set, const std::string &name,
                  const std::string &target) {
        c.add_mapping({name, MappingKind::StructuralFunction, set, target, {}, {}});
    };

    attr("SETS", "name", "TEXT");
    attr("SETS", "kind", "TEXT");

    attr("FUNCTIONS", "name", "TEXT");
    attr("FUNCTIONS", "kind", "TEXT");
    fn("FUNCTIONS", "domain", "SETS");
    fn("FUNCTIONS", "codomain", "SETS");
    attr("FUNCTIONS", "codomain_type", "TEXT");

    fn("REL_SORTS", "rel", "SETS");
    attr("REL_SORTS", "role", "TEXT");
    fn("REL_SORTS", "target", "SETS");
    attr("REL_SORTS", "position", "NAT");

    attr("CONSTRAINTSET", "name", "TEXT");
    fn("CONSTRAINTSET", "ctype", "CONSTRAINT_TYPES");
    attr("CONSTRAINTSET", "origin", "TEXT");
    attr("CONSTRAINTSET", "operands", "TEXT");

    attr("CONSTRAINT_TYPES", "tag", "TEXT");
    attr("CONSTRAINT_TYPES", "abbreviation", "TEXT");
    attr("CONSTRAINT_TYPES", "fundamental", "BOOLE");
    fn("CONSTRAINT_TYPES", "subcategory", "CONSTRAINT_SUBCATEGS");

    attr("CONSTRAINT_CATEGS", "name", "TEXT");

    attr("CONSTRAINT_SUBCATEGS", "name", "TEXT");
    fn("CONSTRAINT_SUBCATEGS", "categ", "CONSTRAINT_CATEGS");

    fn("IMPLICATIONS", "premise", "CONSTRAINT_TYPES");
    fn("IMPLICATIONS", "conclusion", "CONSTRAINT_TYPES");

    attr("THEOREMS", "name", "TEXT");
    attr("THEOREMS", "kind", "TEXT");
    attr("THEOREMS", "apply_order", "NAT");
    attr("THEOREMS", "pattern", "TEXT");

    attr("PROGRAMS", "name", "TEXT");

    fn("PREDICATES", "program", "PROGRAMS");
    attr("PREDICATES", "name", "TEXT");
    attr("PREDICATES", "kind", "TEXT");
    attr("PREDICATES", "arity", "NAT");
    fn("PREDICATES", "binding", "SETS");

    fn("INF_RULES", "program", "PROGRAMS");
    attr("INF_RULES", "position", "NAT");
    attr("INF_RULES", "text", "TEXT");

    attr("DIAGRAMS", "name", "TEXT");

    auto total = [&](const std::string &set, const std::string &col) {
        ConstraintDef k;
        k.name = set + "_" + col + "_total";
        k.ctype = Ctype::Totality;
        k.operands.paths = {{{set, col}}};
        c.add_constraint(std::move(k));
    };
    auto key = [&](const std::string &set, std::vector<std::string> cols) {
        ConstraintDef k;
        k.ctype = Ctype::Key;
        k.name = set + "_key";
        for (const auto &col : cols) {
            k.operands.paths.push_back({{set, col}});
            k.name += "_" + col;
        }
        c.add_constraint(std::move(k));
    };

    total("SETS", "name");
    total("SETS", "kind");
    key("SETS", {"name"});

    total("FUNCTIONS", "name");
    total("FUNCTIONS", "kind");
    total("FUNCTIONS", "domain");
    key("FUNCTIONS", {"domain", "name"});

    total("REL_SORTS", "rel");
    total("REL_SORTS", "role");
    total("REL_SORTS", "target");
    total("REL_SORTS", "position");
    key("REL_SORTS", {"rel", "role"});

    total("CONSTRAINTSET", "name");
    total("CONSTRAINTSET", "ctype");
    total("CONSTRAINTSET", "origin");
    key("CONSTRAINTSET", {"name"});

    total("CONSTRAINT_TYPES", "tag");
    total("CONSTRAINT_TYPES", "abbreviation");
    total("CONSTRAINT_TYPES", "fundamental");
    total("CONSTRAINT_TYPES", "subcategory");
    key("CONSTRAINT_TYPES", {"tag"});

    total("CONSTRAINT_CATEGS", "name");
    key("CONSTRAINT_CATEGS", {"name"});

    total("CONSTRAINT_SUBCATEGS", "name");
    total("CONSTRAINT_SUBCATEGS", "categ");
    key("CONSTRAINT_SUBCATEGS", {"name"});

    total("IMPLICATIONS", "premise");
    total("IMPLICATIONS", "conclusion");
    key("IMPLICATIONS", {"premise", "conclusion"});

    total("THEOREMS", "name");
    total("THEOREMS", "kind");
    total("THEOREMS", "apply_order");
    key("THEOREMS", {"name"});
    {
        ConstraintDef k;
        k.name = "THEOREMS_apply_order_one2one";
        k.ctype = Ctype::OneToOneness;
        k.operands.paths = {{{"THEOREMS", "apply_order"}}};
        c.add_constraint(std::move(k));
    }

    total("PROGRAMS", "name");
    key("PROGRAMS", {"name"});

    total("PREDICATES", "program");
    total("PREDICATES", "name");
    total("PREDICATES", "kind");
    total("PREDICATES", "arity");
    key("PREDICATES", {"program", "name"});

    total("INF_RULES", "program");
    total("INF_RULES", "position");
    total("INF_RULES", "text");
    key("INF_RULES", {"program", "position"});

    total("DIAGRAMS", "name");
    key("DIAGRAMS", {"name"});

    c.add_diagram({"catalog_core",
                   {"SETS", "FUNCTIONS", "REL_SORTS", "CONSTRAINTSET", "CONSTRAINT_TYPES"}});
    return c;
}

} // namespace

const Catalog &meta_schema() {
    static const Catalog meta = build_meta_schema();
    return meta;
}

InstanceDB reflect(const Catalog &catalog) {
    InstanceDB db;
    auto &sets_rows = db.sets["SETS"].rows;
    auto &fn_rows = db.sets["FUNCTIONS"].rows;
    auto &rs_rows = db.sets["REL_SORTS"].rows;
    auto &con_rows = db.sets["CONSTRAINTSET"].rows;
    auto &ct_rows = db.sets["CONSTRAINT_TYPES"].rows;
    auto &cat_rows = db.sets["CONSTRAINT_CATEGS"].rows;
    auto &sub_rows = db.sets["CONSTRAINT_SUBCATEGS"].rows;
    auto &imp_rows = db.sets["IMPLICATIONS"].rows;
    auto &thm_rows = db.sets["THEOREMS"].rows;
    auto &prog_rows = db.sets["PROGRAMS"].rows;
    auto &pred_rows = db.sets["PREDICATES"].rows;
    auto &rule_rows = db.sets["INF_RULES"].rows;
    auto &diag_rows = db.sets["DIAGRAMS"].rows;

    std::map<std::string, int64_t> set_id;
    int64_t next = 0;
    for (const auto &s : catalog.sets()) {
        set_id[s.name] = ++next;
        sets_rows.push_back({set_id[s.name],
                             {{"name", Value::text(s.name)},
                              {"kind", Value::text(set_kind_name(s.kind))}}});
    }

    next = 0;
    for (const auto &m : catalog.mappings()) {
        Row row;
        row.id = ++next;
        row.values["name"] = Value::text(m.name);
        row.values["kind"] = Value::text(mapping_kind_name(m.kind));
        row.values["domain"] =
            set_id.count(m.domain) ? Value::ref(set_id[m.domain]) : Value::null();
        if (set_id.count(m.codomain)) {
            row.values["codomain"] = Value::ref(set_id[m.codomain]);
            row.values["codomain_type"] = Value::null();
        } else {
            row.values["codomain"] = Value::null();
            row.values["codomain_type"] = Value::text(m.codomain);
        }
        fn_rows.push_back(std::move(row));
    }

    next = 0;
    for (const auto &s : catalog.sets()) {
        int pos = 0;
        for (const auto &rs : s.rel_sorts) {
            Row row;
            row.id = ++next;
            row.values["rel"] = Value::ref(set_id[s.name]);
            row.values["role"] = Value::text(rs.role);
            row.values["target"] =
                set_id.count(rs.target) ? Value::ref(set_id[rs.target]) : Value::null();
            row.values["position"] = Value::integer(++pos);
            rs_rows.push_back(std::move(row));
        }
    }

    // fixed registry rows
    std::map<std::string, int64_t> cat_id, sub_id;
    next = 0;
    for (Ccategory cat : {Ccategory::Set, Ccategory::Mapping, Ccategory::Object,
                          Ccategory::Relational}) {
        cat_id[category_name(cat)] = ++next;
        cat_rows.push_back({next, {{"name", Value::text(category_name(cat))}}});
    }
    next = 0;
    for (int i = 0; i < 9; ++i) {
        Csubcategory sub = static_cast<Csubcategory>(i);
        Ccategory cat = [&] {
            switch (sub) {
            case Csubcategory::GeneralSet:
            case Csubcategory::DyadicRelation: return Ccategory::Set;
            case Csubcategory::Object: return Ccategory::Object;
            case Csubcategory::Relational: return Ccategory::Relational;
            default: return Ccategory::Mapping;
            }
        }();
        sub_id[subcategory_name(sub)] = ++next;
        sub_rows.push_back({next,
                            {{"name", Value::text(subcategory_name(sub))},
                             {"categ", Value::ref(cat_id[category_name(cat)])}}});
    }
    std::map<std::string, int64_t> ctype_id;
    next = 0;
    for (const auto &info : registry()) {
        ctype_id[info.name] = ++next;
        ct_rows.push_back({next,
                           {{"tag", Value::text(info.name)},
                            {"abbreviation", Value::text(info.abbrev)},
                            {"fundamental", Value::boolean(info.fundamental)},
                            {"subcategory",
                             Value::ref(sub_id[subcategory_name(info.subcategory)])}}});
    }

    next = 0;
    for (const auto &k : catalog.constraints()) {
        con_rows.push_back({++next,
                            {{"name", Value::text(k.name)},
                             {"ctype", Value::ref(ctype_id[ctype_info(k.ctype).name])},
                             {"origin", Value::text(k.origin == ConstraintOrigin::Declared
                                                        ? "declared"
                                                        : "derived")},
                             {"operands", Value::text(k.operands.to_string())}}});
    }

    // theorem base rows and the single-premise implication pairs, expanded
    // per family where both tags exist
    const TheoremBase &base = TheoremBase::builtin();
    next = 0;
    for (const auto &t : base.items) {
        std::string pattern;
        for (const auto &p : t.premise) pattern += (pattern.empty() ? "" : " & ") + p;
        if (!t.conclusion.empty()) pattern += " => " + t.conclusion;
        thm_rows.push_back({++next,
                            {{"name", Value::text(t.name)},
                             {"kind", Value::text(t.kind == Theorem::Kind::Redundancy
                                                      ? "redundancy"
                                                      : "incoherence")},
                             {"apply_order", Value::integer(t.order)},
                             {"pattern", Value::text(pattern)}}});
    }
    next = 0;
    for (const auto &t : base.items) {
        if (t.kind != Theorem::Kind::Redundancy || t.premise.size() != 1 ||
            t.shape != "pair")
            continue;
        for (const auto &sub : {Csubcategory::DyadicRelation, Csubcategory::Autofunction,
                                Csubcategory::HomogeneousBinaryFunctionProduct}) {
            const ConstraintTypeInfo *from = nullptr, *to = nullptr;
            for (const auto &info : registry()) {
                if (info.subcategory != sub) continue;
                if (info.abbrev == t.premise[0]) from = &info;
                if (info.abbrev == t.conclusion) to = &info;
            }
            if (from && to)
                imp_rows.push_back({++next,
                                    {{"premise", Value::ref(ctype_id[from->name])},
                                     {"conclusion", Value::ref(ctype_id[to->name])}}});
        }
    }

    std::map<std::string, int64_t> prog_id;
    next = 0;
    for (const auto &p : catalog.programs()) {
        prog_id[p.name] = ++next;
        prog_rows.push_back({next, {{"name", Value::text(p.name)}}});
    }
    next = 0;
    int64_t rule_next = 0;
    for (const auto &p : catalog.programs()) {
        datalog::ProgramInfo info;
        try {
            info = datalog::analyze_program(catalog, p);
        } catch (const Error &) {
            // non-stratifiable programs still reflect their rules
        }
        for (const auto &[name, def] : info.predicates) {
            Row row;
            row.id = ++next;
            row.values["program"] = Value::ref(prog_id[p.name]);
            row.values["name"] = Value::text(name);
            row.values["kind"] = Value::text(def.extensional ? "extensional" : "intensional");
            row.values["arity"] = Value::integer(def.arity);
            row.values["binding"] = def.extensional && set_id.count(def.binding)
                                        ? Value::ref(set_id[def.binding])
                                        : Value::null();
            pred_rows.push_back(std::move(row));
        }
        int pos = 0;
        for (const auto &r : p.rules) {
            Row row;
            row.id = ++rule_next;
            row.values["program"] = Value::ref(prog_id[p.name]);
            row.values["position"] = Value::integer(++pos);
            row.values["text"] = Value::text(r.to_string());
            rule_rows.push_back(std::move(row));
        }
    }

    next = 0;
    for (const auto &d : catalog.diagrams())
        diag_rows.push_back({++next, {{"name", Value::text(d.name)}}});

    return db;
}

} // namespace emdm::store
