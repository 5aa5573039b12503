#include "emdm/rdm.hpp"

#include "emdm/analysis.hpp"
#include "emdm/validator.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace emdm::rdm {

namespace {

std::string sql_type(const ValueTypeSpec &spec) {
    switch (spec.base) {
    case ValueBase::Boolean: return "BOOLEAN";
    case ValueBase::Integer: return "BIGINT";
    case ValueBase::Decimal: return "NUMERIC";
    case ValueBase::Text: return "VARCHAR(255)";
    case ValueBase::Date: return "DATE";
    }
    return "VARCHAR(255)";
}

std::string sql_literal(const Value &v) {
    switch (v.kind()) {
    case Value::Kind::Text:
    case Value::Kind::Date: {
        std::string out = "'";
        for (char c : v.as_text()) {
            if (c == '\'') out += "''";
            else out += c;
        }
        return out + "'";
    }
    case Value::Kind::Boolean: return v.as_bool() ? "TRUE" : "FALSE";
    default: return v.to_string();
    }
}

std::string cmp_sql(datalog::CmpOp op) {
    switch (op) {
    case datalog::CmpOp::Eq: return "=";
    case datalog::CmpOp::Ne: return "<>";
    case datalog::CmpOp::Lt: return "<";
    case datalog::CmpOp::Le: return "<=";
    case datalog::CmpOp::Gt: return ">";
    case datalog::CmpOp::Ge: return ">=";
    }
    return "=";
}

std::string domain_check_sql(const std::string &col, const ValueTypeSpec &spec) {
    std::vector<std::string> parts;
    if (spec.min) parts.push_back(col + " >= " + sql_literal(*spec.min));
    if (spec.max) parts.push_back(col + " <= " + sql_literal(*spec.max));
    if (!spec.enumeration.empty()) {
        std::string in = col + " IN (";
        for (size_t i = 0; i < spec.enumeration.size(); ++i) {
            if (i) in += ", ";
            in += sql_literal(spec.enumeration[i]);
        }
        parts.push_back(in + ")");
    }
    std::string out;
    for (size_t i = 0; i < parts.size(); ++i) {
        if (i) out += " AND ";
        out += parts[i];
    }
    return out;
}

/// A Horn clause is a row-local CHECK when every path is a single mapping of
/// the anchor set.
bool clause_is_row_local(const HornClause &cl) {
    for (const auto &lit : cl.literals)
        for (const HornTerm *t : {&lit.lhs, &lit.rhs})
            if (t->is_path && t->path.size() != 1) return false;
    return true;
}

std::string clause_sql(const HornClause &cl) {
    std::string out;
    for (size_t i = 0; i < cl.literals.size(); ++i) {
        if (i) out += " OR ";
        const HornLiteral &lit = cl.literals[i];
        auto term = [&](const HornTerm &t) {
            return t.is_path ? t.path.back().name : sql_literal(t.constant);
        };
        std::string atom = term(lit.lhs) + " " + cmp_sql(lit.op) + " " + term(lit.rhs);
        out += lit.positive ? atom : "NOT (" + atom + ")";
    }
    return out;
}

struct TableBuild {
    std::string name;
    std::vector<std::string> column_lines;
    std::vector<std::string> table_constraints;
};

} // namespace

std::string DdlScript::text() const {
    std::string out;
    for (const auto &s : statements) out += s + "\n";
    return out;
}

int DdlScript::relational_count() const {
    int n = 0;
    for (const auto &e : coverage) n += e.relational;
    return n;
}

int DdlScript::engine_only_count() const {
    return static_cast<int>(coverage.size()) - relational_count();
}

DdlScript emit_ddl(const Catalog &catalog) {
    if (!detect_incoherence(catalog).incoherences.empty())
        throw Error(Errc::IncoherentInput, "cannot translate an incoherent catalog");

    DdlScript script;
    std::map<std::string, TableBuild> tables;
    std::vector<std::string> table_order;
    std::vector<std::string> alters;

    auto object_sets = [&] {
        std::vector<const SetDef *> v;
        for (const auto &s : catalog.sets())
            if (s.kind == SetKind::Entity || s.kind == SetKind::Relationship)
                v.push_back(&s);
        std::sort(v.begin(), v.end(),
                  [](const SetDef *a, const SetDef *b) { return a->name < b->name; });
        return v;
    }();

    // flags derived from declared constraints
    auto flags_of = [&](const std::string &set, const std::string &col) {
        return catalog.mapping_flags(set, col);
    };

    for (const SetDef *s : object_sets) {
        TableBuild &tb = tables[s->name];
        tb.name = s->name;
        table_order.push_back(s->name);
        tb.column_lines.push_back("id BIGINT PRIMARY KEY");
        script.records.push_back(
            {DdlRecord::Kind::PrimaryKey, s->name, s->name + "_pk", {"id"}, "", {}, {}});

        for (const auto &col : catalog.columns_of(s->name)) {
            std::string line = col.name + " ";
            MappingFlags flags = flags_of(s->name, col.name);
            bool role_total = col.is_role; // roles are the relationship's structure
            if (col.is_attribute) {
                const ValueTypeSpec *spec = codomain_spec(catalog, col.codomain);
                ValueTypeSpec fallback{ValueBase::Text, {}, {}, {}, {}};
                if (!spec) spec = &fallback;
                line += sql_type(*spec);
                if (flags.total) line += " NOT NULL";
                std::string check = domain_check_sql(col.name, *spec);
                if (!check.empty()) {
                    std::string cname = s->name + "_" + col.name + "_domain";
                    tb.table_constraints.push_back("CONSTRAINT " + cname + " CHECK (" + check +
                                                   ")");
                }
                script.records.push_back({DdlRecord::Kind::Domain, s->name,
                                          s->name + "_" + col.name + "_domain",
                                          {col.name},
                                          "",
                                          *spec,
                                          {}});
            } else {
                line += "BIGINT";
                if (flags.total || role_total) line += " NOT NULL";
                std::string cname = s->name + "_" + col.name + "_fk";
                alters.push_back("ALTER TABLE " + s->name + " ADD CONSTRAINT " + cname +
                                 " FOREIGN KEY (" + col.name + ") REFERENCES " + col.codomain +
                                 "(id);");
                script.records.push_back({DdlRecord::Kind::ForeignKey, s->name, cname,
                                          {col.name},
                                          col.codomain,
                                          {},
                                          {}});
            }
            if (flags.total || role_total)
                script.records.push_back({DdlRecord::Kind::NotNull, s->name,
                                          s->name + "_" + col.name + "_total",
                                          {col.name},
                                          "",
                                          {},
                                          {}});
            tb.column_lines.push_back(line);
        }
    }

    // declared constraints: emit what is relationally expressible
    std::vector<Defect> sink;
    auto single_column = [&](const ConstraintDef &k) -> std::optional<std::pair<std::string, std::string>> {
        if (k.operands.paths.size() != 1) return std::nullopt;
        Path p = catalog.resolve_path(k.operands.paths[0], sink, k.name);
        if (p.size() != 1 || p[0].qualifier.empty()) return std::nullopt;
        if (!tables.count(p[0].qualifier)) return std::nullopt;
        return std::make_pair(p[0].qualifier, p[0].name);
    };

    for (const auto &k : catalog.constraints()) {
        CoverageEntry cov{k.name, ctype_info(k.ctype).name, false, ""};
        switch (k.ctype) {
        case Ctype::Totality: {
            if (auto col = single_column(k)) {
                cov.relational = true;
                cov.statement = col->first + "_" + col->second + "_total";
            } else {
                cov.statement = "composed paths have no column form";
            }
            break;
        }
        case Ctype::OneToOneness: {
            if (auto col = single_column(k)) {
                std::string cname = col->first + "_" + col->second + "_one2one";
                tables[col->first].table_constraints.push_back(
                    "CONSTRAINT " + cname + " UNIQUE (" + col->second + ")");
                script.records.push_back({DdlRecord::Kind::Unique, col->first, cname,
                                          {col->second},
                                          "",
                                          {},
                                          {}});
                cov.relational = true;
                cov.statement = cname;
            } else {
                cov.statement = "composed paths have no column form";
            }
            break;
        }
        case Ctype::Key: {
            std::vector<std::string> cols;
            std::string table;
            bool ok = true;
            for (const auto &raw : k.operands.paths) {
                Path p = catalog.resolve_path(raw, sink, k.name);
                if (p.size() != 1 || p[0].qualifier.empty() || !tables.count(p[0].qualifier)) {
                    ok = false;
                    break;
                }
                if (table.empty()) table = p[0].qualifier;
                ok = ok && table == p[0].qualifier;
                cols.push_back(p[0].name);
            }
            if (ok && !cols.empty()) {
                std::string cname = table + "_" + k.name + "_key";
                std::string list;
                for (size_t i = 0; i < cols.size(); ++i) list += (i ? ", " : "") + cols[i];
                tables[table].table_constraints.push_back("CONSTRAINT " + cname + " UNIQUE (" +
                                                          list + ")");
                script.records.push_back(
                    {DdlRecord::Kind::Unique, table, cname, cols, "", {}, {}});
                cov.relational = true;
                cov.statement = cname;
            } else {
                cov.statement = "key components must be single columns of one table";
            }
            break;
        }
        case Ctype::ObjectConstraint: {
            const HornClause &cl = *k.operands.clause;
            if (clause_is_row_local(cl) && tables.count(cl.anchor_set)) {
                std::string cname = cl.anchor_set + "_" + k.name + "_check";
                tables[cl.anchor_set].table_constraints.push_back(
                    "CONSTRAINT " + cname + " CHECK (" + clause_sql(cl) + ")");
                script.records.push_back(
                    {DdlRecord::Kind::Check, cl.anchor_set, cname, {}, "", {}, cl});
                cov.relational = true;
                cov.statement = cname;
            } else {
                cov.statement = "clause walks structural paths; needs engine enforcement";
            }
            break;
        }
        default:
            cov.statement = "no relational encoding; engine-enforced";
            break;
        }
        script.coverage.push_back(std::move(cov));
    }

    for (const auto &name : table_order) {
        const TableBuild &tb = tables[name];
        std::ostringstream stmt;
        stmt << "CREATE TABLE " << tb.name << " (";
        bool first = true;
        for (const auto &line : tb.column_lines) {
            stmt << (first ? "" : ",") << "\n  " << line;
            first = false;
        }
        for (const auto &line : tb.table_constraints) stmt << (first ? "" : ",") << "\n  " << line;
        stmt << "\n);";
        script.statements.push_back(stmt.str());
    }
    std::sort(alters.begin(), alters.end());
    for (auto &a : alters) script.statements.push_back(std::move(a));
    return script;
}

CoverageSummary coverage_report(const Catalog &catalog) {
    DdlScript script = emit_ddl(catalog);
    CoverageSummary s;
    s.relational_count = script.relational_count();
    s.engine_only_count = script.engine_only_count();
    s.detail = std::move(script.coverage);
    return s;
}

std::vector<std::string> interpret_ddl(const DdlScript &script, const Catalog &catalog,
                                       const InstanceDB &db) {
    std::vector<std::string> breaches;
    for (const auto &rec : script.records) {
        const SetInstance *si = db.find(rec.table);
        static const SetInstance kEmpty;
        if (!si) si = &kEmpty;
        switch (rec.kind) {
        case DdlRecord::Kind::PrimaryKey: {
            std::set<int64_t> seen;
            for (const auto &row : si->rows)
                if (!seen.insert(row.id).second)
                    breaches.push_back(rec.name + ": duplicate id " + std::to_string(row.id));
            break;
        }
        case DdlRecord::Kind::NotNull:
            for (const auto &row : si->rows)
                if (row.get(rec.columns[0]).is_null())
                    breaches.push_back(rec.name + ": null at row " + std::to_string(row.id));
            break;
        case DdlRecord::Kind::Unique: {
            std::set<std::vector<Value>> seen;
            for (const auto &row : si->rows) {
                std::vector<Value> key;
                bool null_free = true;
                for (const auto &c : rec.columns) {
                    const Value &v = row.get(c);
                    null_free = null_free && !v.is_null();
                    key.push_back(v);
                }
                if (null_free && !seen.insert(key).second)
                    breaches.push_back(rec.name + ": duplicate at row " +
                                       std::to_string(row.id));
            }
            break;
        }
        case DdlRecord::Kind::ForeignKey: {
            const SetInstance *target = db.find(rec.ref_table);
            for (const auto &row : si->rows) {
                const Value &v = row.get(rec.columns[0]);
                if (v.kind() == Value::Kind::Ref &&
                    (!target || !target->has_id(v.as_int())))
                    breaches.push_back(rec.name + ": dangling " + v.to_string() + " at row " +
                                       std::to_string(row.id));
            }
            break;
        }
        case DdlRecord::Kind::Domain:
            for (const auto &row : si->rows) {
                const Value &v = row.get(rec.columns[0]);
                if (!v.is_null() && rec.domain)
                    if (auto reason = rec.domain->check(v))
                        breaches.push_back(rec.name + ": " + *reason + " at row " +
                                           std::to_string(row.id));
            }
            break;
        case DdlRecord::Kind::Check: {
            // SQL CHECK passes on UNKNOWN; only definite falsehood breaches,
            // matching the validator's three-valued reading
            if (!rec.check) break;
            ConstraintDef probe;
            probe.name = rec.name;
            probe.ctype = Ctype::ObjectConstraint;
            probe.operands.clause = rec.check;
            Catalog shadow = catalog;
            if (!shadow.find_constraint(rec.name)) shadow.add_constraint_unchecked(probe);
            for (const auto &v : check_constraint(shadow, db, rec.name))
                breaches.push_back(rec.name + ": " + v.explanation);
            break;
        }
        }
    }
    return breaches;
}

} // namespace emdm::rdm
