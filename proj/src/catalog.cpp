#include "emdm/catalog.hpp"

#include "emdm/datalog.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace emdm {

const char *set_kind_name(SetKind k) {
    switch (k) {
    case SetKind::Entity: return "entity";
    case SetKind::Relationship: return "relationship";
    case SetKind::Value: return "value";
    case SetKind::System: return "system";
    case SetKind::Computed: return "computed";
    }
    return "?";
}

const char *mapping_kind_name(MappingKind k) {
    switch (k) {
    case MappingKind::Attribute: return "attribute";
    case MappingKind::StructuralFunction: return "structural";
    case MappingKind::System: return "system";
    case MappingKind::Computed: return "computed";
    }
    return "?";
}

std::string path_to_string(const Path &p) {
    std::string out;
    for (size_t i = 0; i < p.size(); ++i) {
        if (i == 0 && !p[i].qualifier.empty())
            out += p[i].qualifier + "::";
        else if (i > 0)
            out += ".";
        out += p[i].name;
    }
    return out;
}

std::string HornTerm::to_string() const {
    return is_path ? path_to_string(path) : constant.to_string();
}

std::string HornLiteral::to_string() const {
    std::string s = positive ? "" : "!";
    return s + lhs.to_string() + " " + datalog::cmp_op_text(op) + " " + rhs.to_string();
}

std::string HornClause::to_string() const {
    std::string out = anchor_set + ": ";
    for (size_t i = 0; i < literals.size(); ++i) {
        if (i) out += " | ";
        out += literals[i].to_string();
    }
    return out;
}

std::string ConstraintOperands::to_string() const {
    std::ostringstream out;
    bool first = true;
    auto sep = [&] {
        if (!first) out << ", ";
        first = false;
    };
    for (const auto &s : sets) { sep(); out << s; }
    for (const auto &p : paths) { sep(); out << path_to_string(p); }
    if (default_value) { sep(); out << default_value->to_string(); }
    if (clause) { sep(); out << clause->to_string(); }
    return out.str();
}

Catalog::Catalog(std::string db_name) : db_name_(std::move(db_name)) {
    if (db_name_.empty())
        throw Error(Errc::EmptyName, "database name must be non-empty");
}

void Catalog::ensure_set_name_free(const std::string &name) const {
    if (find_set(name))
        throw Error(Errc::DuplicateName, "set " + name + " already declared");
    if (builtin_value_type(name))
        throw Error(Errc::DuplicateName, name + " is a builtin system type");
}

void Catalog::ensure_constraint_name_free(const std::string &name) const {
    if (find_constraint(name))
        throw Error(Errc::DuplicateName, "constraint " + name + " already declared");
}

void Catalog::add_set_unchecked(SetDef def) {
    if (def.name.empty()) throw Error(Errc::EmptyName, "set name must be non-empty");
    ensure_set_name_free(def.name);
    sets_.push_back(std::move(def));
}

void Catalog::add_set(SetDef def) {
    if (def.kind == SetKind::System)
        throw Error(Errc::IllFormedCatalog, "system sets are builtin-only");
    if (def.kind == SetKind::Relationship && def.rel_sorts.size() < 2)
        throw Error(Errc::IllFormedCatalog,
                    "relationship " + def.name + " needs at least 2 roles");
    if (def.kind == SetKind::Value && !def.value_spec)
        throw Error(Errc::IllFormedCatalog, "value set " + def.name + " needs a value spec");
    if (def.kind != SetKind::Value && def.value_spec)
        throw Error(Errc::IllFormedCatalog, def.name + ": only value sets carry a value spec");
    if (def.kind != SetKind::Relationship && !def.rel_sorts.empty())
        throw Error(Errc::IllFormedCatalog, def.name + ": only relationships carry roles");
    if (def.kind == SetKind::Relationship) {
        std::set<std::string> roles;
        for (const auto &rs : def.rel_sorts) {
            if (!roles.insert(rs.role).second)
                throw Error(Errc::DuplicateName,
                            def.name + ": duplicate role " + rs.role);
            const SetDef *t = find_set(rs.target);
            if (!t || (t->kind != SetKind::Entity && t->kind != SetKind::Relationship &&
                       t->kind != SetKind::Computed))
                throw Error(Errc::UnknownReference,
                            def.name + ": role target " + rs.target + " is not an object set");
        }
    }
    add_set_unchecked(std::move(def));
}

void Catalog::add_mapping_unchecked(MappingDef def) {
    if (def.name.empty()) throw Error(Errc::EmptyName, "mapping name must be non-empty");
    if (find_mapping(def.domain, def.name))
        throw Error(Errc::DuplicateName,
                    "mapping " + def.domain + "::" + def.name + " already declared");
    if (find_role(def.domain, def.name))
        throw Error(Errc::DuplicateName,
                    def.domain + "::" + def.name + " collides with a role name");
    mappings_.push_back(std::move(def));
}

void Catalog::add_mapping(MappingDef def) {
    if (def.kind == MappingKind::System)
        throw Error(Errc::IllFormedCatalog, "system mappings are builtin-only");
    const SetDef *dom = find_set(def.domain);
    if (!dom)
        throw Error(Errc::UnknownReference, def.name + ": unknown domain " + def.domain);
    if (dom->kind == SetKind::Value)
        throw Error(Errc::IllFormedCatalog,
                    def.name + ": mappings are defined on object sets, not value sets");
    bool codomain_is_value =
        builtin_value_type(def.codomain) ||
        (find_set(def.codomain) && find_set(def.codomain)->kind == SetKind::Value);
    bool codomain_is_object =
        find_set(def.codomain) && (find_set(def.codomain)->kind == SetKind::Entity ||
                                   find_set(def.codomain)->kind == SetKind::Relationship ||
                                   find_set(def.codomain)->kind == SetKind::Computed);
    if (!codomain_is_value && !codomain_is_object)
        throw Error(Errc::UnknownReference, def.name + ": unknown codomain " + def.codomain);
    if (def.kind == MappingKind::Attribute && !codomain_is_value)
        throw Error(Errc::IllFormedCatalog,
                    def.name + ": attribute codomain must be a value set");
    if (def.kind == MappingKind::StructuralFunction && !codomain_is_object)
        throw Error(Errc::IllFormedCatalog,
                    def.name + ": structural function codomain must be an object set");
    if (def.default_value && def.kind == MappingKind::Attribute) {
        const ValueTypeSpec *spec = codomain_spec(*this, def.codomain);
        if (spec) {
            if (auto reason = spec->check(*def.default_value))
                throw Error(Errc::IllFormedCatalog, def.name + ": default " + *reason);
        }
    }
    add_mapping_unchecked(std::move(def));
}

void Catalog::add_constraint_unchecked(ConstraintDef def) {
    if (def.name.empty()) throw Error(Errc::EmptyName, "constraint name must be non-empty");
    ensure_constraint_name_free(def.name);
    constraints_.push_back(std::move(def));
}

void Catalog::add_constraint(ConstraintDef def) {
    ensure_constraint_name_free(def.name);
    Catalog probe = *this;
    probe.add_constraint_unchecked(def);
    // a freshly added constraint must not introduce defects of its own
    for (const auto &d : probe.validate())
        if (d.subject == def.name)
            throw Error(Errc::UnknownReference, def.name + ": " + d.message);
    constraints_.push_back(std::move(def));
}

void Catalog::add_program(DatalogProgramDef def) {
    if (def.name.empty()) throw Error(Errc::EmptyName, "program name must be non-empty");
    if (find_program(def.name))
        throw Error(Errc::DuplicateName, "program " + def.name + " already declared");
    programs_.push_back(std::move(def));
}

void Catalog::add_diagram(DiagramDef def) {
    if (def.name.empty()) throw Error(Errc::EmptyName, "diagram name must be non-empty");
    for (const auto &d : diagrams_)
        if (d.name == def.name)
            throw Error(Errc::DuplicateName, "diagram " + def.name + " already declared");
    diagrams_.push_back(std::move(def));
}

static bool path_mentions(const Path &p, const std::string &set, const std::string &mapping) {
    for (const auto &s : p)
        if (s.qualifier == set && s.name == mapping) return true;
    return false;
}

static bool operands_mention_set(const ConstraintOperands &ops, const std::string &set) {
    for (const auto &s : ops.sets)
        if (s == set) return true;
    for (const auto &p : ops.paths)
        for (const auto &st : p)
            if (st.qualifier == set) return true;
    if (ops.clause) {
        if (ops.clause->anchor_set == set) return true;
        for (const auto &lit : ops.clause->literals)
            for (const HornTerm *t : {&lit.lhs, &lit.rhs})
                if (t->is_path)
                    for (const auto &st : t->path)
                        if (st.qualifier == set) return true;
    }
    return false;
}

void Catalog::remove_set(const std::string &name) {
    auto it = std::find_if(sets_.begin(), sets_.end(),
                           [&](const SetDef &s) { return s.name == name; });
    if (it == sets_.end())
        throw Error(Errc::UnknownReference, "no set named " + name);
    std::vector<std::string> dependents;
    for (const auto &m : mappings_)
        if (m.domain == name || m.codomain == name)
            dependents.push_back(m.domain + "::" + m.name);
    for (const auto &s : sets_)
        for (const auto &rs : s.rel_sorts)
            if (rs.target == name && s.name != name)
                dependents.push_back(s.name + "::" + rs.role);
    for (const auto &c : constraints_)
        if (operands_mention_set(c.operands, name))
            dependents.push_back(c.name);
    if (!dependents.empty()) {
        std::string list;
        for (const auto &d : dependents) list += (list.empty() ? "" : ", ") + d;
        throw Error(Errc::DependentsExist, name + " has dependents: " + list);
    }
    sets_.erase(it);
}

void Catalog::remove_mapping(const std::string &domain, const std::string &name) {
    auto it = std::find_if(mappings_.begin(), mappings_.end(), [&](const MappingDef &m) {
        return m.domain == domain && m.name == name;
    });
    if (it == mappings_.end())
        throw Error(Errc::UnknownReference, "no mapping " + domain + "::" + name);
    std::vector<std::string> dependents;
    for (const auto &c : constraints_) {
        bool hit = false;
        for (const auto &p : c.operands.paths)
            hit = hit || path_mentions(p, domain, name);
        if (c.operands.clause)
            for (const auto &lit : c.operands.clause->literals)
                for (const HornTerm *t : {&lit.lhs, &lit.rhs})
                    if (t->is_path) hit = hit || path_mentions(t->path, domain, name);
        if (hit) dependents.push_back(c.name);
    }
    if (!dependents.empty()) {
        std::string list;
        for (const auto &d : dependents) list += (list.empty() ? "" : ", ") + d;
        throw Error(Errc::DependentsExist, domain + "::" + name + " has dependents: " + list);
    }
    mappings_.erase(it);
}

void Catalog::remove_constraint(const std::string &name) {
    auto it = std::find_if(constraints_.begin(), constraints_.end(),
                           [&](const ConstraintDef &c) { return c.name == name; });
    if (it == constraints_.end())
        throw Error(Errc::UnknownConstraint, "no constraint named " + name);
    constraints_.erase(it);
}

void Catalog::remove_program(const std::string &name) {
    auto it = std::find_if(programs_.begin(), programs_.end(),
                           [&](const DatalogProgramDef &p) { return p.name == name; });
    if (it == programs_.end())
        throw Error(Errc::UnknownReference, "no program named " + name);
    programs_.erase(it);
}

const SetDef *Catalog::find_set(const std::string &name) const {
    for (const auto &s : sets_)
        if (s.name == name) return &s;
    return nullptr;
}

const MappingDef *Catalog::find_mapping(const std::string &domain,
                                        const std::string &name) const {
    for (const auto &m : mappings_)
        if (m.domain == domain && m.name == name) return &m;
    return nullptr;
}

const MappingDef *Catalog::find_mapping_unqualified(const std::string &name) const {
    const MappingDef *hit = nullptr;
    for (const auto &m : mappings_) {
        if (m.name != name) continue;
        if (hit)
            throw Error(Errc::AmbiguousReference,
                        "mapping name " + name + " is declared on several sets");
        hit = &m;
    }
    return hit;
}

const ConstraintDef *Catalog::find_constraint(const std::string &name) const {
    for (const auto &c : constraints_)
        if (c.name == name) return &c;
    return nullptr;
}

const DatalogProgramDef *Catalog::find_program(const std::string &name) const {
    for (const auto &p : programs_)
        if (p.name == name) return &p;
    return nullptr;
}

const RelSort *Catalog::find_role(const std::string &set, const std::string &role) const {
    const SetDef *s = find_set(set);
    if (!s) return nullptr;
    for (const auto &rs : s->rel_sorts)
        if (rs.role == role) return &rs;
    return nullptr;
}

std::vector<Catalog::Column> Catalog::columns_of(const std::string &set) const {
    std::vector<Column> out;
    const SetDef *s = find_set(set);
    if (!s) return out;
    for (const auto &rs : s->rel_sorts)
        out.push_back({rs.role, rs.target, true, false, nullptr});
    for (const auto &m : mappings_)
        if (m.domain == set)
            out.push_back({m.name, m.codomain, false,
                           m.kind == MappingKind::Attribute, &m});
    return out;
}

std::optional<Catalog::Column> Catalog::find_column(const std::string &set,
                                                    const std::string &name) const {
    for (auto &c : columns_of(set))
        if (c.name == name) return c;
    return std::nullopt;
}

MappingFlags Catalog::mapping_flags(const std::string &domain, const std::string &name) const {
    MappingFlags f;
    for (const auto &c : constraints_) {
        if (c.operands.paths.size() != 1 || c.operands.paths[0].size() != 1) continue;
        const PathStep &st = c.operands.paths[0][0];
        if (st.qualifier != domain || st.name != name) continue;
        switch (c.ctype) {
        case Ctype::Totality: f.total = true; break;
        case Ctype::OneToOneness: f.one_to_one = true; break;
        case Ctype::Ontoness: f.onto = true; break;
        case Ctype::Nonprimeness: f.nonprime = true; break;
        case Ctype::Bijectivity: f.one_to_one = f.onto = true; break;
        default: break;
        }
    }
    return f;
}

Path Catalog::resolve_path(const Path &p, std::vector<Defect> &defects,
                           const std::string &context) const {
    Path out;
    std::string current; // domain of the next step; empty = unknown yet
    for (size_t i = 0; i < p.size(); ++i) {
        const PathStep &st = p[i];
        std::string domain = i == 0 ? st.qualifier : current;
        if (i > 0 && !st.qualifier.empty() && st.qualifier != current) {
            defects.push_back({"KindMismatch", context,
                               "path step " + st.qualifier + "::" + st.name +
                                   " does not compose after a " + current + " step"});
            return p;
        }
        const MappingDef *m = nullptr;
        const RelSort *role = nullptr;
        if (domain.empty()) {
            // unqualified first step: unique across all mappings and roles
            int hits = 0;
            for (const auto &cand : mappings_)
                if (cand.name == st.name) { ++hits; m = &cand; }
            for (const auto &s : sets_)
                for (const auto &rs : s.rel_sorts)
                    if (rs.role == st.name) { ++hits; role = &rs; domain = s.name; }
            if (hits == 0) {
                defects.push_back({"UnknownReference", context,
                                   "unknown mapping " + st.name});
                return p;
            }
            if (hits > 1) {
                defects.push_back({"AmbiguousReference", context,
                                   "mapping name " + st.name +
                                       " is declared on several sets; qualify it"});
                return p;
            }
            if (m) domain = m->domain;
        } else {
            m = find_mapping(domain, st.name);
            if (!m) role = find_role(domain, st.name);
            if (!m && !role) {
                defects.push_back({"UnknownReference", context,
                                   "unknown mapping " + domain + "::" + st.name});
                return p;
            }
        }
        out.push_back({domain, st.name});
        current = m ? m->codomain : role->target;
    }
    return out;
}

namespace {

/// Registry-driven operand shapes.
const OperandShape kShapes[] = {
    /* Inclusion */ {2, 0, 0, false, false},
    /* SetEquality */ {2, 0, 0, false, false},
    /* Disjointness */ {2, 0, 0, false, false},
    /* SetUnion */ {3, 0, 0, false, false},
    /* DirectSum */ {3, 0, 0, false, false},
    /* Dr* 11 */
    {1, 0, 0, false, false}, {1, 0, 0, false, false}, {1, 0, 0, false, false},
    {1, 0, 0, false, false}, {1, 0, 0, false, false}, {1, 0, 0, false, false},
    {1, 0, 0, false, false}, {1, 0, 0, false, false}, {1, 0, 0, false, false},
    {1, 0, 0, false, false}, {1, 0, 0, false, false},
    /* Totality */ {0, 1, 1, false, false},
    /* Nonprimeness */ {0, 1, 1, false, false},
    /* OneToOneness */ {0, 1, 1, false, false},
    /* Ontoness */ {0, 1, 1, false, false},
    /* Bijectivity */ {0, 1, 1, false, false},
    /* DefaultValue */ {0, 1, 1, true, false},
    /* Af* 11 */
    {0, 1, 1, false, false}, {0, 1, 1, false, false}, {0, 1, 1, false, false},
    {0, 1, 1, false, false}, {0, 1, 1, false, false}, {0, 1, 1, false, false},
    {0, 1, 1, false, false}, {0, 1, 1, false, false}, {0, 1, 1, false, false},
    {0, 1, 1, false, false}, {0, 1, 1, false, false},
    /* Hbfp* 14 */
    {0, 2, 2, false, false}, {0, 2, 2, false, false}, {0, 2, 2, false, false},
    {0, 2, 2, false, false}, {0, 2, 2, false, false}, {0, 2, 2, false, false},
    {0, 2, 2, false, false}, {0, 2, 2, false, false}, {0, 2, 2, false, false},
    {0, 2, 2, false, false}, {0, 2, 2, false, false}, {0, 2, 2, false, false},
    {0, 2, 2, false, false}, {0, 2, 2, false, false},
    /* Key */ {0, 1, -1, false, false},
    /* Existence */ {0, 2, 2, false, false},
    /* Nonexistence */ {0, 2, 2, false, false},
    /* FdCommutativity */ {0, 2, 2, false, false},
    /* FdAntiCommutativity */ {0, 2, 2, false, false},
    /* FdLocal* 7 */
    {0, 1, 1, false, false}, {0, 1, 1, false, false}, {0, 1, 1, false, false},
    {0, 1, 1, false, false}, {0, 1, 1, false, false}, {0, 1, 1, false, false},
    {0, 1, 1, false, false},
    /* FdGeneralizedCommutativity */ {0, 0, 0, false, true},
    /* ObjectConstraint */ {0, 0, 0, false, true},
    /* RelDomain */ {0, 0, 0, false, false},
    /* RelReferentialIntegrity */ {0, 0, 0, false, false},
};
static_assert(std::size(kShapes) == kCtypeCount);

bool shape_fits(const OperandShape &sh, const ConstraintOperands &ops) {
    if (static_cast<int>(ops.sets.size()) != sh.set_count) return false;
    int np = static_cast<int>(ops.paths.size());
    if (np < sh.path_min) return false;
    if (sh.path_max >= 0 && np > sh.path_max) return false;
    if (sh.has_default != ops.default_value.has_value()) return false;
    if (sh.has_clause != ops.clause.has_value()) return false;
    return true;
}

} // namespace

OperandShape operand_shape(Ctype t) { return kShapes[static_cast<size_t>(t)]; }

std::optional<Ctype> resolve_ctype(const std::string &abbrev, const ConstraintOperands &ops,
                                   const Catalog &catalog) {
    std::vector<Ctype> candidates;
    for (Ctype t : ctypes_by_abbrev(abbrev))
        if (shape_fits(operand_shape(t), ops)) candidates.push_back(t);
    if (candidates.empty()) return std::nullopt;
    if (candidates.size() == 1) return candidates[0];
    // sets-vs-paths shapes already disambiguate everything except abbrevs
    // shared between subcategories with identical shapes; those do not exist
    // in the registry (dyadic takes a set, autofunction a path, HBFP two).
    (void)catalog;
    return candidates[0];
}

const ValueTypeSpec *codomain_spec(const Catalog &c, const std::string &codomain) {
    if (const SetDef *s = c.find_set(codomain);
        s && s->kind == SetKind::Value && s->value_spec)
        return &*s->value_spec;
    return builtin_value_type(codomain);
}

// ---------------------------------------------------------------------------
// validate_schema

namespace {

struct Validator {
    const Catalog &c;
    std::vector<Defect> out;

    bool is_object_set(const std::string &name) const {
        const SetDef *s = c.find_set(name);
        return s && (s->kind == SetKind::Entity || s->kind == SetKind::Relationship ||
                     s->kind == SetKind::Computed);
    }

    bool is_value_codomain(const std::string &name) const {
        return codomain_spec(c, name) != nullptr;
    }

    void check_sets() {
        for (const auto &s : c.sets()) {
            if (s.kind == SetKind::Relationship) {
                if (s.rel_sorts.size() < 2)
                    out.push_back({"ArityMismatch", s.name,
                                   "relationship needs at least 2 roles"});
                for (const auto &rs : s.rel_sorts)
                    if (!is_object_set(rs.target))
                        out.push_back({"UnknownReference", s.name,
                                       "role " + rs.role + " targets unknown object set " +
                                           rs.target});
            } else if (!s.rel_sorts.empty()) {
                out.push_back({"KindMismatch", s.name, "only relationships carry roles"});
            }
            if (s.kind == SetKind::Value) {
                if (!s.value_spec)
                    out.push_back({"KindMismatch", s.name, "value set without value spec"});
                else
                    for (const auto &msg : s.value_spec->self_defects())
                        out.push_back({"BadValueSpec", s.name, msg});
            } else if (s.value_spec) {
                out.push_back({"KindMismatch", s.name, "only value sets carry a value spec"});
            }
        }
    }

    void check_mappings() {
        for (const auto &m : c.mappings()) {
            std::string qual = m.domain + "::" + m.name;
            if (!is_object_set(m.domain))
                out.push_back({"UnknownReference", qual, "unknown domain set " + m.domain});
            bool value_cod = is_value_codomain(m.codomain);
            bool object_cod = is_object_set(m.codomain);
            if (!value_cod && !object_cod)
                out.push_back({"UnknownReference", qual, "unknown codomain " + m.codomain});
            if (m.kind == MappingKind::Attribute && !value_cod && object_cod)
                out.push_back({"KindMismatch", qual, "attribute codomain must be a value set"});
            if (m.kind == MappingKind::StructuralFunction && !object_cod && value_cod)
                out.push_back(
                    {"KindMismatch", qual, "structural function codomain must be an object set"});
            if (m.default_value && !m.default_value->is_null()) {
                if (const ValueTypeSpec *spec = codomain_spec(c, m.codomain))
                    if (auto reason = spec->check(*m.default_value))
                        out.push_back({"BadDefault", qual, *reason});
            }
        }
    }

    // resolves, returns codomain of the last step ("" on failure)
    std::string path_codomain(const Path &p) const {
        if (p.empty()) return "";
        const PathStep &last = p.back();
        if (const MappingDef *m = c.find_mapping(last.qualifier, last.name)) return m->codomain;
        if (const RelSort *r = c.find_role(last.qualifier, last.name)) return r->target;
        return "";
    }

    bool is_dyadic_relationship(const std::string &name) const {
        const SetDef *s = c.find_set(name);
        return s && s->kind == SetKind::Relationship && s->rel_sorts.size() == 2 &&
               s->rel_sorts[0].target == s->rel_sorts[1].target;
    }

    void check_constraint(const ConstraintDef &k) {
        const auto &info = ctype_info(k.ctype);
        if (!shape_fits(operand_shape(k.ctype), k.operands)) {
            out.push_back({"ArityMismatch", k.name,
                           std::string("operands do not fit constraint type ") + info.name});
            return;
        }
        for (const auto &s : k.operands.sets) {
            if (info.subcategory == Csubcategory::DyadicRelation) {
                if (!c.find_set(s))
                    out.push_back({"UnknownReference", k.name, "unknown set " + s});
                else if (!is_dyadic_relationship(s))
                    out.push_back({"KindMismatch", k.name,
                                   s + " is not a dyadic relationship (2 roles, same target)"});
            } else if (!c.find_set(s)) {
                out.push_back({"UnknownReference", k.name, "unknown set " + s});
            }
        }
        std::vector<Path> resolved;
        bool paths_ok = true;
        for (const auto &p : k.operands.paths) {
            size_t before = out.size();
            resolved.push_back(c.resolve_path(p, out, k.name));
            paths_ok = paths_ok && out.size() == before;
        }
        if (k.operands.clause) check_clause(k, *k.operands.clause);
        if (!paths_ok) return;

        auto source_of = [&](const Path &p) { return p.empty() ? "" : p.front().qualifier; };
        switch (info.subcategory) {
        case Csubcategory::GeneralMapping: {
            if (resolved[0].size() != 1)
                out.push_back({"KindMismatch", k.name,
                               "general mapping constraints take a single mapping, not a path"});
            if (k.ctype == Ctype::Ontoness && !is_object_set(path_codomain(resolved[0])))
                out.push_back({"KindMismatch", k.name,
                               "ontoness needs an object-set codomain"});
            if (k.ctype == Ctype::DefaultValue && k.operands.default_value) {
                if (const ValueTypeSpec *spec =
                        codomain_spec(c, path_codomain(resolved[0])))
                    if (auto reason = spec->check(*k.operands.default_value))
                        out.push_back({"BadDefault", k.name, *reason});
            }
            break;
        }
        case Csubcategory::Autofunction: {
            if (source_of(resolved[0]) != path_codomain(resolved[0]))
                out.push_back({"KindMismatch", k.name,
                               "autofunction constraints need f : A -> A"});
            break;
        }
        case Csubcategory::HomogeneousBinaryFunctionProduct: {
            if (source_of(resolved[0]) != source_of(resolved[1]) ||
                path_codomain(resolved[0]) != path_codomain(resolved[1]))
                out.push_back({"KindMismatch", k.name,
                               "HBFP constraints need f, g : A -> B with shared A and B"});
            break;
        }
        case Csubcategory::GeneralFunctionProduct: {
            for (size_t i = 1; i < resolved.size(); ++i)
                if (source_of(resolved[i]) != source_of(resolved[0]))
                    out.push_back({"KindMismatch", k.name,
                                   "product components must share a domain"});
            break;
        }
        case Csubcategory::FunctionDiagram: {
            if (k.ctype == Ctype::FdCommutativity || k.ctype == Ctype::FdAntiCommutativity) {
                if (source_of(resolved[0]) != source_of(resolved[1]))
                    out.push_back({"KindMismatch", k.name, "paths must share a source"});
                if (path_codomain(resolved[0]) != path_codomain(resolved[1]))
                    out.push_back({"KindMismatch", k.name, "paths must share a target"});
            } else if (k.ctype != Ctype::FdGeneralizedCommutativity) {
                if (source_of(resolved[0]) != path_codomain(resolved[0]))
                    out.push_back({"KindMismatch", k.name,
                                   "local diagram constraints need a composed autofunction"});
            }
            break;
        }
        default: break;
        }
    }

    void check_clause(const ConstraintDef &k, const HornClause &cl) {
        if (!c.find_set(cl.anchor_set)) {
            out.push_back({"UnknownReference", k.name, "unknown anchor set " + cl.anchor_set});
            return;
        }
        int positives = 0;
        for (const auto &lit : cl.literals) {
            if (lit.positive) ++positives;
            for (const HornTerm *t : {&lit.lhs, &lit.rhs}) {
                if (!t->is_path) continue;
                Path q = t->path;
                if (!q.empty() && q.front().qualifier.empty())
                    q.front().qualifier = cl.anchor_set;
                size_t before = out.size();
                Path r = c.resolve_path(q, out, k.name);
                if (out.size() == before && !r.empty() &&
                    r.front().qualifier != cl.anchor_set)
                    out.push_back({"KindMismatch", k.name,
                                   "clause path " + path_to_string(t->path) +
                                       " does not start at anchor " + cl.anchor_set});
            }
        }
        if (positives > 1)
            out.push_back({"HornShape", k.name,
                           "closed Horn clause admits at most one positive literal"});
    }

    void check_names() {
        std::set<std::string> seen;
        for (const auto &s : c.sets())
            if (!seen.insert(s.name).second)
                out.push_back({"DuplicateName", s.name, "set declared twice"});
        std::set<std::pair<std::string, std::string>> qual;
        for (const auto &m : c.mappings())
            if (!qual.insert({m.domain, m.name}).second)
                out.push_back({"DuplicateName", m.domain + "::" + m.name,
                               "mapping declared twice"});
        std::set<std::string> cnames;
        for (const auto &k : c.constraints())
            if (!cnames.insert(k.name).second)
                out.push_back({"DuplicateName", k.name, "constraint declared twice"});
    }
};

} // namespace

std::vector<Defect> Catalog::validate() const {
    Validator v{*this, {}};
    v.check_names();
    v.check_sets();
    v.check_mappings();
    for (const auto &k : constraints_) v.check_constraint(k);
    for (const auto &p : programs_)
        for (auto &d : datalog::check_program(*this, p)) {
            d.subject = p.name + ": " + d.subject;
            v.out.push_back(std::move(d));
        }
    return std::move(v.out);
}

bool Catalog::operator==(const Catalog &o) const {
    if (db_name_ != o.db_name_) return false;
    auto sorted = [](auto v, auto key) {
        std::sort(v.begin(), v.end(),
                  [&](const auto &a, const auto &b) { return key(a) < key(b); });
        return v;
    };
    auto set_key = [](const SetDef &s) { return s.name; };
    auto map_key = [](const MappingDef &m) { return m.domain + "::" + m.name; };
    auto con_key = [](const ConstraintDef &k) { return k.name; };
    auto prog_key = [](const DatalogProgramDef &p) { return p.name; };
    auto diag_key = [](const DiagramDef &d) { return d.name; };
    return sorted(sets_, set_key) == sorted(o.sets_, set_key) &&
           sorted(mappings_, map_key) == sorted(o.mappings_, map_key) &&
           sorted(constraints_, con_key) == sorted(o.constraints_, con_key) &&
           sorted(programs_, prog_key) == sorted(o.programs_, prog_key) &&
           sorted(diagrams_, diag_key) == sorted(o.diagrams_, diag_key);
}

} // namespace emdm
