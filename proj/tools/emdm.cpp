#include "emdm/analysis.hpp"
#include "emdm/dl_eval.hpp"
#include "emdm/erd.hpp"
#include "emdm/rdm.hpp"
#include "emdm/schema_text.hpp"
#include "emdm/store.hpp"
#include "emdm/validator.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

using nlohmann::json;
using namespace emdm;

namespace {

constexpr int kExitClean = 0;
constexpr int kExitFindings = 1; // run succeeded, user's data/schema has problems
constexpr int kExitUsage = 2;    // usage or IO error
constexpr int kExitInternal = 3;

struct CliFailure {
    int code;
    std::string message;
};

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CliFailure{kExitUsage, "cannot read " + path};
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

json parse_errors_json(const std::vector<ParseError> &errors) {
    json arr = json::array();
    for (const auto &e : errors) {
        json j;
        j["line"] = e.span.line;
        j["column"] = e.span.column;
        j["length"] = e.span.length;
        j["message"] = e.message;
        if (!e.expected.empty()) j["expected"] = e.expected;
        arr.push_back(std::move(j));
    }
    return arr;
}

json defects_json(const std::vector<Defect> &defects) {
    json arr = json::array();
    for (const auto &d : defects)
        arr.push_back({{"kind", d.kind}, {"subject", d.subject}, {"message", d.message}});
    return arr;
}

json value_json(const Value &v) {
    switch (v.kind()) {
    case Value::Kind::Null: return nullptr;
    case Value::Kind::Boolean: return v.as_bool();
    case Value::Kind::Integer: return v.as_int();
    case Value::Kind::Decimal: return v.as_decimal();
    case Value::Kind::Text:
    case Value::Kind::Date: return v.as_text();
    case Value::Kind::Ref: return v.as_int();
    }
    return nullptr;
}

json violations_json(const std::vector<Violation> &violations) {
    json arr = json::array();
    for (const auto &v : violations) {
        json w = json::array();
        for (const auto &c : v.witnesses) {
            json values = json::array();
            for (const auto &val : c.values) values.push_back(value_json(val));
            w.push_back({{"set", c.set}, {"row", c.row}, {"values", std::move(values)}});
        }
        arr.push_back({{"constraint", v.constraint},
                       {"ctype", v.ctype},
                       {"witnesses", std::move(w)},
                       {"explanation", v.explanation}});
    }
    return arr;
}

json instance_errors_json(const std::vector<InstanceError> &errors) {
    json arr = json::array();
    for (const auto &e : errors)
        arr.push_back({{"kind", e.kind},
                       {"set", e.set},
                       {"row", e.row},
                       {"column", e.column},
                       {"message", e.message}});
    return arr;
}

json analysis_json(const AnalysisReport &rep) {
    json j;
    json derived = json::array();
    for (const auto &d : rep.derived)
        derived.push_back({{"name", d.name},
                           {"ctype", ctype_info(d.ctype).name},
                           {"operands", d.operands.to_string()},
                           {"theorem", d.derived_by}});
    json inc = json::array();
    for (const auto &i : rep.incoherences)
        inc.push_back({{"theorem", i.theorem}, {"constraints", i.constraints}});
    json red = json::array();
    for (const auto &r : rep.redundancies)
        red.push_back({{"theorem", r.theorem}, {"removable", r.removable}});
    json warn = json::array();
    for (const auto &w : rep.warnings)
        warn.push_back({{"message", w.message}, {"constraints", w.constraints}});
    j["derived"] = std::move(derived);
    j["incoherences"] = std::move(inc);
    j["redundancies"] = std::move(red);
    j["warnings"] = std::move(warn);
    return j;
}

bool pretty = false;

// plain aligned table for the --pretty view
void table(const std::string &title, const std::vector<std::string> &header,
           const std::vector<std::vector<std::string>> &rows) {
    std::cout << title << "\n";
    if (rows.empty()) {
        std::cout << "  (none)\n";
        return;
    }
    std::vector<size_t> width(header.size());
    for (size_t i = 0; i < header.size(); ++i) width[i] = header[i].size();
    for (const auto &r : rows)
        for (size_t i = 0; i < r.size() && i < width.size(); ++i)
            width[i] = std::max(width[i], r[i].size());
    auto line = [&](const std::vector<std::string> &cells) {
        std::cout << " ";
        for (size_t i = 0; i < cells.size(); ++i) {
            std::cout << " " << cells[i];
            if (i + 1 < cells.size())
                std::cout << std::string(width[i] - cells[i].size(), ' ');
        }
        std::cout << "\n";
    };
    line(header);
    for (const auto &r : rows) line(r);
}

std::string json_cell(const json &j) {
    return j.is_string() ? j.get<std::string>() : j.dump();
}

// --pretty renders the report as tables instead of JSON
void emit(const json &j) {
    if (!pretty) {
        std::cout << j.dump(2) << "\n";
        return;
    }
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (it.value().is_array() && !it.value().empty() && it.value()[0].is_object()) {
            std::vector<std::string> header;
            for (auto f = it.value()[0].begin(); f != it.value()[0].end(); ++f)
                header.push_back(f.key());
            std::vector<std::vector<std::string>> rows;
            for (const auto &e : it.value()) {
                std::vector<std::string> row;
                for (const auto &h : header)
                    row.push_back(e.contains(h) ? json_cell(e[h]) : "");
                rows.push_back(std::move(row));
            }
            table(it.key(), header, rows);
        } else {
            std::cout << it.key() << ": " << json_cell(it.value()) << "\n";
        }
    }
}

Catalog load_schema(const std::string &path) {
    ParseResult res = parse_schema(read_file(path));
    if (!res.catalog) {
        emit(json{{"parse_errors", parse_errors_json(res.errors)}});
        throw CliFailure{kExitFindings, ""};
    }
    return std::move(*res.catalog);
}

Catalog load_schema_checked(const std::string &path) {
    Catalog c = load_schema(path);
    auto defects = c.validate();
    if (!defects.empty()) {
        emit(json{{"defects", defects_json(defects)}});
        throw CliFailure{kExitFindings, ""};
    }
    return c;
}

InstanceDB load_instance(const std::string &path, const Catalog &catalog) {
    InstanceParseResult res = parse_instance(read_file(path), catalog);
    if (!res.instance) {
        emit(json{{"instance_errors", instance_errors_json(res.errors)}});
        throw CliFailure{kExitFindings, ""};
    }
    return std::move(*res.instance);
}

size_t cycle_cap() {
    if (const char *env = std::getenv("EMDM_MAX_CYCLES"))
        return static_cast<size_t>(std::strtoull(env, nullptr, 10));
    return 10000;
}

int cmd_validate(const std::string &schema) {
    Catalog c = load_schema(schema);
    auto defects = c.validate();
    json out;
    out["defects"] = defects_json(defects);
    if (defects.empty()) {
        AnalysisReport rep = detect_incoherence(c);
        json inc = json::array();
        for (const auto &i : rep.incoherences)
            inc.push_back({{"theorem", i.theorem}, {"constraints", i.constraints}});
        json warn = json::array();
        for (const auto &w : rep.warnings)
            warn.push_back({{"message", w.message}, {"constraints", w.constraints}});
        out["incoherences"] = std::move(inc);
        out["warnings"] = std::move(warn);
        emit(out);
        return rep.incoherences.empty() ? kExitClean : kExitFindings;
    }
    emit(out);
    return kExitFindings;
}

int cmd_check(const std::string &schema, const std::string &instance) {
    Catalog c = load_schema_checked(schema);
    InstanceDB db = load_instance(instance, c);
    ValidationReport rep = validate_instance(c, db);
    emit(json{{"violations", violations_json(rep.violations)}});
    return rep.violations.empty() ? kExitClean : kExitFindings;
}

int cmd_analyze(const std::string &schema) {
    Catalog c = load_schema_checked(schema);
    AnalysisReport rep = detect_incoherence(c);
    if (rep.incoherences.empty()) {
        std::vector<Redundancy> removed;
        minimize(c, &removed);
        rep.redundancies = std::move(removed);
    }
    emit(analysis_json(rep));
    return rep.incoherences.empty() ? kExitClean : kExitFindings;
}

int cmd_minimize(const std::string &schema, const std::string &out_path) {
    Catalog c = load_schema_checked(schema);
    std::vector<Redundancy> removed;
    Catalog reduced = minimize(c, &removed);
    if (!out_path.empty()) {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw CliFailure{kExitUsage, "cannot write " + out_path};
        out << serialize_schema(reduced);
    }
    json red = json::array();
    for (const auto &r : removed)
        red.push_back({{"theorem", r.theorem}, {"removable", r.removable}});
    emit(json{{"removed", std::move(red)}});
    return kExitClean;
}

int cmd_cycles(const std::string &schema, bool suggest) {
    Catalog c = load_schema_checked(schema);
    ErdGraph g = build_graph(c);
    CycleEnumeration cycles = enumerate_cycles(g, cycle_cap());
    json arr = json::array();
    for (const auto &cy : cycles.cycles) {
        json edges = json::array();
        for (int id : cy.edge_ids) {
            const ErdEdge &e = g.edges[id];
            edges.push_back({{"name", e.name}, {"from", e.from}, {"to", e.to}});
        }
        json roles;
        for (const auto &[node, role] : cy.roles) roles[node] = node_role_name(role);
        json entry = {{"edges", std::move(edges)},
                      {"length", cy.length()},
                      {"roles", std::move(roles)},
                      {"class", cycle_class_name(cy.classification)}};
        if (suggest) {
            json s = json::array();
            for (Ctype t : suggest_cycle_constraints(cy)) s.push_back(ctype_info(t).name);
            entry["suggest"] = std::move(s);
        }
        arr.push_back(std::move(entry));
    }
    emit(json{{"cycles", std::move(arr)}, {"truncated", cycles.truncated}});
    return kExitClean;
}

int cmd_keys(const std::string &schema, const std::string &instance, const std::string &set) {
    Catalog c = load_schema_checked(schema);
    InstanceDB db = load_instance(instance, c);
    auto keys = discover_keys(c, db, set);
    json arr = json::array();
    for (const auto &k : keys) arr.push_back(k);
    emit(json{{"set", set}, {"keys", std::move(arr)}});
    return kExitClean;
}

int cmd_ddl(const std::string &schema, bool coverage) {
    Catalog c = load_schema_checked(schema);
    rdm::DdlScript script = rdm::emit_ddl(c);
    if (coverage) {
        json arr = json::array();
        for (const auto &e : script.coverage)
            arr.push_back({{"constraint", e.constraint},
                           {"ctype", e.ctype},
                           {"coverage", e.relational ? "relational" : "engine-only"},
                           {"statement", e.statement}});
        emit(json{{"relational_count", script.relational_count()},
                  {"engine_only_count", script.engine_only_count()},
                  {"detail", std::move(arr)}});
    } else {
        std::cout << script.text();
    }
    return kExitClean;
}

int cmd_erd(const std::string &schema) {
    Catalog c = load_schema_checked(schema);
    std::cout << export_dot(c);
    return kExitClean;
}

int cmd_datalog(const std::string &schema, const std::string &instance,
                const std::string &program, bool show_ra, bool show_stats) {
    Catalog c = load_schema_checked(schema);
    const DatalogProgramDef *p = c.find_program(program);
    if (!p) throw CliFailure{kExitUsage, "no program named " + program};
    auto defects = datalog::check_program(c, *p);
    if (!defects.empty()) {
        emit(json{{"defects", defects_json(defects)}});
        return kExitFindings;
    }
    InstanceDB db = load_instance(instance, c);
    ra::EquationSystem sys = ra::compile_to_ra(c, *p);
    dl::EvalResult res = dl::evaluate_system(sys, c, db, dl::EvalMode::SemiNaive);
    json results;
    for (const auto &[pred, tuples] : res.relations) {
        json rel = json::array();
        for (const auto &t : tuples) {
            json row = json::array();
            for (const auto &v : t) {
                if (std::holds_alternative<int64_t>(v)) row.push_back(std::get<int64_t>(v));
                else row.push_back(std::get<std::string>(v));
            }
            rel.push_back(std::move(row));
        }
        results[pred] = std::move(rel);
    }
    if (!show_ra && !show_stats) {
        // plain fixpoint output is the bare predicate -> tuples map
        std::cout << results.dump(2) << "\n";
        return kExitClean;
    }
    json out;
    out["results"] = std::move(results);
    if (show_ra) out["ra"] = sys.to_string();
    if (show_stats) {
        dl::IterationStats st = dl::iteration_stats(c, db, *p);
        out["stats"] = {{"naive_iterations", st.naive_iterations},
                        {"seminaive_iterations", st.seminaive_iterations},
                        {"tuples_per_iteration", st.tuples_per_iteration},
                        {"naive_work", st.naive_work},
                        {"seminaive_work", st.seminaive_work}};
    }
    emit(out);
    return kExitClean;
}

int cmd_reflect(const std::string &schema) {
    Catalog c = load_schema_checked(schema);
    InstanceDB meta_instance = store::reflect(c);
    std::cout << instance_to_json(meta_instance);
    return kExitClean;
}

int cmd_selfcheck() {
    json checks = json::array();
    bool all_ok = true;
    auto check = [&](const std::string &name, bool ok) {
        checks.push_back({{"name", name}, {"pass", ok}});
        all_ok = all_ok && ok;
    };

    RegistryCounts rc = registry_counts();
    check("registry-counts", rc.set_category == 16 && rc.mapping_category == 44 &&
                                 rc.object_category == 1 && rc.emdm_total == 61 &&
                                 rc.relational_category == 2 && rc.fundamental == 22 &&
                                 rc.derived == 39 && rc.subcategories == 9);

    bool certified = true;
    uint64_t checked = 0;
    for (const auto &cert : certify_all()) {
        certified = certified && cert.certified;
        checked += cert.models_checked;
    }
    check("theorem-certification", certified);

    const Catalog &meta = store::meta_schema();
    check("meta-schema-wellformed", meta.validate().empty());
    check("meta-schema-coherent", detect_incoherence(meta).incoherences.empty());

    InstanceDB boot = store::reflect(meta);
    ValidationReport rep = validate_instance(meta, boot);
    check("bootstrap-fixpoint", rep.violations.empty());
    check("bootstrap-counts",
          boot.sets.at("SETS").rows.size() == meta.sets().size() &&
              boot.sets.at("FUNCTIONS").rows.size() == meta.mappings().size() &&
              boot.sets.at("CONSTRAINTSET").rows.size() == meta.constraints().size());

    emit(json{{"checks", std::move(checks)},
              {"models_checked", checked},
              {"pass", all_ok}});
    return all_ok ? kExitClean : kExitFindings;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"(E)MDM engine: schemas as sets, mappings, constraints, and Datalog programs"};
    app.require_subcommand(1);
    app.fallthrough(); // let --pretty appear after the subcommand
    app.add_flag("--pretty", pretty, "render reports as tables instead of JSON");

    std::string schema, instance, set_name, program, out_path;
    bool suggest = false, coverage = false, show_ra = false, show_stats = false;

    auto *validate = app.add_subcommand("validate", "well-formedness and coherence of a schema");
    validate->add_option("schema", schema, "schema file (.emdm)")->required();

    auto *check = app.add_subcommand("check", "validate an instance against its schema");
    check->add_option("schema", schema)->required();
    check->add_option("instance", instance, "instance file (.json)")->required();

    auto *analyze = app.add_subcommand("analyze", "closure, incoherences, and redundancies");
    analyze->add_option("schema", schema)->required();

    auto *minimize_cmd = app.add_subcommand("minimize", "remove redundant constraints");
    minimize_cmd->add_option("schema", schema)->required();
    minimize_cmd->add_option("-o,--output", out_path, "write the minimized schema here");

    auto *cycles = app.add_subcommand("cycles", "enumerate and classify E-RD cycles");
    cycles->add_option("schema", schema)->required();
    cycles->add_flag("--suggest", suggest, "include candidate constraint types per cycle");

    auto *keys = app.add_subcommand("keys", "discover minimal keys of a set on an instance");
    keys->add_option("schema", schema)->required();
    keys->add_option("instance", instance)->required();
    keys->add_option("set", set_name, "object set name")->required();

    auto *ddl = app.add_subcommand("ddl", "translate to relational DDL");
    ddl->add_option("schema", schema)->required();
    ddl->add_flag("--coverage", coverage, "print the coverage report instead of SQL");

    auto *erd = app.add_subcommand("erd", "export the E-R diagram as DOT");
    erd->add_option("schema", schema)->required();

    auto *datalog_cmd = app.add_subcommand("datalog", "evaluate a Datalog program");
    datalog_cmd->add_option("schema", schema)->required();
    datalog_cmd->add_option("instance", instance)->required();
    datalog_cmd->add_option("program", program, "program name in the schema")->required();
    datalog_cmd->add_flag("--ra", show_ra, "include the relational-algebra equation system");
    datalog_cmd->add_flag("--stats", show_stats, "include naive/semi-naive iteration stats");

    auto *reflect = app.add_subcommand("reflect", "express a schema as a meta-schema instance");
    reflect->add_option("schema", schema)->required();

    app.add_subcommand("selfcheck", "bootstrap fixpoint and oracle certification");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        std::cerr << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (validate->parsed()) return cmd_validate(schema);
        if (check->parsed()) return cmd_check(schema, instance);
        if (analyze->parsed()) return cmd_analyze(schema);
        if (minimize_cmd->parsed()) return cmd_minimize(schema, out_path);
        if (cycles->parsed()) return cmd_cycles(schema, suggest);
        if (keys->parsed()) return cmd_keys(schema, instance, set_name);
        if (ddl->parsed()) return cmd_ddl(schema, coverage);
        if (erd->parsed()) return cmd_erd(schema);
        if (datalog_cmd->parsed()) return cmd_datalog(schema, instance, program, show_ra, show_stats);
        if (reflect->parsed()) return cmd_reflect(schema);
        return cmd_selfcheck();
    } catch (const CliFailure &f) {
        if (!f.message.empty()) std::cerr << f.message << "\n";
        return f.code;
    } catch (const Error &e) {
        std::cerr << e.what() << "\n";
        switch (e.code) {
        case Errc::Io:
        case Errc::UnsupportedVersion:
        case Errc::UnknownReference:
        case Errc::TooManyMappings:
            return kExitUsage;
        case Errc::IncoherentInput:
        case Errc::NotStratified:
        case Errc::Corrupt:
            return kExitFindings;
        default: return kExitInternal;
        }
    } catch (const std::exception &e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
}
