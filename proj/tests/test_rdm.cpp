#include "emdm/rdm.hpp"

#include "emdm/schema_text.hpp"
#include "emdm/store.hpp"
#include "emdm/validator.hpp"

#include <doctest.h>

#include <random>
#include <set>

using namespace emdm;

namespace {

Catalog parse_ok(const std::string &text) {
    ParseResult r = parse_schema(text);
    REQUIRE(r.catalog);
    REQUIRE(r.catalog->validate().empty());
    return std::move(*r.catalog);
}

InstanceDB inst_ok(const std::string &json, const Catalog &c) {
    auto r = parse_instance(json, c);
    REQUIRE(r.instance);
    return std::move(*r.instance);
}

} // namespace

TEST_CASE("tables, not-null, unique, and checks translate directly") {
    Catalog c = parse_ok("entity PERSON;"
                         "attr name: PERSON -> TEXT; attr ssn: PERSON -> TEXT;"
                         "constraint name_total: total(PERSON::name);"
                         "constraint ssn_uniq: one2one(PERSON::ssn);");
    rdm::DdlScript script = rdm::emit_ddl(c);
    std::string sql = script.text();
    CHECK(sql.find("CREATE TABLE PERSON") != std::string::npos);
    CHECK(sql.find("id BIGINT PRIMARY KEY") != std::string::npos);
    CHECK(sql.find("name VARCHAR(255) NOT NULL") != std::string::npos);
    CHECK(sql.find("UNIQUE (ssn)") != std::string::npos);
    CHECK(script.relational_count() == 2);
    CHECK(script.engine_only_count() == 0);
}

TEST_CASE("structural functions become foreign keys; non-relational types stay engine-only") {
    Catalog c = parse_ok("entity PERSON; fn spouse: PERSON -> PERSON;"
                         "constraint ns: nullsym(PERSON::spouse);");
    rdm::DdlScript script = rdm::emit_ddl(c);
    std::string sql = script.text();
    CHECK(sql.find("FOREIGN KEY (spouse) REFERENCES PERSON(id)") != std::string::npos);
    REQUIRE(script.coverage.size() == 1);
    CHECK_FALSE(script.coverage[0].relational);
    CHECK(script.coverage[0].ctype == "af_null_symmetry");
}

TEST_CASE("bounded value sets emit CHECK clauses") {
    Catalog c = parse_ok("entity P; valueset AGE: int [0 .. 150]; attr age: P -> AGE;");
    std::string sql = rdm::emit_ddl(c).text();
    CHECK(sql.find("CHECK (age >= 0 AND age <= 150)") != std::string::npos);
}

TEST_CASE("row-local object constraints become CHECKs, path-walking ones stay engine-only") {
    Catalog c = parse_ok("entity P; valueset AGE: int [0 .. 150]; attr age: P -> AGE;"
                         "fn boss: P -> P;"
                         "constraint adult: horn(P: age >= 18);"
                         "constraint walky: horn(P: boss.age >= 18);");
    rdm::DdlScript script = rdm::emit_ddl(c);
    std::string sql = script.text();
    CHECK(sql.find("CHECK (age >= 18)") != std::string::npos);
    bool adult_rel = false, walky_rel = true;
    for (const auto &e : script.coverage) {
        if (e.constraint == "adult") adult_rel = e.relational;
        if (e.constraint == "walky") walky_rel = e.relational;
    }
    CHECK(adult_rel);
    CHECK_FALSE(walky_rel);
}

TEST_CASE("composite keys become composite UNIQUE constraints") {
    Catalog c = parse_ok("entity P; attr a: P -> TEXT; attr b: P -> TEXT;"
                         "constraint k: key(P::a, P::b);");
    std::string sql = rdm::emit_ddl(c).text();
    CHECK(sql.find("UNIQUE (a, b)") != std::string::npos);
}

TEST_CASE("coverage partitions the declared constraints") {
    const Catalog &meta = store::meta_schema();
    rdm::DdlScript script = rdm::emit_ddl(meta);
    CHECK(script.coverage.size() == meta.constraints().size());
    CHECK(script.relational_count() + script.engine_only_count() ==
          static_cast<int>(meta.constraints().size()));
    // every declared constraint appears exactly once
    std::set<std::string> seen;
    for (const auto &e : script.coverage) CHECK(seen.insert(e.constraint).second);

    rdm::CoverageSummary summary = rdm::coverage_report(meta);
    CHECK(summary.relational_count == script.relational_count());
    CHECK(summary.engine_only_count == script.engine_only_count());
    CHECK(summary.detail.size() == script.coverage.size());
}

TEST_CASE("a schema using only totality and keys is fully relational") {
    Catalog c = parse_ok("entity P; attr a: P -> TEXT; attr b: P -> TEXT;"
                         "constraint t: total(P::a); constraint k: key(P::a, P::b);");
    rdm::CoverageSummary s = rdm::coverage_report(c);
    CHECK(s.engine_only_count == 0);
    CHECK(s.relational_count == 2);
}

TEST_CASE("a Euclideanity constraint is never relational") {
    Catalog c = parse_ok("entity S; relationship D(a: S, b: S); constraint e: eucl(D);");
    rdm::CoverageSummary s = rdm::coverage_report(c);
    CHECK(s.engine_only_count >= 1);
}

TEST_CASE("incoherent catalogs are refused") {
    Catalog c = parse_ok("entity S; relationship D(a: S, b: S);"
                         "constraint r: refl(D); constraint i: irrefl(D);");
    CHECK_THROWS_AS(rdm::emit_ddl(c), Error);
}

TEST_CASE("DDL output is byte-identical across runs") {
    const Catalog &meta = store::meta_schema();
    CHECK(rdm::emit_ddl(meta).text() == rdm::emit_ddl(meta).text());
}

TEST_CASE("validator-clean instances never breach emitted DDL") {
    Catalog c = parse_ok("entity P; entity D;"
                         "valueset AGE: int [0 .. 150];"
                         "attr name: P -> TEXT; attr age: P -> AGE;"
                         "fn dept: P -> D; attr dn: D -> TEXT;"
                         "constraint nt: total(P::name);"
                         "constraint uq: one2one(P::name);"
                         "constraint k: key(D::dn);"
                         "constraint adult: horn(P: age >= 18);");
    rdm::DdlScript script = rdm::emit_ddl(c);

    SUBCASE("on a hand-made consistent instance") {
        InstanceDB db = inst_ok(
            R"({"P": {"rows": [
                {"id":1,"name":"Ada","age":36,"dept":1},
                {"id":2,"name":"Alan","dept":1}]},
                "D": {"rows": [{"id":1,"dn":"R"}]}})",
            c);
        REQUIRE(validate_instance(c, db).violations.empty());
        CHECK(rdm::interpret_ddl(script, c, db).empty());
    }

    SUBCASE("on randomized instances, breaches imply validator violations") {
        std::mt19937 rng(97);
        std::uniform_int_distribution<int> coin(0, 3), age(-20, 170);
        for (int round = 0; round < 120; ++round) {
            InstanceDB db;
            int np = coin(rng) + 1, nd = coin(rng) + 1;
            for (int i = 1; i <= nd; ++i) {
                Row r;
                r.id = i;
                if (coin(rng)) r.values["dn"] = Value::text("d" + std::to_string(coin(rng)));
                db.sets["D"].rows.push_back(std::move(r));
            }
            for (int i = 1; i <= np; ++i) {
                Row r;
                r.id = i;
                if (coin(rng)) r.values["name"] = Value::text("n" + std::to_string(coin(rng)));
                if (coin(rng)) r.values["age"] = Value::integer(age(rng));
                if (coin(rng)) r.values["dept"] = Value::ref(coin(rng) + 1);
                db.sets["P"].rows.push_back(std::move(r));
            }
            if (validate_instance(c, db).violations.empty())
                CHECK(rdm::interpret_ddl(script, c, db).empty());
        }
    }
}

TEST_CASE("interpreter spots the breaches the statements encode") {
    Catalog c = parse_ok("entity P; attr name: P -> TEXT;"
                         "constraint nt: total(P::name);"
                         "constraint uq: one2one(P::name);");
    rdm::DdlScript script = rdm::emit_ddl(c);
    InstanceDB db;
    db.sets["P"].rows = {{1, {{"name", Value::text("x")}}},
                         {2, {{"name", Value::text("x")}}},
                         {3, {}}};
    auto breaches = rdm::interpret_ddl(script, c, db);
    CHECK(breaches.size() == 2); // duplicate name + null name
}
