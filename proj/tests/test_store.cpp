#include "emdm/store.hpp"

#include "emdm/analysis.hpp"
#include "emdm/schema_text.hpp"
#include "emdm/validator.hpp"

#include <doctest.h>

#include <cstdio>
#include <fstream>

using namespace emdm;

namespace {

std::string temp_path(const std::string &name) {
    return "/tmp/emdm_store_test_" + name;
}

Catalog parse_ok(const std::string &text) {
    ParseResult r = parse_schema(text);
    REQUIRE(r.catalog);
    return std::move(*r.catalog);
}

} // namespace

TEST_CASE("catalog persistence round trips") {
    const Catalog &meta = store::meta_schema();
    std::string path = temp_path("meta.json");
    store::save_catalog(meta, path);
    Catalog back = store::load_catalog(path);
    CHECK(back == meta);
    std::remove(path.c_str());

    Catalog rich = parse_ok(
        "database demo; entity A; relationship R(x: A, y: A);"
        "valueset G: text in {\"a\"}; attr g: A -> G; fn f: A -> A;"
        "computed V = \"x\"; computedfn m: A -> TEXT = \"y\";"
        "constraint c1: nullsym(A::f);"
        "constraint c2: horn(A: g = \"a\");"
        "constraint c3: default(A::g, \"a\");"
        "diagram d(A, R);"
        "program p { rule q(X) :- A(X, G, F, M), !R(Y, X, X), G != \"b\"; };");
    std::string text = store::catalog_to_json_text(rich);
    CHECK(store::catalog_from_json_text(text) == rich);
}

TEST_CASE("version and corruption checks") {
    SUBCASE("future versions are refused") {
        std::string doctored = R"({"schema_version": 99, "db_name": "x",
            "sets": [], "mappings": [], "constraints": [], "programs": [], "diagrams": []})";
        try {
            store::catalog_from_json_text(doctored);
            FAIL("expected UnsupportedVersion");
        } catch (const Error &e) {
            CHECK(e.code == Errc::UnsupportedVersion);
        }
    }
    SUBCASE("truncated files report the byte offset") {
        std::string good = store::catalog_to_json_text(store::meta_schema());
        std::string truncated = good.substr(0, good.size() / 2);
        try {
            store::catalog_from_json_text(truncated);
            FAIL("expected Corrupt");
        } catch (const Error &e) {
            CHECK(e.code == Errc::Corrupt);
            CHECK(std::string(e.what()).find("byte") != std::string::npos);
        }
    }
    SUBCASE("missing files are IO errors") {
        try {
            store::load_catalog("/nonexistent/emdm.json");
            FAIL("expected Io");
        } catch (const Error &e) {
            CHECK(e.code == Errc::Io);
        }
    }
}

TEST_CASE("meta-schema invariants") {
    const Catalog &meta = store::meta_schema();
    CHECK(meta.sets().size() == 13);
    CHECK(meta.validate().empty());
    CHECK(detect_incoherence(meta).incoherences.empty());
}

TEST_CASE("reflection row counts equal catalog element counts") {
    Catalog c = parse_ok("database demo; entity A; entity B; fn f: A -> B;"
                         "attr x: A -> TEXT; constraint t: total(A::x);"
                         "program p { rule q(X) :- A(X, V, W); };");
    InstanceDB refl = store::reflect(c);
    CHECK(refl.sets.at("SETS").rows.size() == c.sets().size());
    CHECK(refl.sets.at("FUNCTIONS").rows.size() == c.mappings().size());
    CHECK(refl.sets.at("CONSTRAINTSET").rows.size() == c.constraints().size());
    CHECK(refl.sets.at("CONSTRAINT_TYPES").rows.size() == 63);
    CHECK(refl.sets.at("CONSTRAINT_CATEGS").rows.size() == 4);
    CHECK(refl.sets.at("CONSTRAINT_SUBCATEGS").rows.size() == 9);
    CHECK(refl.sets.at("PROGRAMS").rows.size() == 1);
    CHECK(refl.sets.at("INF_RULES").rows.size() == 1);
    // one extensional predicate (A) and one intensional (q)
    CHECK(refl.sets.at("PREDICATES").rows.size() == 2);

    SUBCASE("the reflection validates against the meta-schema") {
        ValidationReport rep = validate_instance(store::meta_schema(), refl);
        for (const auto &v : rep.violations) MESSAGE(v.constraint, ": ", v.explanation);
        CHECK(rep.violations.empty());
    }
}

TEST_CASE("empty catalog reflects to registry-only rows with zero violations") {
    Catalog empty("nothing");
    InstanceDB refl = store::reflect(empty);
    CHECK(refl.sets.at("SETS").rows.empty());
    CHECK(refl.sets.at("FUNCTIONS").rows.empty());
    CHECK(refl.sets.at("CONSTRAINTSET").rows.empty());
    CHECK(validate_instance(store::meta_schema(), refl).violations.empty());
}

TEST_CASE("self-description closes: reflect(meta) validates against meta") {
    const Catalog &meta = store::meta_schema();
    InstanceDB boot = store::reflect(meta);
    ValidationReport rep = validate_instance(meta, boot);
    for (const auto &v : rep.violations) MESSAGE(v.constraint, ": ", v.explanation);
    CHECK(rep.violations.empty());
    CHECK(boot.sets.at("SETS").rows.size() == meta.sets().size());
    CHECK(boot.sets.at("FUNCTIONS").rows.size() == meta.mappings().size());
    CHECK(boot.sets.at("CONSTRAINTSET").rows.size() == meta.constraints().size());
}

TEST_CASE("reflection output serializes deterministically") {
    InstanceDB refl = store::reflect(store::meta_schema());
    CHECK(instance_to_json(refl) == instance_to_json(store::reflect(store::meta_schema())));
}
