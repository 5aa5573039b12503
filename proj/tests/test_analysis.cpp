#include "emdm/analysis.hpp"

#include "emdm/schema_text.hpp"

#include <doctest.h>

#include <random>
#include <set>

using namespace emdm;
using oracle::ExecMode;

namespace {

Catalog parse_ok(const std::string &text) {
    ParseResult r = parse_schema(text);
    REQUIRE(r.catalog);
    return std::move(*r.catalog);
}

Catalog dyadic_with(const std::string &constraints) {
    return parse_ok("entity S; relationship D(a: S, b: S);" + constraints);
}

std::set<std::string> derived_tags(const AnalysisReport &rep) {
    std::set<std::string> out;
    for (const auto &d : rep.derived) out.insert(ctype_info(d.ctype).name);
    return out;
}

const Theorem &theorem(const std::string &name) {
    for (const auto &t : TheoremBase::builtin().items)
        if (t.name == name) return t;
    FAIL("no theorem ", name);
    static Theorem dummy;
    return dummy;
}

} // namespace

TEST_CASE("closure derives equivalence from reflexivity and Euclideanity") {
    Catalog c = dyadic_with("constraint r: refl(D); constraint e: eucl(D);");
    AnalysisReport rep;
    Catalog closed = closure(c, &rep);
    auto tags = derived_tags(rep);
    CHECK(tags.count("dr_symmetry"));
    CHECK(tags.count("dr_transitivity"));
    CHECK(tags.count("dr_equivalence"));
    for (const auto &d : rep.derived) CHECK(d.origin == ConstraintOrigin::Derived);
    CHECK(closed.constraints().size() == c.constraints().size() + rep.derived.size());
}

TEST_CASE("closure of an empty catalog is empty") {
    Catalog c("db");
    AnalysisReport rep;
    Catalog closed = closure(c, &rep);
    CHECK(rep.derived.empty());
    CHECK(closed == c);
}

TEST_CASE("closure derives irreflexivity from asymmetry") {
    Catalog c = dyadic_with("constraint a: asym(D);");
    AnalysisReport rep;
    closure(c, &rep);
    CHECK(derived_tags(rep) == std::set<std::string>{"dr_irreflexivity"});
    CHECK(rep.derived[0].derived_by == "asym-irrefl");
}

TEST_CASE("closure is idempotent and monotone") {
    Catalog c = dyadic_with("constraint r: refl(D); constraint e: eucl(D);"
                            "constraint x: trans(D);");
    Catalog once = closure(c);
    Catalog twice = closure(once);
    CHECK(once == twice);

    // adding a declaration never shrinks the closure
    Catalog more = c;
    ConstraintDef k;
    k.name = "extra";
    k.ctype = Ctype::DrAcyclicity;
    k.operands.sets = {"D"};
    more.add_constraint_unchecked(k);
    Catalog closed_more = closure(more);
    for (const auto &kc : once.constraints()) {
        bool found = false;
        for (const auto &kd : closed_more.constraints())
            found = found || (kd.ctype == kc.ctype && kd.operands == kc.operands);
        CHECK(found);
    }
}

TEST_CASE("closure covers the set, mapping, and product special shapes") {
    Catalog c = parse_ok(
        "entity U; entity S; entity T; entity A; entity B;"
        "fn f: A -> B;"
        "attr g: A -> TEXT; attr h: A -> TEXT;"
        "constraint i1: incl(S, T); constraint i2: incl(T, S);"
        "constraint d: disj(S, T); constraint u: union(U, S, T);"
        "constraint o1: one2one(A::f); constraint o2: onto(A::f);"
        "constraint ex: exist(A::g, A::h); constraint tg: total(A::h);");
    AnalysisReport rep;
    closure(c, &rep);
    auto tags = derived_tags(rep);
    CHECK(tags.count("set_equality"));
    CHECK(tags.count("direct_sum"));
    CHECK(tags.count("bijectivity"));
    CHECK(tags.count("totality")); // total(g) from existence + total(h)
}

TEST_CASE("oracle certification: certificates and counterexamples") {
    SUBCASE("asymmetry implies irreflexivity over every small relation") {
        Certificate cert = oracle_certify(theorem("asym-irrefl"));
        CHECK(cert.certified);
        CHECK(cert.models_checked == 2ull + 16 + 512 + 65536);
    }
    SUBCASE("symmetry does not imply transitivity") {
        Theorem bogus{"sym-trans", Theorem::Kind::Redundancy, "pair", {"sym"}, "trans", 99};
        Certificate cert = oracle_certify(bogus);
        CHECK_FALSE(cert.certified);
        CHECK(cert.counterexample.find("(1,2)") != std::string::npos);
        CHECK(cert.counterexample.find("(2,1)") != std::string::npos);
    }
    SUBCASE("reflexivity with Euclideanity implies symmetry") {
        CHECK(oracle_certify(theorem("refl-eucl-sym")).certified);
    }
    SUBCASE("non-pair theorems are not oracle material") {
        CHECK_THROWS_AS(oracle_certify(theorem("one2one-onto-bijective")), Error);
    }
}

TEST_CASE("parallel kernel reproduces the serial reference exactly") {
    for (const char *name : {"asym-irrefl", "refl-eucl-sym", "trans-irrefl-asym",
                             "refl-irrefl-clash", "equiv-acyclic-clash"}) {
        Certificate s = oracle_certify(theorem(name), 4, ExecMode::Serial);
        Certificate p = oracle_certify(theorem(name), 4, ExecMode::Parallel);
        CHECK(s.certified == p.certified);
        CHECK(s.models_checked == p.models_checked);
        CHECK(s.counterexample == p.counterexample);
    }
    Theorem bogus{"sym-trans", Theorem::Kind::Redundancy, "pair", {"sym"}, "trans", 99};
    Certificate s = oracle_certify(bogus, 4, ExecMode::Serial);
    Certificate p = oracle_certify(bogus, 4, ExecMode::Parallel);
    CHECK(s.counterexample == p.counterexample); // same first counterexample
}

TEST_CASE("the whole builtin base certifies") {
    for (const auto &cert : certify_all()) {
        INFO(cert.theorem);
        CHECK(cert.certified);
        CHECK(cert.models_checked > 0);
    }
}

TEST_CASE("incoherence detection") {
    SUBCASE("reflexive + acyclic clash (self-loops are cycles)") {
        Catalog c = dyadic_with("constraint r: refl(D); constraint a: acyclic(D);");
        AnalysisReport rep = detect_incoherence(c);
        REQUIRE(rep.incoherences.size() == 1);
        CHECK(rep.incoherences[0].theorem == "refl-acyclic-clash");
    }
    SUBCASE("reflexive + irreflexive clash") {
        Catalog c = dyadic_with("constraint r: refl(D); constraint i: irrefl(D);");
        CHECK(detect_incoherence(c).incoherences.size() == 1);
    }
    SUBCASE("symmetric + asymmetric is a degenerate-model warning, not an incoherence") {
        Catalog c = dyadic_with("constraint s: sym(D); constraint a: asym(D);");
        AnalysisReport rep = detect_incoherence(c);
        CHECK(rep.incoherences.empty());
        REQUIRE(rep.warnings.size() == 1);
        CHECK(rep.warnings[0].message.find("empty relation") != std::string::npos);
    }
    SUBCASE("equivalence declared with acyclicity clashes") {
        Catalog c = dyadic_with("constraint e: equiv(D); constraint a: acyclic(D);");
        REQUIRE(!detect_incoherence(c).incoherences.empty());
    }
    SUBCASE("idempotency vs anti-idempotency on one autofunction") {
        Catalog c = parse_ok("entity A; fn f: A -> A;"
                             "constraint i: idem(A::f); constraint ai: antiidem(A::f);");
        AnalysisReport rep = detect_incoherence(c);
        REQUIRE(rep.incoherences.size() == 1);
        CHECK(rep.incoherences[0].theorem == "idem-antiidem-clash");
    }
    SUBCASE("commutativity vs anti-commutativity on one diagram") {
        Catalog c = parse_ok("entity E; entity D; fn boss: E -> E; fn dept: E -> D;"
                             "constraint c1: comm(E::boss.dept, E::dept);"
                             "constraint c2: anticomm(E::dept, E::boss.dept);");
        AnalysisReport rep = detect_incoherence(c);
        REQUIRE(rep.incoherences.size() == 1);
        CHECK(rep.incoherences[0].theorem == "comm-anticomm-clash");
    }
    SUBCASE("totality of f clashes with nonexistence given a total g") {
        Catalog c = parse_ok("entity A; attr f: A -> TEXT; attr g: A -> TEXT;"
                             "constraint tf: total(A::f);"
                             "constraint ne: nonexist(A::f, A::g);"
                             "constraint tg: total(A::g);");
        AnalysisReport rep = detect_incoherence(c);
        REQUIRE(rep.incoherences.size() == 1);
        CHECK(rep.incoherences[0].theorem == "total-nonexist-total-clash");
        CHECK(rep.incoherences[0].constraints ==
              std::vector<std::string>{"tf", "ne", "tg"});
    }
    SUBCASE("bijective + nonprime on the set's only key") {
        Catalog c = parse_ok("entity A; entity B; fn f: A -> B;"
                             "constraint bj: bijective(A::f);"
                             "constraint np: nonprime(A::f);");
        AnalysisReport rep = detect_incoherence(c);
        REQUIRE(rep.incoherences.size() == 1);
        CHECK(rep.incoherences[0].theorem == "bijective-nonprime-only-key");

        // a second declared key on the set lifts the pattern
        Catalog c2 = parse_ok("entity A; entity B; fn f: A -> B; attr s: A -> TEXT;"
                              "constraint bj: bijective(A::f);"
                              "constraint np: nonprime(A::f);"
                              "constraint other: one2one(A::s);");
        CHECK(detect_incoherence(c2).incoherences.empty());
    }
    SUBCASE("a coherent set stays clean") {
        Catalog c = dyadic_with("constraint r: refl(D); constraint s: sym(D);"
                                "constraint t: trans(D);");
        AnalysisReport rep = detect_incoherence(c);
        CHECK(rep.incoherences.empty());
        CHECK(rep.warnings.empty());
    }
}

TEST_CASE("minimize removes derivable constraints in declaration order") {
    SUBCASE("equivalence falls to its three parts") {
        Catalog c = dyadic_with("constraint r: refl(D); constraint s: sym(D);"
                                "constraint t: trans(D); constraint e: equiv(D);");
        std::vector<Redundancy> removed;
        Catalog reduced = minimize(c, &removed);
        REQUIRE(removed.size() == 1);
        CHECK(removed[0].removable == "e");
        CHECK(removed[0].theorem == "refl-sym-trans-equiv");
        CHECK(reduced.constraints().size() == 3);
        // cover preservation
        CHECK(closure_signature(reduced) == closure_signature(c));
        // idempotence
        std::vector<Redundancy> again;
        CHECK(minimize(reduced, &again) == reduced);
        CHECK(again.empty());
    }
    SUBCASE("nothing implies a lone totality") {
        Catalog c = parse_ok("entity A; attr f: A -> TEXT; constraint t: total(A::f);");
        std::vector<Redundancy> removed;
        CHECK(minimize(c, &removed) == c);
        CHECK(removed.empty());
    }
    SUBCASE("irreflexivity falls to asymmetry") {
        Catalog c = dyadic_with("constraint a: asym(D); constraint i: irrefl(D);");
        std::vector<Redundancy> removed;
        Catalog reduced = minimize(c, &removed);
        REQUIRE(removed.size() == 1);
        CHECK(removed[0].removable == "i");
        CHECK(reduced.find_constraint("a") != nullptr);
    }
    SUBCASE("incoherent input is refused") {
        Catalog c = dyadic_with("constraint r: refl(D); constraint i: irrefl(D);");
        CHECK_THROWS_AS(minimize(c), Error);
    }
}

TEST_CASE("minimize preserves closure and is idempotent on generated catalogs") {
    std::mt19937 rng(59);
    const char *tags[] = {"refl", "sym", "trans", "eucl", "equiv"};
    int generated = 0;
    for (int round = 0; generated < 25 && round < 200; ++round) {
        std::string decls;
        int mask = std::uniform_int_distribution<int>(1, 31)(rng);
        for (int i = 0; i < 5; ++i)
            if (mask >> i & 1)
                decls += "constraint c" + std::to_string(i) + ": " +
                         std::string(tags[i]) + "(D);";
        Catalog c = dyadic_with(decls);
        if (!detect_incoherence(c).incoherences.empty()) continue;
        ++generated;
        Catalog reduced = minimize(c);
        CHECK(closure_signature(reduced) == closure_signature(c));
        CHECK(minimize(reduced) == reduced);
    }
    CHECK(generated >= 20);
}

TEST_CASE("theorem base JSON round trips and verifies") {
    const TheoremBase &base = TheoremBase::builtin();
    std::string text = base.to_json_text();
    TheoremBase back = TheoremBase::from_json_text(text);
    CHECK(back.items == base.items);
    TheoremBase verified = TheoremBase::load_verified(text);
    CHECK(verified.items == base.items);

    SUBCASE("broken bases are rejected") {
        CHECK_THROWS_AS(TheoremBase::from_json_text("{"), Error);
        CHECK_THROWS_AS(TheoremBase::from_json_text("[{\"name\":\"x\"}]"), Error);
        std::string bogus = R"([{"name":"sym-implies-trans","kind":"redundancy",
            "shape":"pair","premise":["sym"],"conclusion":"trans","order":1}])";
        CHECK_THROWS_AS(TheoremBase::load_verified(bogus), Error);
    }
}

TEST_CASE("detect_incoherence finds pattern-less unsatisfiable combinations") {
    // equivalence forces reflexivity, which intransitivity forbids; no named
    // theorem matches, the satisfiability probe reports it
    Catalog c = dyadic_with("constraint e: equiv(D); constraint i: intrans(D);");
    AnalysisReport rep = detect_incoherence(c);
    REQUIRE(rep.incoherences.size() == 1);
    CHECK(rep.incoherences[0].theorem == "unsatisfiable-combination");
}
