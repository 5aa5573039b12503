#include "emdm/theorems.hpp"

#include "emdm/analysis.hpp"
#include "emdm/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <map>
#include <mutex>

namespace emdm {

using nlohmann::json;

const TheoremBase &TheoremBase::builtin() {
    static const TheoremBase base = [] {
        using K = Theorem::Kind;
        TheoremBase b;
        int n = 0;
        auto add = [&](std::string name, K kind, std::string shape,
                       std::vector<std::string> premise, std::string conclusion) {
            b.items.push_back({std::move(name), kind, std::move(shape), std::move(premise),
                               std::move(conclusion), ++n});
        };
        add("inclusion-antisymmetry", K::Redundancy, "incl-antisym", {"incl", "incl"}, "seteq");
        add("disjoint-union-direct-sum", K::Redundancy, "disj-union", {"disj", "union"}, "dsum");
        add("refl-eucl-sym", K::Redundancy, "pair", {"refl", "eucl"}, "sym");
        add("refl-eucl-trans", K::Redundancy, "pair", {"refl", "eucl"}, "trans");
        add("refl-sym-trans-equiv", K::Redundancy, "pair", {"refl", "sym", "trans"}, "equiv");
        add("asym-irrefl", K::Redundancy, "pair", {"asym"}, "irrefl");
        add("acyclic-irrefl", K::Redundancy, "pair", {"acyclic"}, "irrefl");
        add("acyclic-asym", K::Redundancy, "pair", {"acyclic"}, "asym");
        add("intrans-irrefl", K::Redundancy, "pair", {"intrans"}, "irrefl");
        add("ineucl-irrefl", K::Redundancy, "pair", {"ineucl"}, "irrefl");
        add("trans-irrefl-asym", K::Redundancy, "pair", {"trans", "irrefl"}, "asym");
        add("one2one-onto-bijective", K::Redundancy, "one2one-onto", {"one2one", "onto"},
            "bijective");
        add("existence-totality", K::Redundancy, "exist-total", {"exist", "total"}, "total");
        add("refl-irrefl-clash", K::Incoherence, "pair", {"refl", "irrefl"}, "");
        add("refl-acyclic-clash", K::Incoherence, "pair", {"refl", "acyclic"}, "");
        add("refl-intrans-clash", K::Incoherence, "pair", {"refl", "intrans"}, "");
        add("refl-ineucl-clash", K::Incoherence, "pair", {"refl", "ineucl"}, "");
        add("refl-asym-clash", K::Incoherence, "pair", {"refl", "asym"}, "");
        add("equiv-acyclic-clash", K::Incoherence, "pair", {"equiv", "acyclic"}, "");
        add("idem-antiidem-clash", K::Incoherence, "idem-clash", {"idem", "antiidem"}, "");
        add("comm-anticomm-clash", K::Incoherence, "comm-clash", {"comm", "anticomm"}, "");
        add("total-nonexist-total-clash", K::Incoherence, "total-nonexist",
            {"total", "nonexist", "total"}, "");
        add("bijective-nonprime-only-key", K::Incoherence, "only-key",
            {"bijective", "nonprime"}, "");
        return b;
    }();
    return base;
}

static const char *kind_text(Theorem::Kind k) {
    return k == Theorem::Kind::Redundancy ? "redundancy" : "incoherence";
}

TheoremBase TheoremBase::from_json_text(const std::string &text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error &e) {
        throw Error(Errc::Corrupt, "theorem base: " + std::string(e.what()));
    }
    if (!j.is_array()) throw Error(Errc::Corrupt, "theorem base must be a JSON array");
    static const std::vector<std::string> kShapes = {
        "pair",        "incl-antisym", "disj-union",     "one2one-onto", "exist-total",
        "idem-clash",  "comm-clash",   "total-nonexist", "only-key"};
    TheoremBase b;
    try {
        for (const auto &e : j) {
            Theorem t;
            t.name = e.at("name").get<std::string>();
            std::string kind = e.at("kind").get<std::string>();
            if (kind == "redundancy")
                t.kind = Theorem::Kind::Redundancy;
            else if (kind == "incoherence")
                t.kind = Theorem::Kind::Incoherence;
            else
                throw Error(Errc::Corrupt, t.name + ": unknown theorem kind " + kind);
            t.shape = e.at("shape").get<std::string>();
            if (std::find(kShapes.begin(), kShapes.end(), t.shape) == kShapes.end())
                throw Error(Errc::UnsupportedPattern, t.name + ": unknown shape " + t.shape);
            for (const auto &p : e.at("premise")) t.premise.push_back(p.get<std::string>());
            if (e.contains("conclusion") && !e["conclusion"].is_null())
                t.conclusion = e["conclusion"].get<std::string>();
            if (t.kind == Theorem::Kind::Redundancy && t.conclusion.empty())
                throw Error(Errc::Corrupt, t.name + ": redundancy theorem needs a conclusion");
            t.order = e.at("order").get<int>();
            b.items.push_back(std::move(t));
        }
    } catch (const json::exception &e) {
        throw Error(Errc::Corrupt, std::string("theorem base malformed: ") + e.what());
    }
    std::sort(b.items.begin(), b.items.end(),
              [](const Theorem &a, const Theorem &c) { return a.order < c.order; });
    return b;
}

std::string TheoremBase::to_json_text() const {
    json arr = json::array();
    for (const auto &t : items) {
        json e;
        e["name"] = t.name;
        e["kind"] = kind_text(t.kind);
        e["shape"] = t.shape;
        e["premise"] = t.premise;
        if (t.conclusion.empty())
            e["contradiction"] = true;
        else
            e["conclusion"] = t.conclusion;
        e["order"] = t.order;
        arr.push_back(e);
    }
    return arr.dump(2) + "\n";
}

TheoremBase TheoremBase::load_verified(const std::string &json_text) {
    TheoremBase b = from_json_text(json_text);
    static std::map<size_t, bool> memo;
    static std::mutex mu;
    size_t h = std::hash<std::string>{}(json_text);
    {
        std::lock_guard<std::mutex> lock(mu);
        if (auto it = memo.find(h); it != memo.end()) {
            if (it->second) return b;
            throw Error(Errc::IncoherentInput, "theorem base previously failed certification");
        }
    }
    bool ok = true;
    std::string bad;
    for (const auto &cert : certify_all(b))
        if (!cert.certified) {
            ok = false;
            bad = cert.theorem + ": " + cert.counterexample;
            break;
        }
    {
        std::lock_guard<std::mutex> lock(mu);
        memo[h] = ok;
    }
    if (!ok) throw Error(Errc::IncoherentInput, "theorem base failed certification: " + bad);
    return b;
}

} // namespace emdm
