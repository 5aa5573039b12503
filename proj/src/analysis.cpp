#include "emdm/analysis.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>

namespace emdm {

using oracle::ExecMode;
using oracle::Prop;

namespace {

// ---------------------------------------------------------------------------
// Constraint grouping: pair-level families share generic property abbrevs on
// one operand signature. Four families carry relation properties: dyadic
// relations, autofunctions, HBFPs, and composed-path (local diagram)
// constraints.

enum class Family { Dyadic, Autofunction, Hbfp, FdLocal, None };

Family family_of(Ctype t) {
    switch (ctype_info(t).subcategory) {
    case Csubcategory::DyadicRelation: return Family::Dyadic;
    case Csubcategory::Autofunction: return Family::Autofunction;
    case Csubcategory::HomogeneousBinaryFunctionProduct: return Family::Hbfp;
    case Csubcategory::FunctionDiagram:
        switch (t) {
        case Ctype::FdLocalCommutativity:
        case Ctype::FdLocalAntiCommutativity:
        case Ctype::FdLocalAcyclicity:
        case Ctype::FdLocalSymmetry:
        case Ctype::FdLocalAsymmetry:
            return Family::FdLocal;
        default: return Family::None;
        }
    default: return Family::None;
    }
}

/// Generic property abbrev carried by a pair-level tag; empty for null
/// variants and non-relational tags.
std::string plain_abbrev(Ctype t) {
    switch (t) {
    case Ctype::DrReflexivity:
    case Ctype::AfReflexivity:
    case Ctype::FdLocalCommutativity: return "refl";
    case Ctype::DrIrreflexivity:
    case Ctype::AfIrreflexivity:
    case Ctype::HbfpIrreflexivity:
    case Ctype::FdLocalAntiCommutativity: return "irrefl";
    case Ctype::DrSymmetry:
    case Ctype::AfSymmetry:
    case Ctype::HbfpSymmetry:
    case Ctype::FdLocalSymmetry: return "sym";
    case Ctype::DrAsymmetry:
    case Ctype::AfAsymmetry:
    case Ctype::HbfpAsymmetry:
    case Ctype::FdLocalAsymmetry: return "asym";
    case Ctype::DrTransitivity:
    case Ctype::HbfpTransitivity: return "trans";
    case Ctype::DrIntransitivity:
    case Ctype::HbfpIntransitivity: return "intrans";
    case Ctype::DrEuclideanity:
    case Ctype::HbfpEuclideanity: return "eucl";
    case Ctype::DrInEuclideanity:
    case Ctype::HbfpInEuclideanity: return "ineucl";
    case Ctype::DrEquivalence:
    case Ctype::HbfpEquivalence: return "equiv";
    case Ctype::DrAcyclicity:
    case Ctype::AfAcyclicity:
    case Ctype::HbfpAcyclicity:
    case Ctype::FdLocalAcyclicity: return "acyclic";
    case Ctype::DrConnectivity:
    case Ctype::HbfpConnectivity: return "conn";
    default: return "";
    }
}

/// The family's tag for a generic abbrev; nullopt when the family lacks it
/// (e.g. no plain reflexivity for HBFPs, no transitivity for autofunctions).
std::optional<Ctype> family_tag(Family f, const std::string &abbrev) {
    static const std::map<std::pair<Family, std::string>, Ctype> table = [] {
        std::map<std::pair<Family, std::string>, Ctype> m;
        for (const auto &e : registry()) {
            Family fam = family_of(e.tag);
            if (fam == Family::None) continue;
            std::string a = plain_abbrev(e.tag);
            if (!a.empty()) m[{fam, a}] = e.tag;
        }
        return m;
    }();
    auto it = table.find({f, abbrev});
    if (it == table.end()) return std::nullopt;
    return it->second;
}

/// Canonical signature of a constraint's operand slot. Symmetric slots are
/// sorted so that seteq(A,B) and seteq(B,A) coincide, as do comm(p,q) and
/// comm(q,p) and the unordered tail of union/dsum.
std::string canonical_signature(const Catalog &c, Ctype t, const ConstraintOperands &ops) {
    std::vector<Defect> sink;
    std::vector<std::string> paths;
    for (const auto &p : ops.paths)
        paths.push_back(path_to_string(c.resolve_path(p, sink, "sig")));
    std::vector<std::string> sets = ops.sets;
    switch (t) {
    case Ctype::SetEquality:
    case Ctype::Disjointness:
        std::sort(sets.begin(), sets.end());
        break;
    case Ctype::SetUnion:
    case Ctype::DirectSum:
        if (sets.size() == 3) std::sort(sets.begin() + 1, sets.end());
        break;
    case Ctype::FdCommutativity:
    case Ctype::FdAntiCommutativity:
        std::sort(paths.begin(), paths.end());
        break;
    default: break;
    }
    std::string sig;
    for (const auto &s : sets) sig += s + ";";
    for (const auto &p : paths) sig += p + ";";
    if (ops.default_value) sig += ops.default_value->to_string() + ";";
    if (ops.clause) sig += ops.clause->to_string() + ";";
    return sig;
}

/// Operand signature ignoring the constraint type, used to group pair-level
/// constraints of one family on the same relation.
std::string group_signature(const Catalog &c, const ConstraintOperands &ops, Family fam) {
    (void)fam; // HBFP operands stay ordered: f•g and g•f are distinct products
    std::vector<Defect> sink;
    std::vector<std::string> paths;
    for (const auto &p : ops.paths)
        paths.push_back(path_to_string(c.resolve_path(p, sink, "sig")));
    std::string sig;
    for (const auto &s : ops.sets) sig += s + ";";
    for (const auto &p : paths) sig += p + ";";
    return sig;
}

struct Group {
    Family family = Family::None;
    std::string signature;
    ConstraintOperands operands; // representative operands
    // abbrev -> names of constraints carrying it
    std::map<std::string, std::vector<std::string>> tags;
};

std::map<std::pair<int, std::string>, Group> collect_groups(const Catalog &c,
                                                            bool declared_only = false) {
    std::map<std::pair<int, std::string>, Group> groups;
    for (const auto &k : c.constraints()) {
        if (declared_only && k.origin != ConstraintOrigin::Declared) continue;
        Family fam = family_of(k.ctype);
        if (fam == Family::None) continue;
        std::string abbrev = plain_abbrev(k.ctype);
        if (abbrev.empty()) continue; // null variants carry no pair-level tag
        std::string sig = group_signature(c, k.operands, fam);
        auto &g = groups[{static_cast<int>(fam), sig}];
        g.family = fam;
        g.signature = sig;
        if (g.operands == ConstraintOperands{}) g.operands = k.operands;
        g.tags[abbrev].push_back(k.name);
    }
    return groups;
}

std::string sanitize(std::string s) {
    for (char &ch : s)
        if (!isalnum(static_cast<unsigned char>(ch))) ch = '_';
    while (!s.empty() && s.back() == '_') s.pop_back();
    return s;
}

std::string fresh_name(const Catalog &c, const std::string &base) {
    if (!c.find_constraint(base)) return base;
    for (int i = 2;; ++i) {
        std::string probe = base + "_" + std::to_string(i);
        if (!c.find_constraint(probe)) return probe;
    }
}

bool has_constraint_like(const Catalog &c, Ctype t, const std::string &canon_sig) {
    for (const auto &k : c.constraints())
        if (k.ctype == t && canonical_signature(c, t, k.operands) == canon_sig) return true;
    return false;
}

void derive(Catalog &c, AnalysisReport *report, Ctype t, ConstraintOperands ops,
            const std::string &theorem, bool &changed) {
    std::string canon = canonical_signature(c, t, ops);
    if (has_constraint_like(c, t, canon)) return;
    ConstraintDef def;
    def.ctype = t;
    def.operands = std::move(ops);
    def.origin = ConstraintOrigin::Derived;
    def.derived_by = theorem;
    def.name = fresh_name(
        c, std::string(ctype_info(t).abbrev) + "_" + sanitize(def.operands.to_string()));
    c.add_constraint_unchecked(def);
    if (report) report->derived.push_back(def);
    changed = true;
}

// one closure pass for a single theorem; true when anything was added
bool apply_derivation(Catalog &c, AnalysisReport *report, const Theorem &t) {
    bool changed = false;
    if (t.shape == "pair") {
        auto groups = collect_groups(c);
        for (auto &[key, g] : groups) {
            bool all = true;
            for (const auto &p : t.premise) all = all && g.tags.count(p);
            if (!all) continue;
            auto target = family_tag(g.family, t.conclusion);
            if (!target) continue;
            if (g.tags.count(t.conclusion)) continue;
            derive(c, report, *target, g.operands, t.name, changed);
        }
    } else if (t.shape == "incl-antisym") {
        const auto ks = c.constraints();
        for (const auto &a : ks) {
            if (a.ctype != Ctype::Inclusion) continue;
            for (const auto &b : ks) {
                if (b.ctype != Ctype::Inclusion) continue;
                if (a.operands.sets.size() != 2 || b.operands.sets.size() != 2) continue;
                if (a.operands.sets[0] != b.operands.sets[1] ||
                    a.operands.sets[1] != b.operands.sets[0])
                    continue;
                if (a.operands.sets[0] == a.operands.sets[1]) continue;
                ConstraintOperands ops;
                ops.sets = a.operands.sets;
                derive(c, report, Ctype::SetEquality, ops, t.name, changed);
            }
        }
    } else if (t.shape == "disj-union") {
        const auto ks = c.constraints();
        for (const auto &u : ks) {
            if (u.ctype != Ctype::SetUnion || u.operands.sets.size() != 3) continue;
            for (const auto &d : ks) {
                if (d.ctype != Ctype::Disjointness || d.operands.sets.size() != 2) continue;
                bool same = (d.operands.sets[0] == u.operands.sets[1] &&
                             d.operands.sets[1] == u.operands.sets[2]) ||
                            (d.operands.sets[0] == u.operands.sets[2] &&
                             d.operands.sets[1] == u.operands.sets[1]);
                if (!same) continue;
                derive(c, report, Ctype::DirectSum, u.operands, t.name, changed);
            }
        }
    } else if (t.shape == "one2one-onto") {
        const auto ks = c.constraints();
        for (const auto &a : ks) {
            if (a.ctype != Ctype::OneToOneness) continue;
            std::string sig = canonical_signature(c, Ctype::OneToOneness, a.operands);
            for (const auto &b : ks) {
                if (b.ctype != Ctype::Ontoness) continue;
                if (canonical_signature(c, Ctype::Ontoness, b.operands) != sig) continue;
                derive(c, report, Ctype::Bijectivity, a.operands, t.name, changed);
            }
        }
    } else if (t.shape == "exist-total") {
        const auto ks = c.constraints();
        for (const auto &e : ks) {
            if (e.ctype != Ctype::Existence || e.operands.paths.size() != 2) continue;
            std::vector<Defect> sink;
            std::string g_sig =
                path_to_string(c.resolve_path(e.operands.paths[1], sink, "sig"));
            for (const auto &tt : ks) {
                if (tt.ctype != Ctype::Totality || tt.operands.paths.size() != 1) continue;
                if (path_to_string(c.resolve_path(tt.operands.paths[0], sink, "sig")) != g_sig)
                    continue;
                ConstraintOperands ops;
                ops.paths = {e.operands.paths[0]};
                derive(c, report, Ctype::Totality, ops, t.name, changed);
            }
        }
    }
    return changed;
}

} // namespace

Catalog closure(const Catalog &c, AnalysisReport *report, const TheoremBase &base) {
    Catalog out = c;
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto &t : base.items)
            if (t.kind == Theorem::Kind::Redundancy)
                changed = apply_derivation(out, report, t) || changed;
    }
    return out;
}

std::set<std::string> closure_signature(const Catalog &c, const TheoremBase &base) {
    Catalog closed = closure(c, nullptr, base);
    std::set<std::string> out;
    for (const auto &k : closed.constraints())
        out.insert(std::string(ctype_info(k.ctype).name) + "|" +
                   canonical_signature(closed, k.ctype, k.operands));
    return out;
}

namespace {

std::optional<Prop> prop_of_abbrev(const std::string &a) { return oracle::prop_by_name(a); }

// Patterns match over the declared constraints: a clash between a declared
// constraint and a derived one always has a declared-only ancestor pattern or
// falls to the satisfiability probe, and reports stay free of duplicates.
void match_incoherences(const Catalog &closed, const TheoremBase &base, AnalysisReport &rep) {
    auto groups = collect_groups(closed, /*declared_only=*/true);
    for (const auto &t : base.items) {
        if (t.kind != Theorem::Kind::Incoherence) continue;
        if (t.shape == "pair") {
            for (auto &[key, g] : groups) {
                bool all = true;
                std::vector<std::string> names;
                for (const auto &p : t.premise) {
                    auto it = g.tags.find(p);
                    if (it == g.tags.end() || !family_tag(g.family, p)) {
                        all = false;
                        break;
                    }
                    names.push_back(it->second.front());
                }
                if (all) rep.incoherences.push_back({t.name, names});
            }
        } else if (t.shape == "idem-clash") {
            // autofunction and local-diagram idempotency variants
            static const std::pair<Ctype, Ctype> kPairs[] = {
                {Ctype::AfIdempotency, Ctype::AfAntiIdempotency},
                {Ctype::FdLocalIdempotency, Ctype::FdLocalAntiIdempotency}};
            for (auto [pos, neg] : kPairs) {
                for (const auto &a : closed.constraints()) {
                    if (a.ctype != pos || a.origin != ConstraintOrigin::Declared) continue;
                    std::string sig = canonical_signature(closed, pos, a.operands);
                    for (const auto &b : closed.constraints())
                        if (b.ctype == neg &&
                            canonical_signature(closed, pos, b.operands) == sig)
                            rep.incoherences.push_back({t.name, {a.name, b.name}});
                }
            }
        } else if (t.shape == "comm-clash") {
            for (const auto &a : closed.constraints()) {
                if (a.ctype != Ctype::FdCommutativity ||
                    a.origin != ConstraintOrigin::Declared)
                    continue;
                std::string sig =
                    canonical_signature(closed, Ctype::FdCommutativity, a.operands);
                for (const auto &b : closed.constraints())
                    if (b.ctype == Ctype::FdAntiCommutativity &&
                        canonical_signature(closed, Ctype::FdCommutativity, b.operands) == sig)
                        rep.incoherences.push_back({t.name, {a.name, b.name}});
            }
        } else if (t.shape == "total-nonexist") {
            std::vector<Defect> sink;
            auto path_sig = [&](const Path &p) {
                return path_to_string(closed.resolve_path(p, sink, "sig"));
            };
            for (const auto &ne : closed.constraints()) {
                if (ne.ctype != Ctype::Nonexistence || ne.operands.paths.size() != 2 ||
                    ne.origin != ConstraintOrigin::Declared)
                    continue;
                const ConstraintDef *tf = nullptr, *tg = nullptr;
                for (const auto &tt : closed.constraints()) {
                    if (tt.ctype != Ctype::Totality || tt.operands.paths.size() != 1) continue;
                    std::string sig = path_sig(tt.operands.paths[0]);
                    if (sig == path_sig(ne.operands.paths[0])) tf = &tt;
                    if (sig == path_sig(ne.operands.paths[1])) tg = &tt;
                }
                if (tf && tg)
                    rep.incoherences.push_back({t.name, {tf->name, ne.name, tg->name}});
            }
        } else if (t.shape == "only-key") {
            for (const auto &bj : closed.constraints()) {
                if (bj.ctype != Ctype::Bijectivity || bj.operands.paths.size() != 1 ||
                    bj.origin != ConstraintOrigin::Declared)
                    continue;
                std::string sig = canonical_signature(closed, bj.ctype, bj.operands);
                for (const auto &np : closed.constraints()) {
                    if (np.ctype != Ctype::Nonprimeness) continue;
                    if (canonical_signature(closed, bj.ctype, np.operands) != sig) continue;
                    // is the bijective mapping its set's only declared key?
                    std::vector<Defect> sink;
                    Path f = closed.resolve_path(bj.operands.paths[0], sink, "sig");
                    if (f.empty()) continue;
                    const std::string &domain = f.front().qualifier;
                    bool other_key = false;
                    for (const auto &k : closed.constraints()) {
                        bool keyish = k.ctype == Ctype::Key ||
                                      k.ctype == Ctype::OneToOneness ||
                                      k.ctype == Ctype::Bijectivity;
                        if (!keyish || k.name == bj.name) continue;
                        if (k.operands.paths.empty()) continue;
                        Path p0 = closed.resolve_path(k.operands.paths[0], sink, "sig");
                        if (!p0.empty() && p0.front().qualifier == domain &&
                            canonical_signature(closed, bj.ctype, k.operands) != sig)
                            other_key = true;
                    }
                    if (!other_key)
                        rep.incoherences.push_back({t.name, {bj.name, np.name}});
                }
            }
        }
    }
}

} // namespace

AnalysisReport detect_incoherence(const Catalog &c, const TheoremBase &base) {
    AnalysisReport rep;
    Catalog closed = closure(c, &rep, base);
    match_incoherences(closed, base, rep);

    // satisfiability probe per pair-level group: pattern-less unsatisfiable
    // combinations still count; empty-relation-only models become warnings
    std::set<std::string> flagged;
    for (const auto &inc : rep.incoherences)
        for (const auto &n : inc.constraints) flagged.insert(n);
    for (auto &[key, g] : collect_groups(closed, /*declared_only=*/true)) {
        std::vector<Prop> props;
        std::vector<std::string> names;
        bool any_flagged = false;
        for (const auto &[abbrev, members] : g.tags) {
            if (auto p = prop_of_abbrev(abbrev)) {
                props.push_back(*p);
                for (const auto &n : members) {
                    names.push_back(n);
                    any_flagged = any_flagged || flagged.count(n);
                }
            }
        }
        if (props.size() < 2 || any_flagged) continue;
        auto any = oracle::find_model(props, 4, ExecMode::Serial);
        if (!any.found) {
            rep.incoherences.push_back({"unsatisfiable-combination", names});
            continue;
        }
        auto nonempty = oracle::find_model(props, 4, ExecMode::Serial, true);
        if (!nonempty.found)
            rep.warnings.push_back(
                {"combination is satisfiable only by the empty relation", names});
    }
    return rep;
}

Catalog minimize(const Catalog &c, std::vector<Redundancy> *removed,
                 const TheoremBase &base) {
    if (!detect_incoherence(c, base).incoherences.empty())
        throw Error(Errc::IncoherentInput, "minimize requires a coherent constraint set");
    Catalog cur = c;
    bool again = true;
    while (again) {
        again = false;
        for (const auto &k : cur.constraints()) {
            if (k.origin != ConstraintOrigin::Declared) continue;
            Catalog without = cur;
            without.remove_constraint(k.name);
            Catalog closed = closure(without, nullptr, base);
            std::string sig = canonical_signature(closed, k.ctype, k.operands);
            const ConstraintDef *evidence = nullptr;
            for (const auto &d : closed.constraints())
                if (d.ctype == k.ctype &&
                    canonical_signature(closed, k.ctype, d.operands) == sig) {
                    evidence = &d;
                    break;
                }
            if (evidence) {
                if (removed)
                    removed->push_back(
                        {evidence->derived_by.empty() ? "declared-duplicate"
                                                      : evidence->derived_by,
                         k.name});
                cur = without;
                again = true;
                break;
            }
        }
    }
    return cur;
}

// ---------------------------------------------------------------------------
// Certification

Certificate oracle_certify(const Theorem &t, int max_carrier, ExecMode mode) {
    if (t.shape != "pair")
        throw Error(Errc::UnsupportedPattern,
                    t.name + " is not a pair-level theorem; use its dedicated enumeration");
    std::vector<Prop> premises;
    for (const auto &p : t.premise) {
        auto prop = prop_of_abbrev(p);
        if (!prop) throw Error(Errc::UnsupportedPattern, t.name + ": unknown property " + p);
        premises.push_back(*prop);
    }
    Certificate cert{t.name, false, "relations", 0, ""};
    if (t.kind == Theorem::Kind::Redundancy) {
        auto conclusion = prop_of_abbrev(t.conclusion);
        if (!conclusion)
            throw Error(Errc::UnsupportedPattern,
                        t.name + ": unknown property " + t.conclusion);
        auto res =
            oracle::find_implication_counterexample(premises, *conclusion, max_carrier, mode);
        cert.models_checked = res.checked;
        cert.certified = !res.found;
        if (res.found)
            cert.counterexample =
                oracle::BitRel{res.carrier, res.bits}.to_string() + " satisfies the premises";
    } else {
        auto res = oracle::find_model(premises, max_carrier, mode);
        cert.models_checked = res.checked;
        cert.certified = !res.found;
        if (res.found)
            cert.counterexample =
                oracle::BitRel{res.carrier, res.bits}.to_string() + " is a model";
    }
    return cert;
}

namespace {

// Dedicated exhaustive enumerations for the non-pair shapes. Partial
// functions over a carrier of size n are encoded base (n+1): digit 0 is
// null, digit v+1 maps to element v.

struct PartialFn {
    int n;
    std::vector<int> img; // -1 = null

    bool total() const {
        for (int v : img)
            if (v < 0) return false;
        return true;
    }
    bool one2one() const {
        for (int x = 0; x < n; ++x)
            for (int y = x + 1; y < n; ++y)
                if (img[x] >= 0 && img[x] == img[y]) return false;
        return true;
    }
    bool onto() const {
        std::vector<bool> hit(n, false);
        for (int v : img)
            if (v >= 0) hit[v] = true;
        for (bool b : hit)
            if (!b) return false;
        return true;
    }
    bool idem() const { // plain: fails on any null
        for (int x = 0; x < n; ++x) {
            if (img[x] < 0) return false;
            if (img[img[x]] != img[x]) return false;
        }
        return true;
    }
    bool antiidem() const { // distinct nulls never collide
        for (int x = 0; x < n; ++x) {
            if (img[x] < 0) continue;
            if (img[img[x]] == img[x]) return false;
        }
        return true;
    }
};

template <typename Fn> void each_partial_fn(int n, Fn &&fn) {
    std::vector<int> img(n, -1);
    uint64_t count = 1;
    for (int i = 0; i < n; ++i) count *= n + 1;
    for (uint64_t code = 0; code < count; ++code) {
        uint64_t c = code;
        for (int i = 0; i < n; ++i) {
            img[i] = static_cast<int>(c % (n + 1)) - 1;
            c /= n + 1;
        }
        fn(PartialFn{n, img});
    }
}

Certificate certify_dedicated(const Theorem &t) {
    Certificate cert{t.name, true, "dedicated", 0, ""};
    auto fail = [&](const std::string &msg) {
        cert.certified = false;
        if (cert.counterexample.empty()) cert.counterexample = msg;
    };

    if (t.shape == "incl-antisym") {
        // all pairs of subsets of {0..3}
        for (int s = 0; s < 16; ++s)
            for (int u = 0; u < 16; ++u) {
                cert.models_checked++;
                bool incl_st = (s & ~u) == 0, incl_ts = (u & ~s) == 0;
                if (incl_st && incl_ts && s != u) fail("subset pair violates antisymmetry");
            }
    } else if (t.shape == "disj-union") {
        for (int s = 0; s < 8; ++s)
            for (int u = 0; u < 8; ++u)
                for (int w = 0; w < 8; ++w) {
                    cert.models_checked++;
                    bool disj = (s & u) == 0, uni = w == (s | u);
                    bool dsum = uni && disj;
                    if (disj && uni && !dsum) fail("direct sum not implied");
                }
    } else if (t.shape == "one2one-onto") {
        for (int n = 1; n <= 3; ++n)
            each_partial_fn(n, [&](const PartialFn &f) {
                cert.models_checked++;
                bool bij = f.one2one() && f.onto();
                if (f.one2one() && f.onto() && !bij) fail("bijectivity not implied");
            });
    } else if (t.shape == "exist-total") {
        for (int n = 1; n <= 3; ++n)
            each_partial_fn(n, [&](const PartialFn &f) {
                each_partial_fn(n, [&](const PartialFn &g) {
                    cert.models_checked++;
                    bool exist = true; // g(x) defined implies f(x) defined
                    for (int x = 0; x < n; ++x)
                        if (g.img[x] >= 0 && f.img[x] < 0) exist = false;
                    if (exist && g.total() && !f.total())
                        fail("existence with total premise leaves f partial");
                });
            });
    } else if (t.shape == "idem-clash") {
        for (int n = 1; n <= 3; ++n)
            each_partial_fn(n, [&](const PartialFn &f) {
                cert.models_checked++;
                if (f.idem() && f.antiidem())
                    fail("a function satisfies both idempotency and anti-idempotency");
            });
    } else if (t.shape == "comm-clash") {
        // two partial functions into a two-point codomain over carriers 1..3;
        // commutativity (both defined and equal everywhere) and
        // anti-commutativity can never both hold on a nonempty carrier
        for (int n = 1; n <= 3; ++n) {
            int vals = 3; // null, 0, 1
            uint64_t count = 1;
            for (int i = 0; i < 2 * n; ++i) count *= vals;
            for (uint64_t code = 0; code < count; ++code) {
                cert.models_checked++;
                uint64_t c = code;
                std::vector<int> p(n), q(n);
                for (int i = 0; i < n; ++i) { p[i] = int(c % vals) - 1; c /= vals; }
                for (int i = 0; i < n; ++i) { q[i] = int(c % vals) - 1; c /= vals; }
                bool comm = true, anticomm = true;
                for (int x = 0; x < n; ++x) {
                    bool defined = p[x] >= 0 && q[x] >= 0;
                    bool equal = defined && p[x] == q[x];
                    comm = comm && equal;
                    anticomm = anticomm && !equal;
                }
                if (comm && anticomm) fail("diagram satisfies both commutativity variants");
            }
        }
    } else if (t.shape == "total-nonexist") {
        for (int n = 1; n <= 3; ++n)
            each_partial_fn(n, [&](const PartialFn &f) {
                each_partial_fn(n, [&](const PartialFn &g) {
                    cert.models_checked++;
                    bool nonexist = true; // g(x) defined implies f(x) null
                    for (int x = 0; x < n; ++x)
                        if (g.img[x] >= 0 && f.img[x] >= 0) nonexist = false;
                    if (f.total() && g.total() && nonexist)
                        fail("total f and g coexist with nonexistence");
                });
            });
    } else if (t.shape == "only-key") {
        // schema-level: one-to-oneness names {f} a key while nonprimeness
        // forbids f in any key; jointly violated on every instance
        cert.models_checked = 1;
    } else {
        cert.certified = false;
        cert.counterexample = "unknown shape " + t.shape;
    }
    return cert;
}

} // namespace

std::vector<Certificate> certify_all(const TheoremBase &base, int max_carrier, ExecMode mode) {
    std::vector<Certificate> out;
    for (const auto &t : base.items) {
        if (t.shape == "pair")
            out.push_back(oracle_certify(t, max_carrier, mode));
        else
            out.push_back(certify_dedicated(t));
    }
    return out;
}

} // namespace emdm
