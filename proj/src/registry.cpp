#include "emdm/registry.hpp"

#include <array>

namespace emdm {

const char *category_name(Ccategory c) {
    switch (c) {
    case Ccategory::Set: return "set";
    case Ccategory::Mapping: return "mapping";
    case Ccategory::Object: return "object";
    case Ccategory::Relational: return "relational";
    }
    return "?";
}

const char *subcategory_name(Csubcategory s) {
    switch (s) {
    case Csubcategory::GeneralSet: return "general set";
    case Csubcategory::DyadicRelation: return "dyadic relation";
    case Csubcategory::GeneralMapping: return "general mapping";
    case Csubcategory::Autofunction: return "autofunction";
    case Csubcategory::GeneralFunctionProduct: return "general function product";
    case Csubcategory::HomogeneousBinaryFunctionProduct:
        return "homogeneous binary function product";
    case Csubcategory::FunctionDiagram: return "function diagram";
    case Csubcategory::Object: return "object";
    case Csubcategory::Relational: return "relational";
    }
    return "?";
}

namespace {

constexpr Ccategory SET = Ccategory::Set;
constexpr Ccategory MAP = Ccategory::Mapping;
constexpr Ccategory OBJ = Ccategory::Object;
constexpr Ccategory REL = Ccategory::Relational;

constexpr Csubcategory GS = Csubcategory::GeneralSet;
constexpr Csubcategory DR = Csubcategory::DyadicRelation;
constexpr Csubcategory GM = Csubcategory::GeneralMapping;
constexpr Csubcategory AF = Csubcategory::Autofunction;
constexpr Csubcategory FP = Csubcategory::GeneralFunctionProduct;
constexpr Csubcategory HB = Csubcategory::HomogeneousBinaryFunctionProduct;
constexpr Csubcategory FD = Csubcategory::FunctionDiagram;
constexpr Csubcategory OB = Csubcategory::Object;
constexpr Csubcategory RC = Csubcategory::Relational;

// Fundamental flags follow the conventional inventory: inclusion, dyadic
// reflexivity, one-to-oneness, nonprimeness, ontoness, default value, minimal
// one-to-oneness, existence, nonexistence, diagram commutativity,
// anti-commutativity, generalized commutativity, the nine plain HBFP types,
// and the object constraint — 22 in total; the other 39 (E)MDM types are
// derivable from these.
constexpr std::array<ConstraintTypeInfo, kCtypeCount> kRegistry = {{
    {Ctype::Inclusion, "inclusion", "incl", SET, GS, true},
    {Ctype::SetEquality, "set_equality", "seteq", SET, GS, false},
    {Ctype::Disjointness, "disjointness", "disj", SET, GS, false},
    {Ctype::SetUnion, "set_union", "union", SET, GS, false},
    {Ctype::DirectSum, "direct_sum", "dsum", SET, GS, false},

    {Ctype::DrReflexivity, "dr_reflexivity", "refl", SET, DR, true},
    {Ctype::DrIrreflexivity, "dr_irreflexivity", "irrefl", SET, DR, false},
    {Ctype::DrSymmetry, "dr_symmetry", "sym", SET, DR, false},
    {Ctype::DrAsymmetry, "dr_asymmetry", "asym", SET, DR, false},
    {Ctype::DrTransitivity, "dr_transitivity", "trans", SET, DR, false},
    {Ctype::DrIntransitivity, "dr_intransitivity", "intrans", SET, DR, false},
    {Ctype::DrEuclideanity, "dr_euclideanity", "eucl", SET, DR, false},
    {Ctype::DrInEuclideanity, "dr_ineuclideanity", "ineucl", SET, DR, false},
    {Ctype::DrEquivalence, "dr_equivalence", "equiv", SET, DR, false},
    {Ctype::DrAcyclicity, "dr_acyclicity", "acyclic", SET, DR, false},
    {Ctype::DrConnectivity, "dr_connectivity", "conn", SET, DR, false},

    {Ctype::Totality, "totality", "total", MAP, GM, false},
    {Ctype::Nonprimeness, "nonprimeness", "nonprime", MAP, GM, true},
    {Ctype::OneToOneness, "one_to_oneness", "one2one", MAP, GM, true},
    {Ctype::Ontoness, "ontoness", "onto", MAP, GM, true},
    {Ctype::Bijectivity, "bijectivity", "bijective", MAP, GM, false},
    {Ctype::DefaultValue, "default_value", "default", MAP, GM, true},

    {Ctype::AfReflexivity, "af_reflexivity", "refl", MAP, AF, false},
    {Ctype::AfIrreflexivity, "af_irreflexivity", "irrefl", MAP, AF, false},
    {Ctype::AfNullReflexivity, "af_null_reflexivity", "nullrefl", MAP, AF, false},
    {Ctype::AfSymmetry, "af_symmetry", "sym", MAP, AF, false},
    {Ctype::AfAsymmetry, "af_asymmetry", "asym", MAP, AF, false},
    {Ctype::AfNullSymmetry, "af_null_symmetry", "nullsym", MAP, AF, false},
    {Ctype::AfIdempotency, "af_idempotency", "idem", MAP, AF, false},
    {Ctype::AfAntiIdempotency, "af_anti_idempotency", "antiidem", MAP, AF, false},
    {Ctype::AfNullIdempotency, "af_null_idempotency", "nullidem", MAP, AF, false},
    {Ctype::AfAcyclicity, "af_acyclicity", "acyclic", MAP, AF, false},
    {Ctype::AfCanonicalSurjectivity, "af_canonical_surjectivity", "cansurj", MAP, AF, false},

    {Ctype::HbfpIrreflexivity, "hbfp_irreflexivity", "irrefl", MAP, HB, true},
    {Ctype::HbfpNullReflexivity, "hbfp_null_reflexivity", "nullrefl", MAP, HB, false},
    {Ctype::HbfpSymmetry, "hbfp_symmetry", "sym", MAP, HB, true},
    {Ctype::HbfpAsymmetry, "hbfp_asymmetry", "asym", MAP, HB, true},
    {Ctype::HbfpNullSymmetry, "hbfp_null_symmetry", "nullsym", MAP, HB, false},
    {Ctype::HbfpTransitivity, "hbfp_transitivity", "trans", MAP, HB, true},
    {Ctype::HbfpIntransitivity, "hbfp_intransitivity", "intrans", MAP, HB, true},
    {Ctype::HbfpNullTransitivity, "hbfp_null_transitivity", "nulltrans", MAP, HB, false},
    {Ctype::HbfpEuclideanity, "hbfp_euclideanity", "eucl", MAP, HB, true},
    {Ctype::HbfpInEuclideanity, "hbfp_ineuclideanity", "ineucl", MAP, HB, true},
    {Ctype::HbfpNullEuclideanity, "hbfp_null_euclideanity", "nulleucl", MAP, HB, false},
    {Ctype::HbfpEquivalence, "hbfp_equivalence", "equiv", MAP, HB, false},
    {Ctype::HbfpAcyclicity, "hbfp_acyclicity", "acyclic", MAP, HB, true},
    {Ctype::HbfpConnectivity, "hbfp_connectivity", "conn", MAP, HB, true},

    {Ctype::Key, "minimal_one_to_oneness", "key", MAP, FP, true},
    {Ctype::Existence, "existence", "exist", MAP, FP, true},
    {Ctype::Nonexistence, "nonexistence", "nonexist", MAP, FP, true},

    {Ctype::FdCommutativity, "fd_commutativity", "comm", MAP, FD, true},
    {Ctype::FdAntiCommutativity, "fd_anti_commutativity", "anticomm", MAP, FD, true},
    {Ctype::FdLocalCommutativity, "fd_local_commutativity", "localcomm", MAP, FD, false},
    {Ctype::FdLocalAntiCommutativity, "fd_local_anti_commutativity", "localanticomm", MAP, FD,
     false},
    {Ctype::FdLocalAcyclicity, "fd_local_acyclicity", "localacyclic", MAP, FD, false},
    {Ctype::FdLocalSymmetry, "fd_local_symmetry", "localsym", MAP, FD, false},
    {Ctype::FdLocalAsymmetry, "fd_local_asymmetry", "localasym", MAP, FD, false},
    {Ctype::FdLocalIdempotency, "fd_local_idempotency", "localidem", MAP, FD, false},
    {Ctype::FdLocalAntiIdempotency, "fd_local_anti_idempotency", "localantiidem", MAP, FD, false},
    {Ctype::FdGeneralizedCommutativity, "fd_generalized_commutativity", "gencomm", MAP, FD, true},

    {Ctype::ObjectConstraint, "object_constraint", "horn", OBJ, OB, true},

    {Ctype::RelDomain, "rel_domain", "domain", REL, RC, false},
    {Ctype::RelReferentialIntegrity, "rel_referential_integrity", "refint", REL, RC, false},
}};

} // namespace

std::span<const ConstraintTypeInfo> registry() { return kRegistry; }

const ConstraintTypeInfo &ctype_info(Ctype t) { return kRegistry[static_cast<size_t>(t)]; }

std::optional<Ctype> ctype_by_name(const std::string &name) {
    for (const auto &e : kRegistry)
        if (name == e.name) return e.tag;
    return std::nullopt;
}

std::vector<Ctype> ctypes_by_abbrev(const std::string &abbrev) {
    std::vector<Ctype> out;
    for (const auto &e : kRegistry)
        if (abbrev == e.abbrev) out.push_back(e.tag);
    return out;
}

RegistryCounts registry_counts() {
    RegistryCounts c;
    for (const auto &e : kRegistry) {
        c.total++;
        c.per_subcategory[static_cast<int>(e.subcategory)]++;
        switch (e.category) {
        case Ccategory::Set: c.set_category++; break;
        case Ccategory::Mapping: c.mapping_category++; break;
        case Ccategory::Object: c.object_category++; break;
        case Ccategory::Relational: c.relational_category++; break;
        }
        if (e.category != Ccategory::Relational) {
            c.emdm_total++;
            if (e.fundamental)
                c.fundamental++;
            else
                c.derived++;
        }
    }
    return c;
}

} // namespace emdm
