#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace emdm {

/// All 63 constraint types: the 61 (E)MDM ones plus the two relational ones
/// (domain and referential integrity) that never need declaring and are
/// checked implicitly on every instance.
enum class Ctype : uint8_t {
    // general set (5)
    Inclusion,
    SetEquality,
    Disjointness,
    SetUnion,
    DirectSum,
    // dyadic relation (11)
    DrReflexivity,
    DrIrreflexivity,
    DrSymmetry,
    DrAsymmetry,
    DrTransitivity,
    DrIntransitivity,
    DrEuclideanity,
    DrInEuclideanity,
    DrEquivalence,
    DrAcyclicity,
    DrConnectivity,
    // general mapping (6)
    Totality,
    Nonprimeness,
    OneToOneness,
    Ontoness,
    Bijectivity,
    DefaultValue,
    // autofunction (11)
    AfReflexivity,
    AfIrreflexivity,
    AfNullReflexivity,
    AfSymmetry,
    AfAsymmetry,
    AfNullSymmetry,
    AfIdempotency,
    AfAntiIdempotency,
    AfNullIdempotency,
    AfAcyclicity,
    AfCanonicalSurjectivity,
    // homogeneous binary function product (14)
    HbfpIrreflexivity,
    HbfpNullReflexivity,
    HbfpSymmetry,
    HbfpAsymmetry,
    HbfpNullSymmetry,
    HbfpTransitivity,
    HbfpIntransitivity,
    HbfpNullTransitivity,
    HbfpEuclideanity,
    HbfpInEuclideanity,
    HbfpNullEuclideanity,
    HbfpEquivalence,
    HbfpAcyclicity,
    HbfpConnectivity,
    // general function product (3)
    Key,
    Existence,
    Nonexistence,
    // function diagram (10)
    FdCommutativity,
    FdAntiCommutativity,
    FdLocalCommutativity,
    FdLocalAntiCommutativity,
    FdLocalAcyclicity,
    FdLocalSymmetry,
    FdLocalAsymmetry,
    FdLocalIdempotency,
    FdLocalAntiIdempotency,
    FdGeneralizedCommutativity,
    // object (1)
    ObjectConstraint,
    // relational (2)
    RelDomain,
    RelReferentialIntegrity,

    COUNT,
};

inline constexpr size_t kCtypeCount = static_cast<size_t>(Ctype::COUNT);

enum class Ccategory { Set, Mapping, Object, Relational };
enum class Csubcategory {
    GeneralSet,
    DyadicRelation,
    GeneralMapping,
    Autofunction,
    GeneralFunctionProduct,
    HomogeneousBinaryFunctionProduct,
    FunctionDiagram,
    Object,
    Relational,
};

const char *category_name(Ccategory c);
const char *subcategory_name(Csubcategory s);

struct ConstraintTypeInfo {
    Ctype tag;
    const char *name;   // stable identifier, e.g. "dr_symmetry"
    const char *abbrev; // DSL keyword, e.g. "sym" (shared across subcategories)
    Ccategory category;
    Csubcategory subcategory;
    bool fundamental; // meaningful for the 61 (E)MDM tags only
};

std::span<const ConstraintTypeInfo> registry();
const ConstraintTypeInfo &ctype_info(Ctype t);
std::optional<Ctype> ctype_by_name(const std::string &name);
/// Abbreviations are shared across subcategories (sym, acyclic, ...); all
/// matches, in registry order.
std::vector<Ctype> ctypes_by_abbrev(const std::string &abbrev);

struct RegistryCounts {
    int set_category = 0;
    int mapping_category = 0;
    int object_category = 0;
    int relational_category = 0;
    int emdm_total = 0; // 61
    int total = 0;      // 63
    int fundamental = 0;
    int derived = 0; // among the 61 (E)MDM tags
    int per_subcategory[9] = {0};
    int subcategories = 9;
};

RegistryCounts registry_counts();

} // namespace emdm
