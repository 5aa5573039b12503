#pragma once

#include "emdm/catalog.hpp"
#include "emdm/instance.hpp"

#include <string>

namespace emdm::store {

inline constexpr int kSchemaVersion = 1;

std::string catalog_to_json_text(const Catalog &catalog);
Catalog catalog_from_json_text(const std::string &text);

/// Versioned JSON persistence. load(save(c)) == c. Throws Io,
/// UnsupportedVersion, Corrupt (with byte offset).
void save_catalog(const Catalog &catalog, const std::string &path);
Catalog load_catalog(const std::string &path);

/// The catalog of catalogs: a 13-set schema (SETS, FUNCTIONS, REL_SORTS,
/// CONSTRAINTSET, CONSTRAINT_TYPES, CONSTRAINT_CATEGS, CONSTRAINT_SUBCATEGS,
/// IMPLICATIONS, THEOREMS, PROGRAMS, PREDICATES, INF_RULES, DIAGRAMS) written
/// in the engine's own model, with structural functions among them and
/// totality/key constraints. validate() and detect_incoherence() are clean.
const Catalog &meta_schema();

/// Expresses a catalog as an instance of the meta-schema: one SETS row per
/// set, one FUNCTIONS row per mapping, one CONSTRAINTSET row per constraint,
/// plus the fixed registry rows (63 CONSTRAINT_TYPES, 4 categories, 9
/// subcategories), the theorem base, and per-program predicates and rules.
InstanceDB reflect(const Catalog &catalog);

} // namespace emdm::store
