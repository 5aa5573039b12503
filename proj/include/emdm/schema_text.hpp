#pragma once

#include "emdm/catalog.hpp"
#include "emdm/instance.hpp"

#include <optional>
#include <string>
#include <vector>

namespace emdm {

struct SourceSpan {
    int line = 1;   // 1-based
    int column = 1; // 1-based
    int length = 1;
    bool operator==(const SourceSpan &) const = default;
};

struct ParseError {
    SourceSpan span;
    std::string message;
    std::vector<std::string> expected;
    bool operator==(const ParseError &) const = default;
};

struct ParseResult {
    std::optional<Catalog> catalog; // set iff errors is empty
    std::vector<ParseError> errors;
};

/// Parses schema text (.emdm). Syntax only: unresolved names parse fine and
/// surface later as validate() defects. All-or-nothing: any error means no
/// catalog.
ParseResult parse_schema(std::string_view text);

/// Canonical text: declarations sorted by (kind, name), every mapping
/// reference fully qualified. parse(serialize(c)) == c for well-formed
/// catalogs. Throws IllFormedCatalog when validate() reports defects.
std::string serialize_schema(const Catalog &catalog);

struct InstanceError {
    std::string kind; // JsonSyntax, UnknownSet, UnknownColumn, TypeMismatch,
                      // DanglingRef, DuplicateId, BadId
    std::string set;
    int64_t row = 0;
    std::string column;
    std::string message;
};

struct InstanceParseResult {
    std::optional<InstanceDB> instance; // set iff errors is empty
    std::vector<InstanceError> errors;
};

/// Strict instance loading: rows typed against the catalog, domain
/// conformance and referential integrity enforced with set/row coordinates.
InstanceParseResult parse_instance(std::string_view json_text, const Catalog &catalog);

/// Deterministic JSON image of an instance (sets and columns sorted, rows by
/// id); the same format parse_instance reads.
std::string instance_to_json(const InstanceDB &db);

} // namespace emdm
