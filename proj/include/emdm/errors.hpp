#pragma once

#include <stdexcept>
#include <string>

namespace emdm {

enum class Errc {
    EmptyName,
    DuplicateName,
    UnknownReference,
    AmbiguousReference,
    DependentsExist,
    UnknownConstraint,
    IllFormedCatalog,
    IncoherentInput,
    TooManyMappings,
    NotStratified,
    UnsupportedPattern,
    UnsupportedVersion,
    Corrupt,
    Io,
};

const char *errc_name(Errc c);

/// Thrown by catalog/store/compile operations on contract violations.
/// Data defects (instance violations, schema defects) are returned as data,
/// not thrown.
struct Error : std::runtime_error {
    Errc code;
    Error(Errc c, const std::string &msg)
        : std::runtime_error(std::string(errc_name(c)) + ": " + msg), code(c) {}
};

/// One well-formedness or program defect. Defects are data: collecting them
/// never throws.
struct Defect {
    std::string kind;    // UnknownReference, KindMismatch, ArityMismatch, ...
    std::string subject; // the set/mapping/constraint/rule concerned
    std::string message;

    bool operator==(const Defect &) const = default;
};

} // namespace emdm
