#pragma once

#include <string>
#include <vector>

namespace emdm {

/// One entry of the theorem base. The shape picks both the matching logic and
/// the certification strategy:
///   pair           premises/conclusion are pair-level property abbrevs on a
///                  shared operand; certified by exhaustive relation
///                  enumeration (oracle_certify)
///   incl-antisym   incl(A,B), incl(B,A)            => seteq(A,B)
///   disj-union     disj(A,B), union(U,A,B)         => dsum(U,A,B)
///   one2one-onto   one2one(f), onto(f)             => bijective(f)
///   exist-total    exist(f,g), total(g)            => total(f)
///   idem-clash     idem(f), antiidem(f)            => contradiction
///   comm-clash     comm(p,q), anticomm(p,q)        => contradiction
///   total-nonexist total(f), nonexist(f,g), total(g) => contradiction
///   only-key       bijective(f), nonprime(f), f the set's only key
///                                                  => contradiction
/// Non-pair shapes are certified by dedicated small-instance enumerations.
struct Theorem {
    enum class Kind { Redundancy, Incoherence };

    std::string name;
    Kind kind = Kind::Redundancy;
    std::string shape;
    std::vector<std::string> premise;
    std::string conclusion; // empty for incoherence theorems
    int order = 0;

    bool operator==(const Theorem &) const = default;
};

struct TheoremBase {
    std::vector<Theorem> items; // kept sorted by apply order

    /// The built-in base shipped with the engine.
    static const TheoremBase &builtin();

    static TheoremBase from_json_text(const std::string &text);
    std::string to_json_text() const;

    /// Parses and certifies; certificates are memoized per content hash, so
    /// reloading an unchanged base is free. Throws on a failed certificate.
    static TheoremBase load_verified(const std::string &json_text);
};

} // namespace emdm
