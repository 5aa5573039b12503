#include "emdm/bitrel.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace emdm::oracle {

const char *prop_name(Prop p) {
    switch (p) {
    case Prop::Reflexive: return "refl";
    case Prop::Irreflexive: return "irrefl";
    case Prop::Symmetric: return "sym";
    case Prop::Asymmetric: return "asym";
    case Prop::Transitive: return "trans";
    case Prop::Intransitive: return "intrans";
    case Prop::Euclidean: return "eucl";
    case Prop::InEuclidean: return "ineucl";
    case Prop::Equivalence: return "equiv";
    case Prop::Acyclic: return "acyclic";
    case Prop::Connected: return "conn";
    }
    return "?";
}

std::optional<Prop> prop_by_name(const std::string &name) {
    for (int i = 0; i < kPropCount; ++i)
        if (name == prop_name(static_cast<Prop>(i))) return static_cast<Prop>(i);
    return std::nullopt;
}

std::string BitRel::to_string() const {
    std::string out = "{";
    bool first = true;
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            if (has(x, y)) {
                if (!first) out += ", ";
                first = false;
                out += "(" + std::to_string(x + 1) + "," + std::to_string(y + 1) + ")";
            }
    return out + "} on {1.." + std::to_string(n) + "}";
}

bool holds(Prop p, const BitRel &r) {
    const int n = r.n;
    switch (p) {
    case Prop::Reflexive:
        for (int x = 0; x < n; ++x)
            if (!r.has(x, x)) return false;
        return true;
    case Prop::Irreflexive:
        for (int x = 0; x < n; ++x)
            if (r.has(x, x)) return false;
        return true;
    case Prop::Symmetric:
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y)
                if (r.has(x, y) && !r.has(y, x)) return false;
        return true;
    case Prop::Asymmetric:
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y)
                if (r.has(x, y) && r.has(y, x)) return false;
        return true;
    case Prop::Transitive:
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y)
                for (int z = 0; z < n; ++z)
                    if (r.has(x, y) && r.has(y, z) && !r.has(x, z)) return false;
        return true;
    case Prop::Intransitive:
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y)
                for (int z = 0; z < n; ++z)
                    if (r.has(x, y) && r.has(y, z) && r.has(x, z)) return false;
        return true;
    case Prop::Euclidean:
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y)
                for (int z = 0; z < n; ++z)
                    if (r.has(x, y) && r.has(x, z) && !r.has(y, z)) return false;
        return true;
    case Prop::InEuclidean:
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y)
                for (int z = 0; z < n; ++z)
                    if (r.has(x, y) && r.has(x, z) && r.has(y, z)) return false;
        return true;
    case Prop::Equivalence:
        return holds(Prop::Reflexive, r) && holds(Prop::Symmetric, r) &&
               holds(Prop::Transitive, r);
    case Prop::Acyclic: {
        // Warshall closure; a cycle exists iff some x reaches itself.
        bool reach[8][8] = {};
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y) reach[x][y] = r.has(x, y);
        for (int k = 0; k < n; ++k)
            for (int x = 0; x < n; ++x)
                for (int y = 0; y < n; ++y)
                    if (reach[x][k] && reach[k][y]) reach[x][y] = true;
        for (int x = 0; x < n; ++x)
            if (reach[x][x]) return false;
        return true;
    }
    case Prop::Connected:
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y)
                if (x != y && !r.has(x, y) && !r.has(y, x)) return false;
        return true;
    }
    return false;
}

bool holds_all(std::span<const Prop> ps, const BitRel &r) {
    for (Prop p : ps)
        if (!holds(p, r)) return false;
    return true;
}

namespace {

/// Exhaustive scan over all relations on carriers 1..max_n, ascending. The
/// predicate marks hits; the first hit in enumeration order wins. The
/// parallel kernel partitions each carrier's mask range across threads and
/// reduces to the smallest hit mask, which keeps results identical to the
/// serial reference.
template <typename Pred>
SearchResult scan(int max_n, ExecMode mode, Pred pred) {
    SearchResult res;
    for (int n = 1; n <= max_n; ++n) {
        const uint64_t count = uint64_t(1) << (n * n);
        uint64_t hit = count; // sentinel: no hit
        if (mode == ExecMode::Parallel) {
#ifdef _OPENMP
            int64_t icount = static_cast<int64_t>(count);
#pragma omp parallel for schedule(static) reduction(min : hit)
            for (int64_t mask = 0; mask < icount; ++mask) {
                if (pred(BitRel{n, static_cast<uint64_t>(mask)}))
                    hit = hit < static_cast<uint64_t>(mask) ? hit
                                                            : static_cast<uint64_t>(mask);
            }
#else
            mode = ExecMode::Serial;
#endif
        }
        if (mode == ExecMode::Serial) {
            for (uint64_t mask = 0; mask < count; ++mask)
                if (pred(BitRel{n, mask})) { hit = mask; break; }
        }
        if (hit < count) {
            res.found = true;
            res.carrier = n;
            res.bits = hit;
            res.checked += hit + 1;
            return res;
        }
        res.checked += count;
    }
    return res;
}

} // namespace

SearchResult find_implication_counterexample(std::span<const Prop> premises, Prop conclusion,
                                             int max_n, ExecMode mode) {
    return scan(max_n, mode, [&](const BitRel &r) {
        return holds_all(premises, r) && !holds(conclusion, r);
    });
}

SearchResult find_model(std::span<const Prop> props, int max_n, ExecMode mode,
                        bool nonempty_only) {
    return scan(max_n, mode, [&](const BitRel &r) {
        if (nonempty_only && r.empty()) return false;
        return holds_all(props, r);
    });
}

} // namespace emdm::oracle
