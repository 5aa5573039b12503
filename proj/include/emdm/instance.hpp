#pragma once

#include "emdm/value.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace emdm {

/// One row of an object set: engine-assigned positive surrogate id plus one
/// value per mapping/role column. Missing columns read as Null.
struct Row {
    int64_t id = 0;
    std::map<std::string, Value> values;

    const Value &get(const std::string &column) const {
        static const Value kNull;
        auto it = values.find(column);
        return it == values.end() ? kNull : it->second;
    }

    bool operator==(const Row &) const = default;
};

struct SetInstance {
    std::vector<Row> rows;

    const Row *find(int64_t id) const {
        for (const auto &r : rows)
            if (r.id == id) return &r;
        return nullptr;
    }
    bool has_id(int64_t id) const { return find(id) != nullptr; }

    bool operator==(const SetInstance &) const = default;
};

struct InstanceDB {
    std::map<std::string, SetInstance> sets;

    const SetInstance *find(const std::string &set) const {
        auto it = sets.find(set);
        return it == sets.end() ? nullptr : &it->second;
    }

    bool operator==(const InstanceDB &) const = default;
};

} // namespace emdm
