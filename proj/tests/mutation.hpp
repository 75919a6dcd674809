#pragma once

// Single-leaf mutations of a certificate: integers +1, other strings get a
// suffix, booleans flip.

#include "rankstab/certificate.hpp"

#include <regex>
#include <string>
#include <vector>

namespace mutation {

using rankstab::Json;

struct Mutant {
    std::string pointer;
    Json certificate;
};

// leaves steering only the search, and free text recorded verbatim
inline bool excluded(const std::string& pointer) {
    static const std::vector<std::string> skip = {"/inputs/seed", "/inputs/norm_bound", "/inputs/max_results"};
    for (const std::string& s : skip)
        if (pointer == s) return true;
    const std::string tail = "/provenance";
    return pointer.size() >= tail.size() && pointer.compare(pointer.size() - tail.size(), tail.size(), tail) == 0;
}

inline Json mutate_leaf(const Json& v) {
    static const std::regex integer("-?[0-9]+");
    if (v.is_boolean()) return !v.get<bool>();
    if (v.is_number_integer()) return v.get<long long>() + 1;
    if (v.is_string()) {
        const std::string s = v.get<std::string>();
        if (std::regex_match(s, integer)) return rankstab::Integer(rankstab::Integer(s) + 1).get_str();
        return s + "?";
    }
    return "?";
}

inline std::vector<Mutant> all_mutants(const Json& certificate) {
    std::vector<Mutant> out;
    const Json flat = certificate.flatten();
    for (auto it = flat.begin(); it != flat.end(); ++it) {
        if (excluded(it.key())) continue;
        Json copy = certificate;
        copy[Json::json_pointer(it.key())] = mutate_leaf(it.value());
        out.push_back({it.key(), std::move(copy)});
    }
    return out;
}

inline std::size_t eligible_leaves(const Json& certificate) {
    std::size_t n = 0;
    const Json flat = certificate.flatten();
    for (auto it = flat.begin(); it != flat.end(); ++it)
        if (!excluded(it.key())) ++n;
    return n;
}

}  // namespace mutation
