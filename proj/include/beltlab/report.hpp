#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace beltlab::report {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kSchemaVersion = 1;

struct ResultEntry {
    std::string name;
    double value = 0.0;
    std::optional<double> oracle;
    std::string provenance; // where the oracle value comes from, if any
    double tolerance = 0.0;
    bool pass = true;
};

struct RunReport {
    std::string command;
    std::string mesh_desc;
    std::vector<ResultEntry> results;
    double timing_ms = 0.0;

    bool all_pass() const;
    nlohmann::json to_json() const;
    static RunReport from_json(const nlohmann::json& j);
    void write(const std::string& path) const;
};

} // namespace beltlab::report
