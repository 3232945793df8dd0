#include "beltlab/report.hpp"

#include <fstream>
#include <json.hpp>

#include "beltlab/common.hpp"

namespace beltlab::report {

bool RunReport::all_pass() const {
    for (const auto& r : results)
        if (!r.pass) return false;
    return true;
}

nlohmann::json RunReport::to_json() const {
    nlohmann::json j;
    j["version"] = kToolVersion;
    j["schema"] = kSchemaVersion;
    j["command"] = command;
    j["mesh"] = mesh_desc;
    j["timing_ms"] = timing_ms;
    j["results"] = nlohmann::json::array();
    for (const auto& r : results) {
        nlohmann::json e;
        e["name"] = r.name;
        e["value"] = r.value;
        if (r.oracle) e["oracle"] = *r.oracle;
        if (!r.provenance.empty()) e["provenance"] = r.provenance;
        e["tolerance"] = r.tolerance;
        e["pass"] = r.pass;
        j["results"].push_back(e);
    }
    return j;
}

RunReport RunReport::from_json(const nlohmann::json& j) {
    RunReport r;
    r.command = j.at("command").get<std::string>();
    r.mesh_desc = j.value("mesh", "");
    r.timing_ms = j.value("timing_ms", 0.0);
    for (const auto& e : j.at("results")) {
        ResultEntry entry;
        entry.name = e.at("name").get<std::string>();
        entry.value = e.at("value").get<double>();
        if (e.contains("oracle")) entry.oracle = e["oracle"].get<double>();
        entry.provenance = e.value("provenance", "");
        entry.tolerance = e.value("tolerance", 0.0);
        entry.pass = e.at("pass").get<bool>();
        r.results.push_back(entry);
    }
    return r;
}

void RunReport::write(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw Error("cannot write report to '" + path + "'");
    out << to_json().dump(2) << "\n";
}

} // namespace beltlab::report
