#include "latcalc/report.hpp"

#include <map>
#include <sstream>
#include <stdexcept>

namespace latcalc {

nlohmann::json CheckResult::to_json() const {
    nlohmann::json j;
    j["id"] = id;
    j["anchor"] = anchor;
    j["pass"] = pass;
    j["detail"] = detail;
    j["witness"] = witness;
    return j;
}

CheckResult CheckResult::from_json(const nlohmann::json& j) {
    CheckResult c;
    c.id = j.at("id").get<std::string>();
    c.anchor = j.at("anchor").get<std::string>();
    c.pass = j.at("pass").get<bool>();
    c.detail = j.at("detail").get<std::string>();
    c.witness = j.value("witness", nlohmann::json());
    return c;
}

void Report::add(CheckResult c) {
    for (const auto& existing : checks)
        if (existing.id == c.id) throw std::logic_error("duplicate check id: " + c.id);
    checks.push_back(std::move(c));
}

bool Report::all_pass() const {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

nlohmann::json Report::to_json() const {
    nlohmann::json j;
    j["schema"] = schema;
    j["config"] = config;
    j["checks"] = nlohmann::json::array();
    for (const auto& c : checks) j["checks"].push_back(c.to_json());
    j["pass"] = all_pass();
    return j;
}

Report Report::from_json(const nlohmann::json& j) {
    if (!j.is_object() || j.value("schema", std::string()) != schema)
        throw std::runtime_error("report schema mismatch: expected " + std::string(schema));
    Report r;
    r.config = j.value("config", nlohmann::json());
    for (const auto& cj : j.at("checks")) r.checks.push_back(CheckResult::from_json(cj));
    return r;
}

std::string dump_report(const Report& r) {
    return r.to_json().dump(2) + "\n";
}

Report merge_reports(const std::vector<std::pair<std::string, Report>>& sources) {
    Report merged;
    nlohmann::json from = nlohmann::json::array();
    for (const auto& [name, rep] : sources) {
        (void)rep;
        from.push_back(name);
    }
    merged.config["merged_from"] = from;

    // id -> (source name, serialized check) of the first occurrence.
    std::map<std::string, std::pair<std::string, nlohmann::json>> seen;
    for (const auto& [name, rep] : sources) {
        for (const auto& c : rep.checks) {
            const nlohmann::json cj = c.to_json();
            auto it = seen.find(c.id);
            if (it == seen.end()) {
                seen.emplace(c.id, std::make_pair(name, cj));
                merged.checks.push_back(c);
                continue;
            }
            if (it->second.second != cj)
                throw std::runtime_error("conflicting check id '" + c.id + "' from '" +
                                         it->second.first + "' and '" + name + "'");
        }
    }
    return merged;
}

std::string render_table(const Report& r) {
    std::size_t idw = 4;
    for (const auto& c : r.checks) idw = std::max(idw, c.id.size());

    std::ostringstream out;
    out << "check";
    for (std::size_t i = 5; i < idw + 2; ++i) out << ' ';
    out << "status  detail\n";

    int failed = 0;
    for (const auto& c : r.checks) {
        out << c.id;
        for (std::size_t i = c.id.size(); i < idw + 2; ++i) out << ' ';
        out << (c.pass ? "PASS " : "FAIL ") << "  " << c.detail << "\n";
        if (!c.pass) ++failed;
    }
    out << r.checks.size() << " checks, " << failed << " failed\n";
    return out.str();
}

} // namespace latcalc
