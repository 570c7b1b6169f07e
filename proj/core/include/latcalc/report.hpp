#pragma once

#include <nlohmann/json.hpp>

#include <string>
#include <utility>
#include <vector>

namespace latcalc {

// One verification outcome. `id` is unique within a report; `anchor` names
// the identity being checked so external tooling can group related checks.
struct CheckResult {
    std::string id;
    std::string anchor;
    bool pass = false;
    std::string detail;
    nlohmann::json witness;

    nlohmann::json to_json() const;
    static CheckResult from_json(const nlohmann::json& j);
};

struct Report {
    static constexpr const char* schema = "latcalc-report/1";

    nlohmann::json config;
    std::vector<CheckResult> checks;

    void add(CheckResult c);
    bool all_pass() const;

    nlohmann::json to_json() const;
    static Report from_json(const nlohmann::json& j);
};

// File form: sorted keys, two-space indent, trailing newline. Identical
// reports serialize to identical bytes.
std::string dump_report(const Report& r);

// Union in source order, keyed by check id. Byte-identical duplicates
// collapse; differing entries under the same id throw, naming both sources.
Report merge_reports(const std::vector<std::pair<std::string, Report>>& sources);

// Fixed-width one-line-per-check summary with a pass/fail footer.
std::string render_table(const Report& r);

} // namespace latcalc
