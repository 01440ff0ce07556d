#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace reglab {

/// One verification suite outcome.  "pass" is backed by exact checks only;
/// convention-dependent facts (signs, normalization scalars) are "recorded"
/// witnesses and never upgrade or mask a failure.
struct SuiteResult {
    std::string name;
    std::string status;  // "pass" | "fail" | "recorded"
    nlohmann::json witnesses = nlohmann::json::object();
    double elapsed_ms = 0.0;
};

struct Report {
    int schema_version = 1;
    nlohmann::json config = nlohmann::json::object();
    std::vector<SuiteResult> suites;

    bool all_passed() const {
        for (const auto& s : suites)
            if (s.status == "fail") return false;
        return true;
    }

    nlohmann::json to_json(bool include_timings = true) const {
        nlohmann::json j;
        j["schema_version"] = schema_version;
        j["config"] = config;
        j["suites"] = nlohmann::json::array();
        for (const auto& s : suites) {
            nlohmann::json e;
            e["suite"] = s.name;
            e["status"] = s.status;
            e["witnesses"] = s.witnesses;
            if (include_timings) e["elapsed_ms"] = s.elapsed_ms;
            j["suites"].push_back(e);
        }
        return j;
    }

    std::string to_tsv() const {
        std::string out = "suite\tstatus\twitnesses\n";
        for (const auto& s : suites) out += s.name + "\t" + s.status + "\t" + s.witnesses.dump() + "\n";
        return out;
    }
};

}  // namespace reglab
