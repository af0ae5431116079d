#ifndef BIOP_REPORT_HPP
#define BIOP_REPORT_HPP

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

namespace biop {

// Outcome of one law check.  A failing report always carries a witness
// naming the offending data; warnings do not affect the verdict.
struct Report {
    std::string check;
    bool ok = true;
    std::string what;  // short failure description, empty when ok
    std::map<std::string, long long> counts;
    std::vector<std::string> warnings;
    nlohmann::json witness;

    void fail(const std::string& reason, nlohmann::json w) {
        if (ok) {  // keep the first witness
            ok = false;
            what = reason;
            witness = std::move(w);
        }
    }
    void bump(const std::string& key, long long by = 1) { counts[key] += by; }
    void merge(const Report& sub) {
        if (!sub.ok && ok) fail(sub.check + ": " + sub.what, sub.witness);
        for (const auto& [k, v] : sub.counts) counts[sub.check + "." + k] += v;
        for (const auto& w : sub.warnings) warnings.push_back(sub.check + ": " + w);
    }
    nlohmann::json to_json() const {
        nlohmann::json j{{"check", check}, {"status", ok ? "pass" : "fail"}};
        if (!ok) {
            j["reason"] = what;
            j["witness"] = witness;
        }
        if (!counts.empty()) j["counts"] = counts;
        if (!warnings.empty()) j["warnings"] = warnings;
        return j;
    }
};

}  // namespace biop

#endif
