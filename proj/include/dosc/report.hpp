#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace dosc {

using json = nlohmann::ordered_json;

struct CheckResult {
    std::string id;
    std::string group;
    double residual = 0.0;
    double tol = 0.0;
    // Expected outcome; nullopt means the value is reported but not asserted.
    std::optional<bool> expected = true;
    int depth = -1;
    double unprojected = -1.0;  // negative when not computed
    std::string note;

    bool holds() const { return residual < tol || (tol == 0.0 && residual == 0.0); }
    bool pass() const { return !expected || holds() == *expected; }
};

struct VerificationReport {
    std::string name;
    std::vector<CheckResult> checks;
    json meta = json::object();

    void add(CheckResult c) { checks.push_back(std::move(c)); }
    void merge(const VerificationReport& other);
    bool pass() const;
    double max_residual() const;  // over checks expected to hold
    size_t failures() const;
    std::vector<const CheckResult*> failing() const;
};

json to_json(const CheckResult& c);
json to_json(const VerificationReport& r);

// Doubles rendered with a fixed number of significant digits so text output is stable.
std::string fmt_double(double v, int digits = 3);

}  // namespace dosc
