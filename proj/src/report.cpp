#include "dosc/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "dosc/types.hpp"

namespace dosc {

double frob(const SpMat& m) {
    double s = 0.0;
    for (int k = 0; k < m.outerSize(); ++k)
        for (SpMat::InnerIterator it(m, k); it; ++it) s += std::norm(it.value());
    return std::sqrt(s);
}

void prune(SpMat& m, double rel) {
    double mx = 0.0;
    for (int k = 0; k < m.outerSize(); ++k)
        for (SpMat::InnerIterator it(m, k); it; ++it) mx = std::max(mx, std::abs(it.value()));
    const double cut = rel * mx;
    m.prune([cut](Eigen::Index, Eigen::Index, const cplx& v) { return std::abs(v) >= cut && v != cplx(0); });
    m.makeCompressed();
}

void VerificationReport::merge(const VerificationReport& other) {
    checks.insert(checks.end(), other.checks.begin(), other.checks.end());
}

bool VerificationReport::pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass(); });
}

double VerificationReport::max_residual() const {
    double mx = 0.0;
    for (const auto& c : checks)
        if (c.expected.value_or(false)) mx = std::max(mx, c.residual);
    return mx;
}

size_t VerificationReport::failures() const {
    return static_cast<size_t>(std::count_if(checks.begin(), checks.end(), [](const CheckResult& c) { return !c.pass(); }));
}

std::vector<const CheckResult*> VerificationReport::failing() const {
    std::vector<const CheckResult*> out;
    for (const auto& c : checks)
        if (!c.pass()) out.push_back(&c);
    return out;
}

json to_json(const CheckResult& c) {
    json j;
    j["id"] = c.id;
    if (!c.group.empty()) j["group"] = c.group;
    j["residual"] = c.residual;
    j["tol"] = c.tol;
    j["expected"] = c.expected ? json(*c.expected) : json(nullptr);
    j["holds"] = c.holds();
    j["pass"] = c.pass();
    if (c.depth >= 0) j["depth"] = c.depth;
    if (c.unprojected >= 0) j["unprojected"] = c.unprojected;
    if (!c.note.empty()) j["note"] = c.note;
    return j;
}

json to_json(const VerificationReport& r) {
    json j;
    j["name"] = r.name;
    j["pass"] = r.pass();
    j["max_residual"] = r.max_residual();
    j["failures"] = r.failures();
    if (!r.meta.empty()) j["meta"] = r.meta;
    json arr = json::array();
    for (const auto& c : r.checks) arr.push_back(to_json(c));
    j["checks"] = std::move(arr);
    return j;
}

std::string fmt_double(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*e", digits, v);
    return buf;
}

}  // namespace dosc
