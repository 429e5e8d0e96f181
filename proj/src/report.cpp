#include "nds/report.hpp"

#include <cmath>
#include <cstdio>

#include "json.hpp"

namespace nds {

std::string fmt_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

bool TheoremReport::pass() const {
    if (checks.empty()) return false;
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

Check& TheoremReport::check_le(std::string name, double left, double right, double tol, bool exact) {
    checks.push_back({std::move(name), "<=", left, right, tol, exact, left <= right + tol, {}});
    return checks.back();
}

Check& TheoremReport::check_eq(std::string name, double left, double right, double tol, bool exact) {
    checks.push_back({std::move(name), "==", left, right, tol, exact, std::abs(left - right) <= tol, {}});
    return checks.back();
}

Check& TheoremReport::check_true(std::string name, bool ok, std::string detail, bool exact) {
    checks.push_back({std::move(name), "holds", ok ? 1.0 : 0.0, 1.0, 0, exact, ok, std::move(detail)});
    return checks.back();
}

std::string TheoremReport::json() const {
    nlohmann::ordered_json j;
    j["theorem"] = theorem;
    j["verdict"] = pass() ? "pass" : "fail";
    auto& op = j["operating_point"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : operating_point) op[k] = v;
    auto& cs = j["checks"] = nlohmann::ordered_json::array();
    for (const auto& c : checks) {
        nlohmann::ordered_json e;
        e["name"] = c.name;
        e["relation"] = c.relation;
        e["left"] = fmt_double(c.left);
        e["right"] = fmt_double(c.right);
        e["tolerance"] = fmt_double(c.tolerance);
        e["asserted"] = c.exact ? "finite-n identity" : "rate at tolerance";
        e["pass"] = c.pass;
        if (!c.detail.empty()) e["detail"] = c.detail;
        cs.push_back(std::move(e));
    }
    auto& as = j["artifacts"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : artifacts) as[k] = v;
    if (!notes.empty()) j["notes"] = notes;
    return j.dump(2) + "\n";
}

std::string TheoremReport::summary() const {
    if (pass()) return "PASS " + theorem + " (" + std::to_string(checks.size()) + " checks)";
    for (const auto& c : checks)
        if (!c.pass)
            return "FAIL " + theorem + ": " + c.name + " " + fmt_double(c.left) + " " + c.relation + " " +
                   fmt_double(c.right) + (c.detail.empty() ? "" : " (" + c.detail + ")");
    return "FAIL " + theorem + ": no checks ran";
}

}  // namespace nds
