#pragma once

#include <string>
#include <utility>
#include <vector>

namespace nds {

struct Check {
    std::string name;
    std::string relation;  // "<=", "==", "holds"
    double left = 0;
    double right = 0;
    double tolerance = 0;
    // true for finite-n identities checked on exact data, false for rates
    bool exact = false;
    bool pass = false;
    std::string detail;
};

struct TheoremReport {
    std::string theorem;
    std::vector<std::pair<std::string, std::string>> operating_point;
    std::vector<Check> checks;
    std::vector<std::pair<std::string, std::string>> artifacts;
    std::vector<std::string> notes;

    [[nodiscard]] bool pass() const;
    void at(std::string key, std::string value) { operating_point.emplace_back(std::move(key), std::move(value)); }
    void artifact(std::string key, std::string value) { artifacts.emplace_back(std::move(key), std::move(value)); }

    Check& check_le(std::string name, double left, double right, double tol, bool exact = false);
    Check& check_eq(std::string name, double left, double right, double tol, bool exact = false);
    Check& check_true(std::string name, bool ok, std::string detail, bool exact = true);

    [[nodiscard]] std::string json() const;
    // one line: "PASS theorem (n checks)" or the first failing check
    [[nodiscard]] std::string summary() const;
};

// %.12g
std::string fmt_double(double x);

}  // namespace nds
