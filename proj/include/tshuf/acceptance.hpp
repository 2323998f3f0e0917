#pragma once

// The acceptance suite: twelve exact checks, one result line each.

#include <functional>
#include <ostream>
#include <string>
#include <vector>

namespace tshuf {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0;
};

// Runs every criterion (or only those with the listed ids), calling report
// after each one.
std::vector<CriterionResult> run_acceptance(const std::vector<int>& only = {},
                                            const std::function<void(const CriterionResult&)>& report = {});

std::string format_result(const CriterionResult& r);

}  // namespace tshuf
