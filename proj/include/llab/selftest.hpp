#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace llab::selftest {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    double seconds = 0.0;
    std::string detail;
};

// Runs the acceptance criteria. quick = reduced scale (the CLI selftest,
// bounded to ~30s); full scale is what the acceptance suite executes.
std::vector<CriterionResult> run_all(bool quick);

// Prints one pass/fail line per criterion to `out`; returns the number of
// failures.
int run_and_print(bool quick, std::ostream& out);

}  // namespace llab::selftest
