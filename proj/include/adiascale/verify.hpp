// verify.hpp - fast oracle and invariant self-check behind `adiascale verify`.
#pragma once

#include <string>
#include <vector>

namespace adiascale {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

// Runs every check (a few seconds in total); never throws, failures and
// exceptions are reported per check.
std::vector<CheckResult> run_verification();

}  // namespace adiascale
