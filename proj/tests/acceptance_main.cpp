// Acceptance gate: runs every criterion, prints one PASS/FAIL line each,
// and exits nonzero if any criterion fails.

#include <iostream>

#include "tdho/verification.hpp"

int main() {
    auto outcome = tdho::run_acceptance(0, &std::cout);
    std::cout << (outcome.all_pass() ? "ALL PASS" : "FAILURES PRESENT") << "\n";
    return outcome.all_pass() ? 0 : 1;
}
