// End-to-end acceptance gate: replays every headline computation and prints
// one verdict line per check.  Exit status 0 only when all checks pass.

#include <cstdio>

#include "supergeo/selftest.hpp"

int main() {
    bool all_pass = true;
    for (const supergeo::Check& c : supergeo::run_acceptance_checks()) {
        std::printf("%s  %-32s  %s\n", c.pass ? "PASS" : "FAIL", c.name.c_str(),
                    c.detail.c_str());
        all_pass = all_pass && c.pass;
    }
    std::printf("%s\n", all_pass ? "acceptance: all checks passed"
                                 : "acceptance: FAILURES PRESENT");
    return all_pass ? 0 : 1;
}
