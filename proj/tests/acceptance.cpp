// Runs the full acceptance suite and prints one pass/fail line per
// criterion.  Exit code 0 iff every hard criterion passes.
#include <iostream>

#include "weylab/verify.hpp"

int main() {
    weylab::VerifyOptions opt;
    opt.full = true;
    const auto report = weylab::run_verify(opt, std::cout);
    const bool ok = report.all_pass();
    std::cout << (ok ? "ACCEPTANCE: all criteria pass"
                     : "ACCEPTANCE: FAILURES present")
              << std::endl;
    return ok ? 0 : 1;
}
