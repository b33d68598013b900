// Acceptance suite runner: one line per criterion, exit 0 iff all pass.

#include <cstring>
#include <iostream>

#include "fqmzv/suites.hpp"

int main(int argc, char** argv) {
    fqmzv::SuiteConfig cfg;
    cfg.jobs = 2;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--jobs") == 0 && i + 1 < argc) cfg.jobs = std::atoi(argv[++i]);
        else if (std::strcmp(argv[i], "--data-dir") == 0 && i + 1 < argc) ++i;  // reserved
    }
    auto records = fqmzv::run_acceptance(cfg);
    std::cout << fqmzv::render_text(records);
    return fqmzv::all_pass(records) ? 0 : 1;
}
