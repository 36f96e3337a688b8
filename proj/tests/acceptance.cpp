// Runs every identity suite at the desk scale and prints one line per criterion.
// Usage: acceptance [config.json] [--only name]

#include "dtree.hpp"

#include <cstdio>
#include <cstring>
#include <iostream>

int main(int argc, char** argv)
{
    using namespace dtree;
    DeskScale ds;
    std::string only;
    try {
        for (int i = 1; i < argc; ++i) {
            if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc)
                only = argv[++i];
            else
                ds = DeskScale::from(load_config(argv[i]));
        }
    } catch (const std::exception& e) {
        std::cerr << "acceptance: " << e.what() << "\n";
        return 2;
    }

    int failed = 0;
    for (auto& info : suites()) {
        if (!only.empty() && info.name != only) continue;
        SuiteReport r = run_suite(info, ds);
        size_t cases = 0;
        for (auto& c : r.checks) cases += c.cases;
        std::printf("criterion %d: %s  %s (%zu checks, %zu cases, %.1fs)\n", r.criterion, r.ok() ? "PASS" : "FAIL",
                    r.title.c_str(), r.checks.size(), cases, r.seconds);
        for (auto& c : r.checks)
            if (!c.ok) std::printf("    failed %s: %s\n", c.name.c_str(), c.witness.c_str());
        std::fflush(stdout);
        if (!r.ok()) ++failed;
    }
    return failed == 0 ? 0 : 1;
}
