// Acceptance suite: one pass/fail line per criterion; exit 0 iff all pass.
// Usage: acceptance_tests [--quick] [--only AC<k>]

#include <cstring>
#include <iostream>
#include <string>

#include "betagibbs/acceptance.hpp"

int main(int argc, char** argv) {
    betagibbs::AcceptanceConfig cfg;
    std::string only;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--quick") == 0)
            cfg.quick = true;
        else if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc)
            only = argv[++i];
        else {
            std::cerr << "usage: acceptance_tests [--quick] [--only AC<k>]\n";
            return 1;
        }
    }

    std::vector<betagibbs::CriterionResult> results;
    if (!only.empty()) {
        if (only.size() < 3 || only.compare(0, 2, "AC") != 0) {
            std::cerr << "--only expects AC1..AC12\n";
            return 1;
        }
        results.push_back(betagibbs::run_criterion(std::stoi(only.substr(2)), cfg));
    } else {
        results = betagibbs::run_acceptance(cfg);
    }

    bool all_pass = true;
    for (const auto& r : results) {
        std::cout << r.id << " " << r.name << " " << (r.pass ? "PASS" : "FAIL") << " ("
                  << r.seconds << "s) " << r.detail << "\n";
        all_pass = all_pass && r.pass;
    }
    return all_pass ? 0 : 2;
}
