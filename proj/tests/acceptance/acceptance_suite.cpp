// Prints one PASS/FAIL line per acceptance criterion.
//   acceptance_suite               all criteria, exit 1 if any fails
//   acceptance_suite --criterion N all criteria, exit status from criterion N only

#include "bykov/harness/acceptance.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
    using namespace bykov::harness;
    CLI::App app{"acceptance suite"};
    int only = 0;
    app.add_option("--criterion", only, "report the exit status of this criterion only")
        ->check(CLI::Range(1, kCriterionCount));
    CLI11_PARSE(app, argc, argv);

    const std::vector<CriterionResult> results = run_acceptance();
    bool ok = true;
    int passed = 0;
    for (const auto& r : results) {
        std::cout << format_result(r) << "\n";
        passed += r.passed;
        if (only == 0 || only == r.id) ok = ok && r.passed;
    }
    std::cout << passed << "/" << results.size() << " criteria passed\n";
    return ok ? 0 : 1;
}
