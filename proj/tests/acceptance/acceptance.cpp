// One line per landmark criterion; exit status 1 if any fails.

#include <iostream>

#include "eady/verify/landmarks.hpp"

int main() {
    int failed = 0;
    for (const auto& c : eady::verify::criteria()) {
        const eady::verify::CriterionResult r = eady::verify::run_criterion(c);
        std::cout << eady::verify::format_line(r) << std::endl;
        failed += !r.passed;
    }
    std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed")
              << std::endl;
    return failed == 0 ? 0 : 1;
}
