#pragma once

// The quantitative landmarks of the Eady study, each checked end to end
// against its stated tolerance. Shared by the acceptance binary and
// `eady reproduce`.

#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

namespace eady::verify {

struct CriterionResult {
    std::string id;
    std::string title;
    bool passed = false;
    std::string detail;   ///< measured values against their thresholds
    double seconds = 0.0;
    nlohmann::json values = nlohmann::json::object();
};

struct Criterion {
    std::string id;
    std::string title;
    std::function<CriterionResult()> run;
};

/// In a fixed order: growth_rate, dispersion_zero, exact_solution,
/// catastrophe_landmarks, locus_topology, envelope_oracle,
/// rankine_hugoniot, velocity, curvature, rotation.
const std::vector<Criterion>& criteria();

/// Runs one criterion, converting an escaped exception into a failure.
CriterionResult run_criterion(const Criterion& c);

std::vector<CriterionResult> run_all();

/// "PASS <id>: <title> | <detail> (<ms> ms)".
std::string format_line(const CriterionResult& r);

nlohmann::json to_json(const CriterionResult& r);

}  // namespace eady::verify
