#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace mflab {

struct CriterionResult {
    std::string id;
    std::string name;
    bool passed = false;
    // Diagnostic criteria are reported but never fail the run.
    bool diagnostic = false;
    double value = 0.0;
    double threshold = 0.0;
    std::string detail;
};

struct ReportOptions {
    // Quick mode shrinks the empirical ranges and Monte Carlo sample counts;
    // tolerances are unchanged.
    bool quick = false;
    std::uint64_t seed = 42;
};

std::vector<CriterionResult> run_acceptance(const ReportOptions& opts);

bool all_passed(const std::vector<CriterionResult>& results) noexcept;

} // namespace mflab
