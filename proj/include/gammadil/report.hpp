#pragma once

#include <map>
#include <string>

namespace gammadil {

struct CheckResult {
    double residual = 0.0;
    double threshold = 0.0;
    bool pass = false;
};

/// Aggregated outcome of a verification run. Raw residuals are always kept
/// next to their thresholds so regressions show up as drift before they
/// cross a line. Checks are keyed by name; maps keep the report ordering
/// independent of evaluation order.
struct VerificationReport {
    std::string instance;
    std::map<std::string, CheckResult> checks;
    std::map<std::string, double> timings_ms;

    void add(const std::string& name, double residual, double threshold) {
        checks[name] = CheckResult{residual, threshold, residual <= threshold};
    }

    void add_flag(const std::string& name, bool ok) {
        checks[name] = CheckResult{ok ? 0.0 : 1.0, 0.5, ok};
    }

    bool overall_pass() const {
        for (const auto& [name, check] : checks)
            if (!check.pass) return false;
        return true;
    }
};

} // namespace gammadil
