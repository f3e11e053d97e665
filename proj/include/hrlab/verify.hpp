#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "hrlab/hodge_riemann.hpp"
#include "hrlab/restriction.hpp"

namespace hrlab {

struct CheckResult {
    std::string name;
    bool verdict = false;
    double margin = 0.0;
    nlohmann::json detail;  // small scalar fields only
    bool counts = true;     // warnings (hypothesis margins) do not gate all_pass
};

struct VerificationReport {
    std::vector<CheckResult> checks;
    bool all_pass = false;

    const CheckResult* find(const std::string& name) const {
        for (const auto& c : checks)
            if (c.name == name) return &c;
        return nullptr;
    }
};

struct CheckOptions {
    double tol = default_tolerance();
    int homotopy_steps = 9;
    int restriction_samples = 8;
    int local_refine = 6;
    std::uint64_t seed = 1;
    bool with_homotopy = true;
    bool with_restriction = true;
    bool with_local_estimate = true;
};

// Runs hypotheses / hrr / hl / nondegeneracy / ld / restriction / homotopy /
// local_estimate on one instance; a shared assembler may be passed by sweeps.
VerificationReport run_checks(const Instance& inst, const CheckOptions& opts,
                              const GramAssembler* assembler = nullptr);

nlohmann::json report_to_json(const VerificationReport& report);

}  // namespace hrlab
