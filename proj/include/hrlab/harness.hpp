#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "hrlab/io.hpp"
#include "hrlab/verify.hpp"

namespace hrlab {

// Exit-code contract shared by every subcommand.
inline constexpr int kExitPass = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

struct SweepConfig {
    int n_min = 2, n_max = 5;
    int count = 100;
    std::uint64_t seed = 1;
    std::optional<int> fix_m, fix_p, fix_q;
    bool classical_only = false;  // restrict to m = n
    double tol = default_tolerance();
    int homotopy_steps = 9;
    bool with_homotopy = false;  // sweeps stay fast by default; cmd_check enables it
    bool with_restriction = false;
    std::string report_path;
};

// All (n, m, p, q) with n_min <= n <= n_max, 0 <= p,q, p+q <= m <= n, m >= 1,
// filtered by the config.
std::vector<std::array<int, 4>> enumerate_configs(const SweepConfig& cfg);

// Seeded valid instance: random well-conditioned omega, polarizations drawn
// until the hypothesis margins clear (e_m >= 1e-6 relative, PSD).
Instance random_instance(int n, int m, int p, int q, std::uint64_t seed);

struct SweepOutcome {
    int checked = 0;
    int failed = 0;
    bool all_pass = false;
    json aggregate;
};

SweepOutcome run_sweep(const SweepConfig& cfg);

// Pullback model of a submersion: base forms embedded in the top-left m x m
// block are semipositive of rank exactly m.
struct FibrationModel {
    int n = 0, m = 0, p = 0, q = 0;
    CMatrix fiber_form;             // n x n positive definite
    std::vector<CMatrix> base_forms;  // m x m positive definite, m-p-q+1 of them
};

FibrationModel fibration_from_json(const json& j);
json fibration_to_json(const FibrationModel& model);
Instance fibration_instance(const FibrationModel& model);
FibrationModel random_fibration(int n, int m, int p, int q, std::uint64_t seed);

// Subcommand drivers; each returns a process exit code.
int cmd_check(const std::string& instance_path, const std::string& report_path,
              const CheckOptions& opts, bool no_validate);
int cmd_random(const SweepConfig& cfg);
int cmd_fibration(const std::string& model_path, const std::string& report_path,
                  const CheckOptions& opts);
int cmd_search(const std::string& mode, int budget, std::uint64_t seed,
               const std::string& findings_path, double tol);
int cmd_search_replay(const std::string& findings_path, double tol);
int cmd_restrict(const std::string& instance_path, const std::string& hyperplane_path, int samples,
                 std::uint64_t seed, const std::string& report_path, double tol);
int cmd_deform(const std::string& instance_path, int steps, const std::string& report_path,
               double tol);

}  // namespace hrlab
