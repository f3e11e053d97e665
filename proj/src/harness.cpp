#include "hrlab/harness.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <iostream>

#include "hrlab/rng.hpp"

namespace hrlab {

namespace {

constexpr double kGenerationMargin = 1e-6;

std::vector<cplx> random_unit_vector(int n, Rng& rng) {
    std::vector<cplx> v(n);
    double norm = 0.0;
    do {
        for (int i = 0; i < n; ++i) v[i] = rng.gaussian_cplx();
        norm = vec_norm(v);
    } while (norm <= 1e-8);
    for (cplx& z : v) z /= norm;
    return v;
}

}  // namespace

std::vector<std::array<int, 4>> enumerate_configs(const SweepConfig& cfg) {
    std::vector<std::array<int, 4>> out;
    for (int n = cfg.n_min; n <= cfg.n_max; ++n)
        for (int p = 0; p <= n; ++p)
            for (int q = 0; q + p <= n; ++q)
                for (int m = std::max(1, p + q); m <= n; ++m) {
                    if (cfg.fix_m && *cfg.fix_m != m) continue;
                    if (cfg.fix_p && *cfg.fix_p != p) continue;
                    if (cfg.fix_q && *cfg.fix_q != q) continue;
                    if (cfg.classical_only && m != n) continue;
                    out.push_back({n, m, p, q});
                }
    return out;
}

Instance random_instance(int n, int m, int p, int q, std::uint64_t seed) {
    Rng rng(seed);
    const HermitianForm omega = random_kahler(n, rng);
    std::vector<HermitianForm> alphas;
    const int count = m - p - q + 1;
    alphas.reserve(static_cast<std::size_t>(count));
    for (int j = 0; j < count; ++j)
        alphas.push_back(random_polarization(n, m, kGenerationMargin, rng, omega));
    return Instance::validated(n, m, p, q, omega, std::move(alphas));
}

SweepOutcome run_sweep(const SweepConfig& cfg) {
    SweepOutcome outcome;
    json results = json::array();
    const auto configs = enumerate_configs(cfg);

    for (std::size_t ci = 0; ci < configs.size(); ++ci) {
        const auto [n, m, p, q] = configs[ci];
        const GramAssembler assembler(n, p, q);
        CheckOptions opts;
        opts.tol = cfg.tol;
        opts.homotopy_steps = cfg.homotopy_steps;
        opts.with_homotopy = cfg.with_homotopy;
        opts.with_restriction = cfg.with_restriction;
        int config_failed = 0;
        double worst_hrr_margin = 1e300;

        for (int i = 0; i < cfg.count; ++i) {
            const std::uint64_t inst_seed = Rng::derive(cfg.seed, ci, static_cast<std::uint64_t>(i));
            opts.seed = inst_seed;
            const Instance inst = random_instance(n, m, p, q, inst_seed);
            const VerificationReport rep = run_checks(inst, opts, &assembler);
            ++outcome.checked;
            if (!rep.all_pass) {
                ++outcome.failed;
                ++config_failed;
            }
            if (const CheckResult* hrr = rep.find("hrr"))
                worst_hrr_margin = std::min(worst_hrr_margin, hrr->margin);
        }
        results.push_back({{"n", n},
                           {"m", m},
                           {"p", p},
                           {"q", q},
                           {"count", cfg.count},
                           {"failed", config_failed},
                           {"min_hrr_margin", worst_hrr_margin}});
    }

    outcome.all_pass = (outcome.failed == 0);
    json config_json{{"n_min", cfg.n_min}, {"n_max", cfg.n_max},     {"count", cfg.count},
                     {"seed", cfg.seed},   {"tol", cfg.tol},         {"classical_only", cfg.classical_only},
                     {"configs", configs.size()}};
    if (cfg.fix_m) config_json["m"] = *cfg.fix_m;
    if (cfg.fix_p) config_json["p"] = *cfg.fix_p;
    if (cfg.fix_q) config_json["q"] = *cfg.fix_q;
    outcome.aggregate = json{{"config", std::move(config_json)},
                             {"results", std::move(results)},
                             {"all_pass", outcome.all_pass},
                             {"counters", {{"checked", outcome.checked}, {"failed", outcome.failed}}}};
    return outcome;
}

FibrationModel fibration_from_json(const json& j) {
    try {
        FibrationModel model;
        model.n = j.at("n").get<int>();
        model.m = j.at("m").get<int>();
        model.p = j.at("p").get<int>();
        model.q = j.at("q").get<int>();
        model.fiber_form = hermitian_from_json(j.at("fiber")).matrix();
        for (const auto& b : j.at("bases")) model.base_forms.push_back(hermitian_from_json(b).matrix());
        return model;
    } catch (const json::exception& e) {
        throw ValidationError(std::string("fibration JSON: ") + e.what());
    }
}

json fibration_to_json(const FibrationModel& model) {
    json bases = json::array();
    for (const auto& b : model.base_forms) bases.push_back(hermitian_to_json(HermitianForm(b, false)));
    return json{{"n", model.n},
                {"m", model.m},
                {"p", model.p},
                {"q", model.q},
                {"fiber", hermitian_to_json(HermitianForm(model.fiber_form, false))},
                {"bases", std::move(bases)}};
}

Instance fibration_instance(const FibrationModel& model) {
    const int n = model.n, m = model.m;
    if (m < 1 || m > n) throw RangeError("fibration: need 1 <= m <= n");
    if (static_cast<int>(model.base_forms.size()) != m - model.p - model.q + 1)
        throw ValidationError("fibration: expected m-p-q+1 base forms");
    if (!cholesky(model.fiber_form).ok) throw NotKahlerError("fibration: fiber form not positive definite");

    std::vector<HermitianForm> alphas;
    for (const auto& base : model.base_forms) {
        if (base.rows() != m) throw DimensionError("fibration: base form must be m x m");
        if (!cholesky(base).ok) throw NotKahlerError("fibration: base form not positive definite");
        CMatrix embedded(n, n);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) embedded(i, j) = base(i, j);
        alphas.emplace_back(std::move(embedded), false);
    }
    HermitianForm omega(model.fiber_form, false);

    // The pullback models must be semipositive of rank exactly m.
    for (const auto& alpha : alphas) {
        if (!is_semipositive(alpha) || hermitian_rank(alpha) != m)
            throw ValidationError("fibration: embedded base form is not PSD of rank exactly m");
    }
    return Instance::validated(n, model.m, model.p, model.q, std::move(omega), std::move(alphas));
}

FibrationModel random_fibration(int n, int m, int p, int q, std::uint64_t seed) {
    Rng rng(seed);
    FibrationModel model;
    model.n = n;
    model.m = m;
    model.p = p;
    model.q = q;
    model.fiber_form = random_kahler(n, rng).matrix();
    const int count = m - p - q + 1;
    for (int j = 0; j < count; ++j) model.base_forms.push_back(random_kahler(m, rng).matrix());
    return model;
}

int cmd_check(const std::string& instance_path, const std::string& report_path,
              const CheckOptions& opts, bool no_validate) {
    const json j = load_json_file(instance_path);
    const Instance inst = instance_from_json(j, !no_validate, opts.tol);
    const VerificationReport rep = run_checks(inst, opts);
    const json out = report_to_json(rep);
    if (!report_path.empty()) save_json_file(report_path, out);
    std::cout << out.dump(2) << "\n";
    return rep.all_pass ? kExitPass : kExitCheckFailed;
}

int cmd_random(const SweepConfig& cfg) {
    const SweepOutcome outcome = run_sweep(cfg);
    if (!cfg.report_path.empty()) save_json_file(cfg.report_path, outcome.aggregate);
    std::cout << outcome.aggregate.dump(2) << "\n";
    return outcome.all_pass ? kExitPass : kExitCheckFailed;
}

int cmd_fibration(const std::string& model_path, const std::string& report_path,
                  const CheckOptions& opts) {
    const json j = load_json_file(model_path);
    const FibrationModel model = fibration_from_json(j);
    const Instance inst = fibration_instance(model);
    const VerificationReport rep = run_checks(inst, opts);
    const json out = report_to_json(rep);
    if (!report_path.empty()) save_json_file(report_path, out);
    std::cout << out.dump(2) << "\n";
    return rep.all_pass ? kExitPass : kExitCheckFailed;
}

namespace {

// arbitrary-omega search: positive combinations of Kahler wedge products plus
// a signed real perturbation; records HL rank deficiency or an indefinite
// primitive Gram.
json search_arbitrary_omega(int budget, std::uint64_t seed, double tol) {
    json findings = json::array();
    Rng rng(Rng::derive(seed, 0x616f6d65ULL));
    for (int trial = 0; trial < budget; ++trial) {
        const int n = rng.uniform_int(3, 4);
        const int p = rng.uniform_int(1, n - 2);
        const int q = rng.uniform_int(1, n - 1 - p);
        const int k = n - p - q;

        Form omega_form(n, k, k);
        const int products = rng.uniform_int(1, 2);
        for (int r = 0; r < products; ++r) {
            Form prod = Form::scalar(n, rng.uniform(0.2, 1.5));
            for (int f = 0; f < k; ++f) prod = wedge(prod, random_kahler(n, rng).to_form());
            omega_form += prod;
        }
        // Signed real (k,k) perturbation: R + conj(R).
        Form pert(n, k, k);
        for (cplx& z : pert.data()) z = rng.gaussian_cplx();
        const Form real_pert = pert + conjugate(pert);
        const double eps = rng.uniform(0.0, 2.5);
        omega_form += real_pert * cplx(eps, 0.0);

        const HermitianForm std_omega = HermitianForm::standard_kahler(n);
        const bool lefschetz = is_lefschetz_form(omega_form, p, q, tol);
        // r = 1 twist of the abstract Hodge-Riemann-form predicate; a form
        // passing r = 0 but failing here is Lefschetz without being a
        // Hodge-Riemann form.
        bool lefschetz_r1 = true;
        if (p >= 1 && q >= 1)
            lefschetz_r1 = is_lefschetz_form(
                wedge(wedge(omega_form, std_omega.to_form()), std_omega.to_form()), p - 1, q - 1, tol);
        bool primitive_definite = true;
        Signature sig;
        if (lefschetz) {
            // Primitive space against the standard Kahler form.
            const Form theta = wedge(omega_form, std_omega.to_form());
            const CMatrix map = wedge_map_matrix(theta, p, q);
            const CMatrix kernel = nullspace(map, tol);
            const GramAssembler assembler(n, p, q);
            CMatrix gram = kernel.adjoint() * assembler.assemble(omega_form) * kernel;
            gram.hermitize();
            const std::vector<double> eigs = eigh_values(gram);
            sig = signature_of(eigs, tol);
            primitive_definite = (sig.negative == 0 && sig.zero == 0);
        }
        if (!lefschetz || !primitive_definite || !lefschetz_r1) {
            findings.push_back({{"kind", "arbitrary-omega"},
                                {"trial", trial},
                                {"payload",
                                 {{"omega_form", form_to_json(omega_form)},
                                  {"p", p},
                                  {"q", q},
                                  {"epsilon", eps}}},
                                {"verdicts",
                                 {{"lefschetz", lefschetz},
                                  {"lefschetz_r1", lefschetz_r1},
                                  {"primitive_signature", {sig.positive, sig.negative, sig.zero}}}}});
        }
    }
    return findings;
}

json replay_arbitrary_omega(const json& finding, double tol) {
    const json& payload = finding.at("payload");
    const Form omega_form = form_from_json(payload.at("omega_form"));
    const int p = payload.at("p").get<int>();
    const int q = payload.at("q").get<int>();
    const int n = omega_form.ambient();
    const Form std_omega = HermitianForm::standard_kahler(n).to_form();
    const bool lefschetz = is_lefschetz_form(omega_form, p, q, tol);
    bool lefschetz_r1 = true;
    if (p >= 1 && q >= 1)
        lefschetz_r1 =
            is_lefschetz_form(wedge(wedge(omega_form, std_omega), std_omega), p - 1, q - 1, tol);
    Signature sig;
    if (lefschetz) {
        const Form theta = wedge(omega_form, std_omega);
        const CMatrix kernel = nullspace(wedge_map_matrix(theta, p, q), tol);
        const GramAssembler assembler(n, p, q);
        CMatrix gram = kernel.adjoint() * assembler.assemble(omega_form) * kernel;
        gram.hermitize();
        sig = signature_of(eigh_values(gram), tol);
    }
    return json{{"lefschetz", lefschetz},
                {"lefschetz_r1", lefschetz_r1},
                {"primitive_signature", {sig.positive, sig.negative, sig.zero}}};
}

// basis-intersection search: merely m-positive (non-semipositive) tuples; we
// look for an orthonormal basis inside every P(alpha_j) and record the tuples
// where the budgeted candidates all fail. Observational only.
json search_basis_intersection(int budget, std::uint64_t seed, double tol) {
    json findings = json::array();
    Rng rng(Rng::derive(seed, 0x62617369ULL));
    for (int trial = 0; trial < budget; ++trial) {
        const int n = rng.uniform_int(3, 5);
        const int m = rng.uniform_int(1, n - 1);
        const int tuple_size = rng.uniform_int(1, 3);
        const HermitianForm omega = HermitianForm::standard_kahler(n);

        std::vector<HermitianForm> alphas;
        std::vector<CMatrix> grams;
        for (int j = 0; j < tuple_size; ++j) {
            alphas.push_back(random_merely_m_positive(n, m, rng));
            grams.push_back(restriction_gram(alphas.back(), omega, m));
        }

        const auto basis_inside = [&](const CMatrix& basis) {
            double min_margin = 1e300;
            for (int c = 0; c < n; ++c) {
                std::vector<cplx> v(static_cast<std::size_t>(n));
                for (int r = 0; r < n; ++r) v[r] = basis(r, c);
                for (const CMatrix& g : grams) {
                    const double quad = vec_dot(v, matvec(g, v)).real();
                    min_margin = std::min(min_margin, quad);
                }
            }
            return min_margin;
        };

        bool found = false;
        double best_margin = -1e300;
        const int candidates = 40;
        for (int c = 0; c < candidates && !found; ++c) {
            CMatrix basis(n, n);
            if (c == 0) {
                basis = CMatrix::identity(n);
            } else {
                CMatrix g(n, n);
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j) g(i, j) = rng.gaussian_cplx();
                basis = svd(g).u;
            }
            const double margin = basis_inside(basis);
            best_margin = std::max(best_margin, margin);
            if (margin > tol) found = true;
        }

        if (!found) {
            json alpha_json = json::array();
            for (const auto& a : alphas) alpha_json.push_back(hermitian_to_json(a));
            // Instance-shaped payload so `check --no-validate` can replay it.
            const int p = 0, q = 0;
            std::vector<HermitianForm> padded = alphas;
            padded.resize(static_cast<std::size_t>(m - p - q + 1), alphas.front());
            const Instance inst = Instance::unchecked(n, m, p, q, omega, padded);
            findings.push_back({{"kind", "basis-intersection"},
                                {"trial", trial},
                                {"payload",
                                 {{"n", n}, {"m", m}, {"alphas", std::move(alpha_json)},
                                  {"instance", instance_to_json(inst)}}},
                                {"verdicts", {{"found_basis", false}, {"best_margin", best_margin}}}});
        }
    }
    return findings;
}

json replay_basis_intersection(const json& finding, double tol) {
    const json& payload = finding.at("payload");
    const int n = payload.at("n").get<int>();
    const int m = payload.at("m").get<int>();
    const HermitianForm omega = HermitianForm::standard_kahler(n);
    std::vector<CMatrix> grams;
    for (const auto& aj : payload.at("alphas"))
        grams.push_back(restriction_gram(hermitian_from_json(aj), omega, m));
    // Deterministic replay probes only the recorded coordinate basis plus the
    // locus grams; a finding replays to "no basis found among fixed probes".
    double margin = 1e300;
    for (int c = 0; c < n; ++c) {
        std::vector<cplx> v(static_cast<std::size_t>(n), cplx{});
        v[static_cast<std::size_t>(c)] = 1.0;
        for (const CMatrix& g : grams) margin = std::min(margin, vec_dot(v, matvec(g, v)).real());
    }
    return json{{"coordinate_basis_margin", margin}, {"coordinate_basis_inside", margin > tol}};
}

}  // namespace

int cmd_search(const std::string& mode, int budget, std::uint64_t seed,
               const std::string& findings_path, double tol) {
    if (budget < 0) throw RangeError("search: budget must be >= 0");
    json findings;
    if (mode == "arbitrary-omega") {
        findings = search_arbitrary_omega(budget, seed, tol);
    } else if (mode == "basis-intersection") {
        findings = search_basis_intersection(budget, seed, tol);
    } else {
        throw ValidationError("search: mode must be arbitrary-omega or basis-intersection");
    }
    const json out{{"mode", mode}, {"budget", budget}, {"seed", seed}, {"findings", findings}};
    if (!findings_path.empty()) save_json_file(findings_path, out);
    std::cout << out.dump(2) << "\n";
    return kExitPass;  // an empty findings file is a valid outcome
}

int cmd_search_replay(const std::string& findings_path, double tol) {
    const json j = load_json_file(findings_path);
    json replays = json::array();
    for (const auto& finding : j.at("findings")) {
        const std::string kind = finding.at("kind").get<std::string>();
        if (kind == "arbitrary-omega")
            replays.push_back(replay_arbitrary_omega(finding, tol));
        else
            replays.push_back(replay_basis_intersection(finding, tol));
    }
    std::cout << json{{"replays", replays}}.dump(2) << "\n";
    return kExitPass;
}

int cmd_restrict(const std::string& instance_path, const std::string& hyperplane_path, int samples,
                 std::uint64_t seed, const std::string& report_path, double tol) {
    const Instance inst = instance_from_json(load_json_file(instance_path), true, tol);
    json out;
    out["samples"] = json::array();
    const bool top_power = (inst.m == inst.n);

    std::vector<Hyperplane> planes;
    if (!hyperplane_path.empty()) {
        planes.push_back(hyperplane_from_json(load_json_file(hyperplane_path)));
    } else {
        Rng rng(Rng::derive(seed, 0x72657374ULL));
        for (int s = 0; s < samples; ++s) planes.emplace_back(random_unit_vector(inst.n, rng));
    }

    // Basis report: an orthonormal frame avoiding every sampled hyperplane.
    {
        const AvoidanceBasis basis = avoid_hyperplanes_basis(planes, inst.n, seed);
        out["avoidance_basis"] = {{"orthonormality_residual", basis.orthonormality_residual},
                                  {"min_margin", basis.min_margin}};
    }

    bool all_ok = true;
    for (const Hyperplane& h : planes) {
        json entry;
        entry["hyperplane"] = hyperplane_to_json(h);
        json per_alpha = json::array();
        for (std::size_t j = 0; j < inst.alphas.size(); ++j) {
            const HermitianForm& alpha = inst.alphas[j];
            json rec{{"alpha", j + 1}};
            const int kmax = std::min(inst.m, inst.n - 1);
            double worst = 0.0;
            for (int k = 1; k <= kmax; ++k) {
                const RestrictionIdentity ident = restriction_identity(alpha, inst.omega, k, h);
                worst = std::max(worst, ident.residual / ident.scale);
            }
            rec["max_identity_residual"] = worst;
            if (worst >= 1e-10) all_ok = false;
            if (!top_power) {
                const DegeneracyLocus locus = degeneracy_locus(alpha, inst.omega, inst.m);
                const bool in_locus = in_degeneracy_locus(locus, h.v);
                rec["in_degeneracy_locus"] = in_locus;
                rec["locus_kernel_dim"] = locus.kernel_dim;
                if (!in_locus) {
                    const MPositivity mp =
                        is_m_positive(restrict_to(alpha, h), restrict_to(inst.omega, h), inst.m, tol);
                    rec["restricted_m_positive"] = mp.positive;
                    rec["restricted_margin"] = mp.margin;
                    if (!mp.positive) all_ok = false;
                }
            }
            per_alpha.push_back(std::move(rec));
        }
        entry["alphas"] = std::move(per_alpha);
        out["samples"].push_back(std::move(entry));
    }
    out["all_pass"] = all_ok;
    if (top_power) out["warning"] = "m = n: degeneracy locus undefined (needs omega^{n-m-1}); plain restriction only";
    if (!report_path.empty()) save_json_file(report_path, out);
    std::cout << out.dump(2) << "\n";
    if (top_power) return kExitUsage;
    return all_ok ? kExitPass : kExitCheckFailed;
}

int cmd_deform(const std::string& instance_path, int steps, const std::string& report_path,
               double tol) {
    const Instance inst = instance_from_json(load_json_file(instance_path), true, tol);
    const HomotopyReport rep = homotopy_sweep(inst, steps, tol);
    json table = json::array();
    for (const auto& st : rep.steps)
        table.push_back({{"t", st.t},
                         {"signature", {st.signature.positive, st.signature.negative, st.signature.zero}},
                         {"min_abs_eig", st.min_abs_eig},
                         {"dim", st.dim_primitive}});
    const json out{{"steps", table}, {"verdict", rep.verdict}, {"min_margin", rep.min_margin}};
    if (!report_path.empty()) save_json_file(report_path, out);
    std::cout << out.dump(2) << "\n";
    return rep.verdict ? kExitPass : kExitCheckFailed;
}

}  // namespace hrlab
