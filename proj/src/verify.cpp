#include "hrlab/verify.hpp"

#include <algorithm>
#include <cmath>

#include "hrlab/rng.hpp"

namespace hrlab {

namespace {

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

CheckResult hypotheses_check(const Instance& inst, const CheckOptions& opts) {
    CheckResult c;
    c.name = "hypotheses";
    c.counts = false;
    c.verdict = true;
    double worst_semi = 1.0, worst_em = 1e300;
    nlohmann::json per_alpha = nlohmann::json::array();
    for (const auto& alpha : inst.alphas) {
        const HypothesisReport rep = satisfies_theorem_hypotheses(alpha, inst.omega, inst.m, opts.tol);
        per_alpha.push_back({{"ok", rep.ok},
                             {"semipositive_margin", rep.semipositive_margin},
                             {"relative_rank", rep.rank},
                             {"e_m_margin", rep.e_m_margin}});
        if (!rep.ok) c.verdict = false;
        worst_semi = std::min(worst_semi, rep.semipositive_margin);
        worst_em = std::min(worst_em, rep.e_m_margin);
    }
    c.margin = worst_em;
    c.detail["alphas"] = std::move(per_alpha);
    c.detail["min_semipositive_margin"] = worst_semi;
    return c;
}

CheckResult restriction_check(const Instance& inst, const CheckOptions& opts) {
    CheckResult c;
    c.name = "restriction_identity";
    if (inst.m == inst.n) {
        c.verdict = true;
        c.margin = 0.0;
        c.detail["skipped"] = "m = n: no hyperplane power omega^{n-m-1}";
        return c;
    }
    Rng rng(Rng::derive(opts.seed, 0x7265737472ULL));
    double worst_rel = 0.0;
    double worst_positivity = 1e300;
    bool restricted_ok = true;

    for (int s = 0; s < opts.restriction_samples; ++s) {
        const Hyperplane h(random_unit_vector(inst.n, rng));
        const HermitianForm& alpha = inst.alphas[s % inst.alphas.size()];
        const int k = 1 + s % std::min(inst.m, inst.n - 1);
        const RestrictionIdentity ident = restriction_identity(alpha, inst.omega, k, h);
        worst_rel = std::max(worst_rel, ident.residual / ident.scale);

        // Restrictions stay m-positive off the degeneracy locus.
        const DegeneracyLocus locus = degeneracy_locus(alpha, inst.omega, inst.m);
        if (!in_degeneracy_locus(locus, h.v)) {
            const MPositivity mp =
                is_m_positive(restrict_to(alpha, h), restrict_to(inst.omega, h), inst.m, opts.tol);
            worst_positivity = std::min(worst_positivity, mp.margin);
            if (!mp.positive) restricted_ok = false;
        }
    }
    c.margin = worst_rel;
    c.verdict = worst_rel < 1e-10 && restricted_ok;
    c.detail["max_relative_residual"] = worst_rel;
    c.detail["min_restricted_margin"] = (worst_positivity == 1e300) ? 0.0 : worst_positivity;
    c.detail["samples"] = opts.restriction_samples;
    return c;
}

}  // namespace

VerificationReport run_checks(const Instance& inst, const CheckOptions& opts,
                              const GramAssembler* assembler) {
    VerificationReport report;
    const Analysis an = analyze(inst, assembler, opts.tol);

    report.checks.push_back(hypotheses_check(inst, opts));

    {
        const GramReport hrr = verify_hrr(inst, an, opts.tol);
        CheckResult c;
        c.name = "hrr";
        c.verdict = hrr.verdict;
        c.margin = hrr.margin;
        c.detail["dim_primitive"] = an.primitive.dimension;
        c.detail["signature"] = {hrr.signature.positive, hrr.signature.negative, hrr.signature.zero};
        report.checks.push_back(std::move(c));
    }
    {
        CheckResult c;
        c.name = "hl";
        c.verdict = an.hl.holds;
        c.margin = an.hl.margin;
        c.detail["sigma_min"] = an.hl.sigma_min;
        c.detail["sigma_max"] = an.hl.sigma_max;
        report.checks.push_back(std::move(c));
    }
    {
        const GramReport full = full_gram_report(inst, an, opts.tol);
        CheckResult c;
        c.name = "nondegenerate";
        c.verdict = full.verdict;
        c.margin = full.margin;
        c.detail["signature"] = {full.signature.positive, full.signature.negative, full.signature.zero};
        report.checks.push_back(std::move(c));
    }
    {
        const LdReport ld = verify_ld(inst, an, opts.tol);
        CheckResult c;
        c.name = "ld";
        c.verdict = ld.verdict;
        c.margin = ld.ortho_residual;
        c.detail["precondition_ok"] = ld.precondition_ok;
        c.detail["dims"] = {ld.dim_total, ld.dim_primitive, ld.dim_lower};
        c.detail["degenerate_case"] = ld.degenerate_case;
        if (!ld.precondition_ok) c.detail["note"] = "precondition failed (HL unavailable)";
        report.checks.push_back(std::move(c));
    }
    if (opts.with_restriction) report.checks.push_back(restriction_check(inst, opts));
    if (opts.with_homotopy) {
        const HomotopyReport hom = homotopy_sweep(inst, opts.homotopy_steps, opts.tol);
        CheckResult c;
        c.name = "homotopy";
        c.verdict = hom.verdict;
        c.margin = hom.min_margin;
        nlohmann::json table = nlohmann::json::array();
        for (const auto& st : hom.steps)
            table.push_back({{"t", st.t},
                             {"signature", {st.signature.positive, st.signature.negative, st.signature.zero}},
                             {"min_abs_eig", st.min_abs_eig},
                             {"dim", st.dim_primitive}});
        c.detail["steps"] = std::move(table);
        report.checks.push_back(std::move(c));
    }
    if (opts.with_local_estimate) {
        const LocalEstimate est = local_estimate_constants(inst, an, opts.local_refine, opts.tol);
        CheckResult c;
        c.name = "local_estimate";
        c.verdict = est.precondition_ok && est.ok;
        c.margin = est.certificate_min_eig;
        c.detail["c1"] = est.c1;
        c.detail["c2"] = est.c2;
        if (!est.precondition_ok) c.detail["note"] = "precondition failed (HRR unavailable)";
        report.checks.push_back(std::move(c));
    }

    report.all_pass = true;
    for (const auto& c : report.checks)
        if (c.counts && !c.verdict) report.all_pass = false;
    return report;
}

nlohmann::json report_to_json(const VerificationReport& report) {
    nlohmann::json checks;
    for (const auto& c : report.checks)
        checks[c.name] = {{"verdict", c.verdict}, {"margin", c.margin}, {"detail", c.detail}};
    return nlohmann::json{{"checks", std::move(checks)}, {"all_pass", report.all_pass}};
}

}  // namespace hrlab
