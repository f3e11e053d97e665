#include "hrlab/hodge_riemann.hpp"

#include <algorithm>
#include <cmath>

namespace hrlab {

Instance Instance::unchecked(int n, int m, int p, int q, HermitianForm omega,
                             std::vector<HermitianForm> alphas) {
    Instance inst{n, m, p, q, std::move(omega), std::move(alphas)};
    return inst;
}

Instance Instance::validated(int n, int m, int p, int q, HermitianForm omega,
                             std::vector<HermitianForm> alphas, double tol) {
    if (n < 1 || n > kMaxAmbientDim) throw RangeError("Instance: n out of range");
    if (p < 0 || q < 0 || p + q > m || m < 1 || m > n)
        throw RangeError("Instance: need 0 <= p, q, p+q <= m <= n and m >= 1");
    if (omega.ambient() != n) throw DimensionError("Instance: omega has wrong dimension");
    if (static_cast<int>(alphas.size()) != m - p - q + 1)
        throw ValidationError("Instance: expected m-p-q+1 polarizations");
    if (!cholesky(omega.matrix()).ok) throw NotKahlerError("Instance: omega is not positive definite");
    for (std::size_t j = 0; j < alphas.size(); ++j) {
        if (alphas[j].ambient() != n) throw DimensionError("Instance: alpha dimension mismatch");
        const HypothesisReport rep = satisfies_theorem_hypotheses(alphas[j], omega, m, tol);
        if (!rep.ok)
            throw ValidationError("Instance: alpha_" + std::to_string(j + 1) +
                                  " fails the hypotheses (semipositive with >= m positive eigenvalues)");
    }
    return unchecked(n, m, p, q, std::move(omega), std::move(alphas));
}

cplx hr_constant(int p, int q) {
    static const cplx i_pow[4] = {cplx(1, 0), cplx(0, 1), cplx(-1, 0), cplx(0, -1)};
    cplx c = i_pow[((q - p) % 4 + 4) % 4];
    if (((p + q) * (p + q + 1) / 2) % 2) c = -c;
    return c;
}

Form build_omega(const Instance& inst) {
    Form acc = wedge_power(inst.omega.to_form(), inst.n - inst.m);
    const int factors = inst.m - inst.p - inst.q;
    for (int j = 0; j < factors; ++j) acc = wedge(acc, inst.alphas[static_cast<std::size_t>(j)].to_form());
    return acc;
}

HermitianForm deformed_alpha(const Instance& inst, std::size_t index, double t) {
    CMatrix a = inst.alphas[index].matrix() * cplx(1.0 - t, 0.0) + inst.omega.matrix() * cplx(t, 0.0);
    return HermitianForm(std::move(a), false);
}

Form build_omega_deformed(const Instance& inst, double t) {
    Form acc = wedge_power(inst.omega.to_form(), inst.n - inst.m);
    const int factors = inst.m - inst.p - inst.q;
    for (int j = 0; j < factors; ++j) acc = wedge(acc, deformed_alpha(inst, static_cast<std::size_t>(j), t).to_form());
    return acc;
}

cplx q_form(const Instance& inst, const Form& phi, const Form& psi) {
    if (phi.bidegree_p() != inst.p || phi.bidegree_q() != inst.q || psi.bidegree_p() != inst.p ||
        psi.bidegree_q() != inst.q)
        throw DegreeError("q_form: arguments must have bidegree (p,q)");
    return hr_constant(inst.p, inst.q) * extract(wedge(wedge(build_omega(inst), phi), conjugate(psi)));
}

CMatrix wedge_map_matrix(const Form& w, int p, int q) {
    const int n = w.ambient();
    const int tp = p + w.bidegree_p();
    const int tq = q + w.bidegree_q();
    const int src_i = (p <= n) ? comb_table(n, p).count() : 0;
    const int src_j = (q <= n) ? comb_table(n, q).count() : 0;
    const int src_dim = src_i * src_j;
    const int tgt_i = (tp <= n) ? comb_table(n, tp).count() : 0;
    const int tgt_j = (tq <= n) ? comb_table(n, tq).count() : 0;
    const int tgt_dim = tgt_i * tgt_j;
    CMatrix a(tgt_dim, src_dim);
    if (src_dim == 0 || tgt_dim == 0) return a;

    const CombTable& si = comb_table(n, p);
    const CombTable& sj = comb_table(n, q);
    const CombTable& wi = comb_table(n, w.bidegree_p());
    const CombTable& wj = comb_table(n, w.bidegree_q());
    const CombTable& ti = comb_table(n, tp);
    const CombTable& tj = comb_table(n, tq);
    const double swap_sign = ((w.bidegree_q() * p) % 2) ? -1.0 : 1.0;

    for (int ir = 0; ir < si.count(); ++ir) {
        const index_mask_t im = si.mask_of(ir);
        for (int jr = 0; jr < sj.count(); ++jr) {
            const index_mask_t jm = sj.mask_of(jr);
            const int col = ir * src_j + jr;
            for (int ur = 0; ur < wi.count(); ++ur) {
                const index_mask_t um = wi.mask_of(ur);
                if (um & im) continue;
                const double su = merge_sign(um, im);
                const int row_i = ti.rank_of(um | im);
                for (int vr = 0; vr < wj.count(); ++vr) {
                    const cplx c = w.coeff(ur, vr);
                    if (c == cplx{}) continue;
                    const index_mask_t vm = wj.mask_of(vr);
                    if (vm & jm) continue;
                    const double s = swap_sign * su * merge_sign(vm, jm);
                    a(row_i * tgt_j + tj.rank_of(vm | jm), col) += s * c;
                }
            }
        }
    }
    return a;
}

GramAssembler::GramAssembler(int n, int p, int q) : n_(n), p_(p), q_(q) {
    const CombTable& ci = comb_table(n, p);
    const CombTable& cj = comb_table(n, q);
    const int r = n - p - q;
    if (r < 0) throw RangeError("GramAssembler: p + q exceeds n");
    const CombTable& cr = comb_table(n, r);
    dim_ = ci.count() * cj.count();
    omega_slot_.assign(static_cast<std::size_t>(dim_) * dim_, -1);
    factor_.assign(static_cast<std::size_t>(dim_) * dim_, cplx{});

    const index_mask_t full = (n == 0) ? 0 : ((index_mask_t{1} << n) - 1);
    const cplx cconst = hr_constant(p, q);
    const cplx inv_gamma = 1.0 / gamma_constant(n);
    double fixed = ((p * q) % 2 ? -1.0 : 1.0);       // conj(e_b) reordering
    if (q % 2) fixed = -fixed;                       // dz block of conj(e_b) past dz-bar block of e_a
    if ((r * (p + q)) % 2) fixed = -fixed;           // Omega's dz-bar block past the combined dz block

    // Entry (row=i, col=j) holds Q(e_j, e_i): a = e_j wedged with conj(b = e_i).
    for (int bi = 0; bi < ci.count(); ++bi)
        for (int bj = 0; bj < cj.count(); ++bj) {
            const int row = bi * cj.count() + bj;
            const index_mask_t ib = ci.mask_of(bi), jb = cj.mask_of(bj);
            for (int ai = 0; ai < ci.count(); ++ai)
                for (int aj = 0; aj < cj.count(); ++aj) {
                    const int col = ai * cj.count() + aj;
                    const index_mask_t ia = ci.mask_of(ai), ja = cj.mask_of(aj);
                    if ((ia & jb) || (ja & ib)) continue;
                    const index_mask_t s = ia | jb, t = ja | ib;
                    const index_mask_t cs = full & ~s, ct = full & ~t;
                    double sgn = fixed * merge_sign(ia, jb) * merge_sign(ja, ib);
                    sgn *= merge_sign(cs, s) * merge_sign(ct, t);
                    const std::size_t idx = static_cast<std::size_t>(row) * dim_ + col;
                    omega_slot_[idx] = cr.rank_of(cs) * cr.count() + cr.rank_of(ct);
                    factor_[idx] = cconst * inv_gamma * sgn;
                }
        }
}

CMatrix GramAssembler::assemble(const Form& omega_form) const {
    if (omega_form.ambient() != n_ || omega_form.bidegree_p() != n_ - p_ - q_ ||
        omega_form.bidegree_q() != n_ - p_ - q_)
        throw DegreeError("GramAssembler: Omega has the wrong bidegree");
    CMatrix g(dim_, dim_);
    const std::vector<cplx>& w = omega_form.data();
    for (int row = 0; row < dim_; ++row)
        for (int col = 0; col < dim_; ++col) {
            const std::size_t idx = static_cast<std::size_t>(row) * dim_ + col;
            const int slot = omega_slot_[idx];
            if (slot >= 0) g(row, col) = factor_[idx] * w[static_cast<std::size_t>(slot)];
        }
    g.hermitize();
    return g;
}

CMatrix lefschetz_matrix(const Instance& inst) {
    return wedge_map_matrix(build_omega(inst), inst.p, inst.q);
}

HlReport hl_report(const Form& omega_form, int p, int q, double tol) {
    HlReport rep;
    const CMatrix l = wedge_map_matrix(omega_form, p, q);
    if (l.rows() == 0 || l.cols() == 0) {
        rep.holds = (l.rows() == l.cols());  // vacuous isomorphism of zero spaces
        rep.margin = rep.holds ? 1.0 : 0.0;
        return rep;
    }
    if (l.cols() > 32 && l.rows() == l.cols()) {
        CMatrix gram = l.adjoint() * l;
        gram.hermitize();
        const std::vector<double> eigs = eigh_values(gram);
        const double lmax = std::max(eigs.back(), 0.0);
        const double lmin = std::max(eigs.front(), 0.0);
        rep.sigma_max = std::sqrt(lmax);
        rep.sigma_min = std::sqrt(lmin);
        rep.margin = rep.sigma_max > 0.0 ? rep.sigma_min / rep.sigma_max : 0.0;
        // The squared route bottoms out near sqrt(eps); trust it only clear of
        // that band, otherwise pay for the accurate SVD.
        if (rep.margin > 1e-6) {
            rep.holds = true;
            return rep;
        }
    }
    const SvdResult s = svd(l);
    rep.sigma_max = s.sigma.front();
    rep.sigma_min = s.sigma.back();
    rep.margin = rep.sigma_max > 0.0 ? rep.sigma_min / rep.sigma_max : 0.0;
    rep.holds = (l.rows() == l.cols()) && rep.margin > tol;
    return rep;
}

HlReport hl_holds(const Instance& inst, double tol) {
    return hl_report(build_omega(inst), inst.p, inst.q, tol);
}

namespace {

// Certifies full column rank from the (small) column Gram when the smallest
// singular value sits far above both the requested floor and the squared
// route's noise; false means "cannot certify", not "rank deficient".
bool full_rank_gram_gate(const CMatrix& a, double abs_floor) {
    if (a.cols() == 0) return true;
    CMatrix g = a.adjoint() * a;
    g.hermitize();
    const std::vector<double> eigs = eigh_values(g);
    const double lmin = std::max(eigs.front(), 0.0);
    const double lmax = std::max(eigs.back(), 0.0);
    if (lmax <= 0.0 || lmin <= 1e-12 * lmax) return false;
    const double smin = std::sqrt(lmin);
    return abs_floor > 0.0 ? smin > abs_floor : smin > 1e-6 * std::sqrt(lmax);
}

double largest_singular_value(const CMatrix& gram_small) {
    // Power iteration on A A^dagger; plenty for a residual scale.
    const int n = gram_small.rows();
    std::vector<cplx> v(static_cast<std::size_t>(n), cplx(1.0, 0.0));
    double lambda = 0.0;
    for (int it = 0; it < 12; ++it) {
        std::vector<cplx> w = matvec(gram_small, v);
        lambda = vec_norm(w);
        if (lambda <= 0.0) return 0.0;
        for (cplx& z : w) z /= lambda;
        v = std::move(w);
    }
    return std::sqrt(lambda);
}

// Row-space basis of a wide full-row-rank matrix by CholeskyQR2; empty result
// means the route is not trustworthy (rank-deficient or ill-conditioned) and
// the caller falls back to the SVD.
CMatrix rowspace_cholqr(const CMatrix& a) {
    CMatrix g1 = a * a.adjoint();
    g1.hermitize();
    const CholeskyResult c1 = cholesky(g1);
    if (!c1.ok) return {};
    double dmin = 1e300, dmax = 0.0;
    for (int i = 0; i < c1.lower.rows(); ++i) {
        const double d = c1.lower(i, i).real();
        dmin = std::min(dmin, d);
        dmax = std::max(dmax, d);
    }
    if (!(dmin > 1e-7 * dmax)) return {};
    CMatrix q = forward_solve(c1.lower, a).adjoint();  // A^dagger L^{-dagger}
    CMatrix g2 = q.adjoint() * q;
    g2.hermitize();
    const CholeskyResult c2 = cholesky(g2);
    if (!c2.ok) return {};
    return forward_solve(c2.lower, q.adjoint()).adjoint();
}

// Kernel of the map matrix plus the data primitive_subspace reports.
PrimitiveSubspace kernel_of_map(const CMatrix& a, int dim, double tol) {
    PrimitiveSubspace ps;
    if (a.rows() == 0) {
        ps.basis = CMatrix::identity(dim);
        ps.dimension = dim;
        ps.max_image_residual = 0.0;
        return ps;
    }
    if (a.rows() < a.cols() && a.cols() > 32) {
        const CMatrix rowspace = rowspace_cholqr(a);
        if (rowspace.cols() == a.rows()) {
            ps.basis = complete_orthonormal(rowspace, dim);
            ps.dimension = ps.basis.cols();
            CMatrix g1 = a * a.adjoint();
            g1.hermitize();
            const double smax = largest_singular_value(g1);
            double worst = 0.0;
            for (int c = 0; c < ps.basis.cols(); ++c) {
                std::vector<cplx> v(static_cast<std::size_t>(dim));
                for (int r = 0; r < dim; ++r) v[static_cast<std::size_t>(r)] = ps.basis(r, c);
                worst = std::max(worst, vec_norm(matvec(a, v)));
            }
            ps.max_image_residual = smax > 0.0 ? worst / smax : worst;
            if (ps.max_image_residual < tol) return ps;
            // Residual gate failed: recompute through the SVD below.
        }
    }
    const SvdResult s = svd(a);
    const double smax = s.sigma.empty() ? 0.0 : s.sigma.front();
    const double thresh = tol * smax;
    if (a.rows() >= a.cols()) {
        int k = 0;
        for (double sv : s.sigma)
            if (sv <= thresh) ++k;
        ps.basis = CMatrix(dim, k);
        int out = 0;
        for (std::size_t c = 0; c < s.sigma.size(); ++c)
            if (s.sigma[c] <= thresh) {
                for (int r = 0; r < dim; ++r) ps.basis(r, out) = s.v(r, static_cast<int>(c));
                ++out;
            }
    } else {
        int rank = 0;
        for (double sv : s.sigma)
            if (sv > thresh) ++rank;
        CMatrix rowspace(dim, rank);
        int out = 0;
        for (std::size_t c = 0; c < s.sigma.size(); ++c)
            if (s.sigma[c] > thresh) {
                for (int r = 0; r < dim; ++r) rowspace(r, out) = s.v(r, static_cast<int>(c));
                ++out;
            }
        ps.basis = complete_orthonormal(rowspace, dim);
    }
    ps.dimension = ps.basis.cols();
    double worst = 0.0;
    for (int c = 0; c < ps.basis.cols(); ++c) {
        std::vector<cplx> v(dim);
        for (int r = 0; r < dim; ++r) v[r] = ps.basis(r, c);
        worst = std::max(worst, vec_norm(matvec(a, v)));
    }
    ps.max_image_residual = smax > 0.0 ? worst / smax : worst;
    return ps;
}

}  // namespace

PrimitiveSubspace primitive_subspace(const Instance& inst, double tol) {
    const Form theta = wedge(build_omega(inst), inst.primitive_alpha().to_form());
    const CMatrix a = wedge_map_matrix(theta, inst.p, inst.q);
    return kernel_of_map(a, inst.lambda_dim(), tol);
}

std::vector<Form> primitive_basis_forms(const Instance& inst, const PrimitiveSubspace& ps) {
    std::vector<Form> forms;
    forms.reserve(static_cast<std::size_t>(ps.dimension));
    for (int c = 0; c < ps.basis.cols(); ++c) {
        Form f(inst.n, inst.p, inst.q);
        for (int r = 0; r < ps.basis.rows(); ++r) f.data()[static_cast<std::size_t>(r)] = ps.basis(r, c);
        forms.push_back(std::move(f));
    }
    return forms;
}

Analysis analyze(const Instance& inst, const GramAssembler* assembler, double tol) {
    Analysis an;
    an.constant = hr_constant(inst.p, inst.q);
    an.omega_form = build_omega(inst);
    an.theta_form = wedge(an.omega_form, inst.primitive_alpha().to_form());
    an.primitive_map = wedge_map_matrix(an.theta_form, inst.p, inst.q);
    an.primitive = kernel_of_map(an.primitive_map, inst.lambda_dim(), tol);
    an.hl = hl_report(an.omega_form, inst.p, inst.q, tol);
    if (assembler) {
        an.gram_full = assembler->assemble(an.omega_form);
    } else {
        const GramAssembler local(inst.n, inst.p, inst.q);
        an.gram_full = local.assemble(an.omega_form);
    }
    an.gram_full_eigs = eigh_values(an.gram_full);
    CMatrix gp = an.primitive.basis.adjoint() * an.gram_full * an.primitive.basis;
    gp.hermitize();
    an.gram_primitive = std::move(gp);
    an.gram_primitive_eigs = eigh_values(an.gram_primitive);
    return an;
}

namespace {

GramReport gram_report_from(const CMatrix& gram, const std::vector<double>& eigs, cplx constant,
                            bool require_definite, double tol) {
    GramReport rep;
    rep.gram = gram;
    rep.eigenvalues = eigs;
    rep.signature = signature_of(eigs, tol);
    rep.hr_constant = constant;
    double scale = 0.0;
    for (double v : eigs) scale = std::max(scale, std::abs(v));
    if (eigs.empty()) {
        rep.verdict = true;
        rep.margin = 0.0;
    } else if (require_definite) {
        rep.margin = scale > 0.0 ? eigs.front() / scale : 0.0;
        rep.verdict = rep.margin > tol;
    } else {
        double min_abs = scale;
        for (double v : eigs) min_abs = std::min(min_abs, std::abs(v));
        rep.margin = scale > 0.0 ? min_abs / scale : 0.0;
        rep.verdict = rep.signature.zero == 0;
    }
    return rep;
}

}  // namespace

GramReport verify_hrr(const Instance& inst, const Analysis& an, double tol) {
    (void)inst;
    return gram_report_from(an.gram_primitive, an.gram_primitive_eigs, an.constant, true, tol);
}

GramReport verify_hrr(const Instance& inst, double tol) { return verify_hrr(inst, analyze(inst, nullptr, tol), tol); }

GramReport full_gram_report(const Instance& inst, const Analysis& an, double tol) {
    (void)inst;
    return gram_report_from(an.gram_full, an.gram_full_eigs, an.constant, false, tol);
}

GramReport full_gram_report(const Instance& inst, double tol) {
    return full_gram_report(inst, analyze(inst, nullptr, tol), tol);
}

LdReport verify_ld(const Instance& inst, const Analysis& an, double tol) {
    LdReport rep;
    rep.dim_total = inst.lambda_dim();
    rep.dim_primitive = an.primitive.dimension;
    rep.dim_lower = inst.lower_dim();

    if (inst.p == 0 || inst.q == 0) {
        rep.degenerate_case = true;
        rep.precondition_ok = true;
        rep.dims_exact = (rep.dim_primitive == rep.dim_total);
        rep.intersection_trivial = true;
        rep.orthogonal = true;
        rep.ortho_residual = 0.0;
        rep.verdict = rep.dims_exact;
        return rep;
    }

    // Preconditions: HL for (p,q), and Omega ^ alpha^2 an isomorphism on the
    // lower bidegree (as in the decomposition's proof).
    const HlReport& hl = an.hl;
    const Form alpha_f = inst.primitive_alpha().to_form();
    const Form omega_alpha2 = wedge(an.theta_form, alpha_f);
    const CMatrix lower_map = wedge_map_matrix(omega_alpha2, inst.p - 1, inst.q - 1);
    const bool lower_iso =
        full_rank_gram_gate(lower_map, 0.0) || (rank_of(lower_map, tol) == rep.dim_lower);
    rep.precondition_ok = hl.holds && lower_iso;
    if (!rep.precondition_ok) return rep;

    // alpha ^ Lambda^{p-1,q-1}, columns normalized.
    CMatrix w = wedge_map_matrix(alpha_f, inst.p - 1, inst.q - 1);
    for (int c = 0; c < w.cols(); ++c) {
        double norm = 0.0;
        for (int r = 0; r < w.rows(); ++r) norm += std::norm(w(r, c));
        norm = std::sqrt(norm);
        if (norm > 0.0)
            for (int r = 0; r < w.rows(); ++r) w(r, c) /= norm;
    }

    rep.dims_exact = (rep.dim_primitive + rep.dim_lower == rep.dim_total);

    // rank([V W]) = dim P + rank((I - V V^dagger) W) since V is orthonormal;
    // trivial intersection means the projected W keeps full column rank. W's
    // columns are unit, so the rank threshold is anchored at scale 1 (a
    // relative threshold on the projection would pass on pure noise).
    CMatrix projected = w;
    const CMatrix coeffs = an.primitive.basis.adjoint() * w;
    projected -= an.primitive.basis * coeffs;
    const bool w_full_rank = full_rank_gram_gate(w, 1e-6) || (rank_of(w, tol) == rep.dim_lower);
    bool projected_full_rank = full_rank_gram_gate(projected, 1e-6);
    if (!projected_full_rank && projected.cols() > 0) {
        int projected_rank = 0;
        for (double sv : svd(projected).sigma)
            if (sv > tol) ++projected_rank;
        projected_full_rank = (projected_rank == rep.dim_lower);
    }
    rep.intersection_trivial = w_full_rank && projected_full_rank;

    // Q-orthogonality: Q(b_i, alpha ^ f_j) = (alpha^f_j)^dagger G b_i.
    const CMatrix cross = w.adjoint() * an.gram_full * an.primitive.basis;
    double scale = 0.0;
    for (double v : an.gram_full_eigs) scale = std::max(scale, std::abs(v));
    double worst = 0.0;
    for (int i = 0; i < cross.rows(); ++i)
        for (int j = 0; j < cross.cols(); ++j) worst = std::max(worst, std::abs(cross(i, j)));
    rep.ortho_residual = scale > 0.0 ? worst / scale : worst;
    rep.orthogonal = rep.ortho_residual <= 1e-9;

    rep.verdict = rep.dims_exact && rep.intersection_trivial && rep.orthogonal;
    return rep;
}

LdReport verify_ld(const Instance& inst, double tol) { return verify_ld(inst, analyze(inst, nullptr, tol), tol); }

HomotopyReport homotopy_sweep(const Instance& inst, int steps, double tol) {
    if (steps < 2) throw RangeError("homotopy_sweep: need steps >= 2");
    const GramAssembler assembler(inst.n, inst.p, inst.q);
    HomotopyReport rep;
    rep.min_margin = 1.0;
    rep.verdict = true;

    for (int s = 0; s < steps; ++s) {
        const double t = static_cast<double>(s) / (steps - 1);
        const Form omega_t = build_omega_deformed(inst, t);
        const Form theta_t = wedge(omega_t, deformed_alpha(inst, inst.alphas.size() - 1, t).to_form());
        const CMatrix map_t = wedge_map_matrix(theta_t, inst.p, inst.q);
        const PrimitiveSubspace prim = kernel_of_map(map_t, inst.lambda_dim(), tol);
        CMatrix gram = prim.basis.adjoint() * assembler.assemble(omega_t) * prim.basis;
        gram.hermitize();
        const std::vector<double> eigs = eigh_values(gram);

        HomotopyStep step;
        step.t = t;
        step.dim_primitive = prim.dimension;
        step.signature = signature_of(eigs, tol);
        step.scale = 0.0;
        for (double v : eigs) step.scale = std::max(step.scale, std::abs(v));
        step.min_abs_eig = eigs.empty() ? 0.0 : step.scale;
        for (double v : eigs) step.min_abs_eig = std::min(step.min_abs_eig, std::abs(v));
        rep.steps.push_back(step);

        const double margin = step.scale > 0.0 ? step.min_abs_eig / step.scale : 0.0;
        rep.min_margin = std::min(rep.min_margin, margin);
        if (margin <= tol) rep.verdict = false;
    }
    for (const HomotopyStep& st : rep.steps) {
        if (!(st.signature == rep.steps.front().signature) ||
            st.dim_primitive != rep.steps.front().dim_primitive)
            rep.verdict = false;
    }
    return rep;
}

double certificate_min_eig(const CMatrix& gram, const CMatrix& primitive_map, double c1, double c2) {
    CMatrix m = gram * cplx(c1, 0.0);
    if (primitive_map.rows() > 0) {
        m += primitive_map.adjoint() * primitive_map * cplx(c2, 0.0);
    }
    m -= CMatrix::identity(gram.rows());
    m.hermitize();
    const std::vector<double> eigs = eigh_values(m);
    return eigs.empty() ? 0.0 : eigs.front();
}

LocalEstimate local_estimate_constants(const Instance& inst, const Analysis& an, int refine, double tol) {
    (void)inst;
    LocalEstimate est;
    const double mu = an.gram_primitive_eigs.empty() ? 0.0 : an.gram_primitive_eigs.front();
    double gnorm = 0.0;
    for (double v : an.gram_full_eigs) gnorm = std::max(gnorm, std::abs(v));
    est.precondition_ok = an.primitive.dimension == 0 || mu > tol * std::max(gnorm, 1e-300);
    if (!est.precondition_ok) return est;

    double sigma = 0.0;
    if (an.primitive_map.rows() > 0) {
        const SvdResult s = svd(an.primitive_map);
        const double smax = s.sigma.empty() ? 0.0 : s.sigma.front();
        for (auto it = s.sigma.rbegin(); it != s.sigma.rend(); ++it)
            if (*it > tol * smax) {
                sigma = *it;
                break;
            }
    }

    // Closed-form certificate from the orthogonal splitting x = x_P + x_W:
    // target kappa * ||x||^2 with kappa = 1.25 leaves a PSD margin of 0.25.
    const double kappa = 1.25;
    const double c1 = (mu > 0.0) ? (2.0 * kappa) / mu : 0.0;
    double c2 = 1.0;
    if (sigma > 0.0) {
        const double cg = c1 * gnorm;
        c2 = (kappa + cg + cg * cg / kappa) / (sigma * sigma);
    }
    est.c1 = c1;
    est.c2 = c2;

    if (an.primitive.dimension == 0) {
        // Q plays no role: ||A x|| >= sigma ||x|| on the whole space.
        est.c1 = tol;  // any positive constant works
        est.c2 = (sigma > 0.0) ? kappa / (sigma * sigma) : 1.0;
    }

    est.certificate_min_eig = certificate_min_eig(an.gram_full, an.primitive_map, est.c1, est.c2);
    est.ok = est.certificate_min_eig >= -1e-10;

    // Optional tightening: geometric bisection toward the splitting bounds.
    if (est.ok && refine > 0) {
        double lo = (sigma > 0.0) ? 1.0 / (sigma * sigma) : est.c2;
        double hi = est.c2;
        for (int it = 0; it < refine && hi > lo * 1.05; ++it) {
            const double mid = std::sqrt(lo * hi);
            if (certificate_min_eig(an.gram_full, an.primitive_map, est.c1, mid) >= 0.0)
                hi = mid;
            else
                lo = mid;
        }
        est.c2 = hi;
        double lo1 = (mu > 0.0) ? 1.0 / mu : est.c1;
        double hi1 = est.c1;
        for (int it = 0; it < refine && hi1 > lo1 * 1.05; ++it) {
            const double mid = std::sqrt(lo1 * hi1);
            if (certificate_min_eig(an.gram_full, an.primitive_map, mid, est.c2) >= 0.0)
                hi1 = mid;
            else
                lo1 = mid;
        }
        est.c1 = hi1;
        est.certificate_min_eig = certificate_min_eig(an.gram_full, an.primitive_map, est.c1, est.c2);
        est.ok = est.certificate_min_eig >= -1e-10;
    }
    return est;
}

LocalEstimate local_estimate_constants(const Instance& inst, int refine, double tol) {
    return local_estimate_constants(inst, analyze(inst, nullptr, tol), refine, tol);
}

bool is_lefschetz_form(const Form& omega_form, int p, int q, double tol) {
    const int n = omega_form.ambient();
    const int k = n - p - q;
    if (omega_form.bidegree_p() != k || omega_form.bidegree_q() != k)
        throw DegreeError("is_lefschetz_form: form must have bidegree (n-p-q, n-p-q)");
    if (p < 0 || q < 0 || p > n || q > n) return true;  // zero space, vacuous
    const CMatrix m = wedge_map_matrix(omega_form, p, q);
    if (m.cols() == 0) return true;
    if (m.rows() != m.cols()) return false;
    const SvdResult s = svd(m);
    return s.sigma.front() > 0.0 && s.sigma.back() / s.sigma.front() > tol;
}

bool is_hodge_riemann_form(const Form& omega_form, const std::vector<Form>& path,
                           const HermitianForm& alpha, int p, int q, double tol) {
    const Form alpha_f = alpha.to_form();
    std::vector<const Form*> samples;
    samples.push_back(&omega_form);
    for (const Form& f : path) samples.push_back(&f);
    for (const Form* sample : samples) {
        for (int r = 0; r <= 1; ++r) {
            if (p - r < 0 || q - r < 0) continue;
            Form twisted = *sample;
            for (int j = 0; j < 2 * r; ++j) twisted = wedge(twisted, alpha_f);
            if (!is_lefschetz_form(twisted, p - r, q - r, tol)) return false;
        }
    }
    return true;
}

}  // namespace hrlab
