#include "hrlab/restriction.hpp"

#include <algorithm>
#include <cmath>

namespace hrlab {

namespace {

cplx phase_of(cplx z) {
    const double m = std::abs(z);
    return m > 0.0 ? z / m : cplx(1.0, 0.0);
}

// Determinant of the minor t[rows, cols] with partial-pivot LU; index sets
// come in as masks over {1..n}.
cplx minor_det(const CMatrix& t, index_mask_t rows, index_mask_t cols, int k) {
    if (k == 0) return 1.0;
    std::vector<int> ri, ci;
    for (int i = 0; i < t.rows(); ++i)
        if (rows & (index_mask_t{1} << i)) ri.push_back(i);
    for (int j = 0; j < t.cols(); ++j)
        if (cols & (index_mask_t{1} << j)) ci.push_back(j);
    std::vector<cplx> m(static_cast<std::size_t>(k) * k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) m[static_cast<std::size_t>(i) * k + j] = t(ri[i], ci[j]);
    cplx det = 1.0;
    for (int col = 0; col < k; ++col) {
        int piv = col;
        double best = std::abs(m[static_cast<std::size_t>(col) * k + col]);
        for (int r = col + 1; r < k; ++r) {
            const double v = std::abs(m[static_cast<std::size_t>(r) * k + col]);
            if (v > best) {
                best = v;
                piv = r;
            }
        }
        if (best == 0.0) return 0.0;
        if (piv != col) {
            for (int j = 0; j < k; ++j) std::swap(m[static_cast<std::size_t>(piv) * k + j], m[static_cast<std::size_t>(col) * k + j]);
            det = -det;
        }
        const cplx d = m[static_cast<std::size_t>(col) * k + col];
        det *= d;
        for (int r = col + 1; r < k; ++r) {
            const cplx f = m[static_cast<std::size_t>(r) * k + col] / d;
            if (f == cplx{}) continue;
            for (int j = col; j < k; ++j) m[static_cast<std::size_t>(r) * k + j] -= f * m[static_cast<std::size_t>(col) * k + j];
        }
    }
    return det;
}

}  // namespace

Hyperplane::Hyperplane(std::vector<cplx> covector) : v(std::move(covector)) {
    double norm = 0.0;
    for (const cplx& z : v) norm += std::norm(z);
    norm = std::sqrt(norm);
    if (norm <= 0.0) throw ValidationError("Hyperplane: defining covector must be nonzero");
    for (cplx& z : v) z /= norm;
}

cplx pair_with(const Hyperplane& h, const std::vector<cplx>& z) {
    if (z.size() != h.v.size()) throw DimensionError("pair_with: dimension mismatch");
    cplx s = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i) s += h.v[i] * z[i];
    return s;
}

CMatrix unitary_completion(const std::vector<cplx>& unit_last_column) {
    const int n = static_cast<int>(unit_last_column.size());
    const cplx beta = phase_of(unit_last_column[n - 1]);
    // x = conj(beta) c has a real nonnegative last entry, so u = x + e_n never
    // cancels; H = I - 2 u u^dagger / |u|^2 maps e_n to -x.
    std::vector<cplx> u(unit_last_column);
    for (cplx& z : u) z *= std::conj(beta);
    u[n - 1] += 1.0;
    double unorm2 = 0.0;
    for (const cplx& z : u) unorm2 += std::norm(z);
    CMatrix h = CMatrix::identity(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) h(i, j) -= 2.0 / unorm2 * u[i] * std::conj(u[j]);
    CMatrix result(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) result(i, j) = -h(i, j) * (j == n - 1 ? beta : cplx(1.0));
    return result;
}

Form pullback(const Form& f, const CMatrix& t) {
    const int n = f.ambient();
    if (t.rows() != n || t.cols() != n) throw DimensionError("pullback: transform must be n x n");
    const int p = f.bidegree_p(), q = f.bidegree_q();
    Form out(n, p, q);
    if (f.slots() == 0) return out;

    const CombTable& ti = comb_table(n, p);
    const CombTable& tj = comb_table(n, q);
    // Precompute p x p and q x q minors.
    std::vector<cplx> mi(static_cast<std::size_t>(ti.count()) * ti.count());
    for (int a = 0; a < ti.count(); ++a)
        for (int b = 0; b < ti.count(); ++b)
            mi[static_cast<std::size_t>(a) * ti.count() + b] = minor_det(t, ti.mask_of(a), ti.mask_of(b), p);
    std::vector<cplx> mj;
    const bool same = (p == q);
    if (!same) {
        mj.resize(static_cast<std::size_t>(tj.count()) * tj.count());
        for (int a = 0; a < tj.count(); ++a)
            for (int b = 0; b < tj.count(); ++b)
                mj[static_cast<std::size_t>(a) * tj.count() + b] = minor_det(t, tj.mask_of(a), tj.mask_of(b), q);
    }
    const std::vector<cplx>& mjr = same ? mi : mj;

    for (int ir = 0; ir < ti.count(); ++ir)
        for (int jr = 0; jr < tj.count(); ++jr) {
            const cplx c = f.coeff(ir, jr);
            if (c == cplx{}) continue;
            for (int kr = 0; kr < ti.count(); ++kr) {
                const cplx di = mi[static_cast<std::size_t>(ir) * ti.count() + kr];
                if (di == cplx{}) continue;
                for (int lr = 0; lr < tj.count(); ++lr) {
                    const cplx dj = mjr[static_cast<std::size_t>(jr) * tj.count() + lr];
                    if (dj == cplx{}) continue;
                    out.coeff(kr, lr) += c * di * std::conj(dj);
                }
            }
        }
    return out;
}

HermitianForm hyperplane_one_one(const Hyperplane& h) {
    const int n = h.ambient();
    CMatrix a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = h.v[i] * std::conj(h.v[j]);
    return HermitianForm(std::move(a), false);
}

Form restrict_to(const Form& f, const Hyperplane& h) {
    const int n = f.ambient();
    if (n != h.ambient()) throw DimensionError("restrict_to: dimension mismatch");
    if (n < 2) throw RangeError("restrict_to: need n >= 2");
    const int p = f.bidegree_p(), q = f.bidegree_q();
    Form out(n - 1, p, q);
    if (p > n - 1 || q > n - 1 || f.slots() == 0) return out;  // forced zero

    std::vector<cplx> last(h.v.size());
    for (std::size_t i = 0; i < last.size(); ++i) last[i] = std::conj(h.v[i]);
    const Form moved = pullback(f, unitary_completion(last));

    const CombTable& si = comb_table(n, p);
    const CombTable& sj = comb_table(n, q);
    const CombTable& oi = comb_table(n - 1, p);
    const CombTable& oj = comb_table(n - 1, q);
    const index_mask_t drop = index_mask_t{1} << (n - 1);
    for (int ir = 0; ir < si.count(); ++ir) {
        const index_mask_t im = si.mask_of(ir);
        if (im & drop) continue;
        for (int jr = 0; jr < sj.count(); ++jr) {
            const index_mask_t jm = sj.mask_of(jr);
            if (jm & drop) continue;
            const cplx c = moved.coeff(ir, jr);
            if (c == cplx{}) continue;
            out.coeff(oi.rank_of(im), oj.rank_of(jm)) = c;
        }
    }
    return out;
}

HermitianForm restrict_to(const HermitianForm& alpha, const Hyperplane& h) {
    const int n = alpha.ambient();
    if (n != h.ambient()) throw DimensionError("restrict_to: dimension mismatch");
    if (n < 2) throw RangeError("restrict_to: need n >= 2");
    std::vector<cplx> last(h.v.size());
    for (std::size_t i = 0; i < last.size(); ++i) last[i] = std::conj(h.v[i]);
    const CMatrix u = unitary_completion(last);
    CMatrix moved = u.transpose() * alpha.matrix() * u.conjugate();
    moved.hermitize();
    return HermitianForm(moved.block(0, 0, n - 1, n - 1), false);
}

RestrictionIdentity restriction_identity(const HermitianForm& alpha, const HermitianForm& omega,
                                         int k, const Hyperplane& h) {
    const int n = alpha.ambient();
    if (k < 1 || k > n - 1) throw RangeError("restriction_identity: need 1 <= k <= n-1");
    if (omega.ambient() != n || h.ambient() != n) throw DimensionError("restriction_identity: dimension mismatch");

    RestrictionIdentity out;
    const Form lhs_form = wedge(wedge(wedge_power(alpha.to_form(), k), wedge_power(omega.to_form(), n - k - 1)),
                                hyperplane_one_one(h).to_form());
    out.lhs = extract(lhs_form).real();

    const HermitianForm ar = restrict_to(alpha, h);
    const HermitianForm wr = restrict_to(omega, h);
    const Form rhs_form = wedge(wedge_power(ar.to_form(), k), wedge_power(wr.to_form(), n - 1 - k));
    out.rhs = extract(rhs_form).real();
    out.residual = std::abs(out.lhs - out.rhs);
    out.scale = std::max({std::abs(out.lhs), std::abs(out.rhs),
                          std::pow(alpha.matrix().frobenius_norm(), k) *
                              std::pow(omega.matrix().frobenius_norm(), n - k - 1)});
    return out;
}

double restriction_identity_residual(const HermitianForm& alpha, const HermitianForm& omega, int k,
                                     const Hyperplane& h) {
    return restriction_identity(alpha, omega, k, h).residual;
}

CMatrix restriction_gram(const HermitianForm& alpha, const HermitianForm& omega, int k) {
    const int n = alpha.ambient();
    if (k < 1 || k > n - 1) throw RangeError("restriction_gram: need 1 <= k <= n-1");
    const Form rest = wedge(wedge_power(alpha.to_form(), k), wedge_power(omega.to_form(), n - k - 1));
    const CombTable& t1 = comb_table(n, 1);
    CMatrix gram(n, n);
    // v^dagger gram v must equal extract(rest ^ i dH_v ^ dH-bar_v); with
    // i dH ^ dH-bar = i sum v_a conj(v_b) dz_a dz-bar_b this pins
    // gram(j, a) = extract(rest ^ i dz_a ^ dz-bar_j).
    for (int a = 0; a < n; ++a)
        for (int j = 0; j < n; ++j) {
            Form slot(n, 1, 1);
            slot.coeff(t1.rank_of(index_mask_t{1} << a), t1.rank_of(index_mask_t{1} << j)) = cplx(0, 1);
            gram(j, a) = extract(wedge(rest, slot));
        }
    gram.hermitize();
    return gram;
}

DegeneracyLocus degeneracy_locus(const HermitianForm& alpha, const HermitianForm& omega, int m) {
    const int n = alpha.ambient();
    if (m < 1 || m >= n) throw RangeError("degeneracy_locus: need 1 <= m <= n-1");
    DegeneracyLocus locus;
    locus.gram = restriction_gram(alpha, omega, m);
    const EigenResult eig = eigh_jacobi(locus.gram);
    double trace = 0.0;
    for (double v : eig.eigenvalues) trace += v;
    locus.trace = trace;
    locus.gram_psd = eig.eigenvalues.front() >= -1e-10 * std::max(trace, 1e-300);
    const double thresh = 1e-10 * std::max(trace, 1e-300);
    int k = 0;
    for (double v : eig.eigenvalues)
        if (v <= thresh) ++k;
    locus.kernel_dim = k;
    locus.kernel_basis = CMatrix(n, k);
    int out = 0;
    for (int c = 0; c < n; ++c)
        if (eig.eigenvalues[c] <= thresh) {
            for (int r = 0; r < n; ++r) locus.kernel_basis(r, out) = eig.vectors(r, c);
            ++out;
        }
    return locus;
}

bool in_degeneracy_locus(const DegeneracyLocus& locus, const std::vector<cplx>& v) {
    const auto gv = matvec(locus.gram, v);
    const double quad = vec_dot(v, gv).real();
    return quad <= 1e-10 * locus.trace;
}

namespace {

// Margin of a unit candidate c against hyperplane covector v (unit): must
// avoid both H_v (v.c = 0) and the line where v's restriction to c-perp dies.
double candidate_margin(const std::vector<cplx>& c, const std::vector<cplx>& v) {
    cplx dot = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) dot += v[i] * c[i];
    const double a = std::abs(dot);
    return std::min(a, std::sqrt(std::max(0.0, 1.0 - a * a)));
}

void avoid_basis_rec(const std::vector<std::vector<cplx>>& normals, int d, Rng& rng,
                     std::vector<std::vector<cplx>>& out) {
    if (d == 0) return;
    // Candidate search: all-ones first, then seeded random unit vectors.
    std::vector<cplx> best;
    double best_score = -1.0;
    for (int trial = 0; trial < 400; ++trial) {
        std::vector<cplx> c(d);
        if (trial == 0) {
            for (int i = 0; i < d; ++i) c[i] = 1.0;
        } else {
            for (int i = 0; i < d; ++i) c[i] = rng.gaussian_cplx();
        }
        double norm = vec_norm(c);
        if (norm <= 0.0) continue;
        for (cplx& z : c) z /= norm;
        double score = 2.0;
        for (const auto& v : normals) score = std::min(score, candidate_margin(c, v));
        if (score > best_score) {
            best_score = score;
            best = c;
        }
        if (score > 1e-6) break;  // first candidate clearing the margin wins
    }

    if (d == 1) {
        out.push_back(best);
        return;
    }
    // Recurse on the Hermitian complement span(e)^perp so the assembled basis
    // is orthonormal; a covector dies there only when e is parallel to its
    // conjugate, which the line margin rules out.
    const CMatrix u = unitary_completion(best);

    // Restrict every covector to the complement span(u_1..u_{d-1}).
    std::vector<std::vector<cplx>> sub_normals;
    for (const auto& v : normals) {
        std::vector<cplx> w(d - 1);
        double norm = 0.0;
        for (int a = 0; a < d - 1; ++a) {
            cplx s = 0.0;
            for (int i = 0; i < d; ++i) s += v[i] * u(i, a);
            w[a] = s;
            norm += std::norm(s);
        }
        norm = std::sqrt(norm);
        if (norm <= 1e-12) continue;  // can only happen if the margin search failed; reported via min_margin
        for (cplx& z : w) z /= norm;
        sub_normals.push_back(std::move(w));
    }
    std::vector<std::vector<cplx>> sub;
    avoid_basis_rec(sub_normals, d - 1, rng, sub);

    out.push_back(best);
    for (const auto& f : sub) {
        std::vector<cplx> lifted(d, 0.0);
        for (int i = 0; i < d; ++i) {
            cplx s = 0.0;
            for (int a = 0; a < d - 1; ++a) s += u(i, a) * f[a];
            lifted[i] = s;
        }
        out.push_back(std::move(lifted));
    }
}

}  // namespace

AvoidanceBasis avoid_hyperplanes_basis(const std::vector<Hyperplane>& hyperplanes, int n,
                                       std::uint64_t seed) {
    std::vector<std::vector<cplx>> normals;
    for (const auto& h : hyperplanes) {
        if (h.ambient() != n) throw DimensionError("avoid_hyperplanes_basis: hyperplane dimension mismatch");
        normals.push_back(h.v);
    }
    Rng rng(Rng::derive(seed, 0x6261736973ULL));
    std::vector<std::vector<cplx>> vecs;
    avoid_basis_rec(normals, n, rng, vecs);

    AvoidanceBasis res;
    res.basis = CMatrix(n, n);
    for (int c = 0; c < n; ++c)
        for (int r = 0; r < n; ++r) res.basis(r, c) = vecs[static_cast<std::size_t>(c)][r];

    CMatrix gram = res.basis.adjoint() * res.basis;
    gram -= CMatrix::identity(n);
    res.orthonormality_residual = gram.frobenius_norm();

    res.min_margin = normals.empty() ? 1.0 : 2.0;
    for (const auto& v : normals)
        for (int c = 0; c < n; ++c) {
            cplx dot = 0.0;
            for (int r = 0; r < n; ++r) dot += v[r] * res.basis(r, c);
            res.min_margin = std::min(res.min_margin, std::abs(dot));
        }
    return res;
}

double frame_identity_residual(const CMatrix& basis_columns) {
    const int n = basis_columns.rows();
    CMatrix sum = basis_columns * basis_columns.adjoint();
    sum -= CMatrix::identity(n);
    return sum.frobenius_norm();
}

}  // namespace hrlab
