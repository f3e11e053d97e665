#include "hrlab/positivity.hpp"

#include <algorithm>
#include <cmath>

namespace hrlab {

HermitianForm::HermitianForm(CMatrix matrix, bool validate) : matrix_(std::move(matrix)) {
    if (matrix_.rows() != matrix_.cols()) throw DimensionError("HermitianForm: matrix must be square");
    if (validate) {
        const double dev = matrix_.hermitian_deviation();
        const double scale = std::max(matrix_.frobenius_norm(), 1e-300);
        if (dev > 1e-12 * scale) throw ValidationError("HermitianForm: matrix is not Hermitian within 1e-12");
    }
    matrix_.hermitize();
}

HermitianForm HermitianForm::from_form(const Form& f, bool validate) {
    if (f.bidegree_p() != 1 || f.bidegree_q() != 1) throw DegreeError("HermitianForm::from_form: need a (1,1)-form");
    const int n = f.ambient();
    const CombTable& t1 = comb_table(n, 1);
    CMatrix a(n, n);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
            a(j, k) = f.coeff(t1.rank_of(index_mask_t{1} << j), t1.rank_of(index_mask_t{1} << k)) / cplx(0, 1);
    return HermitianForm(std::move(a), validate);
}

Form HermitianForm::to_form() const {
    const int n = ambient();
    const CombTable& t1 = comb_table(n, 1);
    Form f(n, 1, 1);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
            f.coeff(t1.rank_of(index_mask_t{1} << j), t1.rank_of(index_mask_t{1} << k)) = cplx(0, 1) * matrix_(j, k);
    return f;
}

double HermitianForm::spectral_norm() const {
    const auto eigs = eigenvalues();
    double s = 0.0;
    for (double v : eigs) s = std::max(s, std::abs(v));
    return s;
}

std::vector<double> HermitianForm::eigenvalues() const { return eigh_jacobi(matrix_).eigenvalues; }

RelativeSpectrum relative_spectrum(const HermitianForm& alpha, const HermitianForm& omega) {
    if (alpha.ambient() != omega.ambient()) throw DimensionError("relative_spectrum: dimension mismatch");
    const CholeskyResult chol = cholesky(omega.matrix());
    if (!chol.ok) throw NotKahlerError("relative_spectrum: omega is not positive definite");
    // B = L^{-1} alpha L^{-dagger} shares the spectrum of det(alpha - lambda omega).
    const CMatrix y = forward_solve(chol.lower, alpha.matrix());
    CMatrix b = forward_solve(chol.lower, y.adjoint()).adjoint();
    b.hermitize();
    RelativeSpectrum rs;
    rs.eigenvalues = eigh_jacobi(b).eigenvalues;
    std::reverse(rs.eigenvalues.begin(), rs.eigenvalues.end());
    return rs;
}

double elementary_symmetric(const std::vector<double>& values, int k) {
    const int n = static_cast<int>(values.size());
    if (k < 0 || k > n) return 0.0;
    // e-polynomial recurrence, O(nk).
    std::vector<double> e(static_cast<std::size_t>(k) + 1, 0.0);
    e[0] = 1.0;
    for (int i = 0; i < n; ++i)
        for (int j = std::min(k, i + 1); j >= 1; --j) e[j] += values[i] * e[j - 1];
    return e[k];
}

MPositivity is_m_positive(const HermitianForm& alpha, const HermitianForm& omega, int m, double tol) {
    const int n = alpha.ambient();
    if (m < 1 || m > n) throw RangeError("is_m_positive: m out of range");
    if (omega.ambient() != n) throw DimensionError("is_m_positive: dimension mismatch");
    if (!cholesky(omega.matrix()).ok) throw NotKahlerError("is_m_positive: omega is not positive definite");

    const Form omega_f = omega.to_form();
    const Form alpha_f = alpha.to_form();
    const double scale = extract(wedge_power(omega_f, n)).real();

    MPositivity r;
    r.margins.reserve(m);
    Form alpha_pow = Form::scalar(n, 1.0);
    for (int k = 1; k <= m; ++k) {
        alpha_pow = wedge(alpha_pow, alpha_f);
        const double value = extract(wedge(alpha_pow, wedge_power(omega_f, n - k))).real();
        r.margins.push_back(value / scale);
    }
    r.margin = *std::min_element(r.margins.begin(), r.margins.end());
    r.positive = r.margin > tol;
    return r;
}

MPositivity is_m_positive_spectral(const HermitianForm& alpha, const HermitianForm& omega, int m,
                                   double tol) {
    const int n = alpha.ambient();
    if (m < 1 || m > n) throw RangeError("is_m_positive_spectral: m out of range");
    const RelativeSpectrum rs = relative_spectrum(alpha, omega);
    MPositivity r;
    r.margins.reserve(m);
    for (int k = 1; k <= m; ++k)
        r.margins.push_back(elementary_symmetric(rs.eigenvalues, k) / static_cast<double>(binomial(n, k)));
    r.margin = *std::min_element(r.margins.begin(), r.margins.end());
    r.positive = r.margin > tol;
    return r;
}

bool is_semipositive(const HermitianForm& alpha, double tol) {
    const auto eigs = alpha.eigenvalues();
    if (eigs.empty()) return true;
    double norm = 0.0;
    for (double v : eigs) norm = std::max(norm, std::abs(v));
    return eigs.front() >= -tol * norm;
}

int hermitian_rank(const HermitianForm& alpha, double tol) {
    const auto eigs = alpha.eigenvalues();
    double norm = 0.0;
    for (double v : eigs) norm = std::max(norm, std::abs(v));
    int r = 0;
    for (double v : eigs)
        if (v > tol * norm) ++r;
    return r;
}

int relative_rank(const HermitianForm& alpha, const HermitianForm& omega, double tol) {
    const RelativeSpectrum rs = relative_spectrum(alpha, omega);
    double norm = 0.0;
    for (double v : rs.eigenvalues) norm = std::max(norm, std::abs(v));
    int r = 0;
    for (double v : rs.eigenvalues)
        if (v > tol * norm) ++r;
    return r;
}

HypothesisReport satisfies_theorem_hypotheses(const HermitianForm& alpha, const HermitianForm& omega,
                                              int m, double tol) {
    const int n = alpha.ambient();
    if (!cholesky(omega.matrix()).ok) throw NotKahlerError("satisfies_theorem_hypotheses: omega not Kahler");
    HypothesisReport rep;
    const auto abs_eigs = alpha.eigenvalues();
    double norm = 0.0;
    for (double v : abs_eigs) norm = std::max(norm, std::abs(v));
    rep.semipositive_margin = (norm > 0.0 && !abs_eigs.empty()) ? abs_eigs.front() / norm : 0.0;
    rep.semipositive = abs_eigs.empty() || abs_eigs.front() >= -tol * norm;

    const RelativeSpectrum rs = relative_spectrum(alpha, omega);
    double rnorm = 0.0;
    for (double v : rs.eigenvalues) rnorm = std::max(rnorm, std::abs(v));
    for (double v : rs.eigenvalues)
        if (v > tol * rnorm) ++rep.rank;
    rep.e_m_margin = (m >= 1 && m <= n)
                         ? elementary_symmetric(rs.eigenvalues, m) / static_cast<double>(binomial(n, m))
                         : 0.0;
    rep.ok = rep.semipositive && rep.rank >= m;
    return rep;
}

HermitianForm random_kahler(int n, Rng& rng) {
    CMatrix w = CMatrix::identity(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) w(i, j) += 0.35 * rng.gaussian_cplx();
    CMatrix a = w * w.adjoint();
    a.hermitize();
    return HermitianForm(std::move(a), false);
}

HermitianForm random_polarization(int n, int m, double margin, Rng& rng, const HermitianForm& omega,
                                  int rank) {
    if (m < 1 || m > n) throw RangeError("random_polarization: m out of range");
    if (margin <= 0.0) throw RangeError("random_polarization: margin must be positive");
    for (int attempt = 0; attempt < 1000; ++attempt) {
        const int r = (rank >= m) ? rank : (rng.uniform() < 0.7 ? m : rng.uniform_int(m, n));
        CMatrix b(n, r);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < r; ++j) b(i, j) = rng.gaussian_cplx();
        CMatrix a = b * b.adjoint();
        a.hermitize();
        HermitianForm candidate(std::move(a), false);
        const double norm = candidate.spectral_norm();
        if (norm <= 0.0) continue;
        candidate = HermitianForm(candidate.matrix() * cplx(1.0 / norm, 0.0), false);
        const RelativeSpectrum rs = relative_spectrum(candidate, omega);
        const double em = elementary_symmetric(rs.eigenvalues, m) / static_cast<double>(binomial(n, m));
        if (em >= margin) return candidate;
    }
    throw ValidationError("random_polarization: margin not reached after 1000 draws");
}

HermitianForm random_polarization(int n, int m, double margin, std::uint64_t seed) {
    Rng rng(seed);
    return random_polarization(n, m, margin, rng, HermitianForm::standard_kahler(n));
}

HermitianForm random_merely_m_positive(int n, int m, Rng& rng) {
    if (m >= n) throw RangeError("random_merely_m_positive: needs m < n");
    for (int attempt = 0; attempt < 2000; ++attempt) {
        std::vector<double> lam(n);
        for (int i = 0; i < n - 1; ++i) lam[i] = rng.uniform(0.4, 2.0);
        lam[n - 1] = -rng.uniform(0.02, 0.35);
        bool in_cone = true;
        for (int k = 1; k <= m; ++k)
            if (elementary_symmetric(lam, k) <= 1e-6) in_cone = false;
        if (!in_cone) continue;
        // Haar-ish unitary from the QR of a Gaussian draw.
        CMatrix g(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) g(i, j) = rng.gaussian_cplx();
        SvdResult s = svd(g);
        CMatrix u = s.u;
        CMatrix a(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                cplx sum = 0.0;
                for (int k = 0; k < n; ++k) sum += u(i, k) * lam[k] * std::conj(u(j, k));
                a(i, j) = sum;
            }
        a.hermitize();
        return HermitianForm(std::move(a), false);
    }
    throw ValidationError("random_merely_m_positive: no draw matched");
}

HermitianForm pullback(const HermitianForm& alpha, const CMatrix& t) {
    if (t.rows() != alpha.ambient() || t.cols() != alpha.ambient())
        throw DimensionError("pullback: transform shape mismatch");
    CMatrix a = t.transpose() * alpha.matrix() * t.conjugate();
    a.hermitize();
    return HermitianForm(std::move(a), false);
}

}  // namespace hrlab
