#include "hrlab/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace hrlab {

namespace {

cplx phase_of(cplx z) {
    const double m = std::abs(z);
    return m > 0.0 ? z / m : cplx(1.0, 0.0);
}

// Classic Jacobi rotation angle for the real symmetric block [[a, h],[h, b]].
void rotation_for(double a, double b, double h, double& cs, double& sn) {
    const double zeta = (b - a) / (2.0 * h);
    const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
    cs = 1.0 / std::sqrt(1.0 + t * t);
    sn = cs * t;
}

void sort_eigen(EigenResult& r) {
    const int n = static_cast<int>(r.eigenvalues.size());
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int i, int j) { return r.eigenvalues[i] < r.eigenvalues[j]; });
    std::vector<double> vals(n);
    CMatrix vecs(r.vectors.rows(), n);
    for (int c = 0; c < n; ++c) {
        vals[c] = r.eigenvalues[order[c]];
        for (int i = 0; i < r.vectors.rows(); ++i) vecs(i, c) = r.vectors(i, order[c]);
    }
    r.eigenvalues = std::move(vals);
    r.vectors = std::move(vecs);
}

}  // namespace

CMatrix CMatrix::adjoint() const {
    CMatrix r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r(j, i) = std::conj((*this)(i, j));
    return r;
}

CMatrix CMatrix::transpose() const {
    CMatrix r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
}

CMatrix CMatrix::conjugate() const {
    CMatrix r(rows_, cols_);
    for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] = std::conj(data_[k]);
    return r;
}

CMatrix CMatrix::block(int row0, int col0, int nrows, int ncols) const {
    CMatrix r(nrows, ncols);
    for (int i = 0; i < nrows; ++i)
        for (int j = 0; j < ncols; ++j) r(i, j) = (*this)(row0 + i, col0 + j);
    return r;
}

double CMatrix::frobenius_norm() const {
    double s = 0.0;
    for (const cplx& z : data_) s += std::norm(z);
    return std::sqrt(s);
}

double CMatrix::hermitian_deviation() const {
    double s = 0.0;
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) s += std::norm((*this)(i, j) - std::conj((*this)(j, i)));
    return std::sqrt(s);
}

void CMatrix::hermitize() {
    for (int i = 0; i < rows_; ++i) {
        (*this)(i, i) = cplx((*this)(i, i).real(), 0.0);
        for (int j = i + 1; j < cols_; ++j) {
            const cplx v = 0.5 * ((*this)(i, j) + std::conj((*this)(j, i)));
            (*this)(i, j) = v;
            (*this)(j, i) = std::conj(v);
        }
    }
}

CMatrix& CMatrix::operator+=(const CMatrix& o) {
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& o) {
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
}

CMatrix& CMatrix::operator*=(cplx s) {
    for (cplx& z : data_) z *= s;
    return *this;
}

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
    if (a.cols() != b.rows()) throw DimensionError("matrix product: inner dimensions differ");
    CMatrix c(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            const cplx aik = a(i, k);
            if (aik == cplx{}) continue;
            for (int j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

std::vector<cplx> matvec(const CMatrix& a, const std::vector<cplx>& x) {
    if (a.cols() != static_cast<int>(x.size())) throw DimensionError("matvec: shape mismatch");
    std::vector<cplx> y(a.rows());
    for (int i = 0; i < a.rows(); ++i) {
        cplx s = 0.0;
        for (int j = 0; j < a.cols(); ++j) s += a(i, j) * x[j];
        y[i] = s;
    }
    return y;
}

double vec_norm(const std::vector<cplx>& x) {
    double s = 0.0;
    for (const cplx& z : x) s += std::norm(z);
    return std::sqrt(s);
}

cplx vec_dot(const std::vector<cplx>& x, const std::vector<cplx>& y) {
    cplx s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += std::conj(x[i]) * y[i];
    return s;
}

EigenResult eigh_jacobi(const CMatrix& a, double tol, int max_sweeps) {
    if (a.rows() != a.cols()) throw DimensionError("eigh_jacobi: matrix must be square");
    const int n = a.rows();
    CMatrix m = a;
    m.hermitize();
    CMatrix v = CMatrix::identity(n);
    const double total = m.frobenius_norm();

    for (int sweep = 0; sweep < max_sweeps && n > 1; ++sweep) {
        double off = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) off += 2.0 * std::norm(m(i, j));
        if (std::sqrt(off) <= tol * total) break;

        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const cplx apq = m(p, q);
                const double h = std::abs(apq);
                const double app = m(p, p).real();
                const double aqq = m(q, q).real();
                if (h <= 1e-300 || h <= 1e-16 * (std::abs(app) + std::abs(aqq))) continue;

                double cs, sn;
                rotation_for(app, aqq, h, cs, sn);
                const cplx beta = phase_of(apq);
                const cplx bconj = std::conj(beta);

                // Column update: A <- A R with R = [[cs, sn], [-conj(beta) sn, conj(beta) cs]].
                for (int r = 0; r < n; ++r) {
                    const cplx xp = m(r, p), xq = m(r, q);
                    m(r, p) = cs * xp - bconj * sn * xq;
                    m(r, q) = sn * xp + bconj * cs * xq;
                }
                // Row update: A <- R^dagger A.
                for (int c = 0; c < n; ++c) {
                    const cplx xp = m(p, c), xq = m(q, c);
                    m(p, c) = cs * xp - beta * sn * xq;
                    m(q, c) = sn * xp + beta * cs * xq;
                }
                for (int r = 0; r < n; ++r) {
                    const cplx xp = v(r, p), xq = v(r, q);
                    v(r, p) = cs * xp - bconj * sn * xq;
                    v(r, q) = sn * xp + bconj * cs * xq;
                }
                m(p, q) = 0.0;
                m(q, p) = 0.0;
            }
        }
    }

    EigenResult res;
    res.eigenvalues.resize(n);
    for (int i = 0; i < n; ++i) res.eigenvalues[i] = m(i, i).real();
    res.vectors = std::move(v);
    sort_eigen(res);
    return res;
}

namespace {

// Householder reduction of a Hermitian matrix to real symmetric tridiagonal
// form: Q^dagger A Q = T. Fills d (diagonal), e (subdiagonal, e[0] unused
// slot convention: e[i] couples d[i] and d[i+1]) and the unitary Q.
void tridiagonalize(const CMatrix& a, std::vector<double>& d, std::vector<double>& e, CMatrix& q,
                    bool want_q) {
    const int n = a.rows();
    CMatrix m = a;
    m.hermitize();
    std::vector<std::vector<cplx>> reflectors(n > 2 ? n - 2 : 0);
    std::vector<double> taus(n > 2 ? n - 2 : 0, 0.0);

    for (int k = 0; k + 2 < n; ++k) {
        const int len = n - 1 - k;
        std::vector<cplx> x(len);
        for (int i = 0; i < len; ++i) x[i] = m(k + 1 + i, k);
        double below = 0.0;
        for (int i = 1; i < len; ++i) below += std::norm(x[i]);
        if (below == 0.0 && x[0].imag() == 0.0) continue;  // already in real tridiagonal shape

        const double nu = std::sqrt(std::norm(x[0]) + below);
        const cplx betav = -phase_of(x[0]) * nu;
        std::vector<cplx> u = x;
        u[0] -= betav;
        double unorm2 = 0.0;
        for (const cplx& z : u) unorm2 += std::norm(z);
        if (unorm2 <= 0.0) continue;
        const double tau = 2.0 / unorm2;

        // Hermitian rank-2 update of the trailing block B <- H B H.
        const int off = k + 1;
        std::vector<cplx> p(len);
        for (int i = 0; i < len; ++i) {
            cplx s = 0.0;
            for (int j = 0; j < len; ++j) s += m(off + i, off + j) * u[j];
            p[i] = tau * s;
        }
        cplx upc = 0.0;
        for (int i = 0; i < len; ++i) upc += std::conj(u[i]) * p[i];
        const double korr = 0.5 * tau * upc.real();
        for (int i = 0; i < len; ++i) p[i] -= korr * u[i];
        for (int i = 0; i < len; ++i)
            for (int j = 0; j < len; ++j)
                m(off + i, off + j) -= u[i] * std::conj(p[j]) + p[i] * std::conj(u[j]);

        m(k + 1, k) = betav;
        m(k, k + 1) = std::conj(betav);
        for (int i = 2; i <= len; ++i) {
            m(k + i, k) = 0.0;
            m(k, k + i) = 0.0;
        }
        reflectors[k] = std::move(u);
        taus[k] = tau;
    }

    d.resize(n);
    e.assign(n, 0.0);
    std::vector<cplx> sub(n, 0.0);
    for (int i = 0; i < n; ++i) d[i] = m(i, i).real();
    for (int i = 0; i + 1 < n; ++i) sub[i] = m(i + 1, i);

    // Diagonal phase scaling making the subdiagonal real nonnegative.
    std::vector<cplx> dphase(n, 1.0);
    for (int i = 0; i + 1 < n; ++i) {
        e[i] = std::abs(sub[i]);
        dphase[i + 1] = dphase[i] * phase_of(sub[i]);
    }

    if (want_q) {
        q = CMatrix::identity(n);
        // Back-accumulate Q = H_0 H_1 ... ; H_k acts on rows k+1..n-1.
        for (int k = static_cast<int>(reflectors.size()) - 1; k >= 0; --k) {
            if (reflectors[k].empty()) continue;
            const auto& u = reflectors[k];
            const double tau = taus[k];
            const int off = k + 1;
            const int len = static_cast<int>(u.size());
            for (int c = 0; c < n; ++c) {
                cplx s = 0.0;
                for (int i = 0; i < len; ++i) s += std::conj(u[i]) * q(off + i, c);
                s *= tau;
                for (int i = 0; i < len; ++i) q(off + i, c) -= u[i] * s;
            }
        }
        for (int c = 0; c < n; ++c) {
            const cplx ph = dphase[c];
            for (int r = 0; r < n; ++r) q(r, c) *= ph;
        }
    }
}

// Implicit-shift QL on a real symmetric tridiagonal matrix, rotations
// accumulated into the (complex) column basis when provided.
void tql_implicit(std::vector<double>& d, std::vector<double>& e, CMatrix* z) {
    const int n = static_cast<int>(d.size());
    if (n == 0) return;
    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m;
        do {
            for (m = l; m + 1 < n; ++m) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= 1e-16 * dd) break;
            }
            if (m != l) {
                if (iter++ == 60) throw std::runtime_error("eigh: QL failed to converge");
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = std::hypot(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
                double s = 1.0, c = 1.0, p = 0.0;
                bool underflow = false;
                for (int i = m - 1; i >= l; --i) {
                    double f = s * e[i];
                    const double b = c * e[i];
                    r = std::hypot(f, g);
                    e[i + 1] = r;
                    if (r == 0.0) {
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        underflow = (i >= l);
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                    if (z) {
                        for (int k = 0; k < z->rows(); ++k) {
                            const cplx zi = (*z)(k, i), zi1 = (*z)(k, i + 1);
                            (*z)(k, i + 1) = s * zi + c * zi1;
                            (*z)(k, i) = c * zi - s * zi1;
                        }
                    }
                }
                if (underflow) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }
}

}  // namespace

EigenResult eigh(const CMatrix& a) {
    if (a.rows() != a.cols()) throw DimensionError("eigh: matrix must be square");
    const int n = a.rows();
    if (n <= 32) return eigh_jacobi(a);
    std::vector<double> d, e;
    CMatrix q;
    tridiagonalize(a, d, e, q, true);
    tql_implicit(d, e, &q);
    EigenResult res;
    res.eigenvalues = std::move(d);
    res.vectors = std::move(q);
    sort_eigen(res);
    return res;
}

std::vector<double> eigh_values(const CMatrix& a) {
    if (a.rows() != a.cols()) throw DimensionError("eigh_values: matrix must be square");
    const int n = a.rows();
    if (n <= 8) {
        return eigh_jacobi(a).eigenvalues;
    }
    std::vector<double> d, e;
    CMatrix q;
    tridiagonalize(a, d, e, q, false);
    tql_implicit(d, e, nullptr);
    std::sort(d.begin(), d.end());
    return d;
}

CholeskyResult cholesky(const CMatrix& a) {
    CholeskyResult res;
    if (a.rows() != a.cols()) throw DimensionError("cholesky: matrix must be square");
    const int n = a.rows();
    CMatrix l(n, n);
    double scale = 0.0;
    for (int i = 0; i < n; ++i) scale = std::max(scale, std::abs(a(i, i).real()));
    if (scale == 0.0) scale = 1.0;
    for (int j = 0; j < n; ++j) {
        double diag = a(j, j).real();
        for (int k = 0; k < j; ++k) diag -= std::norm(l(j, k));
        if (!(diag > 1e-14 * scale)) return res;  // not (numerically) positive definite
        const double ljj = std::sqrt(diag);
        l(j, j) = ljj;
        for (int i = j + 1; i < n; ++i) {
            cplx s = a(i, j);
            for (int k = 0; k < j; ++k) s -= l(i, k) * std::conj(l(j, k));
            l(i, j) = s / ljj;
        }
    }
    res.ok = true;
    res.lower = std::move(l);
    return res;
}

CMatrix forward_solve(const CMatrix& lower, const CMatrix& rhs) {
    const int n = lower.rows();
    if (rhs.rows() != n) throw DimensionError("forward_solve: shape mismatch");
    CMatrix x = rhs;
    for (int c = 0; c < rhs.cols(); ++c) {
        for (int i = 0; i < n; ++i) {
            cplx s = x(i, c);
            for (int k = 0; k < i; ++k) s -= lower(i, k) * x(k, c);
            x(i, c) = s / lower(i, i);
        }
    }
    return x;
}

namespace {

// One-sided Jacobi on a tall (rows >= cols) matrix: orthogonalizes columns,
// accumulating the right rotations into V.
SvdResult svd_tall(const CMatrix& a) {
    const int rows = a.rows(), cols = a.cols();
    CMatrix u = a;
    CMatrix v = CMatrix::identity(cols);
    const double conv = 1e-14;

    for (int sweep = 0; sweep < 60; ++sweep) {
        bool rotated = false;
        for (int i = 0; i < cols - 1; ++i) {
            for (int j = i + 1; j < cols; ++j) {
                double na = 0.0, nb = 0.0;
                cplx g = 0.0;
                for (int r = 0; r < rows; ++r) {
                    const cplx x = u(r, i), y = u(r, j);
                    na += std::norm(x);
                    nb += std::norm(y);
                    g += std::conj(x) * y;
                }
                const double h = std::abs(g);
                if (h <= conv * std::sqrt(na * nb) || h == 0.0) continue;
                rotated = true;
                double cs, sn;
                rotation_for(na, nb, h, cs, sn);
                const cplx bconj = std::conj(phase_of(g));
                for (int r = 0; r < rows; ++r) {
                    const cplx x = u(r, i), y = u(r, j);
                    u(r, i) = cs * x - bconj * sn * y;
                    u(r, j) = sn * x + bconj * cs * y;
                }
                for (int r = 0; r < cols; ++r) {
                    const cplx x = v(r, i), y = v(r, j);
                    v(r, i) = cs * x - bconj * sn * y;
                    v(r, j) = sn * x + bconj * cs * y;
                }
            }
        }
        if (!rotated) break;
    }

    SvdResult res;
    res.sigma.resize(cols);
    std::vector<int> order(cols);
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> norms(cols);
    for (int c = 0; c < cols; ++c) {
        double s = 0.0;
        for (int r = 0; r < rows; ++r) s += std::norm(u(r, c));
        norms[c] = std::sqrt(s);
    }
    std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return norms[x] > norms[y]; });
    CMatrix us(rows, cols), vs(cols, cols);
    for (int c = 0; c < cols; ++c) {
        const int src = order[c];
        res.sigma[c] = norms[src];
        const double inv = norms[src] > 0.0 ? 1.0 / norms[src] : 0.0;
        for (int r = 0; r < rows; ++r) us(r, c) = u(r, src) * inv;
        for (int r = 0; r < cols; ++r) vs(r, c) = v(r, src);
    }
    res.u = std::move(us);
    res.v = std::move(vs);
    return res;
}

}  // namespace

SvdResult svd(const CMatrix& a) {
    if (a.rows() == 0 || a.cols() == 0) {
        SvdResult res;
        res.u = CMatrix(a.rows(), 0);
        res.v = CMatrix(a.cols(), 0);
        return res;
    }
    if (a.rows() >= a.cols()) return svd_tall(a);
    // Wide: factor the adjoint. A^dagger = U' S V'^dagger  =>  A = V' S U'^dagger.
    SvdResult t = svd_tall(a.adjoint());
    SvdResult res;
    res.u = std::move(t.v);      // rows(A) x rows(A)
    res.v = std::move(t.u);      // cols(A) x rows(A), thin
    res.sigma = std::move(t.sigma);
    return res;
}

int rank_of(const CMatrix& a, double rel_tol) {
    if (a.rows() == 0 || a.cols() == 0) return 0;
    const SvdResult s = svd(a);
    if (s.sigma.empty() || s.sigma[0] <= 0.0) return 0;
    const double thresh = rel_tol * s.sigma[0];
    int r = 0;
    for (double sv : s.sigma)
        if (sv > thresh) ++r;
    return r;
}

CMatrix complete_orthonormal(const CMatrix& cols, int dim) {
    const int have = cols.cols();
    const int need = dim - have;
    CMatrix added(dim, need > 0 ? need : 0);
    if (need <= 0) return added;

    std::vector<std::vector<cplx>> basis;
    basis.reserve(static_cast<std::size_t>(dim));
    for (int c = 0; c < have; ++c) {
        std::vector<cplx> v(dim);
        for (int r = 0; r < dim; ++r) v[r] = cols(r, c);
        basis.push_back(std::move(v));
    }

    const auto project_out = [dim](std::vector<cplx>& w, const std::vector<cplx>& b) {
        const cplx proj = vec_dot(b, w);
        for (int r = 0; r < dim; ++r) w[r] -= proj * b[r];
    };

    // Identity candidates kept as running residuals against everything
    // accepted so far; each round only subtracts the newest basis vector and
    // updates the cached norms by the Pythagorean identity.
    std::vector<std::vector<cplx>> residuals;
    std::vector<double> norms2;
    residuals.reserve(static_cast<std::size_t>(dim));
    for (int i = 0; i < dim; ++i) {
        std::vector<cplx> e(dim, cplx{});
        e[static_cast<std::size_t>(i)] = 1.0;
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& b : basis) project_out(e, b);
        const double n2 = vec_norm(e);
        norms2.push_back(n2 * n2);
        residuals.push_back(std::move(e));
    }

    for (int taken = 0; taken < need; ++taken) {
        std::size_t best_idx = 0;
        double best = -1.0;
        for (std::size_t ci = 0; ci < residuals.size(); ++ci)
            if (norms2[ci] > best) {
                best = norms2[ci];
                best_idx = ci;
            }
        if (best <= 1e-24) throw std::runtime_error("complete_orthonormal: candidates exhausted");
        std::vector<cplx> w = std::move(residuals[best_idx]);
        residuals[best_idx] = std::move(residuals.back());
        norms2[best_idx] = norms2.back();
        residuals.pop_back();
        norms2.pop_back();
        for (const auto& b : basis) project_out(w, b);  // re-orthogonalization pass
        const double nrm = vec_norm(w);
        for (cplx& z : w) z /= nrm;
        for (int r = 0; r < dim; ++r) added(r, taken) = w[r];
        for (std::size_t ci = 0; ci < residuals.size(); ++ci) {
            const cplx proj = vec_dot(w, residuals[ci]);
            for (int r = 0; r < dim; ++r) residuals[ci][static_cast<std::size_t>(r)] -= proj * w[r];
            norms2[ci] = std::max(0.0, norms2[ci] - std::norm(proj));
        }
        basis.push_back(std::move(w));
    }
    return added;
}

CMatrix nullspace(const CMatrix& a, double rel_tol) {
    const int dim = a.cols();
    if (a.rows() == 0 || dim == 0) return CMatrix::identity(dim);
    const SvdResult s = svd(a);
    const double smax = s.sigma.empty() ? 0.0 : s.sigma[0];
    const double thresh = rel_tol * smax;

    if (a.rows() >= a.cols()) {
        int k = 0;
        for (double sv : s.sigma)
            if (sv <= thresh) ++k;
        CMatrix ker(dim, k);
        int out = 0;
        for (std::size_t c = 0; c < s.sigma.size(); ++c)
            if (s.sigma[c] <= thresh) {
                for (int r = 0; r < dim; ++r) ker(r, out) = s.v(r, static_cast<int>(c));
                ++out;
            }
        return ker;
    }
    // Wide: kernel = orthogonal complement of the right-singular vectors with
    // sigma above threshold, plus any below-threshold right vectors we have.
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
    return complete_orthonormal(rowspace, dim);
}

Signature signature_of(const std::vector<double>& eigenvalues, double rel_tol) {
    double scale = 0.0;
    for (double v : eigenvalues) scale = std::max(scale, std::abs(v));
    const double thresh = rel_tol * scale;
    Signature s;
    for (double v : eigenvalues) {
        if (v > thresh)
            ++s.positive;
        else if (v < -thresh)
            ++s.negative;
        else
            ++s.zero;
    }
    return s;
}

}  // namespace hrlab
