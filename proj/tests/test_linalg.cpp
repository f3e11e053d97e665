#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "hrlab/linalg.hpp"
#include "hrlab/rng.hpp"

using namespace hrlab;

namespace {

CMatrix random_hermitian(int n, Rng& rng) {
    CMatrix a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = rng.gaussian_cplx();
    CMatrix h = a + a.adjoint();
    h.hermitize();
    return h;
}

CMatrix random_matrix(int r, int c, Rng& rng) {
    CMatrix a(r, c);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) a(i, j) = rng.gaussian_cplx();
    return a;
}

double eigen_residual(const CMatrix& a, const EigenResult& e) {
    // ||A V - V diag(lambda)||_F
    CMatrix av = a * e.vectors;
    for (int c = 0; c < av.cols(); ++c)
        for (int r = 0; r < av.rows(); ++r) av(r, c) -= e.eigenvalues[static_cast<std::size_t>(c)] * e.vectors(r, c);
    return av.frobenius_norm();
}

double unitary_residual(const CMatrix& v) {
    CMatrix g = v.adjoint() * v;
    g -= CMatrix::identity(v.cols());
    return g.frobenius_norm();
}

}  // namespace

TEST_CASE("jacobi eigensolver on a known matrix") {
    CMatrix a(2, 2);
    a(0, 0) = 2.0;
    a(1, 1) = 2.0;
    a(0, 1) = cplx(0, -1);
    a(1, 0) = cplx(0, 1);
    const EigenResult e = eigh_jacobi(a);
    CHECK(e.eigenvalues[0] == doctest::Approx(1.0));
    CHECK(e.eigenvalues[1] == doctest::Approx(3.0));
    CHECK(eigen_residual(a, e) < 1e-12);
}

TEST_CASE("jacobi eigensolver properties on random Hermitian matrices") {
    Rng rng(101);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = rng.uniform_int(1, 12);
        const CMatrix a = random_hermitian(n, rng);
        const EigenResult e = eigh_jacobi(a);
        CHECK(std::is_sorted(e.eigenvalues.begin(), e.eigenvalues.end()));
        CHECK(eigen_residual(a, e) < 1e-11 * (1.0 + a.frobenius_norm()));
        CHECK(unitary_residual(e.vectors) < 1e-12);
    }
}

TEST_CASE("tridiagonal QL path agrees with jacobi") {
    Rng rng(103);
    for (int n : {33, 40, 64, 90}) {
        CMatrix a = random_hermitian(n, rng);
        if (n == 40) {
            // clustered spectrum: A <- A A^dagger has squared (degenerate-ish) eigenvalues
            a = a * a;
            a.hermitize();
        }
        if (n == 64) {
            // rank deficiency: project onto a low-rank piece
            const CMatrix b = random_matrix(n, n / 4, rng);
            a = b * b.adjoint();
            a.hermitize();
        }
        const EigenResult fast = eigh(a);
        const EigenResult slow = eigh_jacobi(a);
        CHECK(eigen_residual(a, fast) < 1e-10 * (1.0 + a.frobenius_norm()));
        CHECK(unitary_residual(fast.vectors) < 1e-11);
        for (int i = 0; i < n; ++i)
            CHECK(fast.eigenvalues[static_cast<std::size_t>(i)] ==
                  doctest::Approx(slow.eigenvalues[static_cast<std::size_t>(i)])
                      .epsilon(1e-9)
                      .scale(1.0 + a.frobenius_norm()));
        const std::vector<double> vals_only = eigh_values(a);
        for (int i = 0; i < n; ++i)
            CHECK(vals_only[static_cast<std::size_t>(i)] ==
                  doctest::Approx(fast.eigenvalues[static_cast<std::size_t>(i)])
                      .epsilon(1e-9)
                      .scale(1.0 + a.frobenius_norm()));
    }
}

TEST_CASE("cholesky factors positive definite matrices and rejects others") {
    Rng rng(107);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = rng.uniform_int(1, 8);
        const CMatrix b = random_matrix(n, n + 1, rng);
        CMatrix a = b * b.adjoint();
        a.hermitize();
        const CholeskyResult ch = cholesky(a);
        REQUIRE(ch.ok);
        CMatrix rec = ch.lower * ch.lower.adjoint();
        rec -= a;
        CHECK(rec.frobenius_norm() < 1e-10 * (1.0 + a.frobenius_norm()));
    }
    CMatrix indef = CMatrix::identity(3);
    indef(2, 2) = -1.0;
    CHECK_FALSE(cholesky(indef).ok);
}

TEST_CASE("one-sided jacobi SVD: factorization residual and accuracy near zero") {
    Rng rng(109);
    for (int trial = 0; trial < 12; ++trial) {
        const int r = rng.uniform_int(2, 40);
        const int c = rng.uniform_int(2, 40);
        const CMatrix a = random_matrix(r, c, rng);
        const SvdResult s = svd(a);
        const int k = static_cast<int>(s.sigma.size());
        REQUIRE(k == std::min(r, c));
        CHECK(std::is_sorted(s.sigma.rbegin(), s.sigma.rend()));
        // Reconstruction: A = U diag(sigma) V^dagger.
        CMatrix usv(r, c);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j) {
                cplx acc = 0.0;
                for (int t = 0; t < k; ++t) acc += s.u(i, t) * s.sigma[static_cast<std::size_t>(t)] * std::conj(s.v(j, t));
                usv(i, j) = acc;
            }
        usv -= a;
        CHECK(usv.frobenius_norm() < 1e-10 * (1.0 + a.frobenius_norm()));
    }

    // Exact kernel stays exact: sigma for a rank-2 3x4 matrix.
    CMatrix low(3, 4);
    low(0, 0) = 1.0;
    low(1, 1) = 2.0;  // rank 2, rows 2..: zero
    const SvdResult s = svd(low);
    CHECK(s.sigma[0] == doctest::Approx(2.0));
    CHECK(s.sigma[1] == doctest::Approx(1.0));
    CHECK(s.sigma[2] < 1e-14);
}

TEST_CASE("nullspace and rank with the 1e-10 relative threshold") {
    Rng rng(113);
    for (int trial = 0; trial < 10; ++trial) {
        const int dim = rng.uniform_int(4, 30);
        const int rank = rng.uniform_int(1, dim - 1);
        const int rows = rng.uniform_int(rank, dim + 5);
        // A = B C with inner dimension `rank`: rank exactly `rank` a.s.
        const CMatrix a = random_matrix(rows, rank, rng) * random_matrix(rank, dim, rng);
        CHECK(rank_of(a, 1e-10) == rank);
        const CMatrix ker = nullspace(a, 1e-10);
        REQUIRE(ker.cols() == dim - rank);
        CHECK(unitary_residual(ker) < 1e-10);
        for (int c = 0; c < ker.cols(); ++c) {
            std::vector<cplx> v(static_cast<std::size_t>(dim));
            for (int i = 0; i < dim; ++i) v[static_cast<std::size_t>(i)] = ker(i, c);
            CHECK(vec_norm(matvec(a, v)) < 1e-9 * a.frobenius_norm());
        }
    }
}

TEST_CASE("complete_orthonormal extends a partial frame") {
    Rng rng(127);
    const CMatrix a = random_matrix(10, 3, rng);
    const SvdResult s = svd(a);
    CMatrix partial(10, 3);
    for (int c = 0; c < 3; ++c)
        for (int r = 0; r < 10; ++r) partial(r, c) = s.u(r, c);
    const CMatrix added = complete_orthonormal(partial, 10);
    REQUIRE(added.cols() == 7);
    CMatrix full(10, 10);
    for (int c = 0; c < 3; ++c)
        for (int r = 0; r < 10; ++r) full(r, c) = partial(r, c);
    for (int c = 0; c < 7; ++c)
        for (int r = 0; r < 10; ++r) full(r, c + 3) = added(r, c);
    CHECK(unitary_residual(full) < 1e-12);
}

TEST_CASE("signature counting") {
    const Signature s = signature_of({-2.0, -1e-14, 0.0, 3e-11, 1.0}, 1e-10);
    CHECK(s.positive == 1);
    CHECK(s.negative == 1);
    CHECK(s.zero == 3);
}
