#pragma once

#include <vector>

#include "hrlab/common.hpp"

namespace hrlab {

// Dense complex matrix, row-major. Sizes here are desk scale (Gram matrices
// up to C(5,2)^2 = 100), so clarity beats blocking.
class CMatrix {
  public:
    CMatrix() = default;
    CMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols) {}

    static CMatrix identity(int n) {
        CMatrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    cplx& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
    const cplx& operator()(int i, int j) const { return data_[static_cast<std::size_t>(i) * cols_ + j]; }

    const std::vector<cplx>& data() const { return data_; }
    std::vector<cplx>& data() { return data_; }

    CMatrix adjoint() const;
    CMatrix transpose() const;
    CMatrix conjugate() const;
    CMatrix block(int row0, int col0, int nrows, int ncols) const;

    double frobenius_norm() const;
    double hermitian_deviation() const;  // ||A - A^dagger||_F
    void hermitize();                    // A <- (A + A^dagger)/2

    CMatrix& operator+=(const CMatrix& o);
    CMatrix& operator-=(const CMatrix& o);
    CMatrix& operator*=(cplx s);

    friend CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
    friend CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
    friend CMatrix operator*(CMatrix a, cplx s) { return a *= s; }
    friend CMatrix operator*(cplx s, CMatrix a) { return a *= s; }
    friend CMatrix operator*(const CMatrix& a, const CMatrix& b);

  private:
    int rows_ = 0, cols_ = 0;
    std::vector<cplx> data_;
};

std::vector<cplx> matvec(const CMatrix& a, const std::vector<cplx>& x);
double vec_norm(const std::vector<cplx>& x);
cplx vec_dot(const std::vector<cplx>& x, const std::vector<cplx>& y);  // x^dagger y

struct EigenResult {
    std::vector<double> eigenvalues;  // ascending
    CMatrix vectors;                  // columns, unitary
};

// Cyclic complex Jacobi for Hermitian matrices; terminates when the
// off-diagonal Frobenius mass drops below tol relative to ||A||_F.
EigenResult eigh_jacobi(const CMatrix& a, double tol = 1e-12, int max_sweeps = 100);

// Householder tridiagonalization + implicit-shift QL. Same contract as
// eigh_jacobi; preferred above dimension ~32 where Jacobi gets slow.
EigenResult eigh(const CMatrix& a);
std::vector<double> eigh_values(const CMatrix& a);  // ascending, no vectors

struct CholeskyResult {
    bool ok = false;
    CMatrix lower;
};

// A = L L^dagger for Hermitian positive definite A; ok = false otherwise.
CholeskyResult cholesky(const CMatrix& a);

CMatrix forward_solve(const CMatrix& lower, const CMatrix& rhs);  // L X = B

struct SvdResult {
    CMatrix u;                  // rows(A) x min-shape, thin; zero columns where sigma = 0
    std::vector<double> sigma;  // descending, length min(rows, cols)
    CMatrix v;                  // full for rows >= cols; thin (cols x rows) when A is wide
};

// One-sided Jacobi SVD. Singular values carry high relative accuracy, which
// the 1e-10 rank thresholds need (forming A^dagger A would bottom out near
// sqrt(machine eps)).
SvdResult svd(const CMatrix& a);

int rank_of(const CMatrix& a, double rel_tol);

// Orthonormal columns spanning ker(A); exact-dimension completion is used for
// wide matrices where the adjoint SVD only yields rows(A) right vectors.
CMatrix nullspace(const CMatrix& a, double rel_tol);

// Extend a set of orthonormal columns to an orthonormal basis of C^dim.
// Returns only the added columns.
CMatrix complete_orthonormal(const CMatrix& cols, int dim);

struct Signature {
    int positive = 0;
    int negative = 0;
    int zero = 0;
    bool operator==(const Signature&) const = default;
};

Signature signature_of(const std::vector<double>& eigenvalues, double rel_tol);

}  // namespace hrlab
