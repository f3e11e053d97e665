#pragma once

#include <vector>

#include "hrlab/positivity.hpp"

namespace hrlab {

// H_v = { z : v . z = 0 } with the bilinear pairing v . z = sum_i v_i z_i.
// The defining covector is stored normalized to unit Euclidean length.
struct Hyperplane {
    std::vector<cplx> v;

    explicit Hyperplane(std::vector<cplx> covector);
    int ambient() const { return static_cast<int>(v.size()); }
};

// v . z for the stored unit covector.
cplx pair_with(const Hyperplane& h, const std::vector<cplx>& z);

// Deterministic unitary whose last column is the given unit vector
// (Householder reflection construction).
CMatrix unitary_completion(const std::vector<cplx>& unit_last_column);

// Coordinate substitution dz_j = sum_k T_{jk} dw_k applied to a form:
// the minor-determinant transform over all index pairs.
Form pullback(const Form& f, const CMatrix& t);

// i dH_v ^ dH-bar_v as a rank-one semipositive (1,1)-form.
HermitianForm hyperplane_one_one(const Hyperplane& h);

// Restriction to H_v: complete v to a unitary frame, rewrite, drop every term
// containing dH or dH-bar; the result lives on C^{n-1}.
Form restrict_to(const Form& f, const Hyperplane& h);
HermitianForm restrict_to(const HermitianForm& alpha, const Hyperplane& h);

struct RestrictionIdentity {
    double lhs = 0.0;       // extract_n(alpha^k ^ omega^{n-k-1} ^ i dH ^ dH-bar)
    double rhs = 0.0;       // extract_{n-1}(alpha|_H^k ^ omega|_H^{n-k-1})
    double residual = 0.0;  // |lhs - rhs|
    // Backward-error scale: max of |lhs|, |rhs| and the operand norm product
    // ||alpha||_F^k ||omega||_F^{n-k-1}. Both sides vanish identically when
    // rank(alpha) < k; dividing by the value would then measure noise/noise.
    double scale = 1.0;
};

RestrictionIdentity restriction_identity(const HermitianForm& alpha, const HermitianForm& omega,
                                         int k, const Hyperplane& h);
double restriction_identity_residual(const HermitianForm& alpha, const HermitianForm& omega, int k,
                                     const Hyperplane& h);

// gram with v^dagger gram v = extract(alpha^k ^ omega^{n-k-1} ^ i dH_v ^ dH-bar_v)
// for unit v; Hermitian, PSD when alpha is semipositive and m-positive.
CMatrix restriction_gram(const HermitianForm& alpha, const HermitianForm& omega, int k);

struct DegeneracyLocus {
    CMatrix gram;          // n x n Hermitian
    CMatrix kernel_basis;  // orthonormal columns spanning S(alpha)
    int kernel_dim = 0;
    double trace = 0.0;
    bool gram_psd = false;
};

DegeneracyLocus degeneracy_locus(const HermitianForm& alpha, const HermitianForm& omega, int m);

// Membership test: v^dagger gram v <= 1e-10 trace(gram).
bool in_degeneracy_locus(const DegeneracyLocus& locus, const std::vector<cplx>& v);

struct AvoidanceBasis {
    CMatrix basis;                        // columns e_1..e_n
    double orthonormality_residual = 0.0; // ||E^dagger E - I||_F
    double min_margin = 0.0;              // min_{i,j} |v_j . e_i|
};

// Orthonormal vectors all avoiding the given hyperplanes, found by
// margin-checked candidates plus induction on the orthogonal complement.
AvoidanceBasis avoid_hyperplanes_basis(const std::vector<Hyperplane>& hyperplanes, int n,
                                       std::uint64_t seed = 0);

// Frobenius residual between i sum_j dH_{e_j} ^ dH-bar_{e_j} and the standard
// Kahler form; 0 exactly when the columns are orthonormal.
double frame_identity_residual(const CMatrix& basis_columns);

}  // namespace hrlab
