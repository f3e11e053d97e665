#pragma once

#include <optional>
#include <vector>

#include "hrlab/positivity.hpp"

namespace hrlab {

// One full problem datum: ambient dimension n, positivity order m, bidegree
// (p,q), the reference Kahler form, and the m-p-q+1 polarizations. The last
// polarization defines the primitive subspace; the others enter Omega.
struct Instance {
    int n = 0, m = 0, p = 0, q = 0;
    HermitianForm omega;
    std::vector<HermitianForm> alphas;

    static Instance validated(int n, int m, int p, int q, HermitianForm omega,
                              std::vector<HermitianForm> alphas, double tol = default_tolerance());
    static Instance unchecked(int n, int m, int p, int q, HermitianForm omega,
                              std::vector<HermitianForm> alphas);

    int lambda_dim() const { return static_cast<int>(binomial(n, p) * binomial(n, q)); }
    int lower_dim() const {
        return (p >= 1 && q >= 1) ? static_cast<int>(binomial(n, p - 1) * binomial(n, q - 1)) : 0;
    }
    const HermitianForm& primitive_alpha() const { return alphas.back(); }
};

// c = i^{q-p} (-1)^{(p+q)(p+q+1)/2}, the constant making Q Hermitian.
cplx hr_constant(int p, int q);

// Omega = omega^{n-m} ^ alpha_1 ^ ... ^ alpha_{m-p-q}; empty products are 1.
Form build_omega(const Instance& inst);
// Omega_t with every alpha_j replaced by (1-t) alpha_j + t omega.
Form build_omega_deformed(const Instance& inst, double t);
HermitianForm deformed_alpha(const Instance& inst, std::size_t index, double t);

// Q(phi, psi) = c * extract(Omega ^ phi ^ conj(psi)); the reference path used
// by tests against the table-driven Gram assembly.
cplx q_form(const Instance& inst, const Form& phi, const Form& psi);

// Matrix of Phi -> w ^ Phi from Lambda^{p,q} to Lambda^{p+w_p, q+w_q} in the
// canonical bases. Overflowing targets give a 0-row matrix (the zero map).
CMatrix wedge_map_matrix(const Form& w, int p, int q);

// Precomputed top-degree pairing for a fixed (n,p,q): assembles the Gram
// matrix G of Q (convention Q(phi,psi) = psi^dagger G phi) from any Omega of
// bidegree (n-p-q, n-p-q) with one coefficient lookup per entry.
class GramAssembler {
  public:
    GramAssembler(int n, int p, int q);
    CMatrix assemble(const Form& omega_form) const;
    int dimension() const { return dim_; }

  private:
    int n_, p_, q_, dim_;
    std::vector<int> omega_slot_;  // flat (row,col) -> coefficient slot in Omega, -1 if zero
    std::vector<cplx> factor_;
};

struct HlReport {
    bool holds = false;
    double margin = 0.0;  // sigma_min / sigma_max
    double sigma_min = 0.0, sigma_max = 0.0;
};

CMatrix lefschetz_matrix(const Instance& inst);
HlReport hl_holds(const Instance& inst, double tol = default_tolerance());

// HL report for a given Omega. Large maps go through the eigenvalues of
// L^dagger L first (cheap, accurate away from the threshold) and fall back to
// the one-sided Jacobi SVD inside the ambiguous band.
HlReport hl_report(const Form& omega_form, int p, int q, double tol = default_tolerance());

struct PrimitiveSubspace {
    CMatrix basis;  // orthonormal columns, coefficients over basis_of(n,p,q)
    int dimension = 0;
    double max_image_residual = 0.0;  // max_j ||A b_j|| / scale
};

PrimitiveSubspace primitive_subspace(const Instance& inst, double tol = default_tolerance());

// The kernel basis materialized as (p,q)-forms, orthonormal under the
// standard inner product.
std::vector<Form> primitive_basis_forms(const Instance& inst, const PrimitiveSubspace& ps);

struct GramReport {
    CMatrix gram;
    std::vector<double> eigenvalues;  // ascending
    Signature signature;
    cplx hr_constant;
    bool verdict = false;
    double margin = 0.0;
};

// Gram of Q on the primitive subspace; verdict = positive definite at the
// relative threshold.
GramReport verify_hrr(const Instance& inst, double tol = default_tolerance());
// Gram of Q on all of Lambda^{p,q}; verdict = no null directions.
GramReport full_gram_report(const Instance& inst, double tol = default_tolerance());

struct LdReport {
    bool precondition_ok = false;
    bool degenerate_case = false;  // p = 0 or q = 0: P^{p,q} is everything
    bool dims_exact = false;
    bool intersection_trivial = false;
    bool orthogonal = false;
    bool verdict = false;
    int dim_total = 0, dim_primitive = 0, dim_lower = 0;
    double ortho_residual = 0.0;
};

LdReport verify_ld(const Instance& inst, double tol = default_tolerance());

struct HomotopyStep {
    double t = 0.0;
    Signature signature;
    double min_abs_eig = 0.0;
    double scale = 0.0;  // max |eigenvalue| of the primitive Gram at t
    int dim_primitive = 0;
};

struct HomotopyReport {
    std::vector<HomotopyStep> steps;
    bool verdict = false;
    double min_margin = 0.0;  // min_t min|eig| / scale
};

HomotopyReport homotopy_sweep(const Instance& inst, int steps, double tol = default_tolerance());

struct LocalEstimate {
    bool precondition_ok = false;
    bool ok = false;
    double c1 = 0.0, c2 = 0.0;
    double certificate_min_eig = 0.0;  // lambda_min(c1 G + c2 A^dagger A - I)
};

// Positive constants with ||Phi||^2 <= c1 Q(Phi,Phi) + c2 ||Omega^alpha^Phi||^2,
// certified by the PSD operator check; `refine` bisection steps tighten c2/c1.
LocalEstimate local_estimate_constants(const Instance& inst, int refine = 6,
                                       double tol = default_tolerance());
double certificate_min_eig(const CMatrix& gram, const CMatrix& primitive_map, double c1, double c2);

// Abstract predicates: full rank of the wedge map, and Lefschetz-ness of
// Omega_t ^ alpha^{2r} for r = 0,1 along a deformation path.
bool is_lefschetz_form(const Form& omega_form, int p, int q, double tol = default_tolerance());
bool is_hodge_riemann_form(const Form& omega_form, const std::vector<Form>& path,
                           const HermitianForm& alpha, int p, int q,
                           double tol = default_tolerance());

// Shared per-instance computation for the harness: everything the HRR / HL /
// LD / local-estimate checks need, computed once.
struct Analysis {
    Form omega_form;
    Form theta_form;  // Omega ^ alpha_last
    CMatrix gram_full;
    std::vector<double> gram_full_eigs;
    CMatrix primitive_map;
    PrimitiveSubspace primitive;
    CMatrix gram_primitive;
    std::vector<double> gram_primitive_eigs;
    HlReport hl;
    cplx constant;
};

Analysis analyze(const Instance& inst, const GramAssembler* assembler = nullptr,
                 double tol = default_tolerance());

// Overloads reusing a shared Analysis (the sweep path computes it once).
GramReport verify_hrr(const Instance& inst, const Analysis& an, double tol = default_tolerance());
GramReport full_gram_report(const Instance& inst, const Analysis& an,
                            double tol = default_tolerance());
LdReport verify_ld(const Instance& inst, const Analysis& an, double tol = default_tolerance());
LocalEstimate local_estimate_constants(const Instance& inst, const Analysis& an, int refine,
                                       double tol = default_tolerance());

}  // namespace hrlab
