#pragma once

#include <vector>

#include "hrlab/form.hpp"
#include "hrlab/linalg.hpp"
#include "hrlab/rng.hpp"

namespace hrlab {

// A real (1,1)-form alpha = i sum_{jk} A_{jk} dz_j ^ dz-bar_k, encoded by its
// n x n Hermitian coefficient matrix A. Positive definite A <=> Kahler.
class HermitianForm {
  public:
    HermitianForm(CMatrix matrix, bool validate = true);

    static HermitianForm standard_kahler(int n) { return HermitianForm(CMatrix::identity(n), false); }
    static HermitianForm from_form(const Form& f, bool validate = true);

    int ambient() const { return matrix_.rows(); }
    const CMatrix& matrix() const { return matrix_; }
    Form to_form() const;

    double spectral_norm() const;
    std::vector<double> eigenvalues() const;  // ascending

  private:
    CMatrix matrix_;
};

struct RelativeSpectrum {
    std::vector<double> eigenvalues;  // descending: lambda_1 >= ... >= lambda_n
};

// Eigenvalues of alpha relative to a Kahler omega: det(alpha - lambda omega) = 0,
// via Cholesky congruence of omega followed by a Hermitian eigensolve.
RelativeSpectrum relative_spectrum(const HermitianForm& alpha, const HermitianForm& omega);

double elementary_symmetric(const std::vector<double>& values, int k);

struct MPositivity {
    bool positive = false;
    double margin = 0.0;                // min_k of the normalized margins below
    std::vector<double> margins;        // margins[k-1] = extract(alpha^k ^ omega^{n-k}) / extract(omega^n)
};

// Wedge-scalar route: alpha^k ^ omega^{n-k} > 0 for k = 1..m.
MPositivity is_m_positive(const HermitianForm& alpha, const HermitianForm& omega, int m,
                          double tol = default_tolerance());

// Independent route: e_k(relative spectrum) > 0 for k = 1..m. Margins are
// normalized as e_k / C(n,k), which equals the wedge margins exactly.
MPositivity is_m_positive_spectral(const HermitianForm& alpha, const HermitianForm& omega, int m,
                                   double tol = default_tolerance());

bool is_semipositive(const HermitianForm& alpha, double tol = default_tolerance());
int hermitian_rank(const HermitianForm& alpha, double tol = default_tolerance());
int relative_rank(const HermitianForm& alpha, const HermitianForm& omega,
                  double tol = default_tolerance());

struct HypothesisReport {
    bool ok = false;
    bool semipositive = false;
    int rank = 0;                  // relative to omega
    double semipositive_margin = 0.0;  // lambda_min / ||alpha||, >= -tol when semipositive
    double e_m_margin = 0.0;           // e_m(relative spectrum) / C(n,m)
};

// Theorem hypotheses: semipositive with at least m positive relative
// eigenvalues. Equivalent to (semipositive AND m-positive); the equivalence
// is a tested property, not assumed here.
HypothesisReport satisfies_theorem_hypotheses(const HermitianForm& alpha, const HermitianForm& omega,
                                              int m, double tol = default_tolerance());

// Seeded PSD generator: B B^dagger with B an n x r complex Gaussian draw,
// redrawn until the normalized e_m margin clears `margin`.
HermitianForm random_polarization(int n, int m, double margin, std::uint64_t seed);
HermitianForm random_polarization(int n, int m, double margin, Rng& rng, const HermitianForm& omega,
                                  int rank = -1);

// Random well-conditioned Kahler form: (I + 0.35 G)(I + 0.35 G)^dagger.
HermitianForm random_kahler(int n, Rng& rng);

// Merely m-positive draw (positive e_1..e_m, at least one negative
// eigenvalue); used by the search harness. Requires m < n.
HermitianForm random_merely_m_positive(int n, int m, Rng& rng);

// Coordinate substitution dz = T dw: A -> T^T A conj(T).
HermitianForm pullback(const HermitianForm& alpha, const CMatrix& t);

}  // namespace hrlab
