#pragma once

#include <vector>

#include "hrlab/combinatorics.hpp"
#include "hrlab/common.hpp"

namespace hrlab {

// Shared immutable combination tables, memoized per (n, k).
const CombTable& comb_table(int n, int k);

// A complex (p,q)-form on C^n with constant coefficients, stored densely over
// the canonical basis dz_I ^ dz-bar_J (I, J strictly increasing, all dz
// factors before all dz-bar factors). Coefficient order is lexicographic in
// (I, J); this is the ordering every Gram matrix in the project uses.
//
// p or q may exceed n, in which case the form is the canonical zero of that
// bidegree (no storage): forms of degree > n vanish identically.
class Form {
  public:
    Form() : Form(0, 0, 0) {}
    Form(int n, int p, int q);

    static Form scalar(int n, cplx value);  // value as a (0,0)-form
    static Form basis_slot(int n, int p, int q, int i_rank, int j_rank);

    int ambient() const { return n_; }
    int bidegree_p() const { return p_; }
    int bidegree_q() const { return q_; }
    int slots() const { return static_cast<int>(coeffs_.size()); }
    int i_count() const { return i_count_; }
    int j_count() const { return j_count_; }

    cplx coeff(int i_rank, int j_rank) const { return coeffs_[static_cast<std::size_t>(i_rank) * j_count_ + j_rank]; }
    cplx& coeff(int i_rank, int j_rank) { return coeffs_[static_cast<std::size_t>(i_rank) * j_count_ + j_rank]; }
    cplx coeff_masks(index_mask_t i_mask, index_mask_t j_mask) const;
    void add_term(const MultiIndex& i, const MultiIndex& j, cplx value);

    const std::vector<cplx>& data() const { return coeffs_; }
    std::vector<cplx>& data() { return coeffs_; }

    double norm() const;  // l2 over coefficients = sqrt(<f, f>)
    bool is_zero(double tol = 0.0) const;

    Form& operator+=(const Form& o);
    Form& operator-=(const Form& o);
    Form& operator*=(cplx s);
    friend Form operator+(Form a, const Form& b) { return a += b; }
    friend Form operator-(Form a, const Form& b) { return a -= b; }
    friend Form operator*(Form a, cplx s) { return a *= s; }
    friend Form operator*(cplx s, Form a) { return a *= s; }

  private:
    int n_, p_, q_;
    int i_count_, j_count_;
    std::vector<cplx> coeffs_;
};

// Exterior product in canonical form, permutation signs applied. Degree
// overflow yields the zero form of the overflowing bidegree.
Form wedge(const Form& a, const Form& b);
Form wedge_power(const Form& a, int k);

// Complex conjugate; a (p,q)-form becomes a (q,p)-form.
Form conjugate(const Form& a);

// The reference volume Gamma = wedge_j (i dz_j ^ dz-bar_j), and the unique
// lambda with a = lambda * Gamma for top-degree a.
Form volume_form(int n);
cplx gamma_constant(int n);  // coefficient of Gamma on the canonical top slot
cplx extract(const Form& a);

// <Phi, Psi> = sum_IJ Phi_IJ conj(Psi_IJ); Hermitian positive definite.
cplx inner_product(const Form& a, const Form& b);

// Canonical ordered basis of Lambda^{p,q}; C(n,p)*C(n,q) unit slots.
std::vector<Form> basis_of(int n, int p, int q);

// Convenience (1,0) / (0,1) coordinate differentials.
Form dz(int n, int index);
Form dzbar(int n, int index);

}  // namespace hrlab
