#include "hrlab/form.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>

namespace hrlab {

const CombTable& comb_table(int n, int k) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::unique_ptr<CombTable>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[{n, k}];
    if (!slot) slot = std::make_unique<CombTable>(n, k);
    return *slot;
}

Form::Form(int n, int p, int q) : n_(n), p_(p), q_(q) {
    if (n < 0 || n > kMaxAmbientDim) throw RangeError("Form: ambient dimension out of range");
    if (p < 0 || q < 0) throw RangeError("Form: negative bidegree");
    i_count_ = (p <= n) ? comb_table(n, p).count() : 0;
    j_count_ = (q <= n) ? comb_table(n, q).count() : 0;
    coeffs_.assign(static_cast<std::size_t>(i_count_) * j_count_, cplx{});
}

Form Form::scalar(int n, cplx value) {
    Form f(n, 0, 0);
    f.coeff(0, 0) = value;
    return f;
}

Form Form::basis_slot(int n, int p, int q, int i_rank, int j_rank) {
    Form f(n, p, q);
    f.coeff(i_rank, j_rank) = 1.0;
    return f;
}

cplx Form::coeff_masks(index_mask_t i_mask, index_mask_t j_mask) const {
    if (slots() == 0) return cplx{};
    const int ir = comb_table(n_, p_).rank_of(i_mask);
    const int jr = comb_table(n_, q_).rank_of(j_mask);
    return coeff(ir, jr);
}

void Form::add_term(const MultiIndex& i, const MultiIndex& j, cplx value) {
    if (i.size() != p_ || j.size() != q_) throw DegreeError("Form::add_term: index lengths must match bidegree");
    coeff(comb_table(n_, p_).rank_of(i.mask()), comb_table(n_, q_).rank_of(j.mask())) += value;
}

double Form::norm() const {
    double s = 0.0;
    for (const cplx& z : coeffs_) s += std::norm(z);
    return std::sqrt(s);
}

bool Form::is_zero(double tol) const {
    for (const cplx& z : coeffs_)
        if (std::abs(z) > tol) return false;
    return true;
}

Form& Form::operator+=(const Form& o) {
    if (n_ != o.n_ || p_ != o.p_ || q_ != o.q_) throw DimensionError("Form +: shape mismatch");
    for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
    return *this;
}

Form& Form::operator-=(const Form& o) {
    if (n_ != o.n_ || p_ != o.p_ || q_ != o.q_) throw DimensionError("Form -: shape mismatch");
    for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
    return *this;
}

Form& Form::operator*=(cplx s) {
    for (cplx& z : coeffs_) z *= s;
    return *this;
}

Form wedge(const Form& a, const Form& b) {
    if (a.ambient() != b.ambient()) throw DimensionError("wedge: forms live on different C^n");
    const int n = a.ambient();
    const int p = a.bidegree_p() + b.bidegree_p();
    const int q = a.bidegree_q() + b.bidegree_q();
    Form out(n, p, q);
    if (out.slots() == 0 || a.slots() == 0 || b.slots() == 0) return out;

    const CombTable& ai = comb_table(n, a.bidegree_p());
    const CombTable& aj = comb_table(n, a.bidegree_q());
    const CombTable& bi = comb_table(n, b.bidegree_p());
    const CombTable& bj = comb_table(n, b.bidegree_q());
    const CombTable& oi = comb_table(n, p);
    const CombTable& oj = comb_table(n, q);

    // Moving the dz block of b past the dz-bar block of a costs this sign.
    const double swap_sign = ((a.bidegree_q() * b.bidegree_p()) % 2) ? -1.0 : 1.0;

    for (int ar = 0; ar < ai.count(); ++ar) {
        const index_mask_t ia = ai.mask_of(ar);
        for (int as = 0; as < aj.count(); ++as) {
            const cplx ca = a.coeff(ar, as);
            if (ca == cplx{}) continue;
            const index_mask_t ja = aj.mask_of(as);
            for (int br = 0; br < bi.count(); ++br) {
                const index_mask_t ib = bi.mask_of(br);
                if (ia & ib) continue;
                const double si = merge_sign(ia, ib);
                const int or_ = oi.rank_of(ia | ib);
                for (int bs = 0; bs < bj.count(); ++bs) {
                    const cplx cb = b.coeff(br, bs);
                    if (cb == cplx{}) continue;
                    const index_mask_t jb = bj.mask_of(bs);
                    if (ja & jb) continue;
                    const double s = swap_sign * si * merge_sign(ja, jb);
                    out.coeff(or_, oj.rank_of(ja | jb)) += s * ca * cb;
                }
            }
        }
    }
    return out;
}

Form wedge_power(const Form& a, int k) {
    if (k < 0) throw RangeError("wedge_power: negative exponent");
    Form acc = Form::scalar(a.ambient(), 1.0);
    for (int i = 0; i < k; ++i) acc = wedge(acc, a);
    return acc;
}

Form conjugate(const Form& a) {
    const int n = a.ambient();
    Form out(n, a.bidegree_q(), a.bidegree_p());
    if (a.slots() == 0) return out;
    const double sign = ((a.bidegree_p() * a.bidegree_q()) % 2) ? -1.0 : 1.0;
    for (int ir = 0; ir < a.i_count(); ++ir)
        for (int jr = 0; jr < a.j_count(); ++jr) {
            const cplx c = a.coeff(ir, jr);
            if (c == cplx{}) continue;
            out.coeff(jr, ir) += sign * std::conj(c);
        }
    return out;
}

cplx gamma_constant(int n) {
    // Gamma = i^n (-1)^{n(n-1)/2} dz_{1..n} ^ dz-bar_{1..n}.
    static const cplx i_pow[4] = {cplx(1, 0), cplx(0, 1), cplx(-1, 0), cplx(0, -1)};
    cplx g = i_pow[n % 4];
    if ((n * (n - 1) / 2) % 2) g = -g;
    return g;
}

Form volume_form(int n) {
    Form g(n, n, n);
    g.coeff(0, 0) = gamma_constant(n);
    return g;
}

cplx extract(const Form& a) {
    if (a.bidegree_p() != a.ambient() || a.bidegree_q() != a.ambient())
        throw DegreeError("extract: form must have bidegree (n, n)");
    return a.coeff(0, 0) / gamma_constant(a.ambient());
}

cplx inner_product(const Form& a, const Form& b) {
    if (a.ambient() != b.ambient() || a.bidegree_p() != b.bidegree_p() || a.bidegree_q() != b.bidegree_q())
        throw DimensionError("inner_product: shape mismatch");
    cplx s = 0.0;
    for (std::size_t k = 0; k < a.data().size(); ++k) s += a.data()[k] * std::conj(b.data()[k]);
    return s;
}

std::vector<Form> basis_of(int n, int p, int q) {
    if (p < 0 || p > n || q < 0 || q > n) throw RangeError("basis_of: bidegree out of range");
    const int ic = comb_table(n, p).count();
    const int jc = comb_table(n, q).count();
    std::vector<Form> basis;
    basis.reserve(static_cast<std::size_t>(ic) * jc);
    for (int i = 0; i < ic; ++i)
        for (int j = 0; j < jc; ++j) basis.push_back(Form::basis_slot(n, p, q, i, j));
    return basis;
}

Form dz(int n, int index) {
    Form f(n, 1, 0);
    f.coeff(comb_table(n, 1).rank_of(index_mask_t{1} << (index - 1)), 0) = 1.0;
    return f;
}

Form dzbar(int n, int index) {
    Form f(n, 0, 1);
    f.coeff(0, comb_table(n, 1).rank_of(index_mask_t{1} << (index - 1))) = 1.0;
    return f;
}

}  // namespace hrlab
