#include <doctest.h>

#include <cmath>

#include "hrlab/restriction.hpp"
#include "support/exterior_oracle.hpp"

using namespace hrlab;

namespace {

HermitianForm diag_form(const std::vector<double>& d) {
    const int n = static_cast<int>(d.size());
    CMatrix a(n, n);
    for (int i = 0; i < n; ++i) a(i, i) = d[static_cast<std::size_t>(i)];
    return HermitianForm(std::move(a), false);
}

Hyperplane coordinate_plane(int n, int axis) {
    std::vector<cplx> v(static_cast<std::size_t>(n), cplx{});
    v[static_cast<std::size_t>(axis - 1)] = 1.0;
    return Hyperplane(std::move(v));
}

std::vector<cplx> random_unit(int n, Rng& rng) {
    std::vector<cplx> v(static_cast<std::size_t>(n));
    for (auto& z : v) z = rng.gaussian_cplx();
    const double norm = vec_norm(v);
    for (auto& z : v) z /= norm;
    return v;
}

}  // namespace

TEST_CASE("hyperplane normalization and JSON-ready invariants") {
    Hyperplane h({cplx(3, 4), cplx(0, 0)});
    CHECK(vec_norm(h.v) == doctest::Approx(1.0));
    CHECK_THROWS_AS(Hyperplane({cplx(0, 0)}), ValidationError);
}

TEST_CASE("unitary completion is unitary with the prescribed last column") {
    Rng rng(301);
    for (int trial = 0; trial < 12; ++trial) {
        const int n = rng.uniform_int(1, 6);
        const auto c = random_unit(n, rng);
        const CMatrix u = unitary_completion(c);
        CMatrix g = u.adjoint() * u;
        g -= CMatrix::identity(n);
        CHECK(g.frobenius_norm() < 1e-13);
        for (int i = 0; i < n; ++i) CHECK(std::abs(u(i, n - 1) - c[static_cast<std::size_t>(i)]) < 1e-13);
    }
}

TEST_CASE("restriction of the standard Kahler form along a coordinate axis") {
    const HermitianForm omega3 = HermitianForm::standard_kahler(3);
    const HermitianForm r = restrict_to(omega3, coordinate_plane(3, 3));
    CMatrix diff = r.matrix() - CMatrix::identity(2);
    CHECK(diff.frobenius_norm() < 1e-13);

    // Any unitary frame restricts omega to omega.
    Rng rng(307);
    const HermitianForm r2 = restrict_to(HermitianForm::standard_kahler(4), Hyperplane(random_unit(4, rng)));
    CMatrix diff2 = r2.matrix() - CMatrix::identity(3);
    CHECK(diff2.frobenius_norm() < 1e-12);
}

TEST_CASE("restricting the dropped direction gives zero") {
    const Form dz3 = dz(3, 3);
    const Form r = restrict_to(dz3, coordinate_plane(3, 3));
    CHECK(r.is_zero(1e-15));
    // p > n-1 is a forced zero
    const Form top = volume_form(2);
    const Form rt = restrict_to(top, coordinate_plane(2, 1));
    CHECK(rt.slots() == 0);
}

TEST_CASE("matrix-route and form-route restrictions agree") {
    Rng rng(311);
    for (int trial = 0; trial < 15; ++trial) {
        const int n = rng.uniform_int(2, 5);
        CMatrix g(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) g(i, j) = rng.gaussian_cplx();
        CMatrix h = g + g.adjoint();
        h.hermitize();
        const HermitianForm alpha(std::move(h), false);
        const Hyperplane plane(random_unit(n, rng));
        const Form via_form = restrict_to(alpha.to_form(), plane);
        const Form via_matrix = restrict_to(alpha, plane).to_form();
        CHECK(oracle::form_distance(via_form, via_matrix) < 1e-12);
    }
}

TEST_CASE("pullback respects wedge and unitary invariance of restrictions") {
    Rng rng(313);
    const int n = 3;
    CMatrix g(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g(i, j) = rng.gaussian_cplx();
    const CMatrix u = svd(g).u;  // Haar-ish unitary

    CMatrix ha(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) ha(i, j) = rng.gaussian_cplx();
    CMatrix hh = ha + ha.adjoint();
    hh.hermitize();
    const HermitianForm alpha(std::move(hh), false);
    const HermitianForm omega = random_kahler(n, rng);

    // pullback(Form) matches pullback(HermitianForm).
    CHECK(oracle::form_distance(pullback(alpha.to_form(), u), pullback(alpha, u).to_form()) < 1e-12);

    // Identical relative spectra of restrictions under a unitary change of frame.
    const Hyperplane plane(random_unit(n, rng));
    std::vector<cplx> tv(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        cplx s = 0.0;
        for (int j = 0; j < n; ++j) s += u(j, i) * plane.v[static_cast<std::size_t>(j)];  // (T^t v)_i
        tv[static_cast<std::size_t>(i)] = s;
    }
    const Hyperplane plane_t(std::move(tv));
    const auto s1 =
        relative_spectrum(restrict_to(alpha, plane), restrict_to(omega, plane)).eigenvalues;
    const auto s2 = relative_spectrum(restrict_to(pullback(alpha, u), plane_t),
                                      restrict_to(pullback(omega, u), plane_t))
                        .eigenvalues;
    for (std::size_t i = 0; i < s1.size(); ++i)
        CHECK(s1[i] == doctest::Approx(s2[i]).epsilon(1e-9).scale(1.0 + std::abs(s1[0])));
}

TEST_CASE("restriction identity: exact coordinate case and frozen diagonal value") {
    const HermitianForm omega3 = HermitianForm::standard_kahler(3);
    for (int k = 1; k <= 2; ++k)
        for (int axis = 1; axis <= 3; ++axis)
            CHECK(restriction_identity_residual(omega3, omega3, k, coordinate_plane(3, axis)) < 1e-13);

    // alpha = diag(1,1,0), k = 1, v = e3: both sides equal 1!1! e_1(1,1) = 2
    // (frozen via the expansion oracle).
    const RestrictionIdentity ident =
        restriction_identity(diag_form({1, 1, 0}), omega3, 1, coordinate_plane(3, 3));
    CHECK(ident.lhs == doctest::Approx(2.0));
    CHECK(ident.rhs == doctest::Approx(2.0));
    CHECK(ident.residual < 1e-13);

    CHECK_THROWS_AS(restriction_identity(omega3, omega3, 3, coordinate_plane(3, 1)), RangeError);
}

TEST_CASE("restriction identity on random inputs (algebraic, no positivity needed)") {
    Rng rng(317);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = rng.uniform_int(2, 5);
        CMatrix g(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) g(i, j) = rng.gaussian_cplx();
        CMatrix h = g + g.adjoint();
        h.hermitize();
        const HermitianForm alpha(std::move(h), false);
        const HermitianForm omega = random_kahler(n, rng);
        const int k = rng.uniform_int(1, n - 1);
        const RestrictionIdentity ident = restriction_identity(alpha, omega, k, Hyperplane(random_unit(n, rng)));
        const double scale = std::max({std::abs(ident.lhs), std::abs(ident.rhs), 1.0});
        CHECK(ident.residual / scale < 1e-11);
    }
}

TEST_CASE("degeneracy locus of diag(1,1,0) at m=2: gram = diag(0,0,2)") {
    const HermitianForm omega3 = HermitianForm::standard_kahler(3);
    const DegeneracyLocus locus = degeneracy_locus(diag_form({1, 1, 0}), omega3, 2);
    CHECK(locus.gram(0, 0) == cplx(0.0));
    CHECK(locus.gram(1, 1) == cplx(0.0));
    CHECK(locus.gram(2, 2).real() == doctest::Approx(2.0));
    CHECK(locus.gram_psd);
    CHECK(locus.kernel_dim == 2);

    // S(alpha) = {v3 = 0}: e1, e2 inside, e3 outside.
    CHECK(in_degeneracy_locus(locus, {1.0, 0.0, 0.0}));
    CHECK(in_degeneracy_locus(locus, {0.0, 1.0, 0.0}));
    CHECK_FALSE(in_degeneracy_locus(locus, {0.0, 0.0, 1.0}));

    // v = e3 off the locus: the restriction diag(1,1) is 2-positive on C^2.
    const HermitianForm r = restrict_to(diag_form({1, 1, 0}), coordinate_plane(3, 3));
    CHECK(is_m_positive(r, HermitianForm::standard_kahler(2), 2).positive);

    CHECK_THROWS_AS(degeneracy_locus(diag_form({1, 1, 0}), omega3, 3), RangeError);
}

TEST_CASE("degeneracy locus of a definite form is trivial") {
    const HermitianForm omega3 = HermitianForm::standard_kahler(3);
    const DegeneracyLocus locus = degeneracy_locus(omega3, omega3, 2);
    CHECK(locus.kernel_dim == 0);
    const auto eigs = eigh_jacobi(locus.gram).eigenvalues;
    CHECK(eigs.front() > 0.0);
}

TEST_CASE("restrictions stay m-positive off the locus (complex non-diagonal draws)") {
    Rng rng(331);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = rng.uniform_int(3, 5);
        const int m = rng.uniform_int(1, n - 1);
        const HermitianForm omega = random_kahler(n, rng);
        const HermitianForm alpha = random_polarization(n, m, 1e-6, rng, omega);
        const DegeneracyLocus locus = degeneracy_locus(alpha, omega, m);
        CHECK(locus.gram_psd);
        CHECK(locus.kernel_dim < n);
        const auto v = random_unit(n, rng);
        if (!in_degeneracy_locus(locus, v)) {
            const Hyperplane plane(v);
            CHECK(is_m_positive(restrict_to(alpha, plane), restrict_to(omega, plane), m).positive);
        }
        // k <= m-1 restrictions are positive on every hyperplane.
        if (m >= 2) {
            const Hyperplane any_plane(random_unit(n, rng));
            const int k = rng.uniform_int(1, m - 1);
            const HermitianForm ra = restrict_to(alpha, any_plane);
            const HermitianForm rw = restrict_to(omega, any_plane);
            CHECK(extract(wedge(wedge_power(ra.to_form(), k), wedge_power(rw.to_form(), n - 1 - k))).real() > 0.0);
        }
    }
}

TEST_CASE("strict positivity against rank-one PSD forms") {
    Rng rng(337);
    for (int trial = 0; trial < 25; ++trial) {
        const int n = rng.uniform_int(3, 5);
        const int m = rng.uniform_int(2, n);
        const int k = rng.uniform_int(1, m - 1);
        const HermitianForm omega = random_kahler(n, rng);
        const HermitianForm alpha = random_polarization(n, m, 1e-6, rng, omega);
        const HermitianForm beta = hyperplane_one_one(Hyperplane(random_unit(n, rng)));
        const double value =
            extract(wedge(wedge(wedge_power(alpha.to_form(), k), wedge_power(omega.to_form(), n - k - 1)),
                          beta.to_form()))
                .real();
        CHECK(value > 0.0);
    }
}

TEST_CASE("sign-vector remark: hyperplane pairing equals the omega-power value for diagonal forms") {
    Rng rng(347);
    for (int trial = 0; trial < 12; ++trial) {
        const int n = rng.uniform_int(2, 5);
        std::vector<double> lam(static_cast<std::size_t>(n));
        for (auto& l : lam) l = rng.uniform(-1.0, 2.0);
        const HermitianForm alpha = diag_form(lam);
        const HermitianForm omega = HermitianForm::standard_kahler(n);
        const int k = rng.uniform_int(1, n - 1);

        std::vector<cplx> e(static_cast<std::size_t>(n));
        for (auto& z : e) z = (rng.uniform() < 0.5) ? 1.0 : -1.0;
        // Unnormalized sign vector: scale the normalized quadratic back by n.
        const Hyperplane plane(e);
        const CMatrix gram = restriction_gram(alpha, omega, k);
        std::vector<cplx> unit = plane.v;
        const double quad = vec_dot(unit, matvec(gram, unit)).real() * n;
        const double rhs = extract(wedge(wedge_power(alpha.to_form(), k), wedge_power(omega.to_form(), n - k))).real();
        CHECK(quad == doctest::Approx(rhs).epsilon(1e-10).scale(1.0 + std::abs(rhs)));
    }
}

TEST_CASE("avoid_hyperplanes_basis") {
    // Coordinate hyperplanes: every basis vector needs all coordinates nonzero.
    std::vector<Hyperplane> coords;
    for (int axis = 1; axis <= 3; ++axis) coords.push_back(coordinate_plane(3, axis));
    const AvoidanceBasis basis = avoid_hyperplanes_basis(coords, 3, 5);
    CHECK(basis.orthonormality_residual < 1e-12);
    CHECK(basis.min_margin > 1e-6);
    for (int c = 0; c < 3; ++c)
        for (int r = 0; r < 3; ++r) CHECK(std::abs(basis.basis(r, c)) > 1e-8);

    // Empty list: any orthonormal basis is fine.
    const AvoidanceBasis trivial = avoid_hyperplanes_basis({}, 4, 1);
    CHECK(trivial.orthonormality_residual < 1e-12);
    CHECK(trivial.min_margin == doctest::Approx(1.0));

    // Random batches.
    Rng rng(353);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = rng.uniform_int(2, 5);
        std::vector<Hyperplane> planes;
        const int count = rng.uniform_int(1, 10);
        for (int i = 0; i < count; ++i) planes.emplace_back(random_unit(n, rng));
        const AvoidanceBasis b = avoid_hyperplanes_basis(planes, n, rng.next_u64());
        CHECK(b.orthonormality_residual < 1e-12);
        CHECK(b.min_margin > 0.0);
    }
}

TEST_CASE("frame identity") {
    CHECK(frame_identity_residual(CMatrix::identity(3)) == doctest::Approx(0.0));

    Rng rng(359);
    CMatrix g(4, 4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) g(i, j) = rng.gaussian_cplx();
    const CMatrix u = svd(g).u;
    CHECK(frame_identity_residual(u) < 1e-12);

    CMatrix scaled = CMatrix::identity(3) * cplx(2.0, 0.0);
    CHECK(frame_identity_residual(scaled) == doctest::Approx(3.0 * std::sqrt(3.0)));
}
