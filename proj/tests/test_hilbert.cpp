#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <vector>

#include "weakmeas/hilbert.hpp"
#include "weakmeas/random.hpp"

using namespace weakmeas;

namespace {

LinOp pauli_x() { return LinOp(2, {cplx(0), cplx(1), cplx(1), cplx(0)}); }
LinOp pauli_z() { return LinOp(2, {cplx(1), cplx(0), cplx(0), cplx(-1)}); }

}  // namespace

TEST_CASE("ket arithmetic and normalization") {
    Ket v(std::vector<cplx>{cplx(3.0), cplx(0.0, 4.0)});
    CHECK(v.norm() == doctest::Approx(5.0));
    CHECK_FALSE(v.is_normalized());
    const Ket u = v.normalized();
    CHECK(u.is_normalized());
    CHECK(u.norm() == doctest::Approx(1.0));

    const Ket e0 = Ket::basis(3, 0), e1 = Ket::basis(3, 1);
    CHECK(std::abs(inner(e0, e1)) == 0.0);
    CHECK(inner(e0, e0) == cplx(1.0));
}

TEST_CASE("inner product is conjugate-linear in the first slot") {
    Rng rng(5);
    const Ket a = random_state(rng, 4), b = random_state(rng, 4);
    CHECK(std::abs(inner(a, b) - std::conj(inner(b, a))) <= 1e-14);
    const cplx s(0.3, -0.8);
    Ket sa = a;
    sa *= s;
    CHECK(std::abs(inner(sa, b) - std::conj(s) * inner(a, b)) <= 1e-14);
}

TEST_CASE("apply matches a raw loop") {
    Rng rng(7);
    const LinOp a = random_hermitian(rng, 5);
    const Ket v = random_state(rng, 5);
    const Ket w = a.apply(v);
    for (std::size_t i = 0; i < 5; ++i) {
        cplx acc(0.0);
        for (std::size_t j = 0; j < 5; ++j) acc += a.at(i, j) * v[j];
        CHECK(std::abs(w[i] - acc) <= 1e-13);
    }
}

TEST_CASE("projector and outer products") {
    Rng rng(9);
    const Ket v = random_state(rng, 4);
    const LinOp p = LinOp::projector(v);
    CHECK(p.is_hermitian());
    CHECK(p.is_projector());
    CHECK(std::abs(p.trace() - cplx(1.0)) <= 1e-13);
    CHECK(std::abs(p.expectation(v) - cplx(1.0)) <= 1e-13);

    const Ket w = random_state(rng, 4);
    const LinOp o = LinOp::outer(v, w);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            CHECK(std::abs(o.at(i, j) - v[i] * std::conj(w[j])) <= 1e-14);
}

TEST_CASE("operator algebra identities") {
    Rng rng(13);
    const LinOp a = random_hermitian(rng, 4), b = random_hermitian(rng, 4);
    const LinOp ab = a * b;
    CHECK(max_abs_diff(ab.adjoint(), b.adjoint() * a.adjoint()) <= 1e-12);
    CHECK(std::abs((a * b).trace() - (b * a).trace()) <= 1e-12);
    const LinOp c = commutator(a, b);
    CHECK(max_abs_diff(c, a * b - b * a) <= 1e-13);
    CHECK(max_abs_diff(c.adjoint() + c, LinOp(4)) <= 1e-12);  // i[A,B] Hermitian
}

TEST_CASE("tensor products compose dimensions and entries") {
    const Ket e0 = Ket::basis(2, 0), e1 = Ket::basis(2, 1);
    const Ket t = tensor(e0, e1);
    CHECK(t.dim() == 4);
    CHECK(t[1] == cplx(1.0));  // index 2*0 + 1

    const LinOp z1 = tensor(pauli_z(), LinOp::identity(2));
    CHECK(z1.dim() == 4);
    CHECK(z1.at(0, 0) == cplx(1.0));
    CHECK(z1.at(3, 3) == cplx(-1.0));
}

TEST_CASE("known 2x2 spectra") {
    const Spectrum sx = spectral(pauli_x());
    REQUIRE(sx.eigenvalues.size() == 2);
    CHECK(sx.eigenvalues[0] == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(sx.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-12));

    /* [[2, i], [-i, 2]] has eigenvalues 1 and 3. */
    const LinOp m(2, {cplx(2), cplx(0, 1), cplx(0, -1), cplx(2)});
    const Spectrum sm = spectral(m);
    REQUIRE(sm.eigenvalues.size() == 2);
    CHECK(sm.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(sm.eigenvalues[1] == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("spectral reconstruction across dimensions") {
    Rng rng(101);
    for (std::size_t dim = 2; dim <= 16; ++dim) {
        const LinOp a = random_hermitian(rng, dim);
        const Spectrum s = spectral(a);

        CHECK(max_abs_diff(reconstruct(s), a) <= tol::spectral * std::max(1.0, a.max_abs()));

        LinOp closure(dim);
        for (std::size_t i = 0; i < s.eigenprojectors.size(); ++i) {
            const LinOp& p = s.eigenprojectors[i];
            CHECK(p.is_hermitian(1e-10));
            CHECK(max_abs_diff(p * p, p) <= 1e-10);
            for (std::size_t j = i + 1; j < s.eigenprojectors.size(); ++j) {
                CHECK(max_abs_diff(p * s.eigenprojectors[j], LinOp(dim)) <= 1e-10);
                CHECK(s.eigenvalues[j] > s.eigenvalues[i]);
            }
            closure += p;
        }
        CHECK(closure.is_identity(1e-10));
    }
}

TEST_CASE("eigh returns orthonormal eigenvectors with small residuals") {
    Rng rng(103);
    const std::size_t dim = 9;
    const LinOp a = random_hermitian(rng, dim);
    const EigenSystem es = eigh(a);
    REQUIRE(es.values.size() == dim);
    for (std::size_t j = 0; j < dim; ++j) {
        std::vector<cplx> col(dim);
        for (std::size_t i = 0; i < dim; ++i) col[i] = es.vectors.at(i, j);
        const Ket v{col};
        CHECK(v.norm() == doctest::Approx(1.0).epsilon(1e-12));
        const Ket av = a.apply(v);
        Ket lv = v;
        lv *= cplx(es.values[j]);
        CHECK(max_abs_diff(av, lv) <= 1e-10 * std::max(1.0, a.max_abs()));
    }
}

TEST_CASE("exact and near degeneracies merge into one eigenprojector") {
    const LinOp d3 = LinOp::diagonal({1.0, 1.0, 2.0});
    const Spectrum s3 = spectral(d3);
    REQUIRE(s3.eigenvalues.size() == 2);
    CHECK(std::abs(s3.eigenprojectors[0].trace() - cplx(2.0)) <= 1e-12);
    CHECK(std::abs(s3.eigenprojectors[1].trace() - cplx(1.0)) <= 1e-12);

    const LinOp near = LinOp::diagonal({0.0, 0.5e-9, 1.0});
    const Spectrum sn = spectral(near);
    REQUIRE(sn.eigenvalues.size() == 2);
    CHECK(std::abs(sn.eigenprojectors[0].trace() - cplx(2.0)) <= 1e-12);
    CHECK(sn.eigenvalues[0] == doctest::Approx(0.25e-9));
}

TEST_CASE("degenerate random spectra keep projector ranks") {
    Rng rng(107);
    /* U diag(2, 2, 5, 5, 5) U^dagger must come back as two projectors of
     * ranks 2 and 3. */
    const std::size_t dim = 5;
    const auto basis = random_orthonormal_basis(rng, dim);
    LinOp a(dim);
    const double vals[dim] = {2.0, 2.0, 5.0, 5.0, 5.0};
    for (std::size_t j = 0; j < dim; ++j) {
        LinOp p = LinOp::projector(basis[j]);
        p *= cplx(vals[j]);
        a += p;
    }
    const Spectrum s = spectral(a);
    REQUIRE(s.eigenvalues.size() == 2);
    CHECK(s.eigenvalues[0] == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(s.eigenvalues[1] == doctest::Approx(5.0).epsilon(1e-10));
    CHECK(std::abs(s.eigenprojectors[0].trace() - cplx(2.0)) <= 1e-9);
    CHECK(std::abs(s.eigenprojectors[1].trace() - cplx(3.0)) <= 1e-9);
    CHECK(max_abs_diff(reconstruct(s), a) <= 1e-9);
}

TEST_CASE("non-Hermitian input is rejected") {
    LinOp m(2);
    m.at(0, 1) = cplx(1.0);
    CHECK_THROWS_AS(spectral(m), InvalidOperator);
    CHECK_THROWS_AS(eigh(m), InvalidOperator);
}

TEST_CASE("dimension mismatches are rejected") {
    const Ket v = Ket::basis(2, 0);
    const LinOp a = LinOp::identity(3);
    CHECK_THROWS_AS(a.apply(v), DimensionMismatch);
    CHECK_THROWS_AS((void)inner(v, Ket::basis(3, 0)), DimensionMismatch);
}
