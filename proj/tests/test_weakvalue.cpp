#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "weakmeas/random.hpp"
#include "weakmeas/weakvalue.hpp"

using namespace weakmeas;

namespace {

LinOp pauli_z() { return LinOp(2, {cplx(1), cplx(0), cplx(0), cplx(-1)}); }

Ket qubit(double theta) {
    return Ket(std::vector<cplx>{cplx(std::cos(theta)), cplx(std::sin(theta))});
}

const double kInvSqrt2 = 0.70710678118654752440;

}  // namespace

TEST_CASE("qubit weak value matches the hand formula") {
    for (const double theta : {0.3, 0.7, 1.1}) {
        const Ket ini = qubit(theta);
        const Ket fin(std::vector<cplx>{cplx(kInvSqrt2), cplx(kInvSqrt2)});
        const WeakValueReport r = weak_value(pauli_z(), ini, fin);
        const double expected = (std::cos(theta) - std::sin(theta)) /
                                (std::cos(theta) + std::sin(theta));
        CHECK(r.real_part == doctest::Approx(expected).epsilon(1e-14));
        CHECK(std::abs(r.imag_part) <= 1e-14);
        CHECK(std::abs(r.value - cplx(expected)) <= 1e-14);
    }
}

TEST_CASE("near-orthogonal post-selection amplifies the weak value beyond the spectrum") {
    const double theta = 3.1415926535897932385 / 4.0 + 0.05;
    const Ket ini = qubit(theta);
    const Ket fin(std::vector<cplx>{cplx(kInvSqrt2), cplx(-kInvSqrt2)});
    const WeakValueReport r = weak_value(pauli_z(), ini, fin);
    /* (cos + sin) / (cos - sin) at theta = pi/4 + 0.05 equals -cot(0.05). */
    CHECK(r.real_part == doctest::Approx(-1.0 / std::tan(0.05)).epsilon(1e-12));
    CHECK(std::abs(r.real_part) > 5.0);  // far outside the eigenvalue range [-1, 1]
    CHECK(r.classification == WeakValueClass::BackActionIndicator);
}

TEST_CASE("scale invariance in both states") {
    Rng rng(3);
    const Ket ini = random_state(rng, 5), fin = random_state_overlapping(rng, ini, 0.05);
    const LinOp a = random_hermitian(rng, 5);
    Ket ini_scaled = ini, fin_scaled = fin;
    ini_scaled *= cplx(0.0, 2.5);
    fin_scaled *= cplx(-1.75, 0.5);
    CHECK(std::abs(weak_value(a, ini, fin).value -
                   weak_value(a, ini_scaled, fin_scaled).value) <= 1e-12);
}

TEST_CASE("weak values are linear in the observable") {
    Rng rng(7);
    for (int t = 0; t < 25; ++t) {
        const std::size_t dim = 2 + static_cast<std::size_t>(t) % 5;
        const Ket ini = random_state(rng, dim), fin = random_state_overlapping(rng, ini, 0.05);
        const LinOp a = random_hermitian(rng, dim), b = random_hermitian(rng, dim);
        const double al = 2.0 * rng.uniform() - 1.0, be = 2.0 * rng.uniform() - 1.0;
        LinOp combo = a;
        combo *= cplx(al);
        LinOp sb = b;
        sb *= cplx(be);
        combo += sb;
        const cplx lhs = weak_value(combo, ini, fin).value;
        const cplx rhs = al * weak_value(a, ini, fin).value + be * weak_value(b, ini, fin).value;
        CHECK(std::abs(lhs - rhs) <= 1e-10);
    }
}

TEST_CASE("rejections: orthogonality, dimension, non-Hermitian") {
    const Ket e0 = Ket::basis(2, 0), e1 = Ket::basis(2, 1);
    CHECK_THROWS_AS(weak_value(pauli_z(), e0, e1), OrthogonalPostSelection);
    CHECK_THROWS_AS(weak_value(LinOp::identity(3), e0, e0), DimensionMismatch);
    LinOp m(2);
    m.at(0, 1) = cplx(1.0);
    CHECK_THROWS_AS(weak_value(m, e0, e0), InvalidOperator);
}

TEST_CASE("classification follows the commuting-projector rule") {
    Rng rng(11);
    const Ket ini = random_state(rng, 3);
    const Ket fin = random_state_overlapping(rng, ini, 0.1);

    /* Observable equal to the final projector: trivially commutes with it. */
    const LinOp pf = LinOp::projector(fin);
    CHECK(weak_value(pf, ini, fin).classification == WeakValueClass::ConditionalProbability);
    CHECK(weak_value(pf, ini, fin).flags.final_with_observable);

    /* Projector commuting with neither the final projector nor the initial. */
    const LinOp other = random_rank1_projector(rng, 3);
    const WeakValueReport r = weak_value(other, ini, fin);
    CHECK_FALSE(r.flags.final_with_observable);
    CHECK(r.classification == WeakValueClass::BackActionIndicator);

    /* Non-projector observable is never a conditional probability, even when
     * every commutator vanishes. */
    const LinOp scaled = LinOp::diagonal({2.0, 2.0, 2.0});
    CHECK(weak_value(scaled, ini, fin).classification == WeakValueClass::BackActionIndicator);
}

TEST_CASE("real case: zero imaginary part comes with zero commutator expectation") {
    Rng rng(13);
    for (int t = 0; t < 10; ++t) {
        /* Real symmetric observable and real states. */
        const std::size_t dim = 3;
        LinOp a(dim);
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t j = i; j < dim; ++j) {
                const double v = rng.normal();
                a.at(i, j) = cplx(v);
                a.at(j, i) = cplx(v);
            }
        std::vector<cplx> iv(dim), fv(dim);
        for (auto& z : iv) z = cplx(rng.normal());
        for (auto& z : fv) z = cplx(rng.normal());
        const Ket ini = Ket(iv).normalized();
        const Ket fin = Ket(fv).normalized();
        if (std::abs(inner(fin, ini)) < 0.05) continue;
        const WeakValueReport r = weak_value(a, ini, fin);
        CHECK(std::abs(r.imag_part) <= 1e-12);
        CHECK(std::abs(r.expectation_of_commutator) <= 1e-12);
    }
}

TEST_CASE("weighted weak values rebuild the expectation over any basis") {
    Rng rng(17);
    for (std::size_t dim = 2; dim <= 6; ++dim) {
        const Ket ini = random_state(rng, dim);
        const LinOp a = random_hermitian(rng, dim);
        const auto basis = random_orthonormal_basis(rng, dim);
        const auto parts = decompose_expectation(a, ini, basis);
        cplx acc(0.0);
        double imag_acc = 0.0, prob_acc = 0.0;
        for (const auto& p : parts) {
            acc += p.probability * p.report.value;
            imag_acc += p.probability * p.report.imag_part;
            prob_acc += p.probability;
        }
        CHECK(std::abs(acc - a.expectation(ini)) <= 1e-11);
        CHECK(std::abs(imag_acc) <= 1e-11);  // imaginary parts cancel exactly
        CHECK(prob_acc == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("decomposition validates basis completeness") {
    Rng rng(19);
    const Ket ini = random_state(rng, 3);
    const LinOp a = random_hermitian(rng, 3);
    auto basis = random_orthonormal_basis(rng, 3);
    basis.pop_back();  // incomplete
    CHECK_THROWS_AS(decompose_expectation(a, ini, basis), InvalidOperator);
}

TEST_CASE("partition weak values sum to one") {
    Rng rng(23);
    for (std::size_t dim = 2; dim <= 6; ++dim) {
        const Ket ini = random_state(rng, dim);
        const Ket fin = random_state_overlapping(rng, ini, 0.05);
        const auto partition = random_projective_partition(rng, dim);
        CHECK(std::abs(completeness_sum(partition, ini, fin) - cplx(1.0)) <= 1e-11);
    }
}

TEST_CASE("modulus-squared identity holds three ways for rank-one observables") {
    Rng rng(29);
    for (int t = 0; t < 50; ++t) {
        const std::size_t dim = 2 + static_cast<std::size_t>(t) % 5;
        const Ket ini = random_state(rng, dim);
        const Ket fin = random_state_overlapping(rng, ini, 0.05);
        const LinOp proj = random_rank1_projector(rng, dim);
        const auto sq = squared_weakvalue_identity(proj, ini, fin);
        CHECK(std::abs(sq.lhs - sq.rhs_product_form) <= 1e-10 * std::max(1.0, sq.lhs));
        CHECK(std::abs(sq.lhs - sq.rhs_sandwich_form) <= 1e-10 * std::max(1.0, sq.lhs));
    }
}

TEST_CASE("squared identity rejects non-projectors") {
    Rng rng(31);
    const Ket ini = random_state(rng, 3), fin = random_state_overlapping(rng, ini, 0.1);
    CHECK_THROWS_AS(squared_weakvalue_identity(LinOp::diagonal({1.0, 2.0, 0.0}), ini, fin),
                    InvalidOperator);
}

TEST_CASE("projector weak values over a commuting basis are exactly 0 or 1") {
    Rng rng(37);
    for (std::size_t dim = 2; dim <= 6; ++dim) {
        const Ket ini = random_state(rng, dim);
        const auto basis = random_orthonormal_basis(rng, dim);
        LinOp subspace(dim);
        for (std::size_t j = 0; j < dim; j += 2) subspace += LinOp::projector(basis[j]);
        const auto values = zero_or_one_check(subspace, basis, ini);
        for (const double v : values) {
            const double dist = std::min(std::abs(v), std::abs(v - 1.0));
            CHECK(dist <= 1e-10);
        }
    }
}

TEST_CASE("zero-or-one precondition rejects a noncommuting projector") {
    Rng rng(41);
    const Ket ini = random_state(rng, 4);
    const auto basis = random_orthonormal_basis(rng, 4);
    const LinOp p = random_rank1_projector(rng, 4);
    CHECK_THROWS_AS(zero_or_one_check(p, basis, ini), InvalidOperator);
}
