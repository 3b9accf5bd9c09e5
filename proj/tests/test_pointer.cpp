#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "testutil.hpp"
#include "weakmeas/pointer.hpp"
#include "weakmeas/random.hpp"
#include "weakmeas/runner.hpp"

using namespace weakmeas;

namespace {

LinOp pauli_z() { return LinOp(2, {cplx(1), cplx(0), cplx(0), cplx(-1)}); }

Ket qubit(double theta) {
    return Ket(std::vector<cplx>{cplx(std::cos(theta)), cplx(std::sin(theta))});
}

}  // namespace

/* The quadrature oracles come first: every closed-form overlap the model uses
 * is pinned against direct numerical integration of the packet. */

TEST_CASE("packet overlap formula against quadrature") {
    for (const double sigma : {0.5, 1.0, 2.0}) {
        for (const double a : {-1.0, 0.4}) {
            for (const double b : {0.0, 1.3}) {
                const auto f = [&](double x) {
                    return testutil::gaussian_packet(x, a, sigma) *
                           testutil::gaussian_packet(x, b, sigma);
                };
                const double lo = std::min(a, b) - 12.0 * sigma;
                const double hi = std::max(a, b) + 12.0 * sigma;
                const double quad = testutil::simpson(f, lo, hi, 8192);
                CHECK(std::abs(quad - gaussian_overlap(a, b, sigma)) <= tol::quadrature);
            }
        }
    }
}

TEST_CASE("packet position overlap formula against quadrature") {
    for (const double sigma : {0.5, 1.0}) {
        const double a = 0.7, b = -0.2;
        const auto f = [&](double x) {
            return testutil::gaussian_packet(x, a, sigma) * x *
                   testutil::gaussian_packet(x, b, sigma);
        };
        const double quad = testutil::simpson(f, -14.0 * sigma, 14.0 * sigma, 16384);
        CHECK(std::abs(quad - gaussian_x_overlap(a, b, sigma)) <= tol::quadrature);
    }
}

TEST_CASE("packet moments: mean x0, zero mean momentum, x-momentum correlation i/2") {
    const double x0 = 1.0;
    for (const double sigma : {0.5, 1.0, 3.0}) {
        const auto density = [&](double x) {
            const double p = testutil::gaussian_packet(x, x0, sigma);
            return p * p;
        };
        const double mean =
            testutil::simpson([&](double x) { return x * density(x); }, x0 - 14.0 * sigma,
                              x0 + 14.0 * sigma, 16384);
        CHECK(std::abs(mean - x0) <= tol::quadrature);

        /* <phi|p|phi> = -i Int phi phi' = 0 for a real packet. */
        const auto packet = [&](double x) { return testutil::gaussian_packet(x, x0, sigma); };
        const double pimag = testutil::simpson(
            [&](double x) { return packet(x) * testutil::derivative5(packet, x, 1e-3); },
            x0 - 14.0 * sigma, x0 + 14.0 * sigma, 16384);
        CHECK(std::abs(pimag) <= tol::quadrature);

        /* <phi|x p|phi> = -i Int x phi phi' dx = i/2 independent of sigma:
         * the imaginary part of the correlation is what the first-order
         * readout transfers into probability shifts. */
        const double xp = testutil::simpson(
            [&](double x) { return x * packet(x) * testutil::derivative5(packet, x, 1e-3); },
            x0 - 14.0 * sigma, x0 + 14.0 * sigma, 16384);
        CHECK(std::abs(-xp - 0.5) <= tol::quadrature);  // -i * (-1/2) = i/2
    }
}

TEST_CASE("pointer construction rejects bad parameters") {
    CHECK_THROWS_AS(GaussianPointer(1.0, 0.0), InvalidOperator);
    CHECK_THROWS_AS(GaussianPointer(1.0, -2.0), InvalidOperator);
    CHECK_THROWS_AS(GaussianPointer(0.0, 1.0), InvalidOperator);
}

TEST_CASE("exact evolution splits the state into shifted eigenbranches") {
    const double theta = 0.6, x0 = 1.0, sigma = 1.0, k = 0.3;
    const WeakSetup setup{qubit(theta), pauli_z(), GaussianPointer(x0, sigma), k};
    const JointState js = evolve_exact(setup);
    REQUIRE(js.branches.size() == 2);
    /* spectral order is ascending: eigenvalue -1 first. */
    CHECK(js.branches[0].eigenvalue == doctest::Approx(-1.0));
    CHECK(js.branches[0].pointer_centre == doctest::Approx(x0 - k));
    CHECK(js.branches[1].pointer_centre == doctest::Approx(x0 + k));
    CHECK(js.branches[0].component.norm() == doctest::Approx(std::abs(std::sin(theta))));
    CHECK(js.branches[1].component.norm() == doctest::Approx(std::abs(std::cos(theta))));
}

TEST_CASE("zero coupling leaves Born statistics and the pointer untouched") {
    Rng rng(3);
    const Ket ini = random_state(rng, 3);
    const Ket fin = random_state_overlapping(rng, ini, 0.1);
    const LinOp a = random_hermitian(rng, 3);
    const WeakSetup setup{ini, a, GaussianPointer(1.0, 1.0), 0.0};
    const JointState js = evolve_exact(setup);
    CHECK(postselection_probability(js, fin) ==
          doctest::Approx(std::norm(inner(fin, ini))).epsilon(1e-12));
    CHECK(postselect_pointer_mean(js, fin) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("coupling sweep: exact readout probability meets the first-order law at order 2") {
    /* Per draw the truncation error stays under a quadratic envelope; the
     * convergence order is fitted on the ensemble median because a draw whose
     * quadratic coefficient nearly cancels shows a transient slope. */
    Rng rng(5);
    std::vector<double> err0, err2;
    for (int t = 0; t < 30; ++t) {
        const std::size_t dim = 2 + static_cast<std::size_t>(t) % 2;
        const Ket ini = random_state(rng, dim);
        const Ket fin = random_state_overlapping(rng, ini, 0.2);
        const LinOp a = random_hermitian(rng, dim);
        const WeakSetup setup{ini, a, GaussianPointer(1.0, 1.0), 1e-2};
        const SweepResult sr = sweep_coupling(setup, fin);
        for (std::size_t j = 0; j < 3; ++j)
            CHECK(sr.errors[j] <= 2.0 * sr.couplings[j] * sr.couplings[j]);
        err0.push_back(sr.errors[0]);
        err2.push_back(sr.errors[2]);
    }
    std::sort(err0.begin(), err0.end());
    std::sort(err2.begin(), err2.end());
    const double order = 0.5 * std::log2(err0[err0.size() / 2] / err2[err2.size() / 2]);
    CHECK(order > 1.8);
    CHECK(order < 2.2);
}

TEST_CASE("conditional pointer mean matches x0 + coupling * Re weak value to O(k^2)") {
    /* The Gaussian branch overlaps depend only on k^2, which makes the mean
     * deviation odd in k: the remainder is cubic and shrinks ~8x per halving,
     * comfortably inside the quadratic bound asserted here. */
    Rng rng(6);
    for (int t = 0; t < 30; ++t) {
        const std::size_t dim = 2 + static_cast<std::size_t>(t) % 2;
        const Ket ini = random_state(rng, dim);
        const Ket fin = random_state_overlapping(rng, ini, 0.2);
        const LinOp a = random_hermitian(rng, dim);
        double prev = 0.0;
        for (int j = 0; j < 3; ++j) {
            const double k = 1e-2 / std::pow(2.0, j);
            const WeakSetup setup{ini, a, GaussianPointer(1.0, 1.0), k};
            const double err = std::abs(postselect_pointer_mean(evolve_exact(setup), fin.normalized()) -
                                        first_order_pointer_mean(setup, fin));
            CHECK(err <= 0.5 * k * k);
            if (j > 0) CHECK(err <= 0.25 * prev);  // at least second order
            prev = err;
        }
    }
}

TEST_CASE("readout state: exact form converges to the first-order form at rate 2") {
    Rng rng(7);
    const Ket ini = random_state(rng, 3);
    const LinOp a = random_hermitian(rng, 3);
    const GaussianPointer pointer(1.0, 1.0);
    std::vector<double> hs, errs;
    for (const double k : {4e-2, 2e-2, 1e-2, 5e-3}) {
        const WeakSetup setup{ini, a, pointer, k};
        errs.push_back(max_abs_diff(state_after_readout_exact(setup), state_after_readout(setup)));
        hs.push_back(k);
    }
    const double order = testutil::order_fit(hs, errs);
    CHECK(order > 1.8);
    CHECK(order < 2.2);
}

TEST_CASE("first-order probability back-action equals Re of the weak value") {
    Rng rng(9);
    for (int t = 0; t < 50; ++t) {
        const std::size_t dim = 2 + static_cast<std::size_t>(t) % 5;
        const Ket ini = random_state(rng, dim);
        const Ket fin = random_state_overlapping(rng, ini, 0.05);
        const LinOp a = random_hermitian(rng, dim);
        const WeakSetup setup{ini, a, GaussianPointer(1.0, 1.0), 1e-2};
        const BackactionRelation rel = backaction_relation(setup, fin);
        CHECK(std::abs(rel.lhs_weakvalue_re - rel.rhs_probability_ratio) <= 1e-11);
        CHECK(std::abs(rel.ratio_identity_lhs - rel.ratio_identity_rhs) <= 1e-11);
    }
}

TEST_CASE("back-action against the exact post-selection statistics") {
    /* The first-order ratio must match the exact probability change as the
     * coupling halves (first-order remainder shrinks ~2x per halving). */
    Rng rng(11);
    const Ket ini = random_state(rng, 2);
    const Ket fin = random_state_overlapping(rng, ini, 0.3);
    const LinOp a = random_hermitian(rng, 2);
    const GaussianPointer pointer(1.0, 1.0);
    const double p0 = std::norm(inner(fin.normalized(), ini.normalized()));
    const double wv_re = weak_value(a, ini, fin).real_part;
    std::vector<double> hs, errs;
    for (const double k : {2e-2, 1e-2, 5e-3, 2.5e-3}) {
        const WeakSetup setup{ini, a, pointer, k};
        /* Exact Pr' after the readout: |<f|exact readout state>|^2. */
        const double p1 = std::norm(inner(fin.normalized(), state_after_readout_exact(setup)));
        const double ratio = (pointer.x0 / k) * (p1 - p0) / p0;
        errs.push_back(std::abs(ratio - wv_re));
        hs.push_back(k);
    }
    const double order = testutil::order_fit(hs, errs);
    CHECK(order > 0.8);  // remainder is O(k) in the ratio
    CHECK(errs.back() <= 0.05 * std::max(1.0, std::abs(wv_re)));
}

TEST_CASE("completeness: a full partition shifts probability like the identity") {
    Rng rng(13);
    for (std::size_t dim = 2; dim <= 5; ++dim) {
        const Ket ini = random_state(rng, dim);
        const Ket fin = random_state_overlapping(rng, ini, 0.1);
        const auto partition = random_projective_partition(rng, dim);
        const double r =
            completeness_backaction(partition, ini, fin, GaussianPointer(1.0, 1.0), 1e-2);
        CHECK(r == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("failure modes raise the dedicated exceptions") {
    Rng rng(15);
    const Ket ini = random_state(rng, 2);
    const LinOp a = random_hermitian(rng, 2);
    const GaussianPointer pointer(1.0, 1.0);

    const WeakSetup zero{ini, a, pointer, 0.0};
    CHECK_THROWS_AS(backaction_relation(zero, ini), ZeroCoupling);

    const WeakSetup ok{Ket::basis(2, 0), a, pointer, 1e-2};
    CHECK_THROWS_AS(
        postselect_pointer_mean(evolve_exact(WeakSetup{Ket::basis(2, 0), pauli_z(), pointer, 1e-2}),
                                Ket::basis(2, 1)),
        OrthogonalPostSelection);
    CHECK_THROWS_AS(backaction_relation(ok, Ket::basis(2, 1)), OrthogonalPostSelection);
}

TEST_CASE("anomalous weak value drags the pointer outside the eigenvalue range") {
    const double theta = 3.1415926535897932385 / 4.0 + 0.05;
    const Ket ini = qubit(theta);
    const Ket fin(std::vector<cplx>{cplx(0.70710678118654752440), cplx(-0.70710678118654752440)});
    const double k = 1e-3;
    const WeakSetup setup{ini, pauli_z(), GaussianPointer(1.0, 1.0), k};
    const double exact_mean = postselect_pointer_mean(evolve_exact(setup), fin);
    /* Re weak value is -cot(0.05) ~ -19.98: the conditional mean sits near
     * x0 + k * wv, far below any eigenvalue shift x0 +- k. */
    CHECK(exact_mean < 1.0 - 10.0 * k);
    CHECK(first_order_pointer_mean(setup, fin) ==
          doctest::Approx(1.0 - k / std::tan(0.05)).epsilon(1e-12));
}
