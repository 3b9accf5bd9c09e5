#include "weakmeas/random.hpp"

#include <cmath>

namespace weakmeas {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

double Rng::uniform() {
    /* 53-bit mantissa from the top of the 64-bit word. */
    return double(eng_() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
}

cplx Rng::cnormal() {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    return {r * std::cos(kTwoPi * u2), r * std::sin(kTwoPi * u2)};
}

Ket random_state(Rng& rng, std::size_t dim) {
    std::vector<cplx> a(dim);
    for (auto& z : a) z = rng.cnormal();
    return Ket(std::move(a)).normalized();
}

Ket random_state_overlapping(Rng& rng, const Ket& anchor, double min_overlap) {
    for (int tries = 0; tries < 1000; ++tries) {
        Ket v = random_state(rng, anchor.dim());
        if (std::abs(inner(anchor, v)) >= min_overlap) return v;
    }
    throw InvalidOperator("could not draw a state with the requested overlap");
}

LinOp random_hermitian(Rng& rng, std::size_t dim) {
    LinOp b(dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) b.at(i, j) = rng.cnormal();
    LinOp h = b;
    h += b.adjoint();
    h *= cplx(0.5);
    return h;
}

LinOp random_rank1_projector(Rng& rng, std::size_t dim) {
    return LinOp::projector(random_state(rng, dim));
}

std::vector<Ket> random_orthonormal_basis(Rng& rng, std::size_t dim) {
    std::vector<Ket> basis;
    basis.reserve(dim);
    while (basis.size() < dim) {
        Ket v = random_state(rng, dim);
        /* Two MGS passes keep orthogonality at machine precision. */
        for (int pass = 0; pass < 2; ++pass)
            for (const Ket& b : basis) v -= inner(b, v) * b;
        if (v.norm() < 1e-6) continue;  // nearly dependent draw, retry
        basis.push_back(v.normalized());
    }
    return basis;
}

std::vector<LinOp> random_projective_partition(Rng& rng, std::size_t dim) {
    std::vector<LinOp> parts;
    parts.reserve(dim);
    for (const Ket& b : random_orthonormal_basis(rng, dim))
        parts.push_back(LinOp::projector(b));
    return parts;
}

}  // namespace weakmeas
