#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "weakmeas/hilbert.hpp"

/* Seeded random instance generation for property suites. Gaussian deviates go
 * through a fixed Box-Muller over the raw mt19937_64 stream so the sequence is
 * identical across standard libraries (std::normal_distribution is not). */

namespace weakmeas {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    double uniform();  // [0, 1)
    double normal();   // standard normal
    cplx cnormal();    // independent N(0,1) real and imaginary parts

private:
    std::mt19937_64 eng_;
};

Ket random_state(Rng& rng, std::size_t dim);
/* Random normalized state redrawn until |<anchor|v>| >= min_overlap. */
Ket random_state_overlapping(Rng& rng, const Ket& anchor, double min_overlap);
LinOp random_hermitian(Rng& rng, std::size_t dim);
LinOp random_rank1_projector(Rng& rng, std::size_t dim);
/* Modified Gram-Schmidt over random vectors. */
std::vector<Ket> random_orthonormal_basis(Rng& rng, std::size_t dim);
/* Rank-one eigenprojector partition of the identity. */
std::vector<LinOp> random_projective_partition(Rng& rng, std::size_t dim);

}  // namespace weakmeas
