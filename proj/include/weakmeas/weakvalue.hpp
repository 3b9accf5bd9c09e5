#pragma once

#include <vector>

#include "weakmeas/hilbert.hpp"

/* Weak values <psi_j|A|I> / <psi_j|I> and the algebraic identities that decide
 * whether one may be read as a conditional probability or only as the
 * first-order back-action coefficient of the measurement. */

namespace weakmeas {

enum class WeakValueClass {
    ConditionalProbability,  // projector observable + a commuting structure
    BackActionIndicator,     // everything else
};

const char* to_string(WeakValueClass c);

struct CommutationFlags {
    bool final_with_observable = false;   // [|psi><psi|, A] == 0
    bool initial_with_final = false;      // [|I><I|, |psi><psi|] == 0
    bool initial_with_observable = false; // [|I><I|, A] == 0
};

struct WeakValueReport {
    cplx value;
    double real_part = 0.0;
    double imag_part = 0.0;
    WeakValueClass classification = WeakValueClass::BackActionIndicator;
    CommutationFlags flags;
    /* <I|[final_projector, A]|I>; zero together with a nonzero commutator is
     * the reality criterion for the weak value. */
    cplx expectation_of_commutator;
};

/* Core operation. Throws OrthogonalPostSelection when |<final|I>| is below
 * overlap_floor. States may be unnormalized; the value is scale-invariant. */
WeakValueReport weak_value(const LinOp& observable, const Ket& initial, const Ket& final_state,
                           double commute_tol = tol::algebraic,
                           double overlap_floor = tol::orthogonal_overlap);

struct WeightedWeakValue {
    double probability = 0.0;  // |<psi_j|I>|^2
    WeakValueReport report;
};

/* Expansion of <I|A|I> over a complete orthonormal post-selection basis:
 * sum_j Pr(j) * wv_j == <I|A|I> with the imaginary parts cancelling. */
std::vector<WeightedWeakValue> decompose_expectation(const LinOp& observable, const Ket& initial,
                                                     const std::vector<Ket>& basis,
                                                     double completeness_tol = tol::spectral,
                                                     double overlap_floor = tol::orthogonal_overlap);

struct SquaredWeakValueIdentity {
    double lhs = 0.0;                // |wv|^2
    double rhs_product_form = 0.0;   // Pr(a|psi) Pr(a|I) / Pr(psi|I)
    double rhs_sandwich_form = 0.0;  // <I|A P_psi A|I> / |<psi|I>|^2
};

/* Three-way modulus-squared identity for a rank-one projector observable. */
SquaredWeakValueIdentity squared_weakvalue_identity(const LinOp& projector, const Ket& initial,
                                                    const Ket& final_state,
                                                    double projector_tol = tol::algebraic,
                                                    double overlap_floor = tol::orthogonal_overlap);

/* Weak values of a projector over a post-selection basis it commutes with are
 * exactly 0 or 1. Returns the real parts; throws when the commutation
 * precondition fails. Also verifies sum_j Pr(j)|wv_j|^2 == sum_j Pr(j) wv_j
 * == <I|P|I> within check_tol. */
std::vector<double> zero_or_one_check(const LinOp& projector, const std::vector<Ket>& basis,
                                      const Ket& initial, double commute_tol = tol::algebraic,
                                      double check_tol = tol::spectral);

/* sum_i wv(A_i) over a projective partition of the identity: equals 1 exactly. */
cplx completeness_sum(const std::vector<LinOp>& partition, const Ket& initial,
                      const Ket& final_state, double partition_tol = tol::spectral,
                      double overlap_floor = tol::orthogonal_overlap);

}  // namespace weakmeas
