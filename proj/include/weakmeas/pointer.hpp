#pragma once

#include <vector>

#include "weakmeas/hilbert.hpp"
#include "weakmeas/weakvalue.hpp"

/* Gaussian-meter measurement model. The meter starts in a real Gaussian wave
 * packet centred at x0 != 0 with position spread sigma; the interaction
 * translates each eigenbranch of the observable rigidly by coupling *
 * eigenvalue, so exact evolution needs no discretization: every statistic is a
 * closed-form double sum over branch pairs. */

namespace weakmeas {

struct GaussianPointer {
    double x0 = 1.0;
    double sigma = 1.0;
    GaussianPointer(double x0_, double sigma_);
};

/* <phi_a|phi_b> for unit-norm Gaussians centred at a and b. */
double gaussian_overlap(double a, double b, double sigma);
/* <phi_a|x|phi_b>. */
double gaussian_x_overlap(double a, double b, double sigma);

struct WeakSetup {
    Ket system_initial;   // normalized
    LinOp observable;     // Hermitian
    GaussianPointer pointer;
    double coupling = 0.0;  // merged g*t, >= 0
};

struct JointState {
    struct Branch {
        double eigenvalue = 0.0;
        Ket component;          // unnormalized; norm^2 = branch probability
        double pointer_centre = 0.0;
    };
    std::vector<Branch> branches;
    GaussianPointer pointer;
    double coupling = 0.0;
};

/* Exact entangled state after the impulsive interaction. */
JointState evolve_exact(const WeakSetup& setup);

/* Post-selection probability sum_ij conj(w_i) w_j <phi_i|phi_j>. */
double postselection_probability(const JointState& state, const Ket& final_state);

/* Exact conditional pointer mean <x> after post-selection. */
double postselect_pointer_mean(const JointState& state, const Ket& final_state,
                               double probability_floor = tol::orthogonal_overlap);

/* x0 + coupling * Re(weak value). */
double first_order_pointer_mean(const WeakSetup& setup, const Ket& final_state);

/* System state after the pointer position readout, first order in coupling:
 * |I> + (coupling / 2 x0) A |I>  (unnormalized). */
Ket state_after_readout(const WeakSetup& setup);

/* Same readout without the first-order truncation:
 * sum_i (1 + coupling a_i / 2 x0) exp(-coupling^2 a_i^2 / 8 sigma^2) P_i |I>. */
Ket state_after_readout_exact(const WeakSetup& setup);

struct BackactionRelation {
    double lhs_weakvalue_re = 0.0;      // Re <A>_w
    double rhs_probability_ratio = 0.0; // (x0/k)(Pr' - Pr)/Pr at first order
    double ratio_identity_lhs = 0.0;    // pointer-mean / x0
    double ratio_identity_rhs = 0.0;    // Pr' / Pr
};

/* First-order back-action relation; throws ZeroCoupling when coupling <= 0. */
BackactionRelation backaction_relation(const WeakSetup& setup, const Ket& final_state);

/* Reading out one pointer per member of a projective partition shifts the
 * post-selection probability exactly as the identity observable:
 * returns (x0/k)(Pr' - Pr)/Pr == 1. */
double completeness_backaction(const std::vector<LinOp>& partition, const Ket& initial,
                               const Ket& final_state, const GaussianPointer& pointer,
                               double coupling, double partition_tol = tol::spectral);

}  // namespace weakmeas
