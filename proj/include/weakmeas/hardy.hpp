#pragma once

#include <string>
#include <vector>

#include "weakmeas/povm.hpp"

/* Two-particle interferometer case study on a 4-dimensional space with product
 * basis {|O+ O->, |O+ NO->, |NO+ O->, |NO+ NO->} (first factor: positron path,
 * second: electron path; O = overlapping arm, NO = non-overlapping arm).
 * Pre-selection: the state surviving annihilation,
 *   |Phi> = (|O+ NO-> + |NO+ O-> + |NO+ NO->) / sqrt(3).
 * Post-selection: the dark-port coincidence
 *   |Psi> = (|O+ O-> - |O+ NO-> - |NO+ O-> + |NO+ NO->) / 2.
 * All occupation weak values are then fixed rationals, one of them -1. */

namespace weakmeas {

struct HardyWorkspace {
    Ket phi;  // pre-selected state
    Ket psi;  // post-selected state
    LinOp psi_proj;
    LinOp phi_proj;
    /* Rank-one pair occupations N(p_arm, e_arm), then single-particle arm
     * occupations N+(arm) / N-(arm). */
    std::vector<std::string> names;
    std::vector<LinOp> occupations;       // same order as names (size 8)
    std::vector<LinOp> pair_partition();  // the four rank-one occupations
};

HardyWorkspace hardy_build();

struct HardyWeakValueRow {
    std::string name;
    WeakValueReport report;
    double expected = 0.0;  // exact rational value
};
std::vector<HardyWeakValueRow> hardy_weak_values(const HardyWorkspace& w);

struct HardyNoncommutativity {
    /* psi_proj N psi_proj N == factor * psi_proj N entrywise (N = pair
     * occupation of both non-overlapping arms); same with phi. */
    double psi_sandwich_factor = 0.0;      // exact 1/4
    double phi_sandwich_factor = 0.0;      // exact 1/3
    double psi_sandwich_residual = 0.0;
    double phi_sandwich_residual = 0.0;
    double commutator_expectation = 0.0;   // |<Phi|[psi_proj, N]|Phi>|
    double commutator_max_entry = 0.0;     // entrywise norm of the commutator itself
    /* max-entry norms of [A,B] over the pairs (psi_proj, phi_proj) and
     * (psi_proj or phi_proj, each occupation). */
    std::vector<std::pair<std::string, double>> pairwise;
    double power_limit = 0.0;              // max-entry norm of lim (psi_proj N)^n
};
HardyNoncommutativity hardy_noncommutativity(const HardyWorkspace& w);

struct HardyBackactionRow {
    std::string name;
    double weakvalue_re = 0.0;
    double probability_ratio = 0.0;   // (x0/k)(Pr' - Pr)/Pr, first order
    double pointer_mean = 0.0;        // first-order conditional pointer mean
};
/* Full pipeline per occupation operator: readout back-action on the dark-port
 * probability plus the matching pointer means; the four pair rows sum to the
 * identity shift (ratio 1). */
std::vector<HardyBackactionRow> hardy_backaction_experiment(const HardyWorkspace& w,
                                                            const GaussianPointer& pointer,
                                                            double coupling);

}  // namespace weakmeas
