#pragma once

#include <vector>

#include "weakmeas/pointer.hpp"

/* Generalized-measurement layer: binned Gaussian-pointer POVMs, sequential
 * outcome statistics, and the decomposition of a conditional expectation into
 * a zeroth-order term plus a weak-value slope. */

namespace weakmeas {

struct PovmSet {
    std::vector<LinOp> kraus_ops;   // M_m (Hermitian PSD here)
    std::vector<LinOp> effects;     // E_m = M_m^dagger M_m
    std::vector<double> labels;     // outcome values alpha_m
    /* max-entry distance between sum_m alpha_m E_m and the target observable;
     * exact label calibration is impossible for Gaussian bins, so the
     * first-order residual is tracked instead of hidden. */
    double calibration_residual = 0.0;
};

/* Closure sum_m E_m == 1 within tol and every effect PSD within psd_tol. */
void validate_povm(const PovmSet& povm, double closure_tol = tol::spectral,
                   double psd_tol = tol::spectral);

/* Mass of N(mu, sigma^2) inside bin m of (-inf, e0], (e0, e1], ..., (elast, inf). */
double bin_mass(const std::vector<double>& edges, std::size_t m, double mu, double sigma);
/* d/d(mu) of the bin mass: pdf(left edge) - pdf(right edge). */
double bin_mass_slope(const std::vector<double>& edges, std::size_t m, double mu, double sigma);

/* Pointer measurement of `observable` at `coupling`, read out by binning the
 * pointer position into cells (-inf, e_0], (e_0, e_1], ..., (e_last, +inf).
 * Kraus ops are M_m = sum_i sqrt(w_m(a_i)) P_i with w_m the Gaussian mass of
 * bin m for the branch centred at x0 + coupling a_i. Labels follow the
 * first-order calibration sum_m alpha_m E_m == observable + O(coupling^2). */
PovmSet gaussian_binned_povm(const LinOp& observable, const GaussianPointer& pointer,
                             double coupling, const std::vector<double>& interior_edges);

/* Same construction as a family over the coupling g with labels frozen per
 * unit coupling (alpha_m independent of g), so d/dg is well-defined. */
struct GaussianPovmFamily {
    LinOp observable;
    GaussianPointer pointer;
    std::vector<double> interior_edges;
    std::vector<double> unit_labels;  // alpha_m such that sum alpha_m E_m(g) = g*A + O(g^2)

    static GaussianPovmFamily make(const LinOp& observable, const GaussianPointer& pointer,
                                   const std::vector<double>& interior_edges);
    PovmSet at(double g) const;
};

/* Pr(n, m) = <I| M_m^dagger P_n M_m |I> for a POVM followed by a projective
 * measurement; rows n, columns m. Entries nonnegative, total sums to 1. */
std::vector<std::vector<double>> sequential_probability(const Ket& initial, const PovmSet& povm,
                                                        const std::vector<LinOp>& final_projectors,
                                                        double projective_tol = tol::spectral);

/* sum_m alpha_m Pr(n,m) / sum_m Pr(n,m); throws NeverPostSelected when the
 * conditioning outcome has numerically zero probability. */
double conditional_expectation(const Ket& initial, const PovmSet& povm,
                               const std::vector<LinOp>& final_projectors, std::size_t n,
                               double probability_floor = tol::orthogonal_overlap);

/* First-order structure E_m(g) = p_m 1 + g Eprime_m + O(g^2). p_m comes from
 * the g = 0 member; Eprime_m from Richardson central differences at step h. */
struct WeakPovmExpansion {
    std::vector<double> p;        // zeroth-order outcome probabilities, sum to 1
    std::vector<LinOp> eprime;    // first-order effects, sum to 0
    double g = 0.0;               // step used for the differencing
};
WeakPovmExpansion weak_expansion(const GaussianPovmFamily& family, double h);

struct BackactionDecomposition {
    double zeroth = 0.0;        // conditional expectation at g = 0
    double first_slope = 0.0;   // d/dg of the conditional expectation at 0
    double weakvalue_re = 0.0;  // Re weak value of A' = sum_m alpha_m Eprime_m
};

/* Decomposes the weak-limit conditional expectation: the measured slope equals
 * the real part of the weak value of the first-order observable. */
BackactionDecomposition backaction_decomposition(const Ket& initial,
                                                 const GaussianPovmFamily& family,
                                                 const std::vector<LinOp>& final_projectors,
                                                 std::size_t n, double h = 1e-2);

/* <I|A Psi A|I> - <I|Psi|I>: the probability disturbance of a strong (projective)
 * measurement of A before post-selecting on the projector Psi. */
double strong_backaction(const LinOp& observable, const Ket& initial,
                         const LinOp& final_projector);

/* A recorded instance where the first-order-corrected outcome ratio
 * Pr(n,m)/sum_m Pr(n,m) turns negative while every exact probability stays
 * nonnegative: the ratio cannot be a conditional probability. */
struct NegativityInstance {
    double pre_angle = 0.0;       // initial-state angle on the qubit Bloch great circle
    double coupling = 0.0;
    double weakvalue_re = 0.0;    // anomalous weak value driving the effect
    double ratio_zeroth = 0.0;    // ratio at g = 0 (= bin probability p_m)
    double ratio_slope = 0.0;     // d/dg of the exact ratio at 0
    double corrected = 0.0;       // ratio_zeroth + coupling * ratio_slope
    double min_probability = 0.0; // smallest exact Pr(n,m) at the working coupling
};
NegativityInstance demonstrate_ratio_negativity();

}  // namespace weakmeas
