#pragma once

#include <cstddef>
#include <vector>

#include "weakmeas/pointer.hpp"

/* Paraxial two-slit field and the trajectory picture painted by weak momentum
 * measurements conditioned on position. Transverse coordinate xi, propagation
 * coordinate z, wavenumber k; each slit emits the amplitude profile
 * exp(-xi^2 / 2 s^2). Free propagation turns the spread complex,
 * s(z) = s (1 + i z / (k s^2)), so the field stays closed-form at every z and
 * the exact normalization is z-independent. */

namespace weakmeas {

struct TwoSlitField {
    double slit_separation = 4.0;  // d, centre to centre
    double slit_width = 1.0;       // s
    double wavenumber = 50.0;      // k
    std::vector<double> z_planes;  // default output planes (increasing, >= 0)

    /* tau = z / (k s^2): dimensionless spreading parameter. */
    double tau(double z) const;
    cplx amplitude(double xi, double z) const;
    cplx dxi_amplitude(double xi, double z) const;
    double intensity(double xi, double z) const;
    /* Fringe period pi s^2 (1 + tau^2) / (h tau) of the cross term. */
    double fringe_period(double z) const;

    double normalization = 0.0;  // filled by twoslit_build
};

TwoSlitField twoslit_build(double slit_separation, double slit_width, double wavenumber,
                           std::vector<double> z_planes);

/* Re of the momentum weak value at (xi, z): Im[d_xi psi / psi]. Throws
 * NodePoint when |psi| is at the node floor. */
double weak_momentum(const TwoSlitField& field, double xi, double z);

/* Tabulated CDF of the normalized intensity at one plane (composite Simpson
 * on a span covering the envelope tails). */
struct IntensityCdf {
    std::vector<double> xs;
    std::vector<double> cum;  // cum.front() == 0, cum.back() == 1
    double value(double x) const;
    double quantile(double u) const;
};
IntensityCdf intensity_cdf(const TwoSlitField& field, double z, std::size_t grid = 16384);

/* Quantile start points xi_i = F^{-1}((i + 1/2) / n) at the first plane. */
std::vector<double> weighted_start_points(const TwoSlitField& field, std::size_t n, double z0);

/* Kolmogorov-Smirnov distance between a sample set and a tabulated CDF. */
double ks_distance(std::vector<double> samples, const IntensityCdf& target);

struct TrajectoryBundle {
    std::vector<double> start_points;
    std::vector<double> planes;
    /* paths[i][j]: position of trajectory i at planes[j]; entries after a node
     * termination are not meaningful and are flagged below. */
    std::vector<std::vector<double>> paths;
    std::vector<int> terminated_at;  // plane index of a NodePoint stop, or -1
    /* Smallest ordering gap between neighbouring alive trajectories across all
     * planes; >= 0 up to integrator error means no crossing. */
    double min_ordering_gap = 0.0;
};

/* Integrates d(xi)/dz = weak_momentum / k with adaptive embedded RK (Dormand-
 * Prince 5(4)) through the given planes. */
TrajectoryBundle reconstruct_trajectories(const TwoSlitField& field,
                                          const std::vector<double>& starts,
                                          const std::vector<double>& z_planes);

/* Positions of intensity maxima around the axis at one plane (count maxima on
 * each side), refined by parabolic interpolation. */
std::vector<double> fringe_maxima(const TwoSlitField& field, double z, int per_side);

struct PointerCheckRow {
    double xi = 0.0;
    double analytic = 0.0;    // Im[psi'/psi]
    double grid_ratio = 0.0;  // (x0/k)(|<xi|Phi>|^2 - |<xi|I>|^2)/|<xi|I>|^2
    bool rejected = false;    // inside the node exclusion neighbourhood
};

struct PointerCheckResult {
    std::vector<PointerCheckRow> rows;
    double max_rel_err = 0.0;       // worst |grid - analytic| / max(1, |analytic|)
    double refinement_delta = 0.0;  // worst ratio change when the grid doubles
    std::size_t grid_points = 0;    // finer grid size
};

/* Grid surrogate of the position-conditioned momentum readout: the field is
 * sampled onto a uniform grid, the momentum operator is the Hermitian central
 * difference, and the first-order readout shift is compared against the
 * analytic weak momentum at each sample. */
PointerCheckResult twoslit_pointer_check(const TwoSlitField& field,
                                         const GaussianPointer& pointer, double coupling,
                                         double z, const std::vector<double>& xi_samples,
                                         std::size_t grid_points = 768);

struct InterferencePersistence {
    double max_first_order_change = 0.0;   // max |I_k - I_0|, order coupling
    double extrapolation_residual = 0.0;   // max |2 I_{k/2} - I_k - I_0|
};

/* The momentum readout perturbs the interference pattern only at O(coupling):
 * linear extrapolation of the readout intensity back to zero coupling
 * recovers the unperturbed pattern. */
InterferencePersistence interference_persistence(const TwoSlitField& field,
                                                 const GaussianPointer& pointer,
                                                 double coupling, double z,
                                                 std::size_t grid_points = 768);

}  // namespace weakmeas
