#pragma once

/* Centralized numeric tolerances. Every predicate that compares against one of
 * these takes the tolerance as an explicit parameter defaulting to an entry
 * here, so a caller can always tighten or relax a single check. */

namespace weakmeas::tol {

inline constexpr double algebraic = 1e-12;           // exact algebraic identities
inline constexpr double spectral = 1e-10;            // eigendecomposition residuals
inline constexpr double degeneracy_merge = 1e-9;     // eigenvalue clustering gap
inline constexpr double orthogonal_overlap = 1e-12;  // post-selection overlap floor
inline constexpr double slope_match = 1e-6;          // finite-difference slope vs analytic
inline constexpr double quadrature = 1e-8;           // numeric integration residuals
inline constexpr double node_amplitude = 1e-12;      // |psi| floor before a node error
inline constexpr double node_radius = 1e-6;          // exclusion radius around a node

}  // namespace weakmeas::tol
