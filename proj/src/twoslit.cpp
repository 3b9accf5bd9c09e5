#include "weakmeas/twoslit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "weakmeas/errors.hpp"
#include "weakmeas/tolerances.hpp"

namespace weakmeas {

namespace {

constexpr double kPi = 3.1415926535897932385;
constexpr double kSqrtPi = 1.7724538509055160273;

/* Complex inverse spread factor: a = 1 / (2 s^2 (1 + i tau)). */
cplx inv_spread_sq(const TwoSlitField& f, double z) {
    const double t = f.tau(z);
    return 1.0 / (2.0 * f.slit_width * f.slit_width * cplx{1.0, t});
}

/* Per-slit intensities |E_-|^2 and |E_+|^2 including the common prefactor. */
void slit_intensities(const TwoSlitField& f, double xi, double z, double& lower, double& upper) {
    const double t = f.tau(z);
    const double w2 = f.slit_width * f.slit_width * (1.0 + t * t);
    const double h = 0.5 * f.slit_separation;
    const double pref = f.normalization * f.normalization / std::sqrt(1.0 + t * t);
    lower = pref * std::exp(-(xi - h) * (xi - h) / w2);
    upper = pref * std::exp(-(xi + h) * (xi + h) / w2);
}

}  // namespace

double TwoSlitField::tau(double z) const {
    return z / (wavenumber * slit_width * slit_width);
}

cplx TwoSlitField::amplitude(double xi, double z) const {
    const double t = tau(z);
    const cplx a = 1.0 / (2.0 * slit_width * slit_width * cplx{1.0, t});
    const double h = 0.5 * slit_separation;
    const cplx pref = normalization / std::sqrt(cplx{1.0, t});
    return pref * (std::exp(-(xi - h) * (xi - h) * a) + std::exp(-(xi + h) * (xi + h) * a));
}

cplx TwoSlitField::dxi_amplitude(double xi, double z) const {
    const double t = tau(z);
    const cplx a = 1.0 / (2.0 * slit_width * slit_width * cplx{1.0, t});
    const double h = 0.5 * slit_separation;
    const cplx pref = normalization / std::sqrt(cplx{1.0, t});
    const cplx em = std::exp(-(xi - h) * (xi - h) * a);
    const cplx ep = std::exp(-(xi + h) * (xi + h) * a);
    return pref * (-2.0 * a) * ((xi - h) * em + (xi + h) * ep);
}

double TwoSlitField::intensity(double xi, double z) const {
    const cplx psi = amplitude(xi, z);
    return std::norm(psi);
}

double TwoSlitField::fringe_period(double z) const {
    const double t = tau(z);
    if (t <= 0.0) throw std::invalid_argument("fringe period is defined for z > 0");
    const double h = 0.5 * slit_separation;
    return kPi * slit_width * slit_width * (1.0 + t * t) / (h * t);
}

TwoSlitField twoslit_build(double slit_separation, double slit_width, double wavenumber,
                           std::vector<double> z_planes) {
    if (!(slit_separation > 0.0) || !(slit_width > 0.0) || !(wavenumber > 0.0))
        throw std::invalid_argument("two-slit geometry parameters must be positive");
    if (z_planes.empty()) throw std::invalid_argument("at least one output plane is required");
    for (std::size_t i = 0; i < z_planes.size(); ++i) {
        if (z_planes[i] < 0.0) throw std::invalid_argument("output planes must have z >= 0");
        if (i > 0 && !(z_planes[i] > z_planes[i - 1]))
            throw std::invalid_argument("output planes must be strictly increasing");
    }
    TwoSlitField f;
    f.slit_separation = slit_separation;
    f.slit_width = slit_width;
    f.wavenumber = wavenumber;
    f.z_planes = std::move(z_planes);
    const double h = 0.5 * slit_separation;
    const double overlap = std::exp(-h * h / (slit_width * slit_width));
    f.normalization = 1.0 / std::sqrt(2.0 * slit_width * kSqrtPi * (1.0 + overlap));
    return f;
}

double weak_momentum(const TwoSlitField& field, double xi, double z) {
    const cplx psi = field.amplitude(xi, z);
    if (std::abs(psi) <= tol::node_amplitude)
        throw NodePoint("conditioning point lies at a node of the field");
    const cplx dpsi = field.dxi_amplitude(xi, z);
    return std::imag(dpsi / psi);
}

double IntensityCdf::value(double x) const {
    if (x <= xs.front()) return 0.0;
    if (x >= xs.back()) return 1.0;
    const auto it = std::upper_bound(xs.begin(), xs.end(), x);
    const std::size_t j = static_cast<std::size_t>(it - xs.begin());
    const double frac = (x - xs[j - 1]) / (xs[j] - xs[j - 1]);
    return cum[j - 1] + frac * (cum[j] - cum[j - 1]);
}

double IntensityCdf::quantile(double u) const {
    if (!(u > 0.0) || !(u < 1.0)) throw std::invalid_argument("quantile argument must be in (0, 1)");
    const auto it = std::lower_bound(cum.begin(), cum.end(), u);
    std::size_t j = static_cast<std::size_t>(it - cum.begin());
    if (j == 0) j = 1;
    if (j >= cum.size()) j = cum.size() - 1;
    const double dc = cum[j] - cum[j - 1];
    const double frac = dc > 0.0 ? (u - cum[j - 1]) / dc : 0.5;
    return xs[j - 1] + frac * (xs[j] - xs[j - 1]);
}

IntensityCdf intensity_cdf(const TwoSlitField& field, double z, std::size_t grid) {
    if (grid < 16) throw std::invalid_argument("CDF grid is too coarse");
    if (grid % 2 != 0) ++grid;  // even interval count for Simpson pairs
    const double t = field.tau(z);
    const double envelope = field.slit_width * std::sqrt(0.5 * (1.0 + t * t));
    const double span = 0.5 * field.slit_separation + 8.0 * envelope;
    const double dx = 2.0 * span / static_cast<double>(grid);

    IntensityCdf cdf;
    cdf.xs.resize(grid + 1);
    cdf.cum.assign(grid + 1, 0.0);
    std::vector<double> f(grid + 1);
    for (std::size_t j = 0; j <= grid; ++j) {
        cdf.xs[j] = -span + static_cast<double>(j) * dx;
        f[j] = field.intensity(cdf.xs[j], z);
    }
    /* Cumulative Simpson over interval pairs; odd nodes by the 5-8-(-1) rule. */
    for (std::size_t j = 0; j + 2 <= grid; j += 2) {
        cdf.cum[j + 1] = cdf.cum[j] + dx / 12.0 * (5.0 * f[j] + 8.0 * f[j + 1] - f[j + 2]);
        cdf.cum[j + 2] = cdf.cum[j] + dx / 3.0 * (f[j] + 4.0 * f[j + 1] + f[j + 2]);
    }
    const double total = cdf.cum.back();
    if (!(total > 0.0)) throw std::invalid_argument("intensity integrates to zero on the CDF span");
    double prev = 0.0;
    for (auto& c : cdf.cum) {
        c /= total;
        c = std::max(c, prev);  // guard monotonicity against roundoff
        prev = c;
    }
    cdf.cum.back() = 1.0;
    return cdf;
}

std::vector<double> weighted_start_points(const TwoSlitField& field, std::size_t n, double z0) {
    if (n == 0) throw std::invalid_argument("at least one start point is required");
    const IntensityCdf cdf = intensity_cdf(field, z0);
    std::vector<double> starts(n);
    for (std::size_t i = 0; i < n; ++i)
        starts[i] = cdf.quantile((static_cast<double>(i) + 0.5) / static_cast<double>(n));
    return starts;
}

double ks_distance(std::vector<double> samples, const IntensityCdf& target) {
    if (samples.empty()) throw std::invalid_argument("KS distance needs at least one sample");
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double fx = target.value(samples[i]);
        d = std::max(d, fx - static_cast<double>(i) / n);
        d = std::max(d, static_cast<double>(i + 1) / n - fx);
    }
    return d;
}

namespace {

/* One adaptive Dormand-Prince 5(4) segment for d(xi)/dz = v(xi, z). */
double dp5_segment(const TwoSlitField& field, double xi, double za, double zb) {
    const auto v = [&field](double z, double x) {
        return weak_momentum(field, x, z) / field.wavenumber;
    };
    constexpr double a21 = 1.0 / 5.0;
    constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
    constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
    constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0,
                     a54 = -212.0 / 729.0;
    constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                     a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
    constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0,
                     b5 = -2187.0 / 6784.0, b6 = 11.0 / 84.0;
    constexpr double e1 = 5179.0 / 57600.0, e3 = 7571.0 / 16695.0, e4 = 393.0 / 640.0,
                     e5 = -92097.0 / 339200.0, e6 = 187.0 / 2100.0, e7 = 1.0 / 40.0;
    constexpr double atol = 1e-10, rtol = 1e-9;

    double z = za;
    double h = (zb - za) / 8.0;
    int steps = 0;
    while (z < zb) {
        if (++steps > 200000) throw std::runtime_error("trajectory integrator exceeded its step budget");
        h = std::min(h, zb - z);
        const double k1 = v(z, xi);
        const double k2 = v(z + h / 5.0, xi + h * a21 * k1);
        const double k3 = v(z + 3.0 * h / 10.0, xi + h * (a31 * k1 + a32 * k2));
        const double k4 = v(z + 4.0 * h / 5.0, xi + h * (a41 * k1 + a42 * k2 + a43 * k3));
        const double k5 = v(z + 8.0 * h / 9.0, xi + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
        const double k6 = v(z + h, xi + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
        const double x5 = xi + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        const double k7 = v(z + h, x5);
        const double x4 = xi + h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
        const double scale = atol + rtol * std::max(std::abs(xi), std::abs(x5));
        const double err = std::abs(x5 - x4) / scale;
        if (err <= 1.0) {
            z += h;
            xi = x5;
        }
        const double grow = err > 0.0 ? 0.9 * std::pow(err, -0.2) : 5.0;
        h *= std::clamp(grow, 0.2, 5.0);
    }
    return xi;
}

}  // namespace

TrajectoryBundle reconstruct_trajectories(const TwoSlitField& field,
                                          const std::vector<double>& starts,
                                          const std::vector<double>& z_planes) {
    if (starts.empty()) throw std::invalid_argument("no trajectory start points given");
    if (z_planes.size() < 2) throw std::invalid_argument("at least two planes are required");
    for (std::size_t j = 1; j < z_planes.size(); ++j)
        if (!(z_planes[j] > z_planes[j - 1]))
            throw std::invalid_argument("trajectory planes must be strictly increasing");

    TrajectoryBundle bundle;
    bundle.start_points = starts;
    bundle.planes = z_planes;
    bundle.paths.assign(starts.size(), std::vector<double>(z_planes.size(), 0.0));
    bundle.terminated_at.assign(starts.size(), -1);

    for (std::size_t i = 0; i < starts.size(); ++i) {
        double xi = starts[i];
        bundle.paths[i][0] = xi;
        for (std::size_t j = 1; j < z_planes.size(); ++j) {
            if (bundle.terminated_at[i] >= 0) {
                bundle.paths[i][j] = xi;  // frozen at the last valid position
                continue;
            }
            try {
                xi = dp5_segment(field, xi, z_planes[j - 1], z_planes[j]);
                bundle.paths[i][j] = xi;
            } catch (const NodePoint&) {
                bundle.terminated_at[i] = static_cast<int>(j);
                bundle.paths[i][j] = xi;
            }
        }
    }

    double min_gap = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < z_planes.size(); ++j) {
        bool have_prev = false;
        double prev = 0.0;
        for (std::size_t i = 0; i < starts.size(); ++i) {
            const int cut = bundle.terminated_at[i];
            if (cut >= 0 && static_cast<int>(j) >= cut) continue;
            if (have_prev) min_gap = std::min(min_gap, bundle.paths[i][j] - prev);
            prev = bundle.paths[i][j];
            have_prev = true;
        }
    }
    bundle.min_ordering_gap = std::isfinite(min_gap) ? min_gap : 0.0;
    return bundle;
}

std::vector<double> fringe_maxima(const TwoSlitField& field, double z, int per_side) {
    if (per_side < 1) throw std::invalid_argument("at least one fringe per side is required");
    const double period = field.fringe_period(z);
    const double span = (static_cast<double>(per_side) + 0.6) * period;
    const int samples_per_period = 64;
    const double step = period / samples_per_period;
    const int npts = static_cast<int>(std::ceil(2.0 * span / step)) + 1;

    /* Envelope-free interferogram: (I - I_- - I_+) / (2 sqrt(I_- I_+)) lies in
     * [-1, 1] and peaks exactly where the cross-term phase is a multiple of
     * 2 pi, so the extracted spacing is not pulled by the envelope slope. */
    const auto correlate = [&](double xi) {
        double lower = 0.0, upper = 0.0;
        slit_intensities(field, xi, z, lower, upper);
        const double geom = 2.0 * std::sqrt(lower * upper);
        if (!(geom > 1e-280)) return -2.0;  // tail underflow, never a maximum
        return (field.intensity(xi, z) - lower - upper) / geom;
    };

    std::vector<double> c(static_cast<std::size_t>(npts));
    for (int j = 0; j < npts; ++j) c[static_cast<std::size_t>(j)] = correlate(-span + j * step);

    std::vector<double> maxima;
    for (int j = 1; j + 1 < npts; ++j) {
        const double c0 = c[static_cast<std::size_t>(j - 1)];
        const double c1 = c[static_cast<std::size_t>(j)];
        const double c2 = c[static_cast<std::size_t>(j + 1)];
        if (!(c1 >= c0 && c1 >= c2 && c1 > 0.5)) continue;
        const double denom = c0 - 2.0 * c1 + c2;
        const double offset = denom < 0.0 ? 0.5 * (c0 - c2) / denom : 0.0;
        const double xi = -span + (static_cast<double>(j) + offset) * step;
        if (!maxima.empty() && xi - maxima.back() < 0.5 * period) continue;
        maxima.push_back(xi);
    }
    return maxima;
}

namespace {

struct GridField {
    std::vector<double> xs;
    Ket psi;
    double dx = 0.0;
};

GridField sample_grid(const TwoSlitField& field, double z, std::size_t n) {
    const double t = field.tau(z);
    const double envelope = field.slit_width * std::sqrt(0.5 * (1.0 + t * t));
    const double span = 0.5 * field.slit_separation + 7.0 * envelope;
    GridField g;
    g.dx = 2.0 * span / static_cast<double>(n - 1);
    g.xs.resize(n);
    std::vector<cplx> amp(n);
    for (std::size_t j = 0; j < n; ++j) {
        g.xs[j] = -span + static_cast<double>(j) * g.dx;
        amp[j] = field.amplitude(g.xs[j], z);
    }
    g.psi = Ket(std::move(amp)).normalized();
    return g;
}

/* Hermitian central-difference momentum on a uniform grid: -i d/dxi. */
LinOp grid_momentum(std::size_t n, double dx) {
    LinOp p(n);
    const cplx off = cplx{0.0, -1.0} / (2.0 * dx);
    for (std::size_t j = 0; j + 1 < n; ++j) {
        p.at(j, j + 1) = off;
        p.at(j + 1, j) = std::conj(off);
    }
    return p;
}

std::size_t nearest_index(const std::vector<double>& xs, double x) {
    const auto it = std::lower_bound(xs.begin(), xs.end(), x);
    std::size_t j = static_cast<std::size_t>(it - xs.begin());
    if (j == 0) return 1;  // keep central differences interior
    if (j >= xs.size() - 1) return xs.size() - 2;
    return (x - xs[j - 1] < xs[j] - x) ? std::max<std::size_t>(j - 1, 1) : j;
}

std::vector<PointerCheckRow> pointer_rows(const TwoSlitField& field, const GaussianPointer& pointer,
                                          double coupling, double z,
                                          const std::vector<double>& xi_samples, std::size_t n) {
    const GridField g = sample_grid(field, z, n);
    const LinOp p = grid_momentum(n, g.dx);
    const WeakSetup setup{g.psi, p, pointer, coupling};
    const Ket shifted = state_after_readout(setup);

    std::vector<PointerCheckRow> rows;
    rows.reserve(xi_samples.size());
    for (const double xi : xi_samples) {
        const std::size_t j = nearest_index(g.xs, xi);
        PointerCheckRow row;
        row.xi = g.xs[j];
        const double base = std::abs(field.amplitude(row.xi, z));
        const double lo = std::abs(field.amplitude(row.xi - tol::node_radius, z));
        const double hi = std::abs(field.amplitude(row.xi + tol::node_radius, z));
        if (std::min({base, lo, hi}) <= tol::node_amplitude) {
            row.rejected = true;
            rows.push_back(row);
            continue;
        }
        row.analytic = weak_momentum(field, row.xi, z);
        const double before = std::norm(g.psi[j]);
        const double after = std::norm(shifted[j]);
        row.grid_ratio = pointer.x0 / coupling * (after - before) / before;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace

PointerCheckResult twoslit_pointer_check(const TwoSlitField& field, const GaussianPointer& pointer,
                                         double coupling, double z,
                                         const std::vector<double>& xi_samples,
                                         std::size_t grid_points) {
    if (grid_points < 64) throw std::invalid_argument("pointer-check grid is too coarse");
    if (!(coupling > 0.0)) throw ZeroCoupling("pointer check requires a positive coupling");
    if (xi_samples.empty()) throw std::invalid_argument("no conditioning points given");

    const std::vector<PointerCheckRow> coarse =
        pointer_rows(field, pointer, coupling, z, xi_samples, grid_points);
    /* The doubled grid shares every coarse point, so the fine pass is held at
     * the coarse row positions: refinement moves the stencil, never the
     * conditioning point. */
    std::vector<double> held(coarse.size());
    for (std::size_t i = 0; i < coarse.size(); ++i) held[i] = coarse[i].xi;
    std::vector<PointerCheckRow> fine =
        pointer_rows(field, pointer, coupling, z, held, 2 * grid_points - 1);

    PointerCheckResult res;
    res.grid_points = 2 * grid_points - 1;
    for (std::size_t i = 0; i < fine.size(); ++i) {
        if (fine[i].rejected || coarse[i].rejected) {
            fine[i].rejected = true;
            continue;
        }
        const double scale = std::max(1.0, std::abs(fine[i].analytic));
        res.max_rel_err =
            std::max(res.max_rel_err, std::abs(fine[i].grid_ratio - fine[i].analytic) / scale);
        res.refinement_delta =
            std::max(res.refinement_delta, std::abs(fine[i].grid_ratio - coarse[i].grid_ratio) / scale);
    }
    res.rows = std::move(fine);
    return res;
}

InterferencePersistence interference_persistence(const TwoSlitField& field,
                                                 const GaussianPointer& pointer, double coupling,
                                                 double z, std::size_t grid_points) {
    if (!(coupling > 0.0)) throw ZeroCoupling("persistence check requires a positive coupling");
    const GridField g = sample_grid(field, z, grid_points);
    const LinOp p = grid_momentum(grid_points, g.dx);

    const auto pattern = [&](double k) {
        Ket state = g.psi;
        if (k > 0.0) state = state_after_readout(WeakSetup{g.psi, p, pointer, k});
        std::vector<double> out(grid_points);
        double total = 0.0;
        for (std::size_t j = 0; j < grid_points; ++j) {
            out[j] = std::norm(state[j]);
            total += out[j];
        }
        for (auto& v : out) v /= total;
        return out;
    };

    const std::vector<double> base = pattern(0.0);
    const std::vector<double> full = pattern(coupling);
    const std::vector<double> half = pattern(0.5 * coupling);

    InterferencePersistence res;
    for (std::size_t j = 0; j < grid_points; ++j) {
        res.max_first_order_change = std::max(res.max_first_order_change, std::abs(full[j] - base[j]));
        res.extrapolation_residual =
            std::max(res.extrapolation_residual, std::abs(2.0 * half[j] - full[j] - base[j]));
    }
    return res;
}

}  // namespace weakmeas
