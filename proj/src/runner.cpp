#include "weakmeas/runner.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <stdexcept>

#include "weakmeas/hardy.hpp"
#include "weakmeas/povm.hpp"
#include "weakmeas/random.hpp"
#include "weakmeas/twoslit.hpp"
#include "weakmeas/weakvalue.hpp"

namespace weakmeas {

Scenario parse_scenario(const std::string& name) {
    if (name == "hardy") return Scenario::hardy;
    if (name == "twoslit") return Scenario::twoslit;
    if (name == "identities") return Scenario::identities;
    if (name == "povm") return Scenario::povm;
    if (name == "sweep") return Scenario::sweep;
    throw std::invalid_argument("unknown scenario: " + name);
}

const char* to_string(Scenario s) {
    switch (s) {
        case Scenario::hardy: return "hardy";
        case Scenario::twoslit: return "twoslit";
        case Scenario::identities: return "identities";
        case Scenario::povm: return "povm";
        case Scenario::sweep: return "sweep";
    }
    return "?";
}

bool RunReport::all_pass() const {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

namespace {

void validate_config(const RunConfig& c) {
    if (!(c.sigma > 0.0)) throw std::invalid_argument("--sigma must be positive");
    if (c.x0 == 0.0) throw std::invalid_argument("--x0 must be nonzero");
    if (!(c.kappa > 0.0)) throw std::invalid_argument("--kappa must be positive");
    if (c.dim < 2) throw std::invalid_argument("--dim must be at least 2");
    if (c.trials < 1) throw std::invalid_argument("--trials must be at least 1");
    if (c.planes < 2) throw std::invalid_argument("--planes must be at least 2");
    if (c.starts < 1) throw std::invalid_argument("--starts must be at least 1");
    if (c.bins < 2) throw std::invalid_argument("--bins must be at least 2");
}

io::Meta base_meta(const RunConfig& c) {
    io::Meta m;
    m.add("scenario", to_string(c.scenario));
    m.add("x0", c.x0);
    m.add("sigma", c.sigma);
    m.add("kappa", c.kappa);
    m.add("dim", std::to_string(c.dim));
    m.add("trials", std::to_string(c.trials));
    m.add("seed", std::to_string(c.seed));
    m.add("planes", std::to_string(c.planes));
    m.add("starts", std::to_string(c.starts));
    m.add("bins", std::to_string(c.bins));
    return m;
}

CheckResult within(std::string name, double value, double threshold) {
    const bool pass = std::abs(value) <= threshold;
    return {std::move(name), value, threshold, pass};
}

CheckResult at_least(std::string name, double value, double threshold) {
    return {std::move(name), value, threshold, value >= threshold};
}

/* Interior bin edges around the pointer centre, evenly spaced across
 * [x0 - 1.5 sigma, x0 + 1.5 sigma]. */
std::vector<double> default_edges(const GaussianPointer& pointer, std::size_t bins) {
    std::vector<double> edges(bins - 1);
    if (bins == 2) {
        edges[0] = pointer.x0;
        return edges;
    }
    for (std::size_t m = 0; m < bins - 1; ++m)
        edges[m] = pointer.x0 +
                   pointer.sigma * (-1.5 + 3.0 * static_cast<double>(m) /
                                               static_cast<double>(bins - 2));
    return edges;
}

RunReport hardy_scenario(const RunConfig& c) {
    HardyWorkspace w = hardy_build();
    const GaussianPointer pointer(c.x0, c.sigma);
    const auto wvs = hardy_weak_values(w);
    const auto nc = hardy_noncommutativity(w);
    const auto back = hardy_backaction_experiment(w, pointer, c.kappa);

    RunReport rep;
    rep.table.columns = {"operator",       "weakvalue_re", "weakvalue_im",      "expected",
                         "classification", "backaction_ratio", "pointer_mean"};
    double max_value_err = 0.0, max_back_err = 0.0;
    double pair_sum_re = 0.0, pair_sum_im = 0.0, pair_ratio_sum = 0.0;
    for (std::size_t i = 0; i < wvs.size(); ++i) {
        const auto& r = wvs[i];
        max_value_err = std::max({max_value_err, std::abs(r.report.real_part - r.expected),
                                  std::abs(r.report.imag_part)});
        max_back_err =
            std::max(max_back_err, std::abs(back[i].weakvalue_re - back[i].probability_ratio));
        if (i < 4) {
            pair_sum_re += r.report.real_part;
            pair_sum_im += r.report.imag_part;
            pair_ratio_sum += back[i].probability_ratio;
        }
        rep.table.add_row({r.name, r.report.real_part, r.report.imag_part, r.expected,
                           std::string(to_string(r.report.classification)),
                           back[i].probability_ratio, back[i].pointer_mean});
    }

    /* Single-arm occupations are sums of pair occupations at the operator level. */
    double op_sum_err = 0.0;
    op_sum_err = std::max(op_sum_err,
                          max_abs_diff(w.occupations[4], w.occupations[0] + w.occupations[1]));
    op_sum_err = std::max(op_sum_err,
                          max_abs_diff(w.occupations[5], w.occupations[2] + w.occupations[3]));
    op_sum_err = std::max(op_sum_err,
                          max_abs_diff(w.occupations[6], w.occupations[0] + w.occupations[2]));
    op_sum_err = std::max(op_sum_err,
                          max_abs_diff(w.occupations[7], w.occupations[1] + w.occupations[3]));

    const double strong = strong_backaction(w.occupations[3], w.phi, w.psi_proj);

    rep.checks.push_back(within("occupation weak values hit the exact rationals", max_value_err,
                                tol::algebraic));
    rep.checks.push_back(
        within("both-dark-arm occupation weak value is -1",
               wvs[3].report.real_part + 1.0, tol::algebraic));
    rep.checks.push_back(within("pair weak values sum to 1",
                                std::hypot(pair_sum_re - 1.0, pair_sum_im), tol::algebraic));
    rep.checks.push_back(
        within("single-arm occupations equal pair sums", op_sum_err, tol::algebraic));
    rep.checks.push_back(within("probability back-action matches Re of the weak value",
                                max_back_err, tol::spectral));
    rep.checks.push_back(
        within("pair back-action ratios add to the identity response", pair_ratio_sum - 1.0,
               tol::spectral));
    rep.checks.push_back(within("post-selection sandwich contracts by 1/4",
                                nc.psi_sandwich_factor - 0.25, tol::algebraic));
    rep.checks.push_back(within("pre-selection sandwich contracts by 1/3",
                                nc.phi_sandwich_factor - 1.0 / 3.0, tol::algebraic));
    rep.checks.push_back(within("sandwich identities hold entrywise",
                                std::max(nc.psi_sandwich_residual, nc.phi_sandwich_residual),
                                tol::algebraic));
    rep.checks.push_back(within("commutator expectation vanishes in the pre-selected state",
                                nc.commutator_expectation, tol::algebraic));
    rep.checks.push_back(
        at_least("commutator itself is far from zero", nc.commutator_max_entry, 0.1));
    rep.checks.push_back(
        within("repeated sandwich powers decay to zero", nc.power_limit, tol::algebraic));
    rep.checks.push_back(
        within("strong measurement leaves the dark-port probability unchanged", strong,
               tol::algebraic));
    return rep;
}

/* Raw intensity integral over the CDF span (Simpson), used to confirm the
 * closed-form normalization is z-independent. */
double intensity_integral(const TwoSlitField& field, double z) {
    const std::size_t n = 8192;
    const double t = field.tau(z);
    const double envelope = field.slit_width * std::sqrt(0.5 * (1.0 + t * t));
    const double span = 0.5 * field.slit_separation + 8.0 * envelope;
    const double dx = 2.0 * span / static_cast<double>(n);
    double total = 0.0;
    for (std::size_t j = 0; j + 2 <= n; j += 2) {
        const double x = -span + static_cast<double>(j) * dx;
        total += dx / 3.0 *
                 (field.intensity(x, z) + 4.0 * field.intensity(x + dx, z) +
                  field.intensity(x + 2.0 * dx, z));
    }
    return total;
}

RunReport twoslit_scenario(const RunConfig& c) {
    std::vector<double> zs(c.planes);
    for (std::size_t j = 0; j < c.planes; ++j)
        zs[j] = 100.0 * static_cast<double>(j) / static_cast<double>(c.planes - 1);
    const TwoSlitField field = twoslit_build(4.0, 1.0, 50.0, zs);

    const std::vector<double> starts = weighted_start_points(field, c.starts, 0.0);
    const TrajectoryBundle bundle = reconstruct_trajectories(field, starts, zs);

    RunReport rep;
    rep.table.columns = {"trajectory", "z", "xi", "weak_momentum", "alive"};
    for (std::size_t i = 0; i < starts.size(); ++i)
        for (std::size_t j = 0; j < zs.size(); ++j) {
            const bool alive =
                bundle.terminated_at[i] < 0 || static_cast<int>(j) < bundle.terminated_at[i];
            const double xi = bundle.paths[i][j];
            const double mom = alive ? weak_momentum(field, xi, zs[j]) : 0.0;
            rep.table.add_row({static_cast<double>(i), zs[j], xi, mom, alive ? 1.0 : 0.0});
        }

    double norm_err = 0.0;
    for (const double z : {0.0, 50.0, 100.0})
        norm_err = std::max(norm_err, std::abs(intensity_integral(field, z) - 1.0));

    const double z_last = zs.back();
    std::vector<double> endpoints;
    for (std::size_t i = 0; i < starts.size(); ++i)
        if (bundle.terminated_at[i] < 0) endpoints.push_back(bundle.paths[i].back());
    const double ks = ks_distance(endpoints, intensity_cdf(field, z_last));

    const double z_far = 500.0;
    const std::vector<double> maxima = fringe_maxima(field, z_far, 2);
    double spacing_dev = 1.0;
    if (maxima.size() >= 2) {
        const double mean_spacing =
            (maxima.back() - maxima.front()) / static_cast<double>(maxima.size() - 1);
        const double far_field =
            2.0 * 3.1415926535897932385 * z_far / (field.wavenumber * field.slit_separation);
        spacing_dev = mean_spacing / far_field - 1.0;
    }

    const GaussianPointer pointer(c.x0, c.sigma);
    const double grid_coupling = 1e-3;
    const IntensityCdf cdf_last = intensity_cdf(field, z_last);
    std::vector<double> samples(33);
    for (std::size_t i = 0; i < samples.size(); ++i)
        samples[i] = cdf_last.quantile((static_cast<double>(i) + 0.5) / 33.0);
    const PointerCheckResult pc =
        twoslit_pointer_check(field, pointer, grid_coupling, z_last, samples);
    const InterferencePersistence ip =
        interference_persistence(field, pointer, grid_coupling, z_last);

    rep.checks.push_back(within("field stays normalized at every plane", norm_err, 1e-8));
    rep.checks.push_back(within("trajectory endpoints reproduce the intensity (KS)", ks, 0.05));
    rep.checks.push_back(
        at_least("trajectories never cross", bundle.min_ordering_gap, -1e-9));
    rep.checks.push_back(
        within("fringe spacing matches the far-field prediction", spacing_dev, 0.02));
    rep.checks.push_back(
        within("grid readout reproduces the analytic momentum field", pc.max_rel_err, 0.01));
    rep.checks.push_back(
        within("grid refinement leaves the readout unchanged", pc.refinement_delta, 0.01));
    rep.checks.push_back(within("zero-coupling extrapolation recovers the pattern",
                                ip.extrapolation_residual, 1e-6));
    rep.checks.push_back(
        at_least("readout visibly disturbs the pattern", ip.max_first_order_change, 1e-8));
    return rep;
}

RunReport identities_scenario(const RunConfig& c) {
    Rng rng(c.seed);
    RunReport rep;
    rep.table.columns = {"trial",          "decomposition", "completeness", "squared_identity",
                         "zero_or_one",    "linearity",     "backaction"};
    double d_max = 0.0, c_max = 0.0, s_max = 0.0, z_max = 0.0, l_max = 0.0, b_max = 0.0;
    const GaussianPointer pointer(c.x0, c.sigma);

    for (std::size_t t = 0; t < c.trials; ++t) {
        const Ket ini = random_state(rng, c.dim);
        const Ket fin = random_state_overlapping(rng, ini, 0.05);
        const LinOp a = random_hermitian(rng, c.dim);
        const std::vector<Ket> basis = random_orthonormal_basis(rng, c.dim);

        /* Expectation decomposition over a complete post-selection basis. */
        const auto weights = decompose_expectation(a, ini, basis);
        cplx acc(0.0);
        for (const auto& wwv : weights) acc += wwv.probability * wwv.report.value;
        const double d_err = std::abs(acc - a.expectation(ini.normalized()));

        /* Partition completeness. */
        const auto partition = random_projective_partition(rng, c.dim);
        const double c_err = std::abs(completeness_sum(partition, ini, fin) - 1.0);

        /* Modulus-squared identity for a rank-one observable. */
        const LinOp proj = random_rank1_projector(rng, c.dim);
        const auto sq = squared_weakvalue_identity(proj, ini, fin);
        const double s_err = std::max(std::abs(sq.lhs - sq.rhs_product_form),
                                      std::abs(sq.lhs - sq.rhs_sandwich_form));

        /* Projector commuting with the basis: weak values 0 or 1. */
        LinOp subspace(c.dim);
        for (std::size_t j = 0; j < c.dim; j += 2) subspace += LinOp::projector(basis[j]);
        const auto zo = zero_or_one_check(subspace, basis, ini);
        double z_err = 0.0;
        for (const double v : zo) z_err = std::max(z_err, std::min(std::abs(v), std::abs(v - 1.0)));

        /* Linearity over Hermitian combinations. */
        const LinOp b = random_hermitian(rng, c.dim);
        const double alpha = 2.0 * rng.uniform() - 1.0, beta = 2.0 * rng.uniform() - 1.0;
        LinOp combo = a;
        combo *= cplx(alpha);
        LinOp scaled_b = b;
        scaled_b *= cplx(beta);
        combo += scaled_b;
        const cplx lin = weak_value(combo, ini, fin).value -
                         (alpha * weak_value(a, ini, fin).value +
                          beta * weak_value(b, ini, fin).value);
        const double l_err = std::abs(lin);

        /* First-order probability back-action equals Re of the weak value. */
        const WeakSetup setup{ini, a, pointer, c.kappa};
        const BackactionRelation rel = backaction_relation(setup, fin);
        const double b_err = std::abs(rel.lhs_weakvalue_re - rel.rhs_probability_ratio);

        d_max = std::max(d_max, d_err);
        c_max = std::max(c_max, c_err);
        s_max = std::max(s_max, s_err);
        z_max = std::max(z_max, z_err);
        l_max = std::max(l_max, l_err);
        b_max = std::max(b_max, b_err);
        rep.table.add_row({static_cast<double>(t), d_err, c_err, s_err, z_err, l_err, b_err});
    }

    rep.checks.push_back(
        within("weighted weak values rebuild the expectation", d_max, tol::spectral));
    rep.checks.push_back(within("partition weak values sum to 1", c_max, tol::spectral));
    rep.checks.push_back(
        within("modulus-squared identity holds three ways", s_max, tol::spectral));
    rep.checks.push_back(
        within("commuting projector weak values are 0 or 1", z_max, tol::spectral));
    rep.checks.push_back(within("weak values are linear in the observable", l_max, tol::spectral));
    rep.checks.push_back(within("probability back-action equals Re of the weak value", b_max,
                                tol::spectral));
    return rep;
}

RunReport povm_scenario(const RunConfig& c) {
    Rng rng(c.seed);
    const GaussianPointer pointer(c.x0, c.sigma);
    RunReport rep;
    rep.table.columns = {"trial", "bin", "label", "mass", "eprime_norm", "closure_residual"};

    const std::size_t trials = std::min<std::size_t>(c.trials, 25);
    double closure_max = 0.0, eprime_sum_max = 0.0, seq_max = 0.0, slope_max = 0.0,
           strong_max = 0.0;

    for (std::size_t t = 0; t < trials; ++t) {
        const LinOp a = random_hermitian(rng, c.dim);
        const Ket ini = random_state(rng, c.dim);
        const auto edges = default_edges(pointer, c.bins);
        const GaussianPovmFamily family = GaussianPovmFamily::make(a, pointer, edges);
        const PovmSet povm = family.at(c.kappa);
        validate_povm(povm);

        LinOp closure(c.dim);
        for (const LinOp& e : povm.effects) closure += e;
        const double closure_res = max_abs_diff(closure, LinOp::identity(c.dim));
        closure_max = std::max(closure_max, closure_res);

        const WeakPovmExpansion exp = weak_expansion(family, 1e-2);
        LinOp eprime_sum(c.dim);
        double eprime_norms = 0.0;
        for (const LinOp& ep : exp.eprime) eprime_sum += ep;
        eprime_sum_max = std::max(eprime_sum_max, eprime_sum.max_abs());

        for (std::size_t m = 0; m < povm.effects.size(); ++m) {
            eprime_norms = exp.eprime[m].max_abs();
            rep.table.add_row({static_cast<double>(t), static_cast<double>(m),
                               povm.labels[m], exp.p[m], eprime_norms, closure_res});
        }

        /* Sequential statistics vs the joint-effect route. */
        const auto partition = random_projective_partition(rng, c.dim);
        const auto pr = sequential_probability(ini, povm, partition);
        for (std::size_t n = 0; n < partition.size(); ++n)
            for (std::size_t m = 0; m < povm.effects.size(); ++m) {
                const LinOp joint = povm.kraus_ops[m].adjoint() * partition[n] * povm.kraus_ops[m];
                const double brute = joint.expectation(ini).real();
                seq_max = std::max(seq_max, std::abs(pr[n][m] - brute));
            }

        /* Conditional-expectation slope vs the first-order weak value. */
        for (std::size_t n = 0; n < partition.size(); ++n) {
            const double pn = partition[n].expectation(ini).real();
            if (pn < 0.05) continue;
            const auto dec = backaction_decomposition(ini, family, partition, n, 1e-2);
            slope_max = std::max(slope_max, std::abs(dec.first_slope - dec.weakvalue_re));
        }

        /* Strong (projective) readout is itself a POVM of this shape. */
        const Spectrum sp = spectral(a);
        PovmSet strong;
        strong.kraus_ops = sp.eigenprojectors;
        strong.effects = sp.eigenprojectors;
        strong.labels = sp.eigenvalues;
        const auto spr = sequential_probability(ini, strong, partition);
        for (std::size_t n = 0; n < partition.size(); ++n)
            for (std::size_t m = 0; m < sp.eigenprojectors.size(); ++m) {
                const LinOp joint = sp.eigenprojectors[m] * partition[n] * sp.eigenprojectors[m];
                strong_max =
                    std::max(strong_max, std::abs(spr[n][m] - joint.expectation(ini).real()));
            }
    }

    const NegativityInstance neg = demonstrate_ratio_negativity();

    rep.checks.push_back(within("effects sum to the identity", closure_max, tol::spectral));
    rep.checks.push_back(
        within("first-order effects sum to zero", eprime_sum_max, tol::spectral));
    rep.checks.push_back(
        within("sequential statistics match the joint rule", seq_max, tol::algebraic));
    rep.checks.push_back(within("conditional slope equals the first-order weak value", slope_max,
                                tol::slope_match));
    rep.checks.push_back(
        within("projective readout reproduces two-step statistics", strong_max, tol::algebraic));
    rep.checks.push_back({"corrected outcome ratio turns negative", neg.corrected, 0.0,
                          neg.corrected < 0.0});
    rep.checks.push_back(at_least("exact sequential probabilities stay nonnegative",
                                  neg.min_probability, -1e-12));
    rep.checks.push_back(at_least("anomalous weak value is large and negative",
                                  -neg.weakvalue_re, 5.0));
    return rep;
}

RunReport sweep_scenario(const RunConfig& c) {
    Rng rng(c.seed);
    const GaussianPointer pointer(c.x0, c.sigma);
    RunReport rep;
    rep.table.columns = {"trial", "dim",        "error_k", "error_k2", "error_k4",
                         "ratio_big", "ratio_small", "order",   "exact",    "pass"};
    std::array<std::vector<double>, 3> errs;
    for (std::size_t t = 0; t < c.trials; ++t) {
        const std::size_t dim = 2 + t % (c.dim - 1);
        const Ket ini = random_state(rng, dim);
        const Ket fin = random_state_overlapping(rng, ini, 0.2);
        const LinOp a = random_hermitian(rng, dim);
        const WeakSetup setup{ini, a, pointer, c.kappa};
        const SweepResult sr = sweep_coupling(setup, fin);
        for (std::size_t j = 0; j < 3; ++j) errs[j].push_back(sr.errors[j]);
        rep.table.add_row({static_cast<double>(t), static_cast<double>(dim), sr.errors[0],
                           sr.errors[1], sr.errors[2], sr.ratio_big, sr.ratio_small,
                           sr.fitted_order, sr.exact ? 1.0 : 0.0, sr.pass ? 1.0 : 0.0});
    }
    /* Individual studies are flagged in the pass column; the certified claim is
     * the ensemble convergence order. A draw whose quadratic coefficient nearly
     * cancels shows a transient slope at the probe couplings, but the median
     * error is immune to such outliers. */
    const auto median = [](std::vector<double> v) {
        const std::size_t mid = v.size() / 2;
        std::nth_element(v.begin(), v.begin() + mid, v.end());
        return v[mid];
    };
    const double med0 = median(errs[0]), med2 = median(errs[2]);
    const double order =
        (med0 > 1e-12 && med2 > 1e-12) ? 0.5 * std::log2(med0 / med2) : 2.0;
    rep.checks.push_back(
        within("ensemble median error is second order in the coupling", order - 2.0, 0.2));
    return rep;
}

}  // namespace

SweepResult sweep_coupling(const WeakSetup& setup, const Ket& final_state) {
    if (!(setup.coupling > 0.0)) throw ZeroCoupling("sweep needs a positive base coupling");
    const Ket ini = setup.system_initial.normalized();
    const Ket fin = final_state.normalized();
    const cplx overlap = inner(fin, ini);
    if (std::abs(overlap) <= tol::orthogonal_overlap)
        throw OrthogonalPostSelection("post-selection orthogonal to the initial state");
    const double p0 = std::norm(overlap);
    const double cross = (std::conj(overlap) * inner(fin, setup.observable.apply(ini))).real();

    SweepResult sr;
    for (int j = 0; j < 3; ++j) {
        WeakSetup step = setup;
        step.coupling = setup.coupling / std::pow(2.0, j);
        sr.couplings[static_cast<std::size_t>(j)] = step.coupling;
        const double p1_exact = std::norm(inner(fin, state_after_readout_exact(step)));
        const double p1_first = p0 + (step.coupling / setup.pointer.x0) * cross;
        sr.errors[static_cast<std::size_t>(j)] = std::abs(p1_exact - p1_first);
    }
    /* Both quantities are probabilities, so the exactness floor sits at rounding
     * noise on the unit scale. */
    const double floor = 1e-12;
    if (sr.errors[0] <= floor && sr.errors[1] <= floor && sr.errors[2] <= floor) {
        sr.exact = true;
        sr.pass = true;
        return sr;
    }
    if (sr.errors[1] > 0.0 && sr.errors[2] > 0.0) {
        sr.ratio_big = sr.errors[0] / sr.errors[1];
        sr.ratio_small = sr.errors[1] / sr.errors[2];
        sr.fitted_order = 0.5 * std::log2(sr.errors[0] / sr.errors[2]);
    }
    const bool ratios_ok = sr.ratio_big >= 3.5 && sr.ratio_big <= 4.5 && sr.ratio_small >= 3.5 &&
                           sr.ratio_small <= 4.5;
    const bool order_ok = sr.fitted_order >= 1.8 && sr.fitted_order <= 2.2;
    sr.pass = ratios_ok || order_ok;
    return sr;
}

RunReport run_scenario(const RunConfig& config) {
    validate_config(config);
    switch (config.scenario) {
        case Scenario::hardy: return hardy_scenario(config);
        case Scenario::twoslit: return twoslit_scenario(config);
        case Scenario::identities: return identities_scenario(config);
        case Scenario::povm: return povm_scenario(config);
        case Scenario::sweep: return sweep_scenario(config);
    }
    throw std::invalid_argument("unknown scenario");
}

int run(const RunConfig& config) {
    const RunReport rep = run_scenario(config);
    const io::Meta meta = base_meta(config);

    io::Table summary;
    summary.columns = {"check", "value", "threshold", "status"};
    for (const auto& ck : rep.checks)
        summary.add_row(
            {ck.name, ck.value, ck.threshold, std::string(ck.pass ? "pass" : "fail")});

    if (config.out.empty()) {
        io::write_table(std::cout, rep.table, meta, config.format);
    } else {
        io::write_table_file(config.out, rep.table, meta, config.format);
        io::write_table_file(io::summary_path(config.out), summary, meta, config.format);
    }

    std::size_t passed = 0;
    for (const auto& ck : rep.checks) {
        std::cerr << (ck.pass ? "PASS " : "FAIL ") << ck.name
                  << " (value=" << io::format_double(ck.value)
                  << ", threshold=" << io::format_double(ck.threshold) << ")\n";
        if (ck.pass) ++passed;
    }
    std::cerr << passed << "/" << rep.checks.size() << " checks passed\n";
    return rep.all_pass() ? 0 : 1;
}

}  // namespace weakmeas
