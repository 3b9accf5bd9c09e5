#include "weakmeas/povm.hpp"

#include <cmath>

namespace weakmeas {

namespace {

double normal_cdf(double t) { return 0.5 * std::erfc(-t / std::sqrt(2.0)); }

double normal_pdf(double t, double sigma) {
    return std::exp(-0.5 * t * t) / (sigma * std::sqrt(2.0 * 3.14159265358979323846));
}

void check_edges(const std::vector<double>& edges) {
    if (edges.empty()) throw InvalidOperator("need at least one bin edge");
    for (std::size_t i = 1; i < edges.size(); ++i)
        if (!(edges[i] > edges[i - 1]))
            throw InvalidOperator("bin edges must be strictly increasing");
}

std::vector<double> unit_calibrated_labels(const std::vector<double>& edges,
                                           const GaussianPointer& pointer) {
    const std::size_t nbins = edges.size() + 1;
    std::vector<double> p(nbins), ps(nbins);
    double fisher = 0.0;
    for (std::size_t m = 0; m < nbins; ++m) {
        p[m] = bin_mass(edges, m, pointer.x0, pointer.sigma);
        ps[m] = bin_mass_slope(edges, m, pointer.x0, pointer.sigma);
        if (p[m] < 1e-300) throw InvalidOperator("bin has vanishing pointer mass");
        fisher += ps[m] * ps[m] / p[m];
    }
    if (fisher <= 0.0) throw InvalidOperator("bins carry no first-order information");
    std::vector<double> labels(nbins);
    for (std::size_t m = 0; m < nbins; ++m) labels[m] = ps[m] / (p[m] * fisher);
    return labels;
}

PovmSet build_binned(const LinOp& observable, const GaussianPointer& pointer, double coupling,
                     const std::vector<double>& edges, const std::vector<double>& labels,
                     const LinOp& calibration_target) {
    const Spectrum sp = spectral(observable);
    const std::size_t nbins = edges.size() + 1;
    PovmSet povm;
    povm.labels = labels;
    povm.kraus_ops.reserve(nbins);
    povm.effects.reserve(nbins);
    LinOp weighted(observable.dim());
    for (std::size_t m = 0; m < nbins; ++m) {
        LinOp kraus(observable.dim());
        for (std::size_t i = 0; i < sp.eigenvalues.size(); ++i) {
            const double mu = pointer.x0 + coupling * sp.eigenvalues[i];
            const double w = bin_mass(edges, m, mu, pointer.sigma);
            kraus += cplx(std::sqrt(std::max(w, 0.0))) * sp.eigenprojectors[i];
        }
        LinOp effect = kraus * kraus;  // Hermitian Kraus ops
        weighted += cplx(labels[m]) * effect;
        povm.kraus_ops.push_back(std::move(kraus));
        povm.effects.push_back(std::move(effect));
    }
    povm.calibration_residual = max_abs_diff(weighted, calibration_target);
    return povm;
}

}  // namespace

double bin_mass(const std::vector<double>& edges, std::size_t m, double mu, double sigma) {
    const double hi = (m == edges.size()) ? 1.0 : normal_cdf((edges[m] - mu) / sigma);
    const double lo = (m == 0) ? 0.0 : normal_cdf((edges[m - 1] - mu) / sigma);
    return hi - lo;
}

double bin_mass_slope(const std::vector<double>& edges, std::size_t m, double mu, double sigma) {
    const double left =
        (m == 0) ? 0.0 : normal_pdf((edges[m - 1] - mu) / sigma, sigma);
    const double right =
        (m == edges.size()) ? 0.0 : normal_pdf((edges[m] - mu) / sigma, sigma);
    return left - right;
}

void validate_povm(const PovmSet& povm, double closure_tol, double psd_tol) {
    if (povm.effects.empty()) throw InvalidOperator("empty POVM");
    if (povm.effects.size() != povm.labels.size() ||
        povm.effects.size() != povm.kraus_ops.size())
        throw InvalidOperator("POVM component counts differ");
    LinOp closure(povm.effects.front().dim());
    for (std::size_t m = 0; m < povm.effects.size(); ++m) {
        const LinOp& e = povm.effects[m];
        if (!e.is_hermitian(closure_tol)) throw InvalidOperator("effect is not Hermitian");
        if (max_abs_diff(povm.kraus_ops[m].adjoint() * povm.kraus_ops[m], e) > closure_tol)
            throw InvalidOperator("effect does not match its Kraus operator");
        const EigenSystem es = eigh(e);
        if (es.values.front() < -psd_tol) throw InvalidOperator("effect is not PSD");
        closure += e;
    }
    if (!closure.is_identity(closure_tol))
        throw InvalidOperator("POVM effects do not sum to the identity");
}

PovmSet gaussian_binned_povm(const LinOp& observable, const GaussianPointer& pointer,
                             double coupling, const std::vector<double>& interior_edges) {
    if (!observable.is_hermitian(tol::algebraic))
        throw InvalidOperator("observable must be Hermitian");
    if (coupling < 0.0) throw ZeroCoupling("coupling must be nonnegative");
    check_edges(interior_edges);
    std::vector<double> labels;
    if (coupling > 0.0) {
        labels = unit_calibrated_labels(interior_edges, pointer);
        for (double& l : labels) l /= coupling;
    } else {
        /* No coupling, no information: labels stay zero and the calibration
         * residual records the full observable as the deficit. */
        labels.assign(interior_edges.size() + 1, 0.0);
    }
    return build_binned(observable, pointer, coupling, interior_edges, labels, observable);
}

GaussianPovmFamily GaussianPovmFamily::make(const LinOp& observable,
                                            const GaussianPointer& pointer,
                                            const std::vector<double>& interior_edges) {
    if (!observable.is_hermitian(tol::algebraic))
        throw InvalidOperator("observable must be Hermitian");
    check_edges(interior_edges);
    return GaussianPovmFamily{observable, pointer, interior_edges,
                              unit_calibrated_labels(interior_edges, pointer)};
}

PovmSet GaussianPovmFamily::at(double g) const {
    LinOp target = observable;
    target *= cplx(g);
    return build_binned(observable, pointer, g, interior_edges, unit_labels, target);
}

std::vector<std::vector<double>> sequential_probability(const Ket& initial, const PovmSet& povm,
                                                        const std::vector<LinOp>& final_projectors,
                                                        double projective_tol) {
    validate_povm(povm);
    if (final_projectors.empty()) throw InvalidOperator("empty projective set");
    LinOp closure(final_projectors.front().dim());
    for (const LinOp& p : final_projectors) {
        if (!p.is_projector(projective_tol))
            throw InvalidOperator("final measurement member is not a projector");
        closure += p;
    }
    if (!closure.is_identity(projective_tol))
        throw InvalidOperator("final projectors do not sum to the identity");
    for (std::size_t a = 0; a < final_projectors.size(); ++a)
        for (std::size_t b = a + 1; b < final_projectors.size(); ++b)
            if ((final_projectors[a] * final_projectors[b]).max_abs() > projective_tol)
                throw InvalidOperator("final projectors are not pairwise orthogonal");

    const Ket ini = initial.normalized();
    std::vector<std::vector<double>> pr(final_projectors.size(),
                                        std::vector<double>(povm.effects.size(), 0.0));
    double total = 0.0;
    for (std::size_t m = 0; m < povm.kraus_ops.size(); ++m) {
        const Ket branch = povm.kraus_ops[m].apply(ini);
        for (std::size_t n = 0; n < final_projectors.size(); ++n) {
            const double v = final_projectors[n].expectation(branch).real();
            if (v < -tol::algebraic) throw InvalidOperator("negative sequential probability");
            pr[n][m] = std::max(v, 0.0);
            total += pr[n][m];
        }
    }
    if (std::abs(total - 1.0) > tol::spectral)
        throw InvalidOperator("sequential probabilities do not sum to 1");
    return pr;
}

double conditional_expectation(const Ket& initial, const PovmSet& povm,
                               const std::vector<LinOp>& final_projectors, std::size_t n,
                               double probability_floor) {
    if (n >= final_projectors.size()) throw DimensionMismatch("outcome index out of range");
    const auto pr = sequential_probability(initial, povm, final_projectors);
    double num = 0.0, den = 0.0;
    for (std::size_t m = 0; m < povm.labels.size(); ++m) {
        num += povm.labels[m] * pr[n][m];
        den += pr[n][m];
    }
    if (den <= probability_floor)
        throw NeverPostSelected("conditioning outcome has zero probability");
    return num / den;
}

WeakPovmExpansion weak_expansion(const GaussianPovmFamily& family, double h) {
    if (!(h > 0.0)) throw ZeroCoupling("expansion step must be positive");
    const PovmSet base = family.at(0.0);
    WeakPovmExpansion ex;
    ex.g = h;
    ex.p.reserve(base.effects.size());
    for (const LinOp& e : base.effects) {
        const double pm = e.at(0, 0).real();
        LinOp scaled = LinOp::identity(e.dim());
        scaled *= cplx(pm);
        if (max_abs_diff(e, scaled) > tol::spectral)
            throw InvalidOperator("zero-coupling effect is not a multiple of the identity");
        ex.p.push_back(pm);
    }
    const PovmSet plus = family.at(h), minus = family.at(-h);
    const PovmSet plus2 = family.at(0.5 * h), minus2 = family.at(-0.5 * h);
    LinOp sum(family.observable.dim());
    for (std::size_t m = 0; m < base.effects.size(); ++m) {
        LinOp d1 = plus.effects[m] - minus.effects[m];
        d1 *= cplx(1.0 / (2.0 * h));
        LinOp d2 = plus2.effects[m] - minus2.effects[m];
        d2 *= cplx(1.0 / h);
        /* Richardson: (4 D(h/2) - D(h)) / 3. */
        LinOp der = cplx(4.0 / 3.0) * d2 - cplx(1.0 / 3.0) * d1;
        sum += der;
        ex.eprime.push_back(std::move(der));
    }
    if (sum.max_abs() > tol::spectral)
        throw InvalidOperator("first-order effects do not sum to zero");
    return ex;
}

BackactionDecomposition backaction_decomposition(const Ket& initial,
                                                 const GaussianPovmFamily& family,
                                                 const std::vector<LinOp>& final_projectors,
                                                 std::size_t n, double h) {
    BackactionDecomposition out;
    out.zeroth = conditional_expectation(initial, family.at(0.0), final_projectors, n);

    const auto ce = [&](double g) {
        return conditional_expectation(initial, family.at(g), final_projectors, n);
    };
    const double d1 = (ce(h) - ce(-h)) / (2.0 * h);
    const double d2 = (ce(0.5 * h) - ce(-0.5 * h)) / h;
    out.first_slope = (4.0 * d2 - d1) / 3.0;

    const WeakPovmExpansion ex = weak_expansion(family, h);
    LinOp a_prime(family.observable.dim());
    for (std::size_t m = 0; m < ex.eprime.size(); ++m)
        a_prime += cplx(family.unit_labels[m]) * ex.eprime[m];

    /* Re <I|P_n A'|I> / <I|P_n|I>; for a rank-one P_n this is the ordinary
     * post-selected weak value of A'. */
    const Ket ini = initial.normalized();
    const cplx pr_n = final_projectors[n].expectation(ini);
    if (std::abs(pr_n) <= tol::orthogonal_overlap)
        throw NeverPostSelected("post-selection probability is zero");
    const cplx num = inner(ini, (final_projectors[n] * a_prime).apply(ini));
    out.weakvalue_re = (num / pr_n).real();
    return out;
}

double strong_backaction(const LinOp& observable, const Ket& initial,
                         const LinOp& final_projector) {
    if (!observable.is_hermitian(tol::algebraic))
        throw InvalidOperator("observable must be Hermitian");
    if (!final_projector.is_projector(tol::algebraic))
        throw InvalidOperator("post-selection must be a projector");
    const Ket ini = initial.normalized();
    const double with_measurement =
        (observable * final_projector * observable).expectation(ini).real();
    const double without = final_projector.expectation(ini).real();
    return with_measurement - without;
}

NegativityInstance demonstrate_ratio_negativity() {
    /* Qubit sigma_z read out through two pointer-position bins split one sigma
     * above the packet centre; pre/post selection nearly orthogonal so the
     * weak value is large and negative. */
    const double theta = 3.14159265358979323846 / 4.0 + 0.05;
    const GaussianPointer pointer(1.0, 1.0);
    const double g = 0.05;
    const LinOp sz = LinOp::diagonal({1.0, -1.0});
    const Ket ini({std::cos(theta), std::sin(theta)});
    const Ket fin({1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0)});
    const std::vector<LinOp> finals = {LinOp::projector(fin),
                                       LinOp::identity(2) - LinOp::projector(fin)};
    const GaussianPovmFamily family =
        GaussianPovmFamily::make(sz, pointer, {pointer.x0 + pointer.sigma});
    const std::size_t n = 0, m = 1;  // post-select on fin, look at the upper bin

    const auto ratio = [&](double gg) {
        const auto pr = sequential_probability(ini, family.at(gg), finals);
        double den = 0.0;
        for (double v : pr[n]) den += v;
        return pr[n][m] / den;
    };

    NegativityInstance inst;
    inst.pre_angle = theta;
    inst.coupling = g;
    inst.weakvalue_re = weak_value(sz, ini, fin).real_part;
    inst.ratio_zeroth = ratio(0.0);
    const double h = 1e-3;
    const double d1 = (ratio(h) - ratio(-h)) / (2.0 * h);
    const double d2 = (ratio(0.5 * h) - ratio(-0.5 * h)) / h;
    inst.ratio_slope = (4.0 * d2 - d1) / 3.0;
    inst.corrected = inst.ratio_zeroth + g * inst.ratio_slope;

    const auto pr = sequential_probability(ini, family.at(g), finals);
    double lowest = 1.0;
    for (const auto& row : pr)
        for (double v : row) lowest = std::min(lowest, v);
    inst.min_probability = lowest;
    return inst;
}

}  // namespace weakmeas
