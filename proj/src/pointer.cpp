#include "weakmeas/pointer.hpp"

#include <cmath>

namespace weakmeas {

GaussianPointer::GaussianPointer(double x0_, double sigma_) : x0(x0_), sigma(sigma_) {
    if (!(sigma > 0.0)) throw InvalidOperator("pointer spread must be positive");
    if (x0 == 0.0) throw InvalidOperator("pointer centre x0 must be nonzero");
}

double gaussian_overlap(double a, double b, double sigma) {
    const double d = a - b;
    return std::exp(-d * d / (8.0 * sigma * sigma));
}

double gaussian_x_overlap(double a, double b, double sigma) {
    return 0.5 * (a + b) * gaussian_overlap(a, b, sigma);
}

namespace {

void check_setup(const WeakSetup& s) {
    if (s.system_initial.dim() != s.observable.dim())
        throw DimensionMismatch("setup state/observable dimension mismatch");
    if (!s.observable.is_hermitian(tol::algebraic))
        throw InvalidOperator("observable must be Hermitian");
    if (s.coupling < 0.0) throw ZeroCoupling("coupling must be nonnegative");
}

std::vector<cplx> postselected_weights(const JointState& state, const Ket& final_state) {
    std::vector<cplx> w;
    w.reserve(state.branches.size());
    for (const auto& br : state.branches) w.push_back(inner(final_state, br.component));
    return w;
}

}  // namespace

JointState evolve_exact(const WeakSetup& setup) {
    check_setup(setup);
    const Ket ini = setup.system_initial.normalized();
    JointState js{{}, setup.pointer, setup.coupling};
    const Spectrum sp = spectral(setup.observable);
    for (std::size_t i = 0; i < sp.eigenvalues.size(); ++i) {
        JointState::Branch br;
        br.eigenvalue = sp.eigenvalues[i];
        br.component = sp.eigenprojectors[i].apply(ini);
        br.pointer_centre = setup.pointer.x0 + setup.coupling * sp.eigenvalues[i];
        const double n = br.component.norm();
        if (n * n < 1e-30) continue;  // empty branch
        js.branches.push_back(std::move(br));
    }
    return js;
}

double postselection_probability(const JointState& state, const Ket& final_state) {
    const std::vector<cplx> w = postselected_weights(state, final_state);
    double pr = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i)
        for (std::size_t j = 0; j < w.size(); ++j)
            pr += (std::conj(w[i]) * w[j]).real() *
                  gaussian_overlap(state.branches[i].pointer_centre,
                                   state.branches[j].pointer_centre, state.pointer.sigma);
    return pr;
}

double postselect_pointer_mean(const JointState& state, const Ket& final_state,
                               double probability_floor) {
    const std::vector<cplx> w = postselected_weights(state, final_state);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i)
        for (std::size_t j = 0; j < w.size(); ++j) {
            const double re = (std::conj(w[i]) * w[j]).real();
            const double ci = state.branches[i].pointer_centre;
            const double cj = state.branches[j].pointer_centre;
            num += re * gaussian_x_overlap(ci, cj, state.pointer.sigma);
            den += re * gaussian_overlap(ci, cj, state.pointer.sigma);
        }
    if (den <= probability_floor)
        throw OrthogonalPostSelection("post-selection probability below floor");
    return num / den;
}

double first_order_pointer_mean(const WeakSetup& setup, const Ket& final_state) {
    check_setup(setup);
    const WeakValueReport rep =
        weak_value(setup.observable, setup.system_initial, final_state);
    return setup.pointer.x0 + setup.coupling * rep.real_part;
}

Ket state_after_readout(const WeakSetup& setup) {
    check_setup(setup);
    Ket out = setup.system_initial.normalized();
    const cplx scale(setup.coupling / (2.0 * setup.pointer.x0));
    out += scale * setup.observable.apply(setup.system_initial.normalized());
    return out;
}

Ket state_after_readout_exact(const WeakSetup& setup) {
    const JointState js = evolve_exact(setup);
    const double x0 = setup.pointer.x0, sigma = setup.pointer.sigma, k = setup.coupling;
    Ket out(std::vector<cplx>(setup.system_initial.dim(), cplx(0.0)));
    for (const auto& br : js.branches) {
        const double a = br.eigenvalue;
        const double factor =
            (1.0 + k * a / (2.0 * x0)) * std::exp(-k * k * a * a / (8.0 * sigma * sigma));
        out += cplx(factor) * br.component;
    }
    return out;
}

BackactionRelation backaction_relation(const WeakSetup& setup, const Ket& final_state) {
    check_setup(setup);
    if (setup.coupling <= 0.0) throw ZeroCoupling("back-action relation needs coupling > 0");
    const Ket ini = setup.system_initial.normalized();
    const Ket fin = final_state.normalized();
    const cplx overlap = inner(fin, ini);
    if (std::abs(overlap) <= tol::orthogonal_overlap)
        throw OrthogonalPostSelection("post-selection orthogonal to the initial state");

    const double x0 = setup.pointer.x0, k = setup.coupling;
    const double p0 = std::norm(overlap);
    /* First order in coupling: the squared readout amplitude keeps only the
     * cross term, Pr' = Pr + (k/x0) Re(<I|psi><psi|A|I>). */
    const double cross = (std::conj(overlap) * inner(fin, setup.observable.apply(ini))).real();
    const double p1 = p0 + (k / x0) * cross;

    BackactionRelation rel;
    rel.lhs_weakvalue_re = weak_value(setup.observable, ini, fin).real_part;
    rel.rhs_probability_ratio = (x0 / k) * (p1 - p0) / p0;
    rel.ratio_identity_lhs = first_order_pointer_mean(setup, fin) / x0;
    rel.ratio_identity_rhs = p1 / p0;
    return rel;
}

double completeness_backaction(const std::vector<LinOp>& partition, const Ket& initial,
                               const Ket& final_state, const GaussianPointer& pointer,
                               double coupling, double partition_tol) {
    if (partition.empty()) throw InvalidOperator("empty partition");
    if (coupling <= 0.0) throw ZeroCoupling("completeness back-action needs coupling > 0");
    LinOp closure(partition.front().dim());
    for (const LinOp& p : partition) {
        if (!p.is_projector(partition_tol))
            throw InvalidOperator("partition member is not a projector");
        closure += p;
    }
    if (!closure.is_identity(partition_tol))
        throw InvalidOperator("partition does not sum to the identity");

    const Ket ini = initial.normalized();
    const Ket fin = final_state.normalized();
    const cplx overlap = inner(fin, ini);
    if (std::abs(overlap) <= tol::orthogonal_overlap)
        throw OrthogonalPostSelection("post-selection orthogonal to the initial state");
    const double p0 = std::norm(overlap);
    /* One pointer per member: first-order shifts add over the partition. */
    const double cross = (std::conj(overlap) * inner(fin, closure.apply(ini))).real();
    const double p1 = p0 + (coupling / pointer.x0) * cross;
    return (pointer.x0 / coupling) * (p1 - p0) / p0;
}

}  // namespace weakmeas
