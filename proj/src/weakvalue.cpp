#include "weakmeas/weakvalue.hpp"

#include <cmath>

namespace weakmeas {

const char* to_string(WeakValueClass c) {
    return c == WeakValueClass::ConditionalProbability ? "ConditionalProbability"
                                                       : "BackActionIndicator";
}

WeakValueReport weak_value(const LinOp& observable, const Ket& initial, const Ket& final_state,
                           double commute_tol, double overlap_floor) {
    if (observable.dim() != initial.dim() || initial.dim() != final_state.dim())
        throw DimensionMismatch("weak_value operand dimensions differ");
    if (!observable.is_hermitian(commute_tol))
        throw InvalidOperator("weak_value requires a Hermitian observable");

    const cplx overlap = inner(final_state, initial);
    if (std::abs(overlap) <= overlap_floor)
        throw OrthogonalPostSelection("post-selection orthogonal to the initial state");

    WeakValueReport rep;
    rep.value = inner(final_state, observable.apply(initial)) / overlap;
    rep.real_part = rep.value.real();
    rep.imag_part = rep.value.imag();

    const LinOp final_proj = LinOp::projector(final_state);
    const LinOp initial_proj = LinOp::projector(initial);
    rep.flags.final_with_observable =
        max_abs_diff(final_proj * observable, observable * final_proj) <= commute_tol;
    rep.flags.initial_with_final =
        max_abs_diff(initial_proj * final_proj, final_proj * initial_proj) <= commute_tol;
    rep.flags.initial_with_observable =
        max_abs_diff(initial_proj * observable, observable * initial_proj) <= commute_tol;
    rep.expectation_of_commutator =
        commutator(final_proj, observable).expectation(initial.normalized());

    const bool projector = observable.is_projector(commute_tol);
    rep.classification =
        (projector && (rep.flags.final_with_observable || rep.flags.initial_with_final))
            ? WeakValueClass::ConditionalProbability
            : WeakValueClass::BackActionIndicator;
    return rep;
}

std::vector<WeightedWeakValue> decompose_expectation(const LinOp& observable, const Ket& initial,
                                                     const std::vector<Ket>& basis,
                                                     double completeness_tol,
                                                     double overlap_floor) {
    if (basis.empty()) throw InvalidOperator("empty post-selection basis");
    LinOp closure(observable.dim());
    for (const Ket& b : basis) closure += LinOp::projector(b);
    if (!closure.is_identity(completeness_tol))
        throw InvalidOperator("post-selection basis does not resolve the identity");

    const Ket norm_initial = initial.normalized();
    std::vector<WeightedWeakValue> out;
    out.reserve(basis.size());
    for (const Ket& b : basis) {
        WeightedWeakValue w;
        w.report = weak_value(observable, norm_initial, b, tol::algebraic, overlap_floor);
        w.probability = std::norm(inner(b.normalized(), norm_initial));
        out.push_back(std::move(w));
    }
    return out;
}

SquaredWeakValueIdentity squared_weakvalue_identity(const LinOp& projector, const Ket& initial,
                                                    const Ket& final_state, double projector_tol,
                                                    double overlap_floor) {
    if (!projector.is_projector(projector_tol))
        throw InvalidOperator("squared_weakvalue_identity requires a projector");
    const Ket ini = initial.normalized();
    const Ket fin = final_state.normalized();
    const cplx overlap = inner(fin, ini);
    if (std::abs(overlap) <= overlap_floor)
        throw OrthogonalPostSelection("post-selection orthogonal to the initial state");

    SquaredWeakValueIdentity id;
    id.lhs = std::norm(inner(fin, projector.apply(ini)) / overlap);

    const double pr_a_final = projector.expectation(fin).real();
    const double pr_a_initial = projector.expectation(ini).real();
    const double pr_post = std::norm(overlap);
    id.rhs_product_form = pr_a_final * pr_a_initial / pr_post;

    const LinOp final_proj = LinOp::projector(fin);
    id.rhs_sandwich_form =
        (projector * final_proj * projector).expectation(ini).real() / pr_post;
    return id;
}

std::vector<double> zero_or_one_check(const LinOp& projector, const std::vector<Ket>& basis,
                                      const Ket& initial, double commute_tol, double check_tol) {
    if (!projector.is_projector(commute_tol))
        throw InvalidOperator("zero_or_one_check requires a projector");
    for (const Ket& b : basis) {
        const LinOp bp = LinOp::projector(b);
        if (max_abs_diff(bp * projector, projector * bp) > commute_tol)
            throw InvalidOperator("basis projector does not commute with the observable");
    }

    const Ket ini = initial.normalized();
    std::vector<double> values;
    values.reserve(basis.size());
    double sum_wv = 0.0, sum_wv_sq = 0.0, total_pr = 0.0;
    for (const Ket& b : basis) {
        const cplx overlap = inner(b, ini);
        if (std::abs(overlap) <= tol::orthogonal_overlap) continue;  // branch never selected
        const cplx wv = inner(b, projector.apply(ini)) / overlap;
        const double pr = std::norm(overlap);
        values.push_back(wv.real());
        sum_wv += pr * wv.real();
        sum_wv_sq += pr * std::norm(wv);
        total_pr += pr;
    }
    const double expect = projector.expectation(ini).real();
    if (std::abs(sum_wv - expect) > check_tol || std::abs(sum_wv_sq - expect) > check_tol)
        throw InvalidOperator("zero-or-one moment identity failed");
    (void)total_pr;
    return values;
}

cplx completeness_sum(const std::vector<LinOp>& partition, const Ket& initial,
                      const Ket& final_state, double partition_tol, double overlap_floor) {
    if (partition.empty()) throw InvalidOperator("empty partition");
    LinOp closure(partition.front().dim());
    for (const LinOp& p : partition) {
        if (!p.is_projector(partition_tol))
            throw InvalidOperator("partition member is not a projector");
        closure += p;
    }
    if (!closure.is_identity(partition_tol))
        throw InvalidOperator("partition does not sum to the identity");

    cplx total = 0.0;
    for (const LinOp& p : partition)
        total += weak_value(p, initial, final_state, tol::algebraic, overlap_floor).value;
    return total;
}

}  // namespace weakmeas
