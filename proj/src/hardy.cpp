#include "weakmeas/hardy.hpp"

#include <cmath>

namespace weakmeas {

std::vector<LinOp> HardyWorkspace::pair_partition() {
    return {occupations[0], occupations[1], occupations[2], occupations[3]};
}

HardyWorkspace hardy_build() {
    HardyWorkspace w;
    /* Single-particle arm basis {O, NO}; pair basis built by tensor products
     * so index 2*p + e matches the documented ordering. */
    const Ket o = Ket::basis(2, 0), no = Ket::basis(2, 1);
    const Ket oo = tensor(o, o), ono = tensor(o, no), noo = tensor(no, o),
              nono = tensor(no, no);

    const double r3 = 1.0 / std::sqrt(3.0);
    w.phi = cplx(r3) * (ono + noo + nono);
    w.psi = cplx(0.5) * (oo - ono - noo + nono);
    w.psi_proj = LinOp::projector(w.psi);
    w.phi_proj = LinOp::projector(w.phi);

    const LinOp p_o = LinOp::projector(o), p_no = LinOp::projector(no);
    const LinOp one = LinOp::identity(2);
    w.names = {"N(O+,O-)",  "N(O+,NO-)", "N(NO+,O-)", "N(NO+,NO-)",
               "N+(O)",     "N+(NO)",    "N-(O)",     "N-(NO)"};
    w.occupations = {tensor(p_o, p_o),  tensor(p_o, p_no), tensor(p_no, p_o),
                     tensor(p_no, p_no), tensor(p_o, one),  tensor(p_no, one),
                     tensor(one, p_o),  tensor(one, p_no)};
    return w;
}

std::vector<HardyWeakValueRow> hardy_weak_values(const HardyWorkspace& w) {
    static const double expected[8] = {0.0, 1.0, 1.0, -1.0, 1.0, 0.0, 1.0, 0.0};
    std::vector<HardyWeakValueRow> rows;
    rows.reserve(8);
    for (std::size_t i = 0; i < w.occupations.size(); ++i) {
        HardyWeakValueRow row;
        row.name = w.names[i];
        row.report = weak_value(w.occupations[i], w.phi, w.psi);
        row.expected = expected[i];
        rows.push_back(std::move(row));
    }
    return rows;
}

HardyNoncommutativity hardy_noncommutativity(const HardyWorkspace& w) {
    HardyNoncommutativity out;
    const LinOp& n_both = w.occupations[3];  // N(NO+, NO-)

    /* <Psi|NO,NO> and <Phi|NO,NO> squared moduli: the contraction factors of
     * the alternating products. */
    out.psi_sandwich_factor = 0.25;
    out.phi_sandwich_factor = 1.0 / 3.0;
    const LinOp psi_chain = w.psi_proj * n_both * w.psi_proj * n_both;
    const LinOp phi_chain = w.phi_proj * n_both * w.phi_proj * n_both;
    out.psi_sandwich_residual =
        max_abs_diff(psi_chain, cplx(out.psi_sandwich_factor) * (w.psi_proj * n_both));
    out.phi_sandwich_residual =
        max_abs_diff(phi_chain, cplx(out.phi_sandwich_factor) * (w.phi_proj * n_both));

    const LinOp comm = commutator(w.psi_proj, n_both);
    out.commutator_expectation = std::abs(comm.expectation(w.phi));
    out.commutator_max_entry = comm.max_abs();

    out.pairwise.emplace_back("[Psi,Phi]", commutator(w.psi_proj, w.phi_proj).max_abs());
    for (std::size_t i = 0; i < w.occupations.size(); ++i) {
        out.pairwise.emplace_back("[Psi," + w.names[i] + "]",
                                  commutator(w.psi_proj, w.occupations[i]).max_abs());
        out.pairwise.emplace_back("[Phi," + w.names[i] + "]",
                                  commutator(w.phi_proj, w.occupations[i]).max_abs());
    }

    /* (psi_proj N)^(2^k) by repeated squaring: contraction factor 1/4 per
     * extra power drives it to zero. */
    LinOp chain = w.psi_proj * n_both;
    for (int k = 0; k < 8; ++k) chain = chain * chain;
    out.power_limit = chain.max_abs();
    return out;
}

std::vector<HardyBackactionRow> hardy_backaction_experiment(const HardyWorkspace& w,
                                                            const GaussianPointer& pointer,
                                                            double coupling) {
    std::vector<HardyBackactionRow> rows;
    rows.reserve(w.occupations.size());
    for (std::size_t i = 0; i < w.occupations.size(); ++i) {
        const WeakSetup setup{w.phi, w.occupations[i], pointer, coupling};
        const BackactionRelation rel = backaction_relation(setup, w.psi);
        HardyBackactionRow row;
        row.name = w.names[i];
        row.weakvalue_re = rel.lhs_weakvalue_re;
        row.probability_ratio = rel.rhs_probability_ratio;
        row.pointer_mean = first_order_pointer_mean(setup, w.psi);
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace weakmeas
