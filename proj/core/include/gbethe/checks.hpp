#pragma once

#include "builder.hpp"

namespace gbethe {

// Full-operator exchange check with two embedded auxiliary slots: compares
// R_{01}(u,v) T_0(u) T_1(v) and T_1(v) T_0(u) R_{01}(u,v) on every basis
// word of aux x aux x chain. Exact equality.
template <class S>
bool rtt_exchange_holds(const SpinChainModel<S>& model, const S& u, const S& v)
{
    const auto& gp = model.grading;
    const int dim = gp.dim();
    const int width = model.length + 2;
    std::vector<int> sites(model.length);
    for (int k = 0; k < model.length; ++k)
        sites[k] = k + 2;

    BasisWord w(width, 1);
    for (;;) {
        GradedState<S> psi = basis_state<S>(width, w);
        GradedState<S> lhs = monodromy_sweep(model, v, psi, 1, sites);
        lhs = monodromy_sweep(model, u, std::move(lhs), 0, sites);
        lhs = r_matrix_apply(gp, u, v, lhs, 0, 1);

        GradedState<S> rhs = r_matrix_apply(gp, u, v, psi, 0, 1);
        rhs = monodromy_sweep(model, u, std::move(rhs), 0, sites);
        rhs = monodromy_sweep(model, v, std::move(rhs), 1, sites);

        if (!(lhs == rhs))
            return false;

        int p = width - 1;
        while (p >= 0 && w[p] == dim)
            w[p--] = 1;
        if (p < 0)
            break;
        w[p] += 1;
    }
    return true;
}

} // namespace gbethe
