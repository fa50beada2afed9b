#pragma once

#include "builder.hpp"

namespace gbethe {

// Two-factor splitting identity: the vector on a composite chain equals a
// sum over level-set splits of tensor products of the factor-chain vectors,
// dressed with vacuum eigenvalues of the opposite factor. The first model
// receives the shifted eigenvalue indices.
template <class S>
GradedState<S> coproduct_split(const SpinChainModel<S>& first, const SpinChainModel<S>& second,
                               const ParamTable<S>& t, Flavor flavor)
{
    const auto& gp = first.grading;
    if (gp.m != second.grading.m || gp.n != second.grading.n || gp.c != second.grading.c)
        throw ContractError("coproduct_split: factor models disagree on the grading");
    require_table(gp, t);

    const int levels = gp.levels();
    GradedState<S> out(first.length + second.length);

    std::vector<unsigned long> masks(levels, 0);
    for (;;) {
        ParamTable<S> part_one(levels), part_two(levels);
        for (int s = 0; s < levels; ++s)
            for (std::size_t k = 0; k < t[s].size(); ++k)
                (masks[s] >> k & 1 ? part_one[s] : part_two[s]).push_back(t[s][k]);

        S coeff(1);
        for (int s = 1; s <= levels; ++s)
            coeff *= flavor == Flavor::standard
                ? f_norm(gp, s, part_two[s - 1], part_one[s - 1])
                : f_norm_hat(gp, s, part_two[s - 1], part_one[s - 1]);
        if (flavor == Flavor::mirror
            && (part_one[gp.m - 1].size() * part_two[gp.m - 1].size()) % 2)
            coeff = -coeff;
        for (int s = 1; s < levels; ++s)
            coeff /= f_set(gp, gp.parity(s + 1), part_two[s], part_one[s - 1]);
        for (int s = 1; s <= levels; ++s) {
            coeff *= lambda_set(first, s + 1, part_two[s - 1]);
            coeff *= lambda_set(second, s, part_one[s - 1]);
        }

        GradedState<S> term = tensor_product(build_bethe_vector(first, part_one, flavor),
                                             build_bethe_vector(second, part_two, flavor));
        term.scale(coeff);
        out += term;

        int s = 0;
        while (s < levels) {
            masks[s] += 1;
            if (masks[s] < (1ul << t[s].size()))
                break;
            masks[s] = 0;
            ++s;
        }
        if (s == levels)
            break;
    }
    return out;
}

} // namespace gbethe
