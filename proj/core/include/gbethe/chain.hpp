#pragma once

#include "kernel.hpp"
#include "tensor.hpp"
#include "word.hpp"

#include <vector>

namespace gbethe {

// Finite inhomogeneous chain with a diagonal twist. Sites carry the defining
// representation; the monodromy is realized by sweeping graded R factors
// against an auxiliary factor.
template <class S>
struct SpinChainModel {
    GradingProfile<S> grading;
    int length = 0;
    std::vector<S> inhomogeneities;
    std::vector<S> twist;

    SpinChainModel() = default;

    SpinChainModel(GradingProfile<S> gp, int len, std::vector<S> zs, std::vector<S> kappa)
        : grading(std::move(gp)), length(len), inhomogeneities(std::move(zs)), twist(std::move(kappa))
    {
        if (length < 0)
            throw ContractError("SpinChainModel: negative length");
        if (static_cast<int>(inhomogeneities.size()) != length)
            throw ContractError("SpinChainModel: need one inhomogeneity per site");
        require_distinct(inhomogeneities, "SpinChainModel inhomogeneities");
        if (twist.empty())
            twist.assign(grading.dim(), S(1));
        if (static_cast<int>(twist.size()) != grading.dim())
            throw ContractError("SpinChainModel: twist size must equal m+n");
        for (const S& k : twist)
            if (is_zero(k))
                throw ContractError("SpinChainModel: twist entries must be nonzero");
        if (is_zero(grading.c))
            throw ContractError("SpinChainModel: kernel constant must be nonzero");
    }

    int dim() const { return grading.dim(); }
};

// Rebuilds a rational model over another scalar field, typically the
// multiprecision floats of the root solver.
template <class To>
SpinChainModel<To> model_from_rational(const SpinChainModel<Rational>& src)
{
    GradingProfile<To> gp;
    gp.m = src.grading.m;
    gp.n = src.grading.n;
    gp.c = scalar_from_rational<To>(src.grading.c);
    std::vector<To> zs, kappa;
    for (const Rational& z : src.inhomogeneities)
        zs.push_back(scalar_from_rational<To>(z));
    for (const Rational& k : src.twist)
        kappa.push_back(scalar_from_rational<To>(k));
    return SpinChainModel<To>(gp, src.length, std::move(zs), std::move(kappa));
}

template <class S>
GradedState<S> vacuum(const SpinChainModel<S>& model)
{
    return basis_state<S>(model.length, BasisWord(model.length, 1));
}

template <class S>
GradedCoState<S> covacuum(const SpinChainModel<S>& model)
{
    return basis_state<S>(model.length, BasisWord(model.length, 1));
}

// Vacuum eigenvalue of the diagonal entry i.
template <class S>
S lambda_value(const SpinChainModel<S>& model, int i, const S& u)
{
    if (i < 1 || i > model.dim())
        throw ContractError("lambda_value: index outside 1..m+n");
    S acc = model.twist[i - 1];
    if (i == 1)
        for (const S& z : model.inhomogeneities)
            acc *= kern_f(model.grading, 0, u, z);
    return acc;
}

template <class S>
S lambda_set(const SpinChainModel<S>& model, int i, const ParameterSet<S>& us)
{
    S acc(1);
    for (const S& u : us)
        acc *= lambda_value(model, i, u);
    return acc;
}

// Core sweep: multiplies the state by the twisted R product against the
// auxiliary factor at aux_pos, acting on the listed site positions in order
// site_pos[0] first.
template <class S>
GradedState<S> monodromy_sweep(const SpinChainModel<S>& model, const S& u, GradedState<S> st,
                               int aux_pos, const std::vector<int>& site_pos)
{
    for (std::size_t k = 0; k < site_pos.size(); ++k) {
        const S& z = model.inhomogeneities[k];
        S d = u - z;
        if (is_zero(d))
            throw PoleError("monodromy: spectral parameter hits an inhomogeneity");
        S g = model.grading.c / d;
        GradedState<S> swapped = permutation_apply(model.grading, st, aux_pos, site_pos[k]);
        swapped.scale(g);
        st += swapped;
    }
    GradedState<S> twisted(st.width);
    for (const auto& [w, c] : st.terms)
        twisted.add(w, S(c * model.twist[w[aux_pos] - 1]));
    return twisted;
}

// T_{ij}(u) applied to a chain state: feed e_j into the auxiliary slot,
// sweep, and read off the e_i component with the block-extraction sign.
template <class S>
GradedState<S> monodromy_entry_apply(const SpinChainModel<S>& model, int i, int j, const S& u,
                                     const GradedState<S>& psi)
{
    if (psi.width != model.length)
        throw ContractError("monodromy_entry_apply: state width is not the chain length");
    if (i < 1 || i > model.dim() || j < 1 || j > model.dim())
        throw ContractError("monodromy_entry_apply: entry indices outside 1..m+n");

    GradedState<S> full(model.length + 1);
    for (const auto& [w, c] : psi.terms) {
        BasisWord wn(model.length + 1);
        wn[0] = j;
        std::copy(w.begin(), w.end(), wn.begin() + 1);
        full.add(wn, c);
    }
    std::vector<int> sites(model.length);
    for (int k = 0; k < model.length; ++k)
        sites[k] = k + 1;
    full = monodromy_sweep(model, u, std::move(full), 0, sites);

    const auto& gp = model.grading;
    int sgn = ((gp.parity(i) + gp.parity(j)) * gp.parity(j)) & 1;
    GradedState<S> out(model.length);
    for (const auto& [w, c] : full.terms) {
        if (w[0] != i)
            continue;
        BasisWord wn(w.begin() + 1, w.end());
        out.add(wn, sgn ? S(-c) : c);
    }
    return out;
}

template <class S>
int basis_rank(const SpinChainModel<S>& model, const BasisWord& w)
{
    int r = 0;
    for (int v : w)
        r = r * model.dim() + (v - 1);
    return r;
}

template <class S>
BasisWord basis_unrank(const SpinChainModel<S>& model, int rank)
{
    BasisWord w(model.length);
    for (int k = model.length - 1; k >= 0; --k) {
        w[k] = rank % model.dim() + 1;
        rank /= model.dim();
    }
    return w;
}

// Dense matrix of one entry operator over the ranked chain basis,
// mat[a][b] = coefficient of basis a in the image of basis b.
template <class S>
std::vector<std::vector<S>> monodromy_entry_matrix(const SpinChainModel<S>& model, int i, int j, const S& u)
{
    int dim_total = 1;
    for (int k = 0; k < model.length; ++k)
        dim_total *= model.dim();
    std::vector<std::vector<S>> mat(dim_total, std::vector<S>(dim_total, S(0)));
    for (int b = 0; b < dim_total; ++b) {
        GradedState<S> img = monodromy_entry_apply(model, i, j, u, basis_state<S>(model.length, basis_unrank(model, b)));
        for (const auto& [w, c] : img.terms)
            mat[basis_rank(model, w)][b] = c;
    }
    return mat;
}

// Right action on a costate: (bra T_{ij}(u)) paired against e_b equals the
// bra paired against T_{ij}(u) e_b.
template <class S>
GradedCoState<S> monodromy_entry_apply_costate(const SpinChainModel<S>& model, int i, int j, const S& u,
                                               const GradedCoState<S>& bra)
{
    auto mat = monodromy_entry_matrix(model, i, j, u);
    GradedCoState<S> out(model.length);
    for (const auto& [w, c] : bra.terms) {
        int a = basis_rank(model, w);
        for (std::size_t b = 0; b < mat.size(); ++b) {
            if (is_zero(mat[a][b]))
                continue;
            out.add(basis_unrank(model, static_cast<int>(b)), S(c * mat[a][b]));
        }
    }
    return out;
}

// t(u) = str T(u) = sum_i (-1)^{[i]} T_{ii}(u)
template <class S>
GradedState<S> transfer_matrix_apply(const SpinChainModel<S>& model, const S& u, const GradedState<S>& psi)
{
    GradedState<S> out(model.length);
    for (int i = 1; i <= model.dim(); ++i) {
        GradedState<S> part = monodromy_entry_apply(model, i, i, u, psi);
        if (model.grading.parity(i))
            part.scale(S(-1));
        out += part;
    }
    return out;
}

} // namespace gbethe
