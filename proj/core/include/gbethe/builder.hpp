#pragma once

#include "chain.hpp"
#include "partitions.hpp"

#include <vector>

namespace gbethe {

// Parameter table: one ordered set per nesting level 1..m+n-1.
template <class S>
using ParamTable = std::vector<ParameterSet<S>>;

template <class S>
std::vector<int> table_cardinalities(const ParamTable<S>& t)
{
    std::vector<int> r(t.size());
    for (std::size_t l = 0; l < t.size(); ++l)
        r[l] = static_cast<int>(t[l].size());
    return r;
}

template <class S>
void require_table(const GradingProfile<S>& gp, const ParamTable<S>& t)
{
    if (static_cast<int>(t.size()) != gp.levels())
        throw ContractError("parameter table: need one set per level");
    for (const auto& level : t)
        require_distinct(level, "parameter table level");
}

// Symmetric normalized product of equal odd entries applied to a state.
// Upper entries divide by Delta_h of the arguments, lower by Delta'_h.
template <class S>
GradedState<S> odd_product_apply(const SpinChainModel<S>& model, int i, int j,
                                 const ParameterSet<S>& ws, const GradedState<S>& psi)
{
    const auto& gp = model.grading;
    if (((gp.parity(i) + gp.parity(j)) & 1) == 0)
        throw ContractError("odd_product_apply: entry is even");
    auto h = [&](const S& a, const S& b) { return kern_h(gp, 0, a, b); };
    S norm = (i < j) ? delta_product<S>(h, ws) : delta_prime_product<S>(h, ws);
    if (is_zero(norm))
        throw PoleError("odd_product_apply: h normalization vanishes");
    GradedState<S> st = psi;
    for (auto it = ws.rbegin(); it != ws.rend(); ++it)
        st = monodromy_entry_apply(model, i, j, *it, st);
    st.scale(S(S(1) / norm));
    return st;
}

namespace detail {

template <class S>
ParameterSet<S> cell_values(const ParamTable<S>& t, const PartitionTable& table, int level, const CellKey& key)
{
    ParameterSet<S> out;
    if (const auto* idx = table.cell(level, key))
        for (int pos : *idx)
            out.push_back(t[level - 1][pos]);
    return out;
}

enum class Coupler { none, k0, k1, c, c_hat };

// Coupler attached to the adjacent cell pair (upper, lower) of one column.
// upper is the higher level of the two; the standard flavor keys on the
// upper level, the mirror flavor on the lower one.
inline Coupler coupler_for(Flavor flavor, int m, const CellKey& col, int upper_level)
{
    int lower_level = upper_level - 1;
    if (upper_level <= col.q || upper_level > col.qp)
        return Coupler::none;
    if (flavor == Flavor::standard) {
        if (col.qp <= m - 1)
            return Coupler::k0;
        if (col.q >= m)
            return Coupler::k1;
        return upper_level <= m ? Coupler::c : Coupler::k1;
    }
    if (col.qp <= m)
        return Coupler::k0;
    if (col.q >= m + 1)
        return Coupler::k1;
    return lower_level <= m - 1 ? Coupler::k0 : Coupler::c_hat;
}

template <class S>
S apply_coupler(const GradingProfile<S>& gp, Coupler kind, const ParameterSet<S>& upper,
                const ParameterSet<S>& lower)
{
    switch (kind) {
    case Coupler::k0: return izergin(gp, 0, upper, lower);
    case Coupler::k1: return izergin(gp, 1, upper, lower);
    case Coupler::c: return cauchy_norm(gp, upper, lower);
    case Coupler::c_hat: return cauchy_norm_hat(gp, upper, lower);
    case Coupler::none: return S(1);
    }
    return S(1);
}

} // namespace detail

// Scalar weight of one partition table in the nested sum.
template <class S>
S partition_coefficient(const GradingProfile<S>& gp, const ParamTable<S>& t,
                        const PartitionTable& table, Flavor flavor)
{
    const int levels = gp.levels();
    const int m = gp.m;
    S coeff(1);

    // adjacent-level pair suppression
    for (int l = 1; l < levels; ++l) {
        for (const CellKey& a : level_cells(levels, l)) {
            ParameterSet<S> va = detail::cell_values(t, table, l, a);
            if (va.empty())
                continue;
            for (const CellKey& b : level_cells(levels, l + 1)) {
                if (!pair_precedes_eq(flavor, a, b))
                    continue;
                ParameterSet<S> vb = detail::cell_values(t, table, l + 1, b);
                if (vb.empty())
                    continue;
                coeff /= f_set(gp, gp.parity(l + 1), vb, va);
            }
        }
    }

    // same-level pair factors; on the boundary level the earlier cell comes
    // first, except mirror pairs sharing a column group, which swap
    for (int l = 1; l <= levels; ++l) {
        auto cells = level_cells(levels, l);
        for (const CellKey& a : cells)
            for (const CellKey& b : cells) {
                if (!pair_precedes(flavor, a, b))
                    continue;
                ParameterSet<S> va = detail::cell_values(t, table, l, a);
                ParameterSet<S> vb = detail::cell_values(t, table, l, b);
                if (va.empty() || vb.empty())
                    continue;
                if (l == m) {
                    bool swap_pair = flavor == Flavor::mirror && a.qp == b.qp;
                    coeff *= swap_pair ? g_set(gp, 0, vb, va) : g_set(gp, 0, va, vb);
                } else
                    coeff *= f_set(gp, flavor == Flavor::standard ? gp.parity(l) : gp.parity(l + 1), vb, va);
            }
    }

    // couplers down each column
    for (const CellKey& col : all_cells(levels))
        for (int k = col.q + 1; k <= col.qp; ++k) {
            auto kind = detail::coupler_for(flavor, m, col, k);
            if (kind == detail::Coupler::none)
                continue;
            ParameterSet<S> upper = detail::cell_values(t, table, k, col);
            ParameterSet<S> lower = detail::cell_values(t, table, k - 1, col);
            if (upper.empty() && lower.empty())
                continue;
            coeff *= detail::apply_coupler(gp, kind, upper, lower);
        }

    return coeff;
}

// Operator word of one partition table, diagonal letters trailing.
template <class S>
Word<S> partition_word(const GradingProfile<S>& gp, const ParamTable<S>& t,
                       const PartitionTable& table, Flavor flavor)
{
    const int levels = gp.levels();
    const int m = gp.m;
    Word<S> word;

    auto push = [&](int i, int j, ParameterSet<S> args) {
        if (args.empty())
            return;
        Letter<S> l;
        l.i = i;
        l.j = j;
        l.normalized = ((gp.parity(i) + gp.parity(j)) & 1) != 0;
        l.args = std::move(args);
        word.letters.push_back(std::move(l));
    };

    if (flavor == Flavor::standard) {
        for (int q = 1; q <= m; ++q)
            for (int col_end = levels; col_end >= q; --col_end)
                push(q, col_end + 1, detail::cell_values(t, table, q, {q, col_end}));
        for (int q = m + 1; q <= levels; ++q)
            for (int col_end = levels; col_end >= q; --col_end)
                push(q, col_end + 1, detail::cell_values(t, table, q, {q, col_end}));
        for (int l = 2; l <= levels; ++l)
            for (int q = 1; q <= l - 1; ++q)
                for (int qp = l; qp <= levels; ++qp)
                    push(l, l, detail::cell_values(t, table, l, {q, qp}));
    } else {
        for (int col_end = levels; col_end >= m; --col_end)
            for (int q = 1; q <= col_end; ++q)
                push(q, col_end + 1, detail::cell_values(t, table, col_end, {q, col_end}));
        for (int col_end = m - 1; col_end >= 1; --col_end)
            for (int q = 1; q <= col_end; ++q)
                push(q, col_end + 1, detail::cell_values(t, table, col_end, {q, col_end}));
        for (int l = 1; l <= levels - 1; ++l)
            for (int qp = l + 1; qp <= levels; ++qp)
                for (int q = 1; q <= l; ++q)
                    push(l + 1, l + 1, detail::cell_values(t, table, l, {q, qp}));
    }
    return word;
}

// Full partition sum as a list of weighted words.
template <class S>
std::vector<Word<S>> pre_bethe_words(const GradingProfile<S>& gp, const ParamTable<S>& t, Flavor flavor)
{
    require_table(gp, t);
    std::vector<Word<S>> out;
    enumerate_partition_tables(gp.levels(), table_cardinalities(t), [&](const PartitionTable& table) {
        Word<S> w = partition_word(gp, t, table, flavor);
        w.coeff = partition_coefficient(gp, t, table, flavor);
        out.push_back(std::move(w));
    });
    return out;
}

// Applies one weighted word to the vacuum. Trailing diagonal letters fold
// into vacuum eigenvalues before any operator acts.
template <class S>
GradedState<S> word_apply(const SpinChainModel<S>& model, const Word<S>& word)
{
    S coeff = word.coeff;
    std::size_t end = word.letters.size();
    while (end > 0 && word.letters[end - 1].i == word.letters[end - 1].j) {
        const Letter<S>& l = word.letters[end - 1];
        coeff *= lambda_set(model, l.i, l.args);
        --end;
    }
    GradedState<S> st = vacuum(model);
    for (std::size_t k = end; k-- > 0;) {
        const Letter<S>& l = word.letters[k];
        if (l.normalized) {
            st = odd_product_apply(model, l.i, l.j, l.args, st);
        } else {
            for (auto it = l.args.rbegin(); it != l.args.rend(); ++it)
                st = monodromy_entry_apply(model, l.i, l.j, *it, st);
        }
    }
    st.scale(coeff);
    return st;
}

// Applies one weighted word to the covacuum from the left. Leading diagonal
// letters fold into vacuum eigenvalues.
template <class S>
GradedCoState<S> word_apply_costate(const SpinChainModel<S>& model, const Word<S>& word)
{
    S coeff = word.coeff;
    std::size_t begin = 0;
    while (begin < word.letters.size() && word.letters[begin].i == word.letters[begin].j) {
        const Letter<S>& l = word.letters[begin];
        coeff *= lambda_set(model, l.i, l.args);
        ++begin;
    }
    GradedCoState<S> bra = covacuum(model);
    for (std::size_t k = begin; k < word.letters.size(); ++k) {
        const Letter<S>& l = word.letters[k];
        if (l.normalized) {
            const auto& gp = model.grading;
            auto h = [&](const S& a, const S& b) { return kern_h(gp, 0, a, b); };
            S norm = (l.i < l.j) ? delta_product<S>(h, l.args) : delta_prime_product<S>(h, l.args);
            if (is_zero(norm))
                throw PoleError("word_apply_costate: h normalization vanishes");
            for (const S& w : l.args)
                bra = monodromy_entry_apply_costate(model, l.i, l.j, w, bra);
            bra.scale(S(S(1) / norm));
        } else {
            for (const S& w : l.args)
                bra = monodromy_entry_apply_costate(model, l.i, l.j, w, bra);
        }
    }
    bra.scale(coeff);
    return bra;
}

template <class S>
GradedState<S> build_bethe_vector(const SpinChainModel<S>& model, const ParamTable<S>& t, Flavor flavor)
{
    GradedState<S> out(model.length);
    for (const Word<S>& w : pre_bethe_words(model.grading, t, flavor))
        out += word_apply(model, w);
    return out;
}

template <class S>
GradedState<S> build_bethe_vector(const SpinChainModel<S>& model, const ParamTable<S>& t)
{
    return build_bethe_vector(model, t, Flavor::standard);
}

template <class S>
GradedState<S> build_bethe_vector_hat(const SpinChainModel<S>& model, const ParamTable<S>& t)
{
    return build_bethe_vector(model, t, Flavor::mirror);
}

// Dual vector through the antimorphism, evaluated on the covacuum.
template <class S>
GradedCoState<S> build_dual_bethe_vector(const SpinChainModel<S>& model, const ParamTable<S>& t, Flavor flavor)
{
    GradedCoState<S> out(model.length);
    for (const Word<S>& w : pre_bethe_words(model.grading, t, flavor))
        out += word_apply_costate(model, psi_on_word(model.grading, w));
    return out;
}

// Order-preserving relabeling onto the flipped grading. Entry indices are
// reflected and each letter picks up a sign per argument.
template <class S>
Word<S> morphism_map_word(const GradingProfile<S>& gp_src, const Word<S>& w)
{
    int dim = gp_src.dim();
    Word<S> out;
    out.coeff = w.coeff;
    out.letters.reserve(w.letters.size());
    for (const Letter<S>& l : w.letters) {
        int sgn = (gp_src.parity(l.i) * gp_src.parity(l.j) + gp_src.parity(l.j) + 1) & 1;
        if (sgn && (l.args.size() & 1))
            out.coeff = -out.coeff;
        Letter<S> nl;
        nl.i = dim + 1 - l.j;
        nl.j = dim + 1 - l.i;
        nl.args = l.args;
        nl.normalized = l.normalized;
        out.letters.push_back(std::move(nl));
    }
    return out;
}

// Closed-form variants on two levels with one even and one odd set.
enum class Gl21Form { standard, mirror, dual_standard, dual_mirror };

// Direct transcription of the two-level closed formulas: a sum over splits
// of the even set u and the odd set v into matching halves. Returns a ket
// for the standard and mirror forms, a bra for the dual ones.
template <class S>
GradedState<S> fast_path_gl21(const SpinChainModel<S>& model, const ParameterSet<S>& us,
                              const ParameterSet<S>& vs, Gl21Form form)
{
    const auto& gp = model.grading;
    if (gp.m != 2 || gp.n != 1)
        throw ContractError("fast_path_gl21: grading must be gl(2|1)");
    require_distinct(us, "fast_path_gl21 u");
    require_distinct(vs, "fast_path_gl21 v");

    auto f0 = [&](const S& a, const S& b) { return kern_f(gp, 0, a, b); };
    auto g0 = [&](const S& a, const S& b) { return kern_g(gp, 0, a, b); };
    auto h0 = [&](const S& a, const S& b) { return kern_h(gp, 0, a, b); };

    const std::size_t a = us.size(), b = vs.size();
    const bool dual = form == Gl21Form::dual_standard || form == Gl21Form::dual_mirror;
    const bool mirror = form == Gl21Form::mirror || form == Gl21Form::dual_mirror;

    S global = S(1)
        / pair_product<S>(f0, vs, us);
    if (dual && (b * (b - 1) / 2) % 2)
        global = -global;

    GradedState<S> out(model.length);
    for (unsigned long mask_u = 0; mask_u < (1ul << a); ++mask_u) {
        ParameterSet<S> u1, u2;
        for (std::size_t p = 0; p < a; ++p)
            (mask_u >> p & 1 ? u1 : u2).push_back(us[p]);
        for (unsigned long mask_v = 0; mask_v < (1ul << b); ++mask_v) {
            ParameterSet<S> v1, v2;
            for (std::size_t p = 0; p < b; ++p)
                (mask_v >> p & 1 ? v1 : v2).push_back(vs[p]);
            if (u1.size() != v1.size())
                continue;

            S coeff = global;
            coeff *= pair_product<S>(f0, u1, u2);
            coeff *= mirror ? pair_product<S>(g0, v2, v1) : pair_product<S>(g0, v1, v2);
            if (mirror) {
                coeff *= izergin(gp, 0, v1, u1);
            } else {
                coeff *= pair_product<S>(g0, v1, u1);
                coeff *= same_set_product<S>(h0, u1);
            }

            Word<S> word;
            word.coeff = coeff;
            auto push = [&](int i, int j, const ParameterSet<S>& args, bool normalized) {
                if (args.empty())
                    return;
                word.letters.push_back({i, j, args, normalized});
            };
            if (!dual && !mirror) {
                push(1, 3, u1, true);
                push(1, 2, u2, false);
                push(2, 3, v2, true);
                push(2, 2, v1, false);
            } else if (!dual && mirror) {
                push(1, 3, v1, true);
                push(2, 3, v2, true);
                push(1, 2, u2, false);
                push(2, 2, u1, false);
            } else if (dual && !mirror) {
                push(2, 2, v1, false);
                push(3, 2, v2, true);
                push(2, 1, u2, false);
                push(3, 1, u1, true);
            } else {
                push(2, 2, u1, false);
                push(2, 1, u2, false);
                push(3, 2, v2, true);
                push(3, 1, v1, true);
            }
            out += dual ? word_apply_costate(model, word) : word_apply(model, word);
        }
    }
    return out;
}

} // namespace gbethe
