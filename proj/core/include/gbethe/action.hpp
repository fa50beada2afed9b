#pragma once

#include "builder.hpp"
#include "ratfunc.hpp"

#include <functional>
#include <vector>

namespace gbethe {

inline long factorial(int k)
{
    long acc = 1;
    for (int v = 2; v <= k; ++v)
        acc *= v;
    return acc;
}

// Sign prefactors of the summation window (p,q) for the entry (i,j).
template <class S>
int phase_phi_q(const GradingProfile<S>& gp, int i, int j, int q)
{
    if (q == j)
        return 1;
    int e = (gp.parity(i) + gp.parity(j)) * gp.parity(q) + gp.parity(i) * gp.parity(j);
    return (e & 1) ? -1 : 1;
}

template <class S>
int phase_eps_p(const GradingProfile<S>& gp, int i, int p)
{
    if (p == i)
        return 1;
    return (1 + gp.parity(i)) & 1 ? -1 : 1;
}

template <class S>
int phase_phi_hat_p(const GradingProfile<S>& gp, int i, int p)
{
    return phase_eps_p(gp, i, p);
}

template <class S>
int phase_eps_hat_q(const GradingProfile<S>& gp, int j, int p, int q)
{
    if (q == j)
        return 1;
    int e = (gp.parity(j) + gp.parity(p)) * gp.parity(q) + gp.parity(j) * gp.parity(p);
    return (e & 1) ? -1 : 1;
}

namespace detail {

// Shared evaluation of one window term. Levels p..i-1 lose the element
// picked by left_idx and the element's value chains through the g factors;
// levels j..q-1 mirror this on the right. Middle levels only receive z.
template <class S>
struct WindowTerm {
    S weight;
    ParamTable<S> reduced;
};

template <class S>
WindowTerm<S> evaluate_window_term(const SpinChainModel<S>& model, int i, int j, const S& z,
                                   const ParamTable<S>& t, int p, int q,
                                   const std::vector<int>& left_idx, const std::vector<int>& right_idx)
{
    const auto& gp = model.grading;
    const int m = gp.m;
    const int levels = gp.levels();

    auto full = [&](int s) -> const ParameterSet<S>& {
        static const ParameterSet<S> empty;
        return (s >= 1 && s <= levels) ? t[s - 1] : empty;
    };

    std::vector<S> w(levels + 2), x(levels + 2);
    std::vector<ParameterSet<S>> red_left(levels + 2), red_right(levels + 2);
    for (int s = p; s <= i - 1; ++s) {
        int pos = left_idx[s - p];
        w[s] = t[s - 1][pos];
        red_left[s] = t[s - 1];
        red_left[s].erase(red_left[s].begin() + pos);
    }
    for (int s = j; s <= q - 1; ++s) {
        int pos = right_idx[s - j];
        x[s] = t[s - 1][pos];
        red_right[s] = t[s - 1];
        red_right[s].erase(red_right[s].begin() + pos);
    }

    // product of the removal factors
    S dd(1);
    for (int s = p; s <= i - 1; ++s) {
        dd *= f_set(gp, gp.parity(s), {w[s]}, red_left[s]);
        if (s == m) {
            S denom = h_set(gp, 0, {w[s]}, red_left[s]);
            if ((static_cast<int>(full(s).size()) - 1) & 1)
                denom = -denom;
            dd /= denom;
        }
    }
    for (int s = j; s <= q - 1; ++s) {
        dd *= f_set(gp, gp.parity(s), red_right[s], {x[s]});
        if (s == m)
            dd /= h_set(gp, 0, red_right[s], {x[s]});
    }

    // kinematic factor
    S y = f_set(gp, gp.parity(p), {z}, full(p - 1));
    y *= f_set(gp, gp.parity(q), full(q), {z});
    if (m >= p && m <= i - 1)
        y *= h_set(gp, 0, red_left[m], {z});
    else if (m >= i && m <= j - 1)
        y *= h_set(gp, 0, full(m), {z});
    else if (m >= j && m <= q - 1)
        y *= h_set(gp, 0, red_right[m], {z});
    if (p < i) {
        y *= kern_g(gp, 0, z, w[p]);
        for (int s = p; s <= i - 2; ++s)
            y *= kern_g(gp, gp.parity(s + 1), w[s + 1], w[s]);
        y /= f_set(gp, gp.parity(p), {w[p]}, full(p - 1));
        for (int s = p; s <= i - 2; ++s)
            y /= f_set(gp, gp.parity(s + 1), {w[s + 1]}, full(s));
    }
    if (q > j) {
        y *= kern_g(gp, 0, z, x[q - 1]);
        for (int s = j; s <= q - 2; ++s)
            y *= kern_g(gp, gp.parity(s + 1), x[s + 1], x[s]);
        for (int s = j; s <= q - 1; ++s)
            y /= f_set(gp, gp.parity(s + 1), full(s + 1), {x[s]});
    }

    // vacuum eigenvalue ratio
    S lam(1);
    for (int s = p; s <= i - 1; ++s)
        lam *= lambda_value(model, s + 1, w[s]);
    for (int s = j; s <= q - 1; ++s)
        lam *= lambda_value(model, s, x[s]);
    if (p == i && q == j && i == j)
        lam *= lambda_value(model, i, z);
    int lo = (p < i) ? p + 1 : i + 1;
    int hi = (q > j) ? q - 1 : j - 1;
    for (int s = lo; s <= hi; ++s)
        lam /= lambda_value(model, s, z);

    WindowTerm<S> term;
    term.weight = dd * y * lam;
    term.reduced = t;
    for (int s = p; s <= i - 1; ++s) {
        term.reduced[s - 1] = red_left[s];
        term.reduced[s - 1].push_back(z);
    }
    for (int s = i; s <= j - 1; ++s)
        term.reduced[s - 1].push_back(z);
    for (int s = j; s <= q - 1; ++s) {
        term.reduced[s - 1] = red_right[s];
        term.reduced[s - 1].push_back(z);
    }
    return term;
}

// The touched window appends the same value to consecutive levels, where
// the partition sum degenerates term by term while its total stays finite.
// Staggers the copies along one line and takes the exact limit.
template <class S>
GradedState<S> build_at_collision(const SpinChainModel<S>& model, const ParamTable<S>& reduced,
                                  int first_level, int last_level)
{
    using RF = RatFunc<S>;
    GradingProfile<RF> gp;
    gp.m = model.grading.m;
    gp.n = model.grading.n;
    gp.c = RF(model.grading.c);
    std::vector<RF> zs, kappa;
    for (const S& z : model.inhomogeneities)
        zs.push_back(RF(z));
    for (const S& k : model.twist)
        kappa.push_back(RF(k));
    SpinChainModel<RF> lifted(gp, model.length, std::move(zs), std::move(kappa));

    ParamTable<RF> t(reduced.size());
    for (std::size_t l = 0; l < reduced.size(); ++l)
        for (const S& v : reduced[l])
            t[l].push_back(RF(v));
    for (int s = first_level + 1; s <= last_level; ++s)
        t[s - 1].back() += RF(S(s - first_level)) * RF::variable();

    GradedState<RF> vec = build_bethe_vector(lifted, t);
    GradedState<S> out(model.length);
    for (const auto& [word, coeff] : vec.terms)
        out.add(word, coeff.at_zero());
    return out;
}

} // namespace detail

struct ActionOptions {
    // restrict the window sum, 0 means no restriction
    int only_p = 0;
    int only_q = 0;
    // replace the distinguished-element sum by literal symmetrization over
    // every permutation of each touched level
    bool literal_symmetrization = false;
};

// Explicit action of T_{ij}(z), upper-triangular entries i <= j, as a sum
// of vectors built from tables in which z replaced one element per touched
// level.
template <class S>
GradedState<S> action_formula(const SpinChainModel<S>& model, int i, int j, const S& z,
                              const ParamTable<S>& t, const ActionOptions& opts = {})
{
    const auto& gp = model.grading;
    if (i > j)
        throw ContractError("action_formula: lower-triangular entry, use direct application");
    if (i < 1 || j > gp.dim())
        throw ContractError("action_formula: entry outside 1..m+n");
    require_table(gp, t);
    const int levels = gp.levels();
    std::vector<int> r = table_cardinalities(t);

    GradedState<S> out(model.length);
    for (int p = 1; p <= i; ++p) {
        if (opts.only_p && p != opts.only_p)
            continue;
        for (int q = j; q <= levels + 1; ++q) {
            if (opts.only_q && q != opts.only_q)
                continue;
            bool feasible = true;
            for (int s = p; s <= i - 1 && feasible; ++s)
                feasible = r[s - 1] > 0;
            for (int s = j; s <= q - 1 && feasible; ++s)
                feasible = r[s - 1] > 0;
            if (!feasible)
                continue;

            int sgn = phase_phi_q(gp, i, j, q) * phase_eps_p(gp, i, p);

            int nl = i - p, nr = q - j;
            std::vector<int> left_idx(nl, 0), right_idx(nr, 0);

            auto emit = [&](const std::vector<int>& li, const std::vector<int>& ri, const S& scale) {
                auto term = detail::evaluate_window_term(model, i, j, z, t, p, q, li, ri);
                GradedState<S> vec = q - p >= 2
                    ? detail::build_at_collision(model, term.reduced, p, q - 1)
                    : build_bethe_vector(model, term.reduced);
                vec.scale(S(term.weight * scale * S(sgn)));
                out += vec;
            };

            if (!opts.literal_symmetrization) {
                // one representative per removal choice
                std::function<void(int)> loop_right = [&](int d) {
                    if (d == nr) {
                        emit(left_idx, right_idx, S(1));
                        return;
                    }
                    for (int v = 0; v < r[j + d - 1]; ++v) {
                        right_idx[d] = v;
                        loop_right(d + 1);
                    }
                };
                std::function<void(int)> loop_left = [&](int d) {
                    if (d == nl) {
                        loop_right(0);
                        return;
                    }
                    for (int v = 0; v < r[p + d - 1]; ++v) {
                        left_idx[d] = v;
                        loop_left(d + 1);
                    }
                };
                loop_left(0);
            } else {
                // full symmetrization with the multinomial weights spelled out
                S weight(1);
                for (int s = p; s <= i - 1; ++s)
                    weight /= S(factorial(r[s - 1] - 1));
                for (int s = j; s <= q - 1; ++s)
                    weight /= S(factorial(r[s - 1] - 1));

                std::function<void(int)> perm_right = [&](int d) {
                    if (d == nr) {
                        emit(left_idx, right_idx, weight);
                        return;
                    }
                    std::vector<int> order(r[j + d - 1]);
                    std::iota(order.begin(), order.end(), 0);
                    do {
                        right_idx[d] = order.front();
                        perm_right(d + 1);
                    } while (std::next_permutation(order.begin(), order.end()));
                };
                std::function<void(int)> perm_left = [&](int d) {
                    if (d == nl) {
                        perm_right(0);
                        return;
                    }
                    std::vector<int> order(r[p + d - 1]);
                    std::iota(order.begin(), order.end(), 0);
                    do {
                        left_idx[d] = order.back();
                        perm_left(d + 1);
                    } while (std::next_permutation(order.begin(), order.end()));
                };
                perm_left(0);
            }
        }
    }
    return out;
}

// Oracle: same entry applied through the realized monodromy.
template <class S>
GradedState<S> direct_action(const SpinChainModel<S>& model, int i, int j, const S& z,
                             const ParamTable<S>& t)
{
    return monodromy_entry_apply(model, i, j, z, build_bethe_vector(model, t));
}

// tau(z) = sum_i (-1)^{[i]} lambda_i(z) f_[i](z, t^{i-1}) f_[i](t^i, z)
template <class S>
S eigenvalue_tau(const SpinChainModel<S>& model, const S& z, const ParamTable<S>& t)
{
    const auto& gp = model.grading;
    const int levels = gp.levels();
    S acc(0);
    for (int i = 1; i <= gp.dim(); ++i) {
        S term = lambda_value(model, i, z);
        if (i >= 2)
            term *= f_set(gp, gp.parity(i), {z}, t[i - 2]);
        if (i <= levels)
            term *= f_set(gp, gp.parity(i), t[i - 1], {z});
        if (gp.parity(i))
            term = -term;
        acc += term;
    }
    return acc;
}

// LHS/RHS - 1 of the constraint attached to root idx of the given level.
template <class S>
S bethe_residual(const SpinChainModel<S>& model, const ParamTable<S>& t, int level, int idx)
{
    const auto& gp = model.grading;
    const int levels = gp.levels();
    if (level < 1 || level > levels)
        throw ContractError("bethe_residual: level outside 1..m+n-1");
    const ParameterSet<S>& set = t[level - 1];
    if (idx < 0 || idx >= static_cast<int>(set.size()))
        throw ContractError("bethe_residual: root index outside the level");
    S tv = set[idx];
    ParameterSet<S> others = set;
    others.erase(others.begin() + idx);

    S lhs = lambda_value(model, level + 1, tv) / lambda_value(model, level, tv);

    S rhs(1);
    rhs *= f_set(gp, gp.parity(level), others, {tv});
    rhs /= f_set(gp, gp.parity(level), {tv}, others);
    if (level == gp.m) {
        rhs /= h_set(gp, 0, others, {tv});
        rhs *= h_set(gp, 0, {tv}, others);
        if ((static_cast<int>(set.size()) - 1) & 1)
            rhs = -rhs;
    }
    if (level >= 2)
        rhs *= f_set(gp, gp.parity(level), {tv}, t[level - 2]);
    if (level + 1 <= levels)
        rhs /= f_set(gp, gp.parity(level + 1), t[level], {tv});

    return lhs / rhs - S(1);
}

template <class S>
struct OnshellReport {
    std::vector<S> transfer_residuals;
    std::vector<S> bethe_residuals;
    S max_transfer_residual = S(0);
    S max_bethe_residual = S(0);
};

template <class S>
S sup_norm(const GradedState<S>& st)
{
    S worst(0);
    for (const auto& [w, c] : st.terms) {
        S a = scalar_abs(c);
        if (worst < a)
            worst = a;
    }
    return worst;
}

// Relative sup-norm check of t(z) B = tau(z) B at the given sample points.
template <class S>
OnshellReport<S> check_onshell(const SpinChainModel<S>& model, const ParamTable<S>& t,
                               const std::vector<S>& z_samples)
{
    OnshellReport<S> rep;
    GradedState<S> b = build_bethe_vector(model, t);
    S bnorm = sup_norm(b);
    if (is_zero(bnorm))
        throw ContractError("check_onshell: zero vector");

    for (const S& z : z_samples) {
        GradedState<S> lhs = transfer_matrix_apply(model, z, b);
        GradedState<S> rhs = b;
        rhs.scale(eigenvalue_tau(model, z, t));
        lhs -= rhs;
        S rel = sup_norm(lhs) / bnorm;
        rep.transfer_residuals.push_back(rel);
        if (rep.max_transfer_residual < rel)
            rep.max_transfer_residual = rel;
    }
    for (std::size_t lvl = 1; lvl <= t.size(); ++lvl)
        for (std::size_t k = 0; k < t[lvl - 1].size(); ++k) {
            S res = scalar_abs(bethe_residual(model, t, static_cast<int>(lvl), static_cast<int>(k)));
            rep.bethe_residuals.push_back(res);
            if (rep.max_bethe_residual < res)
                rep.max_bethe_residual = res;
        }
    return rep;
}

} // namespace gbethe
