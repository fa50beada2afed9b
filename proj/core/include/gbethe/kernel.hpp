#pragma once

#include "scalar.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

namespace gbethe {

template <class S>
using ParameterSet = std::vector<S>;

template <class S>
void require_distinct(const ParameterSet<S>& xs, const char* what)
{
    for (std::size_t a = 0; a < xs.size(); ++a)
        for (std::size_t b = a + 1; b < xs.size(); ++b)
            if (xs[a] == xs[b])
                throw ContractError(std::string(what) + ": repeated parameter value");
}

// g_p(u,v) = c_p / (u - v), with c_p = (-1)^p c.
template <class S>
S kern_g(const GradingProfile<S>& gp, int p, const S& u, const S& v)
{
    S d = u - v;
    if (is_zero(d))
        throw PoleError("g: pole at u = v");
    return gp.c_signed(p) / d;
}

// f_p(u,v) = (u - v + c_p) / (u - v) = 1 + g_p(u,v).
template <class S>
S kern_f(const GradingProfile<S>& gp, int p, const S& u, const S& v)
{
    S d = u - v;
    if (is_zero(d))
        throw PoleError("f: pole at u = v");
    return (d + gp.c_signed(p)) / d;
}

// h_p(u,v) = f_p(u,v) / g_p(u,v) = (u - v + c_p) / c_p. No pole.
template <class S>
S kern_h(const GradingProfile<S>& gp, int p, const S& u, const S& v)
{
    return (u - v + gp.c_signed(p)) / gp.c_signed(p);
}

// Product of k(u,v) over the cartesian pairs of two distinct sets.
template <class S, class K>
S pair_product(const K& k, const ParameterSet<S>& us, const ParameterSet<S>& vs)
{
    S acc(1);
    for (const S& u : us)
        for (const S& v : vs)
            acc *= k(u, v);
    return acc;
}

// Product over ordered pairs of one set with itself, skipping the diagonal.
template <class S, class K>
S same_set_product(const K& k, const ParameterSet<S>& us)
{
    S acc(1);
    for (std::size_t a = 0; a < us.size(); ++a)
        for (std::size_t b = 0; b < us.size(); ++b)
            if (a != b)
                acc *= k(us[a], us[b]);
    return acc;
}

// Bar-set shorthand: the diagonal is excluded exactly when both arguments
// are the same set.
template <class S, class K>
S set_product(const K& k, const ParameterSet<S>& us, const ParameterSet<S>& vs)
{
    if (&us == &vs || us == vs)
        return same_set_product<S>(k, us);
    return pair_product<S>(k, us, vs);
}

// Delta_x(u) = prod_{l<l'} x(u_{l'}, u_l)
template <class S, class K>
S delta_product(const K& k, const ParameterSet<S>& us)
{
    S acc(1);
    for (std::size_t a = 0; a < us.size(); ++a)
        for (std::size_t b = a + 1; b < us.size(); ++b)
            acc *= k(us[b], us[a]);
    return acc;
}

// Delta'_x(u) = prod_{l<l'} x(u_l, u_{l'})
template <class S, class K>
S delta_prime_product(const K& k, const ParameterSet<S>& us)
{
    S acc(1);
    for (std::size_t a = 0; a < us.size(); ++a)
        for (std::size_t b = a + 1; b < us.size(); ++b)
            acc *= k(us[a], us[b]);
    return acc;
}

template <class S>
S g_set(const GradingProfile<S>& gp, int p, const ParameterSet<S>& us, const ParameterSet<S>& vs)
{
    return set_product<S>([&](const S& u, const S& v) { return kern_g(gp, p, u, v); }, us, vs);
}

template <class S>
S f_set(const GradingProfile<S>& gp, int p, const ParameterSet<S>& us, const ParameterSet<S>& vs)
{
    return set_product<S>([&](const S& u, const S& v) { return kern_f(gp, p, u, v); }, us, vs);
}

template <class S>
S h_set(const GradingProfile<S>& gp, int p, const ParameterSet<S>& us, const ParameterSet<S>& vs)
{
    return set_product<S>([&](const S& u, const S& v) { return kern_h(gp, p, u, v); }, us, vs);
}

// Normalized products attached to nesting level l (1-based, l <= m+n-1).
// F carries f_[l] over Delta_h at the fermionic level, F-hat carries
// f_[l+1] over Delta'_h there.
template <class S>
S f_norm(const GradingProfile<S>& gp, int level, const ParameterSet<S>& us)
{
    S acc = delta_product<S>([&](const S& a, const S& b) { return kern_f(gp, gp.parity(level), a, b); }, us);
    if (level == gp.m)
        acc /= delta_product<S>([&](const S& a, const S& b) { return kern_h(gp, 0, a, b); }, us);
    return acc;
}

template <class S>
S f_norm(const GradingProfile<S>& gp, int level, const ParameterSet<S>& us, const ParameterSet<S>& vs)
{
    S acc = f_set(gp, gp.parity(level), us, vs);
    if (level == gp.m)
        acc /= h_set(gp, 0, us, vs);
    return acc;
}

template <class S>
S f_norm_hat(const GradingProfile<S>& gp, int level, const ParameterSet<S>& us)
{
    S acc = delta_product<S>([&](const S& a, const S& b) { return kern_f(gp, gp.parity(level + 1), a, b); }, us);
    if (level == gp.m)
        acc /= delta_prime_product<S>([&](const S& a, const S& b) { return kern_h(gp, 0, a, b); }, us);
    return acc;
}

template <class S>
S f_norm_hat(const GradingProfile<S>& gp, int level, const ParameterSet<S>& us, const ParameterSet<S>& vs)
{
    S acc = f_set(gp, gp.parity(level + 1), us, vs);
    if (level == gp.m)
        acc /= h_set(gp, 0, vs, us);
    return acc;
}

// Dense determinant by Gaussian elimination, destructive on the copy.
template <class S>
S det_dense(std::vector<std::vector<S>> a)
{
    std::size_t d = a.size();
    S det(1);
    for (std::size_t col = 0; col < d; ++col) {
        std::size_t piv = col;
        while (piv < d && is_zero(a[piv][col]))
            ++piv;
        if (piv == d)
            return S(0);
        if (piv != col) {
            std::swap(a[piv], a[col]);
            det = -det;
        }
        det *= a[col][col];
        for (std::size_t row = col + 1; row < d; ++row) {
            if (is_zero(a[row][col]))
                continue;
            S factor = a[row][col] / a[col][col];
            for (std::size_t cc = col; cc < d; ++cc)
                a[row][cc] -= factor * a[col][cc];
        }
    }
    return det;
}

// Domain-wall partition function K_p(y|x), determinant form. Size-0 input
// gives 1. Throws on y - x in {0, -c_p} where an entry degenerates.
template <class S>
S izergin(const GradingProfile<S>& gp, int p, const ParameterSet<S>& ys, const ParameterSet<S>& xs)
{
    if (ys.size() != xs.size())
        throw ContractError("izergin: set sizes differ");
    std::size_t d = ys.size();
    if (d == 0)
        return S(1);
    for (const S& y : ys)
        for (const S& x : xs)
            if (is_zero(S(y - x + gp.c_signed(p))))
                throw PoleError("izergin: h vanishes at y - x = -c_p");

    auto g = [&](const S& a, const S& b) { return kern_g(gp, p, a, b); };
    S pref = delta_product<S>(g, ys) * delta_prime_product<S>(g, xs)
        * pair_product<S>([&](const S& a, const S& b) { return kern_h(gp, p, a, b); }, ys, xs);

    std::vector<std::vector<S>> mat(d, std::vector<S>(d, S(0)));
    for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = 0; c < d; ++c)
            mat[r][c] = kern_g(gp, p, ys[r], xs[c]) / kern_h(gp, p, ys[r], xs[c]);
    return pref * det_dense(std::move(mat));
}

// Symmetrization form of the same function, kept as an independent slow
// reference. Sizes above 6 are refused.
template <class S>
S izergin_sym_oracle(const GradingProfile<S>& gp, int p, const ParameterSet<S>& ys, const ParameterSet<S>& xs)
{
    if (ys.size() != xs.size())
        throw ContractError("izergin_sym_oracle: set sizes differ");
    std::size_t d = ys.size();
    if (d > 6)
        throw ContractError("izergin_sym_oracle: size above 6");
    if (d == 0)
        return S(1);

    std::vector<std::size_t> perm(d);
    std::iota(perm.begin(), perm.end(), 0);
    S total(0);
    do {
        ParameterSet<S> xperm(d);
        for (std::size_t l = 0; l < d; ++l)
            xperm[l] = xs[perm[l]];
        S term = delta_prime_product<S>(
            [&](const S& a, const S& b) { return kern_f(gp, p, a, b); }, xperm);
        for (std::size_t l = 0; l < d; ++l)
            term *= kern_g(gp, p, ys[l], xperm[l]);
        for (std::size_t l2 = 0; l2 < d; ++l2)
            for (std::size_t l1 = 0; l1 < l2; ++l1)
                term *= kern_f(gp, p, ys[l2], xperm[l1]);
        total += term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

// C(y|x) = g(y,x) h(x,x), the degenerate same-size coupler across the
// fermionic crossing. Its mirror is the transpose.
template <class S>
S cauchy_norm(const GradingProfile<S>& gp, const ParameterSet<S>& ys, const ParameterSet<S>& xs)
{
    if (ys.size() != xs.size())
        throw ContractError("cauchy_norm: set sizes differ");
    return pair_product<S>([&](const S& a, const S& b) { return kern_g(gp, 0, a, b); }, ys, xs)
        * same_set_product<S>([&](const S& a, const S& b) { return kern_h(gp, 0, a, b); }, xs);
}

template <class S>
S cauchy_norm_hat(const GradingProfile<S>& gp, const ParameterSet<S>& ys, const ParameterSet<S>& xs)
{
    return cauchy_norm(gp, xs, ys);
}

} // namespace gbethe
