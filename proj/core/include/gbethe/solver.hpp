#pragma once

#include "action.hpp"

#include <algorithm>
#include <random>
#include <vector>

namespace gbethe {

struct SolverOptions {
    unsigned digits = 100;
    int max_iterations = 200;
    int seeds = 12;
    unsigned long seed_base = 20240901;
    double box = 4.0;
    // accepted when |LHS/RHS - 1| stays below this for every constraint
    double ratio_tolerance = 1e-45;
    // minimal same-level root separation and distance to inhomogeneities
    double separation_min = 1e-8;
};

struct BetheSolution {
    ParamTable<MpFloat> roots;
    bool converged = false;
    MpFloat residual;
    int iterations = 0;
    unsigned long seed = 0;
};

namespace detail {

inline ParamTable<MpFloat> unpack(const std::vector<MpFloat>& x, const std::vector<int>& r)
{
    ParamTable<MpFloat> t(r.size());
    std::size_t at = 0;
    for (std::size_t l = 0; l < r.size(); ++l)
        for (int k = 0; k < r[l]; ++k)
            t[l].push_back(x[at++]);
    return t;
}

// log|LHS/RHS| of every constraint; throws PoleError on degenerate points.
inline std::vector<MpFloat> constraint_logs(const SpinChainModel<MpFloat>& model,
                                            const ParamTable<MpFloat>& t)
{
    std::vector<MpFloat> g;
    for (std::size_t l = 1; l <= t.size(); ++l)
        for (std::size_t k = 0; k < t[l - 1].size(); ++k) {
            MpFloat ratio = bethe_residual(model, t, static_cast<int>(l), static_cast<int>(k)) + 1;
            if (is_zero(ratio))
                throw PoleError("solver: constraint ratio vanished");
            g.push_back(log(abs(ratio)));
        }
    return g;
}

// d/dx log|x - v + shift| summed into the Jacobian row.
inline void add_atom(std::vector<MpFloat>& row, int ui, int vi, const MpFloat& diff, int sgn)
{
    if (is_zero(diff))
        throw PoleError("solver: atom degenerated");
    MpFloat d = MpFloat(sgn) / diff;
    if (ui >= 0)
        row[ui] += d;
    if (vi >= 0)
        row[vi] -= d;
}

// Analytic Jacobian of constraint_logs. Every factor of the constraints is
// linear in the unknowns, so rows are sums of simple poles.
inline std::vector<std::vector<MpFloat>> constraint_jacobian(const SpinChainModel<MpFloat>& model,
                                                             const ParamTable<MpFloat>& t)
{
    const auto& gp = model.grading;
    const int levels = gp.levels();
    std::vector<int> r(levels);
    std::vector<std::vector<int>> var(levels);
    int total = 0;
    for (int l = 0; l < levels; ++l) {
        r[l] = static_cast<int>(t[l].size());
        for (int k = 0; k < r[l]; ++k)
            var[l].push_back(total++);
    }
    const MpFloat c = gp.c;

    std::vector<std::vector<MpFloat>> jac;
    for (int l = 1; l <= levels; ++l) {
        MpFloat cl = gp.c_graded(l);
        MpFloat cl1 = gp.c_graded(l + 1);
        for (int k = 0; k < r[l - 1]; ++k) {
            std::vector<MpFloat> row(total, MpFloat(0));
            int vt = var[l - 1][k];
            const MpFloat& tv = t[l - 1][k];

            // lambda ratio: only level 1 carries spectral dependence
            if (l == 1)
                for (const MpFloat& z : model.inhomogeneities) {
                    add_atom(row, vt, -1, MpFloat(tv - z + c), -1);
                    add_atom(row, vt, -1, MpFloat(tv - z), +1);
                }

            // minus log of the same-level factors
            for (int k2 = 0; k2 < r[l - 1]; ++k2) {
                if (k2 == k)
                    continue;
                int vo = var[l - 1][k2];
                const MpFloat& ov = t[l - 1][k2];
                add_atom(row, vo, vt, MpFloat(ov - tv + cl), -1);
                add_atom(row, vo, vt, MpFloat(ov - tv), +1);
                add_atom(row, vt, vo, MpFloat(tv - ov + cl), +1);
                add_atom(row, vt, vo, MpFloat(tv - ov), -1);
                if (l == gp.m) {
                    add_atom(row, vo, vt, MpFloat(ov - tv + c), +1);
                    add_atom(row, vt, vo, MpFloat(tv - ov + c), -1);
                }
            }

            // minus log of the adjacent-level factors
            if (l >= 2)
                for (int k2 = 0; k2 < r[l - 2]; ++k2) {
                    int vo = var[l - 2][k2];
                    const MpFloat& ov = t[l - 2][k2];
                    add_atom(row, vt, vo, MpFloat(tv - ov + cl), -1);
                    add_atom(row, vt, vo, MpFloat(tv - ov), +1);
                }
            if (l + 1 <= levels)
                for (int k2 = 0; k2 < r[l]; ++k2) {
                    int vo = var[l][k2];
                    const MpFloat& ov = t[l][k2];
                    add_atom(row, vo, vt, MpFloat(ov - tv + cl1), +1);
                    add_atom(row, vo, vt, MpFloat(ov - tv), -1);
                }
            jac.push_back(std::move(row));
        }
    }
    return jac;
}

inline std::vector<MpFloat> solve_linear(std::vector<std::vector<MpFloat>> a, std::vector<MpFloat> b)
{
    const std::size_t d = b.size();
    for (std::size_t col = 0; col < d; ++col) {
        std::size_t piv = col;
        for (std::size_t r2 = col + 1; r2 < d; ++r2)
            if (abs(a[r2][col]) > abs(a[piv][col]))
                piv = r2;
        if (is_zero(a[piv][col]))
            throw PoleError("solver: singular Jacobian");
        std::swap(a[piv], a[col]);
        std::swap(b[piv], b[col]);
        for (std::size_t r2 = col + 1; r2 < d; ++r2) {
            MpFloat factor = a[r2][col] / a[col][col];
            if (is_zero(factor))
                continue;
            for (std::size_t cc = col; cc < d; ++cc)
                a[r2][cc] -= factor * a[col][cc];
            b[r2] -= factor * b[col];
        }
    }
    std::vector<MpFloat> x(d, MpFloat(0));
    for (std::size_t rr = d; rr-- > 0;) {
        MpFloat acc = b[rr];
        for (std::size_t cc = rr + 1; cc < d; ++cc)
            acc -= a[rr][cc] * x[cc];
        x[rr] = acc / a[rr][rr];
    }
    return x;
}

inline MpFloat sup(const std::vector<MpFloat>& v)
{
    MpFloat worst(0);
    for (const MpFloat& x : v) {
        MpFloat a = abs(x);
        if (worst < a)
            worst = a;
    }
    return worst;
}

} // namespace detail

// Damped Newton iteration on the logarithms of the constraint ratios,
// restarted from deterministic seeds. Only real roots are searched;
// converged points are accepted on the exact ratio residual, which also
// rejects the wrong sign branch.
inline std::vector<BetheSolution> solve_bethe(const SpinChainModel<MpFloat>& model,
                                              const std::vector<int>& r, const SolverOptions& opts = {})
{
    if (static_cast<int>(r.size()) != model.grading.levels())
        throw ContractError("solve_bethe: need one count per level");
    unsigned old_digits = MpFloat::default_precision();
    MpFloat::default_precision(opts.digits);

    int total = 0;
    for (int k : r)
        total += k;
    MpFloat zmean(0);
    for (const MpFloat& z : model.inhomogeneities)
        zmean += z;
    if (!model.inhomogeneities.empty())
        zmean /= static_cast<int>(model.inhomogeneities.size());

    MpFloat target = pow(MpFloat(10), -static_cast<long>(opts.digits * 2) / 3);
    std::vector<BetheSolution> found;

    for (int sd = 0; sd < opts.seeds && total > 0; ++sd) {
        unsigned long seed = opts.seed_base + static_cast<unsigned long>(sd);
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> uni(-opts.box, opts.box);
        std::vector<MpFloat> x(total);
        for (int v = 0; v < total; ++v)
            x[v] = zmean + MpFloat(uni(rng));

        BetheSolution sol;
        sol.seed = seed;
        bool ok = false;
        try {
            std::vector<MpFloat> g = detail::constraint_logs(model, detail::unpack(x, r));
            for (int it = 0; it < opts.max_iterations; ++it) {
                MpFloat gn = detail::sup(g);
                sol.iterations = it;
                if (gn < target) {
                    ok = true;
                    break;
                }
                auto jac = detail::constraint_jacobian(model, detail::unpack(x, r));
                std::vector<MpFloat> rhs(g.size());
                for (std::size_t v = 0; v < g.size(); ++v)
                    rhs[v] = -g[v];
                std::vector<MpFloat> step = detail::solve_linear(jac, rhs);

                bool improved = false;
                MpFloat alpha(1);
                for (int bt = 0; bt < 40; ++bt) {
                    std::vector<MpFloat> xn(x);
                    for (int v = 0; v < total; ++v)
                        xn[v] += alpha * step[v];
                    try {
                        std::vector<MpFloat> gn2 = detail::constraint_logs(model, detail::unpack(xn, r));
                        if (detail::sup(gn2) < gn) {
                            x = std::move(xn);
                            g = std::move(gn2);
                            improved = true;
                            break;
                        }
                    } catch (const PoleError&) {
                    }
                    alpha /= 2;
                }
                if (!improved)
                    break;
            }
        } catch (const PoleError&) {
            ok = false;
        } catch (const ContractError&) {
            ok = false;
        }
        if (!ok)
            continue;

        ParamTable<MpFloat> roots = detail::unpack(x, r);
        for (auto& level : roots)
            std::sort(level.begin(), level.end());

        // exact ratio acceptance, kills the wrong sign branch
        MpFloat worst(0);
        bool admissible = true;
        try {
            for (std::size_t l = 1; l <= roots.size() && admissible; ++l)
                for (std::size_t k = 0; k < roots[l - 1].size(); ++k) {
                    MpFloat res = abs(bethe_residual(model, roots, static_cast<int>(l), static_cast<int>(k)));
                    if (worst < res)
                        worst = res;
                }
        } catch (const PoleError&) {
            admissible = false;
        }
        if (!admissible || worst > MpFloat(opts.ratio_tolerance))
            continue;

        // separation filter
        MpFloat sep(opts.separation_min);
        for (const auto& level : roots)
            for (std::size_t a2 = 0; a2 < level.size(); ++a2)
                for (std::size_t b2 = a2 + 1; b2 < level.size(); ++b2)
                    if (abs(level[a2] - level[b2]) < sep)
                        admissible = false;
        for (const auto& level : roots)
            for (const MpFloat& tv : level)
                for (const MpFloat& z : model.inhomogeneities)
                    if (abs(tv - z) < sep)
                        admissible = false;
        if (!admissible)
            continue;

        // dedupe against earlier seeds
        bool duplicate = false;
        for (const BetheSolution& prev : found) {
            MpFloat diff(0);
            for (std::size_t l = 0; l < roots.size(); ++l)
                for (std::size_t k = 0; k < roots[l].size(); ++k) {
                    MpFloat d = abs(roots[l][k] - prev.roots[l][k]);
                    if (diff < d)
                        diff = d;
                }
            if (diff < MpFloat("1e-30")) {
                duplicate = true;
                break;
            }
        }
        if (duplicate)
            continue;

        sol.roots = std::move(roots);
        sol.converged = true;
        sol.residual = worst;
        found.push_back(std::move(sol));
    }

    if (total == 0) {
        BetheSolution empty;
        empty.roots.assign(r.size(), {});
        empty.converged = true;
        empty.residual = MpFloat(0);
        found.push_back(std::move(empty));
    }

    MpFloat::default_precision(old_digits);
    return found;
}

} // namespace gbethe
