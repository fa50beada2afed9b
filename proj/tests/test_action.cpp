#include "doctest.h"
#include "oracles.hpp"

#include <gbethe/action.hpp>
#include <gbethe/sampling.hpp>

using namespace gbethe;

namespace {

SpinChainModel<Rational> model21(int len, std::vector<Rational> kappa = {2, 3, 5})
{
    GradingProfile<Rational> gp;
    gp.m = 2;
    gp.n = 1;
    gp.c = 1;
    std::vector<Rational> zs = {Rational(0), Rational(1, 3), Rational(2, 5)};
    zs.resize(len);
    return SpinChainModel<Rational>(gp, len, std::move(zs), std::move(kappa));
}

SpinChainModel<Rational> model22(int len)
{
    GradingProfile<Rational> gp;
    gp.m = 2;
    gp.n = 2;
    gp.c = 1;
    std::vector<Rational> zs = {Rational(0), Rational(1, 3)};
    zs.resize(len);
    return SpinChainModel<Rational>(gp, len, std::move(zs), {2, 3, 5, 7});
}

RationalSampler sampler_for(const SpinChainModel<Rational>& model, unsigned long seed)
{
    RationalSampler sampler(seed, model.grading.c);
    for (const Rational& z : model.inhomogeneities)
        sampler.note(z);
    return sampler;
}

ParamTable<Rational> draw_table(RationalSampler& sampler, const std::vector<int>& r)
{
    ParamTable<Rational> t;
    for (int count : r)
        t.push_back(sampler.draw_set(count));
    return t;
}

} // namespace

TEST_CASE("entry formula matches the realized action on two levels")
{
    auto model = model21(2);
    for (unsigned long seed : {601ul, 602ul}) {
        auto sampler = sampler_for(model, seed);
        for (const std::vector<int>& r : {std::vector<int>{1, 1}, std::vector<int>{2, 1}}) {
            ParamTable<Rational> t = draw_table(sampler, r);
            Rational z = sampler.draw();
            for (int i = 1; i <= 3; ++i)
                for (int j = i; j <= 3; ++j)
                    CHECK(action_formula(model, i, j, z, t) == direct_action(model, i, j, z, t));
        }
    }
}

TEST_CASE("entry formula matches the realized action on three levels")
{
    auto model = model22(1);
    auto sampler = sampler_for(model, 611);
    ParamTable<Rational> t = draw_table(sampler, {1, 1, 1});
    Rational z = sampler.draw();
    for (int i = 1; i <= 4; ++i)
        for (int j = i; j <= 4; ++j)
            CHECK(action_formula(model, i, j, z, t) == direct_action(model, i, j, z, t));
}

TEST_CASE("empty levels silence the infeasible windows")
{
    auto model = model21(1);
    auto sampler = sampler_for(model, 617);
    ParamTable<Rational> t = {sampler.draw_set(1), {}};
    Rational z = sampler.draw();
    for (int i = 1; i <= 3; ++i)
        for (int j = i; j <= 3; ++j)
            CHECK(action_formula(model, i, j, z, t) == direct_action(model, i, j, z, t));
}

TEST_CASE("literal symmetrization reproduces the distinguished-element sum")
{
    auto model = model21(2);
    auto sampler = sampler_for(model, 623);
    ParamTable<Rational> t = draw_table(sampler, {3, 1});
    Rational z = sampler.draw();
    ActionOptions literal;
    literal.literal_symmetrization = true;
    for (auto [i, j] : {std::pair{2, 2}, std::pair{2, 3}, std::pair{1, 2}})
        CHECK(action_formula(model, i, j, z, t, literal) == action_formula(model, i, j, z, t));
}

TEST_CASE("window restrictions partition the full action")
{
    auto model = model21(2);
    auto sampler = sampler_for(model, 629);
    ParamTable<Rational> t = draw_table(sampler, {1, 1});
    Rational z = sampler.draw();
    int i = 2, j = 2;
    GradedState<Rational> acc(model.length);
    for (int p = 1; p <= i; ++p)
        for (int q = j; q <= 4; ++q) {
            ActionOptions window;
            window.only_p = p;
            window.only_q = q;
            acc += action_formula(model, i, j, z, t, window);
        }
    CHECK(acc == action_formula(model, i, j, z, t));
}

TEST_CASE("trivial diagonal windows assemble the transfer eigenvalue")
{
    auto model = model21(2);
    auto sampler = sampler_for(model, 631);
    ParamTable<Rational> t = draw_table(sampler, {1, 1});
    Rational z = sampler.draw();

    GradedState<Rational> acc(model.length);
    for (int i = 1; i <= 3; ++i) {
        ActionOptions window;
        window.only_p = i;
        window.only_q = i;
        GradedState<Rational> part = action_formula(model, i, i, z, t, window);
        if (model.grading.parity(i))
            part.scale(Rational(-1));
        acc += part;
    }
    GradedState<Rational> expect = build_bethe_vector(model, t);
    expect.scale(eigenvalue_tau(model, z, t));
    CHECK(acc == expect);
}

TEST_CASE("transfer application equals the signed diagonal sum")
{
    auto model = model21(2);
    auto sampler = sampler_for(model, 641);
    ParamTable<Rational> t = draw_table(sampler, {1, 1});
    Rational z = sampler.draw();

    GradedState<Rational> acc(model.length);
    for (int i = 1; i <= 3; ++i) {
        GradedState<Rational> part = direct_action(model, i, i, z, t);
        if (model.grading.parity(i))
            part.scale(Rational(-1));
        acc += part;
    }
    CHECK(acc == transfer_matrix_apply(model, z, build_bethe_vector(model, t)));
}

TEST_CASE("both removal-factor forms coincide on random data")
{
    RationalSampler sampler(653, Rational(2, 3));
    for (int m = 1; m <= 4; ++m)
        for (int n = 1; m + n <= 5; ++n) {
            GradingProfile<Rational> gp;
            gp.m = m;
            gp.n = n;
            gp.c = Rational(2, 3);
            int levels = gp.levels();
            ParamTable<Rational> t;
            for (int l = 0; l < levels; ++l)
                t.push_back(sampler.draw_set(2));
            for (int i = 1; i <= levels + 1; ++i)
                for (int j = i; j <= levels + 1; ++j)
                    for (int p = 1; p <= i; ++p)
                        for (int q = j; q <= levels + 1; ++q) {
                            oracles::Window w{p, i, j, q};
                            CHECK(oracles::dd_unhatted(gp, t, w) == oracles::dd_hatted(gp, t, w));
                        }
        }
}

TEST_CASE("window phases factor both ways")
{
    for (int m = 1; m <= 4; ++m)
        for (int n = 1; m + n <= 5; ++n) {
            GradingProfile<Rational> gp;
            gp.m = m;
            gp.n = n;
            gp.c = 1;
            int dim = gp.dim();
            for (int i = 1; i <= dim; ++i)
                for (int j = i; j <= dim; ++j)
                    for (int p = 1; p <= i; ++p)
                        for (int q = j; q <= dim; ++q)
                            CHECK(phase_phi_q(gp, i, j, q) * phase_eps_p(gp, i, p)
                                == phase_phi_hat_p(gp, i, p) * phase_eps_hat_q(gp, j, p, q));
        }
}

TEST_CASE("level-one constraint holds at its rational root")
{
    auto model = model21(1, {1, 2, 5});
    ParamTable<Rational> t = {{Rational(1)}, {}};
    CHECK(bethe_residual(model, t, 1, 0) == 0);
    ParamTable<Rational> off = {{Rational(3)}, {}};
    CHECK(bethe_residual(model, off, 1, 0) != 0);
}

TEST_CASE("equal lower twists put any odd-level pair on shell")
{
    auto model = model21(2, {7, 3, 3});
    ParamTable<Rational> t = {{}, {Rational(1, 2), Rational(-2, 5)}};
    CHECK(bethe_residual(model, t, 2, 0) == 0);
    CHECK(bethe_residual(model, t, 2, 1) == 0);

    // the weight component r1 - r2 is negative here, so the realized vector
    // vanishes on any chain and the on-shell report has nothing to certify
    CHECK(build_bethe_vector(model, t).empty());
    CHECK_THROWS_AS(check_onshell(model, t, {Rational(9, 7)}), ContractError);
}

TEST_CASE("exact on-shell branch clears the transfer check")
{
    // two-level system at these twists: t2 = t1 + 2 and
    // 21 t1^2 - 37 t1 - 10 = 0, integer branch t1 = 2
    auto model = model21(2, {Rational(5, 4), 2, 3});
    ParamTable<Rational> t = {{Rational(2)}, {Rational(4)}};
    CHECK(bethe_residual(model, t, 1, 0) == 0);
    CHECK(bethe_residual(model, t, 2, 0) == 0);

    GradedState<Rational> b = build_bethe_vector(model, t);
    CHECK_FALSE(b.empty());
    for (const Rational& z : {Rational(7, 4), Rational(-13, 3)}) {
        GradedState<Rational> lhs = transfer_matrix_apply(model, z, b);
        GradedState<Rational> rhs = b;
        rhs.scale(eigenvalue_tau(model, z, t));
        CHECK(lhs == rhs);
    }

    OnshellReport<Rational> rep = check_onshell(model, t, {Rational(9, 7), Rational(-13, 3)});
    CHECK(rep.max_transfer_residual == 0);
    CHECK(rep.max_bethe_residual == 0);
}
