#include "doctest.h"

#include <gbethe/solver.hpp>

using namespace gbethe;

namespace {

SpinChainModel<Rational> chain21(std::vector<Rational> zs, std::vector<Rational> kappa)
{
    GradingProfile<Rational> gp;
    gp.m = 2;
    gp.n = 1;
    gp.c = 1;
    const int length = static_cast<int>(zs.size());
    return SpinChainModel<Rational>(gp, length, std::move(zs), std::move(kappa));
}

MpFloat dist(const MpFloat& a, const Rational& b)
{
    return abs(a - to_mpfloat(b));
}

} // namespace

TEST_CASE("single even root lands on its closed form")
{
    // level-one constraint (t+1)/t = 2, root t = 1
    auto model_q = chain21({Rational(0)}, {1, 2, 1});
    SolverOptions opts;
    opts.digits = 80;

    unsigned old_digits = MpFloat::default_precision();
    MpFloat::default_precision(opts.digits);
    auto model = model_from_rational<MpFloat>(model_q);
    auto sols = solve_bethe(model, {1, 0}, opts);

    REQUIRE(!sols.empty());
    for (const auto& sol : sols) {
        CHECK(sol.converged);
        CHECK(dist(sol.roots[0][0], Rational(1)) < MpFloat("1e-50"));
        CHECK(sol.roots[1].empty());
    }
    MpFloat::default_precision(old_digits);
}

TEST_CASE("two-level instance recovers the rational branch")
{
    // second level pins t2 = t1 + 2, first level then factors as
    // 21 t1^2 - 37 t1 - 10 = 0 with roots t1 = 2 and t1 = -5/21
    auto model_q = chain21({Rational(0), Rational(1, 3)}, {Rational(5, 4), 2, 3});
    SolverOptions opts;
    opts.digits = 100;
    opts.seeds = 48;

    unsigned old_digits = MpFloat::default_precision();
    MpFloat::default_precision(opts.digits);
    auto model = model_from_rational<MpFloat>(model_q);
    auto sols = solve_bethe(model, {1, 1}, opts);
    REQUIRE(!sols.empty());

    MpFloat tol("1e-60");
    bool hit_main = false, hit_other = false;
    for (const auto& sol : sols) {
        CHECK(sol.residual < MpFloat("1e-45"));
        bool main_branch = dist(sol.roots[0][0], Rational(2)) < tol
            && dist(sol.roots[1][0], Rational(4)) < tol;
        bool other_branch = dist(sol.roots[0][0], Rational(-5, 21)) < tol
            && dist(sol.roots[1][0], Rational(37, 21)) < tol;
        CHECK((main_branch || other_branch));
        hit_main = hit_main || main_branch;
        hit_other = hit_other || other_branch;
    }
    CHECK(hit_main);
    CHECK(hit_other);
    MpFloat::default_precision(old_digits);
}

TEST_CASE("repeated runs are bit identical")
{
    auto model_q = chain21({Rational(0), Rational(1, 3)}, {Rational(5, 4), 2, 3});
    SolverOptions opts;
    opts.digits = 60;
    opts.seeds = 8;

    unsigned old_digits = MpFloat::default_precision();
    MpFloat::default_precision(opts.digits);
    auto model = model_from_rational<MpFloat>(model_q);
    auto first = solve_bethe(model, {1, 1}, opts);
    auto second = solve_bethe(model, {1, 1}, opts);
    REQUIRE(first.size() == second.size());
    for (std::size_t k = 0; k < first.size(); ++k)
        for (std::size_t l = 0; l < first[k].roots.size(); ++l)
            for (std::size_t v = 0; v < first[k].roots[l].size(); ++v)
                CHECK(scalar_to_string(first[k].roots[l][v])
                    == scalar_to_string(second[k].roots[l][v]));
    MpFloat::default_precision(old_digits);
}

TEST_CASE("empty root request returns the vacuum table")
{
    auto model_q = chain21({Rational(0)}, {1, 2, 3});
    unsigned old_digits = MpFloat::default_precision();
    MpFloat::default_precision(50);
    auto model = model_from_rational<MpFloat>(model_q);
    auto sols = solve_bethe(model, {0, 0});
    REQUIRE(sols.size() == 1);
    CHECK(sols[0].converged);
    CHECK(sols[0].roots[0].empty());
    CHECK(sols[0].roots[1].empty());
    MpFloat::default_precision(old_digits);
}

TEST_CASE("level count mismatch is rejected")
{
    auto model_q = chain21({Rational(0)}, {1, 2, 3});
    unsigned old_digits = MpFloat::default_precision();
    MpFloat::default_precision(50);
    auto model = model_from_rational<MpFloat>(model_q);
    CHECK_THROWS_AS(solve_bethe(model, {1}), ContractError);
    MpFloat::default_precision(old_digits);
}
