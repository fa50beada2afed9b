#pragma once

#include "scalar.hpp"

#include <cstddef>
#include <utility>
#include <vector>

namespace gbethe {

// Dense univariate polynomial over an exact field; c[k] multiplies x^k and
// the leading coefficient is nonzero, so zero is the empty vector.
template <class S>
struct Poly {
    std::vector<S> c;

    Poly() = default;
    explicit Poly(const S& v)
    {
        if (!is_zero(v))
            c.push_back(v);
    }

    bool zero() const { return c.empty(); }
    std::size_t degree() const { return c.empty() ? 0 : c.size() - 1; }

    void trim()
    {
        while (!c.empty() && is_zero(c.back()))
            c.pop_back();
    }

    S at_zero() const { return c.empty() ? S(0) : c.front(); }
};

template <class S>
Poly<S> poly_add(const Poly<S>& a, const Poly<S>& b)
{
    Poly<S> out;
    out.c.resize(std::max(a.c.size(), b.c.size()), S(0));
    for (std::size_t k = 0; k < a.c.size(); ++k)
        out.c[k] += a.c[k];
    for (std::size_t k = 0; k < b.c.size(); ++k)
        out.c[k] += b.c[k];
    out.trim();
    return out;
}

template <class S>
Poly<S> poly_neg(Poly<S> a)
{
    for (S& v : a.c)
        v = -v;
    return a;
}

template <class S>
Poly<S> poly_sub(const Poly<S>& a, const Poly<S>& b)
{
    return poly_add(a, poly_neg(b));
}

template <class S>
Poly<S> poly_mul(const Poly<S>& a, const Poly<S>& b)
{
    Poly<S> out;
    if (a.zero() || b.zero())
        return out;
    out.c.assign(a.c.size() + b.c.size() - 1, S(0));
    for (std::size_t i = 0; i < a.c.size(); ++i)
        for (std::size_t j = 0; j < b.c.size(); ++j)
            out.c[i + j] += a.c[i] * b.c[j];
    out.trim();
    return out;
}

template <class S>
Poly<S> poly_scale(Poly<S> a, const S& v)
{
    if (is_zero(v))
        return Poly<S>();
    for (S& x : a.c)
        x *= v;
    return a;
}

template <class S>
Poly<S> poly_monic(Poly<S> a)
{
    if (!a.zero() && !(a.c.back() == S(1)))
        a = poly_scale(std::move(a), S(S(1) / a.c.back()));
    return a;
}

template <class S>
Poly<S> poly_rem(Poly<S> a, const Poly<S>& b)
{
    while (!a.zero() && a.c.size() >= b.c.size()) {
        S factor = a.c.back() / b.c.back();
        std::size_t shift = a.c.size() - b.c.size();
        for (std::size_t k = 0; k < b.c.size(); ++k)
            a.c[k + shift] -= factor * b.c[k];
        a.trim();
    }
    return a;
}

template <class S>
Poly<S> poly_divexact(Poly<S> a, const Poly<S>& b)
{
    Poly<S> quot;
    if (a.zero())
        return quot;
    quot.c.assign(a.c.size() - b.c.size() + 1, S(0));
    while (!a.zero() && a.c.size() >= b.c.size()) {
        S factor = a.c.back() / b.c.back();
        std::size_t shift = a.c.size() - b.c.size();
        quot.c[shift] = factor;
        for (std::size_t k = 0; k < b.c.size(); ++k)
            a.c[k + shift] -= factor * b.c[k];
        a.trim();
    }
    if (!a.zero())
        throw ContractError("poly_divexact: remainder is nonzero");
    quot.trim();
    return quot;
}

template <class S>
Poly<S> poly_gcd(Poly<S> a, Poly<S> b)
{
    a = poly_monic(std::move(a));
    b = poly_monic(std::move(b));
    while (!b.zero()) {
        Poly<S> r = poly_monic(poly_rem(std::move(a), b));
        a = std::move(b);
        b = std::move(r);
    }
    if (a.zero())
        a.c.push_back(S(1));
    return a;
}

// Quotient of two polynomials kept reduced with a monic denominator. Used
// as a scalar field to take exact one-variable limits of expressions whose
// individual factors degenerate at the evaluation point.
template <class S>
struct RatFunc {
    Poly<S> num;
    Poly<S> den{S(1)};

    RatFunc() = default;
    RatFunc(int v) : num(S(v)) {}
    explicit RatFunc(const S& v) : num(v) {}
    RatFunc(Poly<S> n, Poly<S> d) : num(std::move(n)), den(std::move(d)) { reduce(); }

    // the polynomial x itself
    static RatFunc variable()
    {
        RatFunc out;
        out.num.c = {S(0), S(1)};
        return out;
    }

    void reduce()
    {
        if (den.zero())
            throw PoleError("RatFunc: zero denominator");
        if (num.zero()) {
            den = Poly<S>(S(1));
            return;
        }
        Poly<S> g = poly_gcd(num, den);
        if (g.c.size() > 1) {
            num = poly_divexact(std::move(num), g);
            den = poly_divexact(std::move(den), g);
        }
        S lead = den.c.back();
        if (!(lead == S(1))) {
            num = poly_scale(std::move(num), S(S(1) / lead));
            den = poly_scale(std::move(den), S(S(1) / lead));
        }
    }

    // value at x = 0; throws when the reduced denominator vanishes there
    S at_zero() const
    {
        S d = den.at_zero();
        if (is_zero(d))
            throw PoleError("RatFunc: pole at the evaluation point");
        return num.at_zero() / d;
    }

    RatFunc& operator+=(const RatFunc& o)
    {
        num = poly_add(poly_mul(num, o.den), poly_mul(o.num, den));
        den = poly_mul(den, o.den);
        reduce();
        return *this;
    }
    RatFunc& operator-=(const RatFunc& o)
    {
        num = poly_sub(poly_mul(num, o.den), poly_mul(o.num, den));
        den = poly_mul(den, o.den);
        reduce();
        return *this;
    }
    RatFunc& operator*=(const RatFunc& o)
    {
        num = poly_mul(num, o.num);
        den = poly_mul(den, o.den);
        reduce();
        return *this;
    }
    RatFunc& operator/=(const RatFunc& o)
    {
        if (o.num.zero())
            throw PoleError("RatFunc: division by zero");
        num = poly_mul(num, o.den);
        den = poly_mul(den, o.num);
        reduce();
        return *this;
    }
};

template <class S>
RatFunc<S> operator+(RatFunc<S> a, const RatFunc<S>& b) { return a += b; }
template <class S>
RatFunc<S> operator-(RatFunc<S> a, const RatFunc<S>& b) { return a -= b; }
template <class S>
RatFunc<S> operator*(RatFunc<S> a, const RatFunc<S>& b) { return a *= b; }
template <class S>
RatFunc<S> operator/(RatFunc<S> a, const RatFunc<S>& b) { return a /= b; }

template <class S>
RatFunc<S> operator-(RatFunc<S> a)
{
    a.num = poly_neg(std::move(a.num));
    return a;
}

template <class S>
bool operator==(const RatFunc<S>& a, const RatFunc<S>& b)
{
    return a.num.c == b.num.c && a.den.c == b.den.c;
}

template <class S>
bool operator==(const RatFunc<S>& a, int b)
{
    return a == RatFunc<S>(b);
}

template <class S>
bool is_zero(const RatFunc<S>& x)
{
    return x.num.zero();
}

} // namespace gbethe
