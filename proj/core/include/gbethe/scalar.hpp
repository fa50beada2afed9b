#pragma once

#include <gmpxx.h>
#include <boost/multiprecision/mpfr.hpp>

#include <stdexcept>
#include <string>

namespace gbethe {

// Exact field used for all identity checks.
using Rational = mpq_class;

// Adaptive-precision float used by the root solver and residual reports.
using MpFloat = boost::multiprecision::mpfr_float;

// Evaluation hit a pole of a rational kernel (or a vanishing denominator
// elsewhere). Carries a human-readable description of the offending factor.
struct PoleError : std::runtime_error {
    explicit PoleError(const std::string& what) : std::runtime_error(what) {}
};

// A value violated an interface precondition (duplicate parameters, index
// out of range, mismatched set sizes and so on).
struct ContractError : std::invalid_argument {
    explicit ContractError(const std::string& what) : std::invalid_argument(what) {}
};

// Parses "num", "num/den" or a plain decimal like "-1.25" or "3e2" into an
// exact rational.
inline Rational parse_rational(const std::string& text)
{
    if (text.empty())
        throw ContractError("parse_rational: empty string");
    if (text.find('/') != std::string::npos) {
        mpq_class q;
        if (q.set_str(text, 10) != 0)
            throw ContractError("parse_rational: bad rational '" + text + "'");
        if (q.get_den() == 0)
            throw ContractError("parse_rational: zero denominator in '" + text + "'");
        q.canonicalize();
        return q;
    }

    // decimal form: [sign] digits [. digits] [e[sign]digits]
    std::string mantissa;
    long exp10 = 0;
    std::size_t i = 0;
    if (text[i] == '+' || text[i] == '-')
        mantissa += text[i++];
    bool any_digit = false, seen_dot = false;
    for (; i < text.size(); ++i) {
        char ch = text[i];
        if (ch >= '0' && ch <= '9') {
            mantissa += ch;
            any_digit = true;
            if (seen_dot)
                --exp10;
        } else if (ch == '.' && !seen_dot) {
            seen_dot = true;
        } else if ((ch == 'e' || ch == 'E') && any_digit) {
            exp10 += std::stol(text.substr(i + 1));
            i = text.size() - 1;
        } else {
            throw ContractError("parse_rational: bad number '" + text + "'");
        }
    }
    if (!any_digit)
        throw ContractError("parse_rational: bad number '" + text + "'");
    Rational q(mantissa);
    Rational ten(10);
    for (long k = 0; k < exp10; ++k)
        q *= ten;
    for (long k = 0; k > exp10; --k)
        q /= ten;
    q.canonicalize();
    return q;
}

// Canonical form: "num" for integers, "num/den" otherwise, denominator
// positive. Round-trips bit-exactly through parse_rational.
inline std::string scalar_to_string(const Rational& q)
{
    return q.get_str();
}

// Floats carry an explicit decimal-digit precision annotation so a report
// or config value states how much of it is meaningful.
inline std::string scalar_to_string(const MpFloat& x)
{
    unsigned digits = x.precision();
    return x.str(digits) + "@" + std::to_string(digits);
}

inline MpFloat parse_mpfloat(const std::string& text)
{
    auto at = text.find('@');
    if (at == std::string::npos)
        return MpFloat(text);
    unsigned digits = std::stoul(text.substr(at + 1));
    MpFloat x(text.substr(0, at), digits);
    return x;
}

inline MpFloat to_mpfloat(const Rational& q)
{
    return MpFloat(q.get_mpq_t());
}

template <class S>
S scalar_from_rational(const Rational& q);

template <>
inline Rational scalar_from_rational<Rational>(const Rational& q) { return q; }

template <>
inline MpFloat scalar_from_rational<MpFloat>(const Rational& q) { return to_mpfloat(q); }

// Z2 grading of gl(m|n): basis indices 1..m are even, m+1..m+n odd.
// Bundles the kernel constant c since every graded kernel needs both.
template <class S>
struct GradingProfile {
    int m = 1;
    int n = 1;
    S c = S(1);

    int dim() const { return m + n; }

    // number of nested levels, N = m + n - 1
    int levels() const { return m + n - 1; }

    int parity(int i) const
    {
        if (i < 1 || i > m + n)
            throw ContractError("parity: index " + std::to_string(i) + " outside 1.." + std::to_string(m + n));
        return i <= m ? 0 : 1;
    }

    // c_[i] = (-1)^{[i]} c
    S c_graded(int i) const { return parity(i) ? S(-c) : c; }

    // c with an explicit parity bit instead of a basis index
    S c_signed(int p) const { return p ? S(-c) : c; }
};

template <class S>
bool is_zero(const S& x) { return x == 0; }

template <class S>
S scalar_abs(const S& x) { return x < 0 ? S(-x) : x; }

inline int eps_ij(int i, int j) { return i == j ? 0 : 1; }

// theta(i,j) = 1 iff i <= j
inline int theta(int i, int j) { return i <= j ? 1 : 0; }

} // namespace gbethe
