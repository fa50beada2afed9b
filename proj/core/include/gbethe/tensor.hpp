#pragma once

#include "scalar.hpp"

#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace gbethe {

// One basis vector of a tensor power, 1-based index per factor.
using BasisWord = std::vector<int>;

// Sparse vector in a graded tensor power. Zero coefficients are never
// stored; the map keeps terms in lexicographic basis order.
template <class S>
struct GradedState {
    int width = 0;
    std::map<BasisWord, S> terms;

    GradedState() = default;
    explicit GradedState(int w) : width(w) {}

    void add(const BasisWord& w, const S& coeff)
    {
        if (is_zero(coeff))
            return;
        auto it = terms.find(w);
        if (it == terms.end()) {
            terms.emplace(w, coeff);
            return;
        }
        it->second += coeff;
        if (is_zero(it->second))
            terms.erase(it);
    }

    GradedState& operator+=(const GradedState& other)
    {
        if (width != other.width)
            throw ContractError("GradedState: width mismatch in +=");
        for (const auto& [w, c] : other.terms)
            add(w, c);
        return *this;
    }

    GradedState& operator-=(const GradedState& other)
    {
        if (width != other.width)
            throw ContractError("GradedState: width mismatch in -=");
        for (const auto& [w, c] : other.terms)
            add(w, S(-c));
        return *this;
    }

    GradedState& scale(const S& a)
    {
        if (is_zero(a)) {
            terms.clear();
            return *this;
        }
        for (auto& [w, c] : terms)
            c *= a;
        return *this;
    }

    bool empty() const { return terms.empty(); }

    bool operator==(const GradedState& other) const
    {
        return width == other.width && terms == other.terms;
    }
};

// The dual side shares the storage layout; orientation is carried by which
// apply functions a call site uses.
template <class S>
using GradedCoState = GradedState<S>;

template <class S>
GradedState<S> basis_state(int width, const BasisWord& w)
{
    GradedState<S> st(width);
    st.add(w, S(1));
    return st;
}

// Bilinear pairing with self-dual basis vectors.
template <class S>
S pairing(const GradedCoState<S>& bra, const GradedState<S>& ket)
{
    if (bra.width != ket.width)
        throw ContractError("pairing: width mismatch");
    S acc(0);
    const auto& small = bra.terms.size() <= ket.terms.size() ? bra : ket;
    const auto& large = bra.terms.size() <= ket.terms.size() ? ket : bra;
    for (const auto& [w, c] : small.terms) {
        auto it = large.terms.find(w);
        if (it != large.terms.end())
            acc += c * it->second;
    }
    return acc;
}

// Tensor product, first factor's indices leading. No sign is involved in
// concatenating basis words.
template <class S>
GradedState<S> tensor_product(const GradedState<S>& a, const GradedState<S>& b)
{
    GradedState<S> out(a.width + b.width);
    for (const auto& [wa, ca] : a.terms)
        for (const auto& [wb, cb] : b.terms) {
            BasisWord w = wa;
            w.insert(w.end(), wb.begin(), wb.end());
            out.add(w, S(ca * cb));
        }
    return out;
}

// Dense one-site operator with a declared Z2 degree. Entry (r,c) is the
// coefficient of e_r in the image of e_c, indices 1-based at the interface.
template <class S>
struct SiteOperator {
    int dim = 0;
    int degree = 0;
    std::vector<S> a;

    SiteOperator() = default;
    SiteOperator(int d, int deg) : dim(d), degree(deg), a(d * d, S(0)) {}

    S& at(int r, int c) { return a[(r - 1) * dim + (c - 1)]; }
    const S& at(int r, int c) const { return a[(r - 1) * dim + (c - 1)]; }
};

// Matrix unit E_{ij}, degree [i]+[j].
template <class S>
SiteOperator<S> matrix_unit(const GradingProfile<S>& gp, int i, int j)
{
    SiteOperator<S> op(gp.dim(), (gp.parity(i) + gp.parity(j)) % 2);
    op.at(i, j) = S(1);
    return op;
}

template <class S>
S supertrace(const GradingProfile<S>& gp, const SiteOperator<S>& op)
{
    S acc(0);
    for (int i = 1; i <= op.dim; ++i)
        acc += gp.parity(i) ? S(-op.at(i, i)) : op.at(i, i);
    return acc;
}

// Applies a one-site operator at factor position pos (0-based). An odd
// operator picks up the sign of the parities it moved across.
template <class S>
GradedState<S> apply_at_site(const GradingProfile<S>& gp, const SiteOperator<S>& op, int pos,
                             const GradedState<S>& st)
{
    if (pos < 0 || pos >= st.width)
        throw ContractError("apply_at_site: position outside state width");
    GradedState<S> out(st.width);
    for (const auto& [w, c] : st.terms) {
        int cross = 0;
        if (op.degree)
            for (int l = 0; l < pos; ++l)
                cross += gp.parity(w[l]);
        S signed_c = (cross & 1) ? S(-c) : c;
        int col = w[pos];
        for (int r = 1; r <= op.dim; ++r) {
            const S& entry = op.at(r, col);
            if (is_zero(entry))
                continue;
            BasisWord wn = w;
            wn[pos] = r;
            out.add(wn, S(signed_c * entry));
        }
    }
    return out;
}

// Graded permutation of two factor positions, P_{st} with s < t. On a basis
// word the swapped values pick up their mutual parity sign plus the parity
// they both crossed in between.
template <class S>
GradedState<S> permutation_apply(const GradingProfile<S>& gp, const GradedState<S>& st, int s, int t)
{
    if (s > t)
        std::swap(s, t);
    if (s < 0 || t >= st.width || s == t)
        throw ContractError("permutation_apply: bad positions");
    GradedState<S> out(st.width);
    for (const auto& [w, c] : st.terms) {
        int pi = gp.parity(w[s]);
        int pj = gp.parity(w[t]);
        int between = 0;
        for (int l = s + 1; l < t; ++l)
            between += gp.parity(w[l]);
        int sgn = (pi * pj + (pi + pj) * between) & 1;
        BasisWord wn = w;
        std::swap(wn[s], wn[t]);
        out.add(wn, sgn ? S(-c) : c);
    }
    return out;
}

// st -> st + g(u,v) P_{s,t} st
template <class S>
GradedState<S> r_matrix_apply(const GradingProfile<S>& gp, const S& u, const S& v,
                              const GradedState<S>& st, int s, int t)
{
    S d = u - v;
    if (is_zero(d))
        throw PoleError("r_matrix_apply: pole at u = v");
    GradedState<S> out = st;
    GradedState<S> swapped = permutation_apply(gp, st, s, t);
    swapped.scale(S(gp.c / d));
    out += swapped;
    return out;
}

// Dense two-site operators on dim^2, row-major over pairs (a,b) with a the
// first factor. Used to cross-check the sparse application path.
template <class S>
struct TwoSiteOperator {
    int dim = 0;
    std::vector<S> a;

    explicit TwoSiteOperator(int d) : dim(d), a(d * d * d * d, S(0)) {}

    S& at(int r1, int r2, int c1, int c2)
    {
        int row = (r1 - 1) * dim + (r2 - 1);
        int col = (c1 - 1) * dim + (c2 - 1);
        return a[row * dim * dim + col];
    }
};

// P = sum_{a,b} (-1)^{[b]} E_{ab} x E_{ba}; sends e_i x e_j to
// (-1)^{[i][j]} e_j x e_i.
template <class S>
TwoSiteOperator<S> permutation_P(const GradingProfile<S>& gp)
{
    TwoSiteOperator<S> op(gp.dim());
    for (int i = 1; i <= gp.dim(); ++i)
        for (int j = 1; j <= gp.dim(); ++j)
            op.at(j, i, i, j) = (gp.parity(i) * gp.parity(j)) ? S(-1) : S(1);
    return op;
}

// R(u,v) = I + g(u,v) P
template <class S>
TwoSiteOperator<S> r_matrix(const GradingProfile<S>& gp, const S& u, const S& v)
{
    S d = u - v;
    if (is_zero(d))
        throw PoleError("r_matrix: pole at u = v");
    S g = gp.c / d;
    TwoSiteOperator<S> op = permutation_P(gp);
    for (auto& x : op.a)
        x *= g;
    for (int i = 1; i <= gp.dim(); ++i)
        for (int j = 1; j <= gp.dim(); ++j)
            op.at(i, j, i, j) += S(1);
    return op;
}

template <class S>
GradedState<S> two_site_apply(const GradingProfile<S>& gp, const TwoSiteOperator<S>& op,
                              int s, int t, const GradedState<S>& st)
{
    // Positions must be adjacent for the dense form; the sparse path covers
    // the general case.
    if (t != s + 1)
        throw ContractError("two_site_apply: non-adjacent positions");
    GradedState<S> out(st.width);
    for (const auto& [w, c] : st.terms) {
        int c1 = w[s], c2 = w[t];
        for (int r1 = 1; r1 <= op.dim; ++r1)
            for (int r2 = 1; r2 <= op.dim; ++r2) {
                const S& entry = op.a[((r1 - 1) * op.dim + (r2 - 1)) * op.dim * op.dim
                                      + (c1 - 1) * op.dim + (c2 - 1)];
                if (is_zero(entry))
                    continue;
                BasisWord wn = w;
                wn[s] = r1;
                wn[t] = r2;
                out.add(wn, S(c * entry));
            }
    }
    return out;
}

// Deterministic record form: one line per term in lexicographic basis
// order, used for canonical JSON output.
template <class S>
std::string state_to_string(const GradedState<S>& st)
{
    std::ostringstream os;
    os << "width " << st.width << "\n";
    for (const auto& [w, c] : st.terms) {
        for (std::size_t l = 0; l < w.size(); ++l)
            os << (l ? " " : "") << w[l];
        os << " : " << scalar_to_string(c) << "\n";
    }
    return os.str();
}

} // namespace gbethe
