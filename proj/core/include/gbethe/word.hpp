#pragma once

#include "scalar.hpp"

#include <vector>

namespace gbethe {

// One letter of a generator word: the entry T_{ij} evaluated at an ordered
// list of arguments. normalized marks the symmetric odd block, a plain
// letter is the ordered product of its single-argument factors.
template <class S>
struct Letter {
    int i = 0;
    int j = 0;
    std::vector<S> args;
    bool normalized = false;
};

template <class S>
struct Word {
    S coeff = S(1);
    std::vector<Letter<S>> letters;
};

template <class S>
int letter_parity(const GradingProfile<S>& gp, const Letter<S>& l)
{
    return ((gp.parity(l.i) + gp.parity(l.j)) * static_cast<int>(l.args.size())) & 1;
}

// Antimorphism: reverses the word, transposes every letter and collects the
// reordering sign together with the closed-form sign of each odd block.
// Odd letters must be single generators or normalized blocks.
template <class S>
Word<S> psi_on_word(const GradingProfile<S>& gp, const Word<S>& w)
{
    int entry_odd = 0;
    long reorder = 0;
    long block = 0;
    for (std::size_t a = 0; a < w.letters.size(); ++a) {
        const Letter<S>& l = w.letters[a];
        int odd = (gp.parity(l.i) + gp.parity(l.j)) & 1;
        if (odd && l.args.size() > 1 && !l.normalized)
            throw ContractError("psi_on_word: plain odd letter with several arguments");
        if (odd) {
            long d = static_cast<long>(l.args.size());
            block += (l.i < l.j) ? d * (d - 1) / 2 : d * (d + 1) / 2;
        }
        if (letter_parity(gp, l)) {
            reorder += entry_odd;
            ++entry_odd;
        }
    }
    Word<S> out;
    out.coeff = ((reorder + block) & 1) ? S(-w.coeff) : w.coeff;
    out.letters.reserve(w.letters.size());
    for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) {
        Letter<S> l = *it;
        std::swap(l.i, l.j);
        out.letters.push_back(std::move(l));
    }
    return out;
}

} // namespace gbethe
