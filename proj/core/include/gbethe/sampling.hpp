#pragma once

#include "scalar.hpp"

#include <random>
#include <vector>

namespace gbethe {

// Deterministic generator of generic rational points: values are pairwise
// distinct and no pairwise difference equals 0 or plus or minus c, which
// keeps every kernel, normalization and coupler away from poles and zeros.
class RationalSampler {
public:
    explicit RationalSampler(unsigned long seed, Rational c = Rational(1))
        : rng_(seed), c_(std::move(c)) {}

    const Rational& constant() const { return c_; }

    Rational draw()
    {
        std::uniform_int_distribution<int> num(-60, 60);
        std::uniform_int_distribution<int> den(1, 12);
        for (int attempt = 0; attempt < 10000; ++attempt) {
            Rational q(num(rng_), den(rng_));
            q.canonicalize();
            bool clash = false;
            for (const Rational& prev : used_) {
                Rational d = q - prev;
                if (d == 0 || d == c_ || d == -c_) {
                    clash = true;
                    break;
                }
            }
            if (!clash) {
                used_.push_back(q);
                return q;
            }
        }
        throw ContractError("RationalSampler: pool exhausted");
    }

    std::vector<Rational> draw_set(int count)
    {
        std::vector<Rational> out;
        out.reserve(count);
        for (int k = 0; k < count; ++k)
            out.push_back(draw());
        return out;
    }

    // add an externally chosen value to the collision pool
    void note(const Rational& q) { used_.push_back(q); }

    // forget collision history, keeping the stream position
    void reset_pool() { used_.clear(); }

private:
    std::mt19937_64 rng_;
    Rational c_;
    std::vector<Rational> used_;
};

} // namespace gbethe
