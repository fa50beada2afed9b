#pragma once

#include "scalar.hpp"

#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace gbethe {

// Whether the sum runs over the standard diagrams or the mirrored ones.
enum class Flavor { standard, mirror };

// One column of the diagram: it occupies every level from q to qp with the
// same number of parameters.
struct CellKey {
    int q = 0;
    int qp = 0;

    friend bool operator==(const CellKey&, const CellKey&) = default;
    friend auto operator<=>(const CellKey&, const CellKey&) = default;
};

// Strict column order used by the pair factors. The mirror flavor orders by
// the end index first.
inline bool pair_precedes(Flavor flavor, const CellKey& a, const CellKey& b)
{
    if (flavor == Flavor::standard)
        return a.q < b.q || (a.q == b.q && a.qp < b.qp);
    return a.qp < b.qp || (a.qp == b.qp && a.q < b.q);
}

inline bool pair_precedes_eq(Flavor flavor, const CellKey& a, const CellKey& b)
{
    return a == b || pair_precedes(flavor, a, b);
}

// Columns crossing level l, in canonical (q,qp) order.
inline std::vector<CellKey> level_cells(int levels, int level)
{
    std::vector<CellKey> out;
    for (int q = 1; q <= level; ++q)
        for (int qp = level; qp <= levels; ++qp)
            out.push_back({q, qp});
    return out;
}

inline std::vector<CellKey> all_cells(int levels)
{
    std::vector<CellKey> out;
    for (int q = 1; q <= levels; ++q)
        for (int qp = q; qp <= levels; ++qp)
            out.push_back({q, qp});
    return out;
}

using CardinalityMatrix = std::map<CellKey, int>;

// All assignments of a common cardinality to every column such that the
// columns crossing level l carry exactly r[l-1] parameters in total.
// Columns are filled in canonical order, smallest count first, so the
// output order is deterministic.
inline std::vector<CardinalityMatrix> enumerate_cardinality_matrices(int levels, const std::vector<int>& r)
{
    if (static_cast<int>(r.size()) != levels)
        throw ContractError("enumerate_cardinality_matrices: need one count per level");
    std::vector<CellKey> cells = all_cells(levels);
    std::vector<int> remaining = r;
    std::vector<CardinalityMatrix> out;
    CardinalityMatrix current;

    std::function<void(std::size_t)> rec = [&](std::size_t idx) {
        if (idx == cells.size()) {
            for (int rem : remaining)
                if (rem != 0)
                    return;
            out.push_back(current);
            return;
        }
        const CellKey& cell = cells[idx];
        int cap = remaining[cell.q - 1];
        for (int l = cell.q; l <= cell.qp; ++l)
            cap = std::min(cap, remaining[l - 1]);
        for (int nu = 0; nu <= cap; ++nu) {
            if (nu) {
                for (int l = cell.q; l <= cell.qp; ++l)
                    remaining[l - 1] -= 1;
            }
            current[cell] = nu;
            rec(idx + 1);
        }
        for (int l = cell.q; l <= cell.qp; ++l)
            remaining[l - 1] += current[cell];
        current.erase(cell);
    };
    rec(0);
    return out;
}

// A concrete split: for every level, which parameter indices sit in which
// column. Indices are 0-based positions into that level's parameter list
// and kept sorted inside each cell.
struct PartitionTable {
    int levels = 0;
    std::vector<std::map<CellKey, std::vector<int>>> cells;

    const std::vector<int>* cell(int level, const CellKey& key) const
    {
        const auto& row = cells[level - 1];
        auto it = row.find(key);
        return it == row.end() ? nullptr : &it->second;
    }

    int cardinality(int level, const CellKey& key) const
    {
        const auto* c = cell(level, key);
        return c ? static_cast<int>(c->size()) : 0;
    }
};

namespace detail {

// Splits indices into ordered groups of the given sizes, each group sorted,
// groups enumerated lexicographically.
inline void enumerate_groupings(const std::vector<int>& pool, const std::vector<int>& sizes,
                                std::size_t which, std::vector<std::vector<int>>& acc,
                                const std::function<void(const std::vector<std::vector<int>>&)>& yield)
{
    if (which == sizes.size()) {
        yield(acc);
        return;
    }
    int take = sizes[which];
    // iterate subsets of the pool in lexicographic order of chosen indices
    std::vector<int> chosen(take);
    std::function<void(std::size_t, int)> pick = [&](std::size_t start, int got) {
        if (got == take) {
            std::vector<char> used(pool.size(), 0);
            for (int idx : chosen)
                used[idx] = 1;
            std::vector<int> rest;
            for (std::size_t p = 0; p < pool.size(); ++p)
                if (!used[p])
                    rest.push_back(pool[p]);
            std::vector<int> group(take);
            for (int t = 0; t < take; ++t)
                group[t] = pool[chosen[t]];
            acc.push_back(group);
            enumerate_groupings(rest, sizes, which + 1, acc, yield);
            acc.pop_back();
            return;
        }
        for (std::size_t p = start; p + (take - got) <= pool.size(); ++p) {
            chosen[got] = static_cast<int>(p);
            pick(p + 1, got + 1);
        }
    };
    if (take == 0) {
        acc.push_back({});
        enumerate_groupings(pool, sizes, which + 1, acc, yield);
        acc.pop_back();
        return;
    }
    pick(0, 0);
}

} // namespace detail

// Streams every partition table for the given per-level cardinalities,
// deterministic order: cardinality matrices first, then per level the
// lexicographic groupings.
inline void enumerate_partition_tables(int levels, const std::vector<int>& r,
                                       const std::function<void(const PartitionTable&)>& yield)
{
    auto mats = enumerate_cardinality_matrices(levels, r);
    for (const auto& mat : mats) {
        // per level: cells in canonical order and their prescribed sizes
        std::vector<std::vector<CellKey>> keys(levels);
        std::vector<std::vector<int>> sizes(levels);
        for (int l = 1; l <= levels; ++l)
            for (const CellKey& key : level_cells(levels, l)) {
                auto it = mat.find(key);
                int nu = it == mat.end() ? 0 : it->second;
                keys[l - 1].push_back(key);
                sizes[l - 1].push_back(nu);
            }

        PartitionTable table;
        table.levels = levels;
        table.cells.resize(levels);

        std::function<void(int)> per_level = [&](int l) {
            if (l > levels) {
                yield(table);
                return;
            }
            std::vector<int> pool(r[l - 1]);
            for (int t = 0; t < r[l - 1]; ++t)
                pool[t] = t;
            std::vector<std::vector<int>> acc;
            detail::enumerate_groupings(pool, sizes[l - 1], 0, acc,
                [&](const std::vector<std::vector<int>>& groups) {
                    auto& row = table.cells[l - 1];
                    row.clear();
                    for (std::size_t k = 0; k < groups.size(); ++k)
                        if (!groups[k].empty())
                            row[keys[l - 1][k]] = groups[k];
                    per_level(l + 1);
                });
        };
        per_level(1);
    }
}

inline std::string dump_table(const PartitionTable& table)
{
    std::ostringstream os;
    for (int l = 1; l <= table.levels; ++l) {
        os << "level " << l << ":";
        for (const auto& [key, idx] : table.cells[l - 1]) {
            os << "  (" << key.q << "," << key.qp << ")[";
            for (std::size_t t = 0; t < idx.size(); ++t)
                os << (t ? " " : "") << idx[t];
            os << "]";
        }
        os << "\n";
    }
    return os.str();
}

} // namespace gbethe
