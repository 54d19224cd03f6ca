#pragma once

#include "dilator/countable_order.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace dilator::lab {

/// d[k][n] approximates the value at n after k steps.
struct LimitTable {
    std::size_t l = 0;
    std::vector<std::vector<std::int64_t>> d;

    std::int64_t at(std::size_t k, std::size_t n) const { return d[k][n]; }
};

inline void check_table(const LimitTable& t)
{
    if (t.d.size() < t.l)
        throw Error(ErrorKind::input, "limit table has " + std::to_string(t.d.size()) + " rows, needs " +
                                          std::to_string(t.l));
    for (std::size_t k = 0; k < t.l; ++k)
        if (t.d[k].size() < t.l)
            throw Error(ErrorKind::input, "limit table row " + std::to_string(k) + " is shorter than " +
                                              std::to_string(t.l));
}

/// (i) k(n) > 0 implies d(k(n)-1, n) != d(k(n), n);
/// (ii) d(k(n), n) = d(k, n) for k(n) < k < length.
inline bool tree_clause_i(const LimitTable& t, const std::vector<std::int64_t>& s, std::size_t n)
{
    auto k = static_cast<std::size_t>(s[n]);
    return k == 0 || t.at(k - 1, n) != t.at(k, n);
}

inline bool tree_clause_ii(const LimitTable& t, const std::vector<std::int64_t>& s, std::size_t n)
{
    auto k = static_cast<std::size_t>(s[n]);
    for (std::size_t j = k + 1; j < s.size(); ++j)
        if (t.at(j, n) != t.at(k, n))
            return false;
    return true;
}

struct LimitTree {
    LimitTable table;
    /// Every node except the root, in depth-first order.
    std::vector<std::vector<std::int64_t>> nodes;
    /// K(n): where column n stops changing inside the table.
    std::vector<std::int64_t> K;
    CountableOrder kb;

    std::vector<std::int64_t> branch(std::size_t len) const { return {K.begin(), K.begin() + static_cast<std::ptrdiff_t>(len)}; }
};

inline constexpr std::size_t limit_tree_node_limit = 200000;

/// All sequences of length <= l with entries below l that satisfy (i) and (ii),
/// with the Kleene-Brouwer order on the tree minus its root.
inline LimitTree limit_tree(const LimitTable& t)
{
    check_table(t);
    LimitTree tr;
    tr.table = t;
    for (std::size_t n = 0; n < t.l; ++n) {
        std::size_t K = t.l - 1;
        while (K > 0 && t.at(K - 1, n) == t.at(K, n))
            --K;
        tr.K.push_back(static_cast<std::int64_t>(K));
    }
    // extending a node only adds clause (ii) instances, so check the whole node
    std::vector<std::vector<std::int64_t>> stack{{}};
    while (!stack.empty()) {
        auto s = std::move(stack.back());
        stack.pop_back();
        if (!s.empty())
            tr.nodes.push_back(s);
        if (tr.nodes.size() > limit_tree_node_limit)
            throw Error(ErrorKind::input, "limit tree exceeds " + std::to_string(limit_tree_node_limit) + " nodes");
        if (s.size() == t.l)
            continue;
        for (std::size_t k = t.l; k-- > 0;) {
            auto c = s;
            c.push_back(static_cast<std::int64_t>(k));
            bool ok = true;
            for (std::size_t n = 0; n < c.size() && ok; ++n)
                ok = tree_clause_i(t, c, n) && tree_clause_ii(t, c, n);
            if (ok)
                stack.push_back(std::move(c));
        }
    }
    tr.kb = build_order(OrderExpr::kb(tr.nodes));
    return tr;
}

} // namespace dilator::lab
