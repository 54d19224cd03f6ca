#pragma once

#include "dilator/lab/descent.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <vector>

namespace dilator::lab {

struct ProbeResult {
    std::optional<DescentCertificate> certificate;
    std::size_t depth = 0, width = 0;
    std::size_t pool_size = 0;
    bool pool_truncated = false;

    bool exhausted() const noexcept { return !certificate; }
};

inline constexpr std::size_t probe_pool_limit = 4096;

/// Candidate terms in breadth-first order: by support size, then by the
/// order in which supports (subsets of the first `width` carrier codes) and
/// constructors (full-support codes among the first `width` level codes) arise.
inline std::vector<Term> probe_pool(const PredilatorPtr& D, const CountableOrder& alpha, std::size_t width,
                                    bool* truncated = nullptr)
{
    auto base = alpha.enumerate(width);
    std::vector<Term> pool;
    if (truncated)
        *truncated = false;
    for (std::size_t k = 0; k <= base.size(); ++k) {
        auto tr = trace_elements(*D, k, width);
        if (tr.empty())
            continue;
        for (const auto& f : enumerate_embeddings(k, base.size())) {
            std::vector<Code> sp;
            for (auto i : f.images())
                sp.push_back(base[i]);
            FiniteOrder a(alpha, std::move(sp));
            for (const auto& te : tr) {
                if (pool.size() == probe_pool_limit) {
                    if (truncated)
                        *truncated = true;
                    return pool;
                }
                pool.emplace_back(te.sigma, a);
            }
        }
    }
    return pool;
}

/// Looks for depth+1 pool terms t_0 > ... > t_depth. Each t_k is the first
/// pool term below t_{k-1} that still has enough pool terms beneath it, so
/// the certificate is the breadth-first least one. Exhausted when the pool is
/// too small, which settles the question for finite extensions.
inline ProbeResult descend_probe(const PredilatorPtr& D, const CountableOrder& alpha, std::size_t depth,
                                 std::size_t width)
{
    ProbeResult r;
    r.depth = depth;
    r.width = width;
    auto pool = probe_pool(D, alpha, width, &r.pool_truncated);
    r.pool_size = pool.size();
    if (pool.size() < depth + 1)
        return r;

    std::vector<std::size_t> by_order(pool.size());
    std::iota(by_order.begin(), by_order.end(), 0);
    std::stable_sort(by_order.begin(), by_order.end(),
                     [&](std::size_t a, std::size_t b) { return compare_direct(*D, pool[a], pool[b]) < 0; });
    std::vector<std::size_t> rank(pool.size());
    for (std::size_t i = 0; i < by_order.size(); ++i)
        rank[by_order[i]] = i;

    DescentCertificate c;
    c.predilator = D;
    c.carrier = alpha;
    std::size_t bound = pool.size();
    for (std::size_t k = 0; k <= depth; ++k) {
        std::size_t need = depth - k;
        std::size_t pick = pool.size();
        for (std::size_t i = 0; i < pool.size(); ++i)
            if (rank[i] < bound && rank[i] >= need) {
                pick = i;
                break;
            }
        if (pick == pool.size())
            throw Error(ErrorKind::internal, "probe lost its chain");
        c.terms.push_back(pool[pick]);
        bound = rank[pick];
    }
    if (first_non_descent(c))
        throw Error(ErrorKind::internal, "probe certificate fails to re-verify");
    r.certificate = std::move(c);
    return r;
}

} // namespace dilator::lab
