#pragma once

#include "dilator/calculus.hpp"
#include "dilator/zoo.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace dilator::lab {

/// A finite strictly descending sequence in the extension of D over `carrier`.
struct DescentCertificate {
    PredilatorPtr predilator;
    CountableOrder carrier;
    std::vector<Term> terms;
};

/// Index of the first adjacent pair that fails to descend under
/// compare_direct, or nullopt when the certificate is sound.
inline std::optional<std::size_t> first_non_descent(const DescentCertificate& c)
{
    for (std::size_t i = 0; i + 1 < c.terms.size(); ++i)
        if (compare_direct(*c.predilator, c.terms[i + 1], c.terms[i]) >= 0)
            return i;
    return std::nullopt;
}

inline void require_descending(const DescentCertificate& c)
{
    if (!c.predilator)
        throw Error(ErrorKind::precondition, "certificate without a predilator");
    for (const auto& t : c.terms)
        if (!t.carrier().same_as(c.carrier))
            throw Error(ErrorKind::precondition, "certificate term " + t.str() + " lives over another carrier");
    if (auto i = first_non_descent(c))
        throw Error(ErrorKind::precondition,
                    "certificate does not descend at " + std::to_string(*i) + " -> " + std::to_string(*i + 1));
}

/// omega*x + k in omega-times(...).
inline Code omega_point(const Code& x, std::int64_t k) { return Code::pair(x, Code::nat(k)); }

inline OrderExpr descent_carrier(const ThreadOrder& L) { return OrderExpr::omega_times(OrderExpr::thread(L)); }

/// sigma_n for n = 0..k: priority i of sigma_n holds omega*i+0 for i < n and
/// omega*n+1 for i = n.
inline DescentCertificate dl_descent(const ThreadOrder& L, std::size_t k)
{
    DescentCertificate c;
    c.predilator = make_DL(L);
    c.carrier = build_order(descent_carrier(L));
    for (std::size_t n = 0; n <= k; ++n) {
        auto pi = dl_priority(L, n + 1);
        std::vector<Code> sp(n + 1);
        for (std::size_t i = 0; i <= n; ++i)
            sp[pi[i]] = omega_point(Code::nat(static_cast<std::int64_t>(i)), i == n ? 1 : 0);
        c.terms.push_back(make_term(*c.predilator, DL::full(n + 1), c.carrier, std::move(sp)));
    }
    return c;
}

/// a^L_i: the support point of t in priority i under L.
inline Code dl_priority_value(const ThreadOrder& L, const Term& t, std::size_t i)
{
    return t.support()[dl_priority(L, t.arity())[i]];
}

struct EmbeddingResult {
    std::map<std::size_t, Code> values;
    /// j -> I(j+1), the first index from which priority j stays put.
    std::map<std::size_t, std::size_t> settled_from;
    bool order_preserving = true;
    bool conclusive = false;
};

/// Reads off j -> a^L_{I(j+1), j}. Priority j counts as settled once its value
/// is the same over at least the last two terms long enough to have it.
inline EmbeddingResult embedding_from_descent(const ThreadOrder& L, const CountableOrder& alpha,
                                              const DescentCertificate& cert)
{
    require_descending(cert);
    if (!cert.carrier.same_as(alpha))
        throw Error(ErrorKind::precondition, "certificate carrier is not " + alpha.describe());
    EmbeddingResult r;
    std::size_t longest = 0;
    for (const auto& t : cert.terms)
        longest = std::max(longest, t.arity());
    for (std::size_t j = 0; j < longest; ++j) {
        if (cert.terms.empty() || cert.terms.back().arity() <= j)
            continue;
        auto v = dl_priority_value(L, cert.terms.back(), j);
        std::size_t start = cert.terms.size() - 1;
        while (start > 0 && cert.terms[start - 1].arity() > j && dl_priority_value(L, cert.terms[start - 1], j) == v)
            --start;
        if (cert.terms.size() - start < 2)
            continue;
        r.values.emplace(j, v);
        r.settled_from.emplace(j, start);
    }
    for (const auto& [j, x] : r.values)
        for (const auto& [k, y] : r.values)
            if (L.less(static_cast<std::int64_t>(j), static_cast<std::int64_t>(k)) && !alpha.less(x, y))
                r.order_preserving = false;
    r.conclusive = !r.values.empty() && r.order_preserving;
    return r;
}

} // namespace dilator::lab
