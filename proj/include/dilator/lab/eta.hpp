#pragma once

#include "dilator/lab/descent.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace dilator::lab {

/// alpha * 2^gamma as an order expression.
inline OrderExpr eta_power_carrier(const OrderExpr& gamma, const OrderExpr& alpha)
{
    return OrderExpr::prod(alpha, OrderExpr::two_power(gamma));
}

/// x = <(g_0,a_0),...,(g_{k-1},a_{k-1})> in (1+alpha)^gamma goes to <e(0),...,e(k-1)>
/// with e(pi^L_k(i)) = alpha*s_i + a_i, where s_0 = 2^{g_0} and s_{i+1} is the
/// one candidate among 2^{g_{i+1}} and s_j + 2^{g_{i+1}} (j <= i) that keeps e
/// increasing.
inline Term eta_power(const OrderExpr& gamma, const ThreadOrder& L, const OrderExpr& alpha, const Code& x)
{
    auto g = build_order(gamma);
    auto src = build_order(OrderExpr::base_power(alpha, gamma));
    src.require_valid(x, "eta_power input");
    auto two = build_order(OrderExpr::two_power(gamma));
    auto carrier = build_order(eta_power_carrier(gamma, alpha));
    const auto& xs = x.kids();
    std::size_t k = xs.size();
    auto pi = dl_priority(L, k);

    std::vector<Code> s; // s[i] as a descending exponent list
    for (std::size_t i = 0; i < k; ++i) {
        std::vector<Code> cands;
        cands.push_back(Code::exps({xs[i].hi()}));
        for (std::size_t j = 0; j < i; ++j) {
            auto e = s[j].kids();
            e.push_back(xs[i].hi());
            cands.push_back(Code::exps(std::move(e)));
        }
        std::optional<Code> chosen;
        std::size_t fits = 0;
        for (const auto& c : cands) {
            bool ok = true;
            for (std::size_t j = 0; j < i && ok; ++j)
                ok = (pi[j] < pi[i]) == two.less(s[j], c) && s[j] != c;
            if (ok) {
                ++fits;
                if (!chosen)
                    chosen = c;
            }
        }
        if (fits != 1)
            throw Error(ErrorKind::internal, "eta_power: " + std::to_string(fits) + " placements fit at step " +
                                                 std::to_string(i) + " of " + x.str());
        s.push_back(*chosen);
    }

    std::vector<Code> e(k);
    for (std::size_t i = 0; i < k; ++i)
        e[pi[i]] = Code::pair(s[i], xs[i].lo());
    for (std::size_t p = 0; p + 1 < k; ++p)
        if (!carrier.less(e[p], e[p + 1]))
            throw Error(ErrorKind::internal, "eta_power produced a non-increasing sequence for " + x.str());
    DL D(L);
    return make_term(D, DL::full(k), carrier, std::move(e));
}

/// h : L -> Z^r with bounds N_j >= j and h(j)_c >= -N_j, given on 0..size-1.
struct ScatteredData {
    std::size_t r = 0;
    std::vector<std::vector<std::int64_t>> h;
    std::vector<std::int64_t> N;

    std::size_t size() const noexcept { return h.size(); }
};

/// Throws on data that is not an embedding of L (restricted to 0..size-1)
/// into Z^r or that breaks the bound conditions.
inline void check_scattered(const ScatteredData& d, const ThreadOrder& L)
{
    if (d.N.size() != d.h.size())
        throw Error(ErrorKind::input, "scattered data: h and N cover different ranges");
    for (std::size_t j = 0; j < d.size(); ++j) {
        if (d.h[j].size() != d.r)
            throw Error(ErrorKind::input, "scattered data: h(" + std::to_string(j) + ") is not an r-tuple");
        if (d.N[j] < static_cast<std::int64_t>(j))
            throw Error(ErrorKind::input, "scattered data: N_" + std::to_string(j) + " < " + std::to_string(j));
        for (auto q : d.h[j])
            if (q < -d.N[j])
                throw Error(ErrorKind::input, "scattered data: h(" + std::to_string(j) + ") drops below -N");
    }
    for (std::size_t i = 0; i < d.size(); ++i)
        for (std::size_t j = 0; j < d.size(); ++j)
            if (L.less(static_cast<std::int64_t>(i), static_cast<std::int64_t>(j)) && !(d.h[i] < d.h[j]))
                throw Error(ErrorKind::input, "scattered data: h is not increasing on " + std::to_string(i) + " <_L " +
                                                  std::to_string(j));
}

inline OrderExpr eta_scattered_carrier(std::size_t r, const OrderExpr& alpha)
{
    return OrderExpr::prod(alpha, power_product(OrderExpr::omega_times(OrderExpr::plus_one(alpha)), r));
}

/// j(q) = min{ j : q >= -N_j }.
inline std::size_t scattered_j(const ScatteredData& d, std::int64_t q)
{
    for (std::size_t j = 0; j < d.size(); ++j)
        if (q >= -d.N[j])
            return j;
    throw Error(ErrorKind::precondition, "scattered data too short for q = " + std::to_string(q));
}

/// q-bar = omega*a_{j(q)-1} + N_{j(q)} + q in omega*(alpha+1), with a_{-1} the top.
inline Code scattered_qbar(const ScatteredData& d, const std::vector<Code>& a, std::int64_t q)
{
    auto j = scattered_j(d, q);
    if (j > a.size())
        throw Error(ErrorKind::internal, "j(q) exceeds the number of exponents");
    Code hi = j == 0 ? Code::top() : Code::in(a[j - 1]);
    return Code::pair(hi, Code::nat(d.N[j] + q));
}

/// 2^{a_0}+...+2^{a_{n-1}} goes to sigma with sigma(pi^L_n(j)) = alpha*hbar(j) + a_j.
inline Term eta_scattered(const ScatteredData& d, const ThreadOrder& L, const OrderExpr& alpha, const Code& t)
{
    check_scattered(d, L);
    auto two = build_order(OrderExpr::two_power(alpha));
    two.require_valid(t, "eta_scattered input");
    const auto& a = t.kids();
    std::size_t n = a.size();
    if (n > d.size())
        throw Error(ErrorKind::precondition, "scattered data covers only " + std::to_string(d.size()) + " points");
    auto carrier = build_order(eta_scattered_carrier(d.r, alpha));
    auto pi = dl_priority(L, n);
    std::vector<Code> sp(n);
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<Code> coords;
        for (auto q : d.h[j])
            coords.push_back(scattered_qbar(d, a, q));
        sp[pi[j]] = Code::pair(tuple_code(coords), a[j]);
    }
    for (std::size_t p = 0; p + 1 < n; ++p)
        if (!carrier.less(sp[p], sp[p + 1]))
            throw Error(ErrorKind::internal, "eta_scattered produced a non-increasing sequence for " + t.str());
    DL D(L);
    return make_term(D, DL::full(n), carrier, std::move(sp));
}

} // namespace dilator::lab
