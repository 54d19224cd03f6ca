#pragma once

#include "dilator/finite.hpp"
#include "dilator/predilator.hpp"

#include <algorithm>
#include <compare>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace dilator {

/// pi(k) is the argument position of priority k; position pi(0) dominates.
using PriorityPermutation = std::vector<std::size_t>;

/// e_i : n -> 2n with e_i(i) = 2i+1 and e_i(j) = 2j otherwise.
inline Morphism doubling(std::size_t n, std::size_t i)
{
    std::vector<std::size_t> v(n);
    for (std::size_t j = 0; j < n; ++j)
        v[j] = 2 * j + (j == i ? 1 : 0);
    return Morphism(2 * n, std::move(v));
}

inline PriorityPermutation priority_permutation(const Predilator& D, const TraceElement& t)
{
    auto n = t.level;
    if (!D.full_support(n, t.sigma))
        throw Error(ErrorKind::invalid_term, t.str() + " is not in the trace");
    auto big = D.level(2 * n);
    std::vector<Code> img;
    for (std::size_t i = 0; i < n; ++i)
        img.push_back(D.act(doubling(n, i), t.sigma));
    PriorityPermutation pi(n);
    for (std::size_t i = 0; i < n; ++i)
        pi[i] = i;
    std::sort(pi.begin(), pi.end(), [&](std::size_t a, std::size_t b) { return big.less(img[b], img[a]); });
    for (std::size_t k = 1; k < n; ++k)
        if (big.compare(img[pi[k - 1]], img[pi[k]]) == 0)
            throw Error(ErrorKind::internal, "doubled embeddings of " + t.str() + " collide");
    return pi;
}

struct SecurityProfile {
    TraceElement left, right;
    std::size_t P = 0;
    std::size_t p = 0;
    int eps = 0;
    PriorityPermutation pi_left, pi_right;
    std::size_t pairs_checked = 0;
    /// For p > 0: pairs (f, g) obeying the pins below p-1 with outcomes Less and Greater.
    std::optional<std::pair<Morphism, Morphism>> witness_less, witness_greater;
};

namespace detail {

/// Largest P <= min(m, n) such that the first P priorities of both sides sit
/// in the same relative order.
inline std::size_t agreement_bound(const PriorityPermutation& a, const PriorityPermutation& b)
{
    std::size_t P = 0;
    std::size_t lim = std::min(a.size(), b.size());
    while (P < lim) {
        bool ok = true;
        for (std::size_t i = 0; i < P && ok; ++i)
            ok = (a[i] < a[P]) == (b[i] < b[P]);
        if (!ok)
            break;
        ++P;
    }
    return P;
}

} // namespace detail

/// Decides secure-ness by running through every pair f: m -> m+n, g: n -> m+n.
inline SecurityProfile security_profile(const Predilator& D, const TraceElement& s, const TraceElement& t,
                                        const PriorityPermutation& pi_s, const PriorityPermutation& pi_t)
{
    if (s == t)
        throw Error(ErrorKind::precondition, "security profile of " + s.str() + " with itself");
    SecurityProfile prof;
    prof.left = s;
    prof.right = t;
    prof.pi_left = pi_s;
    prof.pi_right = pi_t;
    prof.P = detail::agreement_bound(pi_s, pi_t);

    std::size_t m = s.level, n = t.level, N = m + n;
    auto top = D.level(N);
    auto fs = enumerate_embeddings(m, N);
    auto gs = enumerate_embeddings(n, N);
    std::vector<Code> fi, gi;
    for (const auto& f : fs)
        fi.push_back(D.act(f, s.sigma));
    for (const auto& g : gs)
        gi.push_back(D.act(g, t.sigma));

    struct Outcome {
        std::size_t f, g, pinned; // pinned = how many leading priorities agree
        bool less;
    };
    std::vector<Outcome> all;
    for (std::size_t a = 0; a < fs.size(); ++a)
        for (std::size_t b = 0; b < gs.size(); ++b) {
            std::size_t k = 0;
            while (k < prof.P && fs[a](pi_s[k]) == gs[b](pi_t[k]))
                ++k;
            auto c = top.compare(fi[a], gi[b]);
            if (c == 0)
                throw Error(ErrorKind::internal, "distinct trace elements " + s.str() + ", " + t.str() + " collide");
            all.push_back({a, b, k, c < 0});
        }
    prof.pairs_checked = all.size();

    auto outcomes_at = [&](std::size_t q, const Outcome** lt, const Outcome** gt) {
        *lt = *gt = nullptr;
        for (const auto& o : all) {
            if (o.pinned < q)
                continue;
            auto& slot = o.less ? *lt : *gt;
            if (!slot)
                slot = &o;
        }
    };

    std::optional<std::size_t> p;
    for (std::size_t q = 0; q <= prof.P; ++q) {
        const Outcome *lt, *gt;
        outcomes_at(q, &lt, &gt);
        if (lt && gt)
            continue;
        if (!lt && !gt)
            throw Error(ErrorKind::internal, "no embedding pair obeys the pins");
        p = q;
        prof.eps = lt ? 1 : -1;
        break;
    }
    if (!p)
        throw Error(ErrorKind::internal, "agreement bound is not secure for " + s.str() + ", " + t.str());
    prof.p = *p;
    if (prof.p > 0) {
        const Outcome *lt, *gt;
        outcomes_at(prof.p - 1, &lt, &gt);
        prof.witness_less = std::make_pair(fs[lt->f], gs[lt->g]);
        prof.witness_greater = std::make_pair(fs[gt->f], gs[gt->g]);
    }
    return prof;
}

/// Whether pins below q force a constant outcome; recomputed from scratch.
inline bool is_secure(const Predilator& D, const TraceElement& s, const TraceElement& t, const PriorityPermutation& pi_s,
                      const PriorityPermutation& pi_t, std::size_t q)
{
    std::size_t N = s.level + t.level;
    auto top = D.level(N);
    bool seen_lt = false, seen_gt = false;
    for (const auto& f : enumerate_embeddings(s.level, N))
        for (const auto& g : enumerate_embeddings(t.level, N)) {
            bool pinned = true;
            for (std::size_t i = 0; i < q && pinned; ++i)
                pinned = f(pi_s[i]) == g(pi_t[i]);
            if (!pinned)
                continue;
            (top.less(D.act(f, s.sigma), D.act(g, t.sigma)) ? seen_lt : seen_gt) = true;
        }
    return !(seen_lt && seen_gt);
}

namespace detail {

/// Maps f : m -> N, g : n -> N with f(pi_s(i)) = g(pi_t(i)) for i < q. With
/// `split`, priority q also lands in one gap on both sides, f's point just
/// below g's (or above when `f_below` is false). Needs q (+1 with split) <= P.
inline std::pair<Morphism, Morphism> pinned_configuration(std::size_t m, std::size_t n, const PriorityPermutation& pi_s,
                                                          const PriorityPermutation& pi_t, std::size_t q, bool split,
                                                          bool f_below)
{
    // pins sorted by position; agreement below P makes both sides sorted together
    std::vector<std::pair<std::size_t, std::size_t>> pins;
    for (std::size_t i = 0; i < q; ++i)
        pins.emplace_back(pi_s[i], pi_t[i]);
    std::sort(pins.begin(), pins.end());
    std::vector<int> f_pin(m, -1), g_pin(n, -1);
    for (std::size_t k = 0; k < pins.size(); ++k) {
        f_pin[pins[k].first] = static_cast<int>(k);
        g_pin[pins[k].second] = static_cast<int>(k);
    }
    auto gap_of = [&](std::size_t pos, const std::vector<int>& pin) {
        std::size_t g = 0;
        for (std::size_t i = 0; i < pos; ++i)
            if (pin[i] >= 0)
                ++g;
        return g;
    };
    std::size_t sf = split ? pi_s[q] : m, sg = split ? pi_t[q] : n;
    std::size_t special_gap = split ? gap_of(sf, f_pin) : 0;

    std::vector<std::size_t> fv(m), gv(n);
    std::size_t next = 0;
    std::size_t fi = 0, gi = 0;
    for (std::size_t gap = 0; gap <= pins.size(); ++gap) {
        std::size_t f_end = gap < pins.size() ? pins[gap].first : m;
        std::size_t g_end = gap < pins.size() ? pins[gap].second : n;
        if (split && gap == special_gap) {
            for (; fi < sf; ++fi)
                fv[fi] = next++;
            for (; gi < sg; ++gi)
                gv[gi] = next++;
            if (f_below) {
                fv[fi++] = next++;
                gv[gi++] = next++;
            } else {
                gv[gi++] = next++;
                fv[fi++] = next++;
            }
        }
        for (; fi < f_end; ++fi)
            fv[fi] = next++;
        for (; gi < g_end; ++gi)
            gv[gi] = next++;
        if (gap < pins.size()) {
            fv[fi++] = next;
            gv[gi++] = next;
            ++next;
        }
    }
    return {Morphism(m + n, std::move(fv)), Morphism(m + n, std::move(gv))};
}

} // namespace detail

/// p and eps from O(P) pinned configurations: at q < p the comparison still
/// follows priority q, so splitting q both ways flips the outcome; at q = p it
/// cannot. Relies on the cross-constructor rule being sound for D; the
/// exhaustive security_profile is the reference.
inline SecurityProfile probed_profile(const Predilator& D, const TraceElement& s, const TraceElement& t,
                                      const PriorityPermutation& pi_s, const PriorityPermutation& pi_t)
{
    if (s == t)
        throw Error(ErrorKind::precondition, "security profile of " + s.str() + " with itself");
    SecurityProfile prof;
    prof.left = s;
    prof.right = t;
    prof.pi_left = pi_s;
    prof.pi_right = pi_t;
    prof.P = detail::agreement_bound(pi_s, pi_t);
    std::size_t m = s.level, n = t.level;
    auto top = D.level(m + n);
    auto outcome = [&](const std::pair<Morphism, Morphism>& fg) {
        ++prof.pairs_checked;
        auto c = top.compare(D.act(fg.first, s.sigma), D.act(fg.second, t.sigma));
        if (c == 0)
            throw Error(ErrorKind::internal, "distinct trace elements " + s.str() + ", " + t.str() + " collide");
        return c < 0;
    };
    for (std::size_t q = 0; q < prof.P; ++q) {
        auto a = detail::pinned_configuration(m, n, pi_s, pi_t, q, true, true);
        auto b = detail::pinned_configuration(m, n, pi_s, pi_t, q, true, false);
        bool la = outcome(a), lb = outcome(b);
        if (la == lb) {
            prof.p = q;
            prof.eps = la ? 1 : -1;
            return prof;
        }
        prof.witness_less = la ? a : b;
        prof.witness_greater = la ? b : a;
    }
    prof.p = prof.P;
    prof.eps = outcome(detail::pinned_configuration(m, n, pi_s, pi_t, prof.P, false, false)) ? 1 : -1;
    return prof;
}

struct TriangleResult {
    std::size_t p_rs = 0, p_st = 0, p_rt = 0;
    bool holds = false;
};

/// The comparison calculus for one predilator, memoizing permutations and profiles.
class Calculus {
public:
    explicit Calculus(PredilatorPtr D) : D_(std::move(D)) {}

    const Predilator& predilator() const noexcept { return *D_; }

    PriorityPermutation priority(const TraceElement& t) const
    {
        {
            std::lock_guard<std::mutex> lock(mu_);
            auto it = perms_.find(t);
            if (it != perms_.end())
                return it->second;
        }
        auto pi = priority_permutation(*D_, t);
        std::lock_guard<std::mutex> lock(mu_);
        return perms_.emplace(t, std::move(pi)).first->second;
    }

    SecurityProfile profile(const TraceElement& s, const TraceElement& t) const
    {
        auto key = std::make_pair(s, t);
        {
            std::lock_guard<std::mutex> lock(mu_);
            auto it = profiles_.find(key);
            if (it != profiles_.end())
                return it->second;
        }
        auto prof = security_profile(*D_, s, t, priority(s), priority(t));
        std::lock_guard<std::mutex> lock(mu_);
        return profiles_.emplace(key, std::move(prof)).first->second;
    }

    /// a^sigma_i = en_a(pi_sigma(i)).
    std::vector<Code> priority_values(const Term& t) const
    {
        auto pi = priority(t.trace());
        std::vector<Code> v;
        for (auto i : pi)
            v.push_back(t.support()[i]);
        return v;
    }

    std::strong_ordering compare_same(const Term& s, const Term& t) const
    {
        if (s.trace() != t.trace())
            throw Error(ErrorKind::precondition, "compare_same needs a common constructor");
        check_carriers(s, t);
        auto a = priority_values(s), b = priority_values(t);
        for (std::size_t i = 0; i < a.size(); ++i) {
            auto c = s.carrier().compare(a[i], b[i]);
            if (c != 0)
                return c;
        }
        return std::strong_ordering::equal;
    }

    std::strong_ordering compare_cross(const Term& s, const Term& t) const
    {
        if (s.trace() == t.trace())
            throw Error(ErrorKind::precondition, "compare_cross needs distinct constructors");
        check_carriers(s, t);
        auto prof = profile(s.trace(), t.trace());
        auto a = priority_values(s), b = priority_values(t);
        for (std::size_t i = 0; i < prof.p; ++i) {
            auto c = s.carrier().compare(a[i], b[i]);
            if (c != 0)
                return c;
        }
        return prof.eps > 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    }

    std::strong_ordering compare(const Term& s, const Term& t) const
    {
        if (s == t)
            return std::strong_ordering::equal;
        if (s.trace() == t.trace())
            return compare_same(s, t);
        return compare_cross(s, t);
    }

    TriangleResult triangle_check(const TraceElement& r, const TraceElement& s, const TraceElement& t) const
    {
        if (r == s || s == t || r == t)
            throw Error(ErrorKind::precondition, "triangle check needs three distinct trace elements");
        TriangleResult res;
        res.p_rs = profile(r, s).p;
        res.p_st = profile(s, t).p;
        res.p_rt = profile(r, t).p;
        res.holds = res.p_rt >= std::min(res.p_rs, res.p_st);
        return res;
    }

private:
    static void check_carriers(const Term& s, const Term& t)
    {
        if (!s.carrier().same_as(t.carrier()))
            throw Error(ErrorKind::invalid_term, "terms live over different carriers");
    }

    PredilatorPtr D_;
    mutable std::mutex mu_;
    mutable std::map<TraceElement, PriorityPermutation> perms_;
    mutable std::map<std::pair<TraceElement, TraceElement>, SecurityProfile> profiles_;
};

} // namespace dilator
