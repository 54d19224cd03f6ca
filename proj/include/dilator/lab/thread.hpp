#pragma once

#include "dilator/lab/descent.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace dilator::lab {

/// Profiles for pairs up to this combined level are decided by exhaustion;
/// larger ones are probed.
inline constexpr std::size_t exhaustive_profile_limit = 10;

inline SecurityProfile lab_profile(const Predilator& D, const TraceElement& s, const TraceElement& t,
                                   const PriorityPermutation& pi_s, const PriorityPermutation& pi_t)
{
    if (s.level + t.level <= exhaustive_profile_limit)
        return security_profile(D, s, t, pi_s, pi_t);
    return probed_profile(D, s, t, pi_s, pi_t);
}

struct ThreadExtraction {
    /// Indices i < j of the first repeated trace element, if any.
    std::optional<std::pair<std::size_t, std::size_t>> repeated;
    std::vector<std::vector<std::optional<std::int64_t>>> p, eps;
    /// I(0), I(1), ...: indices into the certificate.
    std::vector<std::size_t> indices;
    /// The relation lives on {0..domain-1}; `less` lists k <_L l.
    std::size_t domain = 0;
    std::vector<std::pair<std::size_t, std::size_t>> less;
    /// For each k < l in the domain: how many I(i) with i > l witness it.
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> witnesses;
    std::vector<std::pair<std::size_t, std::size_t>> disagreements;
    bool conclusive = false;

    /// The relation as a thread order (points past the domain follow omega).
    ThreadOrder order() const
    {
        std::vector<std::int64_t> ranks(domain, 0);
        for (auto [k, l] : less)
            ++ranks[l];
        return ThreadOrder::table(std::move(ranks));
    }
};

/// Finite shadow of the subsequence selection: stage i keeps, after I(i), a
/// greedy chain with pairwise p > i, and then its tail on which priority i
/// holds the final value; I(i+1) heads that tail. The relation on k, l is read
/// from pi of sigma(I(i)) for every i > max(k, l) that is available, and is
/// reported on the points with at least two such i when there are any.
inline ThreadExtraction extract_thread(const DescentCertificate& cert)
{
    require_descending(cert);
    const auto& D = *cert.predilator;
    const auto& ts = cert.terms;
    std::size_t N = ts.size();
    ThreadExtraction x;
    x.p.assign(N, std::vector<std::optional<std::int64_t>>(N));
    x.eps = x.p;

    std::vector<std::size_t> first; // first occurrence of each trace element
    for (std::size_t j = 0; j < N; ++j) {
        std::optional<std::size_t> prev;
        for (auto i : first)
            if (ts[i].trace() == ts[j].trace())
                prev = i;
        if (prev) {
            if (!x.repeated)
                x.repeated = std::make_pair(*prev, j);
        } else {
            first.push_back(j);
        }
    }

    std::vector<PriorityPermutation> pi(N);
    for (auto j : first)
        pi[j] = priority_permutation(D, ts[j].trace());
    for (std::size_t a = 0; a < first.size(); ++a)
        for (std::size_t b = a + 1; b < first.size(); ++b) {
            auto i = first[a], j = first[b];
            auto prof = lab_profile(D, ts[i].trace(), ts[j].trace(), pi[i], pi[j]);
            x.p[i][j] = x.p[j][i] = static_cast<std::int64_t>(prof.p);
            x.eps[i][j] = prof.eps;
            x.eps[j][i] = -prof.eps;
        }

    auto value = [&](std::size_t j, std::size_t i) { return ts[j].support()[pi[j][i]]; };
    if (first.empty())
        return x;
    std::vector<std::size_t> cur = first;
    x.indices.push_back(cur.front());
    for (std::size_t i = 0;; ++i) {
        std::vector<std::size_t> chain;
        for (std::size_t a = 1; a < cur.size(); ++a) {
            auto j = cur[a];
            if (ts[j].arity() <= i)
                continue;
            bool ok = true;
            for (auto c : chain)
                ok = ok && *x.p[c][j] > static_cast<std::int64_t>(i);
            if (ok)
                chain.push_back(j);
        }
        if (chain.empty())
            break;
        auto v = value(chain.back(), i);
        std::size_t start = chain.size() - 1;
        while (start > 0 && value(chain[start - 1], i) == v)
            --start;
        cur.assign(chain.begin() + static_cast<std::ptrdiff_t>(start), chain.end());
        x.indices.push_back(cur.front());
    }

    std::size_t n_idx = x.indices.size();
    x.domain = n_idx >= 3 ? n_idx - 2 : (n_idx == 2 ? 1 : 0);
    for (std::size_t k = 0; k < x.domain; ++k)
        for (std::size_t l = k + 1; l < x.domain; ++l) {
            std::optional<bool> verdict;
            std::size_t count = 0;
            for (std::size_t i = l + 1; i < n_idx; ++i) {
                const auto& q = pi[x.indices[i]];
                bool kl = q[k] < q[l];
                ++count;
                if (verdict && *verdict != kl)
                    x.disagreements.emplace_back(k, l);
                verdict = kl;
            }
            x.witnesses[{k, l}] = count;
            if (*verdict)
                x.less.emplace_back(k, l);
            else
                x.less.emplace_back(l, k);
        }
    std::sort(x.disagreements.begin(), x.disagreements.end());
    x.disagreements.erase(std::unique(x.disagreements.begin(), x.disagreements.end()), x.disagreements.end());
    x.conclusive = x.domain >= 1 && n_idx >= 3 && x.disagreements.empty();
    return x;
}

/// rho in D_L(n) -> a code of (D o E)(n).
using ThreadFamily = std::function<Code(std::size_t, const Code&)>;

/// eta_n(rho) = D(rho-bar o g_i)(sigma(I(i+1))) for rho of length i: g_i puts
/// priority k < i of sigma at omega*(1 + pi^L_i(k)) and the other positions
/// into the gaps, rho-bar sends omega*(1+l)+m to omega*(1+rho(l))+m.
inline Code thread_image(const DescentCertificate& cert, const ThreadExtraction& x, std::size_t n, const Code& rho)
{
    const auto& v = rho.ints();
    std::size_t i = v.size();
    if (i + 1 >= x.indices.size() || x.domain < i)
        throw Error(ErrorKind::precondition, "extraction too shallow for a sequence of length " + std::to_string(i));
    for (auto r : v)
        if (r < 0 || static_cast<std::size_t>(r) >= n)
            throw Error(ErrorKind::precondition, rho.str() + " is not in level " + std::to_string(n));
    const auto& s = cert.terms[x.indices[i + 1]];
    auto pi = priority_permutation(*cert.predilator, s.trace());
    auto rank = dl_priority(x.order(), i);
    std::size_t m = s.arity();
    std::vector<std::optional<std::int64_t>> pinned(m);
    for (std::size_t k = 0; k < i; ++k)
        pinned[pi[k]] = static_cast<std::int64_t>(rank[k]);

    std::vector<Code> image;
    std::optional<std::int64_t> block;
    std::int64_t offset = 0;
    for (std::size_t pos = 0; pos < m; ++pos) {
        if (pinned[pos]) {
            if (block && *pinned[pos] <= *block)
                throw Error(ErrorKind::internal, "priorities of " + s.str() + " disagree with the extracted order");
            block = *pinned[pos];
            offset = 0;
        }
        std::optional<std::int64_t> target;
        if (block)
            target = v[static_cast<std::size_t>(*block)];
        image.push_back(EPredilator::element(target, offset));
        ++offset;
    }
    return Code::term(s.sigma(), std::move(image));
}

/// eta_n on all of D_L(n), with the order checked before returning.
inline std::vector<std::pair<Code, Code>> thread_family(const DescentCertificate& cert, const ThreadExtraction& x,
                                                        std::size_t n)
{
    if (!x.conclusive || x.indices.size() < n + 2 || x.domain < n)
        throw Error(ErrorKind::precondition, "extraction is not conclusive through index " + std::to_string(n + 1));
    DL source(x.order());
    ComposeE target(cert.predilator);
    auto lv = source.level(n);
    auto tv = target.level(n);
    std::vector<std::pair<Code, Code>> out;
    for (const auto& rho : lv.enumerate(std::size_t{1} << n))
        out.emplace_back(rho, thread_image(cert, x, n, rho));
    for (const auto& [a, fa] : out)
        for (const auto& [b, fb] : out)
            if (lv.less(a, b) && !tv.less(fa, fb))
                throw Error(ErrorKind::internal, "thread family is not order preserving at " + a.str() + " < " + b.str());
    return out;
}

inline ThreadFamily thread_family_fn(const DescentCertificate& cert, const ThreadExtraction& x)
{
    return [cert, x](std::size_t n, const Code& rho) { return thread_image(cert, x, n, rho); };
}

/// Injectivity, order preservation and every naturality square
/// eta_n o D_L(f) = (D o E)(f) o eta_m for f : m -> n, n <= n_max.
inline ValidationReport verify_thread(const PredilatorPtr& D, const ThreadOrder& L, const ThreadFamily& eta,
                                      std::size_t n_max)
{
    ValidationReport rep;
    rep.level_bound = n_max;
    detail::Recorder rec(rep);
    DL source(L);
    ComposeE target(D);
    std::vector<std::vector<Code>> dom(n_max + 1), img(n_max + 1);
    for (std::size_t n = 0; n <= n_max; ++n) {
        auto lv = source.level(n);
        auto tv = target.level(n);
        dom[n] = lv.enumerate(std::size_t{1} << n);
        for (const auto& rho : dom[n]) {
            auto y = eta(n, rho);
            rec.check(tv.valid(y), "validity", [&] { return y.str() + " at level " + std::to_string(n); });
            img[n].push_back(y);
        }
        for (std::size_t a = 0; a < dom[n].size(); ++a)
            for (std::size_t b = 0; b < dom[n].size(); ++b) {
                if (a == b)
                    continue;
                rec.check(img[n][a] != img[n][b], "injectivity",
                          [&] { return dom[n][a].str() + ", " + dom[n][b].str() + " at level " + std::to_string(n); });
                if (lv.less(dom[n][a], dom[n][b]) && img[n][a] != img[n][b])
                    rec.check(tv.less(img[n][a], img[n][b]), "order-preservation",
                              [&] { return dom[n][a].str() + " < " + dom[n][b].str(); });
            }
    }
    for (std::size_t n = 0; n <= n_max; ++n)
        for (std::size_t m = 0; m <= n; ++m)
            for (const auto& f : enumerate_embeddings(m, n))
                for (std::size_t a = 0; a < dom[m].size(); ++a) {
                    auto lhs = eta(n, source.act(f, dom[m][a]));
                    auto rhs = target.act(f, img[m][a]);
                    rec.check(lhs == rhs, "naturality", [&] { return "square for " + f.str() + " at " + dom[m][a].str(); });
                }
    return rep;
}

} // namespace dilator::lab
