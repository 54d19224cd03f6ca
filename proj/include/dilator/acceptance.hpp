#pragma once

#include "dilator/calculus.hpp"
#include "dilator/lab/descent.hpp"
#include "dilator/lab/eta.hpp"
#include "dilator/lab/limit_tree.hpp"
#include "dilator/lab/probe.hpp"
#include "dilator/lab/thread.hpp"
#include "dilator/zoo.hpp"

#include <chrono>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace dilator::acceptance {

struct Outcome {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0;
};

namespace detail {

struct Criterion {
    int id;
    const char* name;
    double budget; // seconds, 0 for none
    std::function<bool(std::ostringstream&)> run;
};

inline std::vector<Code> nats(const std::vector<std::int64_t>& xs)
{
    std::vector<Code> v;
    for (auto x : xs)
        v.push_back(Code::nat(x));
    return v;
}

inline std::vector<PredilatorPtr> core_family()
{
    return {make_predilator("two-power"), make_predilator("dl:omega"), make_predilator("dl:rev-omega"),
            make_predilator("dl:zigzag"), make_predilator("E")};
}

inline bool oracle_equivalence(std::ostringstream& out)
{
    auto carrier = build_order(OrderExpr::nat(6));
    std::size_t pairs = 0, bad = 0;
    for (const auto& D : core_family()) {
        Calculus C(D);
        std::vector<Term> ts;
        for (std::size_t k = 0; k <= 4; ++k) {
            auto tr = trace_at(*D, k, 8);
            for (const auto& f : enumerate_embeddings(k, 6)) {
                std::vector<Code> sp;
                for (auto i : f.images())
                    sp.push_back(Code::nat(static_cast<std::int64_t>(i)));
                for (const auto& te : tr)
                    ts.push_back(make_term(*D, te.sigma, carrier, sp));
            }
        }
        for (const auto& s : ts)
            for (const auto& t : ts) {
                ++pairs;
                if (C.compare(s, t) != compare_direct(*D, s, t))
                    ++bad;
            }
    }
    out << pairs << " pairs, " << bad << " disagreements";
    return bad == 0 && pairs > 0;
}

inline bool security_brute_force(std::ostringstream& out)
{
    std::size_t profiles = 0, bad = 0;
    for (const auto& D : core_family()) {
        Calculus C(D);
        auto tr = trace_upto(*D, 4, 8);
        for (const auto& s : tr)
            for (const auto& t : tr) {
                if (s == t || s.level + t.level > 8)
                    continue;
                ++profiles;
                auto st = C.profile(s, t), ts = C.profile(t, s);
                bool ok = st.p == ts.p && st.eps == -ts.eps && st.p <= st.P;
                auto pi_s = C.priority(s), pi_t = C.priority(t);
                ok = ok && is_secure(*D, s, t, pi_s, pi_t, st.p);
                if (st.p > 0) {
                    ok = ok && st.witness_less && st.witness_greater;
                    if (ok) {
                        auto top = D->level(s.level + t.level);
                        auto pinned = [&](const std::pair<Morphism, Morphism>& w) {
                            for (std::size_t i = 0; i + 1 < st.p; ++i)
                                if (w.first(pi_s[i]) != w.second(pi_t[i]))
                                    return false;
                            return true;
                        };
                        ok = pinned(*st.witness_less) && pinned(*st.witness_greater) &&
                             top.less(D->act(st.witness_less->first, s.sigma), D->act(st.witness_less->second, t.sigma)) &&
                             top.less(D->act(st.witness_greater->second, t.sigma),
                                      D->act(st.witness_greater->first, s.sigma));
                    }
                }
                if (!ok)
                    ++bad;
            }
    }
    out << profiles << " ordered trace pairs, " << bad << " failures";
    return bad == 0 && profiles > 0;
}

inline bool triangle(std::ostringstream& out)
{
    std::size_t triples = 0, bad = 0;
    for (const auto& D : {make_predilator("two-power"), make_predilator("dl:omega")}) {
        Calculus C(D);
        auto tr = trace_upto(*D, 4, 8);
        for (const auto& a : tr)
            for (const auto& b : tr)
                for (const auto& c : tr) {
                    if (a == b || b == c || a == c)
                        continue;
                    ++triples;
                    if (!C.triangle_check(a, b, c).holds)
                        ++bad;
                }
    }
    out << triples << " triples, " << bad << " violations";
    return bad == 0 && triples > 0;
}

inline bool binary_identification(std::ostringstream& out)
{
    TwoPower B;
    DL D(ThreadOrder::rev_omega());
    std::size_t checked = 0;
    for (std::size_t n = 0; n <= 6; ++n) {
        auto xs = B.level(n).enumerate(std::size_t{1} << n);
        auto ys = D.level(n).enumerate(std::size_t{1} << n);
        if (xs.size() != ys.size() || xs.size() != (std::size_t{1} << n))
            return false;
        std::set<Code> image;
        for (const auto& x : xs) {
            auto s = binary_to_sequence(x.value());
            if (!D.level(n).valid(s) || sequence_to_binary(s) != x.value())
                return false;
            image.insert(s);
        }
        if (image.size() != xs.size())
            return false;
        for (const auto& x : xs)
            for (const auto& y : xs) {
                ++checked;
                if (D.level(n).compare(binary_to_sequence(x.value()), binary_to_sequence(y.value())) !=
                    (x.value() <=> y.value()))
                    return false;
            }
    }
    out << checked << " ordered pairs over levels 0..6";
    return true;
}

inline bool descent(std::ostringstream& out)
{
    for (const auto& L : {ThreadOrder::omega(), ThreadOrder::rev_omega(), ThreadOrder::zigzag()}) {
        auto c = lab::dl_descent(L, 20);
        if (c.terms.size() != 21)
            return false;
        for (std::size_t i = 0; i + 1 < c.terms.size(); ++i)
            if (compare_direct(*c.predilator, c.terms[i + 1], c.terms[i]) >= 0) {
                out << L.name() << " fails at " << i;
                return false;
            }
    }
    auto c = lab::dl_descent(ThreadOrder::omega(), 20);
    auto r = lab::embedding_from_descent(ThreadOrder::omega(), c.carrier, c);
    for (std::size_t j = 0; j <= 17; ++j)
        if (!r.values.count(j)) {
            out << "position " << j << " unsettled";
            return false;
        }
    for (const auto& [j, x] : r.values)
        for (const auto& [k, y] : r.values)
            if (j < k && !c.carrier.less(x, y))
                return false;
    out << "3 threads x 21 terms; embedding defined on 0.." << r.values.rbegin()->first;
    return r.order_preserving;
}

inline Code random_base_power(std::mt19937& rng)
{
    std::vector<Code> t;
    for (std::int64_t g = 2; g >= 0; --g)
        if (rng() % 2)
            t.push_back(Code::pair(Code::nat(g), Code::nat(static_cast<std::int64_t>(rng() % 16))));
    return Code::terms(std::move(t));
}

inline lab::ScatteredData scattered_instance(bool reversed)
{
    lab::ScatteredData d;
    d.r = 1;
    for (std::int64_t j = 0; j < 4; ++j) {
        d.h.push_back({reversed ? -j : j});
        d.N.push_back(j);
    }
    return d;
}

inline bool eta(std::ostringstream& out)
{
    auto g3 = OrderExpr::nat(3);
    auto om = OrderExpr::omega();
    auto src = build_order(OrderExpr::base_power(om, g3));
    auto carrier = build_order(lab::eta_power_carrier(g3, om));
    std::mt19937 rng(2024);
    for (const auto& L : {ThreadOrder::omega(), ThreadOrder::rev_omega()}) {
        DL D(L);
        for (std::size_t pairs = 0; pairs < 200;) {
            auto x = random_base_power(rng), y = random_base_power(rng);
            if (x == y)
                continue;
            if (src.less(y, x))
                std::swap(x, y);
            ++pairs;
            if (compare_direct(D, lab::eta_power(g3, L, om, x), lab::eta_power(g3, L, om, y)) >= 0) {
                out << "eta_power not monotone at " << x.str() << " < " << y.str();
                return false;
            }
        }
        for (int s = 0; s < 20; ++s) {
            auto x = random_base_power(rng);
            auto f = [](const Code& y) { return Code::nat(2 * y.value() + 3); };
            std::vector<Code> fx;
            for (const auto& t : x.kids())
                fx.push_back(Code::pair(t.hi(), f(t.lo())));
            auto lhs = lab::eta_power(g3, L, om, Code::terms(fx));
            auto rhs = extend_act(lab::eta_power(g3, L, om, x), carrier,
                                  [&](const Code& c) -> std::optional<Code> { return Code::pair(c.hi(), f(c.lo())); });
            if (!(lhs == rhs)) {
                out << "naturality square fails at " << x.str();
                return false;
            }
        }
    }
    auto n3 = OrderExpr::nat(3);
    auto two = build_order(OrderExpr::two_power(n3));
    auto xs = two.enumerate(8);
    for (bool rev : {true, false}) {
        auto L = rev ? ThreadOrder::rev_omega() : ThreadOrder::omega();
        auto d = scattered_instance(rev);
        DL D(L);
        std::size_t checks = 0;
        for (const auto& x : xs)
            for (const auto& y : xs)
                if (two.less(x, y)) {
                    ++checks;
                    if (compare_direct(D, lab::eta_scattered(d, L, n3, x), lab::eta_scattered(d, L, n3, y)) >= 0)
                        return false;
                }
        if (checks != 28)
            return false;
    }
    out << "eta_power 2x(200 pairs, 20 squares); eta_scattered 2x28 pairs";
    return true;
}

inline bool thread_round_trip(std::ostringstream& out)
{
    auto M = ThreadOrder::omega();
    auto c = lab::dl_descent(M, 30);
    auto x = lab::extract_thread(c);
    if (!x.conclusive || x.repeated) {
        out << "extraction inconclusive";
        return false;
    }
    for (auto [k, l] : x.less)
        if (!M.less(static_cast<std::int64_t>(k), static_cast<std::int64_t>(l))) {
            out << "relation " << k << " < " << l << " contradicts omega";
            return false;
        }
    if (x.less.size() != x.domain * (x.domain - 1) / 2)
        return false;
    lab::thread_family(c, x, 2);
    auto rep = lab::verify_thread(c.predilator, x.order(), lab::thread_family_fn(c, x), 2);
    out << "relation on 0.." << x.domain - 1 << ", verify_thread " << rep.checks << " checks, "
        << rep.violations.size() << " violations";
    return rep.pass();
}

inline bool probe(std::ostringstream& out)
{
    auto D = two_power();
    for (std::int64_t k = 0; k <= 4; ++k)
        if (!lab::descend_probe(D, build_order(OrderExpr::nat(k)), 16, 32).exhausted()) {
            out << "nat(" << k << ") not exhausted";
            return false;
        }
    auto rev = build_order(OrderExpr::rev_omega());
    auto r = lab::descend_probe(D, rev, 3, 8);
    if (r.exhausted())
        return false;
    const auto& ts = r.certificate->terms;
    for (std::size_t i = 0; i + 1 < ts.size(); ++i)
        if (compare_direct(*D, ts[i + 1], ts[i]) >= 0)
            return false;
    auto w = lab::descend_probe(make_DL(ThreadOrder::omega()), build_order(lab::descent_carrier(ThreadOrder::omega())), 3, 8);
    if (w.exhausted() || lab::first_non_descent(*w.certificate))
        return false;
    out << "nat(0..4) exhausted; rev-omega certificate of " << ts.size() << " terms re-verified";
    return true;
}

inline bool eps0(std::ostringstream& out)
{
    auto two = build_order(OrderExpr::two_power(OrderExpr::eps0()));
    auto e0 = build_order(OrderExpr::eps0());
    auto xs = two.enumerate(200);
    if (xs.size() != 200)
        return false;
    std::size_t pairs = 0;
    for (const auto& x : xs)
        for (const auto& y : xs) {
            ++pairs;
            if (two.compare(x, y) != e0.compare(embed_two_power_eps0(x), embed_two_power_eps0(y)))
                return false;
        }
    out << pairs << " ordered pairs";
    return true;
}

inline lab::LimitTable example_table(bool step, std::size_t l)
{
    lab::LimitTable t;
    t.l = l;
    for (std::size_t k = 0; k < l; ++k) {
        t.d.emplace_back();
        for (std::size_t n = 0; n < l; ++n)
            t.d.back().push_back(step && k >= n ? 1 : 0);
    }
    return t;
}

inline bool limit_tree(std::ostringstream& out)
{
    std::size_t nodes = 0;
    for (bool step : {false, true}) {
        auto tr = lab::limit_tree(example_table(step, 6));
        for (std::size_t n = 0; n < 6; ++n)
            if (tr.K[n] != (step ? static_cast<std::int64_t>(n) : 0))
                return false;
        for (const auto& s : tr.nodes) {
            ++nodes;
            for (std::size_t n = 0; n < s.size(); ++n)
                if (!lab::tree_clause_i(tr.table, s, n) || !lab::tree_clause_ii(tr.table, s, n))
                    return false;
            auto b = Code::node(tr.branch(s.size()));
            if (!tr.kb.valid(b) || tr.kb.compare(Code::node(s), b) > 0)
                return false;
        }
    }
    out << nodes << " nodes over both tables";
    return true;
}

inline std::vector<Criterion> criteria()
{
    return {
        {1, "oracle-equivalence", 60, oracle_equivalence},
        {2, "security-brute-force", 120, security_brute_force},
        {3, "triangle-lemma", 0, triangle},
        {4, "binary-identification", 0, binary_identification},
        {5, "descent", 0, descent},
        {6, "eta-order-preservation", 0, eta},
        {7, "thread-round-trip", 0, thread_round_trip},
        {8, "probe-soundness", 30, probe},
        {9, "eps0-embedding", 0, eps0},
        {10, "limit-tree", 0, limit_tree},
    };
}

} // namespace detail

/// Runs every criterion; exceptions count as failures.
inline std::vector<Outcome> run_all()
{
    std::vector<Outcome> res;
    for (const auto& c : detail::criteria()) {
        Outcome o{c.id, c.name, false, "", 0};
        std::ostringstream os;
        auto t0 = std::chrono::steady_clock::now();
        try {
            o.pass = c.run(os);
        } catch (const std::exception& e) {
            os << "exception: " << e.what();
        }
        o.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (c.budget > 0 && o.seconds > c.budget) {
            o.pass = false;
            os << " (over the " << c.budget << " s budget)";
        }
        o.detail = os.str();
        res.push_back(std::move(o));
    }
    return res;
}

/// Timing is left out when `timed` is false so the line is reproducible.
inline std::string line(const Outcome& o, bool timed = true)
{
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(2);
    os << (o.pass ? "PASS" : "FAIL") << " [" << o.id << "] " << o.name << ": " << o.detail;
    if (timed)
        os << " (" << o.seconds << " s)";
    return os.str();
}

} // namespace dilator::acceptance
