#include "dilator/lab/descent.hpp"
#include "dilator/lab/eta.hpp"
#include "dilator/lab/limit_tree.hpp"
#include "dilator/lab/probe.hpp"
#include "dilator/lab/thread.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace dilator;
using namespace dilator::lab;

namespace {

std::vector<ThreadOrder> registry_threads()
{
    return {ThreadOrder::omega(), ThreadOrder::rev_omega(), ThreadOrder::zigzag(),
            ThreadOrder::perturb(ThreadOrder::zigzag(), {{1, 4}, {0, 2}})};
}

Code w(std::int64_t x, std::int64_t k) { return omega_point(Code::nat(x), k); }

std::vector<Code> nats(std::initializer_list<std::int64_t> xs)
{
    std::vector<Code> v;
    for (auto x : xs)
        v.push_back(Code::nat(x));
    return v;
}

// alpha*s + y in prod(alpha, two-power(gamma)) with s given by its exponents
Code ap(std::initializer_list<std::int64_t> s, std::int64_t y) { return Code::pair(Code::exps(nats(s)), Code::nat(y)); }

Code bp(std::vector<std::pair<std::int64_t, std::int64_t>> xs)
{
    std::vector<Code> t;
    for (auto [g, a] : xs)
        t.push_back(Code::pair(Code::nat(g), Code::nat(a)));
    return Code::terms(std::move(t));
}

// random element of (1+omega)^nat(3): a random exponent subset, labels below 12
Code random_base_power(std::mt19937& rng)
{
    std::vector<std::pair<std::int64_t, std::int64_t>> xs;
    for (std::int64_t g = 2; g >= 0; --g)
        if (rng() % 2)
            xs.emplace_back(g, static_cast<std::int64_t>(rng() % 12));
    return bp(xs);
}

ScatteredData rev_data()
{
    ScatteredData d;
    d.r = 1;
    for (std::int64_t j = 0; j < 4; ++j) {
        d.h.push_back({-j});
        d.N.push_back(j);
    }
    return d;
}

ScatteredData omega_data()
{
    ScatteredData d;
    d.r = 1;
    for (std::int64_t j = 0; j < 4; ++j) {
        d.h.push_back({j});
        d.N.push_back(j);
    }
    return d;
}

Code qb(std::optional<std::int64_t> a, std::int64_t k)
{
    return Code::pair(a ? Code::in(Code::nat(*a)) : Code::top(), Code::nat(k));
}

// identity family of D_L into D_L o E: x -> omega*(1+x)+0
ThreadFamily canonical_family()
{
    return [](std::size_t, const Code& rho) {
        std::vector<Code> sp;
        for (auto x : rho.ints())
            sp.push_back(EPredilator::element(x, 0));
        return Code::term(DL::full(rho.ints().size()), sp);
    };
}

} // namespace

TEST(Descent, Examples)
{
    auto c = dl_descent(ThreadOrder::omega(), 2);
    ASSERT_EQ(c.terms.size(), 3u);
    EXPECT_EQ(c.terms[0].support().codes(), (std::vector<Code>{w(0, 1)}));
    EXPECT_EQ(c.terms[1].support().codes(), (std::vector<Code>{w(0, 0), w(1, 1)}));
    EXPECT_EQ(c.terms[2].support().codes(), (std::vector<Code>{w(0, 0), w(1, 0), w(2, 1)}));

    auto r = dl_descent(ThreadOrder::rev_omega(), 1);
    EXPECT_EQ(r.terms[1].support().codes(), (std::vector<Code>{w(1, 1), w(0, 0)}));
    EXPECT_EQ(dl_descent(ThreadOrder::zigzag(), 0).terms.size(), 1u);
}

TEST(Descent, StrictlyDescendsForEveryThread)
{
    for (const auto& L : registry_threads()) {
        auto c = dl_descent(L, 20);
        ASSERT_EQ(c.terms.size(), 21u);
        for (std::size_t i = 0; i + 1 < c.terms.size(); ++i)
            EXPECT_TRUE(compare_direct(*c.predilator, c.terms[i + 1], c.terms[i]) < 0) << L.name() << " " << i;
        // the displayed priority values
        for (std::size_t n = 0; n <= 20; ++n)
            for (std::size_t i = 0; i <= n; ++i)
                EXPECT_EQ(dl_priority_value(L, c.terms[n], i), w(static_cast<std::int64_t>(i), i == n ? 1 : 0));
    }
}

TEST(Embedding, FromDescentOverOmega)
{
    auto c = dl_descent(ThreadOrder::omega(), 20);
    auto r = embedding_from_descent(ThreadOrder::omega(), c.carrier, c);
    EXPECT_TRUE(r.conclusive);
    EXPECT_TRUE(r.order_preserving);
    for (std::int64_t j = 0; j <= 17; ++j) {
        ASSERT_TRUE(r.values.count(static_cast<std::size_t>(j)));
        EXPECT_EQ(r.values.at(static_cast<std::size_t>(j)), w(j, 0));
    }
    for (const auto& [j, x] : r.values)
        for (const auto& [k, y] : r.values)
            if (j < k) {
                EXPECT_TRUE(c.carrier.less(x, y));
            }
}

TEST(Embedding, SmallCertificates)
{
    auto omega = build_order(OrderExpr::omega());
    auto D = make_DL(ThreadOrder::omega());
    DescentCertificate c{D, omega,
                         {make_term(*D, DL::full(1), omega, nats({1})), make_term(*D, DL::full(2), omega, nats({0, 2})),
                          make_term(*D, DL::full(3), omega, nats({0, 1, 3}))}};
    auto r = embedding_from_descent(ThreadOrder::omega(), omega, c);
    ASSERT_TRUE(r.values.count(0));
    EXPECT_EQ(r.values.at(0), Code::nat(0));
    EXPECT_EQ(r.settled_from.at(0), 1u);
    // priority 1 has been seen with two values only, once each
    EXPECT_FALSE(r.values.count(1));

    DescentCertificate one{D, omega, {c.terms[0]}};
    auto r1 = embedding_from_descent(ThreadOrder::omega(), omega, one);
    EXPECT_TRUE(r1.values.empty());
    EXPECT_FALSE(r1.conclusive);

    auto rev = build_order(OrderExpr::rev_omega());
    DescentCertificate moving{D, rev,
                              {make_term(*D, DL::full(1), rev, nats({0})), make_term(*D, DL::full(1), rev, nats({1})),
                               make_term(*D, DL::full(1), rev, nats({2}))}};
    auto r2 = embedding_from_descent(ThreadOrder::omega(), rev, moving);
    EXPECT_TRUE(r2.values.empty());
    EXPECT_FALSE(r2.conclusive);

    DescentCertificate up{D, omega, {c.terms[2], c.terms[1]}};
    EXPECT_THROW(embedding_from_descent(ThreadOrder::omega(), omega, up), Error);
}

TEST(EtaPower, Examples)
{
    auto g2 = OrderExpr::nat(2);
    auto om = OrderExpr::omega();
    auto x = bp({{1, 5}, {0, 7}});
    EXPECT_EQ(eta_power(g2, ThreadOrder::omega(), om, x).support().codes(),
              (std::vector<Code>{ap({1}, 5), ap({1, 0}, 7)}));
    EXPECT_EQ(eta_power(g2, ThreadOrder::rev_omega(), om, x).support().codes(),
              (std::vector<Code>{ap({0}, 7), ap({1}, 5)}));
    EXPECT_EQ(eta_power(g2, ThreadOrder::omega(), om, bp({})).arity(), 0u);
    EXPECT_THROW(eta_power(g2, ThreadOrder::omega(), om, bp({{0, 1}, {1, 1}})), Error);
}

TEST(EtaPower, StrictlyMonotoneAndNatural)
{
    auto g3 = OrderExpr::nat(3);
    auto om = OrderExpr::omega();
    auto src = build_order(OrderExpr::base_power(om, g3));
    auto carrier = build_order(eta_power_carrier(g3, om));
    std::mt19937 rng(7);
    for (const auto& L : registry_threads()) {
        DL D(L);
        std::size_t pairs = 0;
        while (pairs < 200) {
            auto x = random_base_power(rng), y = random_base_power(rng);
            if (x == y)
                continue;
            if (src.less(y, x))
                std::swap(x, y);
            ++pairs;
            EXPECT_TRUE(compare_direct(D, eta_power(g3, L, om, x), eta_power(g3, L, om, y)) < 0)
                << L.name() << " " << x.str() << " " << y.str();
        }
        // alpha -> alpha along y -> 3y+1
        auto f = [](const Code& y) { return Code::nat(3 * y.value() + 1); };
        for (int s = 0; s < 20; ++s) {
            auto x = random_base_power(rng);
            std::vector<Code> fx;
            for (const auto& t : x.kids())
                fx.push_back(Code::pair(t.hi(), f(t.lo())));
            auto lhs = eta_power(g3, L, om, Code::terms(fx));
            auto rhs = extend_act(eta_power(g3, L, om, x), carrier, [&](const Code& c) -> std::optional<Code> {
                return Code::pair(c.hi(), f(c.lo()));
            });
            EXPECT_EQ(lhs, rhs) << L.name() << " " << x.str();
        }
    }
}

TEST(EtaScattered, Examples)
{
    auto n2 = OrderExpr::nat(2);
    auto a = eta_scattered(rev_data(), ThreadOrder::rev_omega(), n2, Code::exps(nats({1, 0})));
    EXPECT_EQ(a.support().codes(), (std::vector<Code>{Code::pair(qb(1, 0), Code::nat(0)), Code::pair(qb({}, 0), Code::nat(1))}));

    auto n3 = OrderExpr::nat(3);
    auto b = eta_scattered(omega_data(), ThreadOrder::omega(), n3, Code::exps(nats({2, 0})));
    EXPECT_EQ(b.support().codes(), (std::vector<Code>{Code::pair(qb({}, 0), Code::nat(2)), Code::pair(qb({}, 1), Code::nat(0))}));
    EXPECT_EQ(eta_scattered(omega_data(), ThreadOrder::omega(), n3, Code::exps({})).arity(), 0u);

    auto bad = omega_data();
    bad.N[2] = 1;
    EXPECT_THROW(eta_scattered(bad, ThreadOrder::omega(), n3, Code::exps({})), Error);
    EXPECT_THROW(eta_scattered(rev_data(), ThreadOrder::omega(), n3, Code::exps({})), Error);
}

TEST(EtaScattered, MonotoneOnAllPairs)
{
    auto n3 = OrderExpr::nat(3);
    auto two = build_order(OrderExpr::two_power(n3));
    auto xs = two.enumerate(100);
    ASSERT_EQ(xs.size(), 8u);
    for (auto [d, L] : {std::pair{rev_data(), ThreadOrder::rev_omega()}, std::pair{omega_data(), ThreadOrder::omega()}}) {
        DL D(L);
        std::size_t checks = 0;
        for (const auto& x : xs)
            for (const auto& y : xs)
                if (two.less(x, y)) {
                    ++checks;
                    EXPECT_TRUE(compare_direct(D, eta_scattered(d, L, n3, x), eta_scattered(d, L, n3, y)) < 0);
                }
        EXPECT_EQ(checks, 28u);
    }
}

TEST(Extraction, RepeatedConstructor)
{
    auto rev = build_order(OrderExpr::rev_omega());
    auto D = two_power();
    DescentCertificate c{D, rev, {}};
    for (std::int64_t x = 0; x < 4; ++x)
        c.terms.push_back(make_term(*D, Code::nat(1), rev, nats({x})));
    auto ext = extract_thread(c);
    ASSERT_TRUE(ext.repeated);
    EXPECT_EQ(*ext.repeated, std::make_pair(std::size_t{0}, std::size_t{1}));
    EXPECT_FALSE(ext.conclusive);
}

TEST(Extraction, MixedLevelTwoPower)
{
    auto omega = build_order(OrderExpr::omega());
    auto D = two_power();
    DescentCertificate c{D, omega,
                         {make_term(*D, Code::nat(1), omega, nats({5})), make_term(*D, Code::nat(3), omega, nats({2, 4})),
                          make_term(*D, Code::nat(3), omega, nats({1, 4}))}};
    auto ext = extract_thread(c);
    Calculus C(D);
    auto prof = C.profile({Code::nat(1), 1}, {Code::nat(3), 2});
    EXPECT_EQ(ext.p[0][1], static_cast<std::int64_t>(prof.p));
    EXPECT_EQ(ext.eps[0][1], prof.eps);
    EXPECT_EQ(ext.eps[1][0], -prof.eps);
    EXPECT_FALSE(ext.p[1][2]);
    ASSERT_TRUE(ext.repeated);
    EXPECT_EQ(ext.domain, 1u);
    EXPECT_FALSE(ext.conclusive);

    DescentCertificate one{D, omega, {c.terms[0]}};
    auto e1 = extract_thread(one);
    EXPECT_FALSE(e1.p[0][0]);
    EXPECT_EQ(e1.domain, 0u);
    EXPECT_FALSE(e1.conclusive);
}

TEST(Extraction, ProbedProfilesMatchExhaustiveOnes)
{
    for (const auto& D : {two_power(), make_DL(ThreadOrder::omega()), make_DL(ThreadOrder::zigzag()), make_E()}) {
        Calculus C(D);
        auto tr = trace_upto(*D, 4, 8);
        for (const auto& s : tr)
            for (const auto& t : tr) {
                if (s == t || s.level + t.level > 8)
                    continue;
                auto a = C.profile(s, t);
                auto b = probed_profile(*D, s, t, C.priority(s), C.priority(t));
                EXPECT_EQ(a.p, b.p) << D->name() << s.str() << t.str();
                EXPECT_EQ(a.eps, b.eps) << D->name() << s.str() << t.str();
            }
    }
}

TEST(Thread, RoundTripThroughDescent)
{
    auto c = dl_descent(ThreadOrder::omega(), 30);
    auto ext = extract_thread(c);
    EXPECT_FALSE(ext.repeated);
    ASSERT_TRUE(ext.conclusive);
    EXPECT_GE(ext.domain, 3u);
    for (auto [k, l] : ext.less)
        EXPECT_LT(k, l);
    EXPECT_EQ(ext.less.size(), ext.domain * (ext.domain - 1) / 2);

    auto fam = thread_family(c, ext, 2);
    EXPECT_EQ(fam.size(), 4u);
    auto rep = verify_thread(c.predilator, ext.order(), thread_family_fn(c, ext), 2);
    EXPECT_TRUE(rep.pass());
    for (const auto& v : rep.violations)
        ADD_FAILURE() << v.law << ": " << v.witness;

    auto f0 = thread_family(c, ext, 0);
    ASSERT_EQ(f0.size(), 1u);
    EXPECT_EQ(f0[0].second.sigma(), c.terms[ext.indices[1]].sigma());

    // the square for the unique f : 1 -> 2 ... and its two siblings
    DL src(ext.order());
    ComposeE tgt(c.predilator);
    auto eta = thread_family_fn(c, ext);
    for (const auto& f : enumerate_embeddings(1, 2))
        for (const auto& rho : src.level(1).enumerate(4))
            EXPECT_EQ(eta(2, src.act(f, rho)), tgt.act(f, eta(1, rho)));
}

TEST(Thread, ZigzagDescentRecoversItsOrder)
{
    auto L = ThreadOrder::zigzag();
    auto c = dl_descent(L, 12);
    auto ext = extract_thread(c);
    ASSERT_TRUE(ext.conclusive);
    for (auto [k, l] : ext.less)
        EXPECT_TRUE(L.less(static_cast<std::int64_t>(k), static_cast<std::int64_t>(l)));
    auto rep = verify_thread(c.predilator, ext.order(), thread_family_fn(c, ext), 3);
    EXPECT_TRUE(rep.pass());
}

TEST(Thread, VerifyExamples)
{
    for (const auto& L : registry_threads())
        EXPECT_TRUE(verify_thread(make_DL(L), L, canonical_family(), 3).pass()) << L.name();

    auto K = make_predilator("constant");
    ThreadFamily flat = [](std::size_t, const Code&) { return Code::term(Code::nat(0), {}); };
    auto bad = verify_thread(K, ThreadOrder::omega(), flat, 1);
    EXPECT_TRUE(bad.has("injectivity"));
    EXPECT_TRUE(verify_thread(K, ThreadOrder::omega(), flat, 0).pass());

    auto c = dl_descent(ThreadOrder::omega(), 3);
    auto shallow = extract_thread(c);
    EXPECT_THROW(thread_family(c, shallow, 3), Error);
}

TEST(Probe, Examples)
{
    auto rev = build_order(OrderExpr::rev_omega());
    auto D = two_power();
    auto r = descend_probe(D, rev, 3, 8);
    ASSERT_FALSE(r.exhausted());
    const auto& ts = r.certificate->terms;
    ASSERT_EQ(ts.size(), 4u);
    for (std::int64_t i = 0; i < 3; ++i)
        EXPECT_EQ(ts[static_cast<std::size_t>(i)], make_term(*D, Code::nat(1), rev, nats({i})));
    EXPECT_FALSE(first_non_descent(*r.certificate));

    for (std::int64_t k = 0; k <= 4; ++k) {
        auto fin = descend_probe(D, build_order(OrderExpr::nat(k)), 16, 32);
        EXPECT_TRUE(fin.exhausted()) << k;
        EXPECT_EQ(fin.pool_size, std::size_t{1} << k);
    }
    EXPECT_TRUE(descend_probe(D, build_order(OrderExpr::nat(2)), 4, 2).exhausted());

    auto W = make_DL(ThreadOrder::omega());
    auto ww = build_order(descent_carrier(ThreadOrder::omega()));
    auto p = descend_probe(W, ww, 3, 8);
    ASSERT_FALSE(p.exhausted());
    EXPECT_FALSE(first_non_descent(*p.certificate));
}

TEST(LimitTree, Examples)
{
    auto check = [](const LimitTree& t) {
        for (const auto& s : t.nodes)
            for (std::size_t n = 0; n < s.size(); ++n) {
                EXPECT_TRUE(tree_clause_i(t.table, s, n));
                EXPECT_TRUE(tree_clause_ii(t.table, s, n));
            }
        for (const auto& s : t.nodes) {
            auto b = Code::node(t.branch(s.size()));
            ASSERT_TRUE(t.kb.valid(b));
            EXPECT_TRUE(t.kb.compare(Code::node(s), b) <= 0);
        }
    };
    LimitTable zero{5, std::vector<std::vector<std::int64_t>>(5, std::vector<std::int64_t>(5, 0))};
    auto t0 = limit_tree(zero);
    EXPECT_EQ(t0.K, (std::vector<std::int64_t>(5, 0)));
    EXPECT_EQ(t0.nodes.size(), 5u);
    check(t0);

    LimitTable step{5, {}};
    for (std::int64_t k = 0; k < 5; ++k) {
        step.d.emplace_back();
        for (std::int64_t n = 0; n < 5; ++n)
            step.d.back().push_back(k >= n ? 1 : 0);
    }
    auto t1 = limit_tree(step);
    EXPECT_EQ(t1.K, (std::vector<std::int64_t>{0, 1, 2, 3, 4}));
    check(t1);
    EXPECT_EQ(t1.nodes.size(), 5u);

    // column 0 settles at k = 2, so short nodes may still guess 0
    LimitTable late{3, {{0, 0, 0}, {0, 0, 0}, {1, 0, 0}}};
    auto t3 = limit_tree(late);
    EXPECT_EQ(t3.K, (std::vector<std::int64_t>{2, 0, 0}));
    EXPECT_TRUE(std::count(t3.nodes.begin(), t3.nodes.end(), std::vector<std::int64_t>{0}));
    EXPECT_TRUE(std::count(t3.nodes.begin(), t3.nodes.end(), std::vector<std::int64_t>{0, 0}));
    EXPECT_FALSE(std::count(t3.nodes.begin(), t3.nodes.end(), std::vector<std::int64_t>{0, 0, 0}));
    check(t3);

    auto t2 = limit_tree(LimitTable{0, {}});
    EXPECT_TRUE(t2.nodes.empty());
    EXPECT_EQ(t2.kb.size(), 0u);
    EXPECT_THROW(limit_tree(LimitTable{3, {{0, 0, 0}}}), Error);
}
