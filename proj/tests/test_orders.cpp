#include "dilator/countable_order.hpp"
#include "dilator/finite.hpp"

#include <gtest/gtest.h>

#include <numeric>
#include <random>
#include <set>

using namespace dilator;

namespace {

CountableOrder omega() { return build_order(OrderExpr::omega()); }

std::vector<Code> nats(std::initializer_list<std::int64_t> xs)
{
    std::vector<Code> v;
    for (auto x : xs)
        v.push_back(Code::nat(x));
    return v;
}

Code exps(std::initializer_list<std::int64_t> xs) { return Code::exps(nats(xs)); }

// Pascal's triangle, independent of the embedding enumerator.
std::size_t binom(std::size_t n, std::size_t k)
{
    std::vector<std::vector<std::size_t>> c(n + 1, std::vector<std::size_t>(n + 1, 0));
    for (std::size_t i = 0; i <= n; ++i) {
        c[i][0] = 1;
        for (std::size_t j = 1; j <= i; ++j)
            c[i][j] = c[i - 1][j - 1] + (j <= i - 1 ? c[i - 1][j] : 0);
    }
    return k > n ? 0 : c[n][k];
}

// Ordinal comparison on coefficient-compressed Cantor normal forms: a list of
// (exponent, coefficient) with strictly decreasing exponents.
struct Ord {
    std::vector<std::pair<Ord, int>> terms;
};

int ord_cmp(const Ord& a, const Ord& b)
{
    for (std::size_t i = 0; i < std::min(a.terms.size(), b.terms.size()); ++i) {
        int c = ord_cmp(a.terms[i].first, b.terms[i].first);
        if (c != 0)
            return c;
        // w^e*c + rest with rest < w^e: the coefficient decides
        if (a.terms[i].second != b.terms[i].second)
            return a.terms[i].second < b.terms[i].second ? -1 : 1;
    }
    if (a.terms.size() == b.terms.size())
        return 0;
    return a.terms.size() < b.terms.size() ? -1 : 1;
}

Ord compress(const Code& c)
{
    Ord o;
    for (const auto& e : c.kids()) {
        Ord x = compress(e);
        if (!o.terms.empty() && ord_cmp(o.terms.back().first, x) == 0)
            ++o.terms.back().second;
        else
            o.terms.push_back({x, 1});
    }
    return o;
}

template <class F>
void for_all_pairs(const std::vector<Code>& xs, F&& f)
{
    for (const auto& x : xs)
        for (const auto& y : xs)
            f(x, y);
}

void expect_total_order(const CountableOrder& o, std::size_t k)
{
    auto xs = o.enumerate(k);
    std::set<Code> distinct(xs.begin(), xs.end());
    EXPECT_EQ(distinct.size(), xs.size()) << o.describe();
    for (const auto& x : xs)
        EXPECT_TRUE(o.valid(x)) << o.describe() << " " << x.str();
    for_all_pairs(xs, [&](const Code& x, const Code& y) {
        auto c = o.compare(x, y);
        EXPECT_EQ(c == 0, x == y) << o.describe();
        EXPECT_EQ(c, 0 <=> o.compare(y, x)) << o.describe();
    });
    for (const auto& x : xs)
        for (const auto& y : xs) {
            if (!o.less(x, y))
                continue;
            for (const auto& z : xs)
                if (o.less(y, z)) {
                    EXPECT_TRUE(o.less(x, z)) << o.describe() << " " << x.str() << y.str() << z.str();
                }
        }
}

} // namespace

TEST(FiniteOrder, IncreasingEnumeration)
{
    FiniteOrder a(omega(), nats({9, 3, 7}));
    EXPECT_EQ(increasing_enumeration(a), nats({3, 7, 9}));
    EXPECT_TRUE(increasing_enumeration(FiniteOrder(omega(), {})).empty());
    EXPECT_EQ(increasing_enumeration(FiniteOrder(omega(), nats({5}))), nats({5}));
}

TEST(FiniteOrder, FollowsCarrierOrder)
{
    FiniteOrder a(build_order(OrderExpr::rev_omega()), nats({3, 7, 9}));
    EXPECT_EQ(a.codes(), nats({9, 7, 3}));
    EXPECT_THROW(FiniteOrder(omega(), nats({1, 1})), Error);
    EXPECT_THROW(FiniteOrder(build_order(OrderExpr::nat(2)), nats({2})), Error);
}

TEST(FiniteEmbedding, Collapse)
{
    FiniteEmbedding f(FiniteOrder(omega(), nats({3, 7})), FiniteOrder(omega(), nats({1, 4, 6})), nats({4, 6}));
    EXPECT_EQ(collapse(f).images(), (std::vector<std::size_t>{1, 2}));
    EXPECT_EQ(collapse(f).cod(), 3u);

    FiniteOrder b(omega(), nats({2, 5}));
    EXPECT_EQ(collapse(FiniteEmbedding(b, b, b.codes())), Morphism::identity(2));

    auto e = collapse(FiniteEmbedding(FiniteOrder(omega(), {}), FiniteOrder(omega(), nats({1})), {}));
    EXPECT_EQ(e.dom(), 0u);
    EXPECT_EQ(e.cod(), 1u);
}

TEST(FiniteEmbedding, RejectsNonMonotoneGraph)
{
    FiniteOrder a(omega(), nats({0, 1})), b(omega(), nats({4, 6}));
    EXPECT_THROW(FiniteEmbedding(a, b, nats({6, 4})), Error);
    EXPECT_THROW(FiniteEmbedding(a, b, nats({4, 5})), Error);
}

TEST(FiniteEmbedding, CollapseRespectsComposition)
{
    std::mt19937 rng(7);
    for (int round = 0; round < 200; ++round) {
        auto pick = [&](std::size_t k, std::size_t from) {
            std::vector<std::int64_t> pool(from);
            std::iota(pool.begin(), pool.end(), 0);
            std::shuffle(pool.begin(), pool.end(), rng);
            std::vector<Code> v;
            for (std::size_t i = 0; i < k; ++i)
                v.push_back(Code::nat(pool[i] * 3 + 1));
            return FiniteOrder(omega(), v);
        };
        auto c = pick(6, 10);
        std::vector<Code> bsub(c.codes().begin(), c.codes().end());
        std::shuffle(bsub.begin(), bsub.end(), rng);
        bsub.resize(4);
        FiniteOrder b(omega(), bsub);
        std::vector<Code> asub = b.codes();
        std::shuffle(asub.begin(), asub.end(), rng);
        asub.resize(2);
        FiniteOrder a(omega(), asub);
        FiniteEmbedding f(a, b, a.codes()), g(b, c, b.codes());
        EXPECT_EQ(collapse(f.then(g)), collapse(g).after(collapse(f)));
    }
}

TEST(Embeddings, Enumerate)
{
    auto e = enumerate_embeddings(2, 3);
    ASSERT_EQ(e.size(), 3u);
    EXPECT_EQ(e[0].images(), (std::vector<std::size_t>{0, 1}));
    EXPECT_EQ(e[1].images(), (std::vector<std::size_t>{0, 2}));
    EXPECT_EQ(e[2].images(), (std::vector<std::size_t>{1, 2}));
    EXPECT_EQ(enumerate_embeddings(0, 4).size(), 1u);
    EXPECT_EQ(enumerate_embeddings(0, 4)[0].dom(), 0u);
    EXPECT_TRUE(enumerate_embeddings(3, 2).empty());
}

TEST(Embeddings, CountsAndDistinctness)
{
    for (std::size_t n = 0; n <= 8; ++n)
        for (std::size_t m = 0; m <= n; ++m) {
            auto e = enumerate_embeddings(m, n);
            EXPECT_EQ(e.size(), binom(n, m)) << m << "->" << n;
            std::set<std::vector<std::size_t>> seen;
            for (const auto& f : e)
                seen.insert(f.images());
            EXPECT_EQ(seen.size(), e.size());
            EXPECT_TRUE(std::is_sorted(e.begin(), e.end(),
                                       [](const Morphism& x, const Morphism& y) { return x.images() < y.images(); }));
        }
}

TEST(BuildOrder, Examples)
{
    auto tp = build_order(OrderExpr::two_power(OrderExpr::omega()));
    EXPECT_EQ(tp.compare(exps({2, 0}), exps({2, 1})), std::strong_ordering::less);

    auto ot = build_order(OrderExpr::omega_times(OrderExpr::nat(2)));
    EXPECT_EQ(ot.compare(Code::pair(Code::nat(0), Code::nat(7)), Code::pair(Code::nat(1), Code::nat(0))),
              std::strong_ordering::less);

    auto e0 = build_order(OrderExpr::eps0());
    Code zero = Code::cnf({});
    Code one = Code::cnf({zero});
    Code w = Code::cnf({one});
    EXPECT_EQ(e0.compare(w, Code::cnf({one, zero})), std::strong_ordering::less);
}

TEST(BuildOrder, TwoPowerMatchesBinaryValue)
{
    auto o = build_order(OrderExpr::two_power(OrderExpr::nat(5)));
    auto xs = o.enumerate(100);
    ASSERT_EQ(xs.size(), 32u);
    auto value = [](const Code& c) {
        std::int64_t v = 0;
        for (const auto& e : c.kids())
            v += std::int64_t{1} << e.value();
        return v;
    };
    for_all_pairs(xs, [&](const Code& x, const Code& y) { EXPECT_EQ(o.compare(x, y), value(x) <=> value(y)); });
}

TEST(BuildOrder, ProductComparesMajorFirst)
{
    auto o = build_order(OrderExpr::prod(OrderExpr::nat(2), OrderExpr::nat(3)));
    auto xs = o.enumerate(100);
    ASSERT_EQ(xs.size(), 6u);
    auto value = [](const Code& c) { return c.hi().value() * 2 + c.lo().value(); };
    for_all_pairs(xs, [&](const Code& x, const Code& y) { EXPECT_EQ(o.compare(x, y), value(x) <=> value(y)); });
}

TEST(BuildOrder, BasePowerMatchesPositionalValue)
{
    // (1+a)^g over finite a, g: position x carries digit y+1 in base a+1
    const std::int64_t a = 2, g = 3;
    auto o = build_order(OrderExpr::base_power(OrderExpr::nat(a), OrderExpr::nat(g)));
    auto xs = o.enumerate(1000);
    ASSERT_EQ(xs.size(), 27u);
    auto value = [&](const Code& c) {
        std::int64_t v = 0;
        for (const auto& t : c.kids()) {
            std::int64_t p = 1;
            for (std::int64_t i = 0; i < t.hi().value(); ++i)
                p *= a + 1;
            v += (t.lo().value() + 1) * p;
        }
        return v;
    };
    for_all_pairs(xs, [&](const Code& x, const Code& y) { EXPECT_EQ(o.compare(x, y), value(x) <=> value(y)); });
}

TEST(BuildOrder, SumAndAdjoinedPoints)
{
    auto s = build_order(OrderExpr::sum(OrderExpr::nat(2), OrderExpr::omega()));
    EXPECT_TRUE(s.less(Code::left(Code::nat(1)), Code::right(Code::nat(0))));
    EXPECT_EQ(s.enumerate(4).size(), 4u);
    auto op = build_order(OrderExpr::one_plus(OrderExpr::omega()));
    EXPECT_TRUE(op.less(Code::zero(), Code::in(Code::nat(0))));
    auto po = build_order(OrderExpr::plus_one(OrderExpr::omega()));
    EXPECT_TRUE(po.less(Code::in(Code::nat(1000)), Code::top()));
    EXPECT_FALSE(po.valid(Code::zero()));
    EXPECT_EQ(po.size(), std::nullopt);
    EXPECT_EQ(build_order(OrderExpr::plus_one(OrderExpr::nat(2))).size(), 3u);
}

TEST(BuildOrder, ZPowerIsLexicographic)
{
    auto o = build_order(OrderExpr::z_power(2));
    auto xs = o.enumerate(49);
    for (const auto& x : xs)
        EXPECT_LE(std::max(std::abs(x.ints()[0]), std::abs(x.ints()[1])), 3);
    for_all_pairs(xs, [&](const Code& x, const Code& y) {
        bool lt = std::lexicographical_compare(x.ints().begin(), x.ints().end(), y.ints().begin(), y.ints().end());
        EXPECT_EQ(o.less(x, y), lt);
    });
    EXPECT_FALSE(o.valid(Code::ints({1, 2, 3})));
}

TEST(BuildOrder, Eps0MatchesCompressedNormalForms)
{
    auto o = build_order(OrderExpr::eps0());
    auto xs = o.enumerate(150);
    for_all_pairs(xs, [&](const Code& x, const Code& y) {
        int c = ord_cmp(compress(x), compress(y));
        EXPECT_EQ(o.compare(x, y), c <=> 0) << x.str() << " " << y.str();
    });
    Code zero = Code::cnf({}), one = Code::cnf({zero});
    EXPECT_FALSE(o.valid(Code::cnf({zero, one})));
}

TEST(BuildOrder, TotalOrderOnPrefixes)
{
    std::vector<OrderExpr> exprs = {
        OrderExpr::nat(7),
        OrderExpr::omega(),
        OrderExpr::rev_omega(),
        OrderExpr::thread(ThreadOrder::zigzag()),
        OrderExpr::sum(OrderExpr::rev_omega(), OrderExpr::nat(3)),
        OrderExpr::prod(OrderExpr::omega(), OrderExpr::rev_omega()),
        OrderExpr::omega_times(OrderExpr::one_plus(OrderExpr::nat(3))),
        OrderExpr::plus_one(OrderExpr::omega()),
        OrderExpr::two_power(OrderExpr::omega()),
        OrderExpr::two_power(OrderExpr::rev_omega()),
        OrderExpr::base_power(OrderExpr::omega(), OrderExpr::nat(3)),
        OrderExpr::base_power(OrderExpr::nat(2), OrderExpr::omega()),
        OrderExpr::z_power(3),
        OrderExpr::eps0(),
        OrderExpr::kb({{0}, {0, 0}, {0, 1}, {1}, {1, 0}, {1, 0, 0}}),
        power_product(OrderExpr::omega_times(OrderExpr::plus_one(OrderExpr::nat(2))), 2),
    };
    for (const auto& e : exprs)
        expect_total_order(build_order(e), 50);
}

TEST(BuildOrder, EnumeratePrefix)
{
    EXPECT_EQ(enumerate_prefix(build_order(OrderExpr::nat(3)), 5), nats({0, 1, 2}));
    EXPECT_EQ(enumerate_prefix(omega(), 3), nats({0, 1, 2}));
    auto tp = build_order(OrderExpr::two_power(OrderExpr::omega()));
    auto xs = enumerate_prefix(tp, 3);
    ASSERT_EQ(xs.size(), 3u);
    EXPECT_EQ(std::set<Code>(xs.begin(), xs.end()).size(), 3u);
    for (const auto& x : xs)
        EXPECT_TRUE(tp.valid(x));
}

TEST(BuildOrder, FiniteSizesMatchEnumeration)
{
    for (auto e : {OrderExpr::two_power(OrderExpr::nat(4)), OrderExpr::base_power(OrderExpr::nat(3), OrderExpr::nat(2)),
                   OrderExpr::prod(OrderExpr::nat(3), OrderExpr::nat(4)), OrderExpr::sum(OrderExpr::nat(2), OrderExpr::nat(5)),
                   OrderExpr::one_plus(OrderExpr::nat(0)), OrderExpr::z_power(0)}) {
        auto o = build_order(e);
        ASSERT_TRUE(o.size());
        EXPECT_EQ(o.enumerate(1000).size(), *o.size()) << e.str();
    }
}

TEST(BuildOrder, RejectsMalformed)
{
    EXPECT_THROW(OrderExpr::nat(-1), Error);
    EXPECT_THROW(OrderExpr::kb({{0, 1}}), Error);
    EXPECT_THROW(OrderExpr::kb({{0}, {0}}), Error);
    auto tp = build_order(OrderExpr::two_power(OrderExpr::omega()));
    EXPECT_FALSE(tp.valid(exps({0, 2})));
    EXPECT_FALSE(tp.valid(exps({2, 2})));
}

TEST(Eps0Embedding, Examples)
{
    Code zero = Code::cnf({}), one = Code::cnf({zero});
    EXPECT_EQ(embed_two_power_eps0(Code::exps({})), zero);
    EXPECT_EQ(embed_two_power_eps0(Code::exps({zero})), one);
    EXPECT_EQ(embed_two_power_eps0(Code::exps({one, zero})), Code::cnf({one, zero}));
    EXPECT_THROW(embed_two_power_eps0(Code::exps({zero, one})), Error);
}

TEST(Eps0Embedding, StrictlyMonotoneOnSample)
{
    auto src = build_order(OrderExpr::two_power(OrderExpr::eps0()));
    auto dst = build_order(OrderExpr::eps0());
    auto xs = src.enumerate(200);
    ASSERT_EQ(xs.size(), 200u);
    for_all_pairs(xs, [&](const Code& x, const Code& y) {
        if (src.less(x, y)) {
            EXPECT_TRUE(dst.less(embed_two_power_eps0(x), embed_two_power_eps0(y)));
        }
    });
}

TEST(KleeneBrouwer, BelowProperPrefixes)
{
    std::mt19937 rng(11);
    for (int round = 0; round < 40; ++round) {
        std::set<std::vector<std::int64_t>> nodes;
        std::vector<std::vector<std::int64_t>> list = {{}};
        std::uniform_int_distribution<int> width(0, 2);
        while (nodes.size() < 49) {
            auto parent = list[std::uniform_int_distribution<std::size_t>(0, list.size() - 1)(rng)];
            parent.push_back(width(rng));
            if (nodes.insert(parent).second)
                list.push_back(parent);
        }
        auto o = build_order(OrderExpr::kb({nodes.begin(), nodes.end()}));
        auto xs = o.enumerate(100);
        EXPECT_EQ(xs.size(), nodes.size());
        for (const auto& x : xs)
            for (std::size_t len = 1; len < x.ints().size(); ++len) {
                Code prefix = Code::node({x.ints().begin(), x.ints().begin() + static_cast<std::ptrdiff_t>(len)});
                EXPECT_TRUE(o.less(x, prefix));
            }
        expect_total_order(o, 50);
    }
}
