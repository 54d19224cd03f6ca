#pragma once

#include "dilator/code.hpp"
#include "dilator/order_expr.hpp"

#include <algorithm>
#include <compare>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace dilator {

/// Semantics of one countable order: which codes are elements, how they
/// compare, and a fixed enumeration without repetitions.
class OrderImpl {
public:
    virtual ~OrderImpl() = default;
    virtual bool valid(const Code& c) const = 0;
    /// Only meaningful on valid codes.
    virtual std::strong_ordering compare(const Code& a, const Code& b) const = 0;
    /// nullopt for infinite orders.
    virtual std::optional<std::size_t> size() const = 0;
    /// The first k elements of the enumeration (all of them if fewer exist).
    virtual std::vector<Code> enumerate(std::size_t k) const = 0;
    virtual std::string describe() const = 0;
};

class CountableOrder {
public:
    CountableOrder() = default;
    explicit CountableOrder(std::shared_ptr<const OrderImpl> impl, std::optional<OrderExpr> expr = std::nullopt)
        : impl_(std::move(impl)), expr_(std::move(expr))
    {
    }

    bool valid(const Code& c) const { return impl_->valid(c); }
    std::strong_ordering compare(const Code& a, const Code& b) const { return impl_->compare(a, b); }
    bool less(const Code& a, const Code& b) const { return compare(a, b) < 0; }
    std::optional<std::size_t> size() const { return impl_->size(); }
    bool finite() const { return size().has_value(); }
    std::vector<Code> enumerate(std::size_t k) const { return impl_->enumerate(k); }
    std::string describe() const { return impl_->describe(); }
    const std::optional<OrderExpr>& expr() const noexcept { return expr_; }

    void require_valid(const Code& c, const std::string& what) const
    {
        if (!valid(c))
            throw Error(ErrorKind::input, what + ": " + c.str() + " is not an element of " + describe());
    }

    bool same_as(const CountableOrder& other) const
    {
        if (impl_ == other.impl_)
            return true;
        if (expr_ && other.expr_)
            return *expr_ == *other.expr_;
        return describe() == other.describe();
    }

private:
    std::shared_ptr<const OrderImpl> impl_;
    std::optional<OrderExpr> expr_;
};

CountableOrder build_order(const OrderExpr& expr);

namespace detail {

inline constexpr std::size_t infinite = std::numeric_limits<std::size_t>::max();

inline std::size_t size_or_inf(const CountableOrder& o) { return o.size().value_or(infinite); }

inline std::strong_ordering cmp_int(std::int64_t a, std::int64_t b) { return a <=> b; }

/// Lexicographic comparison of two element lists; a proper prefix is smaller.
template <class Cmp>
std::strong_ordering lex(const std::vector<Code>& a, const std::vector<Code>& b, Cmp&& cmp)
{
    std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
        auto c = cmp(a[i], b[i]);
        if (c != 0)
            return c;
    }
    return a.size() <=> b.size();
}

/// First k index pairs of the rectangle [0,sa) x [0,sb), anti-diagonals in order.
inline std::vector<std::pair<std::size_t, std::size_t>> diagonal_pairs(std::size_t sa, std::size_t sb, std::size_t k)
{
    std::vector<std::pair<std::size_t, std::size_t>> out;
    if (sa == 0 || sb == 0)
        return out;
    for (std::size_t d = 0; out.size() < k; ++d) {
        if (sa != infinite && sb != infinite && d > (sa - 1) + (sb - 1))
            break;
        std::size_t lo = (sb == infinite || d < sb) ? 0 : d - (sb - 1);
        std::size_t hi = (sa == infinite) ? d : std::min(d, sa - 1);
        for (std::size_t i = lo; i <= hi && out.size() < k; ++i)
            out.emplace_back(i, d - i);
    }
    return out;
}

inline std::size_t sat_pow2(std::size_t g)
{
    return g >= 63 ? infinite : (std::size_t{1} << g);
}

inline std::size_t sat_mul(std::size_t a, std::size_t b)
{
    if (a == infinite || b == infinite)
        return (a == 0 || b == 0) ? 0 : infinite;
    if (a != 0 && b > infinite / a)
        return infinite;
    return a * b;
}

inline std::size_t sat_add(std::size_t a, std::size_t b)
{
    if (a == infinite || b == infinite || a > infinite - b)
        return infinite;
    return a + b;
}

inline std::optional<std::size_t> finite_or_none(std::size_t s)
{
    if (s == infinite)
        return std::nullopt;
    return s;
}

class NatOrder final : public OrderImpl {
public:
    explicit NatOrder(std::int64_t k) : k_(k) {}
    bool valid(const Code& c) const override { return c.is(CodeKind::nat) && c.value() >= 0 && c.value() < k_; }
    std::strong_ordering compare(const Code& a, const Code& b) const override { return cmp_int(a.value(), b.value()); }
    std::optional<std::size_t> size() const override { return static_cast<std::size_t>(k_); }
    std::vector<Code> enumerate(std::size_t k) const override
    {
        std::vector<Code> out;
        for (std::int64_t i = 0; i < k_ && out.size() < k; ++i)
            out.push_back(Code::nat(i));
        return out;
    }
    std::string describe() const override { return "nat(" + std::to_string(k_) + ")"; }

private:
    std::int64_t k_;
};

class NaturalsOrder final : public OrderImpl {
public:
    explicit NaturalsOrder(ThreadOrder L) : L_(std::move(L)) {}
    bool valid(const Code& c) const override { return c.is(CodeKind::nat) && c.value() >= 0; }
    std::strong_ordering compare(const Code& a, const Code& b) const override
    {
        return L_.compare(a.value(), b.value());
    }
    std::optional<std::size_t> size() const override { return std::nullopt; }
    std::vector<Code> enumerate(std::size_t k) const override
    {
        std::vector<Code> out;
        for (std::size_t i = 0; i < k; ++i)
            out.push_back(Code::nat(static_cast<std::int64_t>(i)));
        return out;
    }
    std::string describe() const override { return L_.name(); }

private:
    ThreadOrder L_;
};

class SumOrder final : public OrderImpl {
public:
    SumOrder(CountableOrder a, CountableOrder b) : a_(std::move(a)), b_(std::move(b)) {}
    bool valid(const Code& c) const override
    {
        if (c.is(CodeKind::left) && c.kids().size() == 1)
            return a_.valid(c.inner());
        if (c.is(CodeKind::right) && c.kids().size() == 1)
            return b_.valid(c.inner());
        return false;
    }
    std::strong_ordering compare(const Code& x, const Code& y) const override
    {
        if (x.kind() != y.kind())
            return x.is(CodeKind::left) ? std::strong_ordering::less : std::strong_ordering::greater;
        return x.is(CodeKind::left) ? a_.compare(x.inner(), y.inner()) : b_.compare(x.inner(), y.inner());
    }
    std::optional<std::size_t> size() const override
    {
        return finite_or_none(sat_add(size_or_inf(a_), size_or_inf(b_)));
    }
    std::vector<Code> enumerate(std::size_t k) const override
    {
        auto as = a_.enumerate(k), bs = b_.enumerate(k);
        std::vector<Code> out;
        std::size_t i = 0, j = 0;
        while (out.size() < k && (i < as.size() || j < bs.size())) {
            if (i < as.size() && (j >= bs.size() || i <= j))
                out.push_back(Code::left(as[i++]));
            else
                out.push_back(Code::right(bs[j++]));
        }
        return out;
    }
    std::string describe() const override { return "sum(" + a_.describe() + "," + b_.describe() + ")"; }

private:
    CountableOrder a_, b_;
};

/// Pairs {hi in major, lo in minor}, major component first.
class ProdOrder final : public OrderImpl {
public:
    ProdOrder(CountableOrder minor, CountableOrder major) : minor_(std::move(minor)), major_(std::move(major)) {}
    bool valid(const Code& c) const override
    {
        return c.is(CodeKind::pair) && c.kids().size() == 2 && major_.valid(c.hi()) && minor_.valid(c.lo());
    }
    std::strong_ordering compare(const Code& x, const Code& y) const override
    {
        auto c = major_.compare(x.hi(), y.hi());
        return c != 0 ? c : minor_.compare(x.lo(), y.lo());
    }
    std::optional<std::size_t> size() const override
    {
        return finite_or_none(sat_mul(size_or_inf(minor_), size_or_inf(major_)));
    }
    std::vector<Code> enumerate(std::size_t k) const override
    {
        auto idx = diagonal_pairs(size_or_inf(major_), size_or_inf(minor_), k);
        std::size_t need_hi = 0, need_lo = 0;
        for (auto [i, j] : idx) {
            need_hi = std::max(need_hi, i + 1);
            need_lo = std::max(need_lo, j + 1);
        }
        auto his = major_.enumerate(need_hi), los = minor_.enumerate(need_lo);
        std::vector<Code> out;
        for (auto [i, j] : idx)
            out.push_back(Code::pair(his[i], los[j]));
        return out;
    }
    std::string describe() const override { return "prod(" + minor_.describe() + "," + major_.describe() + ")"; }

private:
    CountableOrder minor_, major_;
};

/// omega * a: pairs {hi = x in a, lo = n natural}.
class OmegaTimesOrder final : public OrderImpl {
public:
    explicit OmegaTimesOrder(CountableOrder a) : a_(std::move(a)) {}
    bool valid(const Code& c) const override
    {
        return c.is(CodeKind::pair) && c.kids().size() == 2 && a_.valid(c.hi()) && c.lo().is(CodeKind::nat) &&
               c.lo().value() >= 0;
    }
    std::strong_ordering compare(const Code& x, const Code& y) const override
    {
        auto c = a_.compare(x.hi(), y.hi());
        return c != 0 ? c : cmp_int(x.lo().value(), y.lo().value());
    }
    std::optional<std::size_t> size() const override
    {
        if (size_or_inf(a_) == 0)
            return 0;
        return std::nullopt;
    }
    std::vector<Code> enumerate(std::size_t k) const override
    {
        auto idx = diagonal_pairs(size_or_inf(a_), infinite, k);
        std::size_t need = 0;
        for (auto [i, j] : idx)
            need = std::max(need, i + 1);
        auto xs = a_.enumerate(need);
        std::vector<Code> out;
        for (auto [i, j] : idx)
            out.push_back(Code::pair(xs[i], Code::nat(static_cast<std::int64_t>(j))));
        return out;
    }
    std::string describe() const override { return "omega-times(" + a_.describe() + ")"; }

private:
    CountableOrder a_;
};

/// one-plus (adjoined minimum `zero`) or plus-one (adjoined maximum `top`).
class AdjoinOrder final : public OrderImpl {
public:
    AdjoinOrder(CountableOrder a, bool at_bottom) : a_(std::move(a)), bottom_(at_bottom) {}
    bool valid(const Code& c) const override
    {
        if (c.is(bottom_ ? CodeKind::zero : CodeKind::top))
            return c.kids().empty();
        return c.is(CodeKind::in) && c.kids().size() == 1 && a_.valid(c.inner());
    }
    std::strong_ordering compare(const Code& x, const Code& y) const override
    {
        bool xe = !x.is(CodeKind::in), ye = !y.is(CodeKind::in);
        if (xe || ye) {
            if (xe && ye)
                return std::strong_ordering::equal;
            // the adjoined point is below everything for one-plus, above for plus-one
            return (xe == bottom_) ? std::strong_ordering::less : std::strong_ordering::greater;
        }
        return a_.compare(x.inner(), y.inner());
    }
    std::optional<std::size_t> size() const override { return finite_or_none(sat_add(size_or_inf(a_), 1)); }
    std::vector<Code> enumerate(std::size_t k) const override
    {
        std::vector<Code> out;
        if (k == 0)
            return out;
        out.push_back(bottom_ ? Code::zero() : Code::top());
        for (auto& x : a_.enumerate(k - 1))
            out.push_back(Code::in(x));
        return out;
    }
    std::string describe() const override
    {
        return std::string(bottom_ ? "one-plus(" : "plus-one(") + a_.describe() + ")";
    }

private:
    CountableOrder a_;
    bool bottom_;
};

/// 2^g: finite subsets of g, written as strictly descending exponent lists
/// and compared from the largest exponent down.
class TwoPowerOrder final : public OrderImpl {
public:
    explicit TwoPowerOrder(CountableOrder g) : g_(std::move(g)) {}
    bool valid(const Code& c) const override
    {
        if (!c.is(CodeKind::exps))
            return false;
        const auto& e = c.kids();
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (!g_.valid(e[i]))
                return false;
            if (i > 0 && g_.compare(e[i - 1], e[i]) <= 0)
                return false;
        }
        return true;
    }
    std::strong_ordering compare(const Code& x, const Code& y) const override
    {
        return lex(x.kids(), y.kids(), [this](const Code& a, const Code& b) { return g_.compare(a, b); });
    }
    std::optional<std::size_t> size() const override
    {
        auto s = size_or_inf(g_);
        return finite_or_none(s == infinite ? infinite : sat_pow2(s));
    }
    std::vector<Code> enumerate(std::size_t k) const override
    {
        std::size_t total = size().value_or(infinite);
        std::size_t n = std::min(k, total);
        std::size_t bits = 0;
        while (n > 0 && (std::size_t{1} << bits) < n)
            ++bits;
        auto base = g_.enumerate(bits);
        std::vector<Code> out;
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<Code> e;
            for (std::size_t b = 0; b < bits; ++b)
                if (i >> b & 1)
                    e.push_back(base[b]);
            std::sort(e.begin(), e.end(), [this](const Code& a, const Code& b) { return g_.less(b, a); });
            out.push_back(Code::exps(std::move(e)));
        }
        return out;
    }
    std::string describe() const override { return "two-power(" + g_.describe() + ")"; }

private:
    CountableOrder g_;
};

/// (1+a)^g: lists of (x, y) with x strictly descending in g and y in a,
/// compared lexicographically, (x, y) < (x', y') iff x < x' or x = x' and y < y'.
class BasePowerOrder final : public OrderImpl {
public:
    BasePowerOrder(CountableOrder a, CountableOrder g) : a_(std::move(a)), g_(std::move(g)) {}
    bool valid(const Code& c) const override
    {
        if (!c.is(CodeKind::terms))
            return false;
        const auto& t = c.kids();
        for (std::size_t i = 0; i < t.size(); ++i) {
            if (!t[i].is(CodeKind::pair) || t[i].kids().size() != 2)
                return false;
            if (!g_.valid(t[i].hi()) || !a_.valid(t[i].lo()))
                return false;
            if (i > 0 && g_.compare(t[i - 1].hi(), t[i].hi()) <= 0)
                return false;
        }
        return true;
    }
    std::strong_ordering compare(const Code& x, const Code& y) const override
    {
        return lex(x.kids(), y.kids(), [this](const Code& p, const Code& q) {
            auto c = g_.compare(p.hi(), q.hi());
            return c != 0 ? c : a_.compare(p.lo(), q.lo());
        });
    }
    std::optional<std::size_t> size() const override
    {
        auto sa = size_or_inf(a_), sg = size_or_inf(g_);
        if (sg == 0 || sa == 0)
            return 1;
        if (sa == infinite || sg == infinite)
            return std::nullopt;
        std::size_t r = 1;
        for (std::size_t i = 0; i < sg; ++i)
            r = sat_mul(r, sat_add(sa, 1));
        return finite_or_none(r);
    }
    std::vector<Code> enumerate(std::size_t k) const override
    {
        std::vector<Code> out;
        if (k == 0)
            return out;
        out.push_back(Code::terms({}));
        auto sa = size_or_inf(a_), sg = size_or_inf(g_);
        if (sa == 0 || sg == 0)
            return out;
        // layer r: codes whose largest used enumeration index is r-1
        for (std::size_t r = 1; out.size() < k; ++r) {
            if (sa != infinite && sg != infinite && r > std::max(sa, sg))
                break;
            std::size_t gn = std::min(r, sg), an = std::min(r, sa);
            auto gs = g_.enumerate(gn), as = a_.enumerate(an);
            for (std::size_t mask = 1; mask < (std::size_t{1} << gn) && out.size() < k; ++mask) {
                std::vector<std::size_t> chosen;
                for (std::size_t b = 0; b < gn; ++b)
                    if (mask >> b & 1)
                        chosen.push_back(b);
                std::sort(chosen.begin(), chosen.end(),
                          [&](std::size_t x, std::size_t y) { return g_.less(gs[y], gs[x]); });
                std::vector<std::size_t> labels(chosen.size(), 0);
                while (out.size() < k) {
                    std::size_t top = 0;
                    for (auto b : chosen)
                        top = std::max(top, b);
                    for (auto l : labels)
                        top = std::max(top, l);
                    if (top == r - 1) {
                        std::vector<Code> t;
                        for (std::size_t i = 0; i < chosen.size(); ++i)
                            t.push_back(Code::pair(gs[chosen[i]], as[labels[i]]));
                        out.push_back(Code::terms(std::move(t)));
                    }
                    std::size_t pos = labels.size();
                    while (pos > 0 && labels[pos - 1] + 1 == an)
                        labels[--pos] = 0;
                    if (pos == 0)
                        break;
                    ++labels[pos - 1];
                }
            }
        }
        return out;
    }
    std::string describe() const override { return "base-power(" + a_.describe() + "," + g_.describe() + ")"; }

private:
    CountableOrder a_, g_;
};

class ZPowerOrder final : public OrderImpl {
public:
    explicit ZPowerOrder(std::size_t r) : r_(r) {}
    bool valid(const Code& c) const override { return c.is(CodeKind::ints) && c.ints().size() == r_; }
    std::strong_ordering compare(const Code& x, const Code& y) const override { return x.ints() <=> y.ints(); }
    std::optional<std::size_t> size() const override
    {
        if (r_ == 0)
            return 1;
        return std::nullopt;
    }
    std::vector<Code> enumerate(std::size_t k) const override
    {
        std::vector<Code> out;
        if (k == 0)
            return out;
        out.push_back(Code::ints(std::vector<std::int64_t>(r_, 0)));
        if (r_ == 0)
            return out;
        for (std::int64_t m = 1; out.size() < k; ++m) {
            std::vector<std::int64_t> v(r_, -m);
            while (out.size() < k) {
                bool on_shell = std::any_of(v.begin(), v.end(), [m](std::int64_t x) { return x == m || x == -m; });
                if (on_shell)
                    out.push_back(Code::ints(v));
                std::size_t pos = r_;
                while (pos > 0 && v[pos - 1] == m)
                    v[--pos] = -m;
                if (pos == 0)
                    break;
                ++v[pos - 1];
            }
        }
        return out;
    }
    std::string describe() const override { return "z-power(" + std::to_string(r_) + ")"; }

private:
    std::size_t r_;
};

/// Cantor normal forms below epsilon_0, exponents weakly descending.
class Eps0Order final : public OrderImpl {
public:
    static std::strong_ordering cmp(const Code& a, const Code& b) { return lex(a.kids(), b.kids(), &Eps0Order::cmp); }

    static bool canonical(const Code& c)
    {
        if (!c.is(CodeKind::cnf))
            return false;
        const auto& e = c.kids();
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (!canonical(e[i]))
                return false;
            if (i > 0 && cmp(e[i - 1], e[i]) < 0)
                return false;
        }
        return true;
    }

    bool valid(const Code& c) const override { return canonical(c); }
    std::strong_ordering compare(const Code& a, const Code& b) const override { return cmp(a, b); }
    std::optional<std::size_t> size() const override { return std::nullopt; }

    /// Enumerated by size, where size(w^{e1}+...+w^{en}) = sum of (1 + size(ei)).
    std::vector<Code> enumerate(std::size_t k) const override
    {
        std::vector<std::vector<Code>> by_size;
        std::vector<Code> out;
        for (std::size_t s = 0; out.size() < k; ++s) {
            std::vector<Code> level;
            std::vector<Code> prefix;
            build(by_size, s, nullptr, prefix, level);
            for (const auto& c : level)
                if (out.size() < k)
                    out.push_back(c);
            by_size.push_back(std::move(level));
        }
        return out;
    }
    std::string describe() const override { return "eps0"; }

private:
    static void build(const std::vector<std::vector<Code>>& by_size, std::size_t remaining, const Code* bound,
                      std::vector<Code>& prefix, std::vector<Code>& sink)
    {
        if (remaining == 0) {
            sink.push_back(Code::cnf(prefix));
            return;
        }
        for (std::size_t t = 0; t + 1 <= remaining && t < by_size.size(); ++t) {
            for (const auto& e : by_size[t]) {
                if (bound && cmp(e, *bound) > 0)
                    continue;
                prefix.push_back(e);
                build(by_size, remaining - 1 - t, &e, prefix, sink);
                prefix.pop_back();
            }
        }
    }
};

/// Kleene-Brouwer order: s < t iff s properly extends t, or s is left of t
/// at the first difference.
class KBOrder final : public OrderImpl {
public:
    explicit KBOrder(OrderExpr::Tree tree) : tree_(std::move(tree)), nodes_(tree_.begin(), tree_.end()) {}

    static std::strong_ordering cmp_seq(const std::vector<std::int64_t>& s, const std::vector<std::int64_t>& t)
    {
        std::size_t n = std::min(s.size(), t.size());
        for (std::size_t i = 0; i < n; ++i)
            if (s[i] != t[i])
                return s[i] <=> t[i];
        // the longer sequence extends the shorter one and sits below it
        return t.size() <=> s.size();
    }

    bool valid(const Code& c) const override { return c.is(CodeKind::node) && nodes_.count(c.ints()) > 0; }
    std::strong_ordering compare(const Code& a, const Code& b) const override { return cmp_seq(a.ints(), b.ints()); }
    std::optional<std::size_t> size() const override { return tree_.size(); }
    std::vector<Code> enumerate(std::size_t k) const override
    {
        std::vector<Code> out;
        for (std::size_t i = 0; i < tree_.size() && out.size() < k; ++i)
            out.push_back(Code::node(tree_[i]));
        return out;
    }
    std::string describe() const override { return "kb(" + std::to_string(tree_.size()) + " nodes)"; }

private:
    OrderExpr::Tree tree_;
    std::set<std::vector<std::int64_t>> nodes_;
};

} // namespace detail

inline CountableOrder build_order(const OrderExpr& e)
{
    using namespace detail;
    std::shared_ptr<const OrderImpl> impl;
    switch (e.op()) {
    case OrderOp::nat: impl = std::make_shared<NatOrder>(e.k()); break;
    case OrderOp::omega: impl = std::make_shared<NaturalsOrder>(ThreadOrder::omega()); break;
    case OrderOp::rev_omega: impl = std::make_shared<NaturalsOrder>(ThreadOrder::rev_omega()); break;
    case OrderOp::thread: impl = std::make_shared<NaturalsOrder>(e.thread_order()); break;
    case OrderOp::sum: impl = std::make_shared<SumOrder>(build_order(e.kid(0)), build_order(e.kid(1))); break;
    case OrderOp::prod: impl = std::make_shared<ProdOrder>(build_order(e.kid(0)), build_order(e.kid(1))); break;
    case OrderOp::omega_times: impl = std::make_shared<OmegaTimesOrder>(build_order(e.kid(0))); break;
    case OrderOp::one_plus: impl = std::make_shared<AdjoinOrder>(build_order(e.kid(0)), true); break;
    case OrderOp::plus_one: impl = std::make_shared<AdjoinOrder>(build_order(e.kid(0)), false); break;
    case OrderOp::two_power: impl = std::make_shared<TwoPowerOrder>(build_order(e.kid(0))); break;
    case OrderOp::base_power:
        impl = std::make_shared<BasePowerOrder>(build_order(e.kid(0)), build_order(e.kid(1)));
        break;
    case OrderOp::z_power: impl = std::make_shared<ZPowerOrder>(static_cast<std::size_t>(e.r())); break;
    case OrderOp::eps0: impl = std::make_shared<Eps0Order>(); break;
    case OrderOp::kb: impl = std::make_shared<KBOrder>(e.tree()); break;
    }
    return CountableOrder(std::move(impl), e);
}

/// The first k elements of the order's enumeration.
inline std::vector<Code> enumerate_prefix(const CountableOrder& o, std::size_t k) { return o.enumerate(k); }

/// 2^{t0}+...+2^{t(n-1)} in 2^{eps0} goes to w^{t0}+...+w^{t(n-1)} in eps0.
inline Code embed_two_power_eps0(const Code& t)
{
    if (!t.is(CodeKind::exps))
        throw Error(ErrorKind::input, "expected a two-power code, got " + t.str());
    const auto& e = t.kids();
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (!detail::Eps0Order::canonical(e[i]))
            throw Error(ErrorKind::input, "exponent " + e[i].str() + " is not an eps0 normal form");
        if (i > 0 && detail::Eps0Order::cmp(e[i - 1], e[i]) <= 0)
            throw Error(ErrorKind::input, "two-power exponents must be strictly descending");
    }
    return Code::cnf(e);
}

/// Code of a tuple in power_product(x, r).
inline Code tuple_code(const std::vector<Code>& coords)
{
    if (coords.empty())
        return Code::nat(0);
    Code acc = coords.back();
    for (std::size_t i = coords.size() - 1; i-- > 0;)
        acc = Code::pair(coords[i], acc);
    return acc;
}

} // namespace dilator
