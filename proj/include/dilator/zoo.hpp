#pragma once

#include "dilator/countable_order.hpp"
#include "dilator/finite.hpp"
#include "dilator/predilator.hpp"
#include "dilator/thread_order.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace dilator {

/// 2^n with binary codes: bit i of sigma stands for the summand 2^i.
class TwoPower final : public Predilator {
public:
    static constexpr std::size_t max_level = 30;

    std::string name() const override { return "two-power"; }

    Code act(const Morphism& f, const Code& sigma) const override
    {
        std::int64_t out = 0;
        for (std::size_t i = 0; i < f.dom(); ++i)
            if (sigma.value() >> i & 1)
                out |= std::int64_t{1} << f(i);
        return Code::nat(out);
    }

    std::vector<std::size_t> support(std::size_t, const Code& sigma) const override
    {
        std::vector<std::size_t> s;
        for (std::size_t i = 0; i < 63; ++i)
            if (sigma.value() >> i & 1)
                s.push_back(i);
        return s;
    }

    std::optional<Code> pullback(const Morphism& f, const Code& tau) const override
    {
        std::int64_t out = 0;
        for (auto b : support(f.cod(), tau)) {
            auto it = std::lower_bound(f.images().begin(), f.images().end(), b);
            if (it == f.images().end() || *it != b)
                return std::nullopt;
            out |= std::int64_t{1} << (it - f.images().begin());
        }
        return Code::nat(out);
    }

protected:
    CountableOrder make_level(std::size_t n) const override
    {
        if (n > max_level)
            throw Error(ErrorKind::precondition, "two-power levels above " + std::to_string(max_level) + " are not coded");
        return build_order(OrderExpr::nat(std::int64_t{1} << n));
    }
};

/// Binary code of a two-power level element <-> its ascending exponent list,
/// the corresponding D_{rev-omega} sequence.
inline Code binary_to_sequence(std::int64_t mask)
{
    std::vector<std::int64_t> v;
    for (std::int64_t i = 0; i < 63; ++i)
        if (mask >> i & 1)
            v.push_back(i);
    return Code::ints(std::move(v));
}

inline std::int64_t sequence_to_binary(const Code& seq)
{
    std::int64_t m = 0;
    for (auto x : seq.ints())
        m |= std::int64_t{1} << x;
    return m;
}

namespace detail {

/// Strictly increasing sequences from {0..n-1}, permuted-lexicographic under L.
class DLLevel final : public OrderImpl {
public:
    DLLevel(ThreadOrder L, std::size_t n) : L_(std::move(L)), n_(n)
    {
        for (std::size_t k = 0; k <= n; ++k)
            pi_.push_back(dl_priority(L_, k));
    }

    bool valid(const Code& c) const override
    {
        if (!c.is(CodeKind::ints) || c.ints().size() > n_)
            return false;
        const auto& v = c.ints();
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (v[i] < 0 || static_cast<std::size_t>(v[i]) >= n_)
                return false;
            if (i > 0 && v[i - 1] >= v[i])
                return false;
        }
        return true;
    }

    std::strong_ordering compare(const Code& a, const Code& b) const override
    {
        const auto& s = a.ints();
        const auto& t = b.ints();
        const auto& ps = pi_[s.size()];
        const auto& pt = pi_[t.size()];
        for (std::size_t i = 0; i < std::min(s.size(), t.size()); ++i) {
            auto c = s[ps[i]] <=> t[pt[i]];
            if (c != 0)
                return c;
        }
        return s.size() <=> t.size();
    }

    std::optional<std::size_t> size() const override { return std::size_t{1} << n_; }

    /// By length, then lexicographically.
    std::vector<Code> enumerate(std::size_t k) const override
    {
        std::vector<Code> out;
        for (std::size_t len = 0; len <= n_ && out.size() < k; ++len)
            for (const auto& f : enumerate_embeddings(len, n_)) {
                if (out.size() == k)
                    break;
                std::vector<std::int64_t> v(f.images().begin(), f.images().end());
                out.push_back(Code::ints(std::move(v)));
            }
        return out;
    }

    std::string describe() const override { return "dl-level(" + L_.name() + "," + std::to_string(n_) + ")"; }

private:
    ThreadOrder L_;
    std::size_t n_;
    std::vector<std::vector<std::size_t>> pi_;
};

inline std::optional<std::vector<std::size_t>> preimages(const Morphism& f, const std::vector<std::size_t>& xs)
{
    std::vector<std::size_t> out;
    for (auto x : xs) {
        auto it = std::lower_bound(f.images().begin(), f.images().end(), x);
        if (it == f.images().end() || *it != x)
            return std::nullopt;
        out.push_back(static_cast<std::size_t>(it - f.images().begin()));
    }
    return out;
}

} // namespace detail

class DL final : public Predilator {
public:
    explicit DL(ThreadOrder L) : L_(std::move(L)) {}

    const ThreadOrder& thread() const noexcept { return L_; }
    std::string name() const override { return "dl:" + L_.name(); }

    Code act(const Morphism& f, const Code& sigma) const override
    {
        std::vector<std::int64_t> v;
        for (auto x : sigma.ints())
            v.push_back(static_cast<std::int64_t>(f(static_cast<std::size_t>(x))));
        return Code::ints(std::move(v));
    }

    std::vector<std::size_t> support(std::size_t, const Code& sigma) const override
    {
        return {sigma.ints().begin(), sigma.ints().end()};
    }

    std::optional<Code> pullback(const Morphism& f, const Code& tau) const override
    {
        auto pre = detail::preimages(f, support(f.cod(), tau));
        if (!pre)
            return std::nullopt;
        return Code::ints({pre->begin(), pre->end()});
    }

    /// The unique full-support element of level n.
    static Code full(std::size_t n)
    {
        std::vector<std::int64_t> v(n);
        for (std::size_t i = 0; i < n; ++i)
            v[i] = static_cast<std::int64_t>(i);
        return Code::ints(std::move(v));
    }

protected:
    CountableOrder make_level(std::size_t n) const override
    {
        return CountableOrder(std::make_shared<detail::DLLevel>(L_, n));
    }

private:
    ThreadOrder L_;
};

/// E(n) = omega * (1 + n); omega*0 + k is {hi: zero, lo: k}, omega*(1+x) + k is {hi: in(x), lo: k}.
class EPredilator final : public Predilator {
public:
    std::string name() const override { return "E"; }

    static OrderExpr level_expr(std::size_t n)
    {
        return OrderExpr::omega_times(OrderExpr::one_plus(OrderExpr::nat(static_cast<std::int64_t>(n))));
    }

    /// omega*(1+x)+k, or omega*0+k when x is empty.
    static Code element(std::optional<std::int64_t> x, std::int64_t k)
    {
        return Code::pair(x ? Code::in(Code::nat(*x)) : Code::zero(), Code::nat(k));
    }

    Code act(const Morphism& f, const Code& sigma) const override
    {
        if (sigma.hi().is(CodeKind::zero))
            return sigma;
        auto x = static_cast<std::size_t>(sigma.hi().inner().value());
        return element(static_cast<std::int64_t>(f(x)), sigma.lo().value());
    }

    std::vector<std::size_t> support(std::size_t, const Code& sigma) const override
    {
        if (sigma.hi().is(CodeKind::zero))
            return {};
        return {static_cast<std::size_t>(sigma.hi().inner().value())};
    }

    std::optional<Code> pullback(const Morphism& f, const Code& tau) const override
    {
        auto pre = detail::preimages(f, support(f.cod(), tau));
        if (!pre)
            return std::nullopt;
        if (pre->empty())
            return tau;
        return element(static_cast<std::int64_t>((*pre)[0]), tau.lo().value());
    }

protected:
    CountableOrder make_level(std::size_t n) const override { return build_order(level_expr(n)); }
};

/// D(alpha) = alpha.
class IdentityPredilator final : public Predilator {
public:
    std::string name() const override { return "identity"; }
    Code act(const Morphism& f, const Code& sigma) const override
    {
        return Code::nat(static_cast<std::int64_t>(f(static_cast<std::size_t>(sigma.value()))));
    }
    std::vector<std::size_t> support(std::size_t, const Code& sigma) const override
    {
        return {static_cast<std::size_t>(sigma.value())};
    }
    std::optional<Code> pullback(const Morphism& f, const Code& tau) const override
    {
        auto pre = detail::preimages(f, support(f.cod(), tau));
        if (!pre)
            return std::nullopt;
        return Code::nat(static_cast<std::int64_t>((*pre)[0]));
    }

protected:
    CountableOrder make_level(std::size_t n) const override
    {
        return build_order(OrderExpr::nat(static_cast<std::int64_t>(n)));
    }
};

/// D(alpha) = 1.
class ConstantPredilator final : public Predilator {
public:
    std::string name() const override { return "constant"; }
    Code act(const Morphism&, const Code& sigma) const override { return sigma; }
    std::vector<std::size_t> support(std::size_t, const Code&) const override { return {}; }
    std::optional<Code> pullback(const Morphism&, const Code& tau) const override { return tau; }

protected:
    CountableOrder make_level(std::size_t) const override { return build_order(OrderExpr::nat(1)); }
};

/// D o E. Level n is D-bar over E(n), with term codes (sigma, support in E(n)).
class ComposeE final : public Predilator {
public:
    explicit ComposeE(PredilatorPtr inner) : inner_(std::move(inner)) {}

    const PredilatorPtr& inner() const noexcept { return inner_; }
    std::string name() const override { return "compose-E:" + inner_->name(); }

    Code act(const Morphism& f, const Code& sigma) const override
    {
        std::vector<Code> sp;
        for (const auto& c : sigma.support())
            sp.push_back(e_.act(f, c));
        return Code::term(sigma.sigma(), std::move(sp));
    }

    /// Union of the E-supports of the D-support.
    std::vector<std::size_t> support(std::size_t n, const Code& sigma) const override
    {
        std::vector<std::size_t> out;
        for (const auto& c : sigma.support())
            for (auto x : e_.support(n, c))
                out.push_back(x);
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

    std::optional<Code> pullback(const Morphism& f, const Code& tau) const override
    {
        std::vector<Code> sp;
        for (const auto& c : tau.support()) {
            auto pre = e_.pullback(f, c);
            if (!pre)
                return std::nullopt;
            sp.push_back(*pre);
        }
        return Code::term(tau.sigma(), std::move(sp));
    }

protected:
    CountableOrder make_level(std::size_t n) const override
    {
        return extension_order(inner_, build_order(EPredilator::level_expr(n)));
    }

private:
    PredilatorPtr inner_;
    EPredilator e_;
};

inline ThreadOrder builtin_thread(const std::string& name)
{
    if (name == "omega")
        return ThreadOrder::omega();
    if (name == "rev-omega")
        return ThreadOrder::rev_omega();
    if (name == "zigzag")
        return ThreadOrder::zigzag();
    throw Error(ErrorKind::input, "unknown thread order '" + name + "'");
}

/// Registry lookup. "dl" alone takes its order from `L`.
inline PredilatorPtr make_predilator(const std::string& name, const std::optional<ThreadOrder>& L = std::nullopt)
{
    if (name == "two-power")
        return std::make_shared<TwoPower>();
    if (name == "E")
        return std::make_shared<EPredilator>();
    if (name == "identity")
        return std::make_shared<IdentityPredilator>();
    if (name == "constant")
        return std::make_shared<ConstantPredilator>();
    if (name == "dl") {
        if (!L)
            throw Error(ErrorKind::input, "predilator 'dl' needs a thread order");
        return std::make_shared<DL>(*L);
    }
    if (name.rfind("dl:", 0) == 0)
        return std::make_shared<DL>(builtin_thread(name.substr(3)));
    if (name.rfind("compose-E:", 0) == 0)
        return std::make_shared<ComposeE>(make_predilator(name.substr(10), L));
    throw Error(ErrorKind::input, "unknown predilator '" + name + "'");
}

inline PredilatorPtr two_power() { return std::make_shared<TwoPower>(); }
inline PredilatorPtr make_DL(ThreadOrder L) { return std::make_shared<DL>(std::move(L)); }
inline PredilatorPtr make_E() { return std::make_shared<EPredilator>(); }
inline PredilatorPtr compose_with_E(PredilatorPtr D) { return std::make_shared<ComposeE>(std::move(D)); }

} // namespace dilator
