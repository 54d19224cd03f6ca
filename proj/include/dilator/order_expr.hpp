#pragma once

#include "dilator/code.hpp"
#include "dilator/thread_order.hpp"

#include <algorithm>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

namespace dilator {

enum class OrderOp {
    nat,         // {0..k-1}
    omega,       // the naturals
    rev_omega,   // the naturals, reversed
    thread,      // the naturals under a ThreadOrder
    sum,         // a + b
    prod,        // "major copies of minor"; compared major first
    omega_times, // omega * a, elements omega*x + n
    one_plus,    // 1 + a
    plus_one,    // a + 1
    two_power,   // 2^g
    base_power,  // (1 + a)^g
    z_power,     // Z^r, lexicographic with coordinate 0 most significant
    eps0,
    kb           // Kleene-Brouwer order on a finite tree of sequences
};

/// Syntax tree of order constructors.
class OrderExpr {
public:
    using Tree = std::vector<std::vector<std::int64_t>>;

    OrderExpr() = default;

    static OrderExpr nat(std::int64_t k)
    {
        if (k < 0)
            throw Error(ErrorKind::input, "nat(k) needs k >= 0");
        OrderExpr e(OrderOp::nat);
        e.k_ = k;
        return e;
    }
    static OrderExpr omega() { return OrderExpr(OrderOp::omega); }
    static OrderExpr rev_omega() { return OrderExpr(OrderOp::rev_omega); }
    static OrderExpr thread(ThreadOrder L)
    {
        OrderExpr e(OrderOp::thread);
        e.thread_ = std::move(L);
        return e;
    }
    static OrderExpr sum(OrderExpr a, OrderExpr b) { return OrderExpr(OrderOp::sum, {std::move(a), std::move(b)}); }
    static OrderExpr prod(OrderExpr minor, OrderExpr major)
    {
        return OrderExpr(OrderOp::prod, {std::move(minor), std::move(major)});
    }
    static OrderExpr omega_times(OrderExpr a) { return OrderExpr(OrderOp::omega_times, {std::move(a)}); }
    static OrderExpr one_plus(OrderExpr a) { return OrderExpr(OrderOp::one_plus, {std::move(a)}); }
    static OrderExpr plus_one(OrderExpr a) { return OrderExpr(OrderOp::plus_one, {std::move(a)}); }
    static OrderExpr two_power(OrderExpr g) { return OrderExpr(OrderOp::two_power, {std::move(g)}); }
    static OrderExpr base_power(OrderExpr base, OrderExpr exp)
    {
        return OrderExpr(OrderOp::base_power, {std::move(base), std::move(exp)});
    }
    static OrderExpr z_power(std::int64_t r)
    {
        if (r < 0)
            throw Error(ErrorKind::input, "z-power needs r >= 0");
        OrderExpr e(OrderOp::z_power);
        e.k_ = r;
        return e;
    }
    static OrderExpr eps0() { return OrderExpr(OrderOp::eps0); }

    /// Nodes must be distinct sequences of naturals; every node of length >= 2
    /// must have its parent listed (the root may be left out).
    static OrderExpr kb(Tree tree)
    {
        std::set<std::vector<std::int64_t>> nodes;
        for (const auto& n : tree) {
            for (auto x : n)
                if (x < 0)
                    throw Error(ErrorKind::input, "kb tree node with a negative entry");
            if (!nodes.insert(n).second)
                throw Error(ErrorKind::input, "kb tree lists a node twice");
        }
        for (const auto& n : tree) {
            if (n.size() < 2)
                continue;
            std::vector<std::int64_t> parent(n.begin(), n.end() - 1);
            if (!nodes.count(parent))
                throw Error(ErrorKind::input, "kb tree is not prefix-closed");
        }
        OrderExpr e(OrderOp::kb);
        e.tree_.assign(nodes.begin(), nodes.end());
        return e;
    }

    OrderOp op() const noexcept { return op_; }
    std::int64_t k() const noexcept { return k_; }
    std::int64_t r() const noexcept { return k_; }
    const std::vector<OrderExpr>& kids() const noexcept { return kids_; }
    const OrderExpr& kid(std::size_t i) const { return kids_.at(i); }
    const Tree& tree() const noexcept { return tree_; }
    const ThreadOrder& thread_order() const noexcept { return thread_; }

    friend bool operator==(const OrderExpr&, const OrderExpr&) = default;

    std::string str() const
    {
        auto unary = [this](const char* name) { return std::string(name) + "(" + kids_[0].str() + ")"; };
        auto binary = [this](const char* name) {
            return std::string(name) + "(" + kids_[0].str() + "," + kids_[1].str() + ")";
        };
        switch (op_) {
        case OrderOp::nat: return "nat(" + std::to_string(k_) + ")";
        case OrderOp::omega: return "omega";
        case OrderOp::rev_omega: return "rev-omega";
        case OrderOp::thread: return "thread(" + thread_.name() + ")";
        case OrderOp::sum: return binary("sum");
        case OrderOp::prod: return binary("prod");
        case OrderOp::omega_times: return unary("omega-times");
        case OrderOp::one_plus: return unary("one-plus");
        case OrderOp::plus_one: return unary("plus-one");
        case OrderOp::two_power: return unary("two-power");
        case OrderOp::base_power: return binary("base-power");
        case OrderOp::z_power: return "z-power(" + std::to_string(k_) + ")";
        case OrderOp::eps0: return "eps0";
        case OrderOp::kb: return "kb(" + std::to_string(tree_.size()) + " nodes)";
        }
        return "?";
    }

private:
    explicit OrderExpr(OrderOp op, std::vector<OrderExpr> kids = {}) : op_(op), kids_(std::move(kids)) {}

    OrderOp op_ = OrderOp::omega;
    std::int64_t k_ = 0;
    std::vector<OrderExpr> kids_;
    Tree tree_;
    ThreadOrder thread_;
};

/// The r-fold product X^r as nested prods, coordinate 0 in the outermost
/// (most significant) position.
inline OrderExpr power_product(const OrderExpr& x, std::size_t r)
{
    if (r == 0)
        return OrderExpr::nat(1);
    OrderExpr acc = x;
    for (std::size_t i = 1; i < r; ++i)
        acc = OrderExpr::prod(acc, x);
    return acc;
}

} // namespace dilator
