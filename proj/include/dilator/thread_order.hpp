#pragma once

#include "dilator/code.hpp"

#include <algorithm>
#include <cstdint>
#include <memory>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

namespace dilator {

/// A linear order on the naturals. Besides the built-ins, a thread order can
/// relabel finitely many points of another one (so that enumeration-sensitive
/// constructions can be exercised) or be a finite rank table, which is how
/// extracted threads are represented.
class ThreadOrder {
public:
    enum class Kind { omega, rev_omega, zigzag, perturb, table };

    ThreadOrder() = default;

    static ThreadOrder omega() { return ThreadOrder(Kind::omega); }
    static ThreadOrder rev_omega() { return ThreadOrder(Kind::rev_omega); }
    /// 0 < 2 < 4 < ... < 5 < 3 < 1
    static ThreadOrder zigzag() { return ThreadOrder(Kind::zigzag); }

    /// i <= j iff s(i) <= s(j) in `base`, where s applies the transpositions in order.
    static ThreadOrder perturb(ThreadOrder base, std::vector<std::pair<std::int64_t, std::int64_t>> swaps)
    {
        for (auto [a, b] : swaps)
            if (a < 0 || b < 0)
                throw Error(ErrorKind::input, "thread order swap with a negative point");
        ThreadOrder t(Kind::perturb);
        t.base_ = std::make_shared<const ThreadOrder>(std::move(base));
        t.swaps_ = std::move(swaps);
        return t;
    }

    /// ranks[i] is the position of i among 0..s-1; points >= s follow in
    /// natural order above the table.
    static ThreadOrder table(std::vector<std::int64_t> ranks)
    {
        std::vector<std::int64_t> sorted = ranks;
        std::sort(sorted.begin(), sorted.end());
        for (std::size_t i = 0; i < sorted.size(); ++i)
            if (sorted[i] != static_cast<std::int64_t>(i))
                throw Error(ErrorKind::input, "thread table ranks must be a permutation of 0..s-1");
        ThreadOrder t(Kind::table);
        t.ranks_ = std::move(ranks);
        return t;
    }

    Kind kind() const noexcept { return kind_; }
    const ThreadOrder* base() const noexcept { return base_.get(); }
    const std::vector<std::pair<std::int64_t, std::int64_t>>& swaps() const noexcept { return swaps_; }
    const std::vector<std::int64_t>& ranks() const noexcept { return ranks_; }

    bool less(std::int64_t i, std::int64_t j) const
    {
        switch (kind_) {
        case Kind::omega: return i < j;
        case Kind::rev_omega: return i > j;
        case Kind::zigzag: {
            bool ei = i % 2 == 0, ej = j % 2 == 0;
            if (ei != ej)
                return ei;
            return ei ? i < j : i > j;
        }
        case Kind::perturb: return base_->less(relabel(i), relabel(j));
        case Kind::table: {
            auto s = static_cast<std::int64_t>(ranks_.size());
            if (i < s && j < s)
                return ranks_[i] < ranks_[j];
            if (i < s || j < s)
                return i < s;
            return i < j;
        }
        }
        return false;
    }

    std::strong_ordering compare(std::int64_t i, std::int64_t j) const
    {
        if (i == j)
            return std::strong_ordering::equal;
        return less(i, j) ? std::strong_ordering::less : std::strong_ordering::greater;
    }

    std::string name() const
    {
        switch (kind_) {
        case Kind::omega: return "omega";
        case Kind::rev_omega: return "rev-omega";
        case Kind::zigzag: return "zigzag";
        case Kind::perturb: {
            std::string s = "perturb(" + base_->name();
            for (auto [a, b] : swaps_)
                s += "," + std::to_string(a) + "<>" + std::to_string(b);
            return s + ")";
        }
        case Kind::table: {
            std::string s = "table(";
            for (std::size_t i = 0; i < ranks_.size(); ++i)
                s += (i ? "," : "") + std::to_string(ranks_[i]);
            return s + ")";
        }
        }
        return "?";
    }

    friend bool operator==(const ThreadOrder& a, const ThreadOrder& b)
    {
        if (a.kind_ != b.kind_ || a.swaps_ != b.swaps_ || a.ranks_ != b.ranks_)
            return false;
        if (a.kind_ == Kind::perturb)
            return *a.base_ == *b.base_;
        return true;
    }

private:
    explicit ThreadOrder(Kind k) : kind_(k) {}

    std::int64_t relabel(std::int64_t x) const
    {
        for (auto [a, b] : swaps_) {
            if (x == a)
                x = b;
            else if (x == b)
                x = a;
        }
        return x;
    }

    Kind kind_ = Kind::omega;
    std::shared_ptr<const ThreadOrder> base_;
    std::vector<std::pair<std::int64_t, std::int64_t>> swaps_;
    std::vector<std::int64_t> ranks_;
};

/// The permutation pi of {0..n-1} with pi(i) <= pi(j) iff i <=_L j, i.e. the
/// rank of each point among 0..n-1 under L.
inline std::vector<std::size_t> dl_priority(const ThreadOrder& L, std::size_t n)
{
    std::vector<std::size_t> pi(n, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (L.less(static_cast<std::int64_t>(j), static_cast<std::int64_t>(i)))
                ++pi[i];
    return pi;
}

} // namespace dilator
