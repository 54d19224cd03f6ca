#pragma once

#include "dilator/code.hpp"
#include "dilator/countable_order.hpp"

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

namespace dilator {

/// Strictly increasing map {0..dom-1} -> {0..cod-1}.
class Morphism {
public:
    Morphism() = default;
    Morphism(std::size_t cod, std::vector<std::size_t> images) : cod_(cod), map_(std::move(images))
    {
        for (std::size_t i = 0; i < map_.size(); ++i) {
            if (map_[i] >= cod_ || (i > 0 && map_[i - 1] >= map_[i]))
                throw Error(ErrorKind::precondition, "not a strictly increasing map into " + std::to_string(cod_) +
                                                          ": " + str());
        }
    }

    static Morphism identity(std::size_t n)
    {
        std::vector<std::size_t> v(n);
        for (std::size_t i = 0; i < n; ++i)
            v[i] = i;
        return Morphism(n, std::move(v));
    }

    std::size_t dom() const noexcept { return map_.size(); }
    std::size_t cod() const noexcept { return cod_; }
    const std::vector<std::size_t>& images() const noexcept { return map_; }
    std::size_t operator()(std::size_t i) const { return map_.at(i); }

    /// (*this) after `first`.
    Morphism after(const Morphism& first) const
    {
        if (first.cod() != dom())
            throw Error(ErrorKind::precondition, "composition of non-composable maps");
        std::vector<std::size_t> v;
        v.reserve(first.dom());
        for (auto x : first.map_)
            v.push_back(map_[x]);
        return Morphism(cod_, std::move(v));
    }

    bool pointwise_le(const Morphism& g) const
    {
        if (dom() != g.dom() || cod() != g.cod())
            return false;
        for (std::size_t i = 0; i < dom(); ++i)
            if (map_[i] > g.map_[i])
                return false;
        return true;
    }

    friend bool operator==(const Morphism&, const Morphism&) = default;

    std::string str() const
    {
        std::string s = "[";
        for (std::size_t i = 0; i < map_.size(); ++i)
            s += (i ? "," : "") + std::to_string(map_[i]);
        return s + "]->" + std::to_string(cod_);
    }

private:
    std::size_t cod_ = 0;
    std::vector<std::size_t> map_;
};

/// All strictly increasing maps m -> n, lexicographic on image tuples.
inline std::vector<Morphism> enumerate_embeddings(std::size_t m, std::size_t n)
{
    std::vector<Morphism> out;
    if (m > n)
        return out;
    std::vector<std::size_t> v(m);
    for (std::size_t i = 0; i < m; ++i)
        v[i] = i;
    for (;;) {
        out.emplace_back(n, v);
        std::size_t i = m;
        while (i > 0 && v[i - 1] == n - m + (i - 1))
            --i;
        if (i == 0)
            break;
        ++v[i - 1];
        for (std::size_t j = i; j < m; ++j)
            v[j] = v[j - 1] + 1;
    }
    return out;
}

/// A finite suborder of a carrier, stored in increasing order.
class FiniteOrder {
public:
    FiniteOrder() = default;

    /// Sorts `codes` in the carrier; duplicates and foreign codes are rejected.
    FiniteOrder(CountableOrder carrier, std::vector<Code> codes) : carrier_(std::move(carrier)), codes_(std::move(codes))
    {
        for (const auto& c : codes_)
            carrier_.require_valid(c, "finite order");
        std::sort(codes_.begin(), codes_.end(), [this](const Code& a, const Code& b) { return carrier_.less(a, b); });
        for (std::size_t i = 1; i < codes_.size(); ++i)
            if (carrier_.compare(codes_[i - 1], codes_[i]) == 0)
                throw Error(ErrorKind::input, "finite order lists " + codes_[i].str() + " twice");
    }

    /// {0..n-1} inside nat(n).
    static FiniteOrder level(std::size_t n)
    {
        std::vector<Code> c;
        for (std::size_t i = 0; i < n; ++i)
            c.push_back(Code::nat(static_cast<std::int64_t>(i)));
        return FiniteOrder(build_order(OrderExpr::nat(static_cast<std::int64_t>(n))), std::move(c));
    }

    std::size_t size() const noexcept { return codes_.size(); }
    bool empty() const noexcept { return codes_.empty(); }
    /// The increasing enumeration en_a.
    const std::vector<Code>& codes() const noexcept { return codes_; }
    const Code& operator[](std::size_t i) const { return codes_.at(i); }
    const CountableOrder& carrier() const noexcept { return carrier_; }

    /// Position of c, or size() if absent.
    std::size_t index_of(const Code& c) const
    {
        auto it = std::lower_bound(codes_.begin(), codes_.end(), c,
                                   [this](const Code& a, const Code& b) { return carrier_.less(a, b); });
        if (it != codes_.end() && *it == c)
            return static_cast<std::size_t>(it - codes_.begin());
        return codes_.size();
    }
    bool contains(const Code& c) const { return index_of(c) < codes_.size(); }

    FiniteOrder unite(const FiniteOrder& other) const
    {
        std::vector<Code> all = codes_;
        for (const auto& c : other.codes_)
            if (!contains(c))
                all.push_back(c);
        return FiniteOrder(carrier_, std::move(all));
    }

    /// The collapsed inclusion |iota|: |this| -> |super|.
    Morphism inclusion_into(const FiniteOrder& super) const
    {
        std::vector<std::size_t> v;
        for (const auto& c : codes_) {
            auto i = super.index_of(c);
            if (i == super.size())
                throw Error(ErrorKind::precondition, c.str() + " is missing from the larger set");
            v.push_back(i);
        }
        return Morphism(super.size(), std::move(v));
    }

    friend bool operator==(const FiniteOrder& a, const FiniteOrder& b) { return a.codes_ == b.codes_; }

private:
    CountableOrder carrier_;
    std::vector<Code> codes_;
};

/// Strictly increasing map between two finite orders, given by its graph.
class FiniteEmbedding {
public:
    FiniteEmbedding(FiniteOrder domain, FiniteOrder codomain, std::vector<Code> images)
        : dom_(std::move(domain)), cod_(std::move(codomain)), img_(std::move(images))
    {
        if (img_.size() != dom_.size())
            throw Error(ErrorKind::input, "embedding graph does not cover its domain");
        for (std::size_t i = 0; i < img_.size(); ++i) {
            if (!cod_.contains(img_[i]))
                throw Error(ErrorKind::input, "embedding image " + img_[i].str() + " outside the codomain");
            if (i > 0 && !cod_.carrier().less(img_[i - 1], img_[i]))
                throw Error(ErrorKind::input, "embedding is not strictly increasing");
        }
    }

    const FiniteOrder& domain() const noexcept { return dom_; }
    const FiniteOrder& codomain() const noexcept { return cod_; }
    const std::vector<Code>& images() const noexcept { return img_; }

    /// |f| with en_b . |f| = f . en_a.
    Morphism collapse() const
    {
        std::vector<std::size_t> v;
        for (const auto& c : img_)
            v.push_back(cod_.index_of(c));
        return Morphism(cod_.size(), std::move(v));
    }

    /// g after this.
    FiniteEmbedding then(const FiniteEmbedding& g) const
    {
        std::vector<Code> v;
        for (const auto& c : img_) {
            auto i = g.dom_.index_of(c);
            if (i == g.dom_.size())
                throw Error(ErrorKind::precondition, "composition of non-composable embeddings");
            v.push_back(g.img_[i]);
        }
        return FiniteEmbedding(dom_, g.cod_, std::move(v));
    }

private:
    FiniteOrder dom_, cod_;
    std::vector<Code> img_;
};

inline Morphism collapse(const FiniteEmbedding& f) { return f.collapse(); }

/// The increasing enumeration of a as a list (index i holds en_a(i)).
inline std::vector<Code> increasing_enumeration(const FiniteOrder& a) { return a.codes(); }

} // namespace dilator
