#pragma once

#include "dilator/code.hpp"
#include "dilator/countable_order.hpp"
#include "dilator/finite.hpp"

#include <algorithm>
#include <compare>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace dilator {

/// A coded predilator: level orders D(n), the action on increasing maps and
/// the support functions. Implementations must be pure.
class Predilator {
public:
    virtual ~Predilator() = default;

    virtual std::string name() const = 0;
    virtual Code act(const Morphism& f, const Code& sigma) const = 0;
    /// supp_n(sigma), ascending.
    virtual std::vector<std::size_t> support(std::size_t n, const Code& sigma) const = 0;

    /// Some sigma in D(f.dom()) with act(f, sigma) == tau. The default searches
    /// the first pullback_bound() codes of the smaller level.
    virtual std::optional<Code> pullback(const Morphism& f, const Code& tau) const
    {
        for (const auto& s : level(f.dom()).enumerate(pullback_bound()))
            if (act(f, s) == tau)
                return s;
        return std::nullopt;
    }
    virtual std::size_t pullback_bound() const { return 256; }

    /// D(n), built once per level.
    CountableOrder level(std::size_t n) const
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = levels_.find(n);
        if (it == levels_.end())
            it = levels_.emplace(n, make_level(n)).first;
        return it->second;
    }

    bool full_support(std::size_t n, const Code& sigma) const { return support(n, sigma).size() == n; }

protected:
    virtual CountableOrder make_level(std::size_t n) const = 0;

private:
    mutable std::mutex mu_;
    mutable std::map<std::size_t, CountableOrder> levels_;
};

using PredilatorPtr = std::shared_ptr<const Predilator>;

struct TraceElement {
    Code sigma;
    std::size_t level = 0;

    friend bool operator==(const TraceElement&, const TraceElement&) = default;
    friend auto operator<=>(const TraceElement&, const TraceElement&) = default;
    std::string str() const { return "(" + sigma.str() + "," + std::to_string(level) + ")"; }
};

/// (sigma, a): an element of the extension of D to the carrier of a.
class Term {
public:
    Term() = default;
    /// Unchecked; see make_term.
    Term(Code sigma, FiniteOrder support) : sigma_(std::move(sigma)), support_(std::move(support)) {}

    const Code& sigma() const noexcept { return sigma_; }
    const FiniteOrder& support() const noexcept { return support_; }
    const CountableOrder& carrier() const noexcept { return support_.carrier(); }
    std::size_t arity() const noexcept { return support_.size(); }
    TraceElement trace() const { return {sigma_, support_.size()}; }
    Code code() const { return Code::term(sigma_, support_.codes()); }

    friend bool operator==(const Term& a, const Term& b)
    {
        return a.sigma_ == b.sigma_ && a.support_.codes() == b.support_.codes();
    }

    std::string str() const { return code().str(); }

private:
    Code sigma_;
    FiniteOrder support_;
};

inline Term make_term(const Predilator& D, Code sigma, FiniteOrder a)
{
    auto n = a.size();
    if (!D.level(n).valid(sigma))
        throw Error(ErrorKind::invalid_term, sigma.str() + " is not in " + D.name() + "(" + std::to_string(n) + ")");
    if (!D.full_support(n, sigma))
        throw Error(ErrorKind::invalid_term, sigma.str() + " does not have full support at level " + std::to_string(n));
    return Term(std::move(sigma), std::move(a));
}

inline Term make_term(const Predilator& D, Code sigma, const CountableOrder& carrier, std::vector<Code> support)
{
    return make_term(D, std::move(sigma), FiniteOrder(carrier, std::move(support)));
}

using CarrierMap = std::function<std::optional<Code>(const Code&)>;

/// D-bar(f)(sigma, a) = (sigma, f[a]).
inline Term extend_act(const Term& t, const CountableOrder& target, const CarrierMap& f)
{
    std::vector<Code> image;
    for (const auto& c : t.support().codes()) {
        auto y = f(c);
        if (!y)
            throw Error(ErrorKind::precondition, "carrier map undefined on " + c.str());
        if (!image.empty() && !target.less(image.back(), *y))
            throw Error(ErrorKind::precondition, "carrier map is not strictly increasing on the support");
        image.push_back(*y);
    }
    return Term(t.sigma(), FiniteOrder(target, std::move(image)));
}

inline Term extend_act(const Term& t, const CountableOrder& target, const std::map<Code, Code>& f)
{
    return extend_act(t, target, [&f](const Code& c) -> std::optional<Code> {
        auto it = f.find(c);
        if (it == f.end())
            return std::nullopt;
        return it->second;
    });
}

/// Compares D(|iota_a|)(sigma) with D(|iota_b|)(tau) in D(|a u b|).
inline std::strong_ordering compare_direct(const Predilator& D, const Term& s, const Term& t)
{
    if (!s.carrier().same_as(t.carrier()))
        throw Error(ErrorKind::invalid_term, "terms live over different carriers");
    auto u = s.support().unite(t.support());
    auto x = D.act(s.support().inclusion_into(u), s.sigma());
    auto y = D.act(t.support().inclusion_into(u), t.sigma());
    return D.level(u.size()).compare(x, y);
}

/// Full-support codes among the first `bound` codes of D(n).
inline std::vector<TraceElement> trace_elements(const Predilator& D, std::size_t n, std::size_t bound)
{
    std::vector<TraceElement> out;
    for (auto& c : D.level(n).enumerate(bound))
        if (D.full_support(n, c))
            out.push_back({std::move(c), n});
    return out;
}

/// Whole trace at level n when D(n) is finite, else the full-support codes
/// among its first `sample` codes.
inline std::vector<TraceElement> trace_at(const Predilator& D, std::size_t n, std::size_t sample)
{
    auto sz = D.level(n).size();
    return trace_elements(D, n, sz ? std::max(*sz, sample) : sample);
}

/// trace_at for every level <= max_level.
inline std::vector<TraceElement> trace_upto(const Predilator& D, std::size_t max_level, std::size_t sample)
{
    std::vector<TraceElement> out;
    for (std::size_t n = 0; n <= max_level; ++n)
        for (auto& t : trace_at(D, n, sample))
            out.push_back(std::move(t));
    return out;
}

struct Violation {
    std::string law;
    std::string witness;
};

struct ValidationReport {
    std::size_t level_bound = 0;
    std::size_t sample_bound = 0;
    std::size_t checks = 0;
    std::vector<Violation> violations;

    bool pass() const noexcept { return violations.empty(); }
    bool has(const std::string& law) const
    {
        return std::any_of(violations.begin(), violations.end(), [&](const Violation& v) { return v.law == law; });
    }
};

namespace detail {

inline std::string show(const std::vector<std::size_t>& v)
{
    std::string s = "{";
    for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? "," : "") + std::to_string(v[i]);
    return s + "}";
}

class Recorder {
public:
    explicit Recorder(ValidationReport& r) : r_(r) {}
    void check(bool ok, const char* law, const std::function<std::string()>& witness)
    {
        ++r_.checks;
        if (ok)
            return;
        auto& n = per_law_[law];
        if (n++ < 8)
            r_.violations.push_back({law, witness()});
    }

private:
    ValidationReport& r_;
    std::map<std::string, std::size_t> per_law_;
};

} // namespace detail

/// Bounded check of the predilator laws for all levels <= level_bound and
/// the first sample_bound codes of each level.
inline ValidationReport validate(const Predilator& D, std::size_t level_bound, std::size_t sample_bound)
{
    ValidationReport rep;
    rep.level_bound = level_bound;
    rep.sample_bound = sample_bound;
    detail::Recorder rec(rep);
    using detail::show;

    std::vector<std::vector<Code>> sample(level_bound + 1);
    for (std::size_t n = 0; n <= level_bound; ++n)
        sample[n] = D.level(n).enumerate(sample_bound);

    for (std::size_t m = 0; m <= level_bound; ++m) {
        auto Dm = D.level(m);
        auto id = Morphism::identity(m);
        for (const auto& s : sample[m]) {
            rec.check(Dm.valid(s), "validity", [&] { return "enumerated " + s.str() + " is invalid"; });
            rec.check(D.act(id, s) == s, "identity", [&] { return "act(id_" + std::to_string(m) + "," + s.str() + ")"; });
            auto sp = D.support(m, s);
            bool in_range = std::all_of(sp.begin(), sp.end(), [m](std::size_t i) { return i < m; }) &&
                            std::is_sorted(sp.begin(), sp.end()) &&
                            std::adjacent_find(sp.begin(), sp.end()) == sp.end();
            rec.check(in_range, "support-range", [&] { return "supp_" + std::to_string(m) + "(" + s.str() + ")=" + show(sp); });
        }
        for (std::size_t n = m; n <= level_bound; ++n) {
            auto Dn = D.level(n);
            auto maps = enumerate_embeddings(m, n);
            for (const auto& f : maps) {
                std::vector<Code> img;
                for (const auto& s : sample[m]) {
                    auto y = D.act(f, s);
                    img.push_back(y);
                    rec.check(Dn.valid(y), "validity", [&] { return "act(" + f.str() + "," + s.str() + ") invalid"; });
                    std::vector<std::size_t> mapped;
                    for (auto i : D.support(m, s))
                        mapped.push_back(f(i));
                    auto got = D.support(n, y);
                    rec.check(got == mapped, "support-naturality", [&] {
                        return "supp(act(" + f.str() + "," + s.str() + "))=" + show(got) + " but f[supp]=" + show(mapped);
                    });
                }
                for (std::size_t i = 0; i < sample[m].size(); ++i)
                    for (std::size_t j = 0; j < sample[m].size(); ++j) {
                        if (!Dm.less(sample[m][i], sample[m][j]))
                            continue;
                        rec.check(Dn.less(img[i], img[j]), "order-preservation", [&] {
                            return sample[m][i].str() + "<" + sample[m][j].str() + " not preserved by " + f.str();
                        });
                    }
                for (const auto& g : maps) {
                    if (!f.pointwise_le(g) || f == g)
                        continue;
                    for (std::size_t i = 0; i < sample[m].size(); ++i) {
                        auto gy = D.act(g, sample[m][i]);
                        rec.check(Dn.compare(img[i], gy) <= 0, "monotonicity", [&] {
                            return f.str() + "<=" + g.str() + " but act on " + sample[m][i].str() + " decreases";
                        });
                    }
                }
                for (std::size_t k = n; k <= level_bound; ++k)
                    for (const auto& g : enumerate_embeddings(n, k)) {
                        auto gf = g.after(f);
                        for (std::size_t i = 0; i < sample[m].size(); ++i)
                            rec.check(D.act(gf, sample[m][i]) == D.act(g, img[i]), "composition", [&] {
                                return "act(" + gf.str() + ") != act(" + g.str() + ") . act(" + f.str() + ") on " +
                                       sample[m][i].str();
                            });
                    }
                // support condition: supp(tau) inside rng(f) forces tau into the image of f
                for (const auto& tau : sample[n]) {
                    auto sp = D.support(n, tau);
                    bool inside = std::all_of(sp.begin(), sp.end(), [&](std::size_t x) {
                        return std::binary_search(f.images().begin(), f.images().end(), x);
                    });
                    if (!inside)
                        continue;
                    auto pre = D.pullback(f, tau);
                    bool ok = pre && D.act(f, *pre) == tau;
                    rec.check(ok, "support-condition", [&] {
                        return "supp(" + tau.str() + ")=" + show(sp) + " lies in rng " + f.str() + " but has no preimage";
                    });
                }
            }
        }
    }
    return rep;
}

/// Component maps mu_n: D(n) -> E(n).
struct NaturalTransformation {
    PredilatorPtr source;
    PredilatorPtr target;
    std::function<Code(std::size_t, const Code&)> component;
};

/// (sigma, a) -> (mu_|a|(sigma), a).
inline Term nat_extend(const NaturalTransformation& mu, const Term& t)
{
    if (!mu.component)
        throw Error(ErrorKind::precondition, "natural transformation without components");
    return make_term(*mu.target, mu.component(t.arity(), t.sigma()), t.support());
}

inline ValidationReport validate_transformation(const NaturalTransformation& mu, std::size_t level_bound,
                                                std::size_t sample_bound)
{
    ValidationReport rep;
    rep.level_bound = level_bound;
    rep.sample_bound = sample_bound;
    detail::Recorder rec(rep);
    const auto& D = *mu.source;
    const auto& E = *mu.target;
    for (std::size_t m = 0; m <= level_bound; ++m) {
        auto sample = D.level(m).enumerate(sample_bound);
        std::vector<Code> img;
        for (const auto& s : sample) {
            img.push_back(mu.component(m, s));
            rec.check(E.level(m).valid(img.back()), "validity", [&] { return "mu(" + s.str() + ") invalid"; });
            if (D.full_support(m, s))
                rec.check(E.full_support(m, img.back()), "trace", [&] { return "mu(" + s.str() + ") lost full support"; });
        }
        for (std::size_t i = 0; i < sample.size(); ++i)
            for (std::size_t j = 0; j < sample.size(); ++j)
                if (D.level(m).less(sample[i], sample[j]))
                    rec.check(E.level(m).less(img[i], img[j]), "order-preservation",
                              [&] { return sample[i].str() + "<" + sample[j].str(); });
        for (std::size_t n = m; n <= level_bound; ++n)
            for (const auto& f : enumerate_embeddings(m, n))
                for (std::size_t i = 0; i < sample.size(); ++i)
                    rec.check(mu.component(n, D.act(f, sample[i])) == E.act(f, img[i]), "naturality",
                              [&] { return "square for " + f.str() + " at " + sample[i].str(); });
    }
    return rep;
}

/// Support a inside nat(n) as the map en_a^n : |a| -> n.
inline Morphism level_enumeration(const Term& t, std::size_t n)
{
    std::vector<std::size_t> v;
    for (const auto& c : t.support().codes()) {
        if (!c.is(CodeKind::nat) || c.value() < 0 || static_cast<std::size_t>(c.value()) >= n)
            throw Error(ErrorKind::precondition, "support element " + c.str() + " is not below " + std::to_string(n));
        v.push_back(static_cast<std::size_t>(c.value()));
    }
    return Morphism(n, std::move(v));
}

/// D-bar(n) -> D(n), (sigma, a) -> D(en_a^n)(sigma).
inline Code to_level(const Predilator& D, const Term& t, std::size_t n)
{
    return D.act(level_enumeration(t, n), t.sigma());
}

/// D(n) -> D-bar(n), the inverse of to_level.
inline Term from_level(const Predilator& D, std::size_t n, const Code& rho)
{
    auto sp = D.support(n, rho);
    Morphism f(n, sp);
    auto sigma = D.pullback(f, rho);
    if (!sigma)
        throw Error(ErrorKind::internal, "support condition failed for " + rho.str());
    std::vector<Code> a;
    for (auto i : sp)
        a.push_back(Code::nat(static_cast<std::int64_t>(i)));
    return make_term(D, *sigma, FiniteOrder(build_order(OrderExpr::nat(static_cast<std::int64_t>(n))), std::move(a)));
}

namespace detail {

/// D-bar over a carrier, as a countable order on term codes.
class ExtensionOrder final : public OrderImpl {
public:
    ExtensionOrder(PredilatorPtr D, CountableOrder carrier) : D_(std::move(D)), carrier_(std::move(carrier)) {}

    bool valid(const Code& c) const override
    {
        if (!c.is(CodeKind::term) || c.kids().empty())
            return false;
        auto sp = c.support();
        for (std::size_t i = 0; i < sp.size(); ++i) {
            if (!carrier_.valid(sp[i]))
                return false;
            if (i > 0 && !carrier_.less(sp[i - 1], sp[i]))
                return false;
        }
        return D_->level(sp.size()).valid(c.sigma()) && D_->full_support(sp.size(), c.sigma());
    }
    std::strong_ordering compare(const Code& a, const Code& b) const override
    {
        return compare_direct(*D_, term(a), term(b));
    }
    /// Not known to be finite in general.
    std::optional<std::size_t> size() const override { return std::nullopt; }

    /// Stage s contributes terms whose support comes from the first s carrier
    /// codes and whose sigma is among the first s codes of its level.
    std::vector<Code> enumerate(std::size_t k) const override
    {
        std::vector<Code> out;
        std::set<Code> seen;
        std::size_t stale = 0;
        for (std::size_t s = 1; out.size() < k && stale < 4; ++s) {
            auto base = carrier_.enumerate(s);
            std::size_t before = out.size();
            for (std::size_t arity = 0; arity <= base.size() && out.size() < k; ++arity) {
                auto tr = trace_elements(*D_, arity, s);
                if (tr.empty())
                    continue;
                for (const auto& f : enumerate_embeddings(arity, base.size())) {
                    std::vector<Code> sp;
                    for (auto i : f.images())
                        sp.push_back(base[i]);
                    std::sort(sp.begin(), sp.end(),
                              [this](const Code& x, const Code& y) { return carrier_.less(x, y); });
                    for (const auto& te : tr) {
                        auto c = Code::term(te.sigma, sp);
                        if (out.size() < k && seen.insert(c).second)
                            out.push_back(std::move(c));
                    }
                    if (out.size() >= k)
                        break;
                }
            }
            stale = out.size() == before ? stale + 1 : 0;
            if (base.size() < s && stale > 0)
                break;
        }
        return out;
    }
    std::string describe() const override { return "ext(" + D_->name() + "," + carrier_.describe() + ")"; }

    Term term(const Code& c) const { return Term(c.sigma(), FiniteOrder(carrier_, c.support())); }

private:
    PredilatorPtr D_;
    CountableOrder carrier_;
};

} // namespace detail

inline CountableOrder extension_order(PredilatorPtr D, CountableOrder carrier)
{
    return CountableOrder(std::make_shared<detail::ExtensionOrder>(std::move(D), std::move(carrier)));
}

inline Term term_from_code(const Predilator& D, const CountableOrder& carrier, const Code& c)
{
    if (!c.is(CodeKind::term) || c.kids().empty())
        throw Error(ErrorKind::input, c.str() + " is not a term code");
    return make_term(D, c.sigma(), FiniteOrder(carrier, c.support()));
}

} // namespace dilator
