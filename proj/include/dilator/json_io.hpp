#pragma once

#include "dilator/calculus.hpp"
#include "dilator/lab/descent.hpp"
#include "dilator/lab/eta.hpp"
#include "dilator/lab/limit_tree.hpp"
#include "dilator/lab/probe.hpp"
#include "dilator/lab/thread.hpp"
#include "dilator/zoo.hpp"

#include <json.hpp>

#include <algorithm>
#include <string>
#include <vector>

namespace dilator::json_io {

using json = nlohmann::json;

namespace detail {

[[noreturn]] inline void fail(const std::string& path, const std::string& what)
{
    throw Error(ErrorKind::input, (path.empty() ? std::string("/") : path) + ": " + what);
}

inline const json& field(const json& j, const char* key, const std::string& path)
{
    if (!j.is_object() || !j.contains(key))
        fail(path, std::string("missing \"") + key + "\"");
    return j.at(key);
}

inline std::int64_t integer(const json& j, const std::string& path)
{
    if (!j.is_number_integer())
        fail(path, "expected an integer, got " + j.dump());
    return j.get<std::int64_t>();
}

inline std::size_t count(const json& j, const std::string& path)
{
    auto v = integer(j, path);
    if (v < 0)
        fail(path, "expected a non-negative integer");
    return static_cast<std::size_t>(v);
}

inline std::vector<std::int64_t> integers(const json& j, const std::string& path)
{
    if (!j.is_array())
        fail(path, "expected an integer array");
    std::vector<std::int64_t> v;
    for (std::size_t i = 0; i < j.size(); ++i)
        v.push_back(integer(j[i], path + "/" + std::to_string(i)));
    return v;
}

inline const json& array(const json& j, const std::string& path)
{
    if (!j.is_array())
        fail(path, "expected an array");
    return j;
}

} // namespace detail

// ---- element codes ----------------------------------------------------------

inline json to_json(const Code& c)
{
    switch (c.kind()) {
    case CodeKind::nat: return c.value();
    case CodeKind::ints: return c.ints();
    case CodeKind::node: return json{{"node", c.ints()}};
    case CodeKind::pair: return json{{"hi", to_json(c.hi())}, {"lo", to_json(c.lo())}};
    case CodeKind::exps:
    case CodeKind::cnf: {
        json a = json::array();
        for (const auto& k : c.kids())
            a.push_back(to_json(k));
        return json{{c.is(CodeKind::exps) ? "exps" : "cnf", a}};
    }
    case CodeKind::terms: {
        json a = json::array();
        for (const auto& k : c.kids())
            a.push_back(json::array({to_json(k.hi()), to_json(k.lo())}));
        return json{{"terms", a}};
    }
    case CodeKind::top: return json{{"top", true}};
    case CodeKind::zero: return json{{"zero", true}};
    case CodeKind::in: return json{{"in", to_json(c.inner())}};
    case CodeKind::left: return json{{"left", to_json(c.inner())}};
    case CodeKind::right: return json{{"right", to_json(c.inner())}};
    case CodeKind::term: {
        json a = json::array();
        for (const auto& k : c.support())
            a.push_back(to_json(k));
        return json{{"sigma", to_json(c.sigma())}, {"support", a}};
    }
    }
    return nullptr;
}

/// Reads a code from its shape alone.
inline Code code_from_json(const json& j, const std::string& path = "")
{
    using namespace detail;
    if (j.is_number_integer())
        return Code::nat(j.get<std::int64_t>());
    if (j.is_array())
        return Code::ints(integers(j, path));
    if (!j.is_object() || j.empty())
        fail(path, "not an element code: " + j.dump());
    auto list = [&](const char* key) {
        std::vector<Code> v;
        const auto& a = array(j.at(key), path + "/" + key);
        for (std::size_t i = 0; i < a.size(); ++i)
            v.push_back(code_from_json(a[i], path + "/" + key + "/" + std::to_string(i)));
        return v;
    };
    if (j.contains("hi") || j.contains("lo"))
        return Code::pair(code_from_json(field(j, "hi", path), path + "/hi"),
                          code_from_json(field(j, "lo", path), path + "/lo"));
    if (j.contains("exps"))
        return Code::exps(list("exps"));
    if (j.contains("cnf"))
        return Code::cnf(list("cnf"));
    if (j.contains("node"))
        return Code::node(integers(j.at("node"), path + "/node"));
    if (j.contains("terms")) {
        const auto& a = array(j.at("terms"), path + "/terms");
        std::vector<Code> v;
        for (std::size_t i = 0; i < a.size(); ++i) {
            auto p = path + "/terms/" + std::to_string(i);
            if (!a[i].is_array() || a[i].size() != 2)
                fail(p, "expected a pair [x, y]");
            v.push_back(Code::pair(code_from_json(a[i][0], p + "/0"), code_from_json(a[i][1], p + "/1")));
        }
        return Code::terms(std::move(v));
    }
    if (j.contains("top"))
        return Code::top();
    if (j.contains("zero"))
        return Code::zero();
    if (j.contains("in"))
        return Code::in(code_from_json(j.at("in"), path + "/in"));
    if (j.contains("left"))
        return Code::left(code_from_json(j.at("left"), path + "/left"));
    if (j.contains("right"))
        return Code::right(code_from_json(j.at("right"), path + "/right"));
    if (j.contains("sigma"))
        return Code::term(code_from_json(j.at("sigma"), path + "/sigma"), list("support"));
    fail(path, "not an element code: " + j.dump());
}

/// Puts exponent lists written in ascending order into the stored descending
/// orientation, recursively along the order expression.
inline Code normalize(const OrderExpr& e, const Code& c)
{
    switch (e.op()) {
    case OrderOp::two_power: {
        if (!c.is(CodeKind::exps))
            return c;
        auto g = build_order(e.kid(0));
        std::vector<Code> ks;
        for (const auto& k : c.kids())
            ks.push_back(normalize(e.kid(0), k));
        std::vector<Code> desc = ks;
        std::reverse(desc.begin(), desc.end());
        auto descending = [&](const std::vector<Code>& v) {
            for (std::size_t i = 1; i < v.size(); ++i)
                if (!g.valid(v[i]) || !g.valid(v[i - 1]) || !g.less(v[i], v[i - 1]))
                    return false;
            return true;
        };
        return Code::exps(descending(ks) ? ks : (descending(desc) ? desc : ks));
    }
    case OrderOp::base_power: {
        if (!c.is(CodeKind::terms))
            return c;
        auto g = build_order(e.kid(1));
        std::vector<Code> ks;
        for (const auto& k : c.kids())
            ks.push_back(k.is(CodeKind::pair) && k.kids().size() == 2
                             ? Code::pair(normalize(e.kid(1), k.hi()), normalize(e.kid(0), k.lo()))
                             : k);
        bool ascending = ks.size() > 1;
        for (std::size_t i = 1; i < ks.size() && ascending; ++i)
            ascending = ks[i].is(CodeKind::pair) && ks[i - 1].is(CodeKind::pair) && g.valid(ks[i].hi()) &&
                        g.valid(ks[i - 1].hi()) && g.less(ks[i - 1].hi(), ks[i].hi());
        if (ascending)
            std::reverse(ks.begin(), ks.end());
        return Code::terms(std::move(ks));
    }
    case OrderOp::prod:
        if (!c.is(CodeKind::pair) || c.kids().size() != 2)
            return c;
        return Code::pair(normalize(e.kid(1), c.hi()), normalize(e.kid(0), c.lo()));
    case OrderOp::omega_times:
        if (!c.is(CodeKind::pair) || c.kids().size() != 2)
            return c;
        return Code::pair(normalize(e.kid(0), c.hi()), c.lo());
    case OrderOp::one_plus:
    case OrderOp::plus_one:
        return c.is(CodeKind::in) && c.kids().size() == 1 ? Code::in(normalize(e.kid(0), c.inner())) : c;
    case OrderOp::sum:
        if (c.is(CodeKind::left) && c.kids().size() == 1)
            return Code::left(normalize(e.kid(0), c.inner()));
        if (c.is(CodeKind::right) && c.kids().size() == 1)
            return Code::right(normalize(e.kid(1), c.inner()));
        return c;
    default: return c;
    }
}

/// A code that must be an element of the order e.
inline Code element_from_json(const OrderExpr& e, const json& j, const std::string& path = "")
{
    auto c = normalize(e, code_from_json(j, path));
    if (!build_order(e).valid(c))
        detail::fail(path, c.str() + " is not an element of " + e.str());
    return c;
}

// ---- thread orders ------------------------------------------------------------

inline json to_json(const ThreadOrder& L)
{
    switch (L.kind()) {
    case ThreadOrder::Kind::omega: return json{{"builtin", "omega"}};
    case ThreadOrder::Kind::rev_omega: return json{{"builtin", "rev-omega"}};
    case ThreadOrder::Kind::zigzag: return json{{"builtin", "zigzag"}};
    case ThreadOrder::Kind::perturb: {
        json sw = json::array();
        for (auto [a, b] : L.swaps())
            sw.push_back(json::array({a, b}));
        return json{{"perturb", {{"base", to_json(*L.base())}, {"swaps", sw}}}};
    }
    case ThreadOrder::Kind::table: return json{{"table", L.ranks()}};
    }
    return nullptr;
}

inline ThreadOrder thread_from_json(const json& j, const std::string& path = "")
{
    using namespace detail;
    if (j.is_string())
        return builtin_thread(j.get<std::string>());
    if (!j.is_object())
        fail(path, "expected a thread order object");
    if (j.contains("builtin")) {
        if (!j.at("builtin").is_string())
            fail(path + "/builtin", "expected a name");
        try {
            return builtin_thread(j.at("builtin").get<std::string>());
        } catch (const Error& e) {
            fail(path + "/builtin", e.what());
        }
    }
    if (j.contains("perturb")) {
        auto p = path + "/perturb";
        const auto& pj = j.at("perturb");
        auto base = thread_from_json(field(pj, "base", p), p + "/base");
        std::vector<std::pair<std::int64_t, std::int64_t>> sw;
        const auto& a = array(field(pj, "swaps", p), p + "/swaps");
        for (std::size_t i = 0; i < a.size(); ++i) {
            auto v = integers(a[i], p + "/swaps/" + std::to_string(i));
            if (v.size() != 2)
                fail(p + "/swaps/" + std::to_string(i), "expected a pair");
            sw.emplace_back(v[0], v[1]);
        }
        try {
            return ThreadOrder::perturb(std::move(base), std::move(sw));
        } catch (const Error& e) {
            fail(p, e.what());
        }
    }
    if (j.contains("table")) {
        try {
            return ThreadOrder::table(integers(j.at("table"), path + "/table"));
        } catch (const Error& e) {
            fail(path + "/table", e.what());
        }
    }
    fail(path, "unknown thread order " + j.dump());
}

// ---- order expressions -----------------------------------------------------------

inline json to_json(const OrderExpr& e)
{
    switch (e.op()) {
    case OrderOp::nat: return json{{"op", "nat"}, {"k", e.k()}};
    case OrderOp::omega: return json{{"op", "omega"}};
    case OrderOp::rev_omega: return json{{"op", "rev-omega"}};
    case OrderOp::thread: return json{{"op", "thread"}, {"L", to_json(e.thread_order())}};
    case OrderOp::sum: return json{{"op", "sum"}, {"left", to_json(e.kid(0))}, {"right", to_json(e.kid(1))}};
    case OrderOp::prod: return json{{"op", "prod"}, {"minor", to_json(e.kid(0))}, {"major", to_json(e.kid(1))}};
    case OrderOp::omega_times: return json{{"op", "omega-times"}, {"inner", to_json(e.kid(0))}};
    case OrderOp::one_plus: return json{{"op", "one-plus"}, {"inner", to_json(e.kid(0))}};
    case OrderOp::plus_one: return json{{"op", "plus-one"}, {"inner", to_json(e.kid(0))}};
    case OrderOp::two_power: return json{{"op", "two-power"}, {"exp", to_json(e.kid(0))}};
    case OrderOp::base_power: return json{{"op", "base-power"}, {"base", to_json(e.kid(0))}, {"exp", to_json(e.kid(1))}};
    case OrderOp::z_power: return json{{"op", "z-power"}, {"r", e.r()}};
    case OrderOp::eps0: return json{{"op", "eps0"}};
    case OrderOp::kb: return json{{"op", "kb"}, {"tree", e.tree()}};
    }
    return nullptr;
}

inline OrderExpr order_from_json(const json& j, const std::string& path = "")
{
    using namespace detail;
    if (!j.is_object() || !j.contains("op") || !j.at("op").is_string())
        fail(path, "expected an order expression {\"op\": ...}");
    auto op = j.at("op").get<std::string>();
    auto sub = [&](const char* key) { return order_from_json(field(j, key, path), path + "/" + key); };
    try {
        if (op == "nat")
            return OrderExpr::nat(integer(field(j, "k", path), path + "/k"));
        if (op == "omega")
            return OrderExpr::omega();
        if (op == "rev-omega")
            return OrderExpr::rev_omega();
        if (op == "thread")
            return OrderExpr::thread(thread_from_json(field(j, "L", path), path + "/L"));
        if (op == "sum")
            return OrderExpr::sum(sub("left"), sub("right"));
        if (op == "prod")
            return OrderExpr::prod(sub("minor"), sub("major"));
        if (op == "omega-times")
            return OrderExpr::omega_times(sub("inner"));
        if (op == "one-plus")
            return OrderExpr::one_plus(sub("inner"));
        if (op == "plus-one")
            return OrderExpr::plus_one(sub("inner"));
        if (op == "two-power")
            return OrderExpr::two_power(sub("exp"));
        if (op == "base-power")
            return OrderExpr::base_power(sub("base"), sub("exp"));
        if (op == "z-power")
            return OrderExpr::z_power(integer(field(j, "r", path), path + "/r"));
        if (op == "eps0")
            return OrderExpr::eps0();
        if (op == "kb") {
            OrderExpr::Tree t;
            const auto& a = array(field(j, "tree", path), path + "/tree");
            for (std::size_t i = 0; i < a.size(); ++i)
                t.push_back(integers(a[i], path + "/tree/" + std::to_string(i)));
            // the root may be listed; the order lives on the other nodes
            t.erase(std::remove_if(t.begin(), t.end(), [](const auto& s) { return s.empty(); }), t.end());
            return OrderExpr::kb(std::move(t));
        }
    } catch (const Error& e) {
        if (std::string(e.what()).rfind(path.empty() ? "/" : path, 0) == 0)
            throw;
        fail(path, e.what());
    }
    fail(path + "/op", "unknown order operation \"" + op + "\"");
}

// ---- terms --------------------------------------------------------------------------

/// {"sigma", "support", "carrier"}; the carrier may be omitted when supplied.
inline json to_json(const Term& t, bool with_carrier = true)
{
    json sp = json::array();
    for (const auto& c : t.support().codes())
        sp.push_back(to_json(c));
    json j{{"sigma", to_json(t.sigma())}, {"support", sp}};
    if (with_carrier && t.carrier().expr())
        j["carrier"] = to_json(*t.carrier().expr());
    return j;
}

inline Term term_from_json(const Predilator& D, const json& j, const std::optional<OrderExpr>& carrier,
                           const std::string& path = "")
{
    using namespace detail;
    OrderExpr ce = OrderExpr::omega();
    if (j.is_object() && j.contains("carrier"))
        ce = order_from_json(j.at("carrier"), path + "/carrier");
    else if (carrier)
        ce = *carrier;
    else
        fail(path, "term has no carrier");
    auto sigma = code_from_json(field(j, "sigma", path), path + "/sigma");
    const auto& a = array(field(j, "support", path), path + "/support");
    std::vector<Code> sp;
    for (std::size_t i = 0; i < a.size(); ++i)
        sp.push_back(element_from_json(ce, a[i], path + "/support/" + std::to_string(i)));
    try {
        return make_term(D, sigma, build_order(ce), std::move(sp));
    } catch (const Error& e) {
        fail(path, e.what());
    }
}

// ---- reports --------------------------------------------------------------------------

inline json to_json(const SecurityProfile& p)
{
    return json{{"P", p.P}, {"p", p.p}, {"eps", p.eps}, {"piLeft", p.pi_left}, {"piRight", p.pi_right},
                {"pairsChecked", p.pairs_checked}};
}

inline json to_json(const ValidationReport& r)
{
    json vs = json::array();
    for (const auto& v : r.violations)
        vs.push_back(json{{"law", v.law}, {"witness", v.witness}});
    return json{{"pass", r.pass()}, {"levels", r.level_bound}, {"samples", r.sample_bound}, {"checks", r.checks},
                {"violations", vs}};
}

inline json to_json(const lab::DescentCertificate& c)
{
    json ts = json::array();
    for (const auto& t : c.terms)
        ts.push_back(to_json(t, false));
    json j{{"predilator", c.predilator->name()}, {"terms", ts}};
    const auto* dl = dynamic_cast<const DL*>(c.predilator.get());
    if (dl && dl->thread().kind() != ThreadOrder::Kind::omega && dl->thread().kind() != ThreadOrder::Kind::rev_omega &&
        dl->thread().kind() != ThreadOrder::Kind::zigzag) {
        j["predilator"] = "dl";
        j["L"] = to_json(dl->thread());
    }
    if (c.carrier.expr())
        j["carrier"] = to_json(*c.carrier.expr());
    return j;
}

inline lab::DescentCertificate certificate_from_json(const json& j, const std::string& path = "")
{
    using namespace detail;
    const auto& name = field(j, "predilator", path);
    if (!name.is_string())
        fail(path + "/predilator", "expected a registry name");
    std::optional<ThreadOrder> L;
    if (j.contains("L"))
        L = thread_from_json(j.at("L"), path + "/L");
    lab::DescentCertificate c;
    try {
        c.predilator = make_predilator(name.get<std::string>(), L);
    } catch (const Error& e) {
        fail(path + "/predilator", e.what());
    }
    auto ce = order_from_json(field(j, "carrier", path), path + "/carrier");
    c.carrier = build_order(ce);
    const auto& ts = array(field(j, "terms", path), path + "/terms");
    for (std::size_t i = 0; i < ts.size(); ++i) {
        auto t = term_from_json(*c.predilator, ts[i], ce, path + "/terms/" + std::to_string(i));
        c.terms.push_back(Term(t.sigma(), FiniteOrder(c.carrier, t.support().codes())));
    }
    return c;
}

inline json to_json(const lab::EmbeddingResult& r)
{
    json m = json::array(), s = json::array();
    for (const auto& [j, v] : r.values)
        m.push_back(json::array({j, to_json(v)}));
    for (const auto& [j, i] : r.settled_from)
        s.push_back(json::array({j, i}));
    return json{{"map", m}, {"settledFrom", s}, {"orderPreserving", r.order_preserving},
                {"status", r.conclusive ? "conclusive" : "inconclusive"}};
}

inline json to_json(const lab::ThreadExtraction& x)
{
    auto matrix = [](const std::vector<std::vector<std::optional<std::int64_t>>>& m) {
        json a = json::array();
        for (const auto& row : m) {
            json r = json::array();
            for (const auto& v : row)
                r.push_back(v ? json(*v) : json(nullptr));
            a.push_back(r);
        }
        return a;
    };
    json less = json::array(), wit = json::array(), dis = json::array();
    for (auto [k, l] : x.less)
        less.push_back(json::array({k, l}));
    for (const auto& [kl, n] : x.witnesses)
        wit.push_back(json::array({kl.first, kl.second, n}));
    for (auto [k, l] : x.disagreements)
        dis.push_back(json::array({k, l}));
    json j{{"pMatrix", matrix(x.p)},
           {"epsMatrix", matrix(x.eps)},
           {"iIndices", x.indices},
           {"domain", x.domain},
           {"stabilizedPrefix", less},
           {"witnesses", wit},
           {"disagreements", dis},
           {"status", x.conclusive ? "conclusive" : "inconclusive"}};
    j["repeated"] = x.repeated ? json::array({x.repeated->first, x.repeated->second}) : json(nullptr);
    return j;
}

inline json to_json(const lab::ProbeResult& r)
{
    json j{{"status", r.exhausted() ? "exhausted" : "certificate"},
           {"depth", r.depth},
           {"width", r.width},
           {"poolSize", r.pool_size},
           {"poolTruncated", r.pool_truncated}};
    if (r.certificate)
        j["certificate"] = to_json(*r.certificate);
    return j;
}

inline lab::ScatteredData scattered_from_json(const json& j, const std::string& path = "")
{
    using namespace detail;
    lab::ScatteredData d;
    d.r = count(field(j, "r", path), path + "/r");
    const auto& h = array(field(j, "h", path), path + "/h");
    for (std::size_t i = 0; i < h.size(); ++i)
        d.h.push_back(integers(h[i], path + "/h/" + std::to_string(i)));
    d.N = integers(field(j, "N", path), path + "/N");
    return d;
}

inline json to_json(const lab::ScatteredData& d) { return json{{"r", d.r}, {"h", d.h}, {"N", d.N}}; }

inline lab::LimitTable table_from_json(const json& j, const std::string& path = "")
{
    using namespace detail;
    lab::LimitTable t;
    t.l = count(field(j, "l", path), path + "/l");
    const auto& d = array(field(j, "d", path), path + "/d");
    for (std::size_t k = 0; k < d.size(); ++k)
        t.d.push_back(integers(d[k], path + "/d/" + std::to_string(k)));
    return t;
}

inline json to_json(const lab::LimitTable& t) { return json{{"l", t.l}, {"d", t.d}}; }

inline json to_json(const lab::LimitTree& t)
{
    auto sorted = t.nodes;
    std::sort(sorted.begin(), sorted.end(),
              [&](const auto& a, const auto& b) { return t.kb.less(Code::node(a), Code::node(b)); });
    return json{{"l", t.table.l}, {"K", t.K}, {"branch", t.branch(t.table.l)}, {"nodes", t.nodes},
                {"kbOrder", sorted}};
}

} // namespace dilator::json_io
