#pragma once

#include "dilator/acceptance.hpp"
#include "dilator/json_io.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace dilator::cli {

using json_io::json;

enum Exit { ok = 0, violation = 1, bad_input = 2 };

namespace detail {

/// A document argument is inline JSON, or the name of a file holding it.
inline json load(const std::string& flag, const std::string& text)
{
    std::string src = text;
    std::error_code ec;
    if (!text.empty() && text.front() != '{' && text.front() != '[' && std::filesystem::is_regular_file(text, ec)) {
        std::ifstream in(text);
        std::stringstream ss;
        ss << in.rdbuf();
        src = ss.str();
    }
    try {
        return json::parse(src);
    } catch (const json::parse_error& e) {
        throw Error(ErrorKind::input, flag + ": unparseable JSON (" + e.what() + ")");
    }
}

inline void emit(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

inline PredilatorPtr predilator(const std::string& name, const std::string& L)
{
    std::optional<ThreadOrder> t;
    if (!L.empty())
        t = json_io::thread_from_json(load("--L", L), "--L");
    try {
        return make_predilator(name, t);
    } catch (const Error& e) {
        throw Error(ErrorKind::input, std::string("--predilator: ") + e.what());
    }
}

inline TraceElement trace_element(const Predilator& D, const json& j, const std::string& path)
{
    auto sigma = json_io::code_from_json(json_io::detail::field(j, "sigma", path), path + "/sigma");
    auto n = json_io::detail::count(json_io::detail::field(j, "level", path), path + "/level");
    if (!D.level(n).valid(sigma) || !D.full_support(n, sigma))
        json_io::detail::fail(path, sigma.str() + " is not a trace element of " + D.name() + " at level " +
                                        std::to_string(n));
    return {sigma, n};
}

inline json trace_json(const TraceElement& t) { return json{{"sigma", json_io::to_json(t.sigma)}, {"level", t.level}}; }

struct Options {
    std::string predilator = "two-power", carrier, L, order, left, right, certificate, gamma, element, data, table;
    std::size_t levels = 4, depth = 16, width = 32;
    bool as_json = false, expect_exhausted = false;
};

} // namespace detail

/// Runs one invocation; `args` excludes the program name.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err)
{
    using namespace detail;
    Options o;
    CLI::App app{"Coded predilators, the comparison calculus and the dichotomy lab", "dilator-cli"};
    app.require_subcommand(1);
    int code = ok;
    std::function<int()> action;

    auto add_predilator = [&](CLI::App* c) {
        c->add_option("--predilator", o.predilator, "registry name: two-power, dl:<L>, dl, E, compose-E:<name>, identity")
            ->capture_default_str();
        c->add_option("--L", o.L, "thread order JSON, for the registry name dl");
    };
    auto add_json = [&](CLI::App* c) { c->add_flag("--json", o.as_json, "print JSON instead of text"); };

    auto* order = app.add_subcommand("order", "linear orders")->require_subcommand(1);
    auto* o_cmp = order->add_subcommand("compare", "compare two element codes");
    o_cmp->add_option("--order", o.order, "OrderExpr JSON")->required();
    o_cmp->add_option("--left", o.left, "element code")->required();
    o_cmp->add_option("--right", o.right, "element code")->required();
    add_json(o_cmp);
    o_cmp->callback([&] {
        action = [&] {
            auto e = json_io::order_from_json(load("--order", o.order), "--order");
            auto a = json_io::element_from_json(e, load("--left", o.left), "--left");
            auto b = json_io::element_from_json(e, load("--right", o.right), "--right");
            auto r = to_string(build_order(e).compare(a, b));
            if (o.as_json)
                emit(out, json{{"result", r}});
            else
                out << r << '\n';
            return ok;
        };
    });
    auto* o_enum = order->add_subcommand("enum", "list the first codes of an order");
    o_enum->add_option("--order", o.order, "OrderExpr JSON")->required();
    o_enum->add_option("--width", o.width, "how many codes")->capture_default_str();
    o_enum->callback([&] {
        action = [&] {
            auto e = json_io::order_from_json(load("--order", o.order), "--order");
            json a = json::array();
            for (const auto& c : build_order(e).enumerate(o.width))
                a.push_back(json_io::to_json(c));
            emit(out, a);
            return ok;
        };
    });

    auto* predil = app.add_subcommand("predil", "predilators")->require_subcommand(1);
    auto* p_val = predil->add_subcommand("validate", "check the predilator laws on bounded levels");
    add_predilator(p_val);
    p_val->add_option("--levels", o.levels)->capture_default_str();
    p_val->add_option("--width", o.width, "codes sampled per level")->capture_default_str();
    add_json(p_val);
    p_val->callback([&] {
        action = [&] {
            auto D = predilator(o.predilator, o.L);
            auto rep = validate(*D, o.levels, o.width);
            if (o.as_json) {
                emit(out, json_io::to_json(rep));
            } else {
                out << (rep.pass() ? "pass" : "FAIL") << ": " << D->name() << ", levels <= " << o.levels << ", "
                    << rep.checks << " checks\n";
                for (const auto& v : rep.violations)
                    out << "  " << v.law << ": " << v.witness << '\n';
            }
            return rep.pass() ? ok : violation;
        };
    });
    auto* p_cmp = predil->add_subcommand("compare", "compare two terms of the extension");
    add_predilator(p_cmp);
    p_cmp->add_option("--carrier", o.carrier, "OrderExpr JSON, unless the terms carry their own");
    p_cmp->add_option("--left", o.left, "term JSON")->required();
    p_cmp->add_option("--right", o.right, "term JSON")->required();
    add_json(p_cmp);
    p_cmp->callback([&] {
        action = [&] {
            auto D = predilator(o.predilator, o.L);
            std::optional<OrderExpr> ce;
            if (!o.carrier.empty())
                ce = json_io::order_from_json(load("--carrier", o.carrier), "--carrier");
            auto s = json_io::term_from_json(*D, load("--left", o.left), ce, "--left");
            auto t = json_io::term_from_json(*D, load("--right", o.right), ce, "--right");
            if (!s.carrier().same_as(t.carrier()))
                throw Error(ErrorKind::input, "--right: carrier differs from the left term's");
            Calculus C(D);
            auto fast = C.compare(s, t);
            auto direct = compare_direct(*D, s, t);
            if (o.as_json)
                emit(out, json{{"result", to_string(fast)}, {"direct", to_string(direct)}});
            else
                out << to_string(fast) << '\n';
            if (fast != direct) {
                err << "calculus and direct comparison disagree: " << to_string(direct) << '\n';
                return violation;
            }
            return ok;
        };
    });
    auto* p_trace = predil->add_subcommand("trace", "full-support codes per level");
    add_predilator(p_trace);
    p_trace->add_option("--levels", o.levels)->capture_default_str();
    p_trace->add_option("--width", o.width, "codes sampled per infinite level")->capture_default_str();
    p_trace->callback([&] {
        action = [&] {
            auto D = predilator(o.predilator, o.L);
            json a = json::array();
            for (std::size_t n = 0; n <= o.levels; ++n) {
                json t = json::array();
                for (const auto& te : trace_at(*D, n, o.width))
                    t.push_back(json_io::to_json(te.sigma));
                a.push_back(json{{"level", n}, {"trace", t}});
            }
            emit(out, a);
            return ok;
        };
    });

    auto* calc = app.add_subcommand("calculus", "the comparison calculus")->require_subcommand(1);
    auto* c_prof = calc->add_subcommand("profile", "security profile of two trace elements");
    add_predilator(c_prof);
    c_prof->add_option("--left", o.left, "trace element {\"sigma\", \"level\"}")->required();
    c_prof->add_option("--right", o.right, "trace element {\"sigma\", \"level\"}")->required();
    c_prof->callback([&] {
        action = [&] {
            auto D = predilator(o.predilator, o.L);
            auto s = trace_element(*D, load("--left", o.left), "--left");
            auto t = trace_element(*D, load("--right", o.right), "--right");
            if (s == t)
                throw Error(ErrorKind::input, "--right: profiles need distinct trace elements");
            emit(out, json_io::to_json(Calculus(D).profile(s, t)));
            return ok;
        };
    });

    auto* lab = app.add_subcommand("lab", "the dichotomy lab")->require_subcommand(1);
    auto* l_desc = lab->add_subcommand("descent", "descending sequence in the extension of D_L over omega*L");
    l_desc->add_option("--L", o.L, "thread order JSON")->required();
    l_desc->add_option("--depth", o.depth, "number of steps")->capture_default_str();
    l_desc->callback([&] {
        action = [&] {
            auto L = json_io::thread_from_json(load("--L", o.L), "--L");
            auto c = lab::dl_descent(L, o.depth);
            auto j = json_io::to_json(c);
            j["embedding"] = json_io::to_json(lab::embedding_from_descent(L, c.carrier, c));
            emit(out, j);
            return ok;
        };
    });
    auto* l_ext = lab->add_subcommand("extract", "partial thread relation from a descent certificate");
    l_ext->add_option("--certificate", o.certificate, "certificate JSON, or the output of lab descent/probe")->required();
    l_ext->callback([&] {
        action = [&] {
            auto j = load("--certificate", o.certificate);
            std::string path = "--certificate";
            if (j.is_object() && j.contains("certificate")) {
                j = json(j.at("certificate"));
                path += "/certificate";
            }
            auto c = json_io::certificate_from_json(j, path);
            if (auto i = lab::first_non_descent(c))
                throw Error(ErrorKind::input, path + "/terms/" + std::to_string(*i + 1) + ": does not descend");
            emit(out, json_io::to_json(lab::extract_thread(c)));
            return ok;
        };
    });
    auto* l_pow = lab->add_subcommand("eta-power", "eta on (1+alpha)^gamma");
    l_pow->add_option("--gamma", o.gamma, "OrderExpr JSON")->required();
    l_pow->add_option("--L", o.L, "thread order JSON")->required();
    l_pow->add_option("--carrier", o.carrier, "alpha, OrderExpr JSON")->required();
    l_pow->add_option("--element", o.element, "element of (1+alpha)^gamma")->required();
    l_pow->callback([&] {
        action = [&] {
            auto g = json_io::order_from_json(load("--gamma", o.gamma), "--gamma");
            auto L = json_io::thread_from_json(load("--L", o.L), "--L");
            auto a = json_io::order_from_json(load("--carrier", o.carrier), "--carrier");
            auto x = json_io::element_from_json(OrderExpr::base_power(a, g), load("--element", o.element), "--element");
            emit(out, json_io::to_json(lab::eta_power(g, L, a, x)));
            return ok;
        };
    });
    auto* l_sc = lab->add_subcommand("eta-scattered", "eta on 2^alpha from scattered data");
    l_sc->add_option("--data", o.data, "{\"r\", \"h\", \"N\"} JSON")->required();
    l_sc->add_option("--L", o.L, "thread order JSON")->required();
    l_sc->add_option("--carrier", o.carrier, "alpha, OrderExpr JSON")->required();
    l_sc->add_option("--element", o.element, "element of 2^alpha")->required();
    l_sc->callback([&] {
        action = [&] {
            auto d = json_io::scattered_from_json(load("--data", o.data), "--data");
            auto L = json_io::thread_from_json(load("--L", o.L), "--L");
            try {
                lab::check_scattered(d, L);
            } catch (const Error& e) {
                throw Error(ErrorKind::input, std::string("--data: ") + e.what());
            }
            auto a = json_io::order_from_json(load("--carrier", o.carrier), "--carrier");
            auto t = json_io::element_from_json(OrderExpr::two_power(a), load("--element", o.element), "--element");
            if (t.kids().size() > d.size())
                throw Error(ErrorKind::input, "--data: covers only " + std::to_string(d.size()) + " points");
            emit(out, json_io::to_json(lab::eta_scattered(d, L, a, t)));
            return ok;
        };
    });
    auto* l_probe = lab->add_subcommand("probe", "bounded search for a descending sequence");
    add_predilator(l_probe);
    l_probe->add_option("--carrier", o.carrier, "OrderExpr JSON")->required();
    l_probe->add_option("--depth", o.depth, "number of steps")->capture_default_str();
    l_probe->add_option("--width", o.width, "carrier codes used for supports")->capture_default_str();
    l_probe->add_flag("--expect-exhausted", o.expect_exhausted, "exit 1 if a certificate is found");
    l_probe->callback([&] {
        action = [&] {
            auto D = predilator(o.predilator, o.L);
            auto a = build_order(json_io::order_from_json(load("--carrier", o.carrier), "--carrier"));
            auto r = lab::descend_probe(D, a, o.depth, o.width);
            emit(out, json_io::to_json(r));
            return o.expect_exhausted && !r.exhausted() ? violation : ok;
        };
    });
    auto* l_tree = lab->add_subcommand("limit-tree", "tree and Kleene-Brouwer order of a limit table");
    l_tree->add_option("--table", o.table, "{\"l\", \"d\"} JSON")->required();
    l_tree->callback([&] {
        action = [&] {
            auto t = json_io::table_from_json(load("--table", o.table), "--table");
            try {
                lab::check_table(t);
            } catch (const Error& e) {
                throw Error(ErrorKind::input, std::string("--table: ") + e.what());
            }
            emit(out, json_io::to_json(lab::limit_tree(t)));
            return ok;
        };
    });

    auto* self = app.add_subcommand("selftest", "run every acceptance check");
    add_json(self);
    self->callback([&] {
        action = [&] {
            auto res = acceptance::run_all();
            bool pass = std::all_of(res.begin(), res.end(), [](const auto& r) { return r.pass; });
            if (o.as_json) {
                json a = json::array();
                for (const auto& r : res)
                    a.push_back(json{{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
                emit(out, a);
            } else {
                for (const auto& r : res)
                    out << acceptance::line(r, false) << '\n';
            }
            return pass ? ok : violation;
        };
    });

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e, out, err);
        return rc == 0 ? ok : bad_input;
    }
    try {
        code = action();
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return e.kind() == ErrorKind::internal ? violation : bad_input;
    } catch (const json::exception& e) {
        err << "error: " << e.what() << '\n';
        return bad_input;
    }
    return code;
}

} // namespace dilator::cli
