#include "dilator/json_io.hpp"

#include <gtest/gtest.h>

#include <fstream>

using namespace dilator;
using namespace dilator::json_io;

namespace {

std::string input_error(const std::function<void()>& f)
{
    try {
        f();
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::input)
            return e.what();
        return std::string("wrong kind: ") + e.what();
    }
    return "no error";
}

json parse_file(const std::string& name)
{
    std::ifstream in(std::string(SAMPLES_DIR) + "/" + name);
    return json::parse(in);
}

} // namespace

TEST(Json, CodesRoundTrip)
{
    std::vector<Code> cs{Code::nat(7),
                         Code::ints({0, 2, 1}),
                         Code::node({1, 0}),
                         Code::pair(Code::top(), Code::nat(3)),
                         Code::pair(Code::in(Code::nat(2)), Code::zero()),
                         Code::exps({Code::nat(4), Code::nat(1)}),
                         Code::cnf({Code::cnf({}), Code::cnf({})}),
                         Code::terms({Code::pair(Code::nat(2), Code::nat(5))}),
                         Code::left(Code::right(Code::nat(0))),
                         Code::term(Code::nat(3), {Code::nat(2), Code::nat(5)})};
    for (const auto& c : cs)
        EXPECT_EQ(code_from_json(json::parse(to_json(c).dump())), c) << c.str();
}

TEST(Json, OrderExpressionsRoundTrip)
{
    std::vector<OrderExpr> es{OrderExpr::nat(3),
                              OrderExpr::omega(),
                              OrderExpr::rev_omega(),
                              OrderExpr::thread(ThreadOrder::perturb(ThreadOrder::zigzag(), {{1, 4}})),
                              OrderExpr::sum(OrderExpr::nat(2), OrderExpr::omega()),
                              OrderExpr::prod(OrderExpr::omega(), OrderExpr::nat(2)),
                              OrderExpr::omega_times(OrderExpr::rev_omega()),
                              OrderExpr::one_plus(OrderExpr::omega()),
                              OrderExpr::plus_one(OrderExpr::nat(1)),
                              OrderExpr::two_power(OrderExpr::eps0()),
                              OrderExpr::base_power(OrderExpr::omega(), OrderExpr::nat(3)),
                              OrderExpr::z_power(2),
                              OrderExpr::kb({{0}, {0, 1}, {1}})};
    for (const auto& e : es)
        EXPECT_EQ(to_json(order_from_json(to_json(e))), to_json(e)) << e.str();
}

TEST(Json, ThreadOrders)
{
    EXPECT_EQ(thread_from_json(json::parse(R"({"builtin":"zigzag"})")).name(), ThreadOrder::zigzag().name());
    auto p = thread_from_json(json::parse(R"({"perturb":{"base":{"builtin":"omega"},"swaps":[[0,1]]}})"));
    EXPECT_TRUE(p.less(1, 0));
    auto t = thread_from_json(json::parse(R"({"table":[2,0,1]})"));
    EXPECT_TRUE(t.less(1, 2) && t.less(2, 0));
    EXPECT_EQ(to_json(thread_from_json(to_json(p))), to_json(p));
}

TEST(Json, ExponentsMayBeWrittenAscending)
{
    auto e = OrderExpr::two_power(OrderExpr::omega());
    auto a = element_from_json(e, json::parse(R"({"exps":[0,3,5]})"));
    auto d = element_from_json(e, json::parse(R"({"exps":[5,3,0]})"));
    EXPECT_EQ(a, d);
    auto b = OrderExpr::base_power(OrderExpr::omega(), OrderExpr::nat(3));
    EXPECT_EQ(element_from_json(b, json::parse(R"({"terms":[[0,4],[2,1]]})")),
              element_from_json(b, json::parse(R"({"terms":[[2,1],[0,4]]})")));
    EXPECT_NE(input_error([&] { element_from_json(e, json::parse(R"({"exps":[3,0,5]})"), "/x"); }).find("/x"),
              std::string::npos);
}

TEST(Json, TermsAndCertificates)
{
    auto D = make_predilator("two-power");
    auto t = term_from_json(*D, json::parse(R"({"sigma":3,"support":[2,5],"carrier":{"op":"omega"}})"), std::nullopt);
    EXPECT_EQ(t.arity(), 2u);
    EXPECT_EQ(term_from_json(*D, to_json(t), std::nullopt), t);

    auto c = lab::dl_descent(ThreadOrder::perturb(ThreadOrder::zigzag(), {{1, 4}}), 6);
    auto j = to_json(c);
    EXPECT_EQ(j.at("predilator"), "dl");
    auto back = certificate_from_json(json::parse(j.dump()));
    ASSERT_EQ(back.terms.size(), c.terms.size());
    for (std::size_t i = 0; i < c.terms.size(); ++i)
        EXPECT_EQ(back.terms[i].code(), c.terms[i].code());
    EXPECT_FALSE(lab::first_non_descent(back));
}

TEST(Json, MalformedInputNamesThePath)
{
    auto D = make_predilator("two-power");
    auto msg = input_error([&] { order_from_json(json::parse(R"({"op":"sum","left":{"op":"omega"},"right":{"op":"nat"}})")); });
    EXPECT_EQ(msg.rfind("/right", 0), 0u) << msg;
    msg = input_error([&] { order_from_json(json::parse(R"({"op":"hydra"})")); });
    EXPECT_EQ(msg.rfind("/op", 0), 0u) << msg;
    msg = input_error([&] { code_from_json(json::parse(R"({"bogus":1})"), "/left"); });
    EXPECT_EQ(msg.rfind("/left", 0), 0u) << msg;
    msg = input_error([&] { term_from_json(*D, json::parse(R"({"sigma":3,"support":[2,"x"]})"), OrderExpr::omega(), "/left"); });
    EXPECT_EQ(msg.rfind("/left/support/1", 0), 0u) << msg;
    msg = input_error([&] { term_from_json(*D, json::parse(R"({"sigma":2,"support":[2,5]})"), OrderExpr::omega()); });
    EXPECT_NE(msg.find("full support"), std::string::npos) << msg;
    msg = input_error([&] { certificate_from_json(json::parse(R"({"predilator":"nope","carrier":{"op":"omega"},"terms":[]})")); });
    EXPECT_EQ(msg.rfind("/predilator", 0), 0u) << msg;
    msg = input_error([&] { table_from_json(json::parse(R"({"l":2,"d":[[0,0],[0,"a"]]})")); });
    EXPECT_EQ(msg.rfind("/d/1/1", 0), 0u) << msg;
}

TEST(Json, Samples)
{
    auto step = table_from_json(parse_file("limit_table_step.json"));
    EXPECT_EQ(step.l, 5u);
    EXPECT_EQ(lab::limit_tree(step).nodes.size(), 5u);
    auto zero = table_from_json(parse_file("limit_table_zero.json"));
    EXPECT_EQ(lab::limit_tree(zero).K, std::vector<std::int64_t>(zero.l, 0));
    auto d = scattered_from_json(parse_file("scattered_omega.json"));
    EXPECT_NO_THROW(lab::check_scattered(d, ThreadOrder::omega()));
}
