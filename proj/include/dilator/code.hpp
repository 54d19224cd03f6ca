#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <sstream>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

namespace dilator {

/// Failure categories surfaced to callers. The CLI maps `input` to exit 2.
enum class ErrorKind {
    input,        // malformed document, expression or code
    invalid_term, // sigma outside its level, support not full, foreign carrier
    precondition, // operation called outside its contract
    internal      // a property the construction guarantees did not hold
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

enum class CodeKind : std::uint8_t {
    nat,   // naturals of nat/omega/rev-omega/thread orders, binary masks
    ints,  // integer tuples: z-power elements, D_L sequences
    pair,  // {hi, lo} of products and omega-times
    exps,  // two-power exponent list, strictly descending
    terms, // base-power list of (x, y) pairs, x strictly descending
    cnf,   // eps0 Cantor normal form, exponents weakly descending
    node,  // kb tree node
    top,   // adjoined maximum of plus-one
    zero,  // adjoined minimum of one-plus
    in,    // embedded element of one-plus / plus-one
    left,  // sum, first summand
    right, // sum, second summand
    term   // (sigma, support) element of an extension order
};

/// Structured element code. Every order element has exactly one code, so
/// equality of elements is structural equality of codes. The defaulted
/// three-way comparison is a structural total order used for containers;
/// it is unrelated to the order an element lives in.
class Code {
public:
    Code() = default;

    static Code nat(std::int64_t n) { return Code(CodeKind::nat, n, {}, {}); }
    static Code ints(std::vector<std::int64_t> v) { return Code(CodeKind::ints, 0, std::move(v), {}); }
    static Code node(std::vector<std::int64_t> v) { return Code(CodeKind::node, 0, std::move(v), {}); }
    static Code pair(Code hi, Code lo) { return Code(CodeKind::pair, 0, {}, {std::move(hi), std::move(lo)}); }
    static Code exps(std::vector<Code> e) { return Code(CodeKind::exps, 0, {}, std::move(e)); }
    static Code cnf(std::vector<Code> e) { return Code(CodeKind::cnf, 0, {}, std::move(e)); }
    /// Each entry must be a pair code (x, y).
    static Code terms(std::vector<Code> pairs) { return Code(CodeKind::terms, 0, {}, std::move(pairs)); }
    static Code top() { return Code(CodeKind::top, 0, {}, {}); }
    static Code zero() { return Code(CodeKind::zero, 0, {}, {}); }
    static Code in(Code x) { return Code(CodeKind::in, 0, {}, {std::move(x)}); }
    static Code left(Code x) { return Code(CodeKind::left, 0, {}, {std::move(x)}); }
    static Code right(Code x) { return Code(CodeKind::right, 0, {}, {std::move(x)}); }
    static Code term(Code sigma, std::vector<Code> support)
    {
        std::vector<Code> kids;
        kids.reserve(support.size() + 1);
        kids.push_back(std::move(sigma));
        for (auto& s : support)
            kids.push_back(std::move(s));
        return Code(CodeKind::term, 0, {}, std::move(kids));
    }

    CodeKind kind() const noexcept { return kind_; }
    bool is(CodeKind k) const noexcept { return kind_ == k; }
    std::int64_t value() const noexcept { return value_; }
    const std::vector<std::int64_t>& ints() const noexcept { return ints_; }
    const std::vector<Code>& kids() const noexcept { return kids_; }

    const Code& hi() const { return kid(0); }
    const Code& lo() const { return kid(1); }
    const Code& inner() const { return kid(0); }
    const Code& sigma() const { return kid(0); }
    std::vector<Code> support() const
    {
        if (kids_.empty())
            return {};
        return {kids_.begin() + 1, kids_.end()};
    }

    friend bool operator==(const Code&, const Code&) = default;
    friend std::strong_ordering operator<=>(const Code&, const Code&) = default;

    std::string str() const
    {
        std::ostringstream os;
        write(os);
        return os.str();
    }

private:
    Code(CodeKind k, std::int64_t v, std::vector<std::int64_t> i, std::vector<Code> c)
        : kind_(k), value_(v), ints_(std::move(i)), kids_(std::move(c))
    {
    }

    const Code& kid(std::size_t i) const
    {
        if (i >= kids_.size())
            throw Error(ErrorKind::precondition, "code " + str() + " has no component " + std::to_string(i));
        return kids_[i];
    }

    void write(std::ostream& os) const
    {
        auto list = [&os](const auto& xs, const char* open, const char* close) {
            os << open;
            for (std::size_t i = 0; i < xs.size(); ++i) {
                if (i)
                    os << ',';
                if constexpr (std::is_same_v<std::decay_t<decltype(xs[i])>, Code>)
                    xs[i].write(os);
                else
                    os << xs[i];
            }
            os << close;
        };
        switch (kind_) {
        case CodeKind::nat: os << value_; break;
        case CodeKind::ints: list(ints_, "[", "]"); break;
        case CodeKind::node: list(ints_, "node[", "]"); break;
        case CodeKind::pair:
            os << '(';
            kids_[0].write(os);
            os << ';';
            kids_[1].write(os);
            os << ')';
            break;
        case CodeKind::exps: list(kids_, "2^{", "}"); break;
        case CodeKind::cnf: list(kids_, "w^{", "}"); break;
        case CodeKind::terms: list(kids_, "T{", "}"); break;
        case CodeKind::top: os << "top"; break;
        case CodeKind::zero: os << "zero"; break;
        case CodeKind::in: list(kids_, "in(", ")"); break;
        case CodeKind::left: list(kids_, "L(", ")"); break;
        case CodeKind::right: list(kids_, "R(", ")"); break;
        case CodeKind::term: list(kids_, "term(", ")"); break;
        }
    }

    CodeKind kind_ = CodeKind::nat;
    std::int64_t value_ = 0;
    std::vector<std::int64_t> ints_;
    std::vector<Code> kids_;
};

inline std::string to_string(std::strong_ordering o)
{
    if (o < 0)
        return "Less";
    if (o > 0)
        return "Greater";
    return "Equal";
}

} // namespace dilator
