// {{{ MIT License
//
// Copyright 2026 The flingo-tools authors
//
// Permission is hereby granted, free of charge, to any person obtaining a copy
// of this software and associated documentation files (the "Software"), to
// deal in the Software without restriction, including without limitation the
// rights to use, copy, modify, merge, publish, distribute, sublicense, and/or
// sell copies of the Software, and to permit persons to whom the Software is
// furnished to do so, subject to the following conditions:
//
// The above copyright notice and this permission notice shall be included in
// all copies or substantial portions of the Software.
//
// THE SOFTWARE IS PROVIDED "AS IS", WITHOUT WARRANTY OF ANY KIND, EXPRESS OR
// IMPLIED, INCLUDING BUT NOT LIMITED TO THE WARRANTIES OF MERCHANTABILITY,
// FITNESS FOR A PARTICULAR PURPOSE AND NONINFRINGEMENT. IN NO EVENT SHALL THE
// AUTHORS OR COPYRIGHT HOLDERS BE LIABLE FOR ANY CLAIM, DAMAGES OR OTHER
// LIABILITY, WHETHER IN AN ACTION OF CONTRACT, TORT OR OTHERWISE, ARISING
// FROM, OUT OF OR IN CONNECTION WITH THE SOFTWARE OR THE USE OR OTHER DEALINGS
// IN THE SOFTWARE.
//
// }}}

#include <flingo/parser.hh>

#include <cctype>
#include <limits>

namespace Flingo {

namespace {

auto format_error(SourceSpan const &span, std::string const &message, std::vector<std::string> const &expected)
    -> std::string {
    std::string out = std::to_string(span.line) + ":" + std::to_string(span.column) + ": error: " + message;
    if (!expected.empty()) {
        out += " (expected ";
        char const *sep = "";
        for (auto const &e : expected) {
            out += sep;
            out += e;
            sep = ", ";
        }
        out += ")";
    }
    return out;
}

auto is_ident_char(char c) -> bool {
    return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_' || c == '\'';
}

auto is_lower(char c) -> bool { return std::islower(static_cast<unsigned char>(c)) != 0; }
auto is_upper(char c) -> bool { return std::isupper(static_cast<unsigned char>(c)) != 0; }
auto is_digit(char c) -> bool { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

//! Recursive descent directly over the character stream.
//!
//! Tokenization is context dependent (`&df(x)` vs. `p(x)`, `1..3` vs. `1.`), so
//! there is no separate lexer.
class Parser {
public:
    Parser(std::string_view text, ParseOptions const &opts)
    : text_{text}
    , opts_{opts} {}

    auto parse() -> Program {
        Program prg;
        skip();
        while (!eof()) {
            prg.rules.emplace_back(parse_rule());
            skip();
        }
        return prg;
    }

private:
    // {{{2 scanning

    [[nodiscard]] auto eof() const -> bool { return pos_ >= text_.size(); }
    [[nodiscard]] auto peek(std::size_t off = 0) const -> char {
        return pos_ + off < text_.size() ? text_[pos_ + off] : '\0';
    }

    void skip() {
        while (!eof()) {
            char c = peek();
            if (c == '%') {
                while (!eof() && peek() != '\n') {
                    ++pos_;
                }
            }
            else if (std::isspace(static_cast<unsigned char>(c)) != 0) {
                ++pos_;
            }
            else {
                break;
            }
        }
    }

    [[nodiscard]] auto span_at(std::size_t start, std::size_t end) const -> SourceSpan {
        SourceSpan span{start, std::max(start, std::min(end, text_.size())), 1, 1};
        for (std::size_t i = 0; i < start && i < text_.size(); ++i) {
            if (text_[i] == '\n') {
                ++span.line;
                span.column = 1;
            }
            else {
                ++span.column;
            }
        }
        return span;
    }

    [[noreturn]] void fail(std::string const &message, std::vector<std::string> expected = {}) const {
        fail_at(pos_, message, std::move(expected));
    }

    [[noreturn]] void fail_at(std::size_t start, std::string const &message,
                              std::vector<std::string> expected = {}) const {
        auto end = start;
        while (end < text_.size() && !std::isspace(static_cast<unsigned char>(text_[end])) && end - start < 16) {
            ++end;
        }
        if (end == start && start < text_.size()) {
            ++end;
        }
        throw ParseError(span_at(start, end), message, std::move(expected));
    }

    [[nodiscard]] auto describe() const -> std::string {
        if (eof()) {
            return "end of input";
        }
        return std::string{"'"} + peek() + "'";
    }

    //! Consumes `tok` if the input continues with it.
    auto accept(std::string_view tok) -> bool {
        skip();
        if (text_.substr(pos_, tok.size()) == tok) {
            pos_ += tok.size();
            return true;
        }
        return false;
    }

    void expect(std::string_view tok, std::vector<std::string> expected = {}) {
        if (!accept(tok)) {
            if (expected.empty()) {
                expected.emplace_back(std::string{"'"} + std::string{tok} + "'");
            }
            fail("unexpected " + describe(), std::move(expected));
        }
    }

    [[nodiscard]] auto at(std::string_view tok) -> bool {
        skip();
        return text_.substr(pos_, tok.size()) == tok;
    }

    //! Whether a keyword like `not` starts here (and is not the prefix of a longer name).
    [[nodiscard]] auto at_keyword(std::string_view kw) -> bool {
        skip();
        return text_.substr(pos_, kw.size()) == kw && !is_ident_char(peek(kw.size()));
    }

    auto word() -> std::string {
        auto start = pos_;
        while (!eof() && is_ident_char(peek())) {
            ++pos_;
        }
        return std::string{text_.substr(start, pos_ - start)};
    }

    // {{{2 names and numbers

    auto at_identifier() -> bool {
        skip();
        std::size_t i = 0;
        while (peek(i) == '_') {
            ++i;
        }
        return is_lower(peek(i)) || (i > 0 && is_upper(peek(i)));
    }

    auto parse_integer() -> Int {
        skip();
        auto start = pos_;
        bool neg = false;
        if (peek() == '-') {
            neg = true;
            ++pos_;
            skip();
        }
        if (!is_digit(peek())) {
            fail("unexpected " + describe(), {"integer"});
        }
        __int128 value = 0;
        while (is_digit(peek())) {
            value = value * 10 + (peek() - '0');
            if (value > static_cast<__int128>(std::numeric_limits<Int>::max()) + 1) {
                fail_at(start, "integer literal out of range");
            }
            ++pos_;
        }
        if (neg) {
            value = -value;
        }
        if (value > std::numeric_limits<Int>::max() || value < std::numeric_limits<Int>::min()) {
            fail_at(start, "integer literal out of range");
        }
        return static_cast<Int>(value);
    }

    //! `name` or `name(arg,...)` with ground arguments; returns the canonical spelling.
    auto parse_identifier() -> Name {
        skip();
        auto start = pos_;
        if (is_upper(peek())) {
            fail("first-order variables unsupported: grounding is out of scope", {"ground identifier"});
        }
        if (!at_identifier()) {
            fail("unexpected " + describe(), {"identifier"});
        }
        std::size_t i = 0;
        while (peek(i) == '_') {
            ++i;
        }
        if (is_upper(peek(i))) {
            fail("first-order variables unsupported: grounding is out of scope", {"ground identifier"});
        }
        Name name = word();
        if (peek() == '(') {
            ++pos_;
            name += '(';
            char const *sep = "";
            do {
                skip();
                name += sep;
                sep = ",";
                if (is_digit(peek()) || peek() == '-') {
                    name += std::to_string(parse_integer());
                }
                else {
                    name += parse_identifier();
                }
            } while (accept(","));
            expect(")", {"','", "')'"});
            name += ')';
        }
        if (!opts_.allow_reserved && name.rfind(RESERVED_PREFIX, 0) == 0) {
            fail_at(start, "reserved name: " + name, {"identifier without prefix __flingo_"});
        }
        return name;
    }

    auto parse_product() -> ProductTerm {
        skip();
        if (peek() == '-') {
            ++pos_;
            return negate_product(parse_product());
        }
        if (is_digit(peek())) {
            auto n = parse_integer();
            if (accept("*")) {
                skip();
                return ProductTerm::var(parse_identifier(), n);
            }
            return ProductTerm::constant(n);
        }
        if (at_identifier() || is_upper(peek())) {
            return ProductTerm::var(parse_identifier());
        }
        fail("unexpected " + describe(), {"integer", "integer variable", "'-'"});
    }

    // {{{2 atoms and literals

    static auto parse_relation_token(std::string_view tok) -> std::optional<Relation> {
        if (tok == "<=") { return Relation::le; }
        if (tok == ">=") { return Relation::ge; }
        if (tok == "!=") { return Relation::ne; }
        if (tok == "<") { return Relation::lt; }
        if (tok == ">") { return Relation::gt; }
        if (tok == "=") { return Relation::eq; }
        return std::nullopt;
    }

    auto parse_relation() -> std::optional<Relation> {
        for (std::string_view tok : {"<=", ">=", "!=", "<", ">", "="}) {
            if (at(tok)) {
                pos_ += tok.size();
                return parse_relation_token(tok);
            }
        }
        return std::nullopt;
    }

    //! Literals inside a condition: propositional atoms and, after guarding, `&df`.
    auto parse_condition_literal() -> Literal {
        auto neg = parse_negation();
        skip();
        auto start = pos_;
        if (at("&")) {
            auto atom = parse_constraint_atom(false);
            if (atom.op != Op::df) {
                fail_at(start, "only propositional literals are allowed in conditions");
            }
            return {std::move(atom), neg};
        }
        return {PropAtom{parse_identifier()}, neg};
    }

    auto parse_term() -> FlingoTerm {
        auto head = parse_product();
        if (at(":") && !at(":-")) {
            ++pos_;
            std::vector<Literal> condition;
            if (!at(";") && !at("}")) {
                do {
                    condition.emplace_back(parse_condition_literal());
                } while (accept(","));
            }
            return ConditionalTerm{std::move(head), std::move(condition)};
        }
        return head;
    }

    auto parse_op() -> Op {
        auto start = pos_;
        auto w = word();
        if (w == "sum") { return Op::sum; }
        if (w == "sus") { return Op::sus; }
        if (w == "min") { return Op::min; }
        if (w == "max") { return Op::max; }
        if (w == "df") { return Op::df; }
        if (w == "in") { return Op::in; }
        fail_at(start, "unknown constraint operation '" + w + "'", {"sum", "sus", "min", "max", "df", "in"});
    }

    auto parse_constraint_atom(bool in_head) -> ConstraintAtom {
        skip();
        auto start = pos_;
        expect("&");
        ConstraintAtom atom;
        atom.op = parse_op();
        if (atom.op == Op::df) {
            char close = accept("(") ? ')' : (expect("{", {"'{'", "'('"}), '}');
            skip();
            auto var_start = pos_;
            auto s = parse_product();
            if (!s.variable || s.coefficient != 1) {
                fail_at(var_start, "&df expects a single integer variable", {"integer variable"});
            }
            expect(std::string_view{&close, 1});
            atom.elements.emplace_back(std::move(s));
            return atom;
        }
        if (atom.op != Op::in && at("(")) {
            auto tag_start = pos_;
            ++pos_;
            skip();
            auto w = word();
            if (w == "head") {
                atom.tag = Tag::head;
            }
            else if (w == "body") {
                atom.tag = Tag::body;
            }
            else {
                fail_at(tag_start, "unknown tag '" + w + "'", {"head", "body"});
            }
            if (!opts_.allow_reserved) {
                fail_at(tag_start, "tagged constraint atoms are internal to the rewriter");
            }
            expect(")");
        }
        expect("{");
        if (atom.op == Op::in) {
            atom.elements.emplace_back(parse_product());
            expect("..", {"'..'"});
            atom.elements.emplace_back(parse_product());
            expect("}");
            if (!in_head) {
                fail_at(start, "&in is only allowed in rule heads");
            }
            expect("=:", {"'=:'"});
            atom.assign = true;
            atom.rhs = parse_product();
            return atom;
        }
        if (!at("}")) {
            do {
                atom.elements.emplace_back(parse_term());
            } while (accept(";"));
        }
        expect("}", {"';'", "'}'"});
        skip();
        auto rel_start = pos_;
        if (accept("=:")) {
            if (!in_head) {
                fail_at(rel_start, "assignment '=:' is only allowed in rule heads", {"relation"});
            }
            atom.assign = true;
        }
        else if (auto rel = parse_relation()) {
            atom.relation = rel;
        }
        else {
            fail("unexpected " + describe(), {"<=", "=", "!=", "<", ">", ">=", "=:"});
        }
        atom.rhs = parse_product();
        return atom;
    }

    auto parse_negation() -> Negation {
        if (at_keyword("not")) {
            pos_ += 3;
            if (at_keyword("not")) {
                pos_ += 3;
                return Negation::dbl;
            }
            return Negation::single;
        }
        return Negation::none;
    }

    auto parse_atom(bool in_head) -> Atom {
        skip();
        if (at("&")) {
            return parse_constraint_atom(in_head);
        }
        if (at_identifier() || is_upper(peek())) {
            return PropAtom{parse_identifier()};
        }
        fail("unexpected " + describe(), {"atom"});
    }

    auto parse_literal() -> Literal {
        auto neg = parse_negation();
        return {parse_atom(false), neg};
    }

    // {{{2 rules

    auto parse_rule() -> Rule {
        Rule rule;
        skip();
        if (at(":-")) {
            rule.kind = HeadKind::falsity;
        }
        else if (accept("{")) {
            rule.kind = HeadKind::choice;
            rule.head = PropAtom{parse_identifier()};
            expect("}");
        }
        else {
            if (at_keyword("not")) {
                fail("negated literals are not allowed in rule heads", {"atom"});
            }
            rule.kind = HeadKind::atom;
            rule.head = parse_atom(true);
        }
        if (accept(":-")) {
            if (!at(".") || at("..")) {
                do {
                    rule.body.emplace_back(parse_literal());
                } while (accept(","));
            }
        }
        else if (rule.kind == HeadKind::falsity) {
            fail("unexpected " + describe(), {"':-'"});
        }
        expect(".", {"','", "'.'"});
        return rule;
    }

    std::string_view text_;
    ParseOptions opts_;
    std::size_t pos_{0};
};

} // namespace

ParseError::ParseError(SourceSpan span, std::string message, std::vector<std::string> expected)
: Error(format_error(span, message, expected))
, span_{span}
, message_{std::move(message)}
, expected_{std::move(expected)} {}

auto parse_program(std::string_view text, ParseOptions const &opts) -> Program {
    return Parser{text, opts}.parse();
}

auto render_program(Program const &p) -> std::string {
    std::string out;
    for (auto const &r : p.rules) {
        out += to_string(r);
        out += '\n';
    }
    return out;
}

} // namespace Flingo
