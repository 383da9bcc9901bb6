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

#ifndef FLINGO_PARSER_HH
#define FLINGO_PARSER_HH

#include <flingo/ast.hh>

#include <string_view>

namespace Flingo {

struct SourceSpan {
    std::size_t start{0};
    std::size_t end{0};
    std::size_t line{1};
    std::size_t column{1};
};

class ParseError : public Error {
public:
    ParseError(SourceSpan span, std::string message, std::vector<std::string> expected);

    [[nodiscard]] auto span() const -> SourceSpan const & { return span_; }
    //! The message without location or expected set.
    [[nodiscard]] auto message() const -> std::string const & { return message_; }
    [[nodiscard]] auto expected() const -> std::vector<std::string> const & { return expected_; }

private:
    SourceSpan span_;
    std::string message_;
    std::vector<std::string> expected_;
};

struct ParseOptions {
    //! Accept `__flingo_` names and tagged atoms `&sus(head){...}`, as produced by the rewriter.
    bool allow_reserved{false};
};

//! Parses a ground flingo program; throws ParseError.
auto parse_program(std::string_view text, ParseOptions const &opts = {}) -> Program;

//! Renders one rule per line; parse_program(render_program(p)) == p.
auto render_program(Program const &p) -> std::string;

} // namespace Flingo

#endif // FLINGO_PARSER_HH
