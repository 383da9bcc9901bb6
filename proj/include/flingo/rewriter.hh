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

#ifndef FLINGO_REWRITER_HH
#define FLINGO_REWRITER_HH

#include <flingo/ast.hh>

#include <array>
#include <string>

namespace Flingo {

//! `=:` reached a body position.
class AssignInBody : public Error {
public:
    using Error::Error;
};

//! Generator for reserved symbols.
//!
//! Fresh integer variables get their own bounds: the range of the term they
//! stand for, widened to include the neutral element and 0.
class FreshGen {
public:
    explicit FreshGen(Signature sig);

    auto cond() -> Name;
    auto def() -> Name;
    auto member() -> Name;
    //! A fresh variable for a term with the given original variables.
    auto term(Bounds bounds, std::vector<Name> origin) -> Name;
    auto minvar(Bounds bounds) -> Name;

    //! Domain of a user or fresh variable.
    [[nodiscard]] auto domain(Name const &x) const -> Bounds;
    //! Range of a product term over the variable domains.
    [[nodiscard]] auto range(ProductTerm const &s) const -> Bounds;
    //! Original variables a fresh term variable stands for; the variable itself otherwise.
    [[nodiscard]] auto origin(Name const &x) const -> std::vector<Name>;

    [[nodiscard]] auto signature() const -> Signature const & { return sig_; }
    [[nodiscard]] auto fresh_bounds() const -> std::map<Name, Bounds> const & { return bounds_; }

private:
    auto next(std::size_t kind, char const *stem) -> Name;

    Signature sig_;
    std::array<std::size_t, 5> counters_{};
    std::map<Name, Bounds> bounds_;
    std::map<Name, std::vector<Name>> origin_;
};

auto step1_guard_and_strictify(Program const &p, FreshGen &g) -> Program;
auto step2_name_conditions(Program const &p, FreshGen &g) -> Program;
auto step3_eliminate_conditions(Program const &p, FreshGen &g) -> Program;
auto step4_expand_abbreviations(Program const &p, FreshGen &g) -> Program;
auto step5_tag_head_body(Program const &p) -> Program;
auto step6_compile_min(Program const &p, FreshGen &g) -> Program;
auto step7_link_definedness(Program const &p, FreshGen &g) -> Program;
auto step8_rename_df(Program const &p) -> Program;

//! Expands `&in`, `=:` and `&max` in a source program (step 4 on its own).
auto expand_abbreviations(Program const &p, Signature const &sig) -> Program;

//! The propositional atom replacing `&df(x)`.
auto def_name(Name const &x) -> Name;

//! Throws NotClingconFragment unless `p` only has propositional, tagged and plain `&sum` atoms.
void check_clingcon_fragment(Program const &p);

struct PipelineOptions {
    //! Steps (1 to 8) to skip; a test hook for negative controls.
    std::set<int> disabled_steps;
};

struct PipelineTrace {
    std::vector<std::pair<std::string, Program>> snapshots;
};

struct Translation {
    Program program;
    //! Signature of the output, with bounds for fresh variables.
    Signature signature;
    PipelineTrace trace;
};

//! Runs steps 1 to 8.
auto translate(Program const &p, Signature const &sig, PipelineOptions const &opts = {}) -> Translation;

//! Numbered sections with rendered programs.
auto render_trace(PipelineTrace const &trace) -> std::string;

} // namespace Flingo

#endif // FLINGO_REWRITER_HH
