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

#ifndef FLINGO_HTC_HH
#define FLINGO_HTC_HH

#include <flingo/ast.hh>

#include <compare>
#include <memory>

namespace Flingo {

//! An element of the extended domain: an integer, the truth mark, or undefined.
class ExtValue {
public:
    enum class Kind { undef, truth, integer };

    constexpr ExtValue() = default;
    static constexpr auto undef() -> ExtValue { return {}; }
    static constexpr auto truth() -> ExtValue { return ExtValue{Kind::truth, 0}; }
    static constexpr auto integer(Int n) -> ExtValue { return ExtValue{Kind::integer, n}; }

    [[nodiscard]] auto kind() const -> Kind { return kind_; }
    [[nodiscard]] auto defined() const -> bool { return kind_ != Kind::undef; }
    [[nodiscard]] auto is_integer() const -> bool { return kind_ == Kind::integer; }
    [[nodiscard]] auto is_truth() const -> bool { return kind_ == Kind::truth; }
    //! The integer value; only meaningful if is_integer().
    [[nodiscard]] auto value() const -> Int { return value_; }

    friend auto operator==(ExtValue const &, ExtValue const &) -> bool = default;
    friend auto operator<=>(ExtValue const &, ExtValue const &) = default;

private:
    constexpr ExtValue(Kind kind, Int value)
    : kind_{kind}
    , value_{value} {}

    Kind kind_{Kind::undef};
    Int value_{0};
};

auto to_string(ExtValue const &v) -> std::string;

//! A valuation; variables without an entry are undefined.
using Valuation = std::map<Name, ExtValue>;

//! The defined pairs of a valuation.
auto defined_pairs(Valuation const &v) -> Valuation;
//! Subset comparison in the set-of-pairs view.
auto pairs_subset(Valuation const &h, Valuation const &t) -> bool;
//! Compare in the set-of-pairs view (explicit undefined entries are ignored).
auto same_pairs(Valuation const &a, Valuation const &b) -> bool;

struct HtInterpretation {
    Valuation h;
    Valuation t;
    friend auto operator==(HtInterpretation const &, HtInterpretation const &) -> bool = default;
    friend auto operator<=>(HtInterpretation const &, HtInterpretation const &) = default;
};

// {{{1 formulas

struct HtcNode;
//! Formulas are immutable and shared.
using HtcFormula = std::shared_ptr<HtcNode const>;

//! `(s1 | s2 : cond)`; an empty branch stands for an undefined term.
struct HtcConditional {
    std::optional<ProductTerm> then_term;
    std::optional<ProductTerm> else_term;
    HtcFormula cond;
};

using HtcTerm = std::variant<ProductTerm, HtcConditional>;

struct HtcAtom {
    enum class Kind { prop, sum, sus, min, df, int_ };

    Kind kind{Kind::prop};
    //! The propositional atom for `prop`, the variable for `df` and `int_`.
    Name name;
    std::vector<HtcTerm> elements;
    Relation relation{Relation::eq};
    ProductTerm rhs;
};

struct HtcNode {
    enum class Kind { falsity, atom, conj, disj, impl };

    Kind kind{Kind::falsity};
    HtcAtom atom;
    HtcFormula lhs;
    HtcFormula rhs;
};

namespace Htc {

auto falsity() -> HtcFormula;
//! `⊥ → ⊥`
auto top() -> HtcFormula;
auto atom(HtcAtom a) -> HtcFormula;
auto conj(HtcFormula a, HtcFormula b) -> HtcFormula;
auto disj(HtcFormula a, HtcFormula b) -> HtcFormula;
auto impl(HtcFormula a, HtcFormula b) -> HtcFormula;
//! `φ → ⊥`
auto neg(HtcFormula a) -> HtcFormula;
//! Left-nested conjunction; top() if empty.
auto conj_all(std::vector<HtcFormula> const &fs) -> HtcFormula;

auto prop(Name p) -> HtcFormula;
auto df(Name x) -> HtcFormula;
auto int_(Name x) -> HtcFormula;
auto linear(HtcAtom::Kind kind, std::vector<HtcTerm> elements, Relation rel, ProductTerm rhs) -> HtcFormula;

} // namespace Htc

auto to_string(HtcAtom const &a) -> std::string;
auto to_string(HtcFormula const &f) -> std::string;

struct HtcTheory {
    std::vector<HtcFormula> formulas;
    Signature signature;
};

// {{{1 errors

//! The statespace of a theory exceeds the configured budget.
class BudgetExceeded : public Error {
public:
    explicit BudgetExceeded(double estimate, std::string const &what = "statespace estimate");
    [[nodiscard]] auto estimate() const -> double { return estimate_; }

private:
    double estimate_;
};

//! `&in`, `=:` or `&max` reached a translation that expects them to be expanded.
class UnexpandedAbbreviation : public Error {
public:
    using Error::Error;
};

//! A construct outside of the clingcon fragment reached the clingcon translation.
class NotClingconFragment : public Error {
public:
    using Error::Error;
};

// {{{1 semantics

//! Evaluates a conditional term in ⟨h,t⟩; std::nullopt denotes undefined.
auto eval_cterm(Valuation const &h, Valuation const &t, HtcConditional const &ct, Signature const &sig)
    -> std::optional<ProductTerm>;

//! Value of a (possibly undefined) product term.
auto term_value(Valuation const &v, std::optional<ProductTerm> const &s) -> ExtValue;

//! Value of a term or the neutral element of `fun` if it is undefined.
auto term_value_defaulted(Valuation const &v, std::optional<ProductTerm> const &s, Op fun, Signature const &sig)
    -> Int;

//! Membership in the denotation of a basic atom; throws on conditional terms.
auto atom_holds(Valuation const &v, HtcAtom const &a, Signature const &sig) -> bool;

auto satisfies(Valuation const &h, Valuation const &t, HtcFormula const &f, Signature const &sig) -> bool;
auto satisfies(Valuation const &h, Valuation const &t, HtcTheory const &theory) -> bool;

// {{{1 translations

//! Flingo translation; throws UnexpandedAbbreviation on `&in`, `=:`, `&max` and tagged atoms.
//!
//! The signature is extended by the variables of the program.
auto mu_translate(Program const &p, Signature const &sig) -> HtcTheory;

//! Flingo translation of a single atom.
auto mu_atom(Atom const &a, Signature const &sig) -> HtcFormula;

//! Clingcon translation; `&sum` atoms get the strict denotation and tagged
//! atoms are propositional atoms named by a SurrogateTable of `p`.
auto tau_translate(Program const &p, Signature const &sig) -> HtcTheory;

// {{{1 model enumeration

struct EngineOptions {
    enum class Engine { automatic, exhaustive, casp };

    Engine engine{Engine::automatic};
    //! Upper bound for the exhaustive statespace estimate.
    double budget{1e7};
    //! Upper bound for search nodes of the clingcon engine.
    std::uint64_t node_limit{20'000'000};
    //! Upper bound for the number of models collected by the clingcon engine.
    std::uint64_t model_limit{100'000};
};

//! Product over integer variables of (values + 1) times 2^|props|.
auto statespace_estimate(HtcTheory const &theory) -> double;

//! Whether every integer variable has an `&int` fact and all other formulas
//! are rules over basic propositional, `&df`, `&int` and sum atoms.
auto is_cl_shaped(HtcTheory const &theory) -> bool;

//! All stable models in canonical order, total over the signature.
auto stable_models(HtcTheory const &theory, EngineOptions const &opts = {}) -> std::vector<Valuation>;

//! All ht-models in canonical order.
auto ht_models(HtcTheory const &theory, EngineOptions const &opts = {}) -> std::vector<HtInterpretation>;

} // namespace Flingo

#endif // FLINGO_HTC_HH
