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

#ifndef FLINGO_AST_HH
#define FLINGO_AST_HH

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace Flingo {

using Int = std::int64_t;
//! Names of propositional atoms and integer variables, e.g. `tariff(steel,eu)`.
using Name = std::string;

//! Prefix reserved for symbols introduced by the rewriter.
inline constexpr char const *RESERVED_PREFIX = "__flingo_";

//! Base class of all errors raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

//! A name is used both as a propositional atom and as an integer variable.
class KindConflict : public Error {
public:
    explicit KindConflict(Name name)
    : Error("name used both as propositional atom and integer variable: " + name)
    , name_{std::move(name)} {}
    [[nodiscard]] auto name() const -> Name const & { return name_; }

private:
    Name name_;
};

enum class Relation { le, eq, ne, lt, gt, ge };
enum class Negation { none, single, dbl };
enum class Op { sum, sus, min, max, df, in };
enum class Tag { none, head, body };

//! Integer `n`, variable `x` (coefficient 1), or `n*x`.
struct ProductTerm {
    Int coefficient{0};
    std::optional<Name> variable;

    static auto constant(Int n) -> ProductTerm { return {n, std::nullopt}; }
    static auto var(Name x, Int n = 1) -> ProductTerm { return {n, std::move(x)}; }
    [[nodiscard]] auto is_constant() const -> bool { return !variable.has_value(); }

    friend auto operator==(ProductTerm const &, ProductTerm const &) -> bool = default;
};

struct Literal;

//! `s : l_1, ..., l_n`; the condition holds propositional (or, after guarding, `&df`) literals.
struct ConditionalTerm {
    ProductTerm head;
    std::vector<Literal> condition;

    friend auto operator==(ConditionalTerm const &a, ConditionalTerm const &b) -> bool;
};

using FlingoTerm = std::variant<ProductTerm, ConditionalTerm>;

//! A theory atom `&op{elements} rel rhs`, `&op{elements} =: rhs`, `&df{x}` or `&in{lo..hi} =: x`.
//!
//! For `df` the single element is the bare variable and relation/rhs are empty.
//! For `in` the two elements are the lower and upper bound.
struct ConstraintAtom {
    Op op{Op::sum};
    Tag tag{Tag::none};
    std::vector<FlingoTerm> elements;
    std::optional<Relation> relation;
    std::optional<ProductTerm> rhs;
    bool assign{false};

    friend auto operator==(ConstraintAtom const &, ConstraintAtom const &) -> bool = default;
};

struct PropAtom {
    Name name;
    friend auto operator==(PropAtom const &, PropAtom const &) -> bool = default;
};

using Atom = std::variant<PropAtom, ConstraintAtom>;

struct Literal {
    Atom atom;
    Negation negation{Negation::none};

    friend auto operator==(Literal const &, Literal const &) -> bool = default;
};

inline auto operator==(ConditionalTerm const &a, ConditionalTerm const &b) -> bool {
    return a.head == b.head && a.condition == b.condition;
}

enum class HeadKind { atom, falsity, choice };

//! `head :- body.`; choice heads `{p}` carry a PropAtom, falsity heads no atom.
struct Rule {
    HeadKind kind{HeadKind::falsity};
    std::optional<Atom> head;
    std::vector<Literal> body;

    friend auto operator==(Rule const &, Rule const &) -> bool = default;
};

struct Program {
    std::vector<Rule> rules;
    friend auto operator==(Program const &, Program const &) -> bool = default;
};

struct Bounds {
    Int lo{0};
    Int hi{0};
    [[nodiscard]] auto size() const -> Int { return hi - lo + 1; }
    friend auto operator==(Bounds const &, Bounds const &) -> bool = default;
};

//! Declared variables and the integer domain.
//!
//! Integer variables range over [min_int, max_int] unless `bounds` holds a
//! per-variable override (used for variables introduced by the rewriter).
struct Signature {
    std::set<Name> prop_vars;
    std::set<Name> int_vars;
    Int min_int{0};
    Int max_int{0};
    std::map<Name, Bounds> bounds;

    [[nodiscard]] auto domain(Name const &x) const -> Bounds;
    //! Throws if min_int > max_int or prop/int names overlap.
    void validate() const;

    friend auto operator==(Signature const &, Signature const &) -> bool = default;
};

// {{{1 construction helpers

auto prop(Name name) -> Atom;
auto lit(Atom atom, Negation neg = Negation::none) -> Literal;
auto cond(ProductTerm head, std::vector<Literal> condition) -> FlingoTerm;
auto catom(Op op, std::vector<FlingoTerm> elements, Relation rel, ProductTerm rhs) -> ConstraintAtom;
auto df_atom(Name x) -> ConstraintAtom;
auto assign_atom(Op op, std::vector<FlingoTerm> elements, ProductTerm rhs) -> ConstraintAtom;
auto in_atom(ProductTerm lo, ProductTerm hi, Name x) -> ConstraintAtom;
auto fact(Atom head) -> Rule;
auto rule(Atom head, std::vector<Literal> body) -> Rule;
auto constraint(std::vector<Literal> body) -> Rule;
auto choice(Name p, std::vector<Literal> body = {}) -> Rule;

// {{{1 queries and small transformations

auto negate_product(ProductTerm const &s) -> ProductTerm;
//! Swaps `<=`/`>=` and `<`/`>`; `=` and `!=` are fixed.
auto dual_relation(Relation r) -> Relation;
//! The relation holding exactly when `r` does not.
auto complement_relation(Relation r) -> Relation;
auto holds(Relation r, __int128 lhs, __int128 rhs) -> bool;

//! The neutral element substituted for undefined terms of `op`.
auto neutral_element(Op op, Int min_int, Int max_int) -> Int;

auto term_product(FlingoTerm const &t) -> ProductTerm const &;
auto is_conditional(FlingoTerm const &t) -> bool;

//! Integer variables occurring in the product parts of an atom (elements and rhs), in order of occurrence.
auto int_vars_of(ConstraintAtom const &a) -> std::vector<Name>;
auto int_vars_of(FlingoTerm const &t) -> std::vector<Name>;

//! Computes the signature of a program; throws KindConflict.
//!
//! Tagged atoms count as propositional atoms under their surrogate name.
auto signature_of(Program const &p, Int min_int, Int max_int) -> Signature;

//! Deterministic surrogate names `__flingo_<op>_<tag>_<N>` for tagged atoms, numbered by first occurrence.
class SurrogateTable {
public:
    explicit SurrogateTable(Program const &p);
    [[nodiscard]] auto name(ConstraintAtom const &a) const -> Name const &;
    //! Pairs (surrogate name, rendered atom) in numbering order.
    [[nodiscard]] auto legend() const -> std::vector<std::pair<Name, std::string>> const & { return legend_; }

private:
    std::map<std::string, Name> names_;
    std::vector<std::pair<Name, std::string>> legend_;
};

auto to_string(Relation r) -> char const *;
auto to_string(Op op) -> char const *;
auto to_string(ProductTerm const &s) -> std::string;
auto to_string(FlingoTerm const &t) -> std::string;
auto to_string(ConstraintAtom const &a) -> std::string;
auto to_string(Atom const &a) -> std::string;
auto to_string(Literal const &l) -> std::string;
auto to_string(Rule const &r) -> std::string;

//! Invokes `f` on every atom of a literal, including atoms in condition literals.
template <typename F> void for_each_atom(Atom const &a, F &&f) {
    f(a);
    if (auto const *c = std::get_if<ConstraintAtom>(&a)) {
        for (auto const &t : c->elements) {
            if (auto const *ct = std::get_if<ConditionalTerm>(&t)) {
                for (auto const &l : ct->condition) {
                    for_each_atom(l.atom, f);
                }
            }
        }
    }
}

template <typename F> void for_each_atom(Rule const &r, F &&f) {
    if (r.head) {
        for_each_atom(*r.head, f);
    }
    for (auto const &l : r.body) {
        for_each_atom(l.atom, f);
    }
}

template <typename F> void for_each_atom(Program const &p, F &&f) {
    for (auto const &r : p.rules) {
        for_each_atom(r, f);
    }
}

} // namespace Flingo

#endif // FLINGO_AST_HH
