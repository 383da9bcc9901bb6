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

#include <flingo/ast.hh>

#include <algorithm>
#include <sstream>

namespace Flingo {

auto Signature::domain(Name const &x) const -> Bounds {
    if (auto it = bounds.find(x); it != bounds.end()) {
        return it->second;
    }
    return {min_int, max_int};
}

void Signature::validate() const {
    if (min_int > max_int) {
        throw Error("empty integer domain: min-int " + std::to_string(min_int) + " > max-int " +
                    std::to_string(max_int));
    }
    for (auto const &[x, b] : bounds) {
        if (b.lo > b.hi) {
            throw Error("empty domain for integer variable " + x);
        }
    }
    for (auto const &p : prop_vars) {
        if (int_vars.count(p) != 0) {
            throw KindConflict(p);
        }
    }
}

auto prop(Name name) -> Atom { return PropAtom{std::move(name)}; }

auto lit(Atom atom, Negation neg) -> Literal { return Literal{std::move(atom), neg}; }

auto cond(ProductTerm head, std::vector<Literal> condition) -> FlingoTerm {
    return ConditionalTerm{std::move(head), std::move(condition)};
}

auto catom(Op op, std::vector<FlingoTerm> elements, Relation rel, ProductTerm rhs) -> ConstraintAtom {
    return ConstraintAtom{op, Tag::none, std::move(elements), rel, std::move(rhs), false};
}

auto df_atom(Name x) -> ConstraintAtom {
    return ConstraintAtom{Op::df, Tag::none, {ProductTerm::var(std::move(x))}, std::nullopt, std::nullopt, false};
}

auto assign_atom(Op op, std::vector<FlingoTerm> elements, ProductTerm rhs) -> ConstraintAtom {
    return ConstraintAtom{op, Tag::none, std::move(elements), std::nullopt, std::move(rhs), true};
}

auto in_atom(ProductTerm lo, ProductTerm hi, Name x) -> ConstraintAtom {
    return ConstraintAtom{Op::in, Tag::none, {std::move(lo), std::move(hi)}, std::nullopt,
                          ProductTerm::var(std::move(x)), true};
}

auto fact(Atom head) -> Rule { return Rule{HeadKind::atom, std::move(head), {}}; }

auto rule(Atom head, std::vector<Literal> body) -> Rule {
    return Rule{HeadKind::atom, std::move(head), std::move(body)};
}

auto constraint(std::vector<Literal> body) -> Rule { return Rule{HeadKind::falsity, std::nullopt, std::move(body)}; }

auto choice(Name p, std::vector<Literal> body) -> Rule {
    return Rule{HeadKind::choice, PropAtom{std::move(p)}, std::move(body)};
}

auto negate_product(ProductTerm const &s) -> ProductTerm { return ProductTerm{-s.coefficient, s.variable}; }

auto dual_relation(Relation r) -> Relation {
    switch (r) {
        case Relation::le: return Relation::ge;
        case Relation::ge: return Relation::le;
        case Relation::lt: return Relation::gt;
        case Relation::gt: return Relation::lt;
        case Relation::eq:
        case Relation::ne: break;
    }
    return r;
}

auto complement_relation(Relation r) -> Relation {
    switch (r) {
        case Relation::le: return Relation::gt;
        case Relation::ge: return Relation::lt;
        case Relation::lt: return Relation::ge;
        case Relation::gt: return Relation::le;
        case Relation::eq: return Relation::ne;
        case Relation::ne: return Relation::eq;
    }
    return r;
}

auto holds(Relation r, __int128 lhs, __int128 rhs) -> bool {
    switch (r) {
        case Relation::le: return lhs <= rhs;
        case Relation::eq: return lhs == rhs;
        case Relation::ne: return lhs != rhs;
        case Relation::lt: return lhs < rhs;
        case Relation::gt: return lhs > rhs;
        case Relation::ge: return lhs >= rhs;
    }
    return false;
}

auto neutral_element(Op op, Int min_int, Int max_int) -> Int {
    switch (op) {
        case Op::min: return max_int;
        case Op::max: return min_int;
        default: return 0;
    }
}

auto term_product(FlingoTerm const &t) -> ProductTerm const & {
    if (auto const *ct = std::get_if<ConditionalTerm>(&t)) {
        return ct->head;
    }
    return std::get<ProductTerm>(t);
}

auto is_conditional(FlingoTerm const &t) -> bool { return std::holds_alternative<ConditionalTerm>(t); }

namespace {

void push_unique(std::vector<Name> &out, Name const &x) {
    if (std::find(out.begin(), out.end(), x) == out.end()) {
        out.push_back(x);
    }
}

} // namespace

auto int_vars_of(FlingoTerm const &t) -> std::vector<Name> {
    auto const &s = term_product(t);
    if (s.variable) {
        return {*s.variable};
    }
    return {};
}

auto int_vars_of(ConstraintAtom const &a) -> std::vector<Name> {
    std::vector<Name> out;
    for (auto const &t : a.elements) {
        if (auto const &s = term_product(t); s.variable) {
            push_unique(out, *s.variable);
        }
    }
    if (a.rhs && a.rhs->variable) {
        push_unique(out, *a.rhs->variable);
    }
    return out;
}

auto signature_of(Program const &p, Int min_int, Int max_int) -> Signature {
    Signature sig;
    sig.min_int = min_int;
    sig.max_int = max_int;
    SurrogateTable surrogates{p};
    for_each_atom(p, [&](Atom const &a) {
        if (auto const *pa = std::get_if<PropAtom>(&a)) {
            sig.prop_vars.insert(pa->name);
            return;
        }
        auto const &ca = std::get<ConstraintAtom>(a);
        if (ca.tag != Tag::none) {
            sig.prop_vars.insert(surrogates.name(ca));
        }
        for (auto const &x : int_vars_of(ca)) {
            sig.int_vars.insert(x);
        }
    });
    for (auto const &x : sig.prop_vars) {
        if (sig.int_vars.count(x) != 0) {
            throw KindConflict(x);
        }
    }
    return sig;
}

SurrogateTable::SurrogateTable(Program const &p) {
    for_each_atom(p, [&](Atom const &a) {
        auto const *ca = std::get_if<ConstraintAtom>(&a);
        if (ca == nullptr || ca->tag == Tag::none) {
            return;
        }
        auto key = to_string(*ca);
        if (names_.count(key) == 0) {
            auto name = std::string{RESERVED_PREFIX} + to_string(ca->op) + (ca->tag == Tag::head ? "_head_" : "_body_") +
                        std::to_string(legend_.size() + 1);
            names_.emplace(key, name);
            legend_.emplace_back(name, key);
        }
    });
}

auto SurrogateTable::name(ConstraintAtom const &a) const -> Name const & {
    auto it = names_.find(to_string(a));
    if (it == names_.end()) {
        throw Error("no surrogate for atom " + to_string(a));
    }
    return it->second;
}

// {{{1 rendering

auto to_string(Relation r) -> char const * {
    switch (r) {
        case Relation::le: return "<=";
        case Relation::eq: return "=";
        case Relation::ne: return "!=";
        case Relation::lt: return "<";
        case Relation::gt: return ">";
        case Relation::ge: return ">=";
    }
    return "?";
}

auto to_string(Op op) -> char const * {
    switch (op) {
        case Op::sum: return "sum";
        case Op::sus: return "sus";
        case Op::min: return "min";
        case Op::max: return "max";
        case Op::df: return "df";
        case Op::in: return "in";
    }
    return "?";
}

auto to_string(ProductTerm const &s) -> std::string {
    if (!s.variable) {
        return std::to_string(s.coefficient);
    }
    if (s.coefficient == 1) {
        return *s.variable;
    }
    return std::to_string(s.coefficient) + "*" + *s.variable;
}

auto to_string(FlingoTerm const &t) -> std::string {
    if (auto const *ct = std::get_if<ConditionalTerm>(&t)) {
        std::string out = to_string(ct->head) + " :";
        char const *sep = " ";
        for (auto const &l : ct->condition) {
            out += sep;
            out += to_string(l);
            sep = ", ";
        }
        return out;
    }
    return to_string(std::get<ProductTerm>(t));
}

auto to_string(ConstraintAtom const &a) -> std::string {
    std::string out = "&";
    out += to_string(a.op);
    if (a.op == Op::df) {
        return out + "{" + to_string(term_product(a.elements.front())) + "}";
    }
    if (a.tag != Tag::none) {
        out += a.tag == Tag::head ? "(head)" : "(body)";
    }
    if (a.op == Op::in) {
        out += "{ " + to_string(a.elements.at(0)) + ".." + to_string(a.elements.at(1)) + " }";
    }
    else if (a.elements.empty()) {
        out += "{}";
    }
    else {
        out += "{ ";
        char const *sep = "";
        for (auto const &t : a.elements) {
            out += sep;
            out += to_string(t);
            sep = "; ";
        }
        out += " }";
    }
    if (a.assign) {
        out += " =: ";
    }
    else if (a.relation) {
        out += " ";
        out += to_string(*a.relation);
        out += " ";
    }
    if (a.rhs) {
        out += to_string(*a.rhs);
    }
    return out;
}

auto to_string(Atom const &a) -> std::string {
    if (auto const *pa = std::get_if<PropAtom>(&a)) {
        return pa->name;
    }
    return to_string(std::get<ConstraintAtom>(a));
}

auto to_string(Literal const &l) -> std::string {
    switch (l.negation) {
        case Negation::none: return to_string(l.atom);
        case Negation::single: return "not " + to_string(l.atom);
        case Negation::dbl: return "not not " + to_string(l.atom);
    }
    return {};
}

auto to_string(Rule const &r) -> std::string {
    std::string out;
    switch (r.kind) {
        case HeadKind::atom: out = to_string(*r.head); break;
        case HeadKind::choice: out = "{" + to_string(*r.head) + "}"; break;
        case HeadKind::falsity: out = ":-"; break;
    }
    if (!r.body.empty()) {
        out += r.kind == HeadKind::falsity ? " " : " :- ";
        char const *sep = "";
        for (auto const &l : r.body) {
            out += sep;
            out += to_string(l);
            sep = ", ";
        }
    }
    else if (r.kind == HeadKind::falsity) {
        out += " ";
    }
    out += ".";
    return out;
}

} // namespace Flingo
