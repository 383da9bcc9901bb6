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

#include "compiled.hh"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace Flingo {

auto to_string(ExtValue const &v) -> std::string {
    switch (v.kind()) {
        case ExtValue::Kind::undef: return "u";
        case ExtValue::Kind::truth: return "t";
        case ExtValue::Kind::integer: return std::to_string(v.value());
    }
    return "?";
}

auto defined_pairs(Valuation const &v) -> Valuation {
    Valuation out;
    for (auto const &[x, val] : v) {
        if (val.defined()) {
            out.emplace(x, val);
        }
    }
    return out;
}

auto pairs_subset(Valuation const &h, Valuation const &t) -> bool {
    for (auto const &[x, val] : h) {
        if (!val.defined()) {
            continue;
        }
        auto it = t.find(x);
        if (it == t.end() || it->second != val) {
            return false;
        }
    }
    return true;
}

auto same_pairs(Valuation const &a, Valuation const &b) -> bool { return defined_pairs(a) == defined_pairs(b); }

// {{{1 formulas

namespace Htc {

namespace {

auto node(HtcNode::Kind kind, HtcFormula lhs, HtcFormula rhs) -> HtcFormula {
    auto n = std::make_shared<HtcNode>();
    n->kind = kind;
    n->lhs = std::move(lhs);
    n->rhs = std::move(rhs);
    return n;
}

} // namespace

auto falsity() -> HtcFormula {
    static auto const bot = std::make_shared<HtcNode const>();
    return bot;
}

auto top() -> HtcFormula { return impl(falsity(), falsity()); }

auto atom(HtcAtom a) -> HtcFormula {
    auto n = std::make_shared<HtcNode>();
    n->kind = HtcNode::Kind::atom;
    n->atom = std::move(a);
    return n;
}

auto conj(HtcFormula a, HtcFormula b) -> HtcFormula { return node(HtcNode::Kind::conj, std::move(a), std::move(b)); }
auto disj(HtcFormula a, HtcFormula b) -> HtcFormula { return node(HtcNode::Kind::disj, std::move(a), std::move(b)); }
auto impl(HtcFormula a, HtcFormula b) -> HtcFormula { return node(HtcNode::Kind::impl, std::move(a), std::move(b)); }
auto neg(HtcFormula a) -> HtcFormula { return impl(std::move(a), falsity()); }

auto conj_all(std::vector<HtcFormula> const &fs) -> HtcFormula {
    if (fs.empty()) {
        return top();
    }
    auto out = fs.front();
    for (auto it = fs.begin() + 1; it != fs.end(); ++it) {
        out = conj(out, *it);
    }
    return out;
}

auto prop(Name p) -> HtcFormula { return atom(HtcAtom{HtcAtom::Kind::prop, std::move(p), {}, Relation::eq, {}}); }
auto df(Name x) -> HtcFormula { return atom(HtcAtom{HtcAtom::Kind::df, std::move(x), {}, Relation::eq, {}}); }
auto int_(Name x) -> HtcFormula { return atom(HtcAtom{HtcAtom::Kind::int_, std::move(x), {}, Relation::eq, {}}); }

auto linear(HtcAtom::Kind kind, std::vector<HtcTerm> elements, Relation rel, ProductTerm rhs) -> HtcFormula {
    return atom(HtcAtom{kind, {}, std::move(elements), rel, std::move(rhs)});
}

} // namespace Htc

namespace {

auto opt_to_string(std::optional<ProductTerm> const &s) -> std::string { return s ? to_string(*s) : "u"; }

} // namespace

auto to_string(HtcAtom const &a) -> std::string {
    switch (a.kind) {
        case HtcAtom::Kind::prop: return a.name;
        case HtcAtom::Kind::df: return "df(" + a.name + ")";
        case HtcAtom::Kind::int_: return "int(" + a.name + ")";
        default: break;
    }
    std::string out = a.kind == HtcAtom::Kind::sum ? "sum{" : a.kind == HtcAtom::Kind::sus ? "sus{" : "min{";
    char const *sep = "";
    for (auto const &t : a.elements) {
        out += sep;
        sep = "; ";
        if (auto const *ct = std::get_if<HtcConditional>(&t)) {
            out += "(" + opt_to_string(ct->then_term) + "|" + opt_to_string(ct->else_term) + ":" +
                   to_string(ct->cond) + ")";
        }
        else {
            out += to_string(std::get<ProductTerm>(t));
        }
    }
    out += "} ";
    out += to_string(a.relation);
    out += " ";
    out += to_string(a.rhs);
    return out;
}

auto to_string(HtcFormula const &f) -> std::string {
    switch (f->kind) {
        case HtcNode::Kind::falsity: return "F";
        case HtcNode::Kind::atom: return to_string(f->atom);
        case HtcNode::Kind::conj: return "(" + to_string(f->lhs) + " & " + to_string(f->rhs) + ")";
        case HtcNode::Kind::disj: return "(" + to_string(f->lhs) + " | " + to_string(f->rhs) + ")";
        case HtcNode::Kind::impl: return "(" + to_string(f->lhs) + " -> " + to_string(f->rhs) + ")";
    }
    return "?";
}

BudgetExceeded::BudgetExceeded(double estimate, std::string const &what)
: Error([&] {
    std::ostringstream oss;
    oss << "budget exceeded: " << what << " " << estimate;
    return oss.str();
}())
, estimate_{estimate} {}

// {{{1 reference semantics over maps

namespace {

auto lookup(Valuation const &v, Name const &x) -> ExtValue {
    auto it = v.find(x);
    return it == v.end() ? ExtValue::undef() : it->second;
}

auto value128(Valuation const &v, std::optional<ProductTerm> const &s, bool &defined) -> Detail::Value {
    defined = false;
    if (!s) {
        return 0;
    }
    if (!s->variable) {
        defined = true;
        return s->coefficient;
    }
    auto val = lookup(v, *s->variable);
    if (!val.is_integer()) {
        return 0;
    }
    defined = true;
    return static_cast<Detail::Value>(s->coefficient) * val.value();
}

auto basic_holds(Valuation const &v, HtcAtom const &a, std::vector<std::optional<ProductTerm>> const &elems,
                 Signature const &sig) -> bool {
    using Kind = HtcAtom::Kind;
    switch (a.kind) {
        case Kind::prop: return lookup(v, a.name).is_truth();
        case Kind::df: return lookup(v, a.name).defined();
        case Kind::int_: {
            auto val = lookup(v, a.name);
            if (!val.is_integer()) {
                return false;
            }
            auto dom = sig.domain(a.name);
            return dom.lo <= val.value() && val.value() <= dom.hi;
        }
        default: break;
    }
    bool rhs_defined = false;
    auto rhs = value128(v, a.rhs, rhs_defined);
    if (!rhs_defined) {
        return false;
    }
    if (a.kind == Kind::min) {
        Detail::Value acc = sig.max_int;
        for (auto const &s : elems) {
            bool d = false;
            auto x = value128(v, s, d);
            acc = std::min(acc, d ? x : static_cast<Detail::Value>(sig.max_int));
        }
        return holds(a.relation, acc, rhs);
    }
    Detail::Value acc = 0;
    for (auto const &s : elems) {
        bool d = false;
        auto x = value128(v, s, d);
        if (!d && a.kind == Kind::sus) {
            return false;
        }
        acc = Detail::checked_add(acc, d ? x : 0);
    }
    return holds(a.relation, acc, rhs);
}

auto sat(Valuation const &w, Valuation const &t, HtcFormula const &f, Signature const &sig) -> bool {
    switch (f->kind) {
        case HtcNode::Kind::falsity: return false;
        case HtcNode::Kind::atom: {
            std::vector<std::optional<ProductTerm>> elems;
            elems.reserve(f->atom.elements.size());
            for (auto const &e : f->atom.elements) {
                if (auto const *ct = std::get_if<HtcConditional>(&e)) {
                    elems.emplace_back(eval_cterm(w, t, *ct, sig));
                }
                else {
                    elems.emplace_back(std::get<ProductTerm>(e));
                }
            }
            return basic_holds(w, f->atom, elems, sig);
        }
        case HtcNode::Kind::conj: return sat(w, t, f->lhs, sig) && sat(w, t, f->rhs, sig);
        case HtcNode::Kind::disj: return sat(w, t, f->lhs, sig) || sat(w, t, f->rhs, sig);
        case HtcNode::Kind::impl:
            return (!sat(w, t, f->lhs, sig) || sat(w, t, f->rhs, sig)) &&
                   (!sat(t, t, f->lhs, sig) || sat(t, t, f->rhs, sig));
    }
    return false;
}

} // namespace

auto eval_cterm(Valuation const &h, Valuation const &t, HtcConditional const &ct, Signature const &sig)
    -> std::optional<ProductTerm> {
    if (sat(h, t, ct.cond, sig)) {
        return ct.then_term;
    }
    if (!sat(t, t, ct.cond, sig)) {
        return ct.else_term;
    }
    return std::nullopt;
}

auto term_value(Valuation const &v, std::optional<ProductTerm> const &s) -> ExtValue {
    bool defined = false;
    auto x = value128(v, s, defined);
    if (!defined) {
        return ExtValue::undef();
    }
    if (x > std::numeric_limits<Int>::max() || x < std::numeric_limits<Int>::min()) {
        throw Error("arithmetic overflow in term evaluation");
    }
    return ExtValue::integer(static_cast<Int>(x));
}

auto term_value_defaulted(Valuation const &v, std::optional<ProductTerm> const &s, Op fun, Signature const &sig)
    -> Int {
    auto val = term_value(v, s);
    return val.is_integer() ? val.value() : neutral_element(fun, sig.min_int, sig.max_int);
}

auto atom_holds(Valuation const &v, HtcAtom const &a, Signature const &sig) -> bool {
    std::vector<std::optional<ProductTerm>> elems;
    for (auto const &e : a.elements) {
        if (std::holds_alternative<HtcConditional>(e)) {
            throw Error("atom_holds expects a basic atom");
        }
        elems.emplace_back(std::get<ProductTerm>(e));
    }
    return basic_holds(v, a, elems, sig);
}

auto satisfies(Valuation const &h, Valuation const &t, HtcFormula const &f, Signature const &sig) -> bool {
    return sat(h, t, f, sig);
}

auto satisfies(Valuation const &h, Valuation const &t, HtcTheory const &theory) -> bool {
    return std::all_of(theory.formulas.begin(), theory.formulas.end(),
                       [&](HtcFormula const &f) { return sat(h, t, f, theory.signature); });
}

// {{{1 translations

namespace {

auto extend_signature(Signature sig, Program const &p) -> Signature {
    auto own = signature_of(p, sig.min_int, sig.max_int);
    sig.prop_vars.insert(own.prop_vars.begin(), own.prop_vars.end());
    sig.int_vars.insert(own.int_vars.begin(), own.int_vars.end());
    sig.validate();
    return sig;
}

auto negate(HtcFormula f, Negation neg) -> HtcFormula {
    switch (neg) {
        case Negation::none: return f;
        case Negation::single: return Htc::neg(std::move(f));
        case Negation::dbl: return Htc::neg(Htc::neg(std::move(f)));
    }
    return f;
}

auto kind_of(Op op) -> HtcAtom::Kind {
    switch (op) {
        case Op::sum: return HtcAtom::Kind::sum;
        case Op::sus: return HtcAtom::Kind::sus;
        case Op::min: return HtcAtom::Kind::min;
        default: break;
    }
    throw Error("no HT_c atom kind for operation " + std::string{to_string(op)});
}

template <typename AtomFn> auto translate_rules(Program const &p, AtomFn const &atom_fn) -> std::vector<HtcFormula> {
    std::vector<HtcFormula> out;
    for (auto const &r : p.rules) {
        std::vector<HtcFormula> body;
        for (auto const &l : r.body) {
            body.emplace_back(negate(atom_fn(l.atom), l.negation));
        }
        HtcFormula head;
        switch (r.kind) {
            case HeadKind::falsity: head = Htc::falsity(); break;
            case HeadKind::atom: head = atom_fn(*r.head); break;
            case HeadKind::choice: {
                head = atom_fn(*r.head);
                body.emplace_back(Htc::neg(Htc::neg(head)));
                break;
            }
        }
        out.emplace_back(Htc::impl(Htc::conj_all(body), head));
    }
    return out;
}

class MuTranslator {
public:
    explicit MuTranslator(Signature const &sig)
    : sig_{sig} {}

    auto operator()(Atom const &a) const -> HtcFormula {
        if (auto const *pa = std::get_if<PropAtom>(&a)) {
            return Htc::prop(pa->name);
        }
        auto const &ca = std::get<ConstraintAtom>(a);
        if (ca.tag != Tag::none) {
            throw UnexpandedAbbreviation("tagged atom in flingo translation: " + to_string(ca));
        }
        if (ca.op == Op::df) {
            return Htc::df(*term_product(ca.elements.front()).variable);
        }
        if (ca.op == Op::in || ca.op == Op::max || ca.assign) {
            throw UnexpandedAbbreviation("abbreviation must be expanded first: " + to_string(ca));
        }
        std::vector<HtcTerm> elems;
        for (auto const &t : ca.elements) {
            if (auto const *ct = std::get_if<ConditionalTerm>(&t)) {
                std::vector<HtcFormula> cond;
                for (auto const &l : ct->condition) {
                    cond.emplace_back(negate((*this)(l.atom), l.negation));
                }
                auto neutral = ProductTerm::constant(neutral_element(ca.op, sig_.min_int, sig_.max_int));
                elems.emplace_back(HtcConditional{ct->head, neutral, Htc::conj_all(cond)});
            }
            else {
                elems.emplace_back(std::get<ProductTerm>(t));
            }
        }
        return Htc::linear(kind_of(ca.op), std::move(elems), *ca.relation, *ca.rhs);
    }

private:
    Signature const &sig_;
};

} // namespace

auto mu_translate(Program const &p, Signature const &sig) -> HtcTheory {
    HtcTheory theory;
    theory.signature = extend_signature(sig, p);
    theory.formulas = translate_rules(p, MuTranslator{theory.signature});
    for (auto const &q : theory.signature.prop_vars) {
        theory.formulas.emplace_back(Htc::impl(Htc::df(q), Htc::prop(q)));
    }
    for (auto const &x : theory.signature.int_vars) {
        theory.formulas.emplace_back(Htc::impl(Htc::df(x), Htc::int_(x)));
    }
    return theory;
}

auto mu_atom(Atom const &a, Signature const &sig) -> HtcFormula { return MuTranslator{sig}(a); }

auto tau_translate(Program const &p, Signature const &sig) -> HtcTheory {
    HtcTheory theory;
    theory.signature = extend_signature(sig, p);
    SurrogateTable surrogates{p};
    auto atom_fn = [&](Atom const &a) -> HtcFormula {
        if (auto const *pa = std::get_if<PropAtom>(&a)) {
            return Htc::prop(pa->name);
        }
        auto const &ca = std::get<ConstraintAtom>(a);
        if (ca.tag != Tag::none) {
            return Htc::prop(surrogates.name(ca));
        }
        if (ca.op != Op::sum || ca.assign || !ca.relation) {
            throw NotClingconFragment("not a clingcon atom: " + to_string(ca));
        }
        std::vector<HtcTerm> elems;
        for (auto const &t : ca.elements) {
            if (is_conditional(t)) {
                throw NotClingconFragment("conditional term in clingcon atom: " + to_string(ca));
            }
            elems.emplace_back(std::get<ProductTerm>(t));
        }
        return Htc::linear(HtcAtom::Kind::sus, std::move(elems), *ca.relation, *ca.rhs);
    };
    theory.formulas = translate_rules(p, atom_fn);
    for (auto const &q : theory.signature.prop_vars) {
        theory.formulas.emplace_back(Htc::impl(Htc::df(q), Htc::prop(q)));
    }
    for (auto const &x : theory.signature.int_vars) {
        theory.formulas.emplace_back(Htc::int_(x));
    }
    return theory;
}

// {{{1 dispatch

auto statespace_estimate(HtcTheory const &theory) -> double {
    double est = 1;
    for (auto const &x : theory.signature.int_vars) {
        est *= static_cast<double>(theory.signature.domain(x).size()) + 1;
    }
    return est * std::pow(2.0, static_cast<double>(theory.signature.prop_vars.size()));
}

namespace {

auto is_basic_linear(HtcAtom const &a) -> bool {
    if (a.kind != HtcAtom::Kind::sum && a.kind != HtcAtom::Kind::sus) {
        return false;
    }
    return std::all_of(a.elements.begin(), a.elements.end(),
                       [](HtcTerm const &t) { return std::holds_alternative<ProductTerm>(t); });
}

auto is_cl_atom(HtcFormula const &f) -> bool {
    return f->kind == HtcNode::Kind::atom && (f->atom.kind == HtcAtom::Kind::prop || f->atom.kind == HtcAtom::Kind::df ||
                                              f->atom.kind == HtcAtom::Kind::int_ || is_basic_linear(f->atom));
}

auto is_negation(HtcFormula const &f) -> bool {
    return f->kind == HtcNode::Kind::impl && f->rhs->kind == HtcNode::Kind::falsity;
}

auto is_cl_literal(HtcFormula const &f) -> bool {
    if (is_cl_atom(f)) {
        return true;
    }
    if (!is_negation(f)) {
        return false;
    }
    if (is_cl_atom(f->lhs) || f->lhs->kind == HtcNode::Kind::falsity) {
        return true;
    }
    return is_negation(f->lhs) && is_cl_atom(f->lhs->lhs);
}

auto is_cl_body(HtcFormula const &f) -> bool {
    if (f->kind == HtcNode::Kind::conj) {
        return is_cl_body(f->lhs) && is_cl_body(f->rhs);
    }
    return is_cl_literal(f);
}

} // namespace

auto is_cl_shaped(HtcTheory const &theory) -> bool {
    std::set<Name> int_facts;
    for (auto const &f : theory.formulas) {
        if (f->kind == HtcNode::Kind::atom) {
            if (f->atom.kind == HtcAtom::Kind::int_) {
                int_facts.insert(f->atom.name);
            }
            if (!is_cl_atom(f)) {
                return false;
            }
            continue;
        }
        if (f->kind != HtcNode::Kind::impl || !is_cl_body(f->lhs)) {
            return false;
        }
        if (f->rhs->kind != HtcNode::Kind::falsity && !is_cl_atom(f->rhs)) {
            return false;
        }
    }
    return std::all_of(theory.signature.int_vars.begin(), theory.signature.int_vars.end(),
                       [&](Name const &x) { return int_facts.count(x) != 0; });
}

auto stable_models(HtcTheory const &theory, EngineOptions const &opts) -> std::vector<Valuation> {
    theory.signature.validate();
    auto engine = opts.engine;
    if (engine == EngineOptions::Engine::automatic) {
        engine = is_cl_shaped(theory) ? EngineOptions::Engine::casp : EngineOptions::Engine::exhaustive;
    }
    if (engine == EngineOptions::Engine::casp) {
        if (!is_cl_shaped(theory)) {
            throw Error("theory is not in the clingcon fragment");
        }
        return Detail::stable_models_casp(theory, opts);
    }
    return Detail::stable_models_exhaustive(theory, opts);
}

auto ht_models(HtcTheory const &theory, EngineOptions const &opts) -> std::vector<HtInterpretation> {
    theory.signature.validate();
    return Detail::ht_models_exhaustive(theory, opts);
}

// {{{1 compiled evaluation

namespace Detail {

VarTable::VarTable(Signature const &sig) {
    auto add = [&](Name const &x, bool is_integer) {
        index.emplace(x, static_cast<int>(names.size()));
        names.emplace_back(x);
        is_int.emplace_back(is_integer);
        bounds.emplace_back(is_integer ? sig.domain(x) : Bounds{TRUTH, TRUTH});
        if (is_integer && bounds.back().lo == UNDEF) {
            throw Error("domain of " + x + " collides with the undefined marker");
        }
    };
    for (auto const &p : sig.prop_vars) {
        add(p, false);
    }
    for (auto const &x : sig.int_vars) {
        add(x, true);
    }
}

auto VarTable::find(Name const &x) const -> int {
    auto it = index.find(x);
    if (it == index.end()) {
        throw Error("variable not in signature: " + x);
    }
    return it->second;
}

Compiled::Compiled(VarTable const &vars, Signature const &sig)
: vars_{vars}
, min_int_{sig.min_int}
, max_int_{sig.max_int} {}

auto Compiled::compile_product(ProductTerm const &s) -> CProduct {
    return {s.coefficient, s.variable ? vars_.find(*s.variable) : -1};
}

auto Compiled::add(HtcFormula const &f) -> int {
    CNode n;
    n.kind = f->kind;
    switch (f->kind) {
        case HtcNode::Kind::falsity: break;
        case HtcNode::Kind::atom: {
            CAtom a;
            a.kind = f->atom.kind;
            if (a.kind == HtcAtom::Kind::prop || a.kind == HtcAtom::Kind::df || a.kind == HtcAtom::Kind::int_) {
                a.var = vars_.find(f->atom.name);
            }
            else {
                a.rel = f->atom.relation;
                a.rhs = compile_product(f->atom.rhs);
                for (auto const &e : f->atom.elements) {
                    CTerm t;
                    if (auto const *ct = std::get_if<HtcConditional>(&e)) {
                        t.conditional = true;
                        if (ct->then_term) {
                            t.has_then = true;
                            t.then_term = compile_product(*ct->then_term);
                        }
                        if (ct->else_term) {
                            t.has_else = true;
                            t.else_term = compile_product(*ct->else_term);
                        }
                        t.cond = add(ct->cond);
                    }
                    else {
                        t.s = compile_product(std::get<ProductTerm>(e));
                    }
                    a.terms.emplace_back(t);
                }
            }
            n.atom = static_cast<int>(atoms_.size());
            atoms_.emplace_back(std::move(a));
            break;
        }
        default: {
            n.lhs = add(f->lhs);
            n.rhs = add(f->rhs);
            break;
        }
    }
    nodes_.emplace_back(n);
    return static_cast<int>(nodes_.size()) - 1;
}

auto Compiled::product_value(Int const *v, CProduct const &s, bool &defined) const -> Value {
    if (s.var < 0) {
        defined = true;
        return s.coef;
    }
    auto x = v[s.var];
    defined = x != UNDEF && vars_.is_int[s.var];
    return defined ? static_cast<Value>(s.coef) * x : 0;
}

auto Compiled::atom_holds(Int const *v, CAtom const &a) const -> bool { return sat_atom(v, v, a); }

auto Compiled::sat_atom(Int const *w, Int const *t, CAtom const &a) const -> bool {
    using Kind = HtcAtom::Kind;
    switch (a.kind) {
        case Kind::prop: return w[a.var] != UNDEF && !vars_.is_int[a.var];
        case Kind::df: return w[a.var] != UNDEF;
        case Kind::int_: {
            auto x = w[a.var];
            return x != UNDEF && vars_.is_int[a.var] && vars_.bounds[a.var].lo <= x && x <= vars_.bounds[a.var].hi;
        }
        default: break;
    }
    bool rhs_defined = false;
    auto rhs = product_value(w, a.rhs, rhs_defined);
    if (!rhs_defined) {
        return false;
    }
    Value acc = a.kind == Kind::min ? static_cast<Value>(max_int_) : 0;
    for (auto const &term : a.terms) {
        bool defined = false;
        Value x = 0;
        if (!term.conditional) {
            x = product_value(w, term.s, defined);
        }
        else if (sat(w, t, term.cond)) {
            x = term.has_then ? product_value(w, term.then_term, defined) : 0;
        }
        else if (!sat(t, t, term.cond)) {
            x = term.has_else ? product_value(w, term.else_term, defined) : 0;
        }
        switch (a.kind) {
            case Kind::sus:
                if (!defined) {
                    return false;
                }
                acc = checked_add(acc, x);
                break;
            case Kind::sum: acc = checked_add(acc, defined ? x : 0); break;
            case Kind::min: acc = std::min(acc, defined ? x : static_cast<Value>(max_int_)); break;
            default: break;
        }
    }
    return holds(a.rel, acc, rhs);
}

auto Compiled::sat(Int const *h, Int const *t, int idx) const -> bool {
    auto const &n = nodes_[idx];
    switch (n.kind) {
        case HtcNode::Kind::falsity: return false;
        case HtcNode::Kind::atom: return sat_atom(h, t, atoms_[n.atom]);
        case HtcNode::Kind::conj: return sat(h, t, n.lhs) && sat(h, t, n.rhs);
        case HtcNode::Kind::disj: return sat(h, t, n.lhs) || sat(h, t, n.rhs);
        case HtcNode::Kind::impl: {
            if (sat(h, t, n.lhs) && !sat(h, t, n.rhs)) {
                return false;
            }
            return h == t || !sat(t, t, n.lhs) || sat(t, t, n.rhs);
        }
    }
    return false;
}

void Compiled::collect_vars(int idx, std::vector<int> &out) const {
    auto push = [&](int v) {
        if (v >= 0 && std::find(out.begin(), out.end(), v) == out.end()) {
            out.push_back(v);
        }
    };
    auto const &n = nodes_[idx];
    switch (n.kind) {
        case HtcNode::Kind::falsity: return;
        case HtcNode::Kind::atom: {
            auto const &a = atoms_[n.atom];
            push(a.var);
            push(a.rhs.var);
            for (auto const &t : a.terms) {
                push(t.s.var);
                if (t.conditional) {
                    push(t.has_then ? t.then_term.var : -1);
                    push(t.has_else ? t.else_term.var : -1);
                    collect_vars(t.cond, out);
                }
            }
            return;
        }
        default: {
            collect_vars(n.lhs, out);
            collect_vars(n.rhs, out);
            return;
        }
    }
}

auto to_valuation(VarTable const &vars, Int const *v) -> Valuation {
    Valuation out;
    for (std::size_t i = 0; i < vars.names.size(); ++i) {
        ExtValue val;
        if (v[i] != UNDEF) {
            val = vars.is_int[i] ? ExtValue::integer(v[i]) : ExtValue::truth();
        }
        out.emplace(vars.names[i], val);
    }
    return out;
}

auto from_valuation(VarTable const &vars, Valuation const &v) -> std::vector<Int> {
    std::vector<Int> out(vars.names.size(), UNDEF);
    for (auto const &[x, val] : v) {
        auto it = vars.index.find(x);
        if (it == vars.index.end()) {
            continue;
        }
        if (val.is_integer()) {
            out[it->second] = val.value();
        }
        else if (val.is_truth()) {
            out[it->second] = TRUTH;
        }
    }
    return out;
}

void canonicalize(std::vector<Valuation> &models) {
    std::sort(models.begin(), models.end());
    models.erase(std::unique(models.begin(), models.end()), models.end());
}

} // namespace Detail

} // namespace Flingo
