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

#include <flingo/htc.hh>
#include <flingo/parser.hh>
#include <flingo/rewriter.hh>

#include <algorithm>

namespace Flingo {

namespace {

enum FreshKind : std::size_t { fresh_cond, fresh_term, fresh_def, fresh_member, fresh_min };

auto hull(Bounds a, Bounds b) -> Bounds { return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)}; }
auto point(Int n) -> Bounds { return {n, n}; }

auto df_lit(Name const &x) -> Literal { return lit(df_atom(x)); }

auto contains(std::vector<Literal> const &ls, Literal const &l) -> bool {
    return std::find(ls.begin(), ls.end(), l) != ls.end();
}

void add_df_guards(std::vector<Literal> &body, std::vector<Name> const &vars) {
    for (auto const &x : vars) {
        auto l = df_lit(x);
        if (!contains(body, l)) {
            body.push_back(std::move(l));
        }
    }
}

auto vars_of_terms(std::vector<FlingoTerm> const &ts) -> std::vector<Name> {
    std::vector<Name> out;
    for (auto const &t : ts) {
        for (auto const &x : int_vars_of(t)) {
            if (std::find(out.begin(), out.end(), x) == out.end()) {
                out.push_back(x);
            }
        }
    }
    return out;
}

auto is_fun(ConstraintAtom const &a) -> bool {
    return a.op == Op::sum || a.op == Op::sus || a.op == Op::min || a.op == Op::max;
}

//! Applies `f` to every constraint atom of a rule; `f` receives whether the atom is in the head.
template <typename F> void map_constraint_atoms(Rule &r, F const &f) {
    if (r.head) {
        if (auto *ca = std::get_if<ConstraintAtom>(&*r.head)) {
            f(*ca, true);
        }
    }
    for (auto &l : r.body) {
        if (auto *ca = std::get_if<ConstraintAtom>(&l.atom)) {
            f(*ca, false);
        }
    }
}

auto sus_atom(std::vector<FlingoTerm> elems, Relation rel, ProductTerm rhs, Tag tag = Tag::none) -> ConstraintAtom {
    auto a = catom(Op::sus, std::move(elems), rel, std::move(rhs));
    a.tag = tag;
    return a;
}

//! Distinct constraint atoms satisfying `pred`, in order of first occurrence.
template <typename P> auto distinct_atoms(Program const &p, P const &pred) -> std::vector<ConstraintAtom> {
    std::vector<ConstraintAtom> out;
    for_each_atom(p, [&](Atom const &a) {
        auto const *ca = std::get_if<ConstraintAtom>(&a);
        if (ca != nullptr && pred(*ca) && std::find(out.begin(), out.end(), *ca) == out.end()) {
            out.push_back(*ca);
        }
    });
    return out;
}

} // namespace

// {{{1 fresh symbols

FreshGen::FreshGen(Signature sig)
: sig_{std::move(sig)} {}

auto FreshGen::next(std::size_t kind, char const *stem) -> Name {
    return std::string{RESERVED_PREFIX} + stem + "_" + std::to_string(++counters_[kind]);
}

auto FreshGen::cond() -> Name { return next(fresh_cond, "cond"); }
auto FreshGen::def() -> Name { return next(fresh_def, "def"); }
auto FreshGen::member() -> Name { return next(fresh_member, "member"); }

auto FreshGen::term(Bounds bounds, std::vector<Name> origin) -> Name {
    auto y = next(fresh_term, "y");
    bounds_.emplace(y, bounds);
    origin_.emplace(y, std::move(origin));
    return y;
}

auto FreshGen::minvar(Bounds bounds) -> Name {
    auto m = next(fresh_min, "m");
    bounds_.emplace(m, bounds);
    return m;
}

auto FreshGen::domain(Name const &x) const -> Bounds {
    if (auto it = bounds_.find(x); it != bounds_.end()) {
        return it->second;
    }
    return sig_.domain(x);
}

auto FreshGen::range(ProductTerm const &s) const -> Bounds {
    if (!s.variable) {
        return point(s.coefficient);
    }
    auto dom = domain(*s.variable);
    auto a = s.coefficient * dom.lo;
    auto b = s.coefficient * dom.hi;
    return {std::min(a, b), std::max(a, b)};
}

auto FreshGen::origin(Name const &x) const -> std::vector<Name> {
    if (auto it = origin_.find(x); it != origin_.end()) {
        return it->second;
    }
    return {x};
}

// {{{1 steps

auto step1_guard_and_strictify(Program const &p, FreshGen &) -> Program {
    auto out = p;
    for (auto &r : out.rules) {
        map_constraint_atoms(r, [](ConstraintAtom &a, bool) {
            if (!is_fun(a) || a.op == Op::sus) {
                return;
            }
            for (auto &t : a.elements) {
                if (auto *ct = std::get_if<ConditionalTerm>(&t)) {
                    add_df_guards(ct->condition, int_vars_of(ct->head));
                }
                else {
                    auto s = std::get<ProductTerm>(t);
                    std::vector<Literal> guard;
                    add_df_guards(guard, int_vars_of(t));
                    t = ConditionalTerm{std::move(s), std::move(guard)};
                }
            }
            if (a.op == Op::sum) {
                a.op = Op::sus;
            }
        });
    }
    return out;
}

auto step2_name_conditions(Program const &p, FreshGen &g) -> Program {
    Program out;
    for (auto r : p.rules) {
        std::vector<Rule> extra;
        map_constraint_atoms(r, [&](ConstraintAtom &a, bool) {
            for (auto &t : a.elements) {
                if (auto *ct = std::get_if<ConditionalTerm>(&t)) {
                    auto name = g.cond();
                    extra.emplace_back(rule(prop(name), std::move(ct->condition)));
                    ct->condition = {lit(prop(name))};
                }
            }
        });
        out.rules.emplace_back(std::move(r));
        for (auto &e : extra) {
            out.rules.emplace_back(std::move(e));
        }
    }
    return out;
}

auto step3_eliminate_conditions(Program const &p, FreshGen &g) -> Program {
    auto const &sig = g.signature();
    Program out;
    for (auto r : p.rules) {
        std::vector<Rule> extra;
        map_constraint_atoms(r, [&](ConstraintAtom &a, bool) {
            if (!is_fun(a)) {
                return;
            }
            auto neutral = neutral_element(a.op, sig.min_int, sig.max_int);
            for (auto &t : a.elements) {
                auto *ct = std::get_if<ConditionalTerm>(&t);
                if (ct == nullptr) {
                    continue;
                }
                if (ct->condition.size() != 1 || ct->condition.front().negation != Negation::none ||
                    !std::holds_alternative<PropAtom>(ct->condition.front().atom)) {
                    throw Error("conditions must be named before they are eliminated: " + to_string(a));
                }
                auto cond_atom = ct->condition.front().atom;
                auto s = ct->head;
                auto vars = int_vars_of(t);
                auto y = g.term(hull(hull(g.range(s), point(neutral)), point(0)), vars);
                auto yv = ProductTerm::var(y);
                std::vector<Literal> body1{lit(cond_atom)};
                add_df_guards(body1, vars);
                extra.emplace_back(rule(sus_atom({s}, Relation::eq, yv), std::move(body1)));
                extra.emplace_back(rule(sus_atom({s}, Relation::eq, yv), {lit(cond_atom), df_lit(y)}));
                extra.emplace_back(rule(sus_atom({ProductTerm::constant(neutral)}, Relation::eq, yv),
                                        {lit(cond_atom, Negation::single)}));
                extra.emplace_back(choice(std::get<PropAtom>(cond_atom).name, {df_lit(y)}));
                t = yv;
            }
        });
        out.rules.emplace_back(std::move(r));
        for (auto &e : extra) {
            out.rules.emplace_back(std::move(e));
        }
    }
    return out;
}

namespace {

auto desugar_max(ConstraintAtom a) -> ConstraintAtom {
    if (a.op != Op::max) {
        return a;
    }
    a.op = Op::min;
    for (auto &t : a.elements) {
        if (auto *ct = std::get_if<ConditionalTerm>(&t)) {
            ct->head = negate_product(ct->head);
        }
        else {
            t = negate_product(std::get<ProductTerm>(t));
        }
    }
    a.relation = dual_relation(*a.relation);
    a.rhs = negate_product(*a.rhs);
    return a;
}

} // namespace

auto step4_expand_abbreviations(Program const &p, FreshGen &g) -> Program {
    Program out;
    for (auto const &r : p.rules) {
        for (auto const &l : r.body) {
            if (auto const *ca = std::get_if<ConstraintAtom>(&l.atom); ca != nullptr && (ca->assign || ca->op == Op::in)) {
                throw AssignInBody("assignment in rule body: " + to_string(r));
            }
        }
        auto const *head = r.head ? std::get_if<ConstraintAtom>(&*r.head) : nullptr;
        if (head != nullptr && head->op == Op::in) {
            auto const &lo = term_product(head->elements.at(0));
            auto const &hi = term_product(head->elements.at(1));
            auto body = r.body;
            for (auto &l : body) {
                if (auto *ca = std::get_if<ConstraintAtom>(&l.atom)) {
                    *ca = desugar_max(std::move(*ca));
                }
            }
            add_df_guards(body, vars_of_terms(head->elements));
            out.rules.emplace_back(rule(sus_atom({lo}, Relation::le, *head->rhs), body));
            out.rules.emplace_back(rule(sus_atom({hi}, Relation::ge, *head->rhs), body));
            continue;
        }
        auto nr = r;
        if (head != nullptr && head->assign) {
            auto &a = std::get<ConstraintAtom>(*nr.head);
            a.assign = false;
            a.relation = Relation::eq;
            std::vector<Name> guard;
            for (auto const &x : vars_of_terms(a.elements)) {
                for (auto const &o : g.origin(x)) {
                    if (std::find(guard.begin(), guard.end(), o) == guard.end()) {
                        guard.push_back(o);
                    }
                }
            }
            add_df_guards(nr.body, guard);
        }
        map_constraint_atoms(nr, [](ConstraintAtom &a, bool) { a = desugar_max(std::move(a)); });
        out.rules.emplace_back(std::move(nr));
    }
    return out;
}

auto step5_tag_head_body(Program const &p) -> Program {
    auto out = p;
    for (auto &r : out.rules) {
        map_constraint_atoms(r, [](ConstraintAtom &a, bool in_head) {
            if ((a.op == Op::sus || a.op == Op::min) && a.tag == Tag::none) {
                a.tag = in_head ? Tag::head : Tag::body;
            }
        });
    }
    return out;
}

auto step6_compile_min(Program const &p, FreshGen &g) -> Program {
    auto out = p;
    auto const &sig = g.signature();
    auto mins = distinct_atoms(p, [](ConstraintAtom const &a) { return a.op == Op::min && a.tag != Tag::none; });
    for (auto const &a : mins) {
        auto bounds = hull(point(sig.max_int), point(0));
        for (auto const &t : a.elements) {
            bounds = hull(bounds, g.range(term_product(t)));
        }
        auto m = ProductTerm::var(g.minvar(bounds));
        auto def = prop(g.def());
        auto member = prop(g.member());
        auto &rules = out.rules;
        rules.emplace_back(constraint({lit(def), lit(member, Negation::single)}));
        rules.emplace_back(rule(sus_atom({ProductTerm::constant(sig.max_int)}, Relation::eq, m, Tag::head),
                                {lit(def, Negation::single)}));
        for (auto const &t : a.elements) {
            auto const &s = term_product(t);
            std::vector<Literal> body;
            add_df_guards(body, int_vars_of(t));
            rules.emplace_back(rule(def, std::move(body)));
            rules.emplace_back(rule(df_atom(*m.variable), {lit(def)}));
            rules.emplace_back(constraint({lit(sus_atom({s}, Relation::lt, m, Tag::body))}));
            rules.emplace_back(rule(member, {lit(sus_atom({s}, Relation::eq, m, Tag::body))}));
        }
        if (a.tag == Tag::head) {
            rules.emplace_back(rule(sus_atom({m}, *a.relation, *a.rhs, Tag::head), {lit(a)}));
        }
        else {
            rules.emplace_back(rule(a, {lit(sus_atom({m}, *a.relation, *a.rhs, Tag::body))}));
        }
    }
    return out;
}

auto step7_link_definedness(Program const &p, FreshGen &) -> Program {
    auto out = p;
    std::vector<Name> vars;
    for_each_atom(p, [&](Atom const &a) {
        if (auto const *ca = std::get_if<ConstraintAtom>(&a)) {
            for (auto const &x : int_vars_of(*ca)) {
                if (std::find(vars.begin(), vars.end(), x) == vars.end()) {
                    vars.push_back(x);
                }
            }
        }
    });
    for (auto const &x : vars) {
        out.rules.emplace_back(
            rule(catom(Op::sum, {ProductTerm::constant(0)}, Relation::eq, ProductTerm::var(x)),
                 {lit(df_atom(x), Negation::single)}));
    }
    auto tagged = distinct_atoms(p, [](ConstraintAtom const &a) { return a.op == Op::sus && a.tag != Tag::none; });
    for (auto const &a : tagged) {
        auto plain = catom(Op::sum, a.elements, *a.relation, *a.rhs);
        auto avars = int_vars_of(a);
        if (a.tag == Tag::head) {
            out.rules.emplace_back(constraint({lit(a), lit(plain, Negation::single)}));
            for (auto const &x : avars) {
                out.rules.emplace_back(rule(df_atom(x), {lit(a)}));
            }
        }
        else {
            std::vector<Literal> body{lit(plain)};
            add_df_guards(body, avars);
            out.rules.emplace_back(rule(a, std::move(body)));
        }
    }
    return out;
}

auto def_name(Name const &x) -> Name { return "def(" + x + ")"; }

auto step8_rename_df(Program const &p) -> Program {
    auto rename = [](Atom &a) {
        if (auto const *ca = std::get_if<ConstraintAtom>(&a); ca != nullptr && ca->op == Op::df) {
            a = prop(def_name(*term_product(ca->elements.front()).variable));
        }
    };
    auto out = p;
    for (auto &r : out.rules) {
        if (r.head) {
            rename(*r.head);
        }
        for (auto &l : r.body) {
            rename(l.atom);
        }
        map_constraint_atoms(r, [&](ConstraintAtom &a, bool) {
            for (auto &t : a.elements) {
                if (auto *ct = std::get_if<ConditionalTerm>(&t)) {
                    for (auto &l : ct->condition) {
                        rename(l.atom);
                    }
                }
            }
        });
    }
    return out;
}

// {{{1 pipeline

auto expand_abbreviations(Program const &p, Signature const &sig) -> Program {
    FreshGen g{sig};
    return step4_expand_abbreviations(p, g);
}

void check_clingcon_fragment(Program const &p) {
    for_each_atom(p, [](Atom const &a) {
        auto const *ca = std::get_if<ConstraintAtom>(&a);
        if (ca == nullptr || ca->tag != Tag::none) {
            return;
        }
        if (ca->op != Op::sum || ca->assign || !ca->relation ||
            std::any_of(ca->elements.begin(), ca->elements.end(), is_conditional)) {
            throw NotClingconFragment("not a clingcon atom: " + to_string(*ca));
        }
    });
}

auto translate(Program const &p, Signature const &sig, PipelineOptions const &opts) -> Translation {
    auto own = signature_of(p, sig.min_int, sig.max_int);
    auto full = sig;
    full.prop_vars.insert(own.prop_vars.begin(), own.prop_vars.end());
    full.int_vars.insert(own.int_vars.begin(), own.int_vars.end());
    full.validate();
    for (auto const &x : full.int_vars) {
        if (full.prop_vars.count(def_name(x)) != 0) {
            throw Error("propositional atom " + def_name(x) + " collides with the definedness atom of " + x);
        }
    }

    FreshGen g{full};
    Translation tr;
    auto cur = p;
    tr.trace.snapshots.emplace_back("input", cur);
    auto run = [&](int step, char const *name, auto const &fn) {
        if (opts.disabled_steps.count(step) == 0) {
            cur = fn(cur);
        }
        tr.trace.snapshots.emplace_back("step " + std::to_string(step) + ": " + name, cur);
    };
    run(1, "guard and strictify", [&](Program const &q) { return step1_guard_and_strictify(q, g); });
    run(2, "name conditions", [&](Program const &q) { return step2_name_conditions(q, g); });
    run(3, "eliminate conditions", [&](Program const &q) { return step3_eliminate_conditions(q, g); });
    run(4, "expand abbreviations", [&](Program const &q) { return step4_expand_abbreviations(q, g); });
    run(5, "tag head and body atoms", [&](Program const &q) { return step5_tag_head_body(q); });
    run(6, "compile min", [&](Program const &q) { return step6_compile_min(q, g); });
    run(7, "link definedness", [&](Program const &q) { return step7_link_definedness(q, g); });
    run(8, "rename df", [&](Program const &q) { return step8_rename_df(q); });
    check_clingcon_fragment(cur);

    tr.program = cur;
    auto out = signature_of(cur, full.min_int, full.max_int);
    tr.signature = full;
    tr.signature.prop_vars.insert(out.prop_vars.begin(), out.prop_vars.end());
    tr.signature.int_vars.insert(out.int_vars.begin(), out.int_vars.end());
    for (auto const &[x, b] : g.fresh_bounds()) {
        tr.signature.bounds[x] = b;
    }
    tr.signature.validate();
    return tr;
}

auto render_trace(PipelineTrace const &trace) -> std::string {
    std::string out;
    for (std::size_t i = 0; i < trace.snapshots.size(); ++i) {
        out += "% [" + std::to_string(i) + "] " + trace.snapshots[i].first + "\n";
        out += render_program(trace.snapshots[i].second);
        out += "\n";
    }
    return out;
}

} // namespace Flingo
