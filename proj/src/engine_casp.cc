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

// Stable models of theories in the clingcon fragment.
//
// Every integer variable has an `&int` fact, so h and t agree on integers and
// all linear atoms have the same truth value in both worlds. For a fixed
// integer assignment the theory is a normal program with double negation, and
// t is stable iff it is a classical model whose true atoms form the least
// model of the reduct. The search branches on atoms and integer values and
// prunes with unit, support and bound propagation.

#include "compiled.hh"

#include <algorithm>
#include <map>

namespace Flingo::Detail {

namespace {

//! `Σ coef_i * x_i ≺ k` over integer variables.
struct Linear {
    std::vector<std::pair<Value, int>> terms;
    Relation rel{Relation::eq};
    Value k{0};
};

struct Lit {
    enum class Kind { prop, linear, constant };
    Kind kind{Kind::constant};
    int id{0};
    //! Classical polarity.
    bool positive{true};
    //! Negative occurrences (`not`, `not not`) are evaluated against the candidate in the reduct.
    bool in_reduct_positive{true};
};

struct CRule {
    enum class Head { prop, linear, falsity };
    Head head{Head::falsity};
    int id{0};
    std::vector<Lit> body;
};

enum class Truth : signed char { unknown = -1, no = 0, yes = 1 };

struct State {
    std::vector<Truth> props;
    std::vector<Value> lo;
    std::vector<Value> hi;
};

auto floor_div(Value a, Value b) -> Value {
    auto q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) {
        --q;
    }
    return q;
}

auto ceil_div(Value a, Value b) -> Value {
    auto q = a / b;
    if ((a % b != 0) && ((a < 0) == (b < 0))) {
        ++q;
    }
    return q;
}

class Casp {
public:
    Casp(HtcTheory const &theory, EngineOptions const &opts)
    : vars_{theory.signature}
    , opts_{opts} {
        for (std::size_t i = 0; i < vars_.names.size(); ++i) {
            if (vars_.is_int[i]) {
                int_index_.emplace(static_cast<int>(i), static_cast<int>(ints_.size()));
                ints_.push_back(static_cast<int>(i));
            }
            else {
                prop_index_.emplace(static_cast<int>(i), static_cast<int>(props_.size()));
                props_.push_back(static_cast<int>(i));
            }
        }
        for (auto const &f : theory.formulas) {
            add_formula(f);
        }
        heads_.resize(props_.size());
        for (std::size_t r = 0; r < rules_.size(); ++r) {
            if (rules_[r].head == CRule::Head::prop) {
                heads_[rules_[r].id].push_back(static_cast<int>(r));
            }
        }
    }

    auto solve() -> std::vector<Valuation> {
        State s;
        s.props.assign(props_.size(), Truth::unknown);
        for (auto v : ints_) {
            s.lo.push_back(vars_.bounds[v].lo);
            s.hi.push_back(vars_.bounds[v].hi);
        }
        search(std::move(s));
        canonicalize(models_);
        return std::move(models_);
    }

private:
    // {{{2 compilation

    auto linear_id(HtcAtom const &a) -> int {
        Linear lin;
        lin.rel = a.relation;
        std::map<int, Value> coefs;
        auto add_term = [&](ProductTerm const &s, Value sign) {
            if (!s.variable) {
                lin.k = checked_add(lin.k, -sign * s.coefficient);
                return;
            }
            auto v = vars_.find(*s.variable);
            auto &c = coefs[int_index_.at(v)];
            c = checked_add(c, sign * s.coefficient);
        };
        for (auto const &e : a.elements) {
            add_term(std::get<ProductTerm>(e), 1);
        }
        add_term(a.rhs, -1);
        for (auto [v, c] : coefs) {
            if (c != 0) {
                lin.terms.emplace_back(c, v);
            }
        }
        linears_.push_back(std::move(lin));
        return static_cast<int>(linears_.size()) - 1;
    }

    auto atom_lit(HtcAtom const &a) -> Lit {
        using Kind = HtcAtom::Kind;
        Lit lit;
        switch (a.kind) {
            case Kind::prop:
                lit.kind = Lit::Kind::prop;
                lit.id = prop_index_.at(vars_.find(a.name));
                return lit;
            case Kind::df:
            case Kind::int_: {
                auto v = vars_.find(a.name);
                if (vars_.is_int[v]) {
                    lit.kind = Lit::Kind::constant;
                    lit.positive = true;
                    return lit;
                }
                if (a.kind == Kind::int_) {
                    lit.kind = Lit::Kind::constant;
                    lit.positive = false;
                    return lit;
                }
                lit.kind = Lit::Kind::prop;
                lit.id = prop_index_.at(v);
                return lit;
            }
            default:
                lit.kind = Lit::Kind::linear;
                lit.id = linear_id(a);
                return lit;
        }
    }

    auto literal(HtcFormula const &f) -> Lit {
        if (f->kind == HtcNode::Kind::atom) {
            return atom_lit(f->atom);
        }
        // ¬⊥ is ⊤
        if (f->lhs->kind == HtcNode::Kind::falsity) {
            return Lit{Lit::Kind::constant, 0, true, true};
        }
        if (f->lhs->kind == HtcNode::Kind::atom) {
            auto lit = atom_lit(f->lhs->atom);
            lit.positive = !lit.positive;
            lit.in_reduct_positive = false;
            return lit;
        }
        auto lit = atom_lit(f->lhs->lhs->atom);
        lit.in_reduct_positive = false;
        return lit;
    }

    void flatten(HtcFormula const &f, std::vector<Lit> &out) {
        if (f->kind == HtcNode::Kind::conj) {
            flatten(f->lhs, out);
            flatten(f->rhs, out);
            return;
        }
        out.push_back(literal(f));
    }

    void add_head(CRule &r, HtcFormula const &head) {
        if (head->kind == HtcNode::Kind::falsity) {
            r.head = CRule::Head::falsity;
            return;
        }
        auto lit = atom_lit(head->atom);
        switch (lit.kind) {
            case Lit::Kind::prop:
                r.head = CRule::Head::prop;
                r.id = lit.id;
                break;
            case Lit::Kind::linear:
                r.head = CRule::Head::linear;
                r.id = lit.id;
                break;
            case Lit::Kind::constant:
                if (lit.positive) {
                    return;
                }
                r.head = CRule::Head::falsity;
                break;
        }
        rules_.push_back(std::move(r));
    }

    void add_formula(HtcFormula const &f) {
        CRule r;
        if (f->kind == HtcNode::Kind::atom) {
            add_head(r, f);
            return;
        }
        flatten(f->lhs, r.body);
        if (f->rhs->kind == HtcNode::Kind::falsity) {
            rules_.push_back(std::move(r));
            return;
        }
        add_head(r, f->rhs);
    }

    // {{{2 evaluation

    [[nodiscard]] auto linear_truth(State const &s, int id) const -> Truth {
        auto const &lin = linears_[id];
        Value mn = 0;
        Value mx = 0;
        for (auto [c, v] : lin.terms) {
            auto a = c * s.lo[v];
            auto b = c * s.hi[v];
            mn = checked_add(mn, std::min(a, b));
            mx = checked_add(mx, std::max(a, b));
        }
        auto k = lin.k;
        switch (lin.rel) {
            case Relation::le: return mx <= k ? Truth::yes : mn > k ? Truth::no : Truth::unknown;
            case Relation::lt: return mx < k ? Truth::yes : mn >= k ? Truth::no : Truth::unknown;
            case Relation::ge: return mn >= k ? Truth::yes : mx < k ? Truth::no : Truth::unknown;
            case Relation::gt: return mn > k ? Truth::yes : mx <= k ? Truth::no : Truth::unknown;
            case Relation::eq:
                return (mn == k && mx == k) ? Truth::yes : (k < mn || k > mx) ? Truth::no : Truth::unknown;
            case Relation::ne:
                return (mn == k && mx == k) ? Truth::no : (k < mn || k > mx) ? Truth::yes : Truth::unknown;
        }
        return Truth::unknown;
    }

    [[nodiscard]] auto lit_truth(State const &s, Lit const &lit) const -> Truth {
        Truth t = Truth::yes;
        switch (lit.kind) {
            case Lit::Kind::prop: t = s.props[lit.id]; break;
            case Lit::Kind::linear: t = linear_truth(s, lit.id); break;
            case Lit::Kind::constant: t = Truth::yes; break;
        }
        if (t == Truth::unknown || lit.positive) {
            return t;
        }
        return t == Truth::yes ? Truth::no : Truth::yes;
    }

    // {{{2 propagation

    //! Tightens bounds so that `Σ c_i x_i <= k` can hold; returns false on conflict.
    static auto propagate_le(State &s, std::vector<std::pair<Value, int>> const &terms, Value k, bool &changed)
        -> bool {
        Value mn = 0;
        for (auto [c, v] : terms) {
            mn = checked_add(mn, c > 0 ? c * s.lo[v] : c * s.hi[v]);
        }
        if (mn > k) {
            return false;
        }
        for (auto [c, v] : terms) {
            auto own = c > 0 ? c * s.lo[v] : c * s.hi[v];
            auto slack = k - (mn - own);
            if (c > 0) {
                auto ub = floor_div(slack, c);
                if (ub < s.hi[v]) {
                    s.hi[v] = ub;
                    changed = true;
                }
            }
            else {
                auto lb = ceil_div(slack, c);
                if (lb > s.lo[v]) {
                    s.lo[v] = lb;
                    changed = true;
                }
            }
            if (s.lo[v] > s.hi[v]) {
                return false;
            }
        }
        return true;
    }

    static auto negated(std::vector<std::pair<Value, int>> terms) -> std::vector<std::pair<Value, int>> {
        for (auto &t : terms) {
            t.first = -t.first;
        }
        return terms;
    }

    static auto propagate_linear(State &s, Linear const &lin, bool truth, bool &changed) -> bool {
        auto rel = truth ? lin.rel : complement_relation(lin.rel);
        auto const &terms = lin.terms;
        switch (rel) {
            case Relation::le: return propagate_le(s, terms, lin.k, changed);
            case Relation::lt: return propagate_le(s, terms, lin.k - 1, changed);
            case Relation::ge: return propagate_le(s, negated(terms), -lin.k, changed);
            case Relation::gt: return propagate_le(s, negated(terms), -lin.k - 1, changed);
            case Relation::eq:
                return propagate_le(s, terms, lin.k, changed) && propagate_le(s, negated(terms), -lin.k, changed);
            case Relation::ne: {
                int open = -1;
                Value rest = 0;
                for (auto [c, v] : terms) {
                    if (s.lo[v] == s.hi[v]) {
                        rest += c * s.lo[v];
                    }
                    else if (open >= 0) {
                        return true;
                    }
                    else {
                        open = v;
                    }
                }
                if (open < 0) {
                    return rest != lin.k;
                }
                Value c = 0;
                for (auto [cc, v] : terms) {
                    if (v == open) {
                        c = cc;
                    }
                }
                if ((lin.k - rest) % c != 0) {
                    return true;
                }
                auto bad = (lin.k - rest) / c;
                if (bad == s.lo[open]) {
                    ++s.lo[open];
                    changed = true;
                }
                else if (bad == s.hi[open]) {
                    --s.hi[open];
                    changed = true;
                }
                return s.lo[open] <= s.hi[open];
            }
        }
        return true;
    }

    //! Makes `lit` true; returns false on conflict.
    auto force(State &s, Lit const &lit, bool &changed) const -> bool {
        switch (lit.kind) {
            case Lit::Kind::prop: {
                auto want = lit.positive ? Truth::yes : Truth::no;
                if (s.props[lit.id] == Truth::unknown) {
                    s.props[lit.id] = want;
                    changed = true;
                    return true;
                }
                return s.props[lit.id] == want;
            }
            case Lit::Kind::linear: return propagate_linear(s, linears_[lit.id], lit.positive, changed);
            case Lit::Kind::constant: return lit.positive;
        }
        return false;
    }

    auto head_lit(CRule const &r) const -> std::optional<Lit> {
        switch (r.head) {
            case CRule::Head::prop: return Lit{Lit::Kind::prop, r.id, true, true};
            case CRule::Head::linear: return Lit{Lit::Kind::linear, r.id, true, true};
            case CRule::Head::falsity: break;
        }
        return std::nullopt;
    }

    auto propagate(State &s) const -> bool {
        bool changed = true;
        while (changed) {
            changed = false;
            for (auto const &r : rules_) {
                // clause: ¬b_1 ∨ ... ∨ ¬b_n ∨ head
                int unknown = 0;
                std::optional<Lit> unit;
                bool satisfied = false;
                for (auto const &b : r.body) {
                    auto t = lit_truth(s, b);
                    if (t == Truth::no) {
                        satisfied = true;
                        break;
                    }
                    if (t == Truth::unknown) {
                        ++unknown;
                        unit = b;
                        unit->positive = !unit->positive;
                    }
                }
                if (satisfied) {
                    continue;
                }
                if (auto h = head_lit(r)) {
                    auto t = lit_truth(s, *h);
                    if (t == Truth::yes) {
                        continue;
                    }
                    if (t == Truth::unknown) {
                        ++unknown;
                        unit = h;
                    }
                }
                if (unknown == 0) {
                    return false;
                }
                if (unknown == 1 && !force(s, *unit, changed)) {
                    return false;
                }
            }
            if (!propagate_founded(s, changed)) {
                return false;
            }
        }
        return true;
    }

    //! Atoms outside the least fixpoint over rules with non-false bodies are
    //! false; a true atom with a single viable rule forces that rule's body.
    auto propagate_founded(State &s, bool &changed) const -> bool {
        std::vector<bool> possible(props_.size(), false);
        bool grow = true;
        while (grow) {
            grow = false;
            for (auto const &r : rules_) {
                if (r.head != CRule::Head::prop || possible[r.id] || s.props[r.id] == Truth::no) {
                    continue;
                }
                if (std::all_of(r.body.begin(), r.body.end(), [&](Lit const &b) {
                        if (b.kind == Lit::Kind::prop && b.in_reduct_positive && !possible[b.id]) {
                            return false;
                        }
                        return lit_truth(s, b) != Truth::no;
                    })) {
                    possible[r.id] = true;
                    grow = true;
                }
            }
        }
        for (std::size_t p = 0; p < props_.size(); ++p) {
            if (possible[p] || s.props[p] == Truth::no) {
                continue;
            }
            if (s.props[p] == Truth::yes) {
                return false;
            }
            s.props[p] = Truth::no;
            changed = true;
        }
        for (std::size_t p = 0; p < props_.size(); ++p) {
            if (s.props[p] != Truth::yes) {
                continue;
            }
            int viable = -1;
            for (auto r : heads_[p]) {
                auto const &body = rules_[r].body;
                if (std::none_of(body.begin(), body.end(), [&](Lit const &b) { return lit_truth(s, b) == Truth::no; })) {
                    if (viable >= 0) {
                        viable = -2;
                        break;
                    }
                    viable = r;
                }
            }
            if (viable == -1) {
                return false;
            }
            if (viable >= 0) {
                for (auto const &b : rules_[viable].body) {
                    if (lit_truth(s, b) == Truth::unknown && !force(s, b, changed)) {
                        return false;
                    }
                }
            }
        }
        return true;
    }

    // {{{2 search

    void search(State s) {
        if (++nodes_ > opts_.node_limit) {
            throw BudgetExceeded(static_cast<double>(nodes_), "search nodes");
        }
        if (!propagate(s)) {
            return;
        }
        for (std::size_t p = 0; p < props_.size(); ++p) {
            if (s.props[p] == Truth::unknown) {
                for (auto val : {Truth::no, Truth::yes}) {
                    State c = s;
                    c.props[p] = val;
                    search(std::move(c));
                }
                return;
            }
        }
        int best = -1;
        for (std::size_t i = 0; i < ints_.size(); ++i) {
            if (s.lo[i] < s.hi[i] && (best < 0 || s.hi[i] - s.lo[i] < s.hi[best] - s.lo[best])) {
                best = static_cast<int>(i);
            }
        }
        if (best >= 0) {
            for (auto x = s.lo[best]; x <= s.hi[best]; ++x) {
                State c = s;
                c.lo[best] = x;
                c.hi[best] = x;
                search(std::move(c));
            }
            return;
        }
        leaf(s);
    }

    void leaf(State const &s) {
        for (auto const &r : rules_) {
            bool body = std::all_of(r.body.begin(), r.body.end(),
                                    [&](Lit const &b) { return lit_truth(s, b) == Truth::yes; });
            auto h = head_lit(r);
            if (body && (!h || lit_truth(s, *h) != Truth::yes)) {
                return;
            }
        }
        // least model of the reduct
        std::vector<bool> lm(props_.size(), false);
        bool changed = true;
        while (changed) {
            changed = false;
            for (auto const &r : rules_) {
                if (r.head != CRule::Head::prop || lm[r.id]) {
                    continue;
                }
                bool fires = std::all_of(r.body.begin(), r.body.end(), [&](Lit const &b) {
                    if (b.kind == Lit::Kind::prop && b.in_reduct_positive) {
                        return static_cast<bool>(lm[b.id]);
                    }
                    return lit_truth(s, b) == Truth::yes;
                });
                if (fires) {
                    lm[r.id] = true;
                    changed = true;
                }
            }
        }
        for (std::size_t p = 0; p < props_.size(); ++p) {
            if (lm[p] != (s.props[p] == Truth::yes)) {
                return;
            }
        }
        std::vector<Int> val(vars_.names.size(), UNDEF);
        for (std::size_t p = 0; p < props_.size(); ++p) {
            if (s.props[p] == Truth::yes) {
                val[props_[p]] = TRUTH;
            }
        }
        for (std::size_t i = 0; i < ints_.size(); ++i) {
            val[ints_[i]] = static_cast<Int>(s.lo[i]);
        }
        if (models_.size() >= opts_.model_limit) {
            throw BudgetExceeded(static_cast<double>(models_.size() + 1), "stable models");
        }
        models_.emplace_back(to_valuation(vars_, val.data()));
    }

    VarTable vars_;
    EngineOptions opts_;
    std::vector<int> props_;
    std::vector<int> ints_;
    std::map<int, int> prop_index_;
    std::map<int, int> int_index_;
    std::vector<Linear> linears_;
    std::vector<CRule> rules_;
    std::vector<std::vector<int>> heads_;
    std::vector<Valuation> models_;
    std::uint64_t nodes_{0};
};

} // namespace

auto stable_models_casp(HtcTheory const &theory, EngineOptions const &opts) -> std::vector<Valuation> {
    return Casp{theory, opts}.solve();
}

} // namespace Flingo::Detail
